// sqmap: sample, grow, square, render, verify and run experiments.
//
// Exit codes: 0 success, 1 failure or failed validation, 2 usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqmap/experiments.hpp"
#include "sqmap/io.hpp"
#include "sqmap/run.hpp"
#include "sqmap/svg.hpp"

using namespace sqmap;

namespace {

SolveMode parse_mode(const std::string& s) { return s == "rational" ? SolveMode::Rational : SolveMode::Iterative; }

void emit(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(1) << "\n";
  else
    write_json(out, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random planar maps and their squarings"};
  app.require_subcommand(1);
  const auto modes = CLI::IsMember({"iterative", "rational"});

  // sample
  auto* sample = app.add_subcommand("sample", "Pipeline samples with squarings into a run directory");
  int n = 0;
  long count = 1;
  std::uint64_t seed = 0;
  bool require_3conn = false, no_svg = false;
  std::optional<int> hex_index;
  std::string mode = "iterative", out, in;
  sample->add_option("--n", n, "internal nodes of the tree")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed)->required();
  sample->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);
  sample->add_flag("--require-3conn", require_3conn, "condition on 3-connectivity");
  sample->add_option("--hex-index", hex_index, "pin the diagonal")->check(CLI::Range(0, 5));
  sample->add_option("--mode", mode)->check(modes);
  sample->add_flag("--no-svg", no_svg);
  sample->add_option("--out", out, "run directory")->required();

  // grow
  auto* grow = app.add_subcommand("grow", "Squarings along one growth chain");
  std::vector<int> schedule;
  grow->add_option("--schedule", schedule, "sizes, comma separated")->required()->delimiter(',');
  grow->add_option("--seed", seed)->required();
  grow->add_option("--mode", mode)->check(modes);
  grow->add_flag("--no-svg", no_svg);
  grow->add_option("--out", out, "run directory")->required();

  // square
  auto* square = app.add_subcommand("square", "Square a map given as JSON");
  square->add_option("--in", in, "map json")->required()->check(CLI::ExistingFile);
  square->add_option("--mode", mode)->check(modes);
  square->add_option("--out", out, "squaring json");

  // render
  auto* render = app.add_subcommand("render", "SVG of a squaring");
  bool lines = false, facial = false, accumulation = false, show_degenerate = false, fill = false;
  render->add_option("--in", in, "squaring json")->required()->check(CLI::ExistingFile);
  render->add_option("--out", out, "svg file")->required();
  render->add_flag("--lines", lines, "primal lines");
  render->add_flag("--facial", facial, "facial lines");
  render->add_flag("--accumulation", accumulation, "mark the small-square centroid");
  render->add_flag("--degenerate", show_degenerate, "draw zero-current squares");
  render->add_flag("--fill", fill, "shade by size");

  // verify
  auto* verify = app.add_subcommand("verify", "Check that a squaring tiles its rectangle");
  verify->add_option("--in", in, "squaring json")->required()->check(CLI::ExistingFile);

  // stats
  auto* st = app.add_subcommand("stats", "Run an experiment");
  std::string experiment;
  long samples = 100;
  st->add_option("--experiment", experiment)
      ->required()
      ->check(CLI::IsMember({"threeconn", "width", "fourcorner", "hausdorff", "degtail", "potential"}));
  st->add_option("--n", n, "size for threeconn, width, degtail");
  st->add_option("--schedule", schedule, "sizes for fourcorner, hausdorff, potential")->delimiter(',');
  st->add_option("--samples", samples, "samples, or chains")->check(CLI::PositiveNumber);
  st->add_option("--seed", seed)->required();
  st->add_option("--out", out, "result json (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg{seed, parse_mode(mode), !no_svg};
    if (*sample) {
      PipelineOptions opt;
      opt.require_3conn = require_3conn;
      opt.hex_index = hex_index;
      run_sample(out, n, count, cfg, opt);
    } else if (*grow) {
      run_grow(out, schedule, cfg);
    } else if (*square) {
      RootedMap m = map_from_json(read_json(in));
      auto sq = square_map(m, cfg.mode);
      auto rep = validate_tiling(sq);
      if (!rep.ok) {
        std::cerr << "squaring failed validation\n";
        return 1;
      }
      emit(squaring_to_json(sq), out);
    } else if (*render) {
      auto sq = squaring_from_json(read_json(in));
      RenderOptions ro;
      ro.primal_lines = lines;
      ro.facial_lines = facial;
      ro.show_degenerate = show_degenerate;
      ro.fill_by_size = fill;
      if (accumulation) ro.marker = accumulation_probe(sq);
      write_file_atomic(out, render_svg(sq, ro));
    } else if (*verify) {
      auto sq = squaring_from_json(read_json(in));
      auto rep = validate_tiling(sq);
      json j{{"ok", rep.ok},
             {"overlap", rep.overlap_area},
             {"deficit", rep.coverage_deficit},
             {"out_of_bounds", rep.out_of_bounds},
             {"area_error", rep.area_error},
             {"tolerance", rep.tolerance}};
      std::cout << j.dump(1) << "\n";
      return rep.ok ? 0 : 1;
    } else if (*st) {
      auto need_n = [&] {
        if (n <= 0) throw Error(Errc::InvalidArgument, "--n is required for " + experiment);
      };
      auto need_schedule = [&] {
        if (schedule.empty()) throw Error(Errc::InvalidArgument, "--schedule is required for " + experiment);
      };
      ExperimentResult r;
      if (experiment == "threeconn") {
        need_n();
        r = experiment_threeconn(n, samples, seed);
      } else if (experiment == "width") {
        need_n();
        r = experiment_width(n, samples, seed);
      } else if (experiment == "degtail") {
        need_n();
        r = experiment_degree_tail(n, samples, seed);
      } else if (experiment == "fourcorner") {
        need_schedule();
        r = experiment_fourcorner(schedule, samples, seed);
      } else if (experiment == "hausdorff") {
        need_schedule();
        r = experiment_hausdorff(schedule, static_cast<int>(samples), seed);
      } else {
        need_schedule();
        r = experiment_potential(schedule, static_cast<int>(samples), seed);
      }
      emit(r.to_json(), out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::InvalidArgument ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
