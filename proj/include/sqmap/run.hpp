#pragma once

// Run directories: manifest.json, maps/, squarings/, svg/, stats/.  Every
// file is a function of the manifest, so two runs with the same manifest
// are byte-identical.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hausdorff.hpp"
#include "io.hpp"
#include "pipeline.hpp"
#include "squaring.hpp"
#include "svg.hpp"

namespace sqmap {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::uint64_t seed = 0;
  SolveMode mode = SolveMode::Iterative;
  bool svg = true;
};

inline std::string indexed_stem(const char* stem, long i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04ld", stem, i);
  return buf;
}

namespace detail {

// Validates and writes one map with its squaring; returns its diagnostics.
inline json persist_sample(const std::filesystem::path& dir, const std::string& stem, const PipelineSample& s,
                           const Squaring<double>& sq, const RunConfig& cfg, std::vector<std::string>& files) {
  const TilingReport rep = validate_tiling(sq);
  if (!rep.ok) throw Error(Errc::InvalidTiling, stem + ": squaring failed validation");
  auto add = [&](const std::string& rel, const std::string& body) {
    write_file_atomic(dir / rel, body);
    files.push_back(rel);
  };
  add("maps/" + stem + ".json", map_to_json(s.map).dump(1) + "\n");
  add("squarings/" + stem + ".json", squaring_to_json(sq).dump(1) + "\n");
  if (cfg.svg) add("svg/" + stem + ".svg", render_svg(sq));
  return {{"name", stem},
          {"n", s.tree.internal_count},
          {"hex_index", s.hex_index},
          {"edges", s.map.map.edge_count()},
          {"three_connected", s.three_connected},
          {"attempts", s.attempts},
          {"lambda", sq.lambda},
          {"degenerate_squares", sq.degenerate_count()},
          {"validation",
           {{"overlap", rep.overlap_area}, {"deficit", rep.coverage_deficit}, {"area_error", rep.area_error}}}};
}

inline void write_manifest(const std::filesystem::path& dir, json manifest, std::vector<std::string> files) {
  std::sort(files.begin(), files.end());
  manifest["tool"] = "sqmap";
  manifest["version"] = kVersion;
  manifest["layout"] = {"manifest.json", "maps/", "squarings/", "svg/", "stats/"};
  manifest["files"] = files;
  write_json(dir / "manifest.json", manifest);
}

}  // namespace detail

inline json run_sample(const std::filesystem::path& dir, int n, long count, const RunConfig& cfg,
                       const PipelineOptions& opt) {
  if (count <= 0) throw Error(Errc::InvalidArgument, "count must be positive");
  std::vector<std::string> files;
  json diag = json::array();
  for (long i = 0; i < count; ++i) {
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(i));
    auto s = pipeline_sample(n, rng, opt);
    diag.push_back(detail::persist_sample(dir, indexed_stem("sample", i), s, square_map(s.map, cfg.mode), cfg, files));
  }
  write_json(dir / "stats/diagnostics.json", diag);
  files.push_back("stats/diagnostics.json");
  json m{{"command", "sample"}, {"seed", cfg.seed}, {"n", n}, {"count", count}, {"mode", mode_name(cfg.mode)},
         {"require_3conn", opt.require_3conn}};
  m["hex_index"] = opt.hex_index ? json(*opt.hex_index) : json(nullptr);
  detail::write_manifest(dir, m, files);
  return diag;
}

inline json run_grow(const std::filesystem::path& dir, const std::vector<int>& schedule, const RunConfig& cfg) {
  auto seq = grow_sequence(schedule, cfg.seed);
  std::vector<std::string> files;
  json diag = json::array();
  std::vector<Squaring<double>> sqs;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "grow_n%05d", schedule[k]);
    sqs.push_back(square_map(seq[k].map, cfg.mode));
    diag.push_back(detail::persist_sample(dir, stem, seq[k], sqs.back(), cfg, files));
  }
  json dist = json::array();
  for (std::size_t k = 1; k < sqs.size(); ++k)
    dist.push_back({{"from", schedule[k - 1]}, {"to", schedule[k]}, {"hausdorff", hausdorff_distance(sqs[k - 1], sqs[k])}});
  write_json(dir / "stats/diagnostics.json", diag);
  write_json(dir / "stats/hausdorff.json", dist);
  files.push_back("stats/diagnostics.json");
  files.push_back("stats/hausdorff.json");
  detail::write_manifest(dir, {{"command", "grow"}, {"seed", cfg.seed}, {"schedule", schedule}, {"mode", mode_name(cfg.mode)}},
                         files);
  return dist;
}

}  // namespace sqmap
