#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <set>

#include <unistd.h>

#include "fixtures.hpp"
#include "sqmap/experiments.hpp"
#include "sqmap/io.hpp"
#include "sqmap/run.hpp"
#include "sqmap/stats.hpp"

using namespace sqmap;
namespace fs = std::filesystem;

namespace {

// The square pyramid: the only 3-connected planar graph with 8 edges.
std::set<std::string> pyramid_rootings() {
  auto d = fixtures::map_from_geometry({{0, 0}, {-1, -1}, {1, -1}, {1, 1}, {-1, 1}},
                                       {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}});
  std::set<std::string> codes;
  for (Dart r = 0; r < d.rooted.map.dart_count(); ++r) codes.insert(canonical_code(d.rooted.map, r));
  return codes;
}

fs::path scratch(const char* name) {
  fs::path p = fs::temp_directory_path() / ("sqmap_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Pipeline, SmallestSampleHasFiveEdges) {
  for (int s = 0; s < 20; ++s) EXPECT_EQ(pipeline_sample(1, static_cast<std::uint64_t>(s)).map.map.edge_count(), 5);
  for (int s = 0; s < 20; ++s) EXPECT_EQ(pipeline_sample(7, static_cast<std::uint64_t>(s)).map.map.edge_count(), 11);
}

TEST(Pipeline, SeedDeterminesSample) {
  auto a = pipeline_sample(40, 99), b = pipeline_sample(40, 99);
  EXPECT_EQ(canonical_code(a.map), canonical_code(b.map));
  EXPECT_EQ(a.hex_index, b.hex_index);
}

TEST(Pipeline, ConditionedLawIsUniform) {
  const auto census = pyramid_rootings();
  ASSERT_EQ(census.size(), 4u);
  PipelineOptions opt;
  opt.require_3conn = true;
  std::map<std::string, long> seen;
  Rng rng = make_rng(12);
  for (int i = 0; i < 8000; ++i) ++seen[canonical_code(pipeline_sample(4, rng, opt).map)];
  ASSERT_EQ(seen.size(), census.size());
  std::vector<long> counts;
  for (auto& [code, c] : seen) {
    EXPECT_TRUE(census.count(code));
    counts.push_back(c);
  }
  EXPECT_GT(stats::chi_square_uniform(counts).p_value, 1e-3);
  // n = 2 gives K4, one rooted map; n = 3 has no 3-connected map
  auto k4 = pipeline_sample(2, rng, opt);
  EXPECT_EQ(canonical_code(k4.map), canonical_code(fixtures::k4().rooted));
  opt.max_attempts = 200;
  try {
    pipeline_sample(3, rng, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RejectionLimit);
  }
}

TEST(Pipeline, GrowSequenceNests) {
  auto seq = grow_sequence({10, 20, 40, 80}, 5);
  ASSERT_EQ(seq.size(), 4u);
  for (std::size_t k = 1; k < seq.size(); ++k) {
    auto prefix = restrict_to_prefix(seq[k].tree, seq[k - 1].tree.internal_count);
    EXPECT_EQ(prefix.rooted.map.next_array(), seq[k - 1].tree.rooted.map.next_array());
    EXPECT_EQ(seq[k].hex_index, seq[0].hex_index);
  }
}

TEST(Io, MapRoundTrip) {
  auto s = pipeline_sample(30, 3);
  json j = json::parse(map_to_json(s.map).dump());
  RootedMap back = map_from_json(j);
  EXPECT_EQ(back.map.next_array(), s.map.map.next_array());
  EXPECT_EQ(back.root, s.map.root);
  EXPECT_THROW(map_from_json(json{{"twin", {1, 0}}}), Error);
}

TEST(Io, SquaringRoundTrip) {
  auto sq = square_map<Rational>(fixtures::k4().rooted);
  json j = json::parse(squaring_to_json(sq).dump());
  EXPECT_EQ(j["lambda_exact"], "1");
  auto back = squaring_from_json(j);
  EXPECT_EQ(back.mode, SolveMode::Rational);
  ASSERT_EQ(back.squares.size(), sq.squares.size());
  for (std::size_t i = 0; i < sq.squares.size(); ++i) {
    EXPECT_EQ(back.squares[i].side, sq.squares[i].side.get_d());
    EXPECT_EQ(back.squares[i].degenerate, sq.squares[i].degenerate);
  }
  EXPECT_TRUE(validate_tiling(back).ok);
  // a bare array of squares is a tiling
  auto tiles = squaring_from_json(j["squares"]);
  EXPECT_EQ(tiles.lambda, 1.0);
}

TEST(Io, AtomicWrite) {
  auto dir = scratch("atomic");
  write_file_atomic(dir / "a" / "b.txt", "hello");
  EXPECT_EQ(read_file(dir / "a" / "b.txt"), "hello");
  EXPECT_FALSE(fs::exists(dir / "a" / "b.txt.tmp"));
  fs::remove_all(dir);
}

TEST(Run, SampleDirectoryIsReproducible) {
  auto a = scratch("run_a"), b = scratch("run_b");
  RunConfig cfg{17, SolveMode::Iterative, true};
  run_sample(a, 30, 2, cfg, {});
  run_sample(b, 30, 2, cfg, {});
  auto manifest = read_json(a / "manifest.json");
  ASSERT_EQ(manifest["files"].size(), 7u);
  for (auto& f : manifest["files"]) {
    const std::string rel = f.get<std::string>();
    EXPECT_EQ(read_file(a / rel), read_file(b / rel)) << rel;
  }
  EXPECT_EQ(read_file(a / "manifest.json"), read_file(b / "manifest.json"));
  fs::remove_all(a.parent_path());
}

TEST(Experiments, ThreeConnBasics) {
  EXPECT_THROW(experiment_threeconn(10, 0, 1), Error);
  auto r = experiment_threeconn(60, 400, 2);
  const double p = r.values["estimate"];
  EXPECT_GT(p, 0.2);
  EXPECT_LT(p, 0.5);
  EXPECT_GT(r.values["std_error"].get<double>(), 0);
  EXPECT_EQ(r.to_json().dump(), experiment_threeconn(60, 400, 2).to_json().dump());
}

TEST(Experiments, WidthIsPositive) {
  auto r = experiment_width(30, 60, 3);
  for (auto& w : r.samples) EXPECT_GT(w.get<double>(), 0);
  EXPECT_GT(r.values["median_lambda"].get<double>(), 0);
  EXPECT_TRUE(r.values.contains("ks_p"));
}

TEST(Experiments, DegreeTailOnThreeConnected) {
  auto r = experiment_degree_tail(40, 200, 4);
  EXPECT_GE(r.values["min_degree"].get<int>(), 3);
}

TEST(Experiments, FourCornerCountsRecorded) {
  auto r = experiment_fourcorner({10, 20}, 20, 5);
  ASSERT_EQ(r.samples.size(), 2u);
  EXPECT_EQ(r.samples[0]["counts"].size(), 20u);
  EXPECT_EQ(r.values["per_n"][0]["mode"], "rational");
}

TEST(Experiments, HausdorffIdenticalSnapshots) {
  auto seq = grow_sequence({30, 30}, 6);
  auto a = square_map<double>(seq[0].map), b = square_map<double>(seq[1].map);
  EXPECT_EQ(hausdorff_distance(a, b), 0);
  auto r = experiment_hausdorff({5, 10}, 3, 7, 100);
  EXPECT_EQ(r.samples.size(), 3u);
  const double f = r.values["bootstrap_monotone_fraction"];
  EXPECT_GE(f, 0);
  EXPECT_LE(f, 1);
}

TEST(Experiments, AccumulationProbeOnK4) {
  auto [x, y] = accumulation_probe(square_map<Rational>(fixtures::k4().rooted));
  EXPECT_DOUBLE_EQ(x, 0.5);
  EXPECT_DOUBLE_EQ(y, 0.5);
}
