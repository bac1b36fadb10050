#pragma once

// JSON formats for maps and squarings, and atomic file writes.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "combmap.hpp"
#include "core.hpp"
#include "squaring.hpp"

namespace sqmap {

using json = nlohmann::json;

// {"darts": D, "twin": [...], "next": [...], "root": r, "outer_face_dart": o}
inline json map_to_json(const RootedMap& m) {
  json j;
  j["darts"] = m.map.dart_count();
  j["twin"] = m.map.twin_array();
  j["next"] = m.map.next_array();
  j["root"] = m.root;
  j["outer_face_dart"] = m.outer_face_dart;
  j["vertices"] = m.map.vertex_count();
  j["edges"] = m.map.edge_count();
  j["faces"] = m.map.face_count();
  return j;
}

inline RootedMap map_from_json(const json& j) {
  try {
    auto twin = j.at("twin").get<std::vector<Dart>>();
    auto next = j.at("next").get<std::vector<Dart>>();
    const Dart root = j.at("root").get<Dart>();
    const Dart outer = j.contains("outer_face_dart") ? j.at("outer_face_dart").get<Dart>() : root;
    const auto D = static_cast<Dart>(twin.size());
    if (root < 0 || root >= D || outer < 0 || outer >= D) throw Error(Errc::MalformedRotation, "root dart out of range");
    return RootedMap{CombinatorialMap(std::move(twin), std::move(next)), root, outer};
  } catch (const json::exception& e) {
    throw Error(Errc::Io, std::string("map json: ") + e.what());
  }
}

template <class S>
json squaring_to_json(const Squaring<S>& s) {
  json j;
  j["mode"] = mode_name(s.mode);
  j["lambda"] = to_double(s.lambda);
  if constexpr (is_exact_v<S>) j["lambda_exact"] = to_string_exact(s.lambda);
  json sq = json::array();
  for (auto& q : s.squares) {
    json e{{"edge", q.edge}, {"x", to_double(q.x)}, {"y", to_double(q.y)}, {"side", to_double(q.side)}};
    if (q.degenerate) e["degenerate"] = true;
    if constexpr (is_exact_v<S>) e["exact"] = {to_string_exact(q.x), to_string_exact(q.y), to_string_exact(q.side)};
    sq.push_back(std::move(e));
  }
  j["squares"] = std::move(sq);
  json pl = json::array();
  for (auto& l : s.primal_lines)
    pl.push_back({{"vertex", l.vertex}, {"y", to_double(l.y)}, {"x0", to_double(l.x0)}, {"x1", to_double(l.x1)}});
  j["primal_lines"] = std::move(pl);
  json fl = json::array();
  for (auto& l : s.facial_lines)
    fl.push_back({{"face", l.face}, {"x", to_double(l.x)}, {"y0", to_double(l.y0)}, {"y1", to_double(l.y1)}});
  j["facial_lines"] = std::move(fl);
  return j;
}

// Reads the squares and lines back as doubles.  A bare array of squares is
// accepted as well, which is the tiling input format.
inline Squaring<double> squaring_from_json(const json& j) {
  Squaring<double> s;
  try {
    const json& arr = j.is_array() ? j : j.at("squares");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const auto& e = arr[k];
      Square<double> q;
      q.edge = e.contains("edge") ? e.at("edge").get<int>() : static_cast<int>(k);
      q.x = e.at("x").get<double>();
      q.y = e.at("y").get<double>();
      q.side = e.at("side").get<double>();
      if (q.side < 0) throw Error(Errc::InvalidTiling, "negative side");
      q.degenerate = e.value("degenerate", false) || is_zero_current(q.side);
      s.squares.push_back(q);
    }
    if (j.is_object()) {
      s.lambda = j.at("lambda").get<double>();
      if (j.value("mode", "iterative") == std::string("rational")) s.mode = SolveMode::Rational;
      for (auto& l : j.value("primal_lines", json::array()))
        s.primal_lines.push_back({l.at("vertex").get<int>(), l.at("y").get<double>(), l.at("x0").get<double>(),
                                  l.at("x1").get<double>()});
      for (auto& l : j.value("facial_lines", json::array()))
        s.facial_lines.push_back({l.at("face").get<int>(), l.at("x").get<double>(), l.at("y0").get<double>(),
                                  l.at("y1").get<double>()});
    } else {
      double right = 0;
      for (auto& q : s.squares) right = std::max(right, q.right());
      s.lambda = right;
    }
  } catch (const json::exception& e) {
    throw Error(Errc::Io, std::string("squaring json: ") + e.what());
  }
  return s;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json(const std::filesystem::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw Error(Errc::Io, p.string() + ": " + e.what());
  }
}

// Write to a sibling temporary and rename over the target.
inline void write_file_atomic(const std::filesystem::path& p, const std::string& content) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(Errc::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) throw Error(Errc::Io, "rename to " + p.string() + ": " + ec.message());
}

inline void write_json(const std::filesystem::path& p, const json& j) { write_file_atomic(p, j.dump(1) + "\n"); }

}  // namespace sqmap
