#pragma once

// JSON views of the report types and the results cache.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mforce/bitmatrix.hpp"
#include "mforce/forcing.hpp"
#include "mforce/search.hpp"
#include "mforce/strong_forcing.hpp"

namespace mforce {

using json = nlohmann::json;

/// Positions are written 1-based as [row, col].
inline json to_json(const std::vector<Position>& set) {
  json arr = json::array();
  for (const auto& p : set) arr.push_back({p.row + 1, p.col + 1});
  return arr;
}

inline json to_json(const CornerReport& r) {
  return json{{"nw", to_json(r.nw)},       {"ne", to_json(r.ne)},       {"se", to_json(r.se)},
              {"sw", to_json(r.sw)},       {"nw_shape", r.nw_shape},    {"ne_shape", r.ne_shape},
              {"se_shape", r.se_shape},    {"sw_shape", r.sw_shape},
              {"sizes", {{"nw", r.nw.size()}, {"ne", r.ne.size()}, {"se", r.se.size()}, {"sw", r.sw.size()}}}};
}

inline json to_json(const CoreDecomposition& d) {
  return json{{"top_zero_rows", d.top_zero_rows},
              {"bottom_zero_rows", d.bottom_zero_rows},
              {"left_zero_cols", d.left_zero_cols},
              {"right_zero_cols", d.right_zero_cols},
              {"core_rows", d.core.rows()},
              {"core_cols", d.core.cols()},
              {"core", serialize(d.core)}};
}

inline json to_json(const WitnessEmbedding& w) {
  json rows = json::array(), cols = json::array();
  for (auto r : w.row_sel) rows.push_back(r + 1);
  for (auto c : w.col_sel) cols.push_back(c + 1);
  return json{{"rows", rows}, {"cols", cols}};
}

inline json to_json(const SearchOutcome& o) {
  json wit = json::array();
  for (const auto& m : o.witnesses) wit.push_back(serialize(m));
  return json{{"status", to_string(o.status)},
              {"best_ones", o.best_ones},
              {"upper_bound", o.upper_bound},
              {"witnesses", wit},
              {"nodes_explored", o.nodes_explored},
              {"elapsed_ms", o.elapsed.count()}};
}

inline SearchStatus status_from_string(const std::string& s) {
  if (s == "exact") return SearchStatus::exact;
  if (s == "lower_bound_only") return SearchStatus::lower_bound_only;
  if (s == "budget_exhausted") return SearchStatus::budget_exhausted;
  throw std::invalid_argument("unknown search status '" + s + "'");
}

inline SearchOutcome outcome_from_json(const json& j) {
  SearchOutcome o;
  o.status = status_from_string(j.at("status").get<std::string>());
  o.best_ones = j.at("best_ones").get<std::size_t>();
  o.upper_bound = j.value("upper_bound", o.best_ones);
  for (const auto& w : j.at("witnesses")) o.witnesses.push_back(parse(w.get<std::string>()));
  o.nodes_explored = j.value("nodes_explored", std::uint64_t{0});
  o.elapsed = std::chrono::milliseconds(j.value("elapsed_ms", std::int64_t{0}));
  return o;
}

/// FNV-1a over the serialized pattern; stable across platforms.
inline std::string pattern_hash(const BitMatrix& q) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : serialize(q)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// "n,k" for identity patterns, "n,h<hash>" otherwise.
inline std::string cache_key(std::size_t n, const BitMatrix& q) {
  if (q == identity(q.rows())) return std::to_string(n) + "," + std::to_string(q.rows());
  return std::to_string(n) + ",h" + pattern_hash(q);
}

/// JSON object mapping cache keys to SearchOutcome objects.
class ResultsCache {
 public:
  ResultsCache() = default;
  explicit ResultsCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    std::stringstream buf;
    buf << in.rdbuf();
    if (buf.str().find_first_not_of(" \t\r\n") == std::string::npos) return;
    data_ = json::parse(buf.str());
    if (!data_.is_object()) throw std::runtime_error("results cache " + path_.string() + " is not a JSON object");
  }

  [[nodiscard]] std::optional<SearchOutcome> get(const std::string& key) const {
    if (!data_.contains(key)) return std::nullopt;
    return outcome_from_json(data_.at(key));
  }

  /// Keeps an existing exact entry over a non-exact one.
  void put(const std::string& key, const SearchOutcome& o) {
    if (auto old = get(key); old && old->status == SearchStatus::exact && o.status != SearchStatus::exact) return;
    data_[key] = to_json(o);
  }

  /// Exact values for identity patterns, usable by the recurrence.
  [[nodiscard]] ValueTable identity_values() const {
    ValueTable t;
    for (const auto& [key, val] : data_.items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) continue;
      const std::string rhs = key.substr(comma + 1);
      if (rhs.empty() || rhs.find_first_not_of("0123456789") != std::string::npos) continue;
      if (val.at("status").get<std::string>() != "exact") continue;
      t[{std::stoul(key.substr(0, comma)), std::stoul(rhs)}] = val.at("best_ones").get<std::size_t>();
    }
    return t;
  }

  void save() const {
    if (path_.empty()) throw std::logic_error("ResultsCache: no path");
    std::ofstream out(path_);
    out << data_.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write results cache " + path_.string());
  }

  [[nodiscard]] const json& data() const noexcept { return data_; }

 private:
  std::filesystem::path path_;
  json data_ = json::object();
};

}  // namespace mforce
