#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "distprof/errors.hpp"
#include "distprof/metric.hpp"
#include "distprof/profile.hpp"
#include "distprof/symbols.hpp"

namespace distprof {

// Symbol table from the metric file: UTF-8 tokens, ids assigned by order
// of appearance.
struct Alphabet {
  std::vector<std::string> symbols;
  std::unordered_map<std::string, Symbol> index;
};

struct MetricFile {
  MetricSpace space;  // validated, not yet normalized
  Alphabet alphabet;
};

inline MetricFile load_metric_json(const nlohmann::json& j,
                                   bool check_triangle = true) {
  if (!j.is_object() || !j.contains("type") || !j.contains("symbols")) {
    throw ParseError("metric file needs \"type\" and \"symbols\"");
  }
  Alphabet alpha;
  for (const auto& s : j.at("symbols")) {
    const std::string tok = s.get<std::string>();
    if (alpha.index.count(tok)) {
      throw ParseError("duplicate symbol token \"" + tok + "\"");
    }
    alpha.index.emplace(tok, static_cast<Symbol>(alpha.symbols.size()));
    alpha.symbols.push_back(tok);
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "finite") {
    auto matrix = j.at("matrix").get<std::vector<std::vector<double>>>();
    if (matrix.size() != alpha.symbols.size()) {
      throw ParseError("matrix size does not match symbol count");
    }
    return {MetricSpace::finite(matrix, check_triangle), std::move(alpha)};
  }
  if (type == "normed") {
    double p;
    const auto& pj = j.at("p");
    if (pj.is_string()) {
      const std::string s = pj.get<std::string>();
      if (s != "inf" && s != "Inf" && s != "infinity") {
        throw ParseError("norm exponent must be a number or \"inf\"");
      }
      p = std::numeric_limits<double>::infinity();
    } else {
      p = pj.get<double>();
    }
    auto points = j.at("points").get<std::vector<std::vector<double>>>();
    if (points.size() != alpha.symbols.size()) {
      throw ParseError("point count does not match symbol count");
    }
    return {MetricSpace::normed(points, p), std::move(alpha)};
  }
  throw ParseError("metric type must be \"finite\" or \"normed\"");
}

inline MetricFile load_metric_file(const std::string& path,
                                   bool check_triangle = true) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open metric file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return load_metric_json(j, check_triangle);
}

// Whitespace-separated tokens matched against the alphabet; the wildcard
// token (default "?") maps to WILDCARD.
inline SymbolString parse_tokens(const std::string& content,
                                 const Alphabet& alpha,
                                 const std::string& wildcard_token = "?") {
  SymbolString out;
  std::istringstream in(content);
  std::string tok;
  while (in >> tok) {
    if (tok == wildcard_token) {
      out.push_back(WILDCARD);
      continue;
    }
    const auto it = alpha.index.find(tok);
    if (it == alpha.index.end()) {
      throw ParseError("token \"" + tok + "\" is not in the metric alphabet");
    }
    out.push_back(it->second);
  }
  return out;
}

// Raw bytes as symbols 0..255.
inline SymbolString parse_bytes(const std::string& content) {
  SymbolString out;
  out.reserve(content.size());
  for (unsigned char c : content) out.push_back(static_cast<Symbol>(c));
  return out;
}

inline SymbolString load_symbols_file(const std::string& path,
                                      const Alphabet& alpha, bool bytes_mode,
                                      const std::string& wildcard_token = "?") {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return bytes_mode ? parse_bytes(buf.str())
                    : parse_tokens(buf.str(), alpha, wildcard_token);
}

inline nlohmann::json profile_to_json(const DistanceProfile& prof,
                                      std::size_t n, std::size_t m,
                                      const nlohmann::json& params) {
  nlohmann::json j;
  j["mode"] = prof.mode;
  j["n"] = n;
  j["m"] = m;
  j["offsets"] = prof.values.size();
  j["profile"] = prof.values;
  j["scale"] = prof.scale;
  j["params"] = params;
  nlohmann::json diag = nlohmann::json::object();
  if (prof.mode == "approx") {
    diag["levels"] = prof.levels;
    diag["family_c"] = prof.family_c;
    diag["k_iterations"] = prof.k_iterations;
    diag["total_samples"] = prof.total_samples;
    nlohmann::json per_level = nlohmann::json::array();
    for (std::size_t li = 0; li < prof.diagnostics.size(); ++li) {
      const auto& lvl = prof.diagnostics[li];
      double mean_m0 = 0.0, mean_m1 = 0.0;
      std::size_t low = 0;
      for (const auto& e : lvl) {
        mean_m0 += static_cast<double>(e.m0);
        mean_m1 += static_cast<double>(e.m1);
        low += e.low_confidence ? 1 : 0;
      }
      const double cnt = lvl.empty() ? 1.0 : static_cast<double>(lvl.size());
      per_level.push_back({{"D", prof.levels[li]},
                           {"mean_m0", mean_m0 / cnt},
                           {"mean_m1", mean_m1 / cnt},
                           {"low_confidence_offsets", low}});
    }
    diag["per_level"] = per_level;
  }
  j["diagnostics"] = diag;
  j["low_confidence_offsets"] = prof.low_confidence_offsets;
  return j;
}

inline std::string profile_to_csv(const DistanceProfile& prof) {
  std::ostringstream out;
  std::vector<bool> low(prof.values.size(), false);
  for (auto i : prof.low_confidence_offsets) low[i] = true;
  const bool approx = prof.mode == "approx";
  out << (approx ? "offset,value,low_confidence\n" : "offset,value\n");
  out.precision(17);
  for (std::size_t i = 0; i < prof.values.size(); ++i) {
    out << i << ',' << prof.values[i];
    if (approx) out << ',' << (low[i] ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

}  // namespace distprof
