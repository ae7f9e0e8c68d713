#pragma once

#include <cstddef>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "ate/decode.hpp"
#include "ate/error.hpp"

namespace ate {

/// Term-level comparison result. Percentages are kept at full precision;
/// rounding happens only when formatting.
struct EvalReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Harmonic mean of two percentages, 0 when both are 0.
inline double f1(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

inline EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn) {
  EvalReport r{tp, fp, fn};
  r.precision = tp + fp ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = tp + fn ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f1 = f1(r.precision, r.recall);
  return r;
}

/// Exact-match set comparison. An empty candidate set scores 0 precision.
inline EvalReport compare(const TermSet& candidates, const TermSet& gold) {
  if (gold.empty()) throw Error(ErrorKind::EmptyGold, "gold term set is empty");
  std::size_t tp = 0;
  // Both sides are ordered sets; a merge walk counts the intersection.
  auto c = candidates.entries.begin();
  auto g = gold.entries.begin();
  while (c != candidates.entries.end() && g != gold.entries.end()) {
    if (*c < *g) {
      ++c;
    } else if (*g < *c) {
      ++g;
    } else {
      ++tp;
      ++c;
      ++g;
    }
  }
  return make_report(tp, candidates.size() - tp, gold.size() - tp);
}

/// F1 of `a` minus F1 of `b`.
inline double delta(const EvalReport& a, const EvalReport& b) { return a.f1 - b.f1; }

/// Two decimals. printf rounds the exact binary value, ties to even.
inline std::string format_percent(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

inline nlohmann::json to_json(const EvalReport& r) {
  return {{"tp", r.tp}, {"fp", r.fp}, {"fn", r.fn},
          {"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
}

inline EvalReport eval_report_from_json(const nlohmann::json& j) {
  EvalReport r;
  r.tp = j.at("tp").get<std::size_t>();
  r.fp = j.at("fp").get<std::size_t>();
  r.fn = j.at("fn").get<std::size_t>();
  r.precision = j.at("precision").get<double>();
  r.recall = j.at("recall").get<double>();
  r.f1 = j.at("f1").get<double>();
  return r;
}

}  // namespace ate
