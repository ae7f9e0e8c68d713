#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ate/decode.hpp"
#include "ate/error.hpp"
#include "ate/evaluate.hpp"
#include "ate/run_record.hpp"

namespace ate {

struct EnsembleSpec {
  Strategy strategy = Strategy::union_;
  Combination combination = Combination::best_mono_plus_multi;
  std::array<std::string, 2> member_runs;

  void validate() const {
    if (member_runs[0] == member_runs[1]) {
      throw Error(ErrorKind::InvalidArgument, "ensemble members must be distinct runs");
    }
  }
};

/// Set union or intersection of two candidate lists from the same split.
inline TermSet combine(const TermSet& a, const TermSet& b, Strategy strategy) {
  if (!a.split_key.empty() && !b.split_key.empty() && a.split_key != b.split_key) {
    throw Error(ErrorKind::SplitMismatch, "cannot combine " + a.split_key + " with " + b.split_key);
  }
  TermSet out;
  out.split_key = a.split_key.empty() ? b.split_key : a.split_key;
  out.provenance = to_string(strategy) + "(" + a.provenance + "," + b.provenance + ")";
  if (strategy == Strategy::union_) {
    std::set_union(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
                   std::inserter(out.entries, out.entries.end()));
  } else {
    std::set_intersection(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
                          std::inserter(out.entries, out.entries.end()));
  }
  return out;
}

/// Latest record per run id, in first-appearance order. A forced re-run
/// appends a new record for the same id; readers see only the newest one.
inline std::vector<RunRecord> latest_records(const std::vector<RunRecord>& ledger) {
  std::map<std::string, std::size_t> position;
  std::vector<RunRecord> out;
  for (const auto& r : ledger) {
    if (auto it = position.find(r.run_id); it != position.end()) {
      out[it->second] = r;
    } else {
      position.emplace(r.run_id, out.size());
      out.push_back(r);
    }
  }
  return out;
}

inline double selection_score(const RunRecord& r, SelectionMetric metric) {
  return metric == SelectionMetric::val_f1 ? r.val_f1 : r.metrics.f1;
}

/// Picks the two ensemble members: the best run of each pool for
/// best_mono_plus_multi, else the top two of one pool. Ranking is by the
/// selection metric, descending, ties broken by ascending run id.
/// An empty `split` requires the ledger to hold a single split.
inline std::pair<std::string, std::string> select_members(const std::vector<RunRecord>& ledger,
                                                          Combination combination, SelectionMetric metric,
                                                          const std::string& split = {}) {
  std::vector<RunRecord> eligible;
  std::set<std::string> splits;
  for (const auto& r : latest_records(ledger)) {
    if (r.is_ensemble() || (!split.empty() && r.key() != split)) continue;
    eligible.push_back(r);
    splits.insert(r.key());
  }
  if (splits.size() > 1) {
    throw Error(ErrorKind::InvalidArgument, "ledger holds " + std::to_string(splits.size()) +
                                                " splits; name the one to ensemble");
  }

  auto ranked = [&](Pool pool) {
    std::vector<const RunRecord*> out;
    for (const auto& r : eligible) {
      if (r.pool == pool) out.push_back(&r);
    }
    std::sort(out.begin(), out.end(), [&](const RunRecord* a, const RunRecord* b) {
      const double sa = selection_score(*a, metric);
      const double sb = selection_score(*b, metric);
      if (sa != sb) return sa > sb;
      return a->run_id < b->run_id;
    });
    return out;
  };
  auto insufficient = [&](const std::string& what) {
    return Error(ErrorKind::InsufficientRuns, "need " + what + " for " + to_string(combination) +
                                                  (split.empty() ? std::string() : " on " + split));
  };

  switch (combination) {
    case Combination::best_mono_plus_multi: {
      auto mono = ranked(Pool::mono);
      auto multi = ranked(Pool::multi);
      if (mono.empty() || multi.empty()) throw insufficient("at least one mono and one multi run");
      return {mono.front()->run_id, multi.front()->run_id};
    }
    case Combination::two_best_mono:
    case Combination::two_best_multi: {
      auto pool = ranked(combination == Combination::two_best_mono ? Pool::mono : Pool::multi);
      if (pool.size() < 2) throw insufficient("two runs in the pool");
      return {pool[0]->run_id, pool[1]->run_id};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown combination");
}

struct Improvement {
  double delta_f1_vs_best_single = 0.0;
  double best_single_f1 = 0.0;
};

/// Ensemble F1 minus the better member's F1; negative for a decline.
inline Improvement improvement_report(const EvalReport& ensemble_report,
                                      const std::pair<EvalReport, EvalReport>& member_reports) {
  const double best = std::max(member_reports.first.f1, member_reports.second.f1);
  return {ensemble_report.f1 - best, best};
}

}  // namespace ate
