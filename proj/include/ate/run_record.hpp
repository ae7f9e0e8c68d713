#pragma once

#include <array>
#include <optional>
#include <string>

#include "json.hpp"

#include "ate/corpus.hpp"
#include "ate/error.hpp"
#include "ate/evaluate.hpp"
#include "ate/tagger.hpp"

namespace ate {

enum class Pool { mono, multi };
enum class Strategy { union_, intersection };
enum class Combination { best_mono_plus_multi, two_best_mono, two_best_multi };
enum class SelectionMetric { val_f1, test_f1 };

inline std::string to_string(Pool p) { return p == Pool::mono ? "mono" : "multi"; }
inline std::string to_string(Strategy s) { return s == Strategy::union_ ? "union" : "intersection"; }
inline std::string to_string(SelectionMetric m) { return m == SelectionMetric::val_f1 ? "val_f1" : "test_f1"; }
inline std::string to_string(Combination c) {
  switch (c) {
    case Combination::best_mono_plus_multi: return "best_mono_plus_multi";
    case Combination::two_best_mono: return "two_best_mono";
    case Combination::two_best_multi: return "two_best_multi";
  }
  return "";
}

inline Pool pool_from_string(std::string_view s) {
  if (s == "mono") return Pool::mono;
  if (s == "multi") return Pool::multi;
  throw Error(ErrorKind::InvalidConfig, "unknown pool '" + std::string(s) + "'");
}
inline Strategy strategy_from_string(std::string_view s) {
  if (s == "union") return Strategy::union_;
  if (s == "intersection") return Strategy::intersection;
  throw Error(ErrorKind::InvalidConfig, "unknown ensemble strategy '" + std::string(s) + "'");
}
inline Combination combination_from_string(std::string_view s) {
  if (s == "best_mono_plus_multi") return Combination::best_mono_plus_multi;
  if (s == "two_best_mono") return Combination::two_best_mono;
  if (s == "two_best_multi") return Combination::two_best_multi;
  throw Error(ErrorKind::InvalidConfig, "unknown ensemble combination '" + std::string(s) + "'");
}
inline SelectionMetric selection_metric_from_string(std::string_view s) {
  if (s == "val_f1") return SelectionMetric::val_f1;
  if (s == "test_f1") return SelectionMetric::test_f1;
  throw Error(ErrorKind::InvalidConfig, "unknown selection metric '" + std::string(s) + "'");
}

struct EnsembleInfo {
  Strategy strategy = Strategy::union_;
  Combination combination = Combination::best_mono_plus_multi;
  SelectionMetric selection = SelectionMetric::val_f1;
  std::array<std::string, 2> members;
  double best_single_f1 = 0.0;
  double delta_f1_vs_best_single = 0.0;
};

/// One ledger line. Paths are relative to the ledger's directory.
struct RunRecord {
  std::string run_id;
  std::string language;
  SplitSpec split;
  BackendSpec backend;
  Variant variant = Variant::ANN;
  Pool pool = Pool::mono;
  EvalReport metrics;
  double val_f1 = 0.0;
  std::string termset_path;
  std::string gold_path;
  std::string corpus_checksum;
  std::string code_version;
  std::string timestamp;
  std::optional<EnsembleInfo> ensemble;

  bool is_ensemble() const { return ensemble.has_value(); }
  std::string key() const { return split_key(language, split.test_domain, variant); }
  std::string model_id() const { return backend.model_id; }
};

inline nlohmann::json to_json(const SplitSpec& s) {
  return {{"language", s.language}, {"train", s.train_domains}, {"val", s.val_domain},
          {"test", s.test_domain}, {"variant", to_string(s.variant)}};
}

inline SplitSpec split_spec_from_json(const nlohmann::json& j) {
  SplitSpec s;
  s.language = j.value("language", "");
  s.train_domains = j.value("train", std::vector<std::string>{});
  s.val_domain = j.value("val", "");
  s.test_domain = j.value("test", "");
  s.variant = variant_from_string(j.value("variant", "ANN"));
  return s;
}

inline nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json j{{"run_id", r.run_id},
                   {"kind", r.is_ensemble() ? "ensemble" : "single"},
                   {"language", r.language},
                   {"split", to_json(r.split)},
                   {"backend", to_json(r.backend)},
                   {"variant", to_string(r.variant)},
                   {"pool", to_string(r.pool)},
                   {"metrics", to_json(r.metrics)},
                   {"val_f1", r.val_f1},
                   {"termset_path", r.termset_path},
                   {"gold_path", r.gold_path},
                   {"corpus_checksum", r.corpus_checksum},
                   {"code_version", r.code_version},
                   {"timestamp", r.timestamp}};
  if (r.ensemble) {
    const auto& e = *r.ensemble;
    j["ensemble"] = {{"strategy", to_string(e.strategy)},
                     {"combination", to_string(e.combination)},
                     {"selection_metric", to_string(e.selection)},
                     {"members", {e.members[0], e.members[1]}},
                     {"best_single_f1", e.best_single_f1},
                     {"delta_f1_vs_best_single", e.delta_f1_vs_best_single}};
  }
  return j;
}

inline RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.run_id = j.at("run_id").get<std::string>();
  r.language = j.at("language").get<std::string>();
  r.split = split_spec_from_json(j.at("split"));
  r.backend = backend_spec_from_json(j.at("backend"));
  r.variant = variant_from_string(j.at("variant").get<std::string>());
  r.pool = pool_from_string(j.at("pool").get<std::string>());
  r.metrics = eval_report_from_json(j.at("metrics"));
  r.val_f1 = j.value("val_f1", 0.0);
  r.termset_path = j.value("termset_path", "");
  r.gold_path = j.value("gold_path", "");
  r.corpus_checksum = j.value("corpus_checksum", "");
  r.code_version = j.value("code_version", "");
  r.timestamp = j.value("timestamp", "");
  if (j.contains("ensemble")) {
    const auto& e = j.at("ensemble");
    EnsembleInfo info;
    info.strategy = strategy_from_string(e.at("strategy").get<std::string>());
    info.combination = combination_from_string(e.at("combination").get<std::string>());
    info.selection = selection_metric_from_string(e.value("selection_metric", "val_f1"));
    auto members = e.at("members").get<std::vector<std::string>>();
    if (members.size() != 2) throw Error(ErrorKind::InvalidArgument, "ensemble record needs two members");
    info.members = {members[0], members[1]};
    info.best_single_f1 = e.value("best_single_f1", 0.0);
    info.delta_f1_vs_best_single = e.value("delta_f1_vs_best_single", 0.0);
    r.ensemble = info;
  }
  return r;
}

}  // namespace ate
