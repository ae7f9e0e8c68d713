#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ate/config.hpp"
#include "ate/corpus.hpp"
#include "ate/decode.hpp"
#include "ate/ensemble.hpp"
#include "ate/error.hpp"
#include "ate/evaluate.hpp"
#include "ate/labeling.hpp"
#include "ate/ledger.hpp"
#include "ate/run_record.hpp"
#include "ate/tagger.hpp"

namespace ate {

struct RunOptions {
  bool force = false;
  std::ostream* log = nullptr;
};

namespace detail {

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

inline std::string gold_file_name(const SplitSpec& split) {
  return "gold/" + split.language + "_" + split.test_domain + "_" + to_string(split.variant) + ".terms.txt";
}

inline void note(const RunOptions& options, const std::string& message) {
  if (options.log) *options.log << message << '\n';
}

}  // namespace detail

/// Corpus, split and compiled datasets for one configuration.
struct PreparedRun {
  RunConfig config;
  Corpus corpus;
  Split split;
  std::string run_id;
  std::vector<LabeledSequence> train;
  std::vector<LabeledSequence> val;
  std::vector<LabeledSequence> test;
};

/// Loads and validates everything a run needs without training anything.
inline PreparedRun prepare_run(const RunConfig& config) {
  config.backend.validate();
  PreparedRun run;
  run.config = config;
  LoadOptions load;
  load.required_variants = {config.variant()};
  run.corpus = load_corpus(config.corpus_root, Layout::canonical, load);
  run.split = make_split(run.corpus, config.split);
  run.run_id = compute_run_id(config, run.corpus.checksum);
  run.train = compile_dataset(run.split.train_docs, run.split.train_gold, config.labeling);
  run.val = compile_dataset(run.split.val_docs, run.split.val_gold, config.labeling);
  run.test = compile_dataset(run.split.test_docs, run.split.test_gold, config.labeling);
  return run;
}

/// load -> split -> compile -> fit -> predict -> decode -> aggregate -> compare,
/// then writes `<out>/<run_id>.terms.txt` and appends one ledger record. The
/// ledger is written last, so a failed run leaves no entry.
inline RunRecord run_experiment(const RunConfig& config, const RunOptions& options = {}) {
  namespace fs = std::filesystem;
  PreparedRun run = prepare_run(config);
  const Ledger ledger(config.output_dir);
  if (!options.force && ledger.contains(run.run_id)) {
    throw Error(ErrorKind::DuplicateRun, "run " + run.run_id + " already in " + ledger.path().string() +
                                             " (use --force to re-run)");
  }
  detail::note(options, "run " + run.run_id + ": " + describe(config.split) + " " + to_string(config.variant()) +
                            " with " + config.backend.model_id);
  detail::note(options, run.corpus.summary());

  FitOptions fit_options;
  fit_options.labeling = config.labeling;
  fit_options.work_dir = config.output_dir / run.run_id;
  const TrainedTagger tagger = fit(run.train, run.val, run.split.val_gold, config.backend, fit_options);

  const auto predicted = predict(tagger, run.test);
  std::vector<std::vector<std::string>> terms;
  terms.reserve(run.test.size());
  for (std::size_t i = 0; i < run.test.size(); ++i) terms.push_back(decode_terms(run.test[i].tokens, predicted[i]));
  TermSet candidates = aggregate(terms, run.run_id);
  candidates.split_key = split_key(config.split);

  const EvalReport report = compare(candidates, run.split.test_gold.terms);

  RunRecord record;
  record.run_id = run.run_id;
  record.language = config.language();
  record.split = config.split;
  record.backend = config.backend;
  record.variant = config.variant();
  record.pool = config.pool;
  record.metrics = report;
  record.val_f1 = tagger.val_f1;
  record.termset_path = run.run_id + ".terms.txt";
  record.gold_path = detail::gold_file_name(config.split);
  record.corpus_checksum = run.corpus.checksum;
  record.code_version = kCodeVersion;
  record.timestamp = detail::utc_timestamp();

  write_termset_file(config.output_dir / record.termset_path, candidates);
  write_termset_file(config.output_dir / record.gold_path, run.split.test_gold.terms);
  detail::write_json(config.output_dir / (run.run_id + ".eval.json"), to_json(report));
  if (config.backend.kind == BackendKind::mock_lexicon) {
    save_tagger(config.output_dir / (run.run_id + ".tagger.json"), tagger);
  } else {
    save_tagger(fit_options.work_dir / "tagger.json", tagger);
  }
  ledger.append(record, options.force);
  detail::note(options, "  P=" + format_percent(report.precision) + " R=" + format_percent(report.recall) +
                            " F1=" + format_percent(report.f1) + " (val F1=" + format_percent(tagger.val_f1) + ")");
  return record;
}

inline RunRecord run_experiment(const std::filesystem::path& config_path, const RunOptions& options = {}) {
  return run_experiment(load_run_config(config_path), options);
}

struct MatrixResult {
  std::vector<RunRecord> records;
  std::vector<std::pair<std::string, std::string>> failures;  // (label, message)

  bool ok() const { return failures.empty(); }
};

/// Expands a matrix file into run configurations. Accepted keys:
///   "configs": list of config paths or inline config objects;
///   "base" + "rsdo5_splits": true rotates the base config over the 12
///   two-train/one-val/one-test splits of its four-domain corpus;
///   "backends": list of {"backend": {...}, "pool": ...} applied to every
///   expanded config (outer loop over splits, inner over backends).
inline std::vector<RunConfig> expand_matrix(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  std::vector<RunConfig> configs;
  try {
    if (j.contains("configs")) {
      for (const auto& entry : j.at("configs")) {
        if (entry.is_string()) {
          std::filesystem::path p(entry.get<std::string>());
          configs.push_back(load_run_config(p.is_relative() ? base_dir / p : p));
        } else {
          configs.push_back(parse_run_config(entry, base_dir));
        }
      }
    }
    if (j.contains("base")) {
      nlohmann::json base = j.at("base");
      const auto backends = j.value("backends", nlohmann::json::array());
      // The backend list stands in for a missing base backend.
      if (!base.contains("backend") && !backends.empty()) base["backend"] = backends.front().at("backend");
      std::vector<RunConfig> bases;
      if (j.value("rsdo5_splits", false)) {
        base["split"] = {{"train", nlohmann::json::array({"_"})}, {"test", "_"}};
        RunConfig seed = parse_run_config(base, base_dir);
        LoadOptions load;
        load.required_variants = {seed.variant()};
        const Corpus corpus = load_corpus(seed.corpus_root, Layout::canonical, load);
        for (const auto& split : enumerate_rsdo5_splits(corpus, seed.language(), seed.variant())) {
          RunConfig c = seed;
          c.split = split;
          bases.push_back(std::move(c));
        }
      } else {
        bases.push_back(parse_run_config(base, base_dir));
      }
      for (const auto& c : bases) {
        if (backends.empty()) {
          configs.push_back(c);
          continue;
        }
        for (const auto& b : backends) {
          RunConfig variant = c;
          variant.backend = backend_spec_from_json(b.at("backend"));
          variant.pool = pool_from_string(b.value("pool", to_string(c.pool)));
          configs.push_back(std::move(variant));
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  return configs;
}

inline std::vector<RunConfig> load_matrix(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, path.string() + ": " + e.what());
  }
  return expand_matrix(j, path.parent_path());
}

/// Runs configs one after another; a failing config is recorded and skipped.
inline MatrixResult run_matrix(const std::vector<RunConfig>& configs, const RunOptions& options = {}) {
  MatrixResult result;
  for (const auto& config : configs) {
    const std::string label = describe(config.split) + " " + to_string(config.variant()) + " " + config.backend.model_id;
    try {
      result.records.push_back(run_experiment(config, options));
    } catch (const Error& e) {
      result.failures.emplace_back(label, e.what());
      detail::note(options, "  failed: " + std::string(e.what()));
    }
  }
  return result;
}

struct EnsembleRequest {
  Strategy strategy = Strategy::union_;
  Combination combination = Combination::best_mono_plus_multi;
  SelectionMetric selection = SelectionMetric::val_f1;
  /// Split to ensemble ("<language>/<test>/<variant>"); empty = every split in the ledger.
  std::string split;
  /// Explicit members; skips selection when set.
  std::optional<std::array<std::string, 2>> members;
};

/// Ensembles two runs from the ledger in `out_dir` and appends the result as
/// an ensemble record. Writes `<id>.terms.txt`, `<id>.eval.json` and
/// `<id>.ensemble.json` next to the ledger.
inline RunRecord run_ensemble_for_split(const std::filesystem::path& out_dir, const EnsembleRequest& request,
                                        const std::string& split, const RunOptions& options = {}) {
  const Ledger ledger(out_dir);
  const auto records = latest_records(ledger.read());

  std::array<std::string, 2> members;
  if (request.members) {
    members = *request.members;
  } else {
    auto [a, b] = select_members(records, request.combination, request.selection, split);
    members = {a, b};
  }
  EnsembleSpec spec{request.strategy, request.combination, members};
  spec.validate();

  auto find = [&](const std::string& id) -> const RunRecord& {
    for (const auto& r : records) {
      if (r.run_id == id && !r.is_ensemble()) return r;
    }
    throw Error(ErrorKind::InvalidArgument, "run " + id + " not found in " + ledger.path().string());
  };
  const RunRecord& a = find(members[0]);
  const RunRecord& b = find(members[1]);

  auto load_member = [&](const RunRecord& r) {
    TermSet set = read_termset_file(out_dir / r.termset_path);
    set.provenance = r.run_id;
    set.split_key = r.key();
    return set;
  };
  const TermSet combined = combine(load_member(a), load_member(b), request.strategy);
  TermSet gold = read_termset_file(out_dir / a.gold_path);
  const EvalReport report = compare(combined, gold);
  const Improvement improvement = improvement_report(report, {a.metrics, b.metrics});

  RunRecord record;
  record.run_id = sha256_hex(nlohmann::json{{"strategy", to_string(request.strategy)},
                                            {"combination", to_string(request.combination)},
                                            {"selection", to_string(request.selection)},
                                            {"members", members},
                                            {"code_version", kCodeVersion}}
                                 .dump())
                      .substr(0, 16);
  record.language = a.language;
  record.split = a.split;
  record.backend = a.backend;
  record.backend.model_id = to_string(request.strategy) + "(" + a.model_id() + "," + b.model_id() + ")";
  record.variant = a.variant;
  record.pool = a.pool;
  record.metrics = report;
  record.termset_path = record.run_id + ".terms.txt";
  record.gold_path = a.gold_path;
  record.corpus_checksum = a.corpus_checksum;
  record.code_version = kCodeVersion;
  record.timestamp = detail::utc_timestamp();
  record.ensemble = EnsembleInfo{request.strategy, request.combination, request.selection, members,
                                 improvement.best_single_f1, improvement.delta_f1_vs_best_single};

  if (!options.force && ledger.contains(record.run_id)) {
    throw Error(ErrorKind::DuplicateRun, "ensemble " + record.run_id + " already in " + ledger.path().string());
  }
  write_termset_file(out_dir / record.termset_path, combined);
  detail::write_json(out_dir / (record.run_id + ".eval.json"), to_json(report));
  detail::write_json(out_dir / (record.run_id + ".ensemble.json"),
                     {{"strategy", to_string(request.strategy)},
                      {"combination", to_string(request.combination)},
                      {"selection_metric", to_string(request.selection)},
                      {"members", members},
                      {"best_single_f1", improvement.best_single_f1},
                      {"delta_f1_vs_best_single", improvement.delta_f1_vs_best_single}});
  ledger.append(record, options.force);
  return record;
}

inline std::vector<RunRecord> run_ensemble(const std::filesystem::path& out_dir, const EnsembleRequest& request,
                                           const RunOptions& options = {}) {
  if (!request.split.empty() || request.members) {
    return {run_ensemble_for_split(out_dir, request, request.split, options)};
  }
  std::vector<std::string> splits;
  for (const auto& r : latest_records(Ledger(out_dir).read())) {
    if (!r.is_ensemble() && std::find(splits.begin(), splits.end(), r.key()) == splits.end()) {
      splits.push_back(r.key());
    }
  }
  if (splits.empty()) throw Error(ErrorKind::EmptyLedger, "no runs in " + (out_dir / "runs.jsonl").string());
  std::vector<RunRecord> out;
  for (const auto& split : splits) out.push_back(run_ensemble_for_split(out_dir, request, split, options));
  return out;
}

}  // namespace ate
