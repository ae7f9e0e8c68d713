// ate: command-line front end for the term extraction toolkit.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ate/ate.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool force = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_config) {
  auto* opt = cmd->add_option("--config", flags.config, "Run configuration (JSON)");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.out, "Output directory (overrides output_dir)");
  cmd->add_option("--seed", flags.seed, "Seed (overrides backend.hyperparams.seed)");
  cmd->add_flag("--force", flags.force, "Re-run even if the run id is already in the ledger");
}

ate::RunConfig apply_overrides(ate::RunConfig config, const CommonFlags& flags) {
  if (!flags.out.empty()) config.output_dir = flags.out;
  if (flags.seed) config.backend.hyperparams.seed = *flags.seed;
  return config;
}

void print_report(const ate::EvalReport& r) { std::cout << ate::to_json(r).dump(2) << '\n'; }

int cmd_compile(const CommonFlags& flags) {
  const auto config = apply_overrides(ate::load_run_config(flags.config), flags);
  const auto run = ate::prepare_run(config);
  const fs::path dir = config.output_dir / "dataset";
  ate::write_dataset_jsonl(dir / "train.jsonl", run.train);
  ate::write_dataset_jsonl(dir / "val.jsonl", run.val);
  ate::write_dataset_jsonl(dir / "test.jsonl", run.test);
  std::cerr << run.corpus.summary();
  std::cout << "train " << run.train.size() << " / val " << run.val.size() << " / test " << run.test.size()
            << " sequences -> " << dir.string() << '\n';
  return 0;
}

int cmd_train(const CommonFlags& flags) {
  const auto config = apply_overrides(ate::load_run_config(flags.config), flags);
  const auto run = ate::prepare_run(config);
  ate::FitOptions options;
  options.labeling = config.labeling;
  options.work_dir = config.output_dir / ("train-" + run.run_id);
  const auto tagger = ate::fit(run.train, run.val, run.split.val_gold, config.backend, options);
  const fs::path path = config.output_dir / "tagger.json";
  ate::save_tagger(path, tagger);
  std::cout << "val F1 " << ate::format_percent(tagger.val_f1) << " -> " << path.string() << '\n';
  return 0;
}

int cmd_predict(const std::string& tagger_path, const std::string& input, const std::string& out,
                const std::string& name) {
  const auto tagger = ate::load_tagger(tagger_path);
  const auto sequences = ate::read_dataset_jsonl(input);
  const auto labels = ate::predict(tagger, sequences);
  std::vector<ate::LabeledSequence> predicted;
  std::vector<std::vector<std::string>> terms;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    predicted.push_back({sequences[i].doc_id, sequences[i].tokens, labels[i]});
    terms.push_back(ate::decode_terms(sequences[i].tokens, labels[i]));
  }
  const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  ate::write_dataset_jsonl(dir / "predictions.jsonl", predicted);
  const auto set = ate::aggregate(terms, name);
  ate::write_termset_file(dir / (name + ".terms.txt"), set);
  std::cout << set.size() << " candidate terms -> " << (dir / (name + ".terms.txt")).string() << '\n';
  return 0;
}

int cmd_evaluate(const std::string& candidates, const std::string& gold, const std::string& out) {
  const auto report = ate::compare(ate::load_term_list(candidates), ate::load_term_list(gold));
  if (!out.empty()) ate::detail::write_json(fs::path(out) / "eval.json", ate::to_json(report));
  print_report(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-domain automatic term extraction toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* compile = app.add_subcommand("compile", "Compile train/val/test IOB datasets for a config");
  add_common(compile, flags, true);

  auto* train = app.add_subcommand("train", "Fit the configured backend and save the tagger");
  add_common(train, flags, true);

  std::string tagger_path, input, run_name = "predictions";
  auto* predict = app.add_subcommand("predict", "Label a dataset and write its candidate term set");
  add_common(predict, flags, false);
  predict->add_option("--tagger", tagger_path, "Tagger JSON written by `train`")->required()->check(CLI::ExistingFile);
  predict->add_option("--input", input, "Dataset JSONL to label")->required()->check(CLI::ExistingFile);
  predict->add_option("--name", run_name, "Stem of the written <name>.terms.txt");

  std::string candidates, gold;
  auto* evaluate = app.add_subcommand("evaluate", "Compare a candidate term list against a gold list");
  add_common(evaluate, flags, false);
  evaluate->add_option("--candidates", candidates, "Candidate terms, one per line")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--gold", gold, "Gold terms, one per line (TSV label column ignored)")
      ->required()
      ->check(CLI::ExistingFile);

  std::string strategy = "union", combination = "best_mono_plus_multi", selection = "val_f1", split;
  std::vector<std::string> members;
  auto* ensemble = app.add_subcommand("ensemble", "Combine the two selected runs of a ledger");
  add_common(ensemble, flags, false);
  ensemble->add_option("--strategy", strategy, "union | intersection");
  ensemble->add_option("--combination", combination, "best_mono_plus_multi | two_best_mono | two_best_multi");
  ensemble->add_option("--selection", selection, "val_f1 | test_f1");
  ensemble->add_option("--split", split, "<language>/<test_domain>/<variant>; default: every split");
  ensemble->add_option("--members", members, "Explicit member run ids (two)")->expected(2);

  std::string kind = "acter_table";
  auto* report = app.add_subcommand("report", "Render a results table from the ledger");
  add_common(report, flags, false);
  report->add_option("--kind", kind, "acter_table | rsdo5_table | ensemble_improvement");

  auto* experiment = app.add_subcommand("experiment", "Run one configuration end to end");
  add_common(experiment, flags, true);

  auto* matrix = app.add_subcommand("matrix", "Run every configuration of a matrix file");
  add_common(matrix, flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  ate::RunOptions run_options;
  run_options.force = flags.force;
  run_options.log = &std::cerr;

  try {
    if (*compile) return cmd_compile(flags);
    if (*train) return cmd_train(flags);
    if (*predict) return cmd_predict(tagger_path, input, flags.out, run_name);
    if (*evaluate) return cmd_evaluate(candidates, gold, flags.out);
    if (*experiment) {
      const auto config = apply_overrides(ate::load_run_config(flags.config), flags);
      const auto record = ate::run_experiment(config, run_options);
      std::cout << record.run_id << '\n';
      print_report(record.metrics);
      return 0;
    }
    if (*matrix) {
      auto configs = ate::load_matrix(flags.config);
      for (auto& c : configs) c = apply_overrides(std::move(c), flags);
      const auto result = ate::run_matrix(configs, run_options);
      std::cout << result.records.size() << " runs completed, " << result.failures.size() << " failed\n";
      for (const auto& [label, message] : result.failures) std::cout << "  " << label << ": " << message << '\n';
      return result.ok() ? 0 : 2;
    }
    const fs::path out = flags.out.empty() ? fs::path("runs") : fs::path(flags.out);
    if (*ensemble) {
      ate::EnsembleRequest request;
      request.strategy = ate::strategy_from_string(strategy);
      request.combination = ate::combination_from_string(combination);
      request.selection = ate::selection_metric_from_string(selection);
      request.split = split;
      if (!members.empty()) request.members = std::array<std::string, 2>{members.at(0), members.at(1)};
      for (const auto& r : ate::run_ensemble(out, request, run_options)) {
        std::cout << r.run_id << ' ' << r.key() << ' ' << r.backend.model_id << " F1="
                  << ate::format_percent(r.metrics.f1) << " delta="
                  << ate::format_percent(r.ensemble->delta_f1_vs_best_single) << '\n';
      }
      return 0;
    }
    if (*report) {
      const auto rendered = ate::render_report(ate::Ledger(out).read(), ate::report_kind_from_string(kind));
      fs::create_directories(out / "reports");
      std::ofstream(out / "reports" / (kind + ".md"), std::ios::binary) << rendered.markdown;
      std::ofstream(out / "reports" / (kind + ".tsv"), std::ios::binary) << rendered.tsv;
      std::cout << rendered.markdown;
      return 0;
    }
  } catch (const ate::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ate::is_validation_error(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
