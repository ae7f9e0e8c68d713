#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "ate/decode.hpp"
#include "ate/detail/process.hpp"
#include "ate/error.hpp"
#include "ate/evaluate.hpp"
#include "ate/labeling.hpp"
#include "ate/token.hpp"

#ifndef ATE_ENCODER_SCRIPT
#define ATE_ENCODER_SCRIPT "ate_encoder.py"
#endif

namespace ate {

enum class BackendKind { mock_lexicon, encoder };

inline std::string to_string(BackendKind kind) {
  return kind == BackendKind::mock_lexicon ? "mock_lexicon" : "encoder";
}

inline BackendKind backend_kind_from_string(std::string_view s) {
  if (s == "mock_lexicon") return BackendKind::mock_lexicon;
  if (s == "encoder") return BackendKind::encoder;
  throw Error(ErrorKind::InvalidConfig, "unknown backend kind '" + std::string(s) + "'");
}

struct Hyperparams {
  double learning_rate = 2e-5;
  int epochs = 5;
  int max_seq_tokens = 256;
  int batch_size = 16;
  std::uint64_t seed = 42;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

struct BackendSpec {
  BackendKind kind = BackendKind::mock_lexicon;
  std::string model_id = "lexicon";
  Hyperparams hyperparams;

  void validate() const {
    if (hyperparams.epochs < 1) throw Error(ErrorKind::InvalidConfig, "epochs must be >= 1");
    if (hyperparams.max_seq_tokens < 16) throw Error(ErrorKind::InvalidConfig, "max_seq_tokens must be >= 16");
    if (hyperparams.batch_size < 1) throw Error(ErrorKind::InvalidConfig, "batch_size must be >= 1");
    if (!(hyperparams.learning_rate > 0.0)) throw Error(ErrorKind::InvalidConfig, "learning_rate must be > 0");
    if (model_id.empty()) throw Error(ErrorKind::InvalidConfig, "model_id is empty");
  }

  friend bool operator==(const BackendSpec&, const BackendSpec&) = default;
};

inline nlohmann::json to_json(const BackendSpec& spec) {
  const auto& h = spec.hyperparams;
  return {{"kind", to_string(spec.kind)},
          {"model_id", spec.model_id},
          {"hyperparams",
           {{"learning_rate", h.learning_rate},
            {"epochs", h.epochs},
            {"max_seq_tokens", h.max_seq_tokens},
            {"batch_size", h.batch_size},
            {"seed", h.seed}}}};
}

/// Missing hyperparameters fall back to the defaults.
inline BackendSpec backend_spec_from_json(const nlohmann::json& j) {
  BackendSpec spec;
  spec.kind = backend_kind_from_string(j.at("kind").get<std::string>());
  spec.model_id = j.value("model_id", spec.kind == BackendKind::mock_lexicon ? "lexicon" : "");
  if (j.contains("hyperparams")) {
    const auto& h = j.at("hyperparams");
    auto& hp = spec.hyperparams;
    hp.learning_rate = h.value("learning_rate", hp.learning_rate);
    hp.epochs = h.value("epochs", hp.epochs);
    hp.max_seq_tokens = h.value("max_seq_tokens", hp.max_seq_tokens);
    hp.batch_size = h.value("batch_size", hp.batch_size);
    hp.seed = h.value("seed", hp.seed);
  }
  spec.validate();
  return spec;
}

struct LexiconState {
  TermSet lexicon;
  bool case_insensitive = true;
};

struct EncoderState {
  std::filesystem::path checkpoint;
  int best_epoch = 0;
  std::vector<double> epoch_losses;
  std::vector<double> epoch_val_f1;
};

using FittedState = std::variant<std::monostate, LexiconState, EncoderState>;

struct TrainedTagger {
  BackendSpec spec;
  FittedState state;
  double val_f1 = 0.0;

  bool fitted() const { return !std::holds_alternative<std::monostate>(state); }
};

struct FitOptions {
  LabelingOptions labeling;
  /// Encoder scratch space; checkpoints land in `<work_dir>/checkpoints/`.
  std::filesystem::path work_dir;
};

/// Locates the Python helper that hosts the encoder runtime.
/// ATE_PYTHON and ATE_ENCODER_SCRIPT override the defaults.
class EncoderRuntime {
 public:
  static const EncoderRuntime& instance() {
    static const EncoderRuntime runtime;
    return runtime;
  }

  const std::string& python() const { return python_; }
  const std::string& script() const { return script_; }

  bool available() const {
    std::call_once(probe_once_, [this] {
      available_ = std::filesystem::exists(script_) &&
                   detail::run_process({python_, script_, "probe"}, "/dev/null") == 0;
    });
    return available_;
  }

  void run(std::vector<std::string> args, const std::filesystem::path& log) const {
    if (!available()) {
      throw Error(ErrorKind::BackendUnavailable,
                  "encoder runtime (python3 with torch and transformers) not found; script " + script_);
    }
    args.insert(args.begin(), {python_, script_});
    if (int rc = detail::run_process(args, log); rc != 0) {
      throw Error(ErrorKind::BackendFailure,
                  "encoder helper '" + args[2] + "' exited with " + std::to_string(rc) + "; see " + log.string());
    }
  }

 private:
  EncoderRuntime() {
    const char* py = std::getenv("ATE_PYTHON");
    python_ = py && *py ? py : "python3";
    const char* script = std::getenv("ATE_ENCODER_SCRIPT");
    script_ = script && *script ? script : ATE_ENCODER_SCRIPT;
  }

  std::string python_;
  std::string script_;
  mutable std::once_flag probe_once_;
  mutable bool available_ = false;
};

inline bool encoder_available() { return EncoderRuntime::instance().available(); }

namespace detail {

/// Fixed-window chunks of each sequence, plus the owning sequence index.
struct ChunkPlan {
  std::vector<std::vector<std::string>> chunks;
  std::vector<std::size_t> owner;
};

inline ChunkPlan plan_chunks(const std::vector<std::vector<Token>>& sequences, std::size_t max_tokens) {
  ChunkPlan plan;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    for (auto [b, e] : fixed_chunks(sequences[s].size(), max_tokens)) {
      std::vector<std::string> words;
      for (std::size_t k = b; k < e; ++k) words.push_back(sequences[s][k].surface);
      plan.chunks.push_back(std::move(words));
      plan.owner.push_back(s);
    }
  }
  return plan;
}

inline std::vector<Labels> stitch(const ChunkPlan& plan, const std::vector<Labels>& chunk_labels,
                                  std::size_t sequence_count) {
  std::vector<Labels> out(sequence_count);
  for (std::size_t c = 0; c < plan.chunks.size(); ++c) {
    if (chunk_labels[c].size() != plan.chunks[c].size()) {
      throw Error(ErrorKind::BackendFailure, "backend returned a label list of the wrong length");
    }
    auto& dst = out[plan.owner[c]];
    dst.insert(dst.end(), chunk_labels[c].begin(), chunk_labels[c].end());
  }
  return out;
}

inline void write_word_lists(const std::filesystem::path& path, const std::vector<std::vector<std::string>>& lists) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  for (const auto& words : lists) out << nlohmann::json{{"tokens", words}}.dump() << '\n';
}

inline std::vector<Labels> read_label_lists(const std::filesystem::path& path) {
  std::vector<Labels> out;
  for (const auto& seq : read_dataset_jsonl(path)) out.push_back(seq.labels);
  return out;
}

inline std::filesystem::path scratch_path(const std::string& stem) {
  static std::atomic<unsigned long> counter{0};
  return std::filesystem::temp_directory_path() /
         (stem + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".jsonl");
}

inline std::vector<Labels> predict_encoder(const EncoderState& state, const BackendSpec& spec,
                                           const std::vector<std::vector<Token>>& sequences) {
  const auto plan = plan_chunks(sequences, static_cast<std::size_t>(spec.hyperparams.max_seq_tokens));
  const auto input = scratch_path("ate-predict-in");
  const auto output = scratch_path("ate-predict-out");
  write_word_lists(input, plan.chunks);
  try {
    EncoderRuntime::instance().run({"predict", "--checkpoint", state.checkpoint.string(), "--input",
                                    input.string(), "--output", output.string()},
                                   state.checkpoint.parent_path() / "predict.log");
  } catch (...) {
    std::filesystem::remove(input);
    throw;
  }
  auto labels = read_label_lists(output);
  std::filesystem::remove(input);
  std::filesystem::remove(output);
  if (labels.size() != plan.chunks.size()) {
    throw Error(ErrorKind::BackendFailure, "encoder returned " + std::to_string(labels.size()) +
                                               " predictions for " + std::to_string(plan.chunks.size()) + " chunks");
  }
  return stitch(plan, labels, sequences.size());
}

inline double term_f1(const std::vector<LabeledSequence>& sequences, const std::vector<Labels>& predicted,
                      const TermSet& gold) {
  if (gold.empty() || sequences.empty()) return 0.0;
  std::vector<std::vector<std::string>> terms;
  for (std::size_t i = 0; i < sequences.size(); ++i) terms.push_back(decode_terms(sequences[i].tokens, predicted[i]));
  return compare(aggregate(terms, "val"), gold).f1;
}

}  // namespace detail

/// Labels each sequence, one label per token. Sequences longer than
/// max_seq_tokens are cut into fixed windows and predicted independently.
inline std::vector<Labels> predict(const TrainedTagger& tagger, const std::vector<std::vector<Token>>& sequences) {
  if (!tagger.fitted()) throw Error(ErrorKind::NotFitted, "tagger has not been fitted");
  const auto max_tokens = static_cast<std::size_t>(tagger.spec.hyperparams.max_seq_tokens);

  if (const auto* lexicon = std::get_if<LexiconState>(&tagger.state)) {
    LabelingOptions options;
    options.case_insensitive = lexicon->case_insensitive;
    const TermMatcher matcher(lexicon->lexicon, options);
    const auto plan = detail::plan_chunks(sequences, max_tokens);
    std::vector<Labels> chunk_labels;
    chunk_labels.reserve(plan.chunks.size());
    for (const auto& words : plan.chunks) chunk_labels.push_back(matcher.label(words));
    return detail::stitch(plan, chunk_labels, sequences.size());
  }
  if (sequences.empty()) return {};
  return detail::predict_encoder(std::get<EncoderState>(tagger.state), tagger.spec, sequences);
}

inline std::vector<Labels> predict(const TrainedTagger& tagger, const std::vector<LabeledSequence>& sequences) {
  std::vector<std::vector<Token>> tokens;
  tokens.reserve(sequences.size());
  for (const auto& s : sequences) tokens.push_back(s.tokens);
  return predict(tagger, tokens);
}

namespace detail {

inline TrainedTagger fit_encoder(const std::vector<LabeledSequence>& train, const std::vector<LabeledSequence>& val,
                                 const TermSet& val_gold, const BackendSpec& spec, const FitOptions& options) {
  namespace fs = std::filesystem;
  const auto& runtime = EncoderRuntime::instance();
  if (!runtime.available()) {
    throw Error(ErrorKind::BackendUnavailable, "encoder runtime (python3 with torch and transformers) not found");
  }
  const fs::path work = options.work_dir.empty() ? fs::temp_directory_path() / ("ate-fit-" + std::to_string(::getpid()))
                                                 : options.work_dir;
  const fs::path checkpoints = work / "checkpoints";
  fs::create_directories(checkpoints);

  const auto max_tokens = static_cast<std::size_t>(spec.hyperparams.max_seq_tokens);
  std::vector<LabeledSequence> train_chunks;
  for (const auto& seq : train) {
    for (auto& chunk : chunk_for_training(seq, max_tokens)) train_chunks.push_back(std::move(chunk));
  }
  std::vector<std::vector<Token>> val_tokens;
  for (const auto& seq : val) val_tokens.push_back(seq.tokens);
  const auto val_plan = plan_chunks(val_tokens, max_tokens);

  write_dataset_jsonl(work / "train.jsonl", train_chunks);
  write_word_lists(work / "val.jsonl", val_plan.chunks);

  const auto& h = spec.hyperparams;
  runtime.run({"train", "--train", (work / "train.jsonl").string(), "--val", (work / "val.jsonl").string(),
               "--out", checkpoints.string(), "--model-id", spec.model_id, "--learning-rate",
               std::to_string(h.learning_rate), "--epochs", std::to_string(h.epochs), "--batch-size",
               std::to_string(h.batch_size), "--max-seq-tokens", std::to_string(h.max_seq_tokens), "--seed",
               std::to_string(h.seed)},
              work / "train.log");

  EncoderState state;
  const auto log = nlohmann::json::parse(read_file(checkpoints / "train_log.json"));
  state.epoch_losses = log.at("epoch_losses").get<std::vector<double>>();

  double best = -1.0;
  for (int epoch = 1; epoch <= h.epochs; ++epoch) {
    const fs::path dir = checkpoints / ("epoch_" + std::to_string(epoch));
    double score = 0.0;
    if (!val.empty()) {
      auto chunk_labels = read_label_lists(dir / "val_pred.jsonl");
      if (chunk_labels.size() != val_plan.chunks.size()) {
        throw Error(ErrorKind::BackendFailure, "validation prediction count mismatch at epoch " + std::to_string(epoch));
      }
      score = term_f1(val, stitch(val_plan, chunk_labels, val.size()), val_gold);
    }
    state.epoch_val_f1.push_back(score);
    // Ties keep the earlier epoch; without validation data the last epoch wins.
    if (score > best || val.empty()) {
      best = score;
      state.best_epoch = epoch;
    }
  }
  for (int epoch = 1; epoch <= h.epochs; ++epoch) {
    if (epoch != state.best_epoch) fs::remove_all(checkpoints / ("epoch_" + std::to_string(epoch)));
  }
  state.checkpoint = checkpoints / ("epoch_" + std::to_string(state.best_epoch));

  TrainedTagger tagger{spec, std::move(state), std::max(best, 0.0)};
  return tagger;
}

}  // namespace detail

/// Trains a backend. The mock memorizes every B..I span of the training data;
/// the encoder fine-tunes and keeps the epoch with the best validation
/// term-level F1. `val_f1` is the term-level F1 on the validation split.
inline TrainedTagger fit(const std::vector<LabeledSequence>& train, const std::vector<LabeledSequence>& val,
                         const TermSet& val_gold, const BackendSpec& spec, const FitOptions& options = {}) {
  spec.validate();
  if (train.empty()) throw Error(ErrorKind::EmptyTraining, "no training sequences");

  if (spec.kind == BackendKind::encoder) return detail::fit_encoder(train, val, val_gold, spec, options);

  LexiconState state;
  state.case_insensitive = options.labeling.case_insensitive;
  state.lexicon.provenance = "lexicon";
  for (const auto& seq : train) {
    for (auto& term : decode_terms(seq.tokens, seq.labels)) state.lexicon.entries.insert(std::move(term));
  }
  TrainedTagger tagger{spec, std::move(state), 0.0};
  if (!val.empty() && !val_gold.empty()) tagger.val_f1 = detail::term_f1(val, predict(tagger, val), val_gold);
  return tagger;
}

inline TrainedTagger fit(const std::vector<LabeledSequence>& train, const std::vector<LabeledSequence>& val,
                         const GoldStandard& val_gold, const BackendSpec& spec, const FitOptions& options = {}) {
  return fit(train, val, val_gold.terms, spec, options);
}

inline nlohmann::json to_json(const TrainedTagger& tagger) {
  nlohmann::json j{{"spec", to_json(tagger.spec)}, {"val_f1", tagger.val_f1}};
  if (const auto* lexicon = std::get_if<LexiconState>(&tagger.state)) {
    j["lexicon"] = std::vector<std::string>(lexicon->lexicon.entries.begin(), lexicon->lexicon.entries.end());
    j["case_insensitive"] = lexicon->case_insensitive;
  } else if (const auto* encoder = std::get_if<EncoderState>(&tagger.state)) {
    j["checkpoint"] = encoder->checkpoint.string();
    j["best_epoch"] = encoder->best_epoch;
    j["epoch_losses"] = encoder->epoch_losses;
    j["epoch_val_f1"] = encoder->epoch_val_f1;
  }
  return j;
}

inline TrainedTagger tagger_from_json(const nlohmann::json& j) {
  TrainedTagger tagger;
  tagger.spec = backend_spec_from_json(j.at("spec"));
  tagger.val_f1 = j.value("val_f1", 0.0);
  if (j.contains("lexicon")) {
    LexiconState state;
    for (const auto& t : j.at("lexicon")) state.lexicon.entries.insert(t.get<std::string>());
    state.case_insensitive = j.value("case_insensitive", true);
    tagger.state = std::move(state);
  } else if (j.contains("checkpoint")) {
    EncoderState state;
    state.checkpoint = j.at("checkpoint").get<std::string>();
    state.best_epoch = j.value("best_epoch", 0);
    state.epoch_losses = j.value("epoch_losses", std::vector<double>{});
    state.epoch_val_f1 = j.value("epoch_val_f1", std::vector<double>{});
    tagger.state = std::move(state);
  }
  return tagger;
}

inline void save_tagger(const std::filesystem::path& path, const TrainedTagger& tagger) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << to_json(tagger).dump(2) << '\n';
}

inline TrainedTagger load_tagger(const std::filesystem::path& path) {
  return tagger_from_json(nlohmann::json::parse(read_file(path)));
}

}  // namespace ate
