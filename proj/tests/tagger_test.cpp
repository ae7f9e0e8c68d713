#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "ate/tagger.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace ate {
namespace {

using L = Label;

LabeledSequence seq(std::vector<std::string> words, Labels labels) {
  return {"d", tokens_from_surfaces(words), std::move(labels)};
}

BackendSpec mock_spec(int max_seq_tokens = 256) {
  BackendSpec spec;
  spec.hyperparams.max_seq_tokens = max_seq_tokens;
  return spec;
}

TEST(MockTagger, MemorizesTrainingSpans) {
  const std::vector<LabeledSequence> train = {
      seq({"wind", "energy", "is", "cheap"}, {L::B, L::I, L::O, L::O}),
      seq({"rotor", "blade"}, {L::B, L::I}),
  };
  const auto tagger = fit(train, {}, TermSet{}, mock_spec());
  ASSERT_TRUE(tagger.fitted());
  const auto labels = predict(tagger, {tokens_from_surfaces({"new", "Wind", "Energy", "and", "rotor", "blade"})});
  EXPECT_EQ(labels[0], (Labels{L::O, L::B, L::I, L::O, L::B, L::I}));
}

TEST(MockTagger, ValidationF1) {
  const std::vector<LabeledSequence> train = {seq({"wind", "energy"}, {L::B, L::I})};
  const std::vector<LabeledSequence> val = {seq({"wind", "energy", "and", "tower"}, {L::B, L::I, L::O, L::B})};
  TermSet gold;
  gold.add("wind energy");
  gold.add("tower");
  // P = 1/1, R = 1/2
  EXPECT_NEAR(fit(train, val, gold, mock_spec()).val_f1, 200.0 / 3.0, 1e-9);
}

TEST(MockTagger, EmptyTraining) {
  try {
    fit({}, {}, TermSet{}, mock_spec());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyTraining);
  }
}

TEST(BackendSpec, RejectsInvalidHyperparameters) {
  auto expect_invalid = [](auto mutate) {
    BackendSpec spec;
    mutate(spec);
    try {
      spec.validate();
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    }
  };
  expect_invalid([](BackendSpec& s) { s.hyperparams.epochs = 0; });
  expect_invalid([](BackendSpec& s) { s.hyperparams.max_seq_tokens = 8; });
  expect_invalid([](BackendSpec& s) { s.hyperparams.batch_size = 0; });
  expect_invalid([](BackendSpec& s) { s.hyperparams.learning_rate = 0.0; });
  expect_invalid([](BackendSpec& s) { s.model_id.clear(); });
  EXPECT_NO_THROW(BackendSpec{}.validate());
}

TEST(BackendSpec, JsonRoundTripAndDefaults) {
  BackendSpec spec;
  spec.kind = BackendKind::encoder;
  spec.model_id = "EMBEDDIA/sloberta";
  spec.hyperparams.epochs = 3;
  spec.hyperparams.seed = 7;
  EXPECT_EQ(backend_spec_from_json(to_json(spec)), spec);
  const auto defaults = backend_spec_from_json(nlohmann::json{{"kind", "encoder"}, {"model_id", "x"}});
  EXPECT_EQ(defaults.hyperparams, Hyperparams{});
  EXPECT_DOUBLE_EQ(defaults.hyperparams.learning_rate, 2e-5);
  EXPECT_EQ(defaults.hyperparams.epochs, 5);
  EXPECT_EQ(defaults.hyperparams.max_seq_tokens, 256);
  EXPECT_EQ(defaults.hyperparams.batch_size, 16);
  EXPECT_EQ(defaults.hyperparams.seed, 42u);
}

TEST(Tagger, PredictBeforeFitThrows) {
  TrainedTagger tagger;
  try {
    predict(tagger, std::vector<std::vector<Token>>{tokens_from_surfaces({"x"})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFitted);
  }
}

TEST(MockTagger, OutputLengthsMatchInputs) {
  std::mt19937 rng(3);
  const auto data = testing::random_labeled_sequences(rng, 40);
  const auto tagger = fit(data, {}, TermSet{}, mock_spec(16));
  std::vector<std::vector<Token>> inputs;
  for (const auto& s : data) inputs.push_back(s.tokens);
  inputs.push_back({});
  const auto labels = predict(tagger, inputs);
  ASSERT_EQ(labels.size(), inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) EXPECT_EQ(labels[i].size(), inputs[i].size());
}

TEST(MockTagger, ChunkingOnlyAffectsSpansCrossingWindowEdges) {
  // 40 tokens with max_seq_tokens 16 -> windows [0,16) [16,32) [32,40).
  std::vector<std::string> words(40, "x");
  words[3] = "wind";
  words[4] = "energy";
  words[15] = "wind";  // this occurrence straddles the first window edge
  words[16] = "energy";
  const auto tokens = tokens_from_surfaces(words);
  const std::vector<LabeledSequence> train = {seq({"wind", "energy"}, {L::B, L::I})};
  const auto chunked = predict(fit(train, {}, TermSet{}, mock_spec(16)), {tokens})[0];
  const auto whole = predict(fit(train, {}, TermSet{}, mock_spec(4096)), {tokens})[0];
  EXPECT_EQ(whole[15], L::B);
  EXPECT_EQ(whole[16], L::I);
  EXPECT_EQ(chunked[15], L::O);
  EXPECT_EQ(chunked[16], L::O);
  for (std::size_t i = 0; i < 40; ++i) {
    if (i != 15 && i != 16) EXPECT_EQ(chunked[i], whole[i]) << i;
  }
}

TEST(MockTagger, RecoversEveryTrainingTermOnTrainingData) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    TermSet gold;
    const auto data = testing::random_labeled_sequences(rng, 30, &gold);
    const auto tagger = fit(data, {}, TermSet{}, mock_spec());
    const auto predicted = predict(tagger, data);
    std::vector<std::string> gold_terms, found;
    for (std::size_t i = 0; i < data.size(); ++i) {
      for (auto& t : decode_terms(data[i].tokens, data[i].labels)) gold_terms.push_back(t);
      for (auto& t : decode_terms(data[i].tokens, predicted[i])) found.push_back(t);
    }
    const auto recovered = aggregate({found}, "pred");
    for (const auto& t : gold_terms) EXPECT_TRUE(recovered.contains(t)) << t;
    EXPECT_DOUBLE_EQ(compare(recovered, aggregate({gold_terms}, "gold")).recall, 100.0);
  }
}

TEST(MockTagger, SaveLoadRoundTrip) {
  testing::TempDir dir;
  const std::vector<LabeledSequence> train = {seq({"Mišična", "sila"}, {L::B, L::I})};
  const auto tagger = fit(train, {}, TermSet{}, mock_spec());
  save_tagger(dir / "t.json", tagger);
  const auto loaded = load_tagger(dir / "t.json");
  EXPECT_EQ(loaded.spec, tagger.spec);
  const auto input = std::vector<std::vector<Token>>{tokens_from_surfaces({"mišična", "sila", "x"})};
  EXPECT_EQ(predict(loaded, input), predict(tagger, input));
  EXPECT_EQ(predict(loaded, input)[0], (Labels{L::B, L::I, L::O}));
}

class EncoderTagger : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!encoder_available()) GTEST_SKIP() << "encoder runtime not available";
  }
};

TEST_F(EncoderTagger, TrainsAndPredicts) {
  std::mt19937 rng(42);
  TermSet gold;
  const auto train = testing::random_labeled_sequences(rng, 50, &gold);
  const auto val = testing::random_labeled_sequences(rng, 10);
  BackendSpec spec;
  spec.kind = BackendKind::encoder;
  spec.model_id = "ate-tiny-bert";
  spec.hyperparams.learning_rate = 1e-3;
  spec.hyperparams.epochs = 2;
  spec.hyperparams.batch_size = 8;
  spec.hyperparams.max_seq_tokens = 32;
  testing::TempDir dir;
  FitOptions options;
  options.work_dir = dir.path();
  const auto tagger = fit(train, val, gold, spec, options);

  const auto& state = std::get<EncoderState>(tagger.state);
  ASSERT_EQ(state.epoch_losses.size(), 2u);
  EXPECT_LT(state.epoch_losses[1], state.epoch_losses[0]);
  EXPECT_EQ(state.epoch_val_f1.size(), 2u);
  EXPECT_TRUE(std::filesystem::exists(state.checkpoint));
  EXPECT_EQ(std::filesystem::exists(dir / "checkpoints/epoch_1"), state.best_epoch == 1);

  std::vector<std::vector<Token>> inputs;
  for (const auto& s : val) inputs.push_back(s.tokens);
  const auto labels = predict(tagger, inputs);
  ASSERT_EQ(labels.size(), inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) EXPECT_EQ(labels[i].size(), inputs[i].size());

  // Each sequence is labeled independently of its neighbours.
  std::vector<std::size_t> order(inputs.size());
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::vector<std::vector<Token>> permuted;
  for (auto i : order) permuted.push_back(inputs[i]);
  const auto permuted_labels = predict(tagger, permuted);
  for (std::size_t k = 0; k < order.size(); ++k) EXPECT_EQ(permuted_labels[k], labels[order[k]]);

  save_tagger(dir / "tagger.json", tagger);
  EXPECT_EQ(predict(load_tagger(dir / "tagger.json"), inputs), labels);
}

TEST(EncoderCli, MissingRuntimeExitsWithRuntimeError) {
  testing::TempDir dir;
  const std::string config = R"({
    "corpus": {"root": ")" ATE_SOURCE_DIR R"(/data/s1", "language": "en"},
    "split": {"train": ["card", "wind"], "val": "equi", "test": "htfl"},
    "variant": "ANN",
    "backend": {"kind": "encoder", "model_id": "ate-tiny-bert"},
    "pool": "multi",
    "output_dir": "out"
  })";
  testing::write_text(dir / "encoder.json", config);
  const std::string cmd = "ATE_PYTHON=/nonexistent/python '" + std::string(ATE_CLI_PATH) +
                          "' experiment --config '" + (dir / "encoder.json").string() + "' > '" +
                          (dir / "log.txt").string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2) << testing::slurp(dir / "log.txt");
  EXPECT_NE(testing::slurp(dir / "log.txt").find("BackendUnavailable"), std::string::npos)
      << testing::slurp(dir / "log.txt");
  EXPECT_FALSE(std::filesystem::exists(dir / "out/runs.jsonl"));
}

}  // namespace
}  // namespace ate
