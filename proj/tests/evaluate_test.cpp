#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "ate/evaluate.hpp"
#include "test_support.hpp"

namespace ate {
namespace {

TermSet set_of(std::initializer_list<const char*> terms) {
  TermSet s;
  for (const char* t : terms) s.add(t);
  return s;
}

/// Independent oracle: nested loops over both sets.
EvalReport brute_force_compare(const TermSet& candidates, const TermSet& gold) {
  std::size_t tp = 0;
  for (const auto& c : candidates.entries) {
    for (const auto& g : gold.entries) tp += (c == g);
  }
  std::size_t fn = 0;
  for (const auto& g : gold.entries) {
    bool found = false;
    for (const auto& c : candidates.entries) found = found || c == g;
    fn += !found;
  }
  return {tp, candidates.size() - tp, fn, 0, 0, 0};
}

TEST(Compare, HalfOverlap) {
  const auto r = compare(set_of({"a", "b"}), set_of({"b", "c"}));
  EXPECT_EQ(r.tp, 1u);
  EXPECT_EQ(r.fp, 1u);
  EXPECT_EQ(r.fn, 1u);
  EXPECT_DOUBLE_EQ(r.precision, 50.0);
  EXPECT_DOUBLE_EQ(r.recall, 50.0);
  EXPECT_DOUBLE_EQ(r.f1, 50.0);
}

TEST(Compare, IdentityScoresHundred) {
  const auto gold = set_of({"wind energy", "rotor blade", "heart failure"});
  const auto r = compare(gold, gold);
  EXPECT_DOUBLE_EQ(r.precision, 100.0);
  EXPECT_DOUBLE_EQ(r.recall, 100.0);
  EXPECT_DOUBLE_EQ(r.f1, 100.0);
}

TEST(Compare, EmptyCandidatesScoreZero) {
  const auto r = compare(TermSet{}, set_of({"a"}));
  EXPECT_EQ(r.fn, 1u);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
}

TEST(Compare, EmptyGoldIsUndefined) {
  try {
    compare(set_of({"a"}), TermSet{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyGold);
  }
}

TEST(Compare, CountsAddUpToSetSizes) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    TermSet c, g;
    c.entries = testing::random_term_set(rng, 40);
    g.entries = testing::random_term_set(rng, 40);
    if (g.empty()) continue;
    const auto r = compare(c, g);
    EXPECT_EQ(r.tp + r.fp, c.size());
    EXPECT_EQ(r.tp + r.fn, g.size());
    const auto oracle = brute_force_compare(c, g);
    EXPECT_EQ(r.tp, oracle.tp);
    EXPECT_EQ(r.fp, oracle.fp);
    EXPECT_EQ(r.fn, oracle.fn);
    if (r.precision > 0 && r.recall > 0) {
      EXPECT_GE(r.f1, std::min(r.precision, r.recall) - 1e-12);
      EXPECT_LE(r.f1, std::max(r.precision, r.recall) + 1e-12);
    }
  }
}

TEST(Compare, Monotonicity) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    TermSet c, g;
    c.entries = testing::random_term_set(rng, 20);
    g.entries = testing::random_term_set(rng, 20);
    if (g.empty()) continue;
    const auto before = compare(c, g);

    // Adding a gold term never lowers tp or recall.
    TermSet with_gold = c;
    with_gold.entries.insert(*g.entries.begin());
    const auto after_gold = compare(with_gold, g);
    EXPECT_GE(after_gold.tp, before.tp);
    EXPECT_GE(after_gold.recall, before.recall);

    // Adding a non-gold term leaves recall alone and never raises precision.
    TermSet with_noise = c;
    with_noise.entries.insert("zz not a gold term");
    const auto after_noise = compare(with_noise, g);
    EXPECT_EQ(after_noise.recall, before.recall);
    EXPECT_LE(after_noise.precision, before.precision);
  }
}

TEST(Compare, NormalizationIsSymmetricAndIdempotent) {
  const auto raw_c = make_termset({"Heart  Failure", "Blood pressure", "ŠOLA"});
  const auto raw_g = make_termset({"heart failure", "šola", "Ejection Fraction"});
  TermSet renormalized_c, renormalized_g;
  for (const auto& t : raw_c.entries) renormalized_c.add(t);
  for (const auto& t : raw_g.entries) renormalized_g.add(t);
  EXPECT_EQ(compare(raw_c, raw_g), compare(renormalized_c, renormalized_g));
  EXPECT_EQ(compare(raw_c, raw_g).tp, 2u);
}

TEST(F1, PublishedAnchors) {
  EXPECT_NEAR(f1(57.34, 51.46), 54.24, 0.02);
  EXPECT_NEAR(f1(62.28, 56.30), 59.14, 0.02);
  EXPECT_NEAR(f1(74.45, 73.96), 74.20, 0.02);
  EXPECT_EQ(f1(0.0, 0.0), 0.0);
}

TEST(Delta, SignedDifference) {
  auto with_f1 = [](double v) {
    EvalReport r;
    r.f1 = v;
    return r;
  };
  EXPECT_NEAR(delta(with_f1(56.11), with_f1(54.24)), 1.87, 1e-9);
  EXPECT_NEAR(delta(with_f1(60.09), with_f1(56.08)), 4.01, 1e-9);
  EXPECT_NEAR(delta(with_f1(54.24), with_f1(56.11)), -1.87, 1e-9);
  EXPECT_EQ(delta(with_f1(12.5), with_f1(12.5)), 0.0);
}

TEST(FormatPercent, TwoDecimalsTiesToEven) {
  EXPECT_EQ(format_percent(66.666666), "66.67");
  EXPECT_EQ(format_percent(100.0), "100.00");
  // Exactly representable ties.
  EXPECT_EQ(format_percent(0.125), "0.12");
  EXPECT_EQ(format_percent(0.375), "0.38");
  // 0.025 is stored slightly above the tie, so it rounds up.
  EXPECT_EQ(format_percent(0.025), "0.03");
}

TEST(EvalReportJson, UsesSpecifiedFieldNames) {
  const auto r = make_report(2, 0, 1);
  const auto j = to_json(r);
  for (const char* key : {"tp", "fp", "fn", "precision", "recall", "f1"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(eval_report_from_json(j), r);
  EXPECT_DOUBLE_EQ(r.f1, 80.0);
}

}  // namespace
}  // namespace ate
