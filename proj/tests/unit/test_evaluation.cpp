#include "ssvep/errors.hpp"
#include "ssvep/evaluation.hpp"
#include "ssvep/synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace ssvep;

namespace {

SsvepDataset small_synthetic(double snr_db, std::size_t trials = 5, std::uint64_t seed = 42) {
  auto spec = reference_synth_spec();
  spec.n_trials = trials;
  spec.duration_s = 1.5;
  spec.snr_db = snr_db;
  spec.seed = seed;
  return generate_ssvep(spec);
}

}  // namespace

TEST(Itr, ClosedFormValues) {
  EXPECT_NEAR(itr_bits_per_min(1.0, 12, 1.0), 60.0 * std::log2(12.0), 1e-12);
  EXPECT_NEAR(itr_bits_per_min(1.0, 12, 1.0), 215.0978, 1e-4);
  EXPECT_EQ(itr_bits_per_min(1.0 / 12.0, 12, 1.0), 0.0);
  EXPECT_EQ(itr_bits_per_min(0.01, 12, 1.0), 0.0);
  // log2 12 + .945 log2 .945 + .055 log2(.055/11), times 60/4
  EXPECT_NEAR(itr_bits_per_min(0.945, 12, 4.0), 46.31138, 1e-5);
  EXPECT_THROW(itr_bits_per_min(1.5, 12, 1.0), ArgumentError);
  EXPECT_THROW(itr_bits_per_min(0.5, 1, 1.0), ArgumentError);
}

TEST(EvaluateLoocv, NoiselessProposedIsPerfect) {
  const auto d = small_synthetic(std::numeric_limits<double>::infinity());
  const auto report = evaluate_loocv(d, Method::proposed_fusion, FusionParams{}, 1.0, 0.0);
  EXPECT_EQ(report.accuracy(), 1.0);
  EXPECT_EQ(report.rows[0].n_total, 60);
  EXPECT_NEAR(report.rows[0].itr_bits_per_min, 60.0 * std::log2(12.0), 1e-9);
}

TEST(EvaluateLoocv, ConfusionConservation) {
  const auto d = small_synthetic(-12.0);
  for (Method m : {Method::baseline_sscca, Method::proposed_fusion}) {
    const auto report = evaluate_loocv(d, m, FusionParams{}, 0.5, 0.1);
    long long trace = 0, total = 0;
    for (std::size_t f = 0; f < 12; ++f) {
      const long long row = std::accumulate(report.confusion[f].begin(), report.confusion[f].end(), 0LL);
      EXPECT_EQ(row, 5);
      trace += report.confusion[f][f];
      total += row;
    }
    EXPECT_EQ(report.rows[0].n_correct, trace);
    EXPECT_EQ(report.rows[0].n_total, total);
    EXPECT_EQ(report.accuracy(), static_cast<double>(trace) / static_cast<double>(total));
    EXPECT_EQ(report.method, m);
    EXPECT_EQ(report.start_s, 0.1);
  }
}

TEST(EvaluateLoocv, DeterministicAcrossThreadCounts) {
  const auto d = small_synthetic(-10.0);
  EvalOptions one{"s", 1}, four{"s", 4};
  const auto a = evaluate_loocv(d, Method::proposed_fusion, FusionParams{}, 0.5, 0.0, one);
  const auto b = evaluate_loocv(d, Method::proposed_fusion, FusionParams{}, 0.5, 0.0, four);
  EXPECT_EQ(a.confusion, b.confusion);
  EXPECT_EQ(a.rows, b.rows);
}

TEST(EvaluateLoocv, ReferenceShapedTotal) {
  const auto d = generate_ssvep(reference_synth_spec());
  const auto report = evaluate_loocv(d, Method::baseline_sscca, FusionParams{}, 0.5, 0.0);
  EXPECT_EQ(report.rows[0].n_total, 180);
}

TEST(EvaluateLoocv, WindowTooLong) {
  const auto d = small_synthetic(0.0);
  EXPECT_THROW(evaluate_loocv(d, Method::proposed_fusion, FusionParams{}, 1.6, 0.0), ArgumentError);
  EXPECT_THROW(evaluate_loocv(d, Method::proposed_fusion, FusionParams{}, 1.0, 0.6), ArgumentError);
}

TEST(EvaluateLoocv, AccuracyDoesNotRiseAsSnrFalls) {
  double previous = 1.0;
  for (double snr : {0.0, -10.0, -20.0}) {
    const auto report = evaluate_loocv(small_synthetic(snr, 5, 7), Method::proposed_fusion, FusionParams{}, 1.0, 0.0);
    EXPECT_LE(report.accuracy(), previous + 0.02) << "snr " << snr;
    previous = report.accuracy();
  }
}

TEST(CompareMethods, OrderingAndParams) {
  const auto d = small_synthetic(-5.0, 3);
  FusionParams p;
  p.a1 = 0.8;
  const std::vector<double> windows{0.25, 0.5, 0.75, 1.0};
  const auto reports = compare_methods(d, p, windows, 0.0, EvalOptions{"s7", 0});
  ASSERT_EQ(reports.size(), 8u);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].window_s, windows[i / 2]);
    EXPECT_EQ(reports[i].method, i % 2 == 0 ? Method::baseline_sscca : Method::proposed_fusion);
    EXPECT_EQ(reports[i].params, p);
    EXPECT_EQ(reports[i].rows[0].subject_id, "s7");
  }
  EXPECT_EQ(collect_rows(reports).size(), 8u);
}

// Seeded case at moderate SNR where the short windows separate the methods.
TEST(CompareMethods, ProposedNotBelowBaselineAtModerateSnr) {
  auto spec = reference_synth_spec();
  spec.snr_db = -10.0;
  spec.seed = 42;
  const auto d = generate_ssvep(spec);
  const std::vector<double> windows{0.25, 0.5, 0.75, 1.0};
  const auto reports = compare_methods(d, FusionParams{}, windows, 0.0);
  for (std::size_t w = 0; w < windows.size(); ++w)
    EXPECT_GE(reports[2 * w + 1].accuracy(), reports[2 * w].accuracy()) << "window " << windows[w];
  EXPECT_GT(reports[1].accuracy(), reports[0].accuracy() + 0.05);
}

TEST(Methods, ParseAndPrint) {
  EXPECT_EQ(parse_method("proposed"), Method::proposed_fusion);
  EXPECT_EQ(parse_method("baseline_sscca"), Method::baseline_sscca);
  EXPECT_EQ(to_string(Method::proposed_fusion), "proposed_fusion");
  EXPECT_THROW(parse_method("both"), ArgumentError);
}
