#include "ssvep/canonical.hpp"
#include "ssvep/errors.hpp"
#include "ssvep/synthetic.hpp"
#include "ssvep/templates.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace ssvep;

namespace {

EegEpoch epoch(const Eigen::MatrixXd& m, double fs = 256.0) { return EegEpoch(m, fs); }

Eigen::MatrixXd well_conditioned(Eigen::Index n, std::mt19937_64& rng) {
  return Eigen::MatrixXd::Identity(n, n) + 0.3 * oracle::gaussian(n, n, rng);
}

}  // namespace

TEST(CanonicalCorrelations, IdenticalInputsGiveUnitCorrelations) {
  std::mt19937_64 rng(1);
  const auto z = epoch(oracle::gaussian(2, 100, rng));
  const auto r = canonical_correlations(z, z);
  ASSERT_EQ(r.rank(), 2u);
  for (double rho : r.correlations) EXPECT_NEAR(rho, 1.0, 1e-6);
}

TEST(CanonicalCorrelations, SineAgainstCosineOverWholeCycles) {
  const auto z = epoch(oracle::sinusoid_rows(1, 256, 10.0, 256.0));
  const auto y = epoch(oracle::sinusoid_rows(1, 256, 10.0, 256.0, std::numbers::pi / 2));
  const auto r = canonical_correlations(z, y, 0.0);
  EXPECT_LE(r.leading(), 0.01);
  EXPECT_NEAR(r.leading(), std::abs(oracle::pearson(z.data().row(0), y.data().row(0))), 1e-9);
}

TEST(CanonicalCorrelations, SharedSourceUnderInvertibleMixings) {
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd s = oracle::gaussian(2, 200, rng);
  const auto r = canonical_correlations(epoch(well_conditioned(2, rng) * s), epoch(well_conditioned(2, rng) * s));
  ASSERT_EQ(r.rank(), 2u);
  for (double rho : r.correlations) EXPECT_NEAR(rho, 1.0, 1e-6);
}

TEST(CanonicalCorrelations, IndependentNoiseIsWeaklyCorrelated) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const auto z = epoch(oracle::gaussian(2, 20000, rng));
    const auto y = epoch(oracle::gaussian(2, 20000, rng));
    EXPECT_LT(canonical_correlations(z, y).leading(), 0.1) << "seed " << seed;
  }
}

TEST(CanonicalCorrelations, SingleChannelEqualsAbsolutePearson) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Eigen::MatrixXd a = oracle::gaussian(1, 50, rng);
    const Eigen::MatrixXd b = 0.4 * a + oracle::gaussian(1, 50, rng);
    const double rho = canonical_correlations(epoch(a), epoch(b), 0.0).leading();
    EXPECT_NEAR(rho, std::abs(oracle::pearson(a.row(0), b.row(0))), 1e-9);
  }
}

TEST(CanonicalCorrelations, AgreesWithAngleGridSearch) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 3; ++i) {
    const Eigen::MatrixXd s = oracle::gaussian(2, 500, rng);
    const Eigen::MatrixXd z = well_conditioned(2, rng) * s + oracle::gaussian(2, 500, rng);
    const Eigen::MatrixXd y = well_conditioned(2, rng) * s + oracle::gaussian(2, 500, rng);
    const double solver = canonical_correlations(epoch(z), epoch(y), 0.0).leading();
    const double grid = oracle::grid_cca_2x2(z, y, 2000);
    EXPECT_LE(grid, solver + 1e-4);
    EXPECT_GE(grid, solver - 1e-3);
  }
}

TEST(CanonicalCorrelations, InvariantUnderInvertibleMixing) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXd z = oracle::gaussian(3, 400, rng);
    const Eigen::MatrixXd y = 0.5 * z.topRows(2) + oracle::gaussian(2, 400, rng);
    const auto before = canonical_correlations(epoch(z), epoch(y), 0.0);
    const auto after = canonical_correlations(epoch(well_conditioned(3, rng) * z), epoch(y), 0.0);
    ASSERT_EQ(before.rank(), after.rank());
    for (std::size_t k = 0; k < before.rank(); ++k) {
      EXPECT_LT(std::abs(before.correlations[k] - after.correlations[k]), 1e-8);
    }
  }
}

TEST(CanonicalCorrelations, SymmetricInArguments) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXd z = oracle::gaussian(4, 300, rng);
    const Eigen::MatrixXd y = z.topRows(3) + oracle::gaussian(3, 300, rng);
    const auto zy = canonical_correlations(epoch(z), epoch(y));
    const auto yz = canonical_correlations(epoch(y), epoch(z));
    ASSERT_EQ(zy.rank(), yz.rank());
    for (std::size_t k = 0; k < zy.rank(); ++k) EXPECT_NEAR(zy.correlations[k], yz.correlations[k], 1e-9);
  }
}

TEST(CanonicalCorrelations, SortedAndBounded) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Eigen::MatrixXd z = oracle::gaussian(5, 120, rng);
    const Eigen::MatrixXd y = z.topRows(4) * 0.7 + oracle::gaussian(4, 120, rng);
    const auto r = canonical_correlations(epoch(z), epoch(y));
    ASSERT_EQ(r.rank(), 4u);
    for (std::size_t k = 0; k < r.rank(); ++k) {
      EXPECT_GE(r.correlations[k], 0.0);
      EXPECT_LE(r.correlations[k], 1.0);
      if (k > 0) EXPECT_LE(r.correlations[k], r.correlations[k - 1]);
    }
  }
}

TEST(CanonicalCorrelations, ErrorPaths) {
  std::mt19937_64 rng(8);
  EXPECT_THROW(canonical_correlations(epoch(oracle::gaussian(2, 100, rng)), epoch(oracle::gaussian(2, 99, rng))),
               ArgumentError);
  EXPECT_THROW(canonical_correlations(epoch(oracle::gaussian(3, 6, rng)), epoch(oracle::gaussian(3, 6, rng))),
               ArgumentError);
  Eigen::MatrixXd dup(2, 100);
  dup.row(0) = oracle::gaussian(1, 100, rng);
  dup.row(1) = dup.row(0);
  EXPECT_THROW(canonical_correlations(epoch(dup), epoch(oracle::gaussian(2, 100, rng)), 0.0), NumericalError);
  const auto r = canonical_correlations(epoch(dup), epoch(oracle::gaussian(2, 100, rng)));
  EXPECT_EQ(r.rank(), 1u);
}

TEST(DelayEmbedding, Shapes) {
  std::mt19937_64 rng(9);
  const auto z = epoch(oracle::gaussian(8, 256, rng));
  const auto e1 = embed_delay(z, 1);
  EXPECT_EQ(e1.data.rows(), 16);
  EXPECT_EQ(e1.data.cols(), 255);
  const auto e0 = embed_delay(z, 0);
  EXPECT_EQ(e0.data.cols(), 256);
  EXPECT_EQ((e0.data.topRows(8) - e0.data.bottomRows(8)).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(embed_delay(z, 256), ArgumentError);
}

TEST(DelayEmbedding, RampExample) {
  Eigen::MatrixXd ramp(1, 4);
  ramp << 0, 1, 2, 3;
  const auto e = embed_delay(epoch(ramp), 2);
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 1, 2, 3;
  EXPECT_EQ(e.data, expected);
}

TEST(DelayEmbedding, ContentInvariant) {
  std::mt19937_64 rng(10);
  const auto z = epoch(oracle::gaussian(3, 40, rng));
  for (std::size_t tau : {0u, 1u, 5u, 39u}) {
    const auto e = embed_delay(z, tau);
    for (Eigen::Index j = 0; j < 3; ++j) {
      for (Eigen::Index n = 0; n < e.data.cols(); ++n) {
        EXPECT_EQ(e.data(j, n), z.data()(j, n));
        EXPECT_EQ(e.data(3 + j, n), z.data()(j, n + static_cast<Eigen::Index>(tau)));
      }
    }
  }
}

TEST(Sscca, ZeroDelayMatchesPlainCca) {
  std::mt19937_64 rng(11);
  const Eigen::MatrixXd s = oracle::gaussian(3, 300, rng);
  const auto z = epoch(s + 0.5 * oracle::gaussian(3, 300, rng));
  const auto y = epoch(s + 0.5 * oracle::gaussian(3, 300, rng));
  const auto embedded = sscca_correlations(z, y, 0);
  const auto plain = canonical_correlations(z, y);
  ASSERT_EQ(embedded.rank(), plain.rank());
  for (std::size_t k = 0; k < plain.rank(); ++k) EXPECT_NEAR(embedded.correlations[k], plain.correlations[k], 1e-6);
}

TEST(Sscca, SelfMatchWithUnitDelay) {
  std::mt19937_64 rng(12);
  const auto z = epoch(oracle::gaussian(8, 512, rng));
  EXPECT_GE(sscca_correlations(z, z, 1).leading(), 0.999);
}

TEST(Sscca, EmbeddingNeverLosesCorrelation) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXd s = oracle::gaussian(2, 200, rng);
    const auto z = epoch(s + oracle::gaussian(2, 200, rng));
    const auto y = epoch(s + oracle::gaussian(2, 200, rng));
    for (std::size_t tau : {1u, 3u}) {
      const double embedded = sscca_correlations(z, y, tau).leading();
      const auto w = static_cast<Eigen::Index>(200 - tau);
      const double plain = canonical_correlations(epoch(z.data().leftCols(w)), epoch(y.data().leftCols(w))).leading();
      EXPECT_GE(embedded, plain - 1e-6);
    }
  }
}

TEST(Sscca, MatchedTemplateWinsOnSyntheticSsvep) {
  auto spec = reference_synth_spec();
  spec.snr_db = 10.0;
  spec.seed = 2024;
  const auto data = generate_ssvep(spec);
  std::vector<std::size_t> train;
  for (std::size_t t = 1; t < data.n_trials(); ++t) train.push_back(t);
  const SampleWindow window{0, 256};
  const auto bank = build_templates(data, train, window);
  const std::size_t target = 5;  // 11.75 Hz
  ASSERT_DOUBLE_EQ(data.frequencies_hz()[target], 11.75);
  const auto z = data.slice(0, target, window.first, window.count);
  const double matched = sscca_correlations(z, bank.overall[target]).leading();
  for (std::size_t i = 0; i < bank.size(); ++i) {
    if (i == target) continue;
    EXPECT_GT(matched, sscca_correlations(z, bank.overall[i]).leading()) << "template " << i;
  }
}

TEST(BaselineRecognizer, SelfMatchAndTieBreak) {
  std::mt19937_64 rng(14);
  std::vector<EegEpoch> templates;
  for (int i = 0; i < 5; ++i) templates.push_back(epoch(oracle::gaussian(4, 300, rng)));
  const auto d = sscca_recognize_baseline(templates[3], templates);
  EXPECT_EQ(d.index, 3u);
  EXPECT_GE(d.scores[3], 0.999);

  const std::vector<EegEpoch> same(4, templates[1]);
  EXPECT_EQ(sscca_recognize_baseline(templates[0], same).index, 0u);
}

TEST(BaselineRecognizer, ScaleDoesNotChangeDecision) {
  std::mt19937_64 rng(15);
  std::vector<EegEpoch> templates;
  for (int i = 0; i < 4; ++i) templates.push_back(epoch(oracle::gaussian(3, 200, rng)));
  for (int trial = 0; trial < 10; ++trial) {
    const auto z = epoch(templates[trial % 4].data() + 2.0 * oracle::gaussian(3, 200, rng));
    const auto reference = sscca_recognize_baseline(z, templates).index;
    for (double c : {1e-3, 0.5, 7.0, 1e4}) EXPECT_EQ(sscca_recognize_baseline(z.scaled(c), templates).index, reference);
  }
}

TEST(BaselineRecognizer, NoiselessSyntheticIsPerfect) {
  auto spec = reference_synth_spec();
  spec.n_trials = 4;
  const auto data = generate_ssvep(spec);
  const SampleWindow window{0, 256};
  for (std::size_t test = 0; test < data.n_trials(); ++test) {
    std::vector<std::size_t> train;
    for (std::size_t t = 0; t < data.n_trials(); ++t)
      if (t != test) train.push_back(t);
    const auto bank = build_templates(data, train, window);
    for (std::size_t f = 0; f < data.n_frequencies(); ++f) {
      EXPECT_EQ(sscca_recognize_baseline(data.slice(test, f, 0, 256), bank.overall).index, f);
    }
  }
}

TEST(BaselineRecognizer, ShapeMismatchRejected) {
  std::mt19937_64 rng(16);
  std::vector<EegEpoch> templates{epoch(oracle::gaussian(3, 200, rng)), epoch(oracle::gaussian(3, 100, rng))};
  EXPECT_THROW(sscca_recognize_baseline(templates[0], templates), ArgumentError);
  EXPECT_THROW(sscca_recognize_baseline(templates[0], std::span(templates).first(1)), ArgumentError);
}
