#include "ssvep/errors.hpp"
#include "ssvep/synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>

using namespace ssvep;

TEST(Synthetic, ReferenceShapedSpec) {
  const auto spec = reference_synth_spec();
  ASSERT_EQ(spec.frequencies_hz.size(), 12u);
  EXPECT_DOUBLE_EQ(spec.frequencies_hz.front(), 9.25);
  EXPECT_DOUBLE_EQ(spec.frequencies_hz.back(), 14.75);
  const auto d = generate_ssvep(spec);
  EXPECT_EQ(d.shape(), (DatasetShape{8, 1024, 15, 12}));
  EXPECT_EQ(d.visual_latency_s(), 0.0);
  EXPECT_NEAR(d.metadata().stim_phases_rad[3], 1.5 * std::numbers::pi, 1e-6);
}

TEST(Synthetic, SameSeedIsBitIdenticalOtherSeedDiffers) {
  auto spec = reference_synth_spec();
  spec.n_trials = 3;
  spec.snr_db = 0.0;
  spec.seed = 42;
  const auto a = generate_ssvep(spec);
  const auto b = generate_ssvep(spec);
  ASSERT_EQ(a.samples().size(), b.samples().size());
  EXPECT_EQ(std::memcmp(a.samples().data(), b.samples().data(), a.samples().size() * sizeof(float)), 0);
  spec.seed = 43;
  EXPECT_FALSE(generate_ssvep(spec) == a);
}

TEST(Synthetic, NoiselessSingleChannelIsExactSinusoid) {
  SynthSpec spec;
  spec.frequencies_hz = {10.0, 12.5};
  spec.phases_rad = {0.0, 0.5 * std::numbers::pi};
  spec.n_channels = 1;
  spec.n_trials = 2;
  spec.duration_s = 1.0;
  spec.n_harmonics = 1;
  spec.identity_mixing = true;
  const auto d = generate_ssvep(spec);
  for (std::size_t f = 0; f < 2; ++f) {
    for (std::size_t n = 0; n < 256; ++n) {
      const double expected =
          std::sin(2.0 * std::numbers::pi * spec.frequencies_hz[f] * static_cast<double>(n) / 256.0 +
                   spec.phases_rad[f]);
      EXPECT_EQ(d.at(0, n, 1, f), static_cast<float>(expected));
    }
  }
}

TEST(Synthetic, EmpiricalSnrMatchesRequest) {
  auto clean_spec = reference_synth_spec();
  clean_spec.n_trials = 4;
  clean_spec.seed = 9;
  auto noisy_spec = clean_spec;
  for (double snr : {-5.0, 0.0, 10.0}) {
    noisy_spec.snr_db = snr;
    const auto clean = generate_ssvep(clean_spec);
    const auto noisy = generate_ssvep(noisy_spec);
    for (std::size_t f = 0; f < 12; f += 5) {
      for (std::size_t c = 0; c < 8; ++c) {
        double signal = 0.0, noise = 0.0;
        for (std::size_t t = 0; t < 4; ++t) {
          for (std::size_t n = 0; n < noisy.n_samples(); ++n) {
            const double s = clean.at(c, n, t, f);
            const double e = noisy.at(c, n, t, f) - s;
            signal += s * s;
            noise += e * e;
          }
        }
        EXPECT_NEAR(10.0 * std::log10(signal / noise), snr, 0.5) << "f " << f << " c " << c;
      }
    }
  }
}

TEST(Synthetic, SpectralPeakAtStimulusBin) {
  // One channel with identity mixing carries the full class waveform,
  // every harmonic included.
  auto spec = reference_synth_spec();
  spec.n_channels = 1;
  spec.n_trials = 2;
  spec.n_harmonics = 4;
  spec.identity_mixing = true;
  const auto d = generate_ssvep(spec);
  const std::size_t ns = d.n_samples();
  for (std::size_t f = 0; f < d.n_frequencies(); ++f) {
    std::size_t best_bin = 0;
    double best_mag = -1.0;
    for (std::size_t k = 1; k < ns / 2; ++k) {
      std::complex<double> acc = 0.0;
      for (std::size_t n = 0; n < ns; ++n) {
        acc += static_cast<double>(d.at(0, n, 0, f)) *
               std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * n) / static_cast<double>(ns));
      }
      if (std::abs(acc) > best_mag) {
        best_mag = std::abs(acc);
        best_bin = k;
      }
    }
    const double nearest = std::round(d.frequencies_hz()[f] * static_cast<double>(ns) / d.sample_rate_hz());
    EXPECT_EQ(static_cast<double>(best_bin), nearest) << "class " << f;
  }
}

TEST(Synthetic, MixingMatrixIsWellConditionedAndSeeded) {
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 1234567ull}) {
    const auto m = mixing_matrix(8, seed);
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    EXPECT_LT(s(0) / s(7), 10.0);
    EXPECT_EQ(m, mixing_matrix(8, seed));
  }
  EXPECT_NE(mixing_matrix(8, 1), mixing_matrix(8, 2));
}

TEST(Synthetic, RejectsHarmonicAboveNyquist) {
  auto spec = reference_synth_spec();
  spec.n_harmonics = 9;  // 9 * 14.75 > 128
  EXPECT_THROW(generate_ssvep(spec), ArgumentError);
  spec.n_harmonics = 3;
  spec.phases_rad.pop_back();
  EXPECT_THROW(generate_ssvep(spec), ArgumentError);
}
