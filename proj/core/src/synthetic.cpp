#include "ssvep/synthetic.hpp"

#include "ssvep/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace ssvep {

namespace {

constexpr std::uint64_t kMixingStream = 0x6d6978ULL;  // "mix"
constexpr std::uint64_t kNoiseStream = 0x6e6f69ULL;   // "noi"
constexpr double kMaxCondition = 10.0;

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag),  static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

Eigen::MatrixXd random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = normal(rng);
  }
  return Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
}

}  // namespace

void SynthSpec::validate() const {
  if (frequencies_hz.empty()) throw ArgumentError("synthetic spec needs at least one frequency");
  if (phases_rad.size() != frequencies_hz.size()) throw ArgumentError("need one phase per frequency");
  if (n_channels < 1) throw ArgumentError("need at least one channel");
  if (n_trials < 2) throw ArgumentError("need at least two trials");
  if (n_harmonics < 1) throw ArgumentError("need at least one harmonic");
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) throw ArgumentError("sample rate must be positive");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s) || std::round(duration_s * sample_rate_hz) < 2.0) {
    throw ArgumentError("duration must cover at least two samples");
  }
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    throw ArgumentError("snr must be a number or +inf");
  }
  for (std::size_t i = 0; i < frequencies_hz.size(); ++i) {
    const double f = frequencies_hz[i];
    if (!(f > 0.0) || !std::isfinite(f)) throw ArgumentError("frequencies must be positive");
    if (i > 0 && !(f > frequencies_hz[i - 1])) throw ArgumentError("frequencies must be strictly increasing");
    if (!(static_cast<double>(n_harmonics) * f < sample_rate_hz / 2.0)) {
      throw ArgumentError("harmonic " + std::to_string(n_harmonics) + " of " + std::to_string(f) +
                          " Hz is at or above Nyquist");
    }
  }
}

std::vector<double> quarter_cycle_phases(std::size_t count) {
  std::vector<double> phases(count);
  for (std::size_t i = 0; i < count; ++i) phases[i] = 0.5 * std::numbers::pi * static_cast<double>(i % 4);
  return phases;
}

SynthSpec reference_synth_spec() {
  SynthSpec spec;
  for (int i = 0; i < 12; ++i) spec.frequencies_hz.push_back(9.25 + 0.5 * i);
  spec.phases_rad = quarter_cycle_phases(spec.frequencies_hz.size());
  return spec;
}

Eigen::MatrixXd mixing_matrix(std::size_t n_channels, std::uint64_t seed) {
  auto rng = stream(seed, kMixingStream, n_channels, 0);
  std::uniform_real_distribution<double> spread(1.0, 4.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Eigen::MatrixXd left = random_orthogonal(n_channels, rng);
    const Eigen::MatrixXd right = random_orthogonal(n_channels, rng);
    Eigen::VectorXd sigma(static_cast<Eigen::Index>(n_channels));
    for (Eigen::Index i = 0; i < sigma.size(); ++i) sigma(i) = spread(rng);
    Eigen::MatrixXd mixing = left * sigma.asDiagonal() * right.transpose();
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(mixing).singularValues();
    if (s(s.size() - 1) > 0.0 && s(0) / s(s.size() - 1) < kMaxCondition) return mixing;
  }
  throw NumericalError("could not draw a well-conditioned mixing matrix");
}

SsvepDataset generate_ssvep(const SynthSpec& spec) {
  spec.validate();
  const std::size_t nc = spec.n_channels;
  const std::size_t nf = spec.frequencies_hz.size();
  const std::size_t nt = spec.n_trials;
  const auto ns = static_cast<std::size_t>(std::round(spec.duration_s * spec.sample_rate_hz));
  const DatasetShape shape{nc, ns, nt, nf};

  const Eigen::MatrixXd mixing =
      spec.identity_mixing ? Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(nc), static_cast<Eigen::Index>(nc))
                           : mixing_matrix(nc, spec.seed);
  const bool noiseless = spec.snr_db == std::numeric_limits<double>::infinity();
  const double noise_to_signal = noiseless ? 0.0 : std::pow(10.0, -spec.snr_db / 10.0);

  std::vector<float> samples(shape.element_count());
  for (std::size_t f = 0; f < nf; ++f) {
    Eigen::MatrixXd clean = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nc), static_cast<Eigen::Index>(ns));
    for (std::size_t h = 1; h <= spec.n_harmonics; ++h) {
      const double hd = static_cast<double>(h);
      Eigen::RowVectorXd wave(static_cast<Eigen::Index>(ns));
      for (std::size_t n = 0; n < ns; ++n) {
        const double t = static_cast<double>(n) / spec.sample_rate_hz;
        wave(static_cast<Eigen::Index>(n)) =
            std::sin(2.0 * std::numbers::pi * hd * spec.frequencies_hz[f] * t + hd * spec.phases_rad[f]) / hd;
      }
      clean += mixing.col(static_cast<Eigen::Index>((h - 1) % nc)) * wave;
    }
    const Eigen::VectorXd noise_sd = (clean.array().square().rowwise().mean() * noise_to_signal).sqrt().matrix();

    for (std::size_t t = 0; t < nt; ++t) {
      auto rng = stream(spec.seed, kNoiseStream, f, t);
      std::normal_distribution<double> normal;
      for (std::size_t c = 0; c < nc; ++c) {
        const double sd = noise_sd(static_cast<Eigen::Index>(c));
        float* row = samples.data() + SsvepDataset::linear_index(shape, c, 0, t, f);
        for (std::size_t n = 0; n < ns; ++n) {
          double v = clean(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(n));
          if (!noiseless) v += sd * normal(rng);
          row[n] = static_cast<float>(v);
        }
      }
    }
  }

  DatasetMetadata meta;
  meta.stim_frequencies_hz = spec.frequencies_hz;
  meta.stim_phases_rad = spec.phases_rad;
  meta.sample_rate_hz = spec.sample_rate_hz;
  meta.visual_latency_s = 0.0;
  for (std::size_t c = 0; c < nc; ++c) meta.channel_labels.push_back("CH" + std::to_string(c + 1));
  return SsvepDataset(shape, std::move(samples), std::move(meta));
}

}  // namespace ssvep
