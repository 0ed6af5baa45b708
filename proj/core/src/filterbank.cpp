#include "ssvep/filterbank.hpp"

#include "ssvep/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace ssvep {

namespace {

using Complex = std::complex<double>;

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Poles of the normalized analog Chebyshev I lowpass and its gain.
void chebyshev1_prototype(int n, double ripple_db, std::vector<Complex>& poles, double& gain) {
  const double eps = std::sqrt(std::pow(10.0, 0.1 * ripple_db) - 1.0);
  const double mu = std::asinh(1.0 / eps) / n;
  poles.clear();
  for (int m = -n + 1; m < n; m += 2) {
    const double theta = std::numbers::pi * m / (2.0 * n);
    poles.push_back(-std::sinh(Complex(mu, theta)));
  }
  Complex product(1.0, 0.0);
  for (const auto& p : poles) product *= -p;
  gain = product.real();
  // Even orders start at the bottom of the ripple band.
  if (n % 2 == 0) gain /= std::sqrt(1.0 + eps * eps);
}

// Steady-state state of a transposed direct-form II biquad for a unit step.
std::array<double, 2> section_zi(const SecondOrderSection& s) {
  // (I - A^T) zi = b[1:] - a[1:] * b0 with A the companion matrix of a.
  const double m00 = 1.0 + s.a1, m01 = -1.0;
  const double m10 = s.a2, m11 = 1.0;
  const double r0 = s.b1 - s.a1 * s.b0;
  const double r1 = s.b2 - s.a2 * s.b0;
  const double det = m00 * m11 - m01 * m10;
  return {(r0 * m11 - m01 * r1) / det, (m00 * r1 - m10 * r0) / det};
}

void run_cascade(const std::vector<SecondOrderSection>& sections, const std::vector<std::array<double, 2>>& zi,
                 double scale, std::vector<double>& signal) {
  for (std::size_t k = 0; k < sections.size(); ++k) {
    const auto& s = sections[k];
    double z0 = zi[k][0] * scale;
    double z1 = zi[k][1] * scale;
    for (double& x : signal) {
      const double y = s.b0 * x + z0;
      z0 = s.b1 * x - s.a1 * y + z1;
      z1 = s.b2 * x - s.a2 * y;
      x = y;
    }
  }
}

}  // namespace

void BandpassSpec::validate() const {
  if (order < 2 || order % 2 != 0) throw ArgumentError("bandpass order must be an even integer >= 2");
  if (!(ripple_db > 0.0) || !std::isfinite(ripple_db)) throw ArgumentError("passband ripple must be positive");
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) throw ArgumentError("sample rate must be positive");
  if (!(low_hz > 0.0) || !(low_hz < high_hz) || !(high_hz < sample_rate_hz / 2.0)) {
    throw ArgumentError("band edges must satisfy 0 < low < high < fs/2 (got " + std::to_string(low_hz) + ", " +
                        std::to_string(high_hz) + " at fs " + std::to_string(sample_rate_hz) + ")");
  }
}

double FilterCoefficients::max_pole_radius() const noexcept {
  double r = 0.0;
  for (const auto& p : poles) r = std::max(r, std::abs(p));
  return r;
}

std::size_t FilterCoefficients::length() const noexcept { return std::max(numerator.size(), denominator.size()); }

std::complex<double> FilterCoefficients::response(double frequency_hz, double sample_rate_hz) const {
  const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate_hz;
  const Complex z1 = std::polar(1.0, -w);
  const Complex z2 = z1 * z1;
  Complex h(1.0, 0.0);
  for (const auto& s : sections) h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  return h;
}

FilterCoefficients design_chebyshev1(const BandpassSpec& spec) {
  spec.validate();
  const int n = spec.order / 2;
  const double fs = spec.sample_rate_hz;
  const double fs2 = 2.0 * fs;

  std::vector<Complex> proto;
  double gain = 0.0;
  chebyshev1_prototype(n, spec.ripple_db, proto, gain);

  // Prewarped analog edges.
  const double w1 = fs2 * std::tan(std::numbers::pi * spec.low_hz / fs);
  const double w2 = fs2 * std::tan(std::numbers::pi * spec.high_hz / fs);
  const double bw = w2 - w1;
  const double wo2 = w1 * w2;

  // Lowpass to bandpass: every prototype pole splits in two, n zeros at s = 0.
  std::vector<Complex> analog;
  analog.reserve(2 * proto.size());
  for (const auto& p : proto) {
    const Complex scaled = p * (bw / 2.0);
    const Complex root = std::sqrt(scaled * scaled - wo2);
    analog.push_back(scaled + root);
    analog.push_back(scaled - root);
  }
  gain *= std::pow(bw, n);

  // Bilinear: s = 0 zeros land on z = +1, the n zeros at infinity on z = -1.
  std::vector<Complex> poles;
  poles.reserve(analog.size());
  Complex denom(1.0, 0.0);
  for (const auto& p : analog) {
    poles.push_back((fs2 + p) / (fs2 - p));
    denom *= (fs2 - p);
  }
  gain *= (std::pow(fs2, n) / denom).real();

  for (const auto& p : poles) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()) || std::abs(p) >= 1.0) {
      throw DesignError("Chebyshev design produced a pole on or outside the unit circle");
    }
  }

  // Pair conjugates, then leftover real poles.
  std::vector<std::pair<Complex, Complex>> pairs;
  std::vector<double> reals;
  for (const auto& p : poles) {
    const double tol = 1e-12 * std::max(1.0, std::abs(p));
    if (std::abs(p.imag()) <= tol) {
      reals.push_back(p.real());
    } else if (p.imag() > 0.0) {
      pairs.emplace_back(p, std::conj(p));
    }
  }
  std::sort(reals.begin(), reals.end());
  if (reals.size() % 2 != 0 || 2 * pairs.size() + reals.size() != poles.size()) {
    throw DesignError("pole set does not factor into second-order sections");
  }
  for (std::size_t i = 0; i < reals.size(); i += 2) pairs.emplace_back(reals[i], reals[i + 1]);

  // Poles nearest the unit circle go last.
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return std::max(std::abs(a.first), std::abs(a.second)) < std::max(std::abs(b.first), std::abs(b.second));
  });

  FilterCoefficients out;
  out.poles = poles;
  const double per_section = std::pow(std::abs(gain), 1.0 / static_cast<double>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [p, q] = pairs[k];
    SecondOrderSection s;
    const double g = (k == 0 && gain < 0.0) ? -per_section : per_section;
    // One zero at +1 and one at -1: 1 - z^-2.
    s.b0 = g;
    s.b1 = 0.0;
    s.b2 = -g;
    s.a1 = -(p + q).real();
    s.a2 = (p * q).real();
    out.sections.push_back(s);
  }

  out.numerator = {1.0};
  out.denominator = {1.0};
  for (const auto& s : out.sections) {
    out.numerator = convolve(out.numerator, {s.b0, s.b1, s.b2});
    out.denominator = convolve(out.denominator, {1.0, s.a1, s.a2});
  }
  return out;
}

EegEpoch filter_zero_phase(const EegEpoch& epoch, const FilterCoefficients& coeffs) {
  if (coeffs.sections.empty()) throw ArgumentError("filter has no sections");
  const std::size_t pad = 3 * coeffs.length();
  const std::size_t n = epoch.n_samples();
  if (n <= pad) {
    throw ArgumentError("epoch of " + std::to_string(n) + " samples is too short for edge padding of " +
                        std::to_string(pad));
  }

  // Section k starts from the steady state it would reach under a step that
  // has passed through sections 0..k-1.
  std::vector<std::array<double, 2>> zi;
  zi.reserve(coeffs.sections.size());
  double dc = 1.0;
  for (const auto& s : coeffs.sections) {
    auto state = section_zi(s);
    zi.push_back({state[0] * dc, state[1] * dc});
    dc *= (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
  }

  const Eigen::MatrixXd& in = epoch.data();
  Eigen::MatrixXd out(in.rows(), in.cols());
  std::vector<double> ext(n + 2 * pad);
  for (Eigen::Index c = 0; c < in.rows(); ++c) {
    const double first = in(c, 0);
    const double last = in(c, static_cast<Eigen::Index>(n - 1));
    // Odd reflection about each end point.
    for (std::size_t i = 0; i < pad; ++i) {
      ext[i] = 2.0 * first - in(c, static_cast<Eigen::Index>(pad - i));
      ext[pad + n + i] = 2.0 * last - in(c, static_cast<Eigen::Index>(n - 2 - i));
    }
    for (std::size_t i = 0; i < n; ++i) ext[pad + i] = in(c, static_cast<Eigen::Index>(i));

    run_cascade(coeffs.sections, zi, ext.front(), ext);
    std::reverse(ext.begin(), ext.end());
    run_cascade(coeffs.sections, zi, ext.front(), ext);
    std::reverse(ext.begin(), ext.end());

    for (std::size_t i = 0; i < n; ++i) out(c, static_cast<Eigen::Index>(i)) = ext[pad + i];
  }
  return EegEpoch(std::move(out), epoch.sample_rate_hz());
}

Filterbank::Filterbank(double f0_hz, std::size_t sn, double sample_rate_hz, FilterbankSettings settings)
    : sample_rate_hz_(sample_rate_hz) {
  if (sn < 1) throw ArgumentError("filterbank needs at least one band");
  if (!(f0_hz > 0.0)) throw ArgumentError("base frequency must be positive");
  if (!(static_cast<double>(sn) * f0_hz < settings.high_hz)) {
    throw ArgumentError("sn * f0 must stay below the shared upper cutoff");
  }
  if (!(settings.high_hz < sample_rate_hz / 2.0)) throw ArgumentError("upper cutoff must be below Nyquist");
  for (std::size_t m = 1; m <= sn; ++m) {
    BandpassSpec spec;
    spec.order = settings.order;
    spec.ripple_db = settings.ripple_db;
    spec.low_hz = static_cast<double>(m) * f0_hz;
    spec.high_hz = settings.high_hz;
    spec.sample_rate_hz = sample_rate_hz;
    filters_.push_back(design_chebyshev1(spec));
    specs_.push_back(spec);
  }
}

SubbandSet Filterbank::decompose(const EegEpoch& epoch) const {
  if (epoch.sample_rate_hz() != sample_rate_hz_) {
    throw ArgumentError("epoch sample rate differs from the filterbank design rate");
  }
  SubbandSet set;
  set.specs = specs_;
  set.bands.reserve(filters_.size());
  for (const auto& filter : filters_) set.bands.push_back(filter_zero_phase(epoch, filter));
  return set;
}

SubbandSet decompose(const EegEpoch& epoch, double f0_hz, std::size_t sn, double ripple_db, int order,
                     double high_hz) {
  return Filterbank(f0_hz, sn, epoch.sample_rate_hz(), FilterbankSettings{order, ripple_db, high_hz})
      .decompose(epoch);
}

}  // namespace ssvep
