#pragma once

#include "ssvep/epoch.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace ssvep {

struct BandpassSpec {
  int order = 12;  // order of the final bandpass (prototype order is half)
  double ripple_db = 3.0;
  double low_hz = 0.0;
  double high_hz = 80.0;
  double sample_rate_hz = 0.0;

  void validate() const;
};

// One biquad, a0 normalized to 1:
//   H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)
struct SecondOrderSection {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

// Interchange form of a designed filter. `numerator`/`denominator` are the
// expanded transfer-function polynomials in z^-1 (denominator[0] == 1);
// `sections` is the cascade actually used for filtering, and `poles` the
// z-plane poles the cascade was built from.
struct FilterCoefficients {
  std::vector<double> numerator;
  std::vector<double> denominator;
  std::vector<SecondOrderSection> sections;
  std::vector<std::complex<double>> poles;

  double max_pole_radius() const noexcept;
  bool is_stable() const noexcept { return max_pole_radius() < 1.0; }

  // Length of the longer polynomial; drives the edge-padding length.
  std::size_t length() const noexcept;

  // H(e^{jw}) evaluated through the cascade.
  std::complex<double> response(double frequency_hz, double sample_rate_hz) const;
};

// Chebyshev Type I bandpass via analog prototype, lowpass-to-bandpass
// transform and bilinear transform with prewarped band edges.
FilterCoefficients design_chebyshev1(const BandpassSpec& spec);

// Forward-backward filtering of every channel with odd-reflection edge
// padding of 3 * coeffs.length() samples and steady-state initial
// conditions. Zero net phase; output shape equals input shape.
EegEpoch filter_zero_phase(const EegEpoch& epoch, const FilterCoefficients& coeffs);

struct SubbandSet {
  std::vector<EegEpoch> bands;
  std::vector<BandpassSpec> specs;

  std::size_t size() const noexcept { return bands.size(); }
};

struct FilterbankSettings {
  int order = 12;
  double ripple_db = 3.0;
  double high_hz = 80.0;

  bool operator==(const FilterbankSettings&) const = default;
};

// A designed bank of `sn` bandpass filters; band m (1-based) passes
// [m * f0, high]. Designing once and applying many times is the hot path in
// cross-validation.
class Filterbank {
 public:
  Filterbank(double f0_hz, std::size_t sn, double sample_rate_hz, FilterbankSettings settings = {});

  std::size_t size() const noexcept { return filters_.size(); }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  const std::vector<BandpassSpec>& specs() const noexcept { return specs_; }
  const std::vector<FilterCoefficients>& filters() const noexcept { return filters_; }

  SubbandSet decompose(const EegEpoch& epoch) const;

 private:
  double sample_rate_hz_;
  std::vector<BandpassSpec> specs_;
  std::vector<FilterCoefficients> filters_;
};

SubbandSet decompose(const EegEpoch& epoch, double f0_hz, std::size_t sn, double ripple_db = 3.0, int order = 12,
                     double high_hz = 80.0);

}  // namespace ssvep
