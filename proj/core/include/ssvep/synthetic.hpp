#pragma once

#include "ssvep/dataset.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace ssvep {

struct SynthSpec {
  std::vector<double> frequencies_hz;
  std::vector<double> phases_rad;
  std::size_t n_channels = 8;
  std::size_t n_trials = 15;
  double duration_s = 4.0;
  double sample_rate_hz = 256.0;
  std::size_t n_harmonics = 3;
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  bool identity_mixing = false;

  void validate() const;
};

// 9.25, 9.75, ..., 14.75 Hz with phases cycling 0, pi/2, pi, 3pi/2.
SynthSpec reference_synth_spec();

std::vector<double> quarter_cycle_phases(std::size_t count);

// Harmonic h of class i is h^-1 sin(2 pi h f_i t + h phi_i); each harmonic
// radiates through its own column ((h-1) mod Nc) of a seeded mixing matrix
// with condition number below 10. White Gaussian noise per channel is scaled
// so that the channel's signal power over noise power equals snr_db. Each
// (class, trial) draws from an independent stream keyed by (seed, class,
// trial), so generation order does not affect the result.
SsvepDataset generate_ssvep(const SynthSpec& spec);

Eigen::MatrixXd mixing_matrix(std::size_t n_channels, std::uint64_t seed);

}  // namespace ssvep
