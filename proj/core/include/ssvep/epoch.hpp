#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace ssvep {

// One multichannel EEG segment: rows are channels, columns are samples.
// Immutable once constructed; the constructor enforces the invariants
// (at least one channel, at least two samples, finite data, fs > 0).
class EegEpoch {
 public:
  EegEpoch(Eigen::MatrixXd data, double sample_rate_hz);

  const Eigen::MatrixXd& data() const noexcept { return data_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }

  std::size_t n_channels() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  std::size_t n_samples() const noexcept { return static_cast<std::size_t>(data_.cols()); }

  double duration_s() const noexcept { return static_cast<double>(n_samples()) / sample_rate_hz_; }

  bool same_shape(const EegEpoch& other) const noexcept {
    return data_.rows() == other.data_.rows() && data_.cols() == other.data_.cols();
  }

  EegEpoch scaled(double factor) const;

 private:
  Eigen::MatrixXd data_;
  double sample_rate_hz_;
};

}  // namespace ssvep
