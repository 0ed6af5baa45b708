#include "ssvep/epoch.hpp"

#include "ssvep/errors.hpp"

#include <cmath>
#include <utility>

namespace ssvep {

EegEpoch::EegEpoch(Eigen::MatrixXd data, double sample_rate_hz)
    : data_(std::move(data)), sample_rate_hz_(sample_rate_hz) {
  if (data_.rows() < 1) throw ValidationError("epoch needs at least one channel");
  if (data_.cols() < 2) throw ValidationError("epoch needs at least two samples");
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw ValidationError("epoch sample rate must be positive and finite");
  }
  if (!data_.allFinite()) throw ValidationError("epoch contains non-finite samples");
}

EegEpoch EegEpoch::scaled(double factor) const { return EegEpoch(data_ * factor, sample_rate_hz_); }

}  // namespace ssvep
