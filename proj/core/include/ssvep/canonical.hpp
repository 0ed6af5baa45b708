#pragma once

#include "ssvep/epoch.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace ssvep {

inline constexpr double kDefaultRidge = 1e-8;

struct CcaResult {
  std::vector<double> correlations;  // descending, each in [0, 1]

  std::size_t rank() const noexcept { return correlations.size(); }
  double leading() const noexcept { return correlations.empty() ? 0.0 : correlations.front(); }
};

// Original rows on top, copies advanced by tau samples underneath:
// row j < Nc, column n holds z[j][n]; row Nc + j holds z[j][n + tau].
struct EmbeddedEpoch {
  Eigen::MatrixXd data;
  std::size_t tau_samples = 0;
};

EmbeddedEpoch embed_delay(const EegEpoch& z, std::size_t tau);

// Row-centered view of one side of a CCA problem, with its whitening
// transform precomputed. Building it once per signal lets many pairings
// reuse the expensive part.
class CcaOperand {
 public:
  CcaOperand(const Eigen::MatrixXd& rows, double ridge);

  const Eigen::MatrixXd& centered() const noexcept { return centered_; }
  const Eigen::MatrixXd& whitener() const noexcept { return whitener_; }
  std::size_t effective_rank() const noexcept { return rank_; }
  std::size_t n_samples() const noexcept { return static_cast<std::size_t>(centered_.cols()); }
  std::size_t n_rows() const noexcept { return static_cast<std::size_t>(centered_.rows()); }

 private:
  Eigen::MatrixXd centered_;
  Eigen::MatrixXd whitener_;  // (C + ridge * tr(C)/p * I)^{-1/2}
  std::size_t rank_ = 0;
};

CcaResult canonical_correlations(const CcaOperand& z, const CcaOperand& y);

CcaResult canonical_correlations(const EegEpoch& z, const EegEpoch& y, double ridge = kDefaultRidge);

// Drops the last `tau` columns so y lines up with embed_delay(z, tau).
Eigen::MatrixXd trim_samples(const Eigen::MatrixXd& y, std::size_t tau);

// CCA of the delay-embedded z against the (trimmed, unembedded) y.
CcaResult sscca_correlations(const EegEpoch& z, const EegEpoch& y, std::size_t tau = 1,
                             double ridge = kDefaultRidge);

struct BaselineDecision {
  std::size_t index = 0;
  std::vector<double> scores;
};

// Index of the template with the largest leading SSCCA correlation; ties go
// to the lowest index.
BaselineDecision sscca_recognize_baseline(const EegEpoch& z, std::span<const EegEpoch> templates,
                                          std::size_t tau = 1, double ridge = kDefaultRidge);

// First index attaining the maximum.
std::size_t argmax_first(std::span<const double> values);

}  // namespace ssvep
