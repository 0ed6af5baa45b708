#include "ssvep/canonical.hpp"

#include "ssvep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ssvep {

namespace {

// Eigenvalues below this fraction of the largest count as numerically zero
// when deciding the effective rank of a covariance block.
constexpr double kRankTolerance = 1e-10;

}  // namespace

CcaOperand::CcaOperand(const Eigen::MatrixXd& rows, double ridge) {
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw ArgumentError("ridge must be a finite non-negative number");
  if (rows.rows() < 1 || rows.cols() < 2) throw ArgumentError("CCA operand needs at least one row and two samples");

  centered_ = rows.colwise() - rows.rowwise().mean();
  const auto p = centered_.rows();
  const double dof = static_cast<double>(centered_.cols() - 1);
  const Eigen::MatrixXd cov = (centered_ * centered_.transpose()) / dof;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericalError("covariance eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double lambda_max = lambda(p - 1);
  if (!(lambda_max > 0.0)) throw NumericalError("CCA operand has zero variance");

  rank_ = static_cast<std::size_t>((lambda.array() > kRankTolerance * lambda_max).count());

  const double shift = ridge * cov.trace() / static_cast<double>(p);
  if (ridge == 0.0 && rank_ < static_cast<std::size_t>(p)) {
    throw NumericalError("covariance is singular (rank " + std::to_string(rank_) + " of " + std::to_string(p) +
                         "); set ridge > 0");
  }
  const Eigen::VectorXd inv_sqrt = (lambda.array().max(0.0) + shift).rsqrt().matrix();
  whitener_ = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
}

CcaResult canonical_correlations(const CcaOperand& z, const CcaOperand& y) {
  if (z.n_samples() != y.n_samples()) {
    throw ArgumentError("CCA inputs differ in sample count (" + std::to_string(z.n_samples()) + " vs " +
                        std::to_string(y.n_samples()) + ")");
  }
  if (z.n_samples() <= z.n_rows() + y.n_rows()) {
    throw ArgumentError("CCA needs more samples than the combined row count");
  }
  const double dof = static_cast<double>(z.n_samples() - 1);
  const Eigen::MatrixXd cross = (z.centered() * y.centered().transpose()) / dof;
  const Eigen::MatrixXd coherence = z.whitener() * cross * y.whitener();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coherence);
  const Eigen::VectorXd& sigma = svd.singularValues();  // descending

  const std::size_t r = std::min({z.effective_rank(), y.effective_rank(), static_cast<std::size_t>(sigma.size())});
  CcaResult result;
  result.correlations.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    result.correlations.push_back(std::clamp(sigma(static_cast<Eigen::Index>(i)), 0.0, 1.0));
  }
  return result;
}

CcaResult canonical_correlations(const EegEpoch& z, const EegEpoch& y, double ridge) {
  if (z.n_samples() != y.n_samples()) throw ArgumentError("CCA inputs differ in sample count");
  return canonical_correlations(CcaOperand(z.data(), ridge), CcaOperand(y.data(), ridge));
}

EmbeddedEpoch embed_delay(const EegEpoch& z, std::size_t tau) {
  const std::size_t ns = z.n_samples();
  if (tau >= ns) throw ArgumentError("delay must be shorter than the epoch");
  const auto nc = static_cast<Eigen::Index>(z.n_channels());
  const auto width = static_cast<Eigen::Index>(ns - tau);
  EmbeddedEpoch out;
  out.tau_samples = tau;
  out.data.resize(2 * nc, width);
  out.data.topRows(nc) = z.data().leftCols(width);
  out.data.bottomRows(nc) = z.data().middleCols(static_cast<Eigen::Index>(tau), width);
  return out;
}

Eigen::MatrixXd trim_samples(const Eigen::MatrixXd& y, std::size_t tau) {
  if (tau >= static_cast<std::size_t>(y.cols())) throw ArgumentError("delay must be shorter than the epoch");
  return y.leftCols(y.cols() - static_cast<Eigen::Index>(tau));
}

CcaResult sscca_correlations(const EegEpoch& z, const EegEpoch& y, std::size_t tau, double ridge) {
  if (z.n_samples() != y.n_samples()) throw ArgumentError("SSCCA inputs differ in sample count");
  const EmbeddedEpoch embedded = embed_delay(z, tau);
  return canonical_correlations(CcaOperand(embedded.data, ridge), CcaOperand(trim_samples(y.data(), tau), ridge));
}

std::size_t argmax_first(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("argmax of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

BaselineDecision sscca_recognize_baseline(const EegEpoch& z, std::span<const EegEpoch> templates, std::size_t tau,
                                          double ridge) {
  if (templates.size() < 2) throw ArgumentError("baseline recognition needs at least two templates");
  for (const auto& t : templates) {
    if (!t.same_shape(templates.front()) || t.n_samples() != z.n_samples()) {
      throw ArgumentError("templates and test epoch must share one shape");
    }
  }
  const CcaOperand test(embed_delay(z, tau).data, ridge);
  BaselineDecision decision;
  decision.scores.reserve(templates.size());
  for (const auto& t : templates) {
    decision.scores.push_back(canonical_correlations(test, CcaOperand(trim_samples(t.data(), tau), ridge)).leading());
  }
  decision.index = argmax_first(decision.scores);
  return decision;
}

}  // namespace ssvep
