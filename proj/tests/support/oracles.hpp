#pragma once

// Reference computations used only by tests. None of these route through the
// library's CCA or filtering code.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

namespace ssvep::oracle {

inline double pearson(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
  const Eigen::RowVectorXd da = a.array() - a.mean();
  const Eigen::RowVectorXd db = b.array() - b.mean();
  return da.dot(db) / std::sqrt(da.squaredNorm() * db.squaredNorm());
}

// Max |corr(w'Z, v'Y)| over unit weights (cos t, sin t) on a steps x steps
// angle grid covering [0, pi). Z and Y must be 2-row.
inline double grid_cca_2x2(const Eigen::MatrixXd& z, const Eigen::MatrixXd& y, int steps) {
  const Eigen::MatrixXd zc = z.colwise() - z.rowwise().mean();
  const Eigen::MatrixXd yc = y.colwise() - y.rowwise().mean();
  const Eigen::Matrix2d czz = zc * zc.transpose();
  const Eigen::Matrix2d cyy = yc * yc.transpose();
  const Eigen::Matrix2d czy = zc * yc.transpose();
  std::vector<Eigen::Vector2d> dirs(static_cast<std::size_t>(steps));
  std::vector<double> zvar(dirs.size()), yvar(dirs.size());
  for (int i = 0; i < steps; ++i) {
    const double t = std::numbers::pi * i / steps;
    dirs[i] = Eigen::Vector2d(std::cos(t), std::sin(t));
    zvar[i] = std::sqrt(dirs[i].dot(czz * dirs[i]));
    yvar[i] = std::sqrt(dirs[i].dot(cyy * dirs[i]));
  }
  double best = 0.0;
  for (int i = 0; i < steps; ++i) {
    const Eigen::RowVector2d wz = dirs[i].transpose() * czy;
    for (int j = 0; j < steps; ++j) {
      const double r = std::abs(wz.dot(dirs[j].transpose())) / (zvar[i] * yvar[j]);
      if (r > best) best = r;
    }
  }
  return best;
}

// Transfer function evaluated from expanded polynomials in z^-1.
inline std::complex<double> polynomial_response(const std::vector<double>& b, const std::vector<double>& a,
                                                double f_hz, double fs) {
  const std::complex<double> zinv = std::polar(1.0, -2.0 * std::numbers::pi * f_hz / fs);
  std::complex<double> num = 0.0, den = 0.0, p = 1.0;
  for (std::size_t k = 0; k < std::max(b.size(), a.size()); ++k) {
    if (k < b.size()) num += b[k] * p;
    if (k < a.size()) den += a[k] * p;
    p *= zinv;
  }
  return num / den;
}

inline double db(std::complex<double> h) { return 20.0 * std::log10(std::abs(h)); }

// Roots of 1 + a1 x^-1 + ... via the companion matrix.
inline double max_root_radius(const std::vector<double>& a) {
  const auto n = static_cast<Eigen::Index>(a.size() - 1);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = -a[static_cast<std::size_t>(j + 1)] / a[0];
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  return Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues().cwiseAbs().maxCoeff();
}

inline double rms(const Eigen::RowVectorXd& x) { return std::sqrt(x.squaredNorm() / static_cast<double>(x.size())); }

inline Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

inline Eigen::MatrixXd sinusoid_rows(std::size_t channels, std::size_t samples, double f_hz, double fs,
                                     double phase = 0.0) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(channels), static_cast<Eigen::Index>(samples));
  for (Eigen::Index c = 0; c < m.rows(); ++c)
    for (Eigen::Index n = 0; n < m.cols(); ++n)
      m(c, n) = std::sin(2.0 * std::numbers::pi * f_hz * static_cast<double>(n) / fs + phase + 0.3 * c);
  return m;
}

// Exact two-sided binomial interval [lo, hi] on the count with at most
// alpha/2 probability mass in each tail.
inline std::pair<long long, long long> binomial_interval(long long n, double p, double alpha) {
  std::vector<double> pmf(static_cast<std::size_t>(n + 1));
  for (long long k = 0; k <= n; ++k) {
    const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    pmf[static_cast<std::size_t>(k)] = std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
  }
  long long lo = 0;
  double tail = 0.0;
  while (lo < n && tail + pmf[static_cast<std::size_t>(lo)] <= alpha / 2.0) tail += pmf[static_cast<std::size_t>(lo++)];
  long long hi = n;
  tail = 0.0;
  while (hi > 0 && tail + pmf[static_cast<std::size_t>(hi)] <= alpha / 2.0) tail += pmf[static_cast<std::size_t>(hi--)];
  return {lo, hi};
}

}  // namespace ssvep::oracle
