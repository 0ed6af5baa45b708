#include "ssvep/templates.hpp"

#include "ssvep/errors.hpp"

#include <cmath>

namespace ssvep {

FoldPlan loocv_folds(std::size_t n_trials) {
  if (n_trials < 2) throw ArgumentError("leave-one-out needs at least two trials");
  FoldPlan plan;
  plan.folds.reserve(n_trials);
  for (std::size_t k = 0; k < n_trials; ++k) {
    Fold fold;
    fold.test_trial = k;
    fold.train_trials.reserve(n_trials - 1);
    for (std::size_t t = 0; t < n_trials; ++t) {
      if (t != k) fold.train_trials.push_back(t);
    }
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

SampleWindow window_for(const SsvepDataset& dataset, double start_s, double duration_s) {
  if (!std::isfinite(start_s) || !std::isfinite(duration_s) || start_s < 0.0 || !(duration_s > 0.0)) {
    throw ArgumentError("window start must be >= 0 and duration > 0");
  }
  const double fs = dataset.sample_rate_hz();
  const double first = std::round(start_s * fs);
  const double count = std::round(duration_s * fs);
  const auto ns = static_cast<double>(dataset.n_samples());
  if (count < 2.0 || first + count > ns) {
    throw ArgumentError("window [" + std::to_string(start_s) + " s, +" + std::to_string(duration_s) +
                        " s) does not fit a record of " + std::to_string(dataset.n_samples()) + " samples");
  }
  return SampleWindow{static_cast<std::size_t>(first), static_cast<std::size_t>(count)};
}

EegEpoch extract_window(const SsvepDataset& dataset, std::size_t trial, std::size_t freq_index, double start_s,
                        double duration_s) {
  const SampleWindow w = window_for(dataset, start_s, duration_s);
  return dataset.slice(trial, freq_index, w.first, w.count);
}

namespace {

EegEpoch mean_of(const SsvepDataset& dataset, std::span<const std::size_t> trials, std::size_t freq,
                 SampleWindow window) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dataset.n_channels()),
                                              static_cast<Eigen::Index>(window.count));
  for (std::size_t t : trials) acc += dataset.slice(t, freq, window.first, window.count).data();
  acc /= static_cast<double>(trials.size());
  return EegEpoch(std::move(acc), dataset.sample_rate_hz());
}

}  // namespace

TemplateBank build_templates(const SsvepDataset& dataset, std::span<const std::size_t> train_trials,
                             SampleWindow window) {
  if (train_trials.empty()) throw ArgumentError("templates need at least one training trial");
  if (window.count < 2 || window.first > dataset.n_samples() ||
      window.count > dataset.n_samples() - window.first) {
    throw ArgumentError("template window outside the record");
  }
  for (std::size_t t : train_trials) {
    if (t >= dataset.n_trials()) throw ArgumentError("training trial index out of range");
  }

  const std::size_t total = train_trials.size();
  const std::size_t first_half = (total + 1) / 2;
  const auto head = train_trials.first(first_half);
  // A single trial serves as both halves.
  const auto tail = total == 1 ? train_trials : train_trials.subspan(first_half);

  TemplateBank bank;
  const std::size_t nf = dataset.n_frequencies();
  bank.y1.reserve(nf);
  bank.y2.reserve(nf);
  bank.overall.reserve(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    bank.y1.push_back(mean_of(dataset, head, f, window));
    bank.y2.push_back(mean_of(dataset, tail, f, window));
    bank.overall.push_back(mean_of(dataset, train_trials, f, window));
  }
  return bank;
}

}  // namespace ssvep
