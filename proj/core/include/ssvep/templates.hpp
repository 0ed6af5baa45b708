#pragma once

#include "ssvep/dataset.hpp"
#include "ssvep/epoch.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ssvep {

struct Fold {
  std::size_t test_trial = 0;
  std::vector<std::size_t> train_trials;

  bool operator==(const Fold&) const = default;
};

struct FoldPlan {
  std::vector<Fold> folds;
};

FoldPlan loocv_folds(std::size_t n_trials);

struct SampleWindow {
  std::size_t first = 0;
  std::size_t count = 0;
};

// [round(start_s * fs), + round(duration_s * fs)); throws ArgumentError
// when the slice leaves the record or is shorter than two samples.
SampleWindow window_for(const SsvepDataset& dataset, double start_s, double duration_s);

EegEpoch extract_window(const SsvepDataset& dataset, std::size_t trial, std::size_t freq_index, double start_s,
                        double duration_s);

// Per-frequency templates. y1 averages the first ceil(T/2) training trials,
// y2 the remaining floor(T/2); overall averages all T. With one training
// trial all three are that trial.
struct TemplateBank {
  std::vector<EegEpoch> y1;
  std::vector<EegEpoch> y2;
  std::vector<EegEpoch> overall;

  std::size_t size() const noexcept { return overall.size(); }
};

TemplateBank build_templates(const SsvepDataset& dataset, std::span<const std::size_t> train_trials,
                             SampleWindow window);

}  // namespace ssvep
