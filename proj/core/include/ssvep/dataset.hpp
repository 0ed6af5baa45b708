#pragma once

#include "ssvep/epoch.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace ssvep {

struct DatasetShape {
  std::size_t n_channels = 0;
  std::size_t n_samples = 0;
  std::size_t n_trials = 0;
  std::size_t n_frequencies = 0;

  std::size_t element_count() const noexcept {
    return n_channels * n_samples * n_trials * n_frequencies;
  }
  bool operator==(const DatasetShape&) const = default;
};

struct DatasetMetadata {
  std::vector<double> stim_frequencies_hz;
  std::vector<double> stim_phases_rad;
  double sample_rate_hz = 0.0;
  double visual_latency_s = 0.0;
  std::vector<std::string> channel_labels;

  bool operator==(const DatasetMetadata&) const = default;
};

// A full recording session: Nc x Ns x Nt x Nf float32 samples plus stimulus
// metadata. Samples are held in frequency-major order,
//   index = ((f * Nt + t) * Nc + c) * Ns + s,
// so every (trial, frequency) record is one contiguous Nc x Ns block.
class SsvepDataset {
 public:
  SsvepDataset(DatasetShape shape, std::vector<float> samples, DatasetMetadata meta);

  const DatasetShape& shape() const noexcept { return shape_; }
  const DatasetMetadata& metadata() const noexcept { return meta_; }
  std::span<const float> samples() const noexcept { return samples_; }

  std::size_t n_channels() const noexcept { return shape_.n_channels; }
  std::size_t n_samples() const noexcept { return shape_.n_samples; }
  std::size_t n_trials() const noexcept { return shape_.n_trials; }
  std::size_t n_frequencies() const noexcept { return shape_.n_frequencies; }
  double sample_rate_hz() const noexcept { return meta_.sample_rate_hz; }
  double visual_latency_s() const noexcept { return meta_.visual_latency_s; }
  const std::vector<double>& frequencies_hz() const noexcept { return meta_.stim_frequencies_hz; }

  // Lowest stimulus frequency; anchors the filterbank cutoffs.
  double base_frequency_hz() const noexcept { return meta_.stim_frequencies_hz.front(); }

  static std::size_t linear_index(const DatasetShape& shape, std::size_t channel, std::size_t sample,
                                  std::size_t trial, std::size_t frequency) noexcept {
    return ((frequency * shape.n_trials + trial) * shape.n_channels + channel) * shape.n_samples + sample;
  }

  float at(std::size_t channel, std::size_t sample, std::size_t trial, std::size_t frequency) const;

  // Samples [first, first + count) of one record, promoted to double.
  EegEpoch slice(std::size_t trial, std::size_t frequency, std::size_t first, std::size_t count) const;
  EegEpoch record(std::size_t trial, std::size_t frequency) const;

  bool operator==(const SsvepDataset&) const = default;

 private:
  DatasetShape shape_;
  std::vector<float> samples_;
  DatasetMetadata meta_;
};

// --- portable .ssvp container -------------------------------------------

inline constexpr char kSsvpMagic[4] = {'S', 'S', 'V', 'P'};
inline constexpr std::uint8_t kSsvpVersion = 1;
inline constexpr std::size_t kSsvpFixedHeaderBytes = 8 + 6 * 4;
inline constexpr std::size_t kSsvpLabelBytes = 8;

// Total file size implied by a header; used by the reader's length check.
std::size_t ssvp_file_size(const DatasetShape& shape) noexcept;

std::vector<std::uint8_t> encode_dataset(const SsvepDataset& dataset);
SsvepDataset decode_dataset(std::span<const std::uint8_t> bytes);

SsvepDataset read_dataset(const std::filesystem::path& path);
void write_dataset(const SsvepDataset& dataset, const std::filesystem::path& path);

// --- results CSV ---------------------------------------------------------

struct EvalRow {
  std::string subject_id;
  double window_s = 0.0;
  double accuracy = 0.0;
  double itr_bits_per_min = 0.0;
  long long n_correct = 0;
  long long n_total = 0;

  bool operator==(const EvalRow&) const = default;
};

EvalRow make_eval_row(std::string subject_id, double window_s, long long n_correct, long long n_total,
                      double itr_bits_per_min);

inline constexpr const char* kResultsCsvHeader = "subject,window_s,accuracy,itr_bits_per_min,n_correct,n_total";

// Shortest decimal text that parses back to the same double.
std::string format_shortest(double value);

std::string results_csv(std::span<const EvalRow> rows);
void write_results_csv(std::span<const EvalRow> rows, const std::filesystem::path& path);

}  // namespace ssvep
