#include "ssvep/dataset.hpp"

#include "ssvep/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <utility>

namespace ssvep {

namespace {

std::uint32_t to_milli(double value, const char* what);

// Stimulus tables are stored as float32 on disk; holding them at that
// precision in memory keeps write/read an exact identity.
void canonicalize(DatasetMetadata& meta) {
  for (double& f : meta.stim_frequencies_hz) f = static_cast<double>(static_cast<float>(f));
  for (double& p : meta.stim_phases_rad) p = static_cast<double>(static_cast<float>(p));
}

void validate_dataset(const DatasetShape& shape, const std::vector<float>& samples, const DatasetMetadata& meta) {
  if (shape.n_channels < 1 || shape.n_samples < 2) {
    throw ValidationError("dataset needs at least one channel and two samples");
  }
  if (shape.n_trials < 2) throw ValidationError("dataset needs at least two trials for leave-one-out");
  if (shape.n_frequencies < 1) throw ValidationError("dataset needs at least one stimulus frequency");
  if (samples.size() != shape.element_count()) {
    throw ValidationError("sample count does not match dataset dimensions");
  }
  if (meta.stim_frequencies_hz.size() != shape.n_frequencies || meta.stim_phases_rad.size() != shape.n_frequencies) {
    throw ValidationError("stimulus tables must have one entry per frequency");
  }
  if (meta.channel_labels.size() != shape.n_channels) {
    throw ValidationError("channel labels must have one entry per channel");
  }
  for (std::size_t i = 0; i < meta.stim_frequencies_hz.size(); ++i) {
    const double f = meta.stim_frequencies_hz[i];
    if (!(f > 0.0) || !std::isfinite(f)) throw ValidationError("stimulus frequencies must be positive and finite");
    if (i > 0 && !(f > meta.stim_frequencies_hz[i - 1])) {
      throw ValidationError("stimulus frequencies must be strictly increasing");
    }
  }
  for (double p : meta.stim_phases_rad) {
    if (!std::isfinite(p)) throw ValidationError("stimulus phases must be finite");
  }
  if (!(meta.sample_rate_hz > 0.0) || !std::isfinite(meta.sample_rate_hz)) {
    throw ValidationError("sample rate must be positive and finite");
  }
  if (!(meta.visual_latency_s >= 0.0) || !std::isfinite(meta.visual_latency_s)) {
    throw ValidationError("visual latency must be non-negative and finite");
  }
  to_milli(meta.sample_rate_hz, "sample rate");
  to_milli(meta.visual_latency_s, "visual latency");
  for (const auto& label : meta.channel_labels) {
    if (label.size() > kSsvpLabelBytes) throw ValidationError("channel label longer than 8 characters: " + label);
    for (unsigned char ch : label) {
      if (ch < 0x20 || ch > 0x7e) throw ValidationError("channel labels must be printable ASCII");
    }
    if (!label.empty() && label.back() == ' ') throw ValidationError("channel labels may not end in a space");
  }
  if (std::any_of(samples.begin(), samples.end(), [](float v) { return !std::isfinite(v); })) {
    throw ValidationError("dataset contains non-finite samples");
  }
}

// --- little-endian primitives ------------------------------------------------

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[offset + i]) << (8 * i);
  return v;
}

float get_f32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return std::bit_cast<float>(get_u32(bytes, offset));
}

// Integer milli-units; the container cannot carry anything finer.
std::uint32_t to_milli(double value, const char* what) {
  const double scaled = value * 1000.0;
  const double rounded = std::round(scaled);
  if (rounded < 0.0 || rounded > static_cast<double>(std::numeric_limits<std::uint32_t>::max()) ||
      std::abs(scaled - rounded) > 1e-6) {
    throw ValidationError(std::string(what) + " is not representable in integer thousandths");
  }
  return static_cast<std::uint32_t>(rounded);
}

std::uint32_t to_u32(std::size_t value, const char* what) {
  if (value > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError(std::string(what) + " exceeds the 32-bit header field");
  }
  return static_cast<std::uint32_t>(value);
}

}  // namespace

SsvepDataset::SsvepDataset(DatasetShape shape, std::vector<float> samples, DatasetMetadata meta)
    : shape_(shape), samples_(std::move(samples)), meta_(std::move(meta)) {
  canonicalize(meta_);
  validate_dataset(shape_, samples_, meta_);
  meta_.sample_rate_hz = static_cast<double>(to_milli(meta_.sample_rate_hz, "sample rate")) / 1000.0;
  meta_.visual_latency_s = static_cast<double>(to_milli(meta_.visual_latency_s, "visual latency")) / 1000.0;
}

float SsvepDataset::at(std::size_t channel, std::size_t sample, std::size_t trial, std::size_t frequency) const {
  if (channel >= shape_.n_channels || sample >= shape_.n_samples || trial >= shape_.n_trials ||
      frequency >= shape_.n_frequencies) {
    throw ArgumentError("dataset index out of range");
  }
  return samples_[linear_index(shape_, channel, sample, trial, frequency)];
}

EegEpoch SsvepDataset::slice(std::size_t trial, std::size_t frequency, std::size_t first, std::size_t count) const {
  if (trial >= shape_.n_trials) throw ArgumentError("trial index out of range");
  if (frequency >= shape_.n_frequencies) throw ArgumentError("frequency index out of range");
  if (count < 2 || first > shape_.n_samples || count > shape_.n_samples - first) {
    throw ArgumentError("sample slice outside the record");
  }
  Eigen::MatrixXd data(shape_.n_channels, count);
  for (std::size_t c = 0; c < shape_.n_channels; ++c) {
    const float* row = samples_.data() + linear_index(shape_, c, first, trial, frequency);
    for (std::size_t s = 0; s < count; ++s) data(c, s) = static_cast<double>(row[s]);
  }
  return EegEpoch(std::move(data), meta_.sample_rate_hz);
}

EegEpoch SsvepDataset::record(std::size_t trial, std::size_t frequency) const {
  return slice(trial, frequency, 0, shape_.n_samples);
}

std::size_t ssvp_file_size(const DatasetShape& shape) noexcept {
  return kSsvpFixedHeaderBytes + 8 * shape.n_frequencies + kSsvpLabelBytes * shape.n_channels +
         4 * shape.element_count();
}

std::vector<std::uint8_t> encode_dataset(const SsvepDataset& dataset) {
  const auto& shape = dataset.shape();
  const auto& meta = dataset.metadata();

  std::vector<std::uint8_t> out;
  out.reserve(ssvp_file_size(shape));
  out.insert(out.end(), std::begin(kSsvpMagic), std::end(kSsvpMagic));
  out.push_back(kSsvpVersion);
  out.insert(out.end(), 3, 0);
  put_u32(out, to_u32(shape.n_channels, "channel count"));
  put_u32(out, to_u32(shape.n_samples, "sample count"));
  put_u32(out, to_u32(shape.n_trials, "trial count"));
  put_u32(out, to_u32(shape.n_frequencies, "frequency count"));
  put_u32(out, to_milli(meta.sample_rate_hz, "sample rate"));
  put_u32(out, to_milli(meta.visual_latency_s, "visual latency"));
  for (double f : meta.stim_frequencies_hz) put_f32(out, static_cast<float>(f));
  for (double p : meta.stim_phases_rad) put_f32(out, static_cast<float>(p));
  for (const auto& label : meta.channel_labels) {
    std::string padded = label;
    padded.resize(kSsvpLabelBytes, ' ');
    out.insert(out.end(), padded.begin(), padded.end());
  }
  for (float v : dataset.samples()) put_f32(out, v);
  return out;
}

SsvepDataset decode_dataset(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSsvpFixedHeaderBytes) {
    if (bytes.size() >= 5 && std::memcmp(bytes.data(), kSsvpMagic, 4) == 0 && bytes[4] == kSsvpVersion) {
      throw CorruptionError("file shorter than the fixed header");
    }
    throw FormatError("not an .ssvp file (too short for the header)");
  }
  if (std::memcmp(bytes.data(), kSsvpMagic, 4) != 0) throw FormatError("bad magic, expected SSVP");
  if (bytes[4] != kSsvpVersion) throw FormatError("unsupported .ssvp version " + std::to_string(bytes[4]));

  DatasetShape shape{get_u32(bytes, 8), get_u32(bytes, 12), get_u32(bytes, 16), get_u32(bytes, 20)};
  const std::uint32_t rate_mhz = get_u32(bytes, 24);
  const std::uint32_t latency_ms = get_u32(bytes, 28);

  if (bytes.size() != ssvp_file_size(shape)) {
    throw CorruptionError("file length " + std::to_string(bytes.size()) + " does not match header (expected " +
                          std::to_string(ssvp_file_size(shape)) + " bytes)");
  }

  DatasetMetadata meta;
  meta.sample_rate_hz = static_cast<double>(rate_mhz) / 1000.0;
  meta.visual_latency_s = static_cast<double>(latency_ms) / 1000.0;

  std::size_t offset = kSsvpFixedHeaderBytes;
  meta.stim_frequencies_hz.reserve(shape.n_frequencies);
  for (std::size_t i = 0; i < shape.n_frequencies; ++i, offset += 4) {
    meta.stim_frequencies_hz.push_back(static_cast<double>(get_f32(bytes, offset)));
  }
  meta.stim_phases_rad.reserve(shape.n_frequencies);
  for (std::size_t i = 0; i < shape.n_frequencies; ++i, offset += 4) {
    meta.stim_phases_rad.push_back(static_cast<double>(get_f32(bytes, offset)));
  }
  meta.channel_labels.reserve(shape.n_channels);
  for (std::size_t c = 0; c < shape.n_channels; ++c, offset += kSsvpLabelBytes) {
    std::string label(reinterpret_cast<const char*>(bytes.data() + offset), kSsvpLabelBytes);
    label.erase(label.find_last_not_of(' ') + 1);
    meta.channel_labels.push_back(std::move(label));
  }

  std::vector<float> samples(shape.element_count());
  for (std::size_t i = 0; i < samples.size(); ++i, offset += 4) samples[i] = get_f32(bytes, offset);

  return SsvepDataset(shape, std::move(samples), std::move(meta));
}

SsvepDataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return decode_dataset(bytes);
}

void write_dataset(const SsvepDataset& dataset, const std::filesystem::path& path) {
  // Encoding validates everything before the file is touched.
  const auto bytes = encode_dataset(dataset);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

// --- results CSV -------------------------------------------------------------

EvalRow make_eval_row(std::string subject_id, double window_s, long long n_correct, long long n_total,
                      double itr_bits_per_min) {
  if (n_total <= 0 || n_correct < 0 || n_correct > n_total) throw ArgumentError("invalid correct/total counts");
  EvalRow row;
  row.subject_id = std::move(subject_id);
  row.window_s = window_s;
  row.n_correct = n_correct;
  row.n_total = n_total;
  row.accuracy = static_cast<double>(n_correct) / static_cast<double>(n_total);
  row.itr_bits_per_min = itr_bits_per_min;
  return row;
}

std::string format_shortest(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string results_csv(std::span<const EvalRow> rows) {
  if (rows.empty()) throw ArgumentError("results CSV needs at least one row");
  std::ostringstream out;
  out << kResultsCsvHeader << '\n';
  for (const auto& row : rows) {
    if (row.subject_id.find_first_of(",\"\n") != std::string::npos) {
      throw ArgumentError("subject id may not contain commas, quotes or newlines");
    }
    out << row.subject_id << ',' << format_shortest(row.window_s) << ',' << format_shortest(row.accuracy) << ','
        << format_shortest(row.itr_bits_per_min) << ',' << row.n_correct << ',' << row.n_total << '\n';
  }
  return out.str();
}

void write_results_csv(std::span<const EvalRow> rows, const std::filesystem::path& path) {
  const std::string text = results_csv(rows);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace ssvep
