#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace snnlab {

struct Dataset {
  std::size_t dim = 0;
  std::vector<double> features;  // size() x dim, row-major
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  std::span<const double> sample(std::size_t i) const { return {features.data() + i * dim, dim}; }
  std::size_t num_classes() const;
};

enum class DatasetKind { Blobs, Idx };

struct DatasetSpec {
  DatasetKind kind = DatasetKind::Blobs;

  // Blobs: Gaussian clusters around per-class centers, clipped to [0,1].
  std::size_t blobs_classes = 2;
  std::size_t blobs_per_class = 100;
  std::vector<std::vector<double>> blobs_centers;
  double blobs_noise_std = 0.05;
  std::uint64_t blobs_seed = 0;

  // Idx: image/label file pair, optionally truncated to subset samples.
  std::string idx_images;
  std::string idx_labels;
  std::size_t idx_subset = 0;  // 0 = all
};

Dataset make_blobs(const DatasetSpec& spec);

struct IdxImages {
  std::size_t count = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> pixels;  // count x rows*cols, values in [0,1]
};

// IDX binary format: big-endian magic (0x00000803 images / 0x00000801
// labels), big-endian dimension sizes, raw byte payload.
IdxImages parse_idx_images(std::span<const unsigned char> bytes);
std::vector<int> parse_idx_labels(std::span<const unsigned char> bytes);

// Pairs an image file with a label file, enforcing count consistency.
Dataset parse_idx(std::span<const unsigned char> image_bytes,
                  std::span<const unsigned char> label_bytes, std::size_t subset = 0);

Dataset load_dataset(const DatasetSpec& spec);

std::vector<unsigned char> read_file_bytes(const std::string& path);

}  // namespace snnlab
