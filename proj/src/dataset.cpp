#include "snnlab/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "snnlab/errors.hpp"
#include "snnlab/rng.hpp"

namespace snnlab {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::uint32_t read_be32(std::span<const unsigned char> bytes, std::size_t offset) {
  if (offset + 4 > bytes.size()) {
    throw IdxError(IdxError::Kind::Truncated,
                   "idx: truncated header, need " + std::to_string(offset + 4) + " bytes, have " +
                       std::to_string(bytes.size()));
  }
  return (std::uint32_t(bytes[offset]) << 24) | (std::uint32_t(bytes[offset + 1]) << 16) |
         (std::uint32_t(bytes[offset + 2]) << 8) | std::uint32_t(bytes[offset + 3]);
}

}  // namespace

std::size_t Dataset::num_classes() const {
  int top = 0;
  for (int y : labels) top = std::max(top, y);
  return static_cast<std::size_t>(top) + 1;
}

Dataset make_blobs(const DatasetSpec& spec) {
  if (spec.blobs_classes < 2 || spec.blobs_per_class < 1) {
    throw DataError("make_blobs: need at least 2 classes with at least 1 sample each");
  }
  if (spec.blobs_centers.size() != spec.blobs_classes) {
    throw DataError("make_blobs: " + std::to_string(spec.blobs_classes) + " classes but " +
                    std::to_string(spec.blobs_centers.size()) + " centers");
  }
  if (spec.blobs_noise_std < 0.0) throw DataError("make_blobs: noise std must be >= 0");
  const std::size_t dim = spec.blobs_centers.front().size();
  for (const auto& c : spec.blobs_centers) {
    if (c.size() != dim || c.empty()) throw DataError("make_blobs: center dimensions differ");
  }

  Rng rng(spec.blobs_seed);
  Dataset data;
  data.dim = dim;
  data.features.reserve(spec.blobs_classes * spec.blobs_per_class * dim);
  data.labels.reserve(spec.blobs_classes * spec.blobs_per_class);
  for (std::size_t c = 0; c < spec.blobs_classes; ++c) {
    for (std::size_t k = 0; k < spec.blobs_per_class; ++k) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double v = spec.blobs_centers[c][d] + rng.gaussian(spec.blobs_noise_std);
        data.features.push_back(std::clamp(v, 0.0, 1.0));
      }
      data.labels.push_back(static_cast<int>(c));
    }
  }
  return data;
}

IdxImages parse_idx_images(std::span<const unsigned char> bytes) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kImageMagic) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "idx: bad image magic 0x%08x, expected 0x%08x", magic,
                  kImageMagic);
    throw IdxError(IdxError::Kind::BadMagic, buf);
  }
  IdxImages out;
  out.count = read_be32(bytes, 4);
  out.rows = read_be32(bytes, 8);
  out.cols = read_be32(bytes, 12);
  const std::size_t want = out.count * out.rows * out.cols;
  if (bytes.size() < 16 + want) {
    throw IdxError(IdxError::Kind::Truncated,
                   "idx: truncated image payload, expected " + std::to_string(16 + want) +
                       " bytes, have " + std::to_string(bytes.size()));
  }
  out.pixels.resize(want);
  for (std::size_t i = 0; i < want; ++i) out.pixels[i] = bytes[16 + i] / 255.0;
  return out;
}

std::vector<int> parse_idx_labels(std::span<const unsigned char> bytes) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kLabelMagic) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "idx: bad label magic 0x%08x, expected 0x%08x", magic,
                  kLabelMagic);
    throw IdxError(IdxError::Kind::BadMagic, buf);
  }
  const std::size_t count = read_be32(bytes, 4);
  if (bytes.size() < 8 + count) {
    throw IdxError(IdxError::Kind::Truncated,
                   "idx: truncated label payload, expected " + std::to_string(8 + count) +
                       " bytes, have " + std::to_string(bytes.size()));
  }
  std::vector<int> labels(count);
  for (std::size_t i = 0; i < count; ++i) labels[i] = bytes[8 + i];
  return labels;
}

Dataset parse_idx(std::span<const unsigned char> image_bytes,
                  std::span<const unsigned char> label_bytes, std::size_t subset) {
  IdxImages images = parse_idx_images(image_bytes);
  std::vector<int> labels = parse_idx_labels(label_bytes);
  if (images.count != labels.size()) {
    throw IdxError(IdxError::Kind::CountMismatch,
                   "idx: " + std::to_string(images.count) + " images but " +
                       std::to_string(labels.size()) + " labels");
  }
  Dataset data;
  data.dim = images.rows * images.cols;
  std::size_t n = images.count;
  if (subset > 0) n = std::min(n, subset);
  data.features.assign(images.pixels.begin(),
                       images.pixels.begin() + static_cast<std::ptrdiff_t>(n * data.dim));
  data.labels.assign(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n));
  return data;
}

Dataset load_dataset(const DatasetSpec& spec) {
  if (spec.kind == DatasetKind::Blobs) return make_blobs(spec);
  const auto images = read_file_bytes(spec.idx_images);
  const auto labels = read_file_bytes(spec.idx_labels);
  return parse_idx(images, labels, spec.idx_subset);
}

std::vector<unsigned char> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace snnlab
