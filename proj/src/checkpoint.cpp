#include "snnlab/checkpoint.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "snnlab/errors.hpp"

namespace snnlab {

namespace {

constexpr char kMagic[8] = {'S', 'N', 'N', 'L', 'C', 'K', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { raw(&v, sizeof v); }
  void u64(std::uint64_t v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }
  void f64s(const std::vector<double>& vs) {
    for (double v : vs) f64(v);
  }
  void raw(const void* p, std::size_t n) {
    const char* c = static_cast<const char*>(p);
    bytes_.insert(bytes_.end(), c, c + n);
  }
  const std::vector<char>& bytes() const { return bytes_; }

 private:
  std::vector<char> bytes_;
};

class Reader {
 public:
  Reader(const std::vector<char>& bytes, const std::string& path) : bytes_(bytes), path_(path) {}
  std::uint8_t u8() { return static_cast<std::uint8_t>(bytes_[take(1)]); }
  std::uint32_t u32() { std::uint32_t v; std::memcpy(&v, &bytes_[take(4)], 4); return v; }
  std::uint64_t u64() { std::uint64_t v; std::memcpy(&v, &bytes_[take(8)], 8); return v; }
  double f64() { double v; std::memcpy(&v, &bytes_[take(8)], 8); return v; }
  std::vector<double> f64s(std::size_t n) {
    std::vector<double> out(n);
    for (auto& v : out) v = f64();
    return out;
  }
  std::string str(std::size_t n) {
    const std::size_t at = take(n);
    return std::string(bytes_.begin() + static_cast<std::ptrdiff_t>(at),
                       bytes_.begin() + static_cast<std::ptrdiff_t>(at + n));
  }

 private:
  std::size_t take(std::size_t n) {
    if (pos_ + n > bytes_.size()) {
      throw DataError("checkpoint " + path_ + ": truncated (wanted " + std::to_string(pos_ + n) +
                      " bytes, file has " + std::to_string(bytes_.size()) + ")");
    }
    const std::size_t at = pos_;
    pos_ += n;
    return at;
  }
  const std::vector<char>& bytes_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_checkpoint(const Checkpoint& ck, const std::string& path) {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.u32(kVersion);
  w.u64(ck.epoch);
  w.u64(ck.rng_seed);
  w.u64(ck.rng_state);
  w.f64(ck.net.lif.lambda);
  w.f64(ck.net.lif.u_th);
  w.u64(ck.net.steps);
  w.u64(ck.net.layer_sizes.size());
  for (std::size_t s : ck.net.layer_sizes) w.u64(s);
  for (std::size_t l = 0; l < ck.net.num_layers(); ++l) {
    w.u8(ck.net.kinds[l] == NeuronKind::Dlif ? 1 : 0);
  }
  for (std::size_t l = 0; l < ck.net.num_layers(); ++l) {
    w.f64s(ck.net.weights[l].data);
    if (ck.net.kinds[l] == NeuronKind::Dlif) w.f64s(ck.net.dlif_a[l]);
  }
  w.u64(ck.net.readout.rows);
  w.f64s(ck.net.readout.data);
  w.u64(ck.config_echo.size());
  w.raw(ck.config_echo.data(), ck.config_echo.size());

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write checkpoint: " + tmp);
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw DataError("short write on checkpoint: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw DataError("cannot rename checkpoint into place: " + path);
  }
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(bytes, path);

  const std::string magic = r.str(8);
  if (std::memcmp(magic.data(), kMagic, 8) != 0) {
    throw DataError("checkpoint " + path + ": bad magic, not a checkpoint file");
  }
  const std::uint32_t version = r.u32();
  if (version != kVersion) {
    throw DataError("checkpoint " + path + ": version " + std::to_string(version) +
                    " not supported (tool supports " + std::to_string(kVersion) + ")");
  }

  Checkpoint ck;
  ck.version = version;
  ck.epoch = r.u64();
  ck.rng_seed = r.u64();
  ck.rng_state = r.u64();
  ck.net.lif.lambda = r.f64();
  ck.net.lif.u_th = r.f64();
  ck.net.steps = r.u64();
  const std::size_t nsizes = r.u64();
  ck.net.layer_sizes.resize(nsizes);
  for (auto& s : ck.net.layer_sizes) s = r.u64();
  const std::size_t L = nsizes - 1;
  ck.net.kinds.resize(L);
  for (auto& k : ck.net.kinds) k = r.u8() == 1 ? NeuronKind::Dlif : NeuronKind::Lif;
  ck.net.dlif_a.resize(L);
  for (std::size_t l = 0; l < L; ++l) {
    const std::size_t rows = ck.net.layer_sizes[l + 1];
    const std::size_t cols = ck.net.layer_sizes[l];
    ck.net.weights.emplace_back(rows, cols, r.f64s(rows * cols));
    if (ck.net.kinds[l] == NeuronKind::Dlif) ck.net.dlif_a[l] = r.f64s(ck.net.steps);
  }
  const std::size_t classes = r.u64();
  ck.net.readout = Matrix(classes, ck.net.layer_sizes.back(),
                          r.f64s(classes * ck.net.layer_sizes.back()));
  ck.config_echo = r.str(r.u64());
  ck.net.validate();
  return ck;
}

}  // namespace snnlab
