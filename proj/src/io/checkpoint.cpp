#include "io/checkpoint.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "core/spectral.hpp"

namespace hvbk {

using namespace spectral;

namespace {

constexpr char kMagic[4] = {'H', 'V', 'B', 'K'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 8 * 8 + 4;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_field(std::string& out, const SpectralField& f) {
  const PhysicalField p = inverse(f);
  for (double v : p.values()) put_f64(out, v);
}

class Reader {
 public:
  explicit Reader(const std::vector<unsigned char>& b) : b_(b) {}
  std::size_t remaining() const { return b_.size() - pos_; }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }

 private:
  const std::vector<unsigned char>& b_;
  std::size_t pos_ = 0;
};

SpectralField read_field(Reader& r, const GridPtr& g) {
  PhysicalField p(g);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = r.f64();
  return dealias(forward(p));
}

}  // namespace

void save_checkpoint(const std::string& path, const TwoFluidState& state, const PhysParams& params,
                     const PressurePair* pressures) {
  const Grid& g = state.grid();
  std::string out;
  out.reserve(kHeaderBytes + 4 * 8 * g.physical_size());
  out.append(kMagic, 4);
  put_u32(out, kCheckpointVersion);
  put_u32(out, std::uint32_t(g.n()));
  for (double v : {g.length(), state.t, params.rho_n, params.rho_s, params.nu_n, params.nu_s, params.b,
                   params.b_prime}) {
    put_f64(out, v);
  }
  put_u32(out, pressures ? 1u : 0u);
  put_field(out, state.omega_n);
  put_field(out, state.omega_s);
  if (pressures) {
    put_field(out, pressures->p_n);
    put_field(out, pressures->p_s);
  }

  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::io, "cannot write checkpoint " + tmp);
    f.write(out.data(), std::streamsize(out.size()));
    if (!f) throw Error(ErrorCode::io, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::io, "cannot rename checkpoint to " + path);
  }
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot open checkpoint " + path);
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::checkpoint_corrupt, path + ": not a checkpoint (bad magic)");
  }
  Reader r(bytes);
  r.u32();  // magic
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::checkpoint_version,
                path + ": unsupported checkpoint version " + std::to_string(version));
  }
  if (bytes.size() < kHeaderBytes) throw Error(ErrorCode::checkpoint_corrupt, path + ": short header");
  const std::uint32_t n = r.u32();
  double h[8];
  for (double& v : h) v = r.f64();
  const std::uint32_t flags = r.u32();
  for (double v : h) {
    if (!std::isfinite(v)) throw Error(ErrorCode::checkpoint_corrupt, path + ": non-finite header value");
  }
  if (n < 8 || n % 2 != 0 || n > (1u << 15) || !(h[0] > 0.0) || (flags & ~1u) != 0) {
    throw Error(ErrorCode::checkpoint_corrupt, path + ": invalid header");
  }
  const std::size_t fields = (flags & 1u) ? 4 : 2;
  const std::size_t payload = fields * 8 * std::size_t(n) * n;
  if (r.remaining() < payload) {
    throw Error(ErrorCode::checkpoint_truncated,
                path + ": payload has " + std::to_string(r.remaining()) + " bytes, expected " +
                    std::to_string(payload));
  }
  if (r.remaining() > payload) throw Error(ErrorCode::checkpoint_corrupt, path + ": trailing bytes");

  const GridPtr g = Grid::create(int(n), h[0]);
  Checkpoint c;
  c.params.rho_n = h[2];
  c.params.rho_s = h[3];
  c.params.nu_n = h[4];
  c.params.nu_s = h[5];
  c.params.b = h[6];
  c.params.b_prime = h[7];
  SpectralField wn = read_field(r, g);
  SpectralField ws = read_field(r, g);
  c.state = make_state(h[1], std::move(wn), std::move(ws));
  if (fields == 4) {
    SpectralField pn = read_field(r, g);
    SpectralField ps = read_field(r, g);
    c.pressures = PressurePair{std::move(pn), std::move(ps)};
  }
  return c;
}

}  // namespace hvbk
