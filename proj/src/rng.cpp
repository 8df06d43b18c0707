#include "cvarough/rng.hpp"

#include <cmath>
#include <numbers>

namespace cvarough {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMul0, ctr[0], lo0, hi0);
    mulhilo(kMul1, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0u, substream, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

void NormalStream::refill() {
  block_ = philox4x32(ctr_, key_);
  if (++ctr_[0] == 0) ++ctr_[1];
  used_ = 0;
}

double NormalStream::uniform() {
  if (used_ == 4) refill();
  // midpoint of one of 2^32 cells: never 0 or 1
  return (static_cast<double>(block_[used_++]) + 0.5) * 0x1.0p-32;
}

namespace {

inline void box_muller(double u1, double u2, double& z1, double& z2) {
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  z1 = r * std::cos(a);
  z2 = r * std::sin(a);
}

}  // namespace

double NormalStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  double z1, z2;
  box_muller(u1, u2, z1, z2);
  spare_ = z2;
  has_spare_ = true;
  return z1;
}

void NormalStream::fill_normal(double* out, std::size_t n) {
  std::size_t i = 0;
  while (i < n && (has_spare_ || used_ != 4)) out[i++] = normal();
  // Whole blocks give two Box-Muller pairs; same sequence as normal().
  constexpr double kScale = 0x1.0p-32;
  for (; i + 3 < n; i += 4) {
    const PhiloxCounter b = philox4x32(ctr_, key_);
    if (++ctr_[0] == 0) ++ctr_[1];
    box_muller((b[0] + 0.5) * kScale, (b[1] + 0.5) * kScale, out[i], out[i + 1]);
    box_muller((b[2] + 0.5) * kScale, (b[3] + 0.5) * kScale, out[i + 2], out[i + 3]);
  }
  for (; i < n; ++i) out[i] = normal();
}

}  // namespace cvarough
