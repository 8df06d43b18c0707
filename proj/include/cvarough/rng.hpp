#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace cvarough {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function (Salmon et al., SC'11).
PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key);

/// Stream of uniforms and standard normals addressed by (seed, stream,
/// substream). Draw i of a stream depends only on the address and i, so
/// chunks of a simulation can run in any order on any thread.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0);

  /// Uniform on the open interval (0, 1), 32 random bits.
  double uniform();
  /// Standard normal by Box-Muller.
  double normal();
  void fill_normal(double* out, std::size_t n);

 private:
  void refill();

  PhiloxKey key_;
  PhiloxCounter ctr_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cvarough
