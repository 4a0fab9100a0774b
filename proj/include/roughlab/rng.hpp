#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstddef>

namespace roughlab {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Philox 4x32, 10 rounds. Counter-based: output is a pure function of
// (counter, key), so streams can be evaluated at any index from any thread.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> c,
                                            std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
           static_cast<std::uint32_t>(p0)};
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    return c;
  }
};

// Stream identifiers: chained splitmix over (purpose, a, b) acts as a PRF, so
// distinct (seed, purpose, path, component) tuples get independent streams.
enum class StreamPurpose : std::uint64_t {
  kPathNoise = 1,
  kLimitNoise = 2,
  kScratch = 3,
};

inline std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(0x243F6A8885A308D3ull ^ static_cast<std::uint64_t>(purpose));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

// Indexed standard normals via Box-Muller on Philox output. normal(i) depends
// only on (seed, stream, i); fill() walks blocks sequentially, two values each.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream) : stream_(stream) {
    const std::uint64_t k = splitmix64(seed ^ 0x452821E638D01377ull);
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  }

  double normal(std::uint64_t i) const {
    double z[2];
    pair(i >> 1, z);
    return z[i & 1];
  }

  void fill(double* out, std::size_t count, std::uint64_t first = 0) const {
    std::size_t w = 0;
    std::uint64_t i = first;
    if (i & 1) {
      out[w++] = normal(i++);
    }
    double z[2];
    while (w + 2 <= count) {
      pair(i >> 1, z);
      out[w++] = z[0];
      out[w++] = z[1];
      i += 2;
    }
    if (w < count) out[w] = normal(i);
  }

 private:
  void pair(std::uint64_t blk, double z[2]) const {
    const std::array<std::uint32_t, 4> c = {
        static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    const auto r = Philox4x32::block(c, key_);
    const std::uint64_t a = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
    // u1 in (0,1] keeps the log finite; u2 in [0,1).
    const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925286766559 * u2;
    z[0] = rad * std::cos(ang);
    z[1] = rad * std::sin(ang);
  }

  std::uint64_t stream_;
  std::array<std::uint32_t, 2> key_;
};

}  // namespace roughlab
