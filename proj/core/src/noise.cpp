#include "fredholm/noise.hpp"

#include <cmath>
#include <numbers>

namespace fredholm {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> CounterRng::block(Domain domain, std::uint64_t step, std::uint64_t stream,
                                               std::uint32_t coord) const {
  // Counter words: step (64 bits), stream (32 bits), domain/coordinate packed with stream high bits.
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(step),
      static_cast<std::uint32_t>(step >> 32),
      static_cast<std::uint32_t>(stream),
      (static_cast<std::uint32_t>(domain) << 28) ^ (coord << 12) ^ static_cast<std::uint32_t>(stream >> 32),
  };
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  return philox4x32_10(ctr, key);
}

double CounterRng::uniform(Domain domain, std::uint64_t step, std::uint64_t stream, std::uint32_t coord) const {
  const auto b = block(domain, step, stream, coord);
  return to_open_unit(b[0], b[1]);
}

double CounterRng::normal(Domain domain, std::uint64_t step, std::uint64_t stream, std::uint32_t coord) const {
  const auto b = block(domain, step, stream, coord);
  const double u1 = to_open_unit(b[0], b[1]);
  const double u2 = to_open_unit(b[2], b[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double AggregatedNoise::normal(std::uint64_t step, std::uint64_t particle, std::uint32_t coord) const {
  // Coarse step n (1-based) covers fine steps (n-1)r+1 .. nr.
  double sum = 0.0;
  const std::uint64_t first = (step - 1) * ratio_ + 1;
  for (std::uint32_t j = 0; j < ratio_; ++j) {
    sum += fine_.normal(first + j, particle, coord);
  }
  return sum / std::sqrt(static_cast<double>(ratio_));
}

}  // namespace fredholm
