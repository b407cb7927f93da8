#include "ev/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ev {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Stafford's mix13 variant of the splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Secondary mixer used for deriving stream increments.
std::uint64_t mix64_variant(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  state_ = mix64(seed + kGolden * stream_id);
  // Odd increment with a balanced bit pattern, as in SplittableRandom.
  std::uint64_t g = mix64_variant(seed ^ mix64(stream_id + kGolden)) | 1ULL;
  if (std::popcount(g ^ (g >> 1)) < 24) {
    g ^= 0xaaaaaaaaaaaaaaaaULL;
  }
  increment_ = g;
}

std::uint64_t RngStream::next_u64() {
  state_ += increment_;
  return mix64(state_);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  // Box-Muller, cosine branch only; u1 shifted into (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::normal(double mean, double sd) {
  return mean + sd * normal();
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) {
    throw std::domain_error("RngStream::exponential: rate must be positive");
  }
  return -std::log(1.0 - uniform()) / rate;
}

double RngStream::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("RngStream::gamma: shape and rate must be positive");
  }
  if (shape < 1.0) {
    // Boost a shape+1 draw down with a uniform power.
    const double u = 1.0 - uniform();
    return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze method.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) {
      return d * v / rate;
    }
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return d * v / rate;
    }
  }
}

}  // namespace ev
