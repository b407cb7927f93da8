#pragma once

#include <cstdint>

namespace ev {

/** Splittable pseudo-random stream. Every (seed, stream_id) pair selects an
 *  independent stream: the pair is hashed into a starting state and an odd
 *  per-stream increment, and outputs are produced by running the 64-bit
 *  finalizer mix over the resulting Weyl sequence (the SplittableRandom
 *  construction). Draws are reproducible across platforms and threads. */
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /** Uniform on [0, 1), 53 random bits. */
  double uniform();

  /** Standard normal via Box-Muller; consumes exactly two uniforms. */
  double normal();
  double normal(double mean, double sd);

  /** Exponential(rate) by inversion. */
  double exponential(double rate);

  /** Gamma(shape, rate) via the Marsaglia-Tsang squeeze method; shape < 1
   *  uses the shape+1 sample boosted by an extra uniform power. */
  double gamma(double shape, double rate);

 private:
  std::uint64_t state_;
  std::uint64_t increment_;
};

}  // namespace ev
