#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"

namespace fzeta {

struct McConfig {
  long samples = 100000;
  std::uint64_t seed = 1;
  long chunk = 4096;  // must be a multiple of the stratum count (256)

  void check() const {
    if (samples < 10000)
      throw UsageError("bad-argument", "need at least 1e4 samples");
    if (chunk <= 0 || chunk % 256 != 0)
      throw UsageError("bad-argument", "chunk must be a positive multiple of 256");
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0,1) from a counter; the stream depends only on
// (seed, counter), never on chunking or thread layout.
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter,
                              std::uint64_t lane) {
  std::uint64_t z = splitmix64(seed ^ splitmix64(counter * 2654435761ULL + lane));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct McRegion {
  int dim = 2;
  double lo[2] = {0.0, 0.0};
  double hi[2] = {1.0, 1.0};
  std::function<bool(double, double)> inside;  // optional Omega predicate

  double box_volume() const {
    double v = hi[0] - lo[0];
    if (dim == 2) v *= hi[1] - lo[1];
    return v;
  }
};

struct McResult {
  Cplx value{};
  double se_re = 0.0;
  double se_im = 0.0;
  long samples = 0;
};

// Stratified Monte Carlo estimate of \int_Omega d(x, A)^{s-N} dx.
// Samples are indexed by a global counter: stratum = i mod 256, jitter
// from the counter RNG, so any chunking reproduces the same stream.
// Points with d = 0 contribute 0 (the set itself is null for s in the
// integrable range). The standard error comes from chunk means.
inline McResult mc_distance_zeta(
    const std::function<double(double, double)>& distance, const McRegion& region,
    Cplx s, int ambient_dim, double upper_dimension, const McConfig& cfg) {
  cfg.check();
  if (s.real() <= upper_dimension + 0.1 - 1e-12)
    throw NumericError("nonintegrable-exponent",
                       "mc_distance_zeta needs Re s > D + 0.1");
  const int g = 16;  // strata per axis (dim 2) or 256 strata (dim 1)
  const long n_strata = 256;
  const Cplx expo = s - Cplx(ambient_dim, 0.0);
  const double boxvol = region.box_volume();

  // The schedule is rounded up to whole chunks so every chunk carries the
  // same weight and any chunk layout reproduces the same stream.
  const long n_chunks = (cfg.samples + cfg.chunk - 1) / cfg.chunk;
  std::vector<Cplx> chunk_means(n_chunks);
  long total = 0;
  for (long c = 0; c < n_chunks; ++c) {
    const long begin = c * cfg.chunk;
    const long end = begin + cfg.chunk;
    Cplx acc{};
    for (long i = begin; i < end; ++i) {
      const long stratum = i % n_strata;
      const double u = detail::counter_uniform(cfg.seed, i, 0);
      const double v = detail::counter_uniform(cfg.seed, i, 1);
      double x, y = 0.0;
      if (region.dim == 1) {
        const double cell = (region.hi[0] - region.lo[0]) / n_strata;
        x = region.lo[0] + (stratum + u) * cell;
      } else {
        const int sx = static_cast<int>(stratum % g), sy = static_cast<int>(stratum / g);
        x = region.lo[0] + (sx + u) * (region.hi[0] - region.lo[0]) / g;
        y = region.lo[1] + (sy + v) * (region.hi[1] - region.lo[1]) / g;
      }
      if (region.inside && !region.inside(x, y)) continue;
      const double d = distance(x, y);
      if (!(d > 0.0)) continue;
      acc += std::exp(expo * std::log(d));
    }
    chunk_means[c] = acc / static_cast<double>(end - begin);
    total += end - begin;
  }

  Cplx mean{};
  for (const Cplx& m : chunk_means) mean += m;
  mean /= static_cast<double>(n_chunks);
  double vr = 0.0, vi = 0.0;
  for (const Cplx& m : chunk_means) {
    vr += (m.real() - mean.real()) * (m.real() - mean.real());
    vi += (m.imag() - mean.imag()) * (m.imag() - mean.imag());
  }
  const double denom = std::max<long>(1, n_chunks - 1) * n_chunks;
  McResult out;
  out.value = boxvol * mean;
  out.se_re = boxvol * std::sqrt(vr / denom);
  out.se_im = boxvol * std::sqrt(vi / denom);
  out.samples = total;
  return out;
}

}  // namespace fzeta
