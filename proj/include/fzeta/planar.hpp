#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <string>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"
#include "fzeta/strings.hpp"

namespace fzeta {

struct Point2 {
  double x = 0, y = 0;
};

inline double dist_point_segment(Point2 p, Point2 a, Point2 b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double wx = p.x - a.x, wy = p.y - a.y;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = p.x - (a.x + t * vx), dy = p.y - (a.y + t * vy);
  return std::hypot(dx, dy);
}

// Distance from a point to an axis-aligned rectangle (as a closed set).
inline double dist_point_box(double px, double py, double x0, double y0,
                             double x1, double y1) {
  const double dx = std::max({x0 - px, 0.0, px - x1});
  const double dy = std::max({y0 - py, 0.0, py - y1});
  return std::hypot(dx, dy);
}

// Distance to the boundary of a rectangle from a point inside it.
inline double inner_dist_box(double px, double py, double x0, double y0,
                             double x1, double y1) {
  return std::min(std::min(px - x0, x1 - px), std::min(py - y0, y1 - py));
}

// ----------------------------------------------------------------------
// Exact distances to the depth-level prefractals. Each recursion step
// either lands in a removed generator piece (whose boundary belongs to
// the set, so the distance is exact) or descends into one of the scaled
// copies.
// ----------------------------------------------------------------------

// Sierpinski gasket in the unit equilateral triangle.
inline double gasket_distance(double px, double py, int depth) {
  static const double s3 = std::sqrt(3.0);
  // Outside the closed triangle: distance to it.
  const Point2 A{0, 0}, B{1, 0}, C{0.5, 0.5 * s3};
  auto side = [](Point2 p, Point2 a, Point2 b) {
    return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
  };
  Point2 p{px, py};
  if (side(p, A, B) < 0 || side(p, B, C) < 0 || side(p, C, A) < 0) {
    return std::min({dist_point_segment(p, A, B), dist_point_segment(p, B, C),
                     dist_point_segment(p, C, A)});
  }
  double scale = 1.0;
  double x = px, y = py;
  for (int d = 0; d < depth; ++d) {
    // Middle (inverted) triangle has vertices M_AB=(1/2,0), M_BC=(3/4,
    // sqrt3/4), M_CA=(1/4, sqrt3/4).
    const Point2 mab{0.5, 0.0}, mbc{0.75, 0.25 * s3}, mca{0.25, 0.25 * s3};
    Point2 q{x, y};
    const bool below = side(q, mca, mbc) <= 0;    // under the horizontal chord
    const bool left = side(q, mab, mca) >= 0;     // left of rising edge
    const bool right = side(q, mbc, mab) >= 0;    // right of falling edge
    if (below && left) {  // bottom-left copy
      x *= 2.0;
      y *= 2.0;
    } else if (below && right) {  // bottom-right copy
      x = 2.0 * (x - 0.5);
      y *= 2.0;
    } else if (!below) {  // top copy
      x = 2.0 * (x - 0.25);
      y = 2.0 * (y - 0.25 * s3);
    } else {
      // Inside the removed middle triangle: exact distance to its edges.
      double dloc = std::min({dist_point_segment(q, mab, mbc),
                              dist_point_segment(q, mbc, mca),
                              dist_point_segment(q, mca, mab)});
      return scale * dloc;
    }
    scale *= 0.5;
  }
  return 0.0;  // within a depth-level triangle of diameter scale
}

// 1/2-square fractal in the unit square: removes the two off-diagonal
// half squares at every level.
inline double half_square_distance(double px, double py, int depth) {
  if (px < 0 || px > 1 || py < 0 || py > 1)
    return dist_point_box(px, py, 0, 0, 1, 1);
  double scale = 1.0, x = px, y = py;
  for (int d = 0; d < depth; ++d) {
    if (x <= 0.5 && y >= 0.5) {  // removed upper-left square
      return scale * inner_dist_box(x, y, 0.0, 0.5, 0.5, 1.0);
    }
    if (x >= 0.5 && y <= 0.5) {  // removed lower-right square
      return scale * inner_dist_box(x, y, 0.5, 0.0, 1.0, 0.5);
    }
    if (x < 0.5) {  // lower-left copy
      x *= 2.0;
      y *= 2.0;
    } else {  // upper-right copy
      x = 2.0 * (x - 0.5);
      y = 2.0 * (y - 0.5);
    }
    scale *= 0.5;
  }
  return 0.0;
}

// 1/3-square fractal: keeps [0,1/3]^2 and [2/3,1]^2, removes the open
// hexagon between them.
inline double third_square_distance(double px, double py, int depth) {
  if (px < 0 || px > 1 || py < 0 || py > 1)
    return dist_point_box(px, py, 0, 0, 1, 1);
  const double third = 1.0 / 3.0, two3 = 2.0 / 3.0;
  double scale = 1.0, x = px, y = py;
  for (int d = 0; d < depth; ++d) {
    const bool in_low = (x <= third && y <= third);
    const bool in_high = (x >= two3 && y >= two3);
    if (!in_low && !in_high) {
      // In the removed hexagon: boundary pieces are the outer square
      // boundary and the two kept squares.
      double dout = std::min({x, y, 1.0 - x, 1.0 - y});
      double dlow = dist_point_box(x, y, 0.0, 0.0, third, third);
      double dhigh = dist_point_box(x, y, two3, two3, 1.0, 1.0);
      return scale * std::min({dout, dlow, dhigh});
    }
    if (in_low) {
      x *= 3.0;
      y *= 3.0;
    } else {
      x = 3.0 * (x - two3);
      y = 3.0 * (y - two3);
    }
    scale *= third;
  }
  return 0.0;
}

// Fractal nest: concentric circles of radii k^-a (plus the accumulation
// point at the origin).
inline double nest_distance(double px, double py, double a) {
  const double r = std::hypot(px, py);
  if (r >= 1.0) return r - 1.0;
  if (r <= 0.0) return 0.0;
  double best = r;  // accumulation at the origin
  const double kf = std::pow(r, -1.0 / a);
  const long k0 = std::max<long>(1, static_cast<long>(kf) - 2);
  for (long k = k0; k <= k0 + 4; ++k)
    best = std::min(best, std::abs(r - std::pow(static_cast<double>(k), -a)));
  best = std::min(best, std::abs(r - 1.0));
  return best;
}

// Unbounded geometric chirp: vertical segments x = j^{-1/beta},
// y in [0, j^{-alpha/beta}].
inline double chirp_distance(double px, double py, double alpha, double beta) {
  auto seg_dist = [&](long j) {
    const double xj = std::pow(static_cast<double>(j), -1.0 / beta);
    const double hj = std::pow(static_cast<double>(j), -alpha / beta);
    const double dy = py < 0 ? -py : (py > hj ? py - hj : 0.0);
    return std::hypot(px - xj, dy);
  };
  double best = std::numeric_limits<double>::infinity();
  if (px > 0) {
    const double jf = std::pow(px, -beta);
    const long j0 = std::max<long>(1, static_cast<long>(jf) - 3);
    for (long j = j0; j <= j0 + 6; ++j) best = std::min(best, seg_dist(j));
  }
  // Tall segments to the left may be nearer for high points.
  if (py > 1.0 && alpha < 0.0) {
    const double jv = std::pow(py, -beta / alpha);
    const long j1 = std::max<long>(1, static_cast<long>(jv) - 2);
    for (long j = j1; j <= j1 + 4; ++j) best = std::min(best, seg_dist(j));
  }
  best = std::min(best, seg_dist(1));
  return best;
}

// Planar recipe: a named prefractal geometry with a membership test for
// its Omega and exact point distances.
struct PlanarRecipe {
  std::string shape;  // segment | gasket | half_square | third_square | nest | chirp
  double a = 1.0;     // nest parameter
  double alpha = -0.5, beta = 1.0;
  int depth = 8;

  double distance(double x, double y) const {
    if (shape == "segment") return dist_point_segment({x, y}, {0, 0}, {1, 0});
    if (shape == "gasket") return gasket_distance(x, y, depth);
    if (shape == "half_square") return half_square_distance(x, y, depth);
    if (shape == "third_square") return third_square_distance(x, y, depth);
    if (shape == "nest") return nest_distance(x, y, a);
    if (shape == "chirp") return chirp_distance(x, y, alpha, beta);
    throw UsageError("unknown-entry", "no planar recipe for '" + shape + "'");
  }

  // Omega membership for the RFD variants; the set variants measure the
  // whole box.
  bool in_omega(double x, double y) const {
    if (shape == "half_square" || shape == "third_square")
      return x > 0 && x < 1 && y > 0 && y < 1;
    if (shape == "nest") return x * x + y * y < 1.0;
    if (shape == "chirp") {
      if (x <= 0 || x >= 1 || y <= 0) return false;
      const double jf = std::pow(x, -beta);
      const long j = std::max<long>(1, static_cast<long>(std::floor(jf)));
      return y < std::pow(static_cast<double>(j), -alpha / beta);
    }
    return true;
  }
};

// Distance field over a box with cell-center sampling; area queries use
// a linear transition band of one cell width around the level set, and
// the reported bound is the perimeter-band heuristic.
class PixelField {
 public:
  PixelField(const PlanarRecipe& recipe, double x0, double y0, double x1,
             double y1, int resolution)
      : h_(1.0 / resolution) {
    if (resolution < 4) throw UsageError("bad-argument", "resolution too small");
    const long nx = std::lround((x1 - x0) * resolution);
    const long ny = std::lround((y1 - y0) * resolution);
    // Row bands evaluated in parallel, concatenated in fixed band order
    // (the subsequent sort makes the result order-independent anyway).
    const unsigned n_bands =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::vector<double>> bands(n_bands);
    auto run_band = [&](unsigned b) {
      std::vector<double>& out = bands[b];
      for (long iy = b; iy < ny; iy += n_bands) {
        const double y = y0 + (iy + 0.5) * h_;
        for (long ix = 0; ix < nx; ++ix) {
          const double x = x0 + (ix + 0.5) * h_;
          if (!recipe.in_omega(x, y)) continue;
          out.push_back(recipe.distance(x, y));
        }
      }
    };
    std::vector<std::thread> workers;
    for (unsigned b = 1; b < n_bands; ++b) workers.emplace_back(run_band, b);
    run_band(0);
    for (auto& w : workers) w.join();
    std::size_t total = 0;
    for (const auto& b : bands) total += b.size();
    dists_.reserve(total);
    for (const auto& b : bands)
      dists_.insert(dists_.end(), b.begin(), b.end());
    std::sort(dists_.begin(), dists_.end());
    prefix_.resize(dists_.size() + 1, 0.0);
    for (std::size_t i = 0; i < dists_.size(); ++i)
      prefix_[i + 1] = prefix_[i] + dists_[i];
  }

  struct Area {
    double value = 0.0;
    double bound = 0.0;
  };

  // |{x in Omega : d(x, A) < t}| with subcell linear coverage.
  Area area(double t) const {
    const double lo = t - 0.5 * h_, hi = t + 0.5 * h_;
    const auto i0 = std::lower_bound(dists_.begin(), dists_.end(), lo) -
                    dists_.begin();
    const auto i1 = std::lower_bound(dists_.begin(), dists_.end(), hi) -
                    dists_.begin();
    const double full = static_cast<double>(i0);
    const double band = static_cast<double>(i1 - i0);
    const double band_d = prefix_[i1] - prefix_[i0];
    // coverage of band cells: (t - d)/h + 1/2 each
    const double partial = band * (t / h_ + 0.5) - band_d / h_;
    Area out;
    out.value = h_ * h_ * (full + partial);
    out.bound = 0.25 * h_ * h_ * std::max(band, 1.0);
    return out;
  }

  double cell_size() const { return h_; }

 private:
  double h_;
  std::vector<double> dists_;
  std::vector<double> prefix_;
};

namespace detail {

inline std::shared_ptr<PixelField> pixel_field_cached(const PlanarRecipe& r,
                                                      double x0, double y0,
                                                      double x1, double y1,
                                                      int resolution) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<PixelField>> cache;
  char key[256];
  std::snprintf(key, sizeof key, "%s|%.17g|%.17g|%.17g|%d|%.6g|%.6g|%.6g|%.6g",
                r.shape.c_str(), r.a, r.alpha, r.beta, r.depth, x0, y0, x1, y1);
  std::string k = key + std::string("|") + std::to_string(resolution);
  std::scoped_lock lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<PixelField>(r, x0, y0, x1, y1, resolution);
  cache.emplace(k, f);
  return f;
}

}  // namespace detail

// Default measurement box per recipe (set variants include the outer
// collar, RFD variants clip to Omega).
inline void pixel_box(const PlanarRecipe& r, double margin, double& x0,
                      double& y0, double& x1, double& y1) {
  if (r.shape == "gasket" || r.shape == "segment") {
    x0 = -margin;
    y0 = -margin;
    x1 = 1.0 + margin;
    y1 = (r.shape == "gasket" ? 0.5 * std::sqrt(3.0) : 0.0) + margin;
  } else if (r.shape == "nest") {
    x0 = y0 = -1.0;
    x1 = y1 = 1.0;
  } else {
    x0 = y0 = 0.0;
    x1 = y1 = 1.0;
  }
}

struct PixelResult {
  double value = 0.0;
  double bound = 0.0;
};

// Grid estimate of |A_t ∩ Omega| with the perimeter-band error bound.
inline PixelResult pixel_tube_volume(const PlanarRecipe& recipe, double t,
                                     int depth, int resolution,
                                     double margin = 0.3) {
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  if (resolution < std::ceil(8.0 / t) - 1e-9)
    throw UsageError("resolution-too-coarse",
                     "need at least 8/t cells per unit");
  PlanarRecipe r = recipe;
  r.depth = depth;
  double x0, y0, x1, y1;
  pixel_box(r, margin, x0, y0, x1, y1);
  auto field = detail::pixel_field_cached(r, x0, y0, x1, y1, resolution);
  auto a = field->area(t);
  if (a.bound > 0.05 * std::max(a.value, 1e-300))
    throw NumericError("resolution-too-coarse",
                       "pixel error bound exceeds 5% of the value");
  return {a.value, a.bound};
}

// Spec'd prefractal depth for self-similar recipes.
inline int prefractal_depth(double t, double r_max) {
  return static_cast<int>(std::ceil(std::log(1.0 / t) / std::log(1.0 / r_max))) + 2;
}

// ----------------------------------------------------------------------
// 3-carpet voxel spot check (coarse, single t).
// ----------------------------------------------------------------------

// Exact distance to the 3-carpet prefractal by recursion into subcubes.
inline double carpet3_distance(double px, double py, double pz, int depth) {
  auto outside = [](double v) { return v < 0.0 || v > 1.0; };
  if (outside(px) || outside(py) || outside(pz)) {
    const double dx = std::max({-px, 0.0, px - 1.0});
    const double dy = std::max({-py, 0.0, py - 1.0});
    const double dz = std::max({-pz, 0.0, pz - 1.0});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  double scale = 1.0, x = px, y = py, z = pz;
  for (int d = 0; d < depth; ++d) {
    const int ix = std::min(2, static_cast<int>(x * 3.0));
    const int iy = std::min(2, static_cast<int>(y * 3.0));
    const int iz = std::min(2, static_cast<int>(z * 3.0));
    if (ix == 1 && iy == 1 && iz == 1) {
      const double lx = x * 3.0 - 1.0, ly = y * 3.0 - 1.0, lz = z * 3.0 - 1.0;
      const double inner =
          std::min({lx, 1.0 - lx, ly, 1.0 - ly, lz, 1.0 - lz});
      return scale / 3.0 * inner;
    }
    x = x * 3.0 - ix;
    y = y * 3.0 - iy;
    z = z * 3.0 - iz;
    scale /= 3.0;
  }
  return 0.0;
}

// |A_t| of the 3-carpet measured on a voxel grid (single t).
inline PixelResult voxel_three_carpet_volume(double t, int resolution,
                                             int depth = 4,
                                             double margin = 0.3) {
  const double h = (1.0 + 2.0 * margin) / resolution;
  double full = 0.0, partial = 0.0, band = 0.0;
  for (int iz = 0; iz < resolution; ++iz) {
    const double z = -margin + (iz + 0.5) * h;
    for (int iy = 0; iy < resolution; ++iy) {
      const double y = -margin + (iy + 0.5) * h;
      for (int ix = 0; ix < resolution; ++ix) {
        const double x = -margin + (ix + 0.5) * h;
        const double d = carpet3_distance(x, y, z, depth);
        if (d < t - 0.5 * h) {
          full += 1.0;
        } else if (d < t + 0.5 * h) {
          partial += (t - d) / h + 0.5;
          band += 1.0;
        }
      }
    }
  }
  PixelResult out;
  out.value = h * h * h * (full + partial);
  out.bound = 0.25 * h * h * h * std::max(band, 1.0);
  return out;
}

}  // namespace fzeta
