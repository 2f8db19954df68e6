#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/contour.hpp"
#include "fzeta/errors.hpp"

namespace fzeta {

namespace detail {

// Winding number of f along the rectangle boundary by adaptive phase
// tracking; equals #zeros - #poles inside. Successive boundary samples
// are refined until the phase step stays below pi/2.
inline int winding_number(const std::function<Cplx(Cplx)>& f,
                          const Rectangle& rect, double boundary_tol) {
  std::vector<Cplx> corners = {
      {rect.re_min, rect.im_min},
      {rect.re_max, rect.im_min},
      {rect.re_max, rect.im_max},
      {rect.re_min, rect.im_max},
      {rect.re_min, rect.im_min}};

  double total = 0.0;
  double fscale = 0.0;
  for (int edge = 0; edge < 4; ++edge) {
    const Cplx a = corners[edge], b = corners[edge + 1];
    const double len = std::abs(b - a);
    int n = std::max(16, static_cast<int>(len * 8.0));
    struct Node {
      double t;
      Cplx fval;
    };
    std::vector<Node> nodes;
    nodes.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
      double t = static_cast<double>(i) / n;
      nodes.push_back({t, f(a + t * (b - a))});
    }
    // Insert midpoints until each step rotates less than pi/2.
    for (std::size_t i = 0; i + 1 < nodes.size();) {
      const Cplx z0 = nodes[i].fval, z1 = nodes[i + 1].fval;
      fscale = std::max(fscale, std::abs(z0));
      if (std::abs(z0) < boundary_tol || std::abs(z1) < boundary_tol)
        throw NumericError("boundary-pole",
                           "zero or pole too close to the region boundary");
      const double dphi = std::abs(std::arg(z1 / z0));
      if (dphi > 0.5 * kPi && nodes.size() < 2'000'000) {
        double tm = 0.5 * (nodes[i].t + nodes[i + 1].t);
        nodes.insert(nodes.begin() + i + 1, {tm, f(a + tm * (b - a))});
        continue;
      }
      total += std::arg(z1 / z0);
      ++i;
    }
  }
  const double turns = total / (2.0 * kPi);
  const int w = static_cast<int>(std::lround(turns));
  if (std::abs(turns - w) > 0.25)
    throw NumericError("count-mismatch", "winding number far from an integer");
  return w;
}

}  // namespace detail

struct MoranOptions {
  double dedupe_tol = 1e-9;
  double newton_tol = 1e-13;
  double boundary_tol = 1e-8;
  int max_newton_iters = 60;
};

// All solutions of sum_j r_j^s = 1 inside the rectangle, each refined by
// Newton iteration, equipped with the principal part of 1/(1 - sum r_j^s),
// and checked in total against the argument-principle count.
inline std::vector<ComplexDimension> find_moran_roots(
    const std::vector<double>& ratios, const Rectangle& region,
    MoranOptions opt = {}) {
  if (ratios.empty()) throw UsageError("bad-ratios", "empty ratio list");
  for (double r : ratios)
    if (!(r > 0.0 && r < 1.0))
      throw UsageError("bad-ratios", "ratios must lie in (0,1)");

  auto f = [&](Cplx s) {
    Cplx acc = 1.0;
    for (double r : ratios) acc -= std::pow(Cplx(r, 0), s);
    return acc;
  };
  auto fp = [&](Cplx s) {
    Cplx acc = 0.0;
    for (double r : ratios) acc -= std::log(r) * std::pow(Cplx(r, 0), s);
    return acc;
  };

  auto newton = [&](Cplx s0) -> std::optional<Cplx> {
    Cplx s = s0;
    for (int it = 0; it < opt.max_newton_iters; ++it) {
      Cplx fv = f(s);
      Cplx dv = fp(s);
      if (std::abs(dv) < 1e-300) return std::nullopt;
      Cplx step = fv / dv;
      s -= step;
      // Relative tolerance: the attainable accuracy scales with |s|
      // through the argument reduction inside pow.
      if (std::abs(step) < opt.newton_tol * (1.0 + std::abs(s))) return s;
    }
    return std::nullopt;
  };

  std::vector<Cplx> roots;
  auto push_root = [&](Cplx s) {
    if (!region.contains(s)) return;
    for (const Cplx& r : roots)
      if (std::abs(r - s) < opt.dedupe_tol) return;
    roots.push_back(s);
  };

  // Real Moran root by bisection on g(x) = sum r^x - 1 (strictly
  // decreasing), then Newton seeds along Re s = D0 at the lattice spacing
  // 2 pi / log(1/r_min).
  double rmin = *std::min_element(ratios.begin(), ratios.end());
  auto greal = [&](double x) {
    double acc = -1.0;
    for (double r : ratios) acc += std::pow(r, x);
    return acc;
  };
  double lo = -64.0, hi = 64.0;
  if (greal(lo) > 0.0 && greal(hi) < 0.0) {
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (greal(mid) > 0.0 ? lo : hi) = mid;
    }
  }
  const double d0 = 0.5 * (lo + hi);
  const double spacing = 2.0 * kPi / std::log(1.0 / rmin);
  const int kmin = static_cast<int>(std::floor(region.im_min / spacing)) - 2;
  const int kmax = static_cast<int>(std::ceil(region.im_max / spacing)) + 2;
  for (int k = kmin; k <= kmax; ++k) {
    if (auto s = newton(Cplx(d0, k * spacing))) push_root(*s);
  }

  // Recursive subdivision driven by the argument principle picks up any
  // roots the lattice seeding missed (secondary rows, clustered roots).
  const int total_expected = detail::winding_number(f, region, opt.boundary_tol);
  std::function<void(const Rectangle&, int)> refine = [&](const Rectangle& rect,
                                                          int depth) {
    int found_here = 0;
    for (const Cplx& r : roots)
      if (rect.contains(r)) ++found_here;
    int count;
    try {
      count = detail::winding_number(f, rect, opt.boundary_tol);
    } catch (const NumericError&) {
      // A root sits on this cut line; shift the split instead.
      count = -1;
    }
    if (count == found_here) return;
    if (depth > 60)
      throw NumericError("count-mismatch", "root subdivision failed to converge");
    if (count >= 0 && count >= 1 && rect.width() < 1e-6 && rect.height() < 1e-6) {
      // Tiny box with a confirmed root: polish from the center.
      if (auto s = newton(Cplx(0.5 * (rect.re_min + rect.re_max),
                               0.5 * (rect.im_min + rect.im_max)))) {
        push_root(*s);
        return;
      }
    }
    const double frac = (depth % 7 == 6) ? 0.47 : 0.5;  // dodge cut-line roots
    if (rect.height() >= rect.width()) {
      double mid = rect.im_min + frac * rect.height();
      refine(Rectangle(rect.re_min, rect.re_max, rect.im_min, mid), depth + 1);
      refine(Rectangle(rect.re_min, rect.re_max, mid, rect.im_max), depth + 1);
    } else {
      double mid = rect.re_min + frac * rect.width();
      refine(Rectangle(rect.re_min, mid, rect.im_min, rect.im_max), depth + 1);
      refine(Rectangle(mid, rect.re_max, rect.im_min, rect.im_max), depth + 1);
    }
  };
  if (total_expected != static_cast<int>(roots.size())) refine(region, 0);

  if (total_expected != static_cast<int>(roots.size()))
    throw NumericError("count-mismatch",
                       "refined root count disagrees with the winding number");

  std::sort(roots.begin(), roots.end(), [](const Cplx& a, const Cplx& b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
  });

  // Attach order and the principal part of 1/f at each root.
  std::vector<ComplexDimension> out;
  out.reserve(roots.size());
  auto inv = [&](Cplx s) { return 1.0 / f(s); };
  for (const Cplx& r : roots) {
    double nearest = 1e300;
    for (const Cplx& q : roots)
      if (std::abs(q - r) > 1e-12) nearest = std::min(nearest, std::abs(q - r));
    nearest = std::min(nearest, spacing);
    LaurentData ld = contour_laurent(inv, r, 0.4 * nearest, 4, 2);
    if (ld.order < 1)
      throw NumericError("count-mismatch", "refined root is not a pole of 1/f");
    out.push_back(ld.as_dimension());
  }
  return out;
}

}  // namespace fzeta
