#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"

namespace fzeta {

// Laurent data of f about a point: principal part c_{-order}..c_{-1}
// plus the regular coefficients c_0..c_max.
struct LaurentData {
  Cplx center{};
  double radius = 0.0;
  int order = 0;                    // detected pole order (0 = regular)
  std::vector<Cplx> principal;      // c_{-order} first
  std::vector<Cplx> regular;        // c_0, c_1, ...

  Cplx residue() const { return principal.empty() ? Cplx{} : principal.back(); }
  Cplx coeff(int q) const {
    // q-th Laurent coefficient, q may be negative.
    if (q >= 0)
      return static_cast<std::size_t>(q) < regular.size() ? regular[q] : Cplx{};
    int idx = q + order;
    return idx >= 0 && static_cast<std::size_t>(idx) < principal.size()
               ? principal[idx]
               : Cplx{};
  }

  ComplexDimension as_dimension() const {
    if (order <= 0)
      throw NumericError("not-a-pole", "Laurent data describes a regular point");
    return ComplexDimension{center, order, principal};
  }
};

struct ContourOptions {
  int initial_nodes = 256;
  int max_nodes = 8192;
  double tol = 1e-10;       // node-doubling agreement target
  double pole_tol = 1e-9;   // |c_{-m}| threshold for order detection
};

// Laurent coefficients c_q = (2 pi i)^-1 \oint f(s) (s - w)^{-q-1} ds by
// the trapezoid rule on the circle |s - w| = radius, doubling the node
// count until successive estimates agree.
inline LaurentData contour_laurent(const std::function<Cplx(Cplx)>& f,
                                   Cplx center, double radius, int max_order,
                                   int max_regular = 4,
                                   ContourOptions opt = {}) {
  if (!(radius > 0.0)) throw UsageError("bad-radius", "contour radius must be positive");
  if (max_order < 0) throw UsageError("bad-argument", "max_order must be >= 0");

  const int qmin = -max_order, qmax = max_regular;
  const int ncoef = qmax - qmin + 1;

  // Work in the scaled basis chat_q = c_q r^q (plain Fourier
  // coefficients of f on the circle, all of comparable size); divide by
  // r^q only at the end.
  auto compute = [&](int nodes) {
    std::vector<Cplx> c(ncoef, Cplx{});
    for (int j = 0; j < nodes; ++j) {
      const double theta = 2.0 * kPi * j / nodes;
      const Cplx e(std::cos(theta), std::sin(theta));
      const Cplx fs = f(center + radius * e);
      require_finite(fs, "contour integrand");
      for (int q = qmin; q <= qmax; ++q)
        c[q - qmin] += fs * std::polar(1.0, -q * theta);
    }
    for (auto& v : c) v /= static_cast<double>(nodes);
    return c;
  };

  int nodes = opt.initial_nodes;
  std::vector<Cplx> prev = compute(nodes);
  std::vector<Cplx> cur;
  for (;;) {
    nodes *= 2;
    cur = compute(nodes);
    double scale = 0.0;
    for (const auto& v : cur) scale = std::max(scale, std::abs(v));
    double diff = 0.0;
    for (int i = 0; i < ncoef; ++i) diff = std::max(diff, std::abs(cur[i] - prev[i]));
    if (diff <= opt.tol * std::max(scale, 1.0)) break;
    if (nodes >= opt.max_nodes)
      throw NumericError("quadrature-nonconvergence",
                         "contour coefficients did not stabilize under node doubling");
    prev = cur;
  }

  double scale = 0.0;
  for (const auto& v : cur) scale = std::max(scale, std::abs(v));
  int order = 0;
  for (int m = max_order; m >= 1; --m) {
    if (std::abs(cur[-m - qmin]) > opt.pole_tol * std::max(scale, 1.0)) {
      order = m;
      break;
    }
  }

  LaurentData out;
  out.center = center;
  out.radius = radius;
  out.order = order;
  for (int q = -order; q <= -1; ++q)
    out.principal.push_back(cur[q - qmin] * std::pow(radius, -q));
  for (int q = 0; q <= qmax; ++q)
    out.regular.push_back(cur[q - qmin] * std::pow(radius, -q));
  return out;
}

// Reconstruct f near the center from Laurent data (used by tests).
inline Cplx laurent_eval(const LaurentData& ld, Cplx s) {
  const Cplx u = s - ld.center;
  Cplx acc{};
  for (int m = ld.order; m >= 1; --m)
    acc += ld.principal[ld.order - m] * std::pow(u, -m);
  for (std::size_t k = 0; k < ld.regular.size(); ++k)
    acc += ld.regular[k] * std::pow(u, static_cast<double>(k));
  return acc;
}

}  // namespace fzeta
