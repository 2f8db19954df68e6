#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"
#include "fzeta/handle.hpp"
#include "fzeta/numerics.hpp"
#include "fzeta/oracles.hpp"

namespace fzeta {

namespace detail {

// (b^e - a^e)/e for 0 < a < b, stable as e -> 0.
inline Cplx power_integral(double a, double b, Cplx e) {
  const double lr = std::log(b / a);
  const Cplx el = e * lr;
  if (std::abs(el) < 1e-4) {
    // a^e * lr * (exp(el) - 1)/el expanded
    return std::exp(e * std::log(a)) * lr * (1.0 + el / 2.0 + el * el / 6.0);
  }
  return (std::exp(e * std::log(b)) - std::exp(e * std::log(a))) / e;
}

// Exact integral of one polynomial piece of V against t^{s-N-1}.
// The piece polynomial is fitted in u = t/b from degree+1 samples.
inline Cplx integrate_piece(const TubeOracle& oracle, double a, double b,
                            Cplx s, int N) {
  const int d = oracle.piece_degree;
  std::vector<double> ts(d + 1), vs(d + 1);
  for (int i = 0; i <= d; ++i) {
    // Chebyshev points keep the Vandermonde solve well conditioned.
    const double u = 0.5 - 0.5 * std::cos(kPi * (i + 0.5) / (d + 1));
    ts[i] = a + (b - a) * u;
    vs[i] = oracle(ts[i]);
  }
  // Solve for coefficients of V(t) = sum c_m (t/b)^m.
  const int n = d + 1;
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
  for (int r = 0; r < n; ++r) {
    double u = ts[r] / b, p = 1.0;
    for (int cidx = 0; cidx < n; ++cidx) {
      m[r][cidx] = p;
      p *= u;
    }
    m[r][n] = vs[r];
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[col][col] == 0.0) continue;
      double f = m[r][col] / m[col][col];
      for (int cidx = col; cidx <= n; ++cidx) m[r][cidx] -= f * m[col][cidx];
    }
  }
  Cplx acc{};
  for (int mm = 0; mm < n; ++mm) {
    const double coef = m[mm][n] / m[mm][mm];
    if (coef == 0.0) continue;
    acc += coef * std::pow(b, -mm) * power_integral(a, b, s - Cplx(N - mm, 0.0));
  }
  return acc;
}

}  // namespace detail

// Tube zeta integral \int_0^delta t^{s-N-1} V(t) dt. Piecewise-exact
// between the oracle's knots; the singular head below the smallest
// retained knot uses the local power-law model of V.
inline Cplx numeric_tube_zeta(const TubeOracle& oracle, Cplx s, double delta,
                              int N, double rel_tol = 1e-10) {
  if (!(delta > 0.0)) throw UsageError("bad-argument", "delta must be positive");
  const double margin = s.real() - N + oracle.head_exponent;
  if (margin < 0.02)
    throw NumericError("nonconvergence",
                       "tube zeta integral not convergent at this s");

  // Saturated part in closed form.
  Cplx acc{};
  double top = delta;
  if (delta > oracle.t_sat) {
    acc += oracle.sat_value * detail::power_integral(oracle.t_sat, delta,
                                                     s - Cplx(N, 0.0));
    top = oracle.t_sat;
  }

  // Pick the head cutoff so the modeled head is far below tolerance,
  // then also add the modeled head itself.
  double head = top;
  double head_scale = 1.0;
  for (int it = 0; it < 60; ++it) {
    head /= 8.0;
    const double vh = oracle(head);
    head_scale = vh * std::pow(head, s.real() - N) / margin;
    if (head_scale < rel_tol * std::max(1.0, std::abs(acc)) || head < 1e-280)
      break;
  }

  if (oracle.knots) {
    std::vector<double> cuts = oracle.knots(head, top);
    cuts.push_back(top);
    double lo = head;
    for (double cut : cuts) {
      if (cut <= lo) continue;
      acc += detail::integrate_piece(oracle, lo, cut, s, N);
      lo = cut;
    }
  } else {
    // Log-spaced adaptive panels.
    double hi = top;
    while (hi > head * 1.0000001) {
      double lo = std::max(head, hi / 4.0);
      auto f = [&](double t) -> Cplx {
        return std::exp((s - Cplx(N + 1, 0.0)) * std::log(t)) * oracle(t);
      };
      acc += adaptive_integrate(f, lo, hi, rel_tol * 0.1);
      hi = lo;
    }
  }

  // Power-law head: V(t) ~ M t^{he} on (0, head].
  const double he = oracle.head_exponent;
  const double M = oracle(head) / std::pow(head, he);
  acc += M * std::exp((s - Cplx(N, 0.0) + he) * std::log(head)) /
         (s - Cplx(N, 0.0) + he);
  return acc;
}

// Mellin zeta integral \int_0^infty t^{s-N-1} V(t) dt (needs Re s < N
// and a saturating oracle).
inline Cplx numeric_mellin_zeta(const TubeOracle& oracle, Cplx s, int N,
                                double rel_tol = 1e-10) {
  if (!(s.real() < N))
    throw NumericError("nonconvergence", "mellin integral needs Re s < N");
  if (!std::isfinite(oracle.t_sat))
    throw UsageError("bad-argument", "mellin integral needs a saturating oracle");
  Cplx acc = numeric_tube_zeta(oracle, s, oracle.t_sat, N, rel_tol);
  // Tail: sat_value * t_sat^{s-N} / (N - s).
  acc += oracle.sat_value * std::exp((s - Cplx(N, 0.0)) * std::log(oracle.t_sat)) /
         (Cplx(N, 0.0) - s);
  return acc;
}

struct InversionResult {
  double value = 0.0;
  double im_residual = 0.0;
  double tail_bound = 0.0;
};

// Truncated Mellin inversion
//   (2 pi i)^{-1} \int_{c-iT}^{c+iT} t^{N-s} z(s) ds
// recovering the tube function from a tube- or mellin-kind handle.
inline InversionResult mellin_invert_tube(const ZetaHandle& z, double t,
                                          double c, double T,
                                          bool check_residual = true) {
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  if (!(T > 0.0)) throw UsageError("bad-argument", "T must be positive");
  const int N = z.ambient_dim;
  if (z.kind == ZetaKind::tube) {
    if (!(c > z.upper_dimension && c < N + 1))
      throw UsageError("validity-interval", "tube inversion needs D < c < N+1");
    if (!(t < z.delta))
      throw UsageError("validity-interval",
                       "tube inversion is valid only for t in (0, delta)");
  } else if (z.kind == ZetaKind::mellin) {
    const auto strip = z.holomorphy_strip.value_or(
        std::make_pair(z.upper_dimension, static_cast<double>(N)));
    if (!(c > strip.first && c < strip.second))
      throw UsageError("validity-interval",
                       "mellin inversion needs c inside the holomorphy strip");
  } else {
    throw UsageError("bad-kind", "inversion expects a tube or mellin handle");
  }

  // Panels aligned to the lattice oscillation when the handle carries
  // ratio information.
  double width = 3.0;
  if (!z.poles.moran_ratios.empty()) {
    double rmin = *std::min_element(z.poles.moran_ratios.begin(),
                                    z.poles.moran_ratios.end());
    width = 2.0 * kPi / std::log(1.0 / rmin);
  }
  const double phase_rate = std::abs(std::log(t));  // oscillation in tau
  const int per_panel =
      std::max(16, static_cast<int>(4.0 * width * (phase_rate + 1.0)));
  const GaussLegendre gl(std::min(per_panel, 48));
  const int sub = (per_panel + 47) / 48;

  auto integrand = [&](double tau) -> Cplx {
    const Cplx s(c, tau);
    return std::exp((Cplx(N, 0.0) - s) * std::log(t)) * z(s);
  };
  Cplx acc{};
  double tau = -T;
  double zmax_tail = 0.0;
  while (tau < T - 1e-12) {
    double hi = std::min(T, tau + width / sub);
    acc += gl_integrate(integrand, tau, hi, gl);
    tau = hi;
  }
  acc /= 2.0 * kPi;  // ds = i dtau, divided by 2 pi i

  // Crude tail estimate from the decay of |z| near the cut.
  for (double f : {1.0, 0.9, 0.8})
    zmax_tail = std::max(zmax_tail, std::abs(z(Cplx(c, f * T))));
  InversionResult out;
  out.value = acc.real();
  out.im_residual = std::abs(acc.imag());
  out.tail_bound = std::pow(t, N - c) * zmax_tail * T / kPi;
  if (check_residual && out.im_residual > 1e-3 * std::max(1.0, std::abs(out.value)))
    throw NumericError("residual-too-large",
                       "imaginary residual of the inversion is too large");
  return out;
}

}  // namespace fzeta
