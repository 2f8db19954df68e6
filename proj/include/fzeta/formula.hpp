#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/contour.hpp"
#include "fzeta/errors.hpp"
#include "fzeta/handle.hpp"
#include "fzeta/moran.hpp"
#include "fzeta/numerics.hpp"
#include "fzeta/special.hpp"

namespace fzeta {

// Vertical-line screen Re s = screen_re with optional truncation of the
// imaginary axis.
struct Window {
  double screen_re = 0.0;
  std::optional<double> im_cut;
};

// One expansion term: coefficient * t^{N - omega + k} * (log 1/t)^m.
struct TubeTerm {
  Cplx omega{};
  int log_power = 0;
  Cplx coefficient{};
  int level = 0;
};

// Decay envelope |row-k coefficient| <= C k^{-q} for one lattice row
// family, used for explicit truncation tail bounds.
struct RowEnvelope {
  double period = 0.0;
  double re = 0.0;  // real part of the row
  double C = 0.0;
  double q = 2.0;
};

struct TubeExpansion {
  int ambient_dim = 1;
  int level = 0;
  ZetaKind kind = ZetaKind::distance;
  std::vector<TubeTerm> terms;
  std::vector<int> term_row;  // lattice row index per term (0 = isolated)
  bool exact = false;
  double error_exponent = std::numeric_limits<double>::quiet_NaN();
  double validity_t_max = std::numeric_limits<double>::infinity();
  std::vector<RowEnvelope> envelopes;
  int rows_computed = 0;
};

struct CancelledPole {
  Cplx location{};
  double residual_magnitude = 0.0;
};

struct DimensionSet {
  std::vector<ComplexDimension> dims;
  std::vector<int> row;  // lattice row index per dimension (0 = isolated)
  std::vector<CancelledPole> cancelled;
};

namespace detail {

inline bool near(const Cplx& a, const Cplx& b, double tol = 1e-9) {
  return std::abs(a - b) < tol;
}

}  // namespace detail

// All visible complex dimensions of the handle: candidate locations come
// from the catalog pole hints (isolated points, lattice rows, Moran
// scaling factors); each candidate is refined with a contour and
// candidates whose principal part vanishes are reported as cancelled.
inline DimensionSet complex_dimensions_detailed(const ZetaHandle& z,
                                                std::optional<Window> window,
                                                double im_max_default = 100.0) {
  const double sigma = window ? window->screen_re
                              : -std::numeric_limits<double>::infinity();
  double im_max = im_max_default;
  if (window && window->im_cut) im_max = *window->im_cut;

  struct Cand {
    Cplx s;
    int row;
  };
  std::vector<Cand> cands;
  auto push = [&](Cplx s, int row) {
    if (window && std::abs(s.real() - sigma) < 1e-6)
      throw NumericError("screen-through-pole",
                         "screen passes through a candidate pole");
    if (s.real() <= sigma + 1e-12) return;
    if (std::abs(s.imag()) > im_max + 1e-12) return;
    if (s.imag() < -1e-12) return;  // refined via conjugation
    for (const auto& c : cands)
      if (detail::near(c.s, s)) return;
    cands.push_back({s, row});
  };

  for (const Cplx& p : z.poles.isolated) push(p, 0);
  for (const PoleRow& row : z.poles.rows) {
    const int kmax = static_cast<int>(std::floor((im_max - row.base.imag()) /
                                                 row.period)) +
                     1;
    for (int k = 0; k <= kmax; ++k)
      push(row.base + Cplx(0.0, k * row.period), k);
  }
  if (!z.poles.moran_ratios.empty()) {
    // Scaling poles not already covered by the row hints.
    double rmin = *std::min_element(z.poles.moran_ratios.begin(),
                                    z.poles.moran_ratios.end());
    const double spacing = 2.0 * kPi / std::log(1.0 / rmin);
    double lo = std::max(sigma, -4.0);
    Rectangle region(lo - 0.341, z.ambient_dim + 1.273, -0.4 * spacing,
                     im_max + 0.23 * spacing);
    for (const auto& root : find_moran_roots(z.poles.moran_ratios, region))
      push(root.location,
           static_cast<int>(std::lround(std::abs(root.location.imag()) / spacing)));
  }

  DimensionSet out;
  for (const auto& c : cands) {
    double nearest = 1.0;
    for (const auto& o : cands)
      if (std::abs(o.s - c.s) > 1e-12)
        nearest = std::min(nearest, std::abs(o.s - c.s));
    if (window) nearest = std::min(nearest, 2.0 * std::abs(c.s.real() - sigma));
    const double radius = std::clamp(0.4 * nearest, 1e-4, 0.45);
    LaurentData ld = contour_laurent(z.evaluate, c.s, radius, 4, 1);
    if (ld.order == 0) {
      double mag = 0.0;
      for (int m = 1; m <= 4; ++m) mag = std::max(mag, std::abs(ld.coeff(-m)));
      out.cancelled.push_back({c.s, mag});
      continue;
    }
    // Polish the location for simple poles: w ~ center - c0/c1 of 1/f
    // is unnecessary here because lattice hints are exact; keep as is.
    out.dims.push_back(ld.as_dimension());
    out.row.push_back(c.row);
    if (c.s.imag() > 1e-12) {
      ComplexDimension conj_dim;
      conj_dim.location = std::conj(ld.center);
      conj_dim.order = ld.order;
      for (const Cplx& p : ld.principal)
        conj_dim.principal_part.push_back(std::conj(p));
      out.dims.push_back(conj_dim);
      out.row.push_back(c.row);
    }
  }
  // Deterministic order: by (Im, Re).
  std::vector<std::size_t> idx(out.dims.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Cplx &x = out.dims[a].location, &y = out.dims[b].location;
    if (x.imag() != y.imag()) return x.imag() < y.imag();
    return x.real() < y.real();
  });
  DimensionSet sorted;
  sorted.cancelled = out.cancelled;
  for (std::size_t i : idx) {
    sorted.dims.push_back(out.dims[i]);
    sorted.row.push_back(out.row[i]);
  }
  return sorted;
}

inline std::vector<ComplexDimension> complex_dimensions(
    const ZetaHandle& z, std::optional<Window> window,
    double im_max_default = 100.0) {
  return complex_dimensions_detailed(z, window, im_max_default).dims;
}

namespace detail {

// Kernel weight w(s): (N-s)_{k+1} for the distance kernel and
// (N-s+1)_k for the tube kernel.
inline std::vector<Cplx> weight_roots(ZetaKind kind, int N, int k) {
  std::vector<Cplx> roots;  // w(s) = prod (c_j - (s - omega)) shifted later
  if (kind == ZetaKind::distance) {
    for (int j = 0; j <= k; ++j) roots.push_back(Cplx(N + j, 0.0));
  } else if (kind == ZetaKind::tube) {
    for (int j = 1; j <= k; ++j) roots.push_back(Cplx(N + j, 0.0));
  } else {
    throw UsageError("bad-kind",
                     "tube formulas use distance or tube kernels only");
  }
  return roots;
}

}  // namespace detail

// Residue of t^{N-s+k}/w(s) * z(s) at the pole, written as terms
// coefficient * t^{N-omega+k} (log 1/t)^j. The kernel Taylor expansion is
// built from first principles: t^{-u} = e^{u log(1/t)} against the exact
// reciprocal series of the weight polynomial.
inline std::vector<TubeTerm> residue_term(const ZetaHandle& z,
                                          const ComplexDimension& dim, int k) {
  if (k < 0) throw UsageError("bad-argument", "level k must be >= 0");
  const int N = z.ambient_dim;
  const Cplx w = dim.location;
  if (z.kind == ZetaKind::distance && detail::near(w, Cplx(N, 0.0)))
    throw UsageError("pole-at-weight-zero",
                     "distance-kind expansions exclude s = N");
  const auto roots = detail::weight_roots(z.kind, N, k);
  // w(omega + u) = prod_j ((root_j - omega) - u) as a series in u.
  std::vector<Cplx> wser{Cplx(1.0, 0.0)};
  for (const Cplx& r : roots) {
    const Cplx c = r - w;
    if (std::abs(c) < 1e-12)
      throw NumericError("pole-at-weight-zero",
                         "kernel weight vanishes at this dimension");
    wser = series_mul(wser, {c, Cplx(-1.0, 0.0)}, dim.order + 1u);
  }
  const std::vector<Cplx> winv = series_reciprocal(wser, dim.order + 1u);

  // residue = sum_{q=1}^{m} c_{-q} * [u^{q-1}] (e^{u L} / w(omega+u)),
  // L = log(1/t); collect per power of L.
  std::vector<TubeTerm> terms;
  for (int j = 0; j <= dim.order - 1; ++j) {
    double jfact = 1.0;
    for (int i = 2; i <= j; ++i) jfact *= i;
    Cplx coef{};
    for (int q = j + 1; q <= dim.order; ++q) {
      const Cplx cq = dim.principal_part[dim.order - q];  // c_{-q}
      const int n = q - 1 - j;
      if (n < static_cast<int>(winv.size())) coef += cq * winv[n];
    }
    coef /= jfact;
    if (std::abs(coef) == 0.0) continue;
    terms.push_back(TubeTerm{w, j, coef, k});
  }
  return terms;
}

// Direct contour evaluation of the same residue at a specific t; used to
// cross-check the symbolic route.
inline Cplx residue_term_direct(const ZetaHandle& z, Cplx omega, int k,
                                double t, double radius) {
  const int N = z.ambient_dim;
  const auto roots = detail::weight_roots(z.kind, N, k);
  auto f = [&](Cplx s) {
    Cplx w = 1.0;
    for (const Cplx& r : roots) w *= (r - s);
    return std::exp((Cplx(N + k, 0.0) - s) * std::log(t)) / w * z(s);
  };
  return contour_laurent(f, omega, radius, 4, 0).residue();
}

inline double term_value_real(const TubeTerm& term, double t, int N,
                              Cplx* complex_out = nullptr) {
  const double L = std::log(1.0 / t);
  const Cplx v = term.coefficient *
                 std::exp((Cplx(N + term.level, 0.0) - term.omega) * std::log(t)) *
                 std::pow(L, term.log_power);
  if (complex_out) *complex_out = v;
  return v.real();
}

// Assemble the truncated expansion: residue terms over all visible
// dimensions, with coefficient-decay envelopes fitted per lattice row.
inline TubeExpansion tube_expansion(const ZetaHandle& z,
                                    std::optional<Window> window, int k,
                                    int max_rows = 1000) {
  TubeExpansion exp;
  exp.ambient_dim = z.ambient_dim;
  exp.level = k;
  exp.kind = z.kind;
  if (!window) {
    z.languidity.check();
    if (!z.languidity.strong)
      throw UsageError("languidity-violation",
                       "exact expansions need strong languidity metadata");
    const double kd = z.languidity.kappa;
    const double min_k = (z.kind == ZetaKind::distance) ? kd - 1.0 : kd;
    if (!(k > min_k))
      throw UsageError("languidity-violation",
                       "level k too small for an exact expansion");
    exp.exact = true;
    exp.validity_t_max = z.validity_t_max;
  } else {
    exp.exact = false;
    exp.error_exponent = z.ambient_dim - window->screen_re + k;
    exp.validity_t_max = z.delta;
  }

  double im_max = 50.0;
  for (const PoleRow& row : z.poles.rows)
    im_max = std::max(im_max, row.period * (max_rows + 0.5));
  if (z.poles.rows.empty() && !z.poles.moran_ratios.empty()) {
    double rmin = *std::min_element(z.poles.moran_ratios.begin(),
                                    z.poles.moran_ratios.end());
    im_max = std::max(im_max,
                      2.0 * kPi / std::log(1.0 / rmin) * (max_rows + 0.5));
  }
  if (window && window->im_cut) im_max = std::min(im_max, *window->im_cut);

  DimensionSet ds = complex_dimensions_detailed(z, window, im_max);
  for (std::size_t i = 0; i < ds.dims.size(); ++i) {
    for (const TubeTerm& term : residue_term(z, ds.dims[i], k)) {
      exp.terms.push_back(term);
      exp.term_row.push_back(ds.row[i]);
    }
  }
  exp.rows_computed = 0;
  for (int r : exp.term_row) exp.rows_computed = std::max(exp.rows_computed, r);

  // Envelope per row family: fit |coef| ~ C k^{-q} on the computed rows.
  for (const PoleRow& row : z.poles.rows) {
    std::vector<double> ks, as;
    for (std::size_t i = 0; i < exp.terms.size(); ++i) {
      if (exp.term_row[i] < 2) continue;
      if (std::abs(exp.terms[i].omega.real() - row.base.real()) > 1e-6) continue;
      if (exp.terms[i].omega.imag() < 0) continue;
      ks.push_back(exp.term_row[i]);
      as.push_back(std::abs(exp.terms[i].coefficient));
    }
    if (ks.size() < 3) continue;
    // Log-log slope through the envelope points.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      double x = std::log(ks[i]), y = std::log(as[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(ks.size());
    double q = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    q = std::max(1.3, q);
    double C = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i)
      C = std::max(C, as[i] * std::pow(ks[i], q));
    RowEnvelope env;
    env.period = row.period;
    env.re = row.base.real();
    env.C = 1.3 * C;
    env.q = q;
    exp.envelopes.push_back(env);
  }
  return exp;
}

struct ExpansionValue {
  double value = 0.0;
  double tail_bound = 0.0;
  double im_residual = 0.0;
};

// Symmetric partial sum over rows |k| <= K plus the analytic tail bound
// from the fitted envelopes.
inline ExpansionValue evaluate_expansion(const TubeExpansion& exp, double t,
                                         int K) {
  if (!(t > 0.0) || t >= exp.validity_t_max)
    throw UsageError("validity-interval",
                     "t outside the validity interval of the expansion");
  Cplx acc{};
  for (std::size_t i = 0; i < exp.terms.size(); ++i) {
    if (exp.term_row[i] > K) continue;
    Cplx v;
    term_value_real(exp.terms[i], t, exp.ambient_dim, &v);
    acc += v;
  }
  ExpansionValue out;
  out.value = acc.real();
  out.im_residual = std::abs(acc.imag());
  for (const RowEnvelope& env : exp.envelopes) {
    // sum_{k>K} C k^-q <= C K^{1-q}/(q-1), conjugate pairs doubled
    const double rows_tail = env.C * std::pow(static_cast<double>(std::max(K, 1)),
                                              1.0 - env.q) /
                             (env.q - 1.0);
    out.tail_bound += 2.0 * rows_tail *
                      std::pow(t, exp.ambient_dim - env.re + exp.level);
  }
  if (out.im_residual > 1e-9 * std::max(1.0, std::abs(out.value)))
    throw NumericError("residual-too-large",
                       "expansion value has a nonreal residual");
  return out;
}

// Termwise t-derivative of a level-(k+1) expansion; matches the level-k
// expansion values.
inline double evaluate_expansion_derivative(const TubeExpansion& exp, double t,
                                            int K) {
  if (!(t > 0.0) || t >= exp.validity_t_max)
    throw UsageError("validity-interval", "t outside the validity interval");
  const double L = std::log(1.0 / t);
  Cplx acc{};
  for (std::size_t i = 0; i < exp.terms.size(); ++i) {
    if (exp.term_row[i] > K) continue;
    const TubeTerm& term = exp.terms[i];
    const Cplx e = Cplx(exp.ambient_dim + term.level, 0.0) - term.omega;
    const Cplx tpow = std::exp((e - 1.0) * std::log(t));
    Cplx v = term.coefficient * tpow * e * std::pow(L, term.log_power);
    if (term.log_power > 0)
      v -= term.coefficient * tpow * static_cast<double>(term.log_power) *
           std::pow(L, term.log_power - 1);
    acc += v;
  }
  return acc.real();
}

struct ScreenError {
  double value = 0.0;       // truncated screen integral
  double tail_estimate = 0.0;
  double apriori_bound = 0.0;
};

// Error term along a vertical screen: the truncated integral
// (2 pi)^{-1} \int_{-T}^{T} t^{N-s+k}/w(s) z(s) dtau at s = sigma + i tau,
// plus a languidity tail estimate and the a-priori bound shape.
inline ScreenError screen_error_term(const ZetaHandle& z, const Window& window,
                                     double t, int k, double T) {
  const double kappa = z.languidity.kappa;
  if (!(k > kappa))
    throw UsageError("languidity-violation",
                     "screen error term needs level k > kappa_d");
  const int N = z.ambient_dim;
  const double sigma = window.screen_re;
  const auto roots = detail::weight_roots(z.kind, N, k);
  auto integrand = [&](double tau) -> Cplx {
    const Cplx s(sigma, tau);
    Cplx w = 1.0;
    for (const Cplx& r : roots) w *= (r - s);
    return std::exp((Cplx(N + k, 0.0) - s) * std::log(t)) * z(s) / w;
  };
  const double width = 4.0;
  const GaussLegendre gl(32);
  Cplx acc{};
  double tau = -T;
  while (tau < T - 1e-12) {
    double hi = std::min(T, tau + width);
    acc += gl_integrate(integrand, tau, hi, gl);
    tau = hi;
  }
  ScreenError out;
  out.value = (acc / (2.0 * kPi)).real();

  // Empirical languidity constant along the screen.
  double C = 0.0;
  for (double f : {0.15, 0.35, 0.6, 0.85, 1.0}) {
    const double tt = std::max(1.0, f * T);
    C = std::max(C, std::abs(z(Cplx(sigma, tt))) / std::pow(1.0 + tt, kappa));
  }
  const double tpow = std::pow(t, N - sigma + k);
  out.tail_estimate = tpow * C * std::pow(T, kappa - k) / (kPi * (k - kappa));
  double Cprime = 0.0;
  {
    auto f = [&](double tau2) { return std::abs(integrand(tau2)); };
    Cprime = adaptive_integrate(f, -1.0, 1.0, 1e-9) / (2.0 * kPi) /
             std::max(tpow, 1e-300);
  }
  out.apriori_bound = tpow * (C / (2.0 * kPi * (k - kappa)) + Cprime);
  return out;
}

}  // namespace fzeta
