#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"

namespace fzeta {

// Lanczos approximation (g = 7, 9 terms), about 15 significant digits on
// the right half-plane; reflection handles Re z < 0.5.
inline Cplx log_gamma(Cplx z);

namespace detail {

inline Cplx log_gamma_lanczos(Cplx z) {
  static const std::array<double, 9> g = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  Cplx x = g[0];
  for (int i = 1; i < 9; ++i) x += g[i] / (z + Cplx(i, 0));
  Cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace detail

inline Cplx log_gamma(Cplx z) {
  if (z.real() < 0.5) {
    // log pi - log sin(pi z) - log Gamma(1 - z); only used inside exp(),
    // so the branch of log sin is immaterial.
    Cplx s = std::sin(kPi * z);
    if (std::abs(s) == 0.0)
      throw NumericError("gamma-pole", "log_gamma at a nonpositive integer");
    return std::log(kPi) - std::log(s) - detail::log_gamma_lanczos(1.0 - z);
  }
  return detail::log_gamma_lanczos(z);
}

inline Cplx gamma_fn(Cplx z) { return std::exp(log_gamma(z)); }

// Pochhammer symbol (s)_k = Gamma(s+k)/Gamma(s), evaluated as a finite
// product. (s)_0 = 1; for k < 0 the ratio is 1/((s-1)(s-2)...(s+k)).
inline Cplx pochhammer(Cplx s, int k) {
  if (k == 0) return 1.0;
  if (k > 0) {
    Cplx p = 1.0;
    for (int j = 0; j < k; ++j) p *= s + Cplx(j, 0);
    return p;
  }
  Cplx p = 1.0;
  for (int j = 1; j <= -k; ++j) {
    Cplx f = s - Cplx(j, 0);
    if (std::abs(f) < 1e-14)
      throw NumericError("gamma-pole", "pochhammer with singular gamma ratio");
    p *= f;
  }
  return 1.0 / p;
}

// Generalized binomial coefficient binom(s, n) = (s-n+1)_n / n!.
inline Cplx binom(Cplx s, int n) {
  if (n < 0) throw UsageError("bad-argument", "binom needs n >= 0");
  Cplx num = pochhammer(s - Cplx(n - 1, 0), n);
  double fact = 1.0;
  for (int j = 2; j <= n; ++j) fact *= j;
  return num / fact;
}

namespace detail {

// B_2, B_4, ..., B_28.
inline constexpr std::array<double, 14> kBernoulli2k = {
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
    8553103.0 / 6,
    -23749461029.0 / 870};

// Euler-Maclaurin evaluation, reliable for Re s > -1 once the cutoff n
// scales with |Im s|.
inline Cplx riemann_zeta_em(Cplx s) {
  const double t = std::abs(s.imag());
  const int n = std::max(24, static_cast<int>(0.7 * t) + 8);
  Cplx sum = 0.0;
  for (int j = 1; j < n; ++j) sum += std::pow(Cplx(j, 0), -s);
  const Cplx nc(n, 0);
  sum += 0.5 * std::pow(nc, -s);
  sum += std::pow(nc, 1.0 - s) / (s - 1.0);
  // Correction terms B_{2k}/(2k)! * (s)_{2k-1} * n^{-s-2k+1}.
  Cplx poch = s;            // (s)_1
  double fact = 2.0;        // (2k)! running value
  for (std::size_t k = 1; k <= kBernoulli2k.size(); ++k) {
    if (k > 1) {
      poch *= (s + Cplx(2.0 * k - 3.0, 0)) * (s + Cplx(2.0 * k - 2.0, 0));
      fact *= (2.0 * k - 1.0) * (2.0 * k);
    }
    sum += kBernoulli2k[k - 1] / fact * poch * std::pow(nc, -s - Cplx(2.0 * k - 1.0, 0));
  }
  return sum;
}

// Euler-Maclaurin for the Hurwitz zeta sum_{j>=0} (q+j)^{-w}.
inline Cplx hurwitz_zeta_em(Cplx w, double q) {
  const double t = std::abs(w.imag());
  const int base = std::max(24, static_cast<int>(0.7 * t) + 8);
  const int n = std::max(0, base - static_cast<int>(q));
  Cplx sum = 0.0;
  for (int j = 0; j < n; ++j) sum += std::pow(Cplx(q + j, 0), -w);
  const Cplx qn(q + n, 0);
  sum += 0.5 * std::pow(qn, -w);
  sum += std::pow(qn, 1.0 - w) / (w - 1.0);
  Cplx poch = w;
  double fact = 2.0;
  for (std::size_t k = 1; k <= kBernoulli2k.size(); ++k) {
    if (k > 1) {
      poch *= (w + Cplx(2.0 * k - 3.0, 0)) * (w + Cplx(2.0 * k - 2.0, 0));
      fact *= (2.0 * k - 1.0) * (2.0 * k);
    }
    sum += kBernoulli2k[k - 1] / fact * poch * std::pow(qn, -w - Cplx(2.0 * k - 1.0, 0));
  }
  return sum;
}

}  // namespace detail

// Hurwitz zeta sum_{j>=0}(q+j)^{-w}, meromorphically continued; simple
// pole at w = 1 with residue 1.
inline Cplx hurwitz_zeta(Cplx w, double q) {
  require_finite(w, "hurwitz_zeta argument");
  if (!(q > 0.0)) throw UsageError("bad-argument", "hurwitz offset must be positive");
  if (std::abs(w - Cplx(1.0, 0.0)) < 1e-12)
    throw NumericError("pole-at-one", "hurwitz_zeta at w = 1");
  return detail::hurwitz_zeta_em(w, q);
}

// Riemann zeta on C \ {1}: Euler-Maclaurin for Re s >= -0.5, the
// functional equation zeta(s) = chi(s) zeta(1-s) otherwise.
inline Cplx riemann_zeta(Cplx s) {
  require_finite(s, "riemann_zeta argument");
  if (std::abs(s - Cplx(1.0, 0.0)) < 1e-12)
    throw NumericError("pole-at-one", "riemann_zeta at s = 1");
  if (s.real() >= -0.5) return detail::riemann_zeta_em(s);
  // chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s), assembled in log
  // form to dodge overflow for very negative Re s.
  const Cplx one_minus = 1.0 - s;
  const Cplx half_pi_s = 0.5 * kPi * s;
  Cplx sin_term = std::sin(half_pi_s);
  if (std::abs(sin_term) == 0.0) return 0.0;  // trivial zeros
  Cplx log_chi = s * std::log(2.0) + (s - 1.0) * std::log(kPi) +
                 std::log(sin_term) + log_gamma(one_minus);
  return std::exp(log_chi) * detail::riemann_zeta_em(one_minus);
}

}  // namespace fzeta
