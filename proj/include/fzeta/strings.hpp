#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"
#include "fzeta/handle.hpp"
#include "fzeta/special.hpp"

namespace fzeta {

// ----------------------------------------------------------------------
// a-string primitives: lengths l_j = j^-a - (j+1)^-a and the normalized
// remainder h_j defined by l_j = a j^{-a-1} (1 + h_j).
// ----------------------------------------------------------------------

inline double a_string_length(double a, long j) {
  // -j^-a * expm1(-a log(1 + 1/j)) avoids cancellation for large j.
  return -std::pow(static_cast<double>(j), -a) * std::expm1(-a * std::log1p(1.0 / j));
}

inline double a_string_h(double a, long j) {
  return a_string_length(a, j) * std::pow(static_cast<double>(j), a + 1.0) / a - 1.0;
}

namespace detail {

// Coefficients of h_j = sum_{m>=1} gamma_m j^-m:
// gamma_m = -(1/a) binom(-a, m+1).
inline std::vector<double> h_series_coeffs(double a, int M) {
  std::vector<double> g(M + 1, 0.0);
  for (int m = 1; m <= M; ++m) {
    double b = 1.0;  // binom(-a, m+1)
    for (int i = 0; i < m + 1; ++i) b *= (-a - i) / (i + 1.0);
    g[m] = -b / a;
  }
  return g;
}

// Table C[n][m] with h^n = sum_m C[n][m] j^-m (truncated at M).
inline std::vector<std::vector<double>> h_power_table(double a, int M) {
  auto g = h_series_coeffs(a, M);
  std::vector<std::vector<double>> table(M + 1, std::vector<double>(M + 1, 0.0));
  table[0][0] = 1.0;
  for (int n = 1; n <= M; ++n)
    for (int m = 0; m <= M; ++m)
      for (int i = 1; i <= m; ++i)
        table[n][m] += g[i] * table[n - 1][m - i];
  return table;
}

}  // namespace detail

// Meromorphic continuation of zeta_{L,b,tau}(s) = sum_j j^b l_j^{s-tau}
// for the a-string lengths. The truncated binomial expansion of
// (1 + h_j)^{s'} converts the head into Riemann zeta values at shifted
// arguments; the pointwise remainder is summed directly.
inline Cplx zeta_Lb(double a, double b, double tau, Cplx s, int M = 8) {
  if (!(a > 0.0)) throw UsageError("bad-argument", "a must be positive");
  if (M < 0) throw UsageError("bad-argument", "M must be >= 0");
  const Cplx sp = s - tau;
  const double sigma = sp.real();

  // Pole locations: (b+1)/(a+1) and (b-m)/(a+1), m = 0..M, except that
  // s' = 0 is always regular (the binomial weights vanish there).
  if (std::abs(sp - Cplx((b + 1.0) / (a + 1.0), 0.0)) < 1e-9)
    throw NumericError("pole", "zeta_Lb evaluated at its leading pole");
  for (int m = 0; m <= M; ++m) {
    if (std::abs(b - m) < 1e-12) continue;
    if (std::abs(sp - Cplx((b - m) / (a + 1.0), 0.0)) < 1e-9)
      throw NumericError("pole", "zeta_Lb evaluated at a lower pole");
  }

  // The remainder decays like j^{b - (a+1) sigma - (M+1)}; require real
  // decay margin before attempting the sum.
  const double decay = (a + 1.0) * sigma - b + M + 1.0;
  if (decay < 1.5)
    throw NumericError("insufficient-depth",
                       "s lies left of the strip reachable at this truncation depth");

  static thread_local std::vector<std::vector<double>> table;
  static thread_local double table_a = -1.0;
  static thread_local int table_M = -1;
  if (table_a != a || table_M != M) {
    table = detail::h_power_table(a, M);
    table_a = a;
    table_M = M;
  }

  const Cplx as = std::pow(Cplx(a, 0.0), sp);

  // The first j0 terms are summed directly; the binomial expansion of
  // (1 + h_j)^{s'} is applied only where |s' h_j| is small, which keeps
  // the expansion weights O(1) and avoids roundoff amplification.
  const long j0 =
      std::max<long>(8, static_cast<long>((std::abs(sp) + 2.0) * (a + 1.0)));
  Cplx direct_head = 0.0;
  for (long j = 1; j <= j0; ++j)
    direct_head += std::pow(Cplx(j, 0.0), Cplx(b, 0.0)) *
                   std::pow(Cplx(a_string_length(a, j), 0.0), sp);

  // Expanded tail: sum_n a^{s'} binom(s', n) sum_m C[n][m]
  //                 zeta_H((a+1)s' - b + m, j0 + 1).
  std::vector<Cplx> binoms(M + 1);
  for (int n = 0; n <= M; ++n) binoms[n] = binom(sp, n);
  Cplx head = 0.0;
  std::vector<Cplx> xm_weight(M + 1, Cplx{});  // sum_n binom(s',n) C[n][m]
  for (int m = 0; m <= M; ++m) {
    Cplx w{};
    for (int n = 0; n <= m; ++n) w += binoms[n] * table[n][m];
    xm_weight[m] = w;
    if (std::abs(w) == 0.0) continue;
    head += w * hurwitz_zeta((a + 1.0) * sp - b + Cplx(m, 0.0),
                             static_cast<double>(j0 + 1));
  }
  head *= as;

  // Pointwise remainder: g_j = a^{s'} j^{b-(a+1)s'} [(1+h_j)^{s'} - P(s',1/j)].
  Cplx rem = 0.0;
  int small_streak = 0;
  const long j_max = 1L << 21;
  long j = j0 + 1;
  for (; j <= j_max; ++j) {
    const double x = 1.0 / static_cast<double>(j);
    Cplx poly{};
    for (int m = M; m >= 0; --m) poly = poly * x + xm_weight[m];
    const double hj = a_string_h(a, j);
    const Cplx lead = std::exp(sp * std::log1p(hj));
    const Cplx bracket = lead - poly;
    rem += as * std::pow(Cplx(j, 0.0), Cplx(b, 0.0) - (a + 1.0) * sp) * bracket;
    // Once the bracket reaches its own roundoff floor the remaining true
    // contribution is below noise; stop rather than integrate noise.
    if (std::abs(bracket) <
        3e-16 * std::max({1.0, std::abs(lead), std::abs(poly)})) {
      if (++small_streak >= 3) break;
    } else {
      small_streak = 0;
    }
  }
  if (j > j_max)
    throw NumericError("insufficient-depth",
                       "remainder series converged too slowly at this depth");
  return direct_head + head + rem;
}

// ----------------------------------------------------------------------
// Fractal strings and their exact tube volumes.
// ----------------------------------------------------------------------

struct FractalString {
  enum class Rule { cantor, a_string, self_similar, explicit_list };
  Rule rule = Rule::cantor;
  double a = 1.0;                   // a_string parameter
  double first_length = 1.0 / 3.0;  // self_similar: generator gap length
  std::vector<double> ratios;       // self_similar ratio multiset
  std::vector<double> lengths;      // explicit_list, nonincreasing
  double scale = 1.0;               // uniform scaling of every length

  static FractalString cantor() { return FractalString{}; }
  static FractalString a_string_of(double a) {
    FractalString f;
    f.rule = Rule::a_string;
    f.a = a;
    return f;
  }
  static FractalString self_similar(double first, std::vector<double> r) {
    FractalString f;
    f.rule = Rule::self_similar;
    f.first_length = first;
    f.ratios = std::move(r);
    return f;
  }
  static FractalString explicit_list(std::vector<double> l) {
    FractalString f;
    f.rule = Rule::explicit_list;
    f.lengths = std::move(l);
    std::sort(f.lengths.begin(), f.lengths.end(), std::greater<double>());
    return f;
  }

  FractalString scaled(double lambda) const {
    FractalString f = *this;
    f.scale *= lambda;
    return f;
  }

  double total_length() const {
    switch (rule) {
      case Rule::cantor:
        return scale;
      case Rule::a_string:
        return scale;
      case Rule::self_similar: {
        double rs = 0.0;
        for (double r : ratios) rs += r;
        if (rs >= 1.0) throw UsageError("bad-ratios", "sum of ratios must be < 1");
        return scale * first_length / (1.0 - rs);
      }
      case Rule::explicit_list:
        return scale * std::accumulate(lengths.begin(), lengths.end(), 0.0);
    }
    return 0.0;
  }

  double abscissa() const {
    switch (rule) {
      case Rule::cantor:
        return std::log(2.0) / std::log(3.0);
      case Rule::a_string:
        return 1.0 / (a + 1.0);
      case Rule::self_similar: {
        // real Moran root of sum r_j^x = 1
        double lo = 0.0, hi = 1.0;
        auto g = [&](double x) {
          double acc = -1.0;
          for (double r : ratios) acc += std::pow(r, x);
          return acc;
        };
        while (g(hi) > 0.0) hi += 1.0;
        for (int it = 0; it < 200; ++it) {
          double mid = 0.5 * (lo + hi);
          (g(mid) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
      }
      case Rule::explicit_list:
        return 0.0;
    }
    return 0.0;
  }
};

// zeta_L(s) = sum_j l_j^s via the closed form / continuation of each rule.
inline Cplx string_geometric_zeta(const FractalString& str, Cplx s) {
  const Cplx sc = std::pow(Cplx(str.scale, 0.0), s);
  switch (str.rule) {
    case FractalString::Rule::cantor: {
      const Cplx den = std::pow(Cplx(3.0, 0.0), s) - 2.0;
      if (std::abs(den) < 1e-12 * std::abs(std::pow(Cplx(3.0, 0.0), s)))
        throw NumericError("pole", "geometric zeta evaluated at a pole");
      return sc / den;
    }
    case FractalString::Rule::a_string:
      return sc * zeta_Lb(str.a, 0.0, 0.0, s);
    case FractalString::Rule::self_similar: {
      Cplx rs{};
      for (double r : str.ratios) rs += std::pow(Cplx(r, 0.0), s);
      const Cplx den = 1.0 - rs;
      if (std::abs(den) < 1e-12)
        throw NumericError("pole", "geometric zeta evaluated at a pole");
      return sc * std::pow(Cplx(str.first_length, 0.0), s) / den;
    }
    case FractalString::Rule::explicit_list: {
      Cplx acc{};
      for (double l : str.lengths) acc += std::pow(Cplx(l, 0.0), s);
      return sc * acc;
    }
  }
  return {};
}

// Geometric zeta function wrapped as an evaluatable handle.
inline ZetaHandle geometric_string_zeta_handle(const FractalString& str) {
  ZetaHandle h;
  h.name = "geometric_string";
  h.kind = ZetaKind::geometric_string;
  h.ambient_dim = 1;
  h.evaluate = [str](Cplx s) { return string_geometric_zeta(str, s); };
  h.upper_dimension = str.abscissa();
  h.omega_volume = str.total_length();
  if (str.rule == FractalString::Rule::cantor) {
    h.poles.rows = {{Cplx(h.upper_dimension, 0.0), 2.0 * kPi / std::log(3.0)}};
    h.poles.moran_ratios = {1.0 / 3.0, 1.0 / 3.0};
  } else if (str.rule == FractalString::Rule::self_similar) {
    h.poles.moran_ratios = str.ratios;
  }
  return h;
}

// Direct summation, only meaningful right of the abscissa.
inline Cplx string_geometric_zeta_direct(const FractalString& str, Cplx s,
                                         long max_terms = 2'000'000) {
  if (s.real() <= str.abscissa() + 0.05)
    throw NumericError("divergence",
                       "direct summation requested at Re s <= abscissa");
  Cplx acc{};
  switch (str.rule) {
    case FractalString::Rule::cantor: {
      for (int k = 0;; ++k) {
        Cplx term = std::pow(2.0, k) *
                    std::pow(Cplx(str.scale * std::pow(3.0, -(k + 1)), 0.0), s);
        acc += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(acc)) || k > 4000) break;
      }
      return acc;
    }
    case FractalString::Rule::a_string: {
      for (long j = 1; j <= max_terms; ++j) {
        Cplx term = std::pow(Cplx(str.scale * a_string_length(str.a, j), 0.0), s);
        acc += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(acc))) break;
      }
      return acc;
    }
    default:
      return string_geometric_zeta(str, s);
  }
}

// Exact V(t) = sum_j min(l_j, 2t): finite head plus closed-form tail.
inline double string_tube_volume(const FractalString& str, double t) {
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  const double u = t / str.scale;  // work at unit scale, multiply back
  double v = 0.0;
  switch (str.rule) {
    case FractalString::Rule::cantor: {
      // level k holds 2^k lengths 3^{-(k+1)}
      int k = 0;
      double len = 1.0 / 3.0, count = 1.0;
      while (len > 2.0 * u && k < 4000) {
        v += count * 2.0 * u;
        len /= 3.0;
        count *= 2.0;
        ++k;
      }
      v += std::pow(2.0 / 3.0, k);  // saturated tail telescopes
      break;
    }
    case FractalString::Rule::a_string: {
      // lengths decrease; find the last unsaturated index by bisection
      if (a_string_length(str.a, 1) <= 2.0 * u) {
        v = 1.0;
        break;
      }
      long lo = 1, hi = 2;
      while (a_string_length(str.a, hi) > 2.0 * u) hi *= 2;
      while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        (a_string_length(str.a, mid) > 2.0 * u ? lo : hi) = mid;
      }
      v = 2.0 * u * static_cast<double>(lo) + std::pow(static_cast<double>(lo + 1), -str.a);
      break;
    }
    case FractalString::Rule::self_similar: {
      // DFS over scaling words above the saturation threshold.
      double rsum = 0.0;
      for (double r : str.ratios) rsum += r;
      if (rsum >= 1.0) throw UsageError("bad-ratios", "sum of ratios must be < 1");
      const double thresh = 2.0 * u / str.first_length;
      double unsat_count = 0.0, sat_lengths_total = str.first_length / (1.0 - rsum);
      std::function<void(double)> dfs = [&](double lam) {
        if (lam * str.first_length <= 2.0 * u) return;
        unsat_count += 1.0;
        sat_lengths_total -= lam * str.first_length;
        for (double r : str.ratios) dfs(lam * r);
      };
      (void)thresh;
      dfs(1.0);
      v = 2.0 * u * unsat_count + sat_lengths_total;
      break;
    }
    case FractalString::Rule::explicit_list: {
      for (double l : str.lengths) v += std::min(l, 2.0 * u);
      break;
    }
  }
  return str.scale * v;
}

// Distinct corner points of V on (t_lo, t_hi); V is linear in t between
// consecutive knots.
inline std::vector<double> string_tube_knots(const FractalString& str,
                                             double t_lo, double t_hi) {
  std::vector<double> knots;
  auto push = [&](double len) {
    double k = str.scale * len / 2.0;
    if (k > t_lo && k < t_hi) knots.push_back(k);
  };
  switch (str.rule) {
    case FractalString::Rule::cantor: {
      double len = 1.0 / 3.0;
      while (str.scale * len / 2.0 > t_lo && len > 0.0) {
        push(len);
        len /= 3.0;
      }
      break;
    }
    case FractalString::Rule::a_string: {
      for (long j = 1;; ++j) {
        double len = a_string_length(str.a, j);
        if (str.scale * len / 2.0 <= t_lo || j > 3'000'000) break;
        push(len);
      }
      break;
    }
    case FractalString::Rule::self_similar: {
      std::function<void(double)> dfs = [&](double lam) {
        double len = lam * str.first_length;
        if (str.scale * len / 2.0 <= t_lo) return;
        push(len);
        for (double r : str.ratios) dfs(lam * r);
      };
      dfs(1.0);
      break;
    }
    case FractalString::Rule::explicit_list:
      for (double l : str.lengths) push(l);
      break;
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-300; }),
              knots.end());
  return knots;
}

}  // namespace fzeta
