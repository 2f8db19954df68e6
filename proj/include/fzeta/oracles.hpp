#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"
#include "fzeta/numerics.hpp"
#include "fzeta/spray.hpp"
#include "fzeta/strings.hpp"

namespace fzeta {

// A tube-volume oracle V(t) = |A_t ∩ Omega|. Oracles with exact
// piecewise-polynomial structure expose their corner points so the
// Mellin-type integrals can be taken piece by piece.
struct TubeOracle {
  std::function<double(double)> value;
  // Corner points of V inside (t_lo, t_hi), sorted ascending; V is a
  // polynomial of degree <= piece_degree between consecutive knots.
  std::function<std::vector<double>(double, double)> knots;
  int piece_degree = 1;
  double t_sat = std::numeric_limits<double>::infinity();
  double sat_value = 0.0;  // V(t) for t >= t_sat
  // Local power-law scale of V near 0 (V ~ C t^{N - D}); used for head
  // truncation bounds.
  double head_exponent = 1.0;

  double operator()(double t) const { return value(t); }
};

inline TubeOracle oracle_from_string(const FractalString& str) {
  TubeOracle o;
  o.value = [str](double t) { return string_tube_volume(str, t); };
  o.knots = [str](double lo, double hi) { return string_tube_knots(str, lo, hi); };
  o.piece_degree = 1;
  o.t_sat = 0.5 * str.scale *
            (str.rule == FractalString::Rule::cantor ? 1.0 / 3.0
             : str.rule == FractalString::Rule::a_string
                 ? a_string_length(str.a, 1)
             : str.rule == FractalString::Rule::self_similar
                 ? str.first_length
                 : (str.lengths.empty() ? 1.0 : str.lengths.front()));
  o.sat_value = str.total_length();
  o.head_exponent = 1.0 - str.abscissa();
  return o;
}

inline TubeOracle oracle_from_spray(const SelfSimilarSpray& spray) {
  spray.check();
  TubeOracle o;
  o.value = [spray](double t) { return spray_tube_volume(spray, t); };
  o.knots = [spray](double lo, double hi) { return spray_tube_knots(spray, lo, hi); };
  o.piece_degree = spray.ambient_dim;
  o.t_sat = spray.inradius;
  o.sat_value = spray.omega_volume();
  double D = 0.0;  // real Moran root
  {
    auto g = [&](double x) {
      double acc = -1.0;
      for (double r : spray.ratios) acc += std::pow(r, x);
      return acc;
    };
    double lo = 0.0, hi = spray.ambient_dim;
    if (g(hi) < 0.0) {
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
      }
      D = 0.5 * (lo + hi);
    }
  }
  // A nonzero linear generator coefficient contributes the boundary
  // dimension N-1, which can exceed the Moran root.
  if (spray.ambient_dim >= 1 && spray.kappa.back() != 0.0)
    D = std::max(D, spray.ambient_dim - 1.0);
  o.head_exponent = spray.ambient_dim - D;
  return o;
}

// Inner tube volume of the Cantor-function drum: level k holds 2^k
// triangles scaled by 3^-k, each contributing v(tau) = tau - tau^2/2
// until saturation at tau = 1.
inline double cantor_graph_tube_volume(double t) {
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  double v = 0.0;
  double w = 2.0 / 9.0;  // (2/9)^k running weight
  double tau = 3.0 * t;
  int k = 1;
  for (; tau < 1.0 && k < 4000; ++k) {
    v += w * (tau - 0.5 * tau * tau);
    w *= 2.0 / 9.0;
    tau *= 3.0;
  }
  v += 0.5 * w / (1.0 - 2.0 / 9.0);  // saturated tail
  return v;
}

inline TubeOracle oracle_cantor_graph() {
  TubeOracle o;
  o.value = [](double t) { return cantor_graph_tube_volume(t); };
  o.knots = [](double lo, double hi) {
    std::vector<double> ks;
    for (double k = 1.0 / 3.0; k > lo; k /= 3.0)
      if (k < hi) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  o.piece_degree = 2;
  o.t_sat = 1.0 / 3.0;
  o.sat_value = 1.0 / 7.0;
  o.head_exponent = 1.0;
  return o;
}

// Fractal nest of center type over the a-string: concentric circles of
// radii k^-a inside the unit disk. The t-neighborhood is a union of
// annuli that merge into a full disk around the accumulation point.
inline double nest_tube_volume(double a, double t) {
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  if (!(a > 0.0)) throw UsageError("parameter-range", "nest needs a > 0");
  if (a_string_length(a, 1) <= 2.0 * t) return kPi;
  // last k with gap l_k > 2t
  long lo = 1, hi = 2;
  while (a_string_length(a, hi) > 2.0 * t) hi *= 2;
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (a_string_length(a, mid) > 2.0 * t ? lo : hi) = mid;
  }
  const long kstar = lo;
  double acc = 1.0 - (1.0 - t) * (1.0 - t);  // outermost circle, clipped at r=1
  for (long k = 2; k <= kstar; ++k)
    acc += 4.0 * t * std::pow(static_cast<double>(k), -a);
  const double inner = std::pow(static_cast<double>(kstar + 1), -a) + t;
  acc += inner * inner;
  return kPi * acc;
}

inline TubeOracle oracle_nest(double a) {
  TubeOracle o;
  o.value = [a](double t) { return nest_tube_volume(a, t); };
  o.knots = [a](double lo, double hi) {
    std::vector<double> ks;
    for (long j = 1; j < 30'000'000L; ++j) {
      double k = 0.5 * a_string_length(a, j);
      if (k <= lo) break;
      if (k < hi) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  o.piece_degree = 2;
  o.t_sat = 0.5 * a_string_length(a, 1);
  o.sat_value = kPi;
  o.head_exponent = 2.0 - std::max(1.0, 2.0 / (a + 1.0));
  return o;
}

// Unbounded geometric chirp: vertical segments at x = j^{-1/beta} of
// height j^{-alpha/beta}; Omega is the union of the spanned rectangles.
inline double chirp_tube_volume(double alpha, double beta, double t,
                                double omega_volume) {
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  const double a = 1.0 / beta, b = -alpha / beta;
  if (a_string_length(a, 1) <= 2.0 * t) return omega_volume;
  long lo = 1, hi = 2;
  while (a_string_length(a, hi) > 2.0 * t) hi *= 2;
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (a_string_length(a, mid) > 2.0 * t ? lo : hi) = mid;
  }
  const long kstar = lo;
  double unsat_heights = 0.0, unsat_area = 0.0;
  for (long j = 1; j <= kstar; ++j) {
    const double hj = std::pow(static_cast<double>(j), b);
    const double lj = a_string_length(a, j);
    unsat_heights += hj;
    unsat_area += hj * lj;
  }
  return 2.0 * t * unsat_heights + (omega_volume - unsat_area);
}

inline TubeOracle oracle_chirp(double alpha, double beta) {
  const double a = 1.0 / beta, b = -alpha / beta;
  const double omega = zeta_Lb(a, b, 0.0, Cplx(1.0, 0.0)).real();
  TubeOracle o;
  o.value = [alpha, beta, omega](double t) {
    return chirp_tube_volume(alpha, beta, t, omega);
  };
  o.knots = [a](double lo, double hi) {
    std::vector<double> ks;
    for (long j = 1; j < 30'000'000L; ++j) {
      double k = 0.5 * a_string_length(a, j);
      if (k <= lo) break;
      if (k < hi) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  o.piece_degree = 1;
  o.t_sat = 0.5 * a_string_length(a, 1);
  o.sat_value = omega;
  o.head_exponent = (1.0 + alpha) / (1.0 + beta);
  return o;
}

// |I_t| for the unit segment on the line.
inline TubeOracle oracle_segment(double delta) {
  TubeOracle o;
  o.value = [](double t) { return 2.0 * t + 1.0; };
  o.knots = [](double, double) { return std::vector<double>{}; };
  o.piece_degree = 1;
  o.t_sat = std::numeric_limits<double>::infinity();
  o.sat_value = 0.0;
  o.head_exponent = 0.0;
  (void)delta;
  return o;
}

// k-th primitive V^[k](t) via the Cauchy repeated-integration formula
// V^[k](t) = 1/(k-1)! \int_0^t (t - tau)^{k-1} V(tau) dtau, taken piece
// by piece when the oracle publishes knots.
inline double primitive_tube(const TubeOracle& oracle, int k, double t,
                             bool use_knots = true) {
  if (k < 0) throw UsageError("bad-argument", "level k must be >= 0");
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  if (k == 0) return oracle(t);
  double kfact = 1.0;
  for (int j = 2; j < k; ++j) kfact *= j;
  auto integrand = [&](double tau) {
    return std::pow(t - tau, k - 1) * oracle(tau) / kfact;
  };
  // Knots below head are dropped; that first piece carries at most
  // V(head) * head of mass and is integrated as one panel.
  const double head = t * 1e-10;
  double acc = 0.0;
  if (use_knots && oracle.knots) {
    std::vector<double> cuts = oracle.knots(head, t);
    cuts.push_back(t);
    double lo = 0.0;
    for (double cut : cuts) {
      acc += gl_integrate(integrand, lo, cut, GaussLegendre::order32());
      lo = cut;
    }
  } else {
    acc = adaptive_integrate(integrand, 0.0, t, 1e-12);
  }
  return acc;
}

}  // namespace fzeta
