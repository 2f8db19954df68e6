#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"
#include "fzeta/handle.hpp"

namespace fzeta {

// A self-similar spray with one monophase generator G: the inner tube
// volume of (∂G, G) is the polynomial sum_i kappa_i t^{N-i} up to the
// inradius g, and the spray tiles Omega by copies of G scaled by all
// products of the ratio list.
struct SelfSimilarSpray {
  std::vector<double> ratios;   // r_j in (0,1), sum r_j^N < 1
  std::vector<double> kappa;    // kappa_0 .. kappa_{N-1} (t^{N-i} coeffs)
  double generator_volume = 0;  // |G|
  double inradius = 0;          // g
  int ambient_dim = 1;

  void check() const {
    if (ratios.empty()) throw UsageError("bad-ratios", "empty ratio list");
    double rn = 0.0;
    for (double r : ratios) {
      if (!(r > 0.0 && r < 1.0))
        throw UsageError("bad-ratios", "ratios must lie in (0,1)");
      rn += std::pow(r, ambient_dim);
    }
    if (rn >= 1.0)
      throw UsageError("divergent-tail", "sum r_j^N must be < 1");
    if (!(inradius > 0.0)) throw UsageError("bad-argument", "inradius must be positive");
    if (static_cast<int>(kappa.size()) != ambient_dim)
      throw UsageError("bad-argument", "need kappa_0..kappa_{N-1}");
  }

  // Generator polynomial V_G(tau) for tau < g, saturating at |G|.
  double generator_tube(double tau) const {
    if (tau >= inradius) return generator_volume;
    double v = 0.0;
    for (int i = 0; i < ambient_dim; ++i)
      v += kappa[i] * std::pow(tau, ambient_dim - i);
    return v;
  }

  double omega_volume() const {
    double rn = 0.0;
    for (double r : ratios) rn += std::pow(r, ambient_dim);
    return generator_volume / (1.0 - rn);
  }
};

namespace detail {

inline bool spray_is_lattice(const SelfSimilarSpray& spray) {
  for (double r : spray.ratios)
    if (std::abs(r - spray.ratios.front()) > 1e-15) return false;
  return true;
}

}  // namespace detail

// Exact spray tube volume: the finitely many scaling words with
// lambda >= t/g contribute their generator polynomial; everything
// smaller is saturated and sums in closed form through sum r_j^N.
// Equal-ratio (lattice) sprays collapse to one term per level, which
// keeps deep-head evaluations cheap.
inline double spray_tube_volume(const SelfSimilarSpray& spray, double t) {
  spray.check();
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  const int N = spray.ambient_dim;
  double sat_total = spray.omega_volume();
  std::vector<double> power_sums(N, 0.0);  // sum lambda^i over unsaturated
  const double lam_min = t / spray.inradius;
  if (detail::spray_is_lattice(spray)) {
    const double r = spray.ratios.front();
    const double J = static_cast<double>(spray.ratios.size());
    double lam = 1.0, count = 1.0;
    while (lam >= lam_min) {
      for (int i = 0; i < N; ++i) power_sums[i] += count * std::pow(lam, i);
      sat_total -= count * spray.generator_volume * std::pow(lam, N);
      lam *= r;
      count *= J;
    }
  } else {
    std::function<void(double)> dfs = [&](double lam) {
      if (lam < lam_min) return;  // saturated: t/lam >= g
      for (int i = 0; i < N; ++i) power_sums[i] += std::pow(lam, i);
      sat_total -= spray.generator_volume * std::pow(lam, N);
      for (double r : spray.ratios) dfs(lam * r);
    };
    dfs(1.0);
  }
  double v = sat_total;
  for (int i = 0; i < N; ++i)
    v += spray.kappa[i] * std::pow(t, N - i) * power_sums[i];
  return v;
}

// Tube-volume corner points (lambda * g) inside (t_lo, t_hi).
inline std::vector<double> spray_tube_knots(const SelfSimilarSpray& spray,
                                            double t_lo, double t_hi) {
  std::vector<double> knots;
  if (detail::spray_is_lattice(spray)) {
    const double r = spray.ratios.front();
    for (double k = spray.inradius; k > t_lo; k *= r)
      if (k < t_hi) knots.push_back(k);
  } else {
    std::function<void(double)> dfs = [&](double lam) {
      double k = lam * spray.inradius;
      if (k <= t_lo) return;
      if (k < t_hi) knots.push_back(k);
      for (double r : spray.ratios) dfs(lam * r);
    };
    dfs(1.0);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double x, double y) {
                            return std::abs(x - y) < 1e-14 * std::max(x, y);
                          }),
              knots.end());
  return knots;
}

// Distance zeta of the spray RFD: the generator zeta
// zeta_{∂G,G}(s) = (N - s) sum_{i=0}^{N} kappa_i g^{s-i}/(s-i) with
// kappa_N = -|G|, divided by the complexified Moran factor.
inline ZetaHandle spray_zeta(const SelfSimilarSpray& spray) {
  spray.check();
  const int N = spray.ambient_dim;
  const double g = spray.inradius;
  std::vector<double> kap = spray.kappa;
  kap.push_back(-spray.generator_volume);
  const std::vector<double> ratios = spray.ratios;

  auto raw = [N, g, kap, ratios](Cplx s) {
    Cplx gen{};
    for (int i = 0; i <= N; ++i)
      gen += kap[i] * std::pow(Cplx(g, 0.0), s - Cplx(i, 0.0)) / (s - Cplx(i, 0.0));
    gen *= (Cplx(N, 0.0) - s);
    Cplx moran = 1.0;
    for (double r : ratios) moran -= std::pow(Cplx(r, 0.0), s);
    return gen / moran;
  };
  // s = N is removable in the generator factor ((N-s) against the i=N
  // term) unless it is also a Moran root; offset-average there.
  auto eval = [raw, N](Cplx s) {
    return detail::eval_removable(raw, s, {static_cast<double>(N)});
  };

  ZetaHandle h;
  h.name = "spray";
  h.kind = ZetaKind::distance;
  h.evaluate = eval;
  h.ambient_dim = N;
  h.delta = 1.0;
  h.omega_volume = spray.omega_volume();
  h.boundary_volume = h.omega_volume;
  h.delta_cover = g;
  for (int i = 0; i < N; ++i) h.poles.isolated.push_back(Cplx(i, 0.0));
  h.poles.moran_ratios = ratios;
  h.languidity = LanguidityProfile::strongly(0.0, 1.0 / g, 1.0);
  return h;
}

// Scaling zeta function 1/(1 - sum r_j^s) of a ratio list; its poles
// are the scaling complex dimensions.
inline ZetaHandle scaling_zeta_handle(const std::vector<double>& ratios) {
  for (double r : ratios)
    if (!(r > 0.0 && r < 1.0))
      throw UsageError("bad-ratios", "ratios must lie in (0,1)");
  ZetaHandle h;
  h.name = "scaling";
  h.kind = ZetaKind::scaling;
  h.evaluate = [ratios](Cplx s) {
    Cplx acc = 1.0;
    for (double r : ratios) acc -= std::pow(Cplx(r, 0.0), s);
    return 1.0 / acc;
  };
  h.poles.moran_ratios = ratios;
  return h;
}

// Tube zeta of a compact set of positive reach from its Steiner
// polynomial |A_t| = sum_k c_k t^{N-k}, 0 < t < delta < reach.
struct SteinerCoefficients {
  std::vector<double> c;  // c_0 .. c_N
  double delta = 1.0;

  void check(int N) const {
    if (static_cast<int>(c.size()) != N + 1)
      throw UsageError("bad-argument", "need c_0..c_N");
    bool any = false;
    for (double v : c) any = any || v != 0.0;
    if (!any) throw UsageError("bad-argument", "at least one c_k must be nonzero");
    if (!(delta > 0.0)) throw UsageError("bad-argument", "delta must be positive");
  }
};

inline ZetaHandle steiner_tube_zeta(const SteinerCoefficients& sc, int N) {
  sc.check(N);
  const double delta = sc.delta;
  const std::vector<double> c = sc.c;
  ZetaHandle h;
  h.name = "steiner";
  h.kind = ZetaKind::tube;
  h.ambient_dim = N;
  h.delta = delta;
  h.evaluate = [c, delta, N](Cplx s) {
    Cplx acc{};
    for (int k = 0; k <= N; ++k) {
      if (c[k] == 0.0) continue;
      acc += c[k] * std::pow(Cplx(delta, 0.0), s - Cplx(k, 0.0)) / (s - Cplx(k, 0.0));
    }
    return acc;
  };
  double dim = 0.0;
  for (int k = 0; k <= N; ++k)
    if (c[k] != 0.0) {
      h.poles.isolated.push_back(Cplx(k, 0.0));
      dim = k;
    }
  h.upper_dimension = dim;
  double vol = 0.0;  // |A_delta| = sum c_k delta^{N-k}
  for (int k = 0; k <= N; ++k) vol += c[k] * std::pow(delta, N - k);
  h.boundary_volume = vol;
  h.omega_volume = vol;
  h.languidity = LanguidityProfile::strongly(-1.0, 1.0, std::max(1.0, 1.0 / delta));
  h.validity_t_max = delta;
  return h;
}

}  // namespace fzeta
