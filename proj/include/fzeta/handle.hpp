#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"

namespace fzeta {

enum class ZetaKind { distance, tube, shell, mellin, geometric_string, scaling };

inline const char* to_string(ZetaKind k) {
  switch (k) {
    case ZetaKind::distance: return "distance";
    case ZetaKind::tube: return "tube";
    case ZetaKind::shell: return "shell";
    case ZetaKind::mellin: return "mellin";
    case ZetaKind::geometric_string: return "geometric_string";
    case ZetaKind::scaling: return "scaling";
  }
  return "?";
}

// Growth metadata along screens: kappa is the polynomial exponent, and
// strong handles additionally satisfy the exponential bound with constant
// B after scaling the drum by scale_lambda.
struct LanguidityProfile {
  double kappa = 0.0;
  bool strong = false;
  double scale_lambda = 1.0;
  std::optional<double> B_constant;

  static LanguidityProfile strongly(double kappa, double lambda, double B) {
    return LanguidityProfile{kappa, true, lambda, B};
  }
  static LanguidityProfile weakly(double kappa) {
    return LanguidityProfile{kappa, false, 1.0, std::nullopt};
  }

  void check() const {
    if (strong && !B_constant)
      throw UsageError("bad-languidity", "strong languidity requires B");
  }
};

// A vertical lattice of candidate poles: base + i * period * k.
struct PoleRow {
  Cplx base{};
  double period = 0.0;
};

// Candidate pole structure attached to a handle; complex_dimensions
// refines every candidate numerically and discards cancellations.
struct PoleHints {
  std::vector<Cplx> isolated;
  std::vector<PoleRow> rows;
  std::vector<double> moran_ratios;  // poles of 1/(1 - sum r_j^s) factors
};

// An evaluatable meromorphic fractal zeta function plus the drum metadata
// the tube formulas need.
struct ZetaHandle {
  std::string name;
  ZetaKind kind = ZetaKind::distance;
  std::function<Cplx(Cplx)> evaluate;
  int ambient_dim = 1;
  double delta = 1.0;
  double boundary_volume = 0.0;  // |A_delta ∩ Omega| at this delta
  double omega_volume = 0.0;     // |Omega|
  double delta_cover = 0.0;      // smallest delta with Omega ⊆ A_delta
  double upper_dimension = 0.0;  // abscissa of convergence
  PoleHints poles;
  LanguidityProfile languidity;
  // Largest t for which the exact expansion is known to hold; infinity
  // when unrestricted.
  double validity_t_max = std::numeric_limits<double>::infinity();
  std::optional<std::pair<double, double>> holomorphy_strip;  // mellin kind

  Cplx operator()(Cplx s) const { return evaluate(s); }
};

namespace detail {

// Evaluate f at s, replacing values within 1e-6 of a removable point by
// the two-sided offset average.
inline Cplx eval_removable(const std::function<Cplx(Cplx)>& f, Cplx s,
                           const std::vector<double>& removable) {
  for (double p : removable) {
    if (std::abs(s - Cplx(p, 0.0)) < 1e-6) {
      const Cplx h(1e-6, 0.0);
      return 0.5 * (f(Cplx(p, 0.0) + h) + f(Cplx(p, 0.0) - h));
    }
  }
  return f(s);
}

}  // namespace detail

// zeta(s; delta) = delta^{s-N} |A_delta ∩ Omega| + (N - s) zeta~(s; delta),
// applied tube -> distance.
inline ZetaHandle distance_from_tube(const ZetaHandle& tz) {
  if (tz.kind != ZetaKind::tube)
    throw UsageError("bad-kind", "distance_from_tube expects a tube handle");
  ZetaHandle out = tz;
  out.kind = ZetaKind::distance;
  const double N = tz.ambient_dim, delta = tz.delta, vol = tz.boundary_volume;
  auto base = tz.evaluate;
  out.evaluate = [base, N, delta, vol](Cplx s) {
    return std::pow(delta, s - N) * vol + (N - s) * base(s);
  };
  return out;
}

// The same functional equation, distance -> tube. The point s = N is
// removable exactly when the stored |A_delta ∩ Omega| matches zeta(N).
inline ZetaHandle tube_from_distance(const ZetaHandle& dz) {
  if (dz.kind != ZetaKind::distance)
    throw UsageError("bad-kind", "tube_from_distance expects a distance handle");
  ZetaHandle out = dz;
  out.kind = ZetaKind::tube;
  const double N = dz.ambient_dim, delta = dz.delta, vol = dz.boundary_volume;
  auto base = dz.evaluate;
  auto raw = [base, N, delta, vol](Cplx s) {
    return (base(s) - std::pow(delta, s - N) * vol) / (N - s);
  };
  out.evaluate = [raw, N](Cplx s) {
    return detail::eval_removable(raw, s, {N});
  };
  // s = N becomes a candidate pole; it survives refinement only when the
  // distance zeta value at N disagrees with the boundary volume (D = N
  // degenerate geometries such as the segment).
  out.poles.isolated.push_back(Cplx(N, 0.0));
  return out;
}

// Shell zeta: zeta_breve(s) = zeta(s) / (N - s), with a simple pole at N
// of residue -|A_delta ∩ Omega|.
inline ZetaHandle shell_from_distance(const ZetaHandle& dz) {
  if (dz.kind != ZetaKind::distance)
    throw UsageError("bad-kind", "shell_from_distance expects a distance handle");
  ZetaHandle out = dz;
  out.kind = ZetaKind::shell;
  const double N = dz.ambient_dim;
  auto base = dz.evaluate;
  out.evaluate = [base, N](Cplx s) { return base(s) / (N - s); };
  out.poles.isolated.push_back(Cplx(N, 0.0));
  return out;
}

// Mellin zeta: the same formula, valid once delta is large enough that
// Omega ⊆ A_delta; declared holomorphy strip (D, N).
inline ZetaHandle mellin_from_distance(const ZetaHandle& dz) {
  if (dz.kind != ZetaKind::distance)
    throw UsageError("bad-kind", "mellin_from_distance expects a distance handle");
  if (dz.upper_dimension >= dz.ambient_dim)
    throw UsageError("bad-dimension",
                     "mellin zeta requires upper dimension < ambient dimension");
  if (dz.delta < dz.delta_cover - 1e-12)
    throw UsageError("delta-too-small",
                     "catalog delta does not cover Omega (Omega ⊄ A_delta)");
  ZetaHandle out = shell_from_distance(dz);
  out.kind = ZetaKind::mellin;
  out.holomorphy_strip = {dz.upper_dimension, static_cast<double>(dz.ambient_dim)};
  return out;
}

// lambda^s zeta(s): the zeta function of the drum scaled by lambda, with
// delta and the volumes rescaled accordingly.
inline ZetaHandle scale_zeta(const ZetaHandle& dz, double lambda) {
  if (dz.kind != ZetaKind::distance)
    throw UsageError("bad-kind", "scale_zeta expects a distance handle");
  if (!(lambda > 0.0)) throw UsageError("bad-argument", "lambda must be positive");
  ZetaHandle out = dz;
  const double N = dz.ambient_dim;
  auto base = dz.evaluate;
  out.evaluate = [base, lambda](Cplx s) {
    return std::pow(lambda, s) * base(s);
  };
  out.delta = dz.delta * lambda;
  out.delta_cover = dz.delta_cover * lambda;
  out.boundary_volume = dz.boundary_volume * std::pow(lambda, N);
  out.omega_volume = dz.omega_volume * std::pow(lambda, N);
  out.validity_t_max = dz.validity_t_max * lambda;
  out.name = dz.name + "*" + std::to_string(lambda);
  return out;
}

}  // namespace fzeta
