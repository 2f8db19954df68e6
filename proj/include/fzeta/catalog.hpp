#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"
#include "fzeta/handle.hpp"
#include "fzeta/numerics.hpp"
#include "fzeta/spray.hpp"
#include "fzeta/strings.hpp"

namespace fzeta {

// Catalog entry describing a relative fractal drum: geometry recipe,
// exact parameters, and the metadata the tube formulas need.
struct RfdDescriptor {
  enum class Kind { fractal_string, self_similar_spray, planar_set, steiner_set };

  std::string name;
  int ambient_dim = 1;
  Kind kind = Kind::fractal_string;
  std::map<std::string, double> params;
  double delta = 1.0;
  double omega_volume = 0.0;     // |Omega|
  double boundary_volume = 0.0;  // |A_delta ∩ Omega|
  double delta_cover = 0.0;      // smallest delta with Omega ⊆ A_delta
  double upper_dimension = 0.0;  // D
  LanguidityProfile languidity;
  double validity_t_max = std::numeric_limits<double>::infinity();
  bool whole_set = false;  // true: bounded-set version (A, A_delta)

  double param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end())
      throw UsageError("missing-param", name + " needs parameter '" + key + "'");
    return it->second;
  }
};

inline const char* to_string(RfdDescriptor::Kind k) {
  switch (k) {
    case RfdDescriptor::Kind::fractal_string: return "fractal_string";
    case RfdDescriptor::Kind::self_similar_spray: return "self_similar_spray";
    case RfdDescriptor::Kind::planar_set: return "planar_set";
    case RfdDescriptor::Kind::steiner_set: return "steiner_set";
  }
  return "?";
}

// Corner-sector factor of the 1/3-square zeta:
// Z(s) = \int_0^{pi/2} (cos phi + sin phi)^{-s} dphi.
inline Cplx third_square_corner_integral(Cplx s) {
  auto f = [s](double phi) -> Cplx {
    return std::pow(Cplx(std::cos(phi) + std::sin(phi), 0.0), -s);
  };
  Cplx acc{};
  const int panels = 8;
  for (int p = 0; p < panels; ++p) {
    double a = 0.5 * kPi * p / panels;
    double b = 0.5 * kPi * (p + 1) / panels;
    acc += gl_integrate(f, a, b, GaussLegendre::order32());
  }
  return acc;
}

namespace detail {

inline void check_range(bool ok, const std::string& what) {
  if (!ok) throw UsageError("parameter-range", what);
}

}  // namespace detail

// Spray data for the catalog entries that are self-similar sprays.
inline SelfSimilarSpray catalog_spray(const RfdDescriptor& e) {
  SelfSimilarSpray sp;
  if (e.name == "cantor_spray" || e.name == "cantor_string") {
    sp.ratios = {1.0 / 3.0, 1.0 / 3.0};
    sp.ambient_dim = 1;
    sp.kappa = {2.0};  // V_G(t) = 2t for the gap (0, 1/3)
    sp.generator_volume = 1.0 / 3.0;
    sp.inradius = 1.0 / 6.0;
  } else if (e.name == "square_spray") {
    sp.ratios = {0.5, 0.25};
    sp.ambient_dim = 2;
    sp.kappa = {-4.0, 4.0};  // unit square: V_G(t) = 4t - 4t^2
    sp.generator_volume = 1.0;
    sp.inradius = 0.5;
  } else if (e.name == "gasket") {
    const double s3 = std::sqrt(3.0);
    sp.ratios = {0.5, 0.5, 0.5};
    sp.ambient_dim = 2;
    sp.kappa = {-3.0 * s3, 1.5};  // triangle side 1/2: (3/2)t - 3 sqrt3 t^2
    sp.generator_volume = s3 / 16.0;
    sp.inradius = 1.0 / (4.0 * s3);
  } else if (e.name == "half_square") {
    sp.ratios = {0.5, 0.5};
    sp.ambient_dim = 2;
    sp.kappa = {-8.0, 4.0};  // two squares side 1/2: 4t - 8t^2
    sp.generator_volume = 0.5;
    sp.inradius = 0.25;
  } else if (e.name == "three_carpet") {
    sp.ratios = std::vector<double>(26, 1.0 / 3.0);
    sp.ambient_dim = 3;
    sp.kappa = {8.0, -4.0, 2.0 / 3.0};  // cube side 1/3: (2/3)t - 4t^2 + 8t^3
    sp.generator_volume = 1.0 / 27.0;
    sp.inradius = 1.0 / 6.0;
  } else {
    throw UsageError("unknown-entry", "no spray data for " + e.name);
  }
  sp.check();
  return sp;
}

// Closed-form distance zeta function of a catalog entry.
inline ZetaHandle catalog_zeta(const RfdDescriptor& e) {
  ZetaHandle h;
  h.name = e.name;
  h.kind = ZetaKind::distance;
  h.ambient_dim = e.ambient_dim;
  h.delta = e.delta;
  h.omega_volume = e.omega_volume;
  h.boundary_volume = e.boundary_volume;
  h.delta_cover = e.delta_cover;
  h.upper_dimension = e.upper_dimension;
  h.languidity = e.languidity;
  h.validity_t_max = e.validity_t_max;

  const double delta = e.delta;

  if (e.name == "segment") {
    // zeta_I(s) = 2 delta^s / s; the pole at s = N = 1 cancels.
    h.evaluate = [delta](Cplx s) { return 2.0 * std::pow(Cplx(delta, 0.0), s) / s; };
    h.poles.isolated = {{0.0, 0.0}};
  } else if (e.name == "cantor_string") {
    h.evaluate = [](Cplx s) {
      return std::pow(2.0, 1.0 - s) / (s * (std::pow(3.0, s) - 2.0));
    };
    h.poles.isolated = {{0.0, 0.0}};
    h.poles.rows = {{Cplx(std::log(2.0) / std::log(3.0), 0.0),
                     2.0 * kPi / std::log(3.0)}};
    h.poles.moran_ratios = {1.0 / 3.0, 1.0 / 3.0};
  } else if (e.name == "a_string") {
    const double a = e.param("a");
    detail::check_range(a > 0.0, "a_string needs a > 0");
    h.evaluate = [a](Cplx s) {
      return std::pow(2.0, 1.0 - s) * zeta_Lb(a, 0.0, 0.0, s, 12) / s;
    };
    h.poles.isolated = {{0.0, 0.0}, {1.0 / (a + 1.0), 0.0}};
    for (int m = 1; m <= 3; ++m)
      h.poles.isolated.push_back(Cplx(-m / (a + 1.0), 0.0));
  } else if (e.name == "gasket") {
    const double s3 = std::sqrt(3.0);
    h.evaluate = [s3, delta](Cplx s) {
      return 6.0 * std::pow(Cplx(s3, 0.0), 1.0 - s) * std::pow(2.0, -s) /
                 (s * (s - 1.0) * (std::pow(2.0, s) - 3.0)) +
             2.0 * kPi * std::pow(Cplx(delta, 0.0), s) / s +
             3.0 * std::pow(Cplx(delta, 0.0), s - 1.0) / (s - 1.0);
    };
    h.poles.isolated = {{0.0, 0.0}, {1.0, 0.0}};
    h.poles.rows = {{Cplx(std::log(3.0) / std::log(2.0), 0.0),
                     2.0 * kPi / std::log(2.0)}};
    h.poles.moran_ratios = {0.5, 0.5, 0.5};
  } else if (e.name == "three_carpet") {
    h.evaluate = [delta](Cplx s) {
      return 48.0 * std::pow(2.0, -s) /
                 (s * (s - 1.0) * (s - 2.0) * (std::pow(3.0, s) - 26.0)) +
             4.0 * kPi * std::pow(Cplx(delta, 0.0), s) / s +
             6.0 * kPi * std::pow(Cplx(delta, 0.0), s - 1.0) / (s - 1.0) +
             6.0 * std::pow(Cplx(delta, 0.0), s - 2.0) / (s - 2.0);
    };
    h.poles.isolated = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    h.poles.rows = {{Cplx(std::log(26.0) / std::log(3.0), 0.0),
                     2.0 * kPi / std::log(3.0)}};
  } else if (e.name == "cantor_graph") {
    h.evaluate = [](Cplx s) {
      return 2.0 / (s * (std::pow(3.0, s) - 2.0) * (s - 1.0));
    };
    h.poles.isolated = {{0.0, 0.0}, {1.0, 0.0}};
    h.poles.rows = {{Cplx(std::log(2.0) / std::log(3.0), 0.0),
                     2.0 * kPi / std::log(3.0)}};
  } else if (e.name == "half_square") {
    // Spray closed form 2^{4-s}/(s(s-1)(2^s-2)); double pole at s = 1.
    h.evaluate = [](Cplx s) {
      return std::pow(2.0, 4.0 - s) / (s * (s - 1.0) * (std::pow(2.0, s) - 2.0));
    };
    h.poles.isolated = {{0.0, 0.0}};
    h.poles.rows = {{Cplx(1.0, 0.0), 2.0 * kPi / std::log(2.0)}};
    h.poles.moran_ratios = {0.5, 0.5};
  } else if (e.name == "third_square") {
    h.evaluate = [](Cplx s) {
      return 2.0 / (s * (std::pow(3.0, s) - 2.0)) *
             (6.0 / (s - 1.0) + third_square_corner_integral(s));
    };
    h.poles.isolated = {{0.0, 0.0}, {1.0, 0.0}};
    h.poles.rows = {{Cplx(std::log(2.0) / std::log(3.0), 0.0),
                     2.0 * kPi / std::log(3.0)}};
    h.poles.moran_ratios = {1.0 / 3.0, 1.0 / 3.0};
  } else if (e.name == "ss_nest") {
    const double a = e.param("a");
    detail::check_range(a > 0.0 && a < 1.0, "ss_nest needs a in (0,1)");
    h.evaluate = [a](Cplx s) {
      return std::pow(2.0, 2.0 - s) * kPi * (1.0 + a) *
                 std::pow(Cplx(1.0 - a, 0.0), s - 1.0) /
                 ((s - 1.0) * (1.0 - std::pow(Cplx(a, 0.0), s))) +
             2.0 * kPi / (s - 1.0) + 2.0 * kPi / s;
    };
    h.poles.isolated = {{1.0, 0.0}};
    h.poles.rows = {{Cplx(0.0, 0.0), 2.0 * kPi / std::log(1.0 / a)}};
    h.poles.moran_ratios = {a};
  } else if (e.name == "nest") {
    const double a = e.param("a");
    detail::check_range(a > 0.0, "nest needs a > 0");
    h.evaluate = [a](Cplx s) {
      return std::pow(2.0, 3.0 - s) * kPi / (s - 1.0) * zeta_Lb(a, -a, 1.0, s, 12) -
             std::pow(2.0, 2.0 - s) * kPi / (s - 1.0) * zeta_Lb(a, 0.0, 0.0, s, 12);
    };
    h.poles.isolated = {{1.0, 0.0}, {2.0 / (a + 1.0), 0.0}, {1.0 / (a + 1.0), 0.0}};
    for (int m = 1; m <= 2; ++m) {
      h.poles.isolated.push_back(Cplx((1.0 - m) / (a + 1.0), 0.0));
      h.poles.isolated.push_back(Cplx(-static_cast<double>(m) / (a + 1.0), 0.0));
    }
  } else if (e.name == "chirp") {
    const double alpha = e.param("alpha"), beta = e.param("beta");
    detail::check_range(alpha > -1.0 && alpha < 0.0 && beta > 0.0,
                        "chirp needs -1 < alpha < 0 < beta");
    const double astr = 1.0 / beta, b = -alpha / beta;
    h.evaluate = [astr, b](Cplx s) {
      return std::pow(2.0, 2.0 - s) / (s - 1.0) * zeta_Lb(astr, b, 1.0, s, 12);
    };
    const double D = 2.0 - (1.0 + alpha) / (1.0 + beta);
    h.poles.isolated = {{1.0, 0.0}, {D, 0.0}};
    for (int m = 1; m <= 2; ++m)
      h.poles.isolated.push_back(
          Cplx(2.0 - (1.0 + alpha + m * beta) / (1.0 + beta), 0.0));
  } else if (e.name == "cantor_spray" || e.name == "square_spray") {
    ZetaHandle sh = spray_zeta(catalog_spray(e));
    h.evaluate = sh.evaluate;
    h.poles = sh.poles;
  } else {
    throw UsageError("unknown-entry", "no catalog zeta for '" + e.name + "'");
  }
  return h;
}

// Native tube zeta where the entry has one (Steiner-type geometry);
// everything else goes through the functional equation.
inline ZetaHandle catalog_tube_zeta(const RfdDescriptor& e) {
  if (e.name == "segment") {
    SteinerCoefficients sc;
    sc.c = {2.0, 1.0};  // |I_t| = 2t + 1
    sc.delta = e.delta;
    ZetaHandle h = steiner_tube_zeta(sc, 1);
    h.name = e.name;
    h.languidity = e.languidity;
    h.validity_t_max = e.validity_t_max;
    h.upper_dimension = e.upper_dimension;
    h.delta_cover = e.delta_cover;
    return h;
  }
  return tube_from_distance(catalog_zeta(e));
}

// Parameter-dependent metadata that must track an override of `params`.
inline void refresh_descriptor(RfdDescriptor& e);

// Built-in catalog with the parameters and metadata used throughout.
inline std::vector<RfdDescriptor> catalog() {
  std::vector<RfdDescriptor> cat;
  const double s3 = std::sqrt(3.0);

  {
    RfdDescriptor e;
    e.name = "segment";
    e.ambient_dim = 1;
    e.kind = RfdDescriptor::Kind::steiner_set;
    e.delta = 2.0;
    e.omega_volume = 5.0;  // |I_delta| = 1 + 2 delta
    e.boundary_volume = 5.0;
    e.delta_cover = 2.0;
    e.upper_dimension = 1.0;
    e.languidity = LanguidityProfile::strongly(-1.0, 1.0, 1.0);
    e.whole_set = true;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "cantor_string";
    e.ambient_dim = 1;
    e.kind = RfdDescriptor::Kind::fractal_string;
    e.delta = 1.0;
    e.omega_volume = 1.0;
    e.boundary_volume = 1.0;
    e.delta_cover = 1.0 / 6.0;
    e.upper_dimension = std::log(2.0) / std::log(3.0);
    e.languidity = LanguidityProfile::strongly(-1.0, 2.0, 1.0);
    e.validity_t_max = 0.5;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "a_string";
    e.ambient_dim = 1;
    e.kind = RfdDescriptor::Kind::fractal_string;
    e.params["a"] = 1.0;
    e.delta = 1.0;
    e.omega_volume = 1.0;
    e.boundary_volume = 1.0;
    e.delta_cover = 0.5;
    e.upper_dimension = 0.5;  // recomputed per a on override
    e.languidity = LanguidityProfile::weakly(-0.5);
    e.validity_t_max = 1.0;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "gasket";
    e.ambient_dim = 2;
    e.kind = RfdDescriptor::Kind::planar_set;
    e.delta = 1.0;
    e.omega_volume = s3 / 4.0 + 3.0 + kPi;  // |A_1|
    e.boundary_volume = e.omega_volume;
    e.delta_cover = 1.0;
    e.upper_dimension = std::log(3.0) / std::log(2.0);
    e.languidity = LanguidityProfile::strongly(-1.0, 2.0 * s3, 1.0);
    e.validity_t_max = 1.0 / (2.0 * s3);
    e.whole_set = true;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "three_carpet";
    e.ambient_dim = 3;
    e.kind = RfdDescriptor::Kind::planar_set;
    e.delta = 0.5;
    // |A_delta| = 1 + 6 d + 3 pi d^2 + (4 pi / 3) d^3 at d = 1/2
    e.omega_volume = 1.0 + 3.0 + 3.0 * kPi / 4.0 + kPi / 6.0;
    e.boundary_volume = e.omega_volume;
    e.delta_cover = 0.5;
    e.upper_dimension = std::log(26.0) / std::log(3.0);
    e.languidity = LanguidityProfile::strongly(-1.0, 2.0, 1.0);
    e.validity_t_max = 0.5;
    e.whole_set = true;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "cantor_graph";
    e.ambient_dim = 2;
    e.kind = RfdDescriptor::Kind::planar_set;
    e.delta = 1.0;
    e.omega_volume = 1.0 / 7.0;
    e.boundary_volume = 1.0 / 7.0;
    e.delta_cover = 1.0;
    e.upper_dimension = 1.0;
    e.languidity = LanguidityProfile::strongly(-2.0, 1.0, 1.0);
    e.validity_t_max = 1.0;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "half_square";
    e.ambient_dim = 2;
    e.kind = RfdDescriptor::Kind::self_similar_spray;
    e.delta = 1.0;
    e.omega_volume = 1.0;
    e.boundary_volume = 1.0;
    e.delta_cover = 0.25;
    e.upper_dimension = 1.0;
    e.languidity = LanguidityProfile::strongly(-1.0, 2.0, 1.0);
    e.validity_t_max = 0.5;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "third_square";
    e.ambient_dim = 2;
    e.kind = RfdDescriptor::Kind::self_similar_spray;
    e.delta = 1.0;
    e.omega_volume = 1.0;
    e.boundary_volume = 1.0;
    e.delta_cover = 0.35;
    e.upper_dimension = 1.0;
    e.languidity = LanguidityProfile::strongly(-1.0, std::sqrt(2.0), 1.0);
    e.validity_t_max = 1.0 / std::sqrt(2.0);
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "ss_nest";
    e.ambient_dim = 2;
    e.kind = RfdDescriptor::Kind::planar_set;
    e.params["a"] = 0.5;
    e.delta = 1.0;
    e.omega_volume = 4.0 * kPi;  // |A_1| for the set version
    e.boundary_volume = 4.0 * kPi;
    e.delta_cover = 1.0;
    e.upper_dimension = 1.0;
    e.languidity = LanguidityProfile::strongly(-1.0, 2.0, 1.0);
    e.validity_t_max = 0.5;  // recomputed per a on override
    e.whole_set = true;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "nest";
    e.ambient_dim = 2;
    e.kind = RfdDescriptor::Kind::planar_set;
    e.params["a"] = 2.0;
    e.delta = 1.0;
    e.omega_volume = kPi;
    e.boundary_volume = kPi;
    e.delta_cover = 0.5;
    e.upper_dimension = 1.0;  // recomputed per a on override
    e.languidity = LanguidityProfile::weakly(-0.5);
    e.validity_t_max = 1.0;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "chirp";
    e.ambient_dim = 2;
    e.kind = RfdDescriptor::Kind::planar_set;
    e.params["alpha"] = -0.5;
    e.params["beta"] = 1.0;
    e.delta = 1.0;
    e.omega_volume = 0.0;  // filled by fixup below
    e.boundary_volume = 0.0;
    e.delta_cover = 0.5;
    e.upper_dimension = 1.75;
    e.languidity = LanguidityProfile::weakly(-0.5);
    e.validity_t_max = 1.0;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "cantor_spray";
    e.ambient_dim = 1;
    e.kind = RfdDescriptor::Kind::self_similar_spray;
    e.delta = 1.0;
    e.omega_volume = 1.0;
    e.boundary_volume = 1.0;
    e.delta_cover = 1.0 / 6.0;
    e.upper_dimension = std::log(2.0) / std::log(3.0);
    e.languidity = LanguidityProfile::strongly(0.0, 2.0, 1.0);
    e.validity_t_max = 0.5;
    cat.push_back(e);
  }
  {
    RfdDescriptor e;
    e.name = "square_spray";
    e.ambient_dim = 2;
    e.kind = RfdDescriptor::Kind::self_similar_spray;
    e.delta = 1.0;
    e.omega_volume = 16.0 / 11.0;  // |G| / (1 - 1/4 - 1/16)
    e.boundary_volume = 16.0 / 11.0;
    e.delta_cover = 0.5;
    // The generator boundary (dimension N-1 = 1) dominates the Moran
    // root log_2((sqrt 5 + 1)/2) ~ 0.694 for this drum.
    e.upper_dimension = 1.0;
    e.languidity = LanguidityProfile::strongly(0.0, 2.0, 1.0);
    e.validity_t_max = 0.25;
    cat.push_back(e);
  }
  for (auto& e : cat) refresh_descriptor(e);
  return cat;
}

inline void refresh_descriptor(RfdDescriptor& e) {
  if (e.name == "a_string") {
    const double a = e.param("a");
    e.upper_dimension = 1.0 / (a + 1.0);
    e.delta_cover = 0.5 * (1.0 - std::pow(2.0, -a));
  } else if (e.name == "nest") {
    const double a = e.param("a");
    e.upper_dimension = std::max(1.0, 2.0 / (a + 1.0));
    e.delta_cover = 0.5 * (1.0 - std::pow(2.0, -a));
  } else if (e.name == "ss_nest") {
    const double a = e.param("a");
    e.upper_dimension = 1.0;
    double lam = (a <= 0.5) ? 2.0 : 2.0 * (1.0 - a) / a;
    e.languidity = LanguidityProfile::strongly(-1.0, lam, 1.0);
    e.validity_t_max = std::min(0.5, a / (2.0 * (1.0 - a)));
  } else if (e.name == "chirp") {
    const double alpha = e.param("alpha"), beta = e.param("beta");
    e.upper_dimension = 2.0 - (1.0 + alpha) / (1.0 + beta);
    // |Omega| = sum_j h_j l_j, evaluated through the continued series.
    e.omega_volume = zeta_Lb(1.0 / beta, -alpha / beta, 0.0, Cplx(1.0, 0.0)).real();
    e.boundary_volume = e.omega_volume;
  }
}

inline RfdDescriptor catalog_entry(
    const std::string& name,
    const std::map<std::string, double>& overrides = {}) {
  for (RfdDescriptor e : catalog()) {
    if (e.name != name) continue;
    for (const auto& [k, v] : overrides) {
      if (e.params.find(k) == e.params.end())
        throw UsageError("missing-param",
                         "entry '" + name + "' has no parameter '" + k + "'");
      e.params[k] = v;
    }
    refresh_descriptor(e);
    return e;
  }
  throw UsageError("unknown-entry", "no catalog entry named '" + name + "'");
}

}  // namespace fzeta
