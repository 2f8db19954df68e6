#pragma once

#include <cmath>
#include <limits>

#include "fzeta/catalog.hpp"
#include "fzeta/oracles.hpp"
#include "fzeta/planar.hpp"

namespace fzeta {

// Exact tube volume of the self-similar-nest set (A, A_1): circles of
// radii a^k plus the outer collar past r = 1.
inline double ss_nest_tube_volume(double a, double t) {
  if (!(t > 0.0)) throw UsageError("bad-argument", "t must be positive");
  double inner;
  const double gap1 = 1.0 - a;  // largest gap between radii 1 and a
  if (gap1 <= 2.0 * t) {
    inner = 1.0;  // everything inside r = 1 is covered
  } else {
    // last k with gap a^{k-1}(1-a) > 2t
    const long kstar = static_cast<long>(
        std::floor(std::log(gap1 / (2.0 * t)) / std::log(1.0 / a))) + 1;
    double acc = 1.0 - (1.0 - t) * (1.0 - t);  // outermost circle, inner side
    for (long k = 2; k <= kstar; ++k) acc += 4.0 * t * std::pow(a, k - 1);
    const double rin = std::pow(a, kstar) + t;
    acc += rin * rin;
    inner = acc;
  }
  return kPi * (inner + (1.0 + t) * (1.0 + t) - 1.0);
}

// Tube oracle for a catalog entry. Set-variant entries measure |A_t|
// including the outer collar, clamped at delta for the Mellin range.
inline TubeOracle entry_oracle(const RfdDescriptor& e) {
  if (e.name == "segment") return oracle_segment(e.delta);
  if (e.name == "cantor_string" || e.name == "cantor_spray")
    return oracle_from_string(FractalString::cantor());
  if (e.name == "a_string")
    return oracle_from_string(FractalString::a_string_of(e.param("a")));
  if (e.name == "square_spray" || e.name == "half_square")
    return oracle_from_spray(catalog_spray(e));
  if (e.name == "cantor_graph") return oracle_cantor_graph();
  if (e.name == "nest") return oracle_nest(e.param("a"));
  if (e.name == "chirp") return oracle_chirp(e.param("alpha"), e.param("beta"));
  if (e.name == "gasket" || e.name == "three_carpet") {
    // spray interior + outer collar of the convex hull, clamped at delta
    const SelfSimilarSpray spray = catalog_spray(e);
    const double delta = e.delta;
    const int N = e.ambient_dim;
    auto collar = [N](double t) {
      return N == 2 ? 3.0 * t + kPi * t * t
                    : 6.0 * t + 3.0 * kPi * t * t + 4.0 * kPi * t * t * t / 3.0;
    };
    TubeOracle sp = oracle_from_spray(spray);
    TubeOracle o;
    o.value = [sp, collar, delta](double t) {
      const double tc = std::min(t, delta);
      return sp(tc) + collar(tc);
    };
    o.knots = [sp, delta](double lo, double hi) {
      auto ks = sp.knots(lo, std::min(hi, delta));
      if (delta > lo && delta < hi) ks.push_back(delta);
      std::sort(ks.begin(), ks.end());
      return ks;
    };
    o.piece_degree = N;
    o.t_sat = delta;
    o.sat_value = o.value(delta);
    o.head_exponent = sp.head_exponent;
    return o;
  }
  if (e.name == "ss_nest") {
    const double a = e.param("a");
    const double delta = e.delta;
    TubeOracle o;
    o.value = [a, delta](double t) {
      return ss_nest_tube_volume(a, std::min(t, delta));
    };
    o.knots = [a, delta](double lo, double hi) {
      std::vector<double> ks;
      const double gap1 = 1.0 - a;
      for (long k = 1; k < 100000; ++k) {
        double knot = 0.5 * gap1 * std::pow(a, k - 1);
        if (knot <= lo) break;
        if (knot < hi) ks.push_back(knot);
      }
      if (delta > lo && delta < hi) ks.push_back(delta);
      std::sort(ks.begin(), ks.end());
      return ks;
    };
    o.piece_degree = 2;
    o.t_sat = delta;
    o.sat_value = o.value(delta);
    o.head_exponent = 1.0;
    return o;
  }
  if (e.name == "third_square") {
    // No closed-form tube volume; back the oracle with the pixel field.
    TubeOracle o;
    o.value = [](double t) {
      const int res = std::max(768, static_cast<int>(std::ceil(8.0 / t)));
      PlanarRecipe r;
      r.shape = "third_square";
      r.depth = prefractal_depth(t, 1.0 / 3.0);
      return pixel_tube_volume(r, t, r.depth, res).value;
    };
    o.piece_degree = 2;
    o.t_sat = std::numeric_limits<double>::infinity();
    o.head_exponent = 1.0;
    return o;
  }
  throw UsageError("unknown-entry", "no oracle for '" + e.name + "'");
}

}  // namespace fzeta
