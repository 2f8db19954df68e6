#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"
#include "fzeta/formula.hpp"
#include "fzeta/handle.hpp"
#include "fzeta/oracles.hpp"

namespace fzeta {

enum class Measurability { measurable, nonmeasurable_oscillatory, degenerate_gauge };
enum class Fractality { critical, strictly_subcritical, nonfractal };

inline const char* to_string(Measurability m) {
  switch (m) {
    case Measurability::measurable: return "measurable";
    case Measurability::nonmeasurable_oscillatory: return "nonmeasurable_oscillatory";
    case Measurability::degenerate_gauge: return "degenerate_gauge";
  }
  return "?";
}

inline const char* to_string(Fractality f) {
  switch (f) {
    case Fractality::critical: return "critical";
    case Fractality::strictly_subcritical: return "strictly_subcritical";
    case Fractality::nonfractal: return "nonfractal";
  }
  return "?";
}

struct DimensionReport {
  double dimension = 0.0;  // D = max Re omega
  double content_lower = 0.0;
  double content_upper = 0.0;
  std::optional<double> content;        // set when measurable
  Measurability measurable = Measurability::measurable;
  std::optional<double> gauge_content;  // t^{N-D} log(1/t) coefficient
  Fractality classification = Fractality::nonfractal;
  double subcritical_dimension = 0.0;   // d for strictly_subcritical
  double subcriticality_index = -std::numeric_limits<double>::infinity();
};

// Minkowski dimension / content / fractality verdicts from the visible
// complex dimensions. Content conversions depend on the handle kind:
// distance-kind residues carry the (N - D) factor, tube-kind do not.
inline DimensionReport minkowski_report(const ZetaHandle& z,
                                        const std::vector<ComplexDimension>& dims) {
  if (dims.empty())
    throw UsageError("insufficient-dims", "no complex dimensions supplied");
  const int N = z.ambient_dim;
  DimensionReport rep;
  double D = -std::numeric_limits<double>::infinity();
  for (const auto& d : dims) D = std::max(D, d.location.real());
  rep.dimension = D;

  auto content_factor = [&](const ComplexDimension& d) -> double {
    if (z.kind == ZetaKind::distance) return N - d.location.real();
    return 1.0;
  };

  std::vector<const ComplexDimension*> at_D;
  bool nonreal_at_D = false;
  for (const auto& d : dims) {
    if (std::abs(d.location.real() - D) < 1e-9) {
      at_D.push_back(&d);
      if (std::abs(d.location.imag()) > 1e-9) nonreal_at_D = true;
    }
  }

  const ComplexDimension* lead = nullptr;
  for (const auto* d : at_D)
    if (std::abs(d->location.imag()) < 1e-9) lead = d;

  if (!lead)
    throw UsageError("insufficient-dims", "no real dimension on the critical line");

  if (!nonreal_at_D && lead->order == 1) {
    rep.measurable = Measurability::measurable;
    const double c = lead->residue().real() / content_factor(*lead);
    rep.content = c;
    rep.content_lower = rep.content_upper = c;
  } else if (lead->order >= 2) {
    rep.measurable = Measurability::degenerate_gauge;
    // t^{N-D} log(1/t) coefficient of the level-0 expansion
    const Cplx c2 = lead->principal_part[lead->order - 2];  // c_{-2}
    rep.gauge_content = c2.real() / content_factor(*lead);
    rep.content_lower = rep.content_upper =
        std::numeric_limits<double>::infinity();
  } else {
    rep.measurable = Measurability::nonmeasurable_oscillatory;
    // Bounds of the 1-periodic leading function G sampled over one period.
    double p_min = std::numeric_limits<double>::infinity();
    for (const auto* d : at_D)
      if (d->location.imag() > 1e-9)
        p_min = std::min(p_min, d->location.imag());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    const int samples = 4096;
    for (int i = 0; i < samples; ++i) {
      const double L = 2.0 * kPi / p_min * i / samples;  // log(1/t) offset
      double g = 0.0;
      for (const auto* d : at_D) {
        const Cplx r = d->residue() / (z.kind == ZetaKind::distance
                                           ? (Cplx(N, 0.0) - d->location)
                                           : Cplx(1.0, 0.0));
        g += (r * std::exp(Cplx(0.0, d->location.imag()) * L)).real();
      }
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    rep.content_lower = lo;
    rep.content_upper = hi;
  }

  // Fractality classification from the nonreal dimension inventory.
  double alpha = -std::numeric_limits<double>::infinity();
  for (const auto& d : dims)
    if (std::abs(d.location.imag()) > 1e-9)
      alpha = std::max(alpha, d.location.real());
  rep.subcriticality_index = alpha;
  if (nonreal_at_D) {
    rep.classification = Fractality::critical;
    rep.subcritical_dimension = D;
  } else if (std::isfinite(alpha)) {
    rep.classification = Fractality::strictly_subcritical;
    rep.subcritical_dimension = alpha;
  } else {
    rep.classification = Fractality::nonfractal;
  }
  return rep;
}

struct ValidationStats {
  std::vector<double> t;
  std::vector<double> formula;
  std::vector<double> oracle;
  std::vector<double> abs_err;
  std::vector<double> rel_err;
  std::vector<double> tail_bound;
  double sup_abs = 0.0;
  double sup_rel = 0.0;
  bool passed = false;
};

// Formula-vs-oracle comparison over a t grid.
inline ValidationStats validate(const TubeExpansion& exp, const TubeOracle& oracle,
                                const std::vector<double>& t_grid, int K,
                                double abs_tol,
                                double rel_tol = std::numeric_limits<double>::infinity()) {
  ValidationStats st;
  for (double t : t_grid) {
    auto v = evaluate_expansion(exp, t, K);
    const double o = oracle(t);
    st.t.push_back(t);
    st.formula.push_back(v.value);
    st.oracle.push_back(o);
    st.abs_err.push_back(std::abs(v.value - o));
    st.rel_err.push_back(std::abs(v.value - o) / std::max(std::abs(o), 1e-300));
    st.tail_bound.push_back(v.tail_bound);
    st.sup_abs = std::max(st.sup_abs, st.abs_err.back());
    st.sup_rel = std::max(st.sup_rel, st.rel_err.back());
  }
  st.passed = st.sup_abs <= abs_tol || st.sup_rel <= rel_tol;
  return st;
}

inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
  return out;
}

}  // namespace fzeta
