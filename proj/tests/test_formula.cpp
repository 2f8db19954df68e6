#include "fzeta/formula.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fzeta/catalog.hpp"
#include "fzeta/oracles.hpp"
#include "fzeta/report.hpp"

using fzeta::Cplx;
using fzeta::kPi;

namespace {

TEST(ComplexDimensions, GasketInventory) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("gasket"));
  auto ds = fzeta::complex_dimensions_detailed(z, std::nullopt, 30.0);
  const double D = std::log(3.0) / std::log(2.0);
  const double p = 2.0 * kPi / std::log(2.0);
  bool saw_zero = false;
  int row_count = 0;
  for (const auto& d : ds.dims) {
    EXPECT_EQ(d.order, 1);
    if (std::abs(d.location) < 1e-9) {
      saw_zero = true;
    } else {
      EXPECT_NEAR(d.location.real(), D, 1e-9);
      double k = d.location.imag() / p;
      EXPECT_NEAR(k, std::round(k), 1e-9);
      ++row_count;
    }
  }
  EXPECT_TRUE(saw_zero);
  EXPECT_EQ(row_count, 7);  // k = -3..3 within |Im| <= 30
  // The candidate at s = 1 cancels (zero residue) and is logged.
  ASSERT_EQ(ds.cancelled.size(), 1u);
  EXPECT_NEAR(ds.cancelled[0].location.real(), 1.0, 1e-12);
}

TEST(ComplexDimensions, CantorGraphInventory) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("cantor_graph"));
  auto dims = fzeta::complex_dimensions(z, std::nullopt, 25.0);
  const double D = std::log(2.0) / std::log(3.0);
  const double p = 2.0 * kPi / std::log(3.0);
  bool saw0 = false, saw1 = false;
  for (const auto& d : dims) {
    EXPECT_EQ(d.order, 1);
    if (std::abs(d.location) < 1e-9) saw0 = true;
    else if (std::abs(d.location - Cplx(1, 0)) < 1e-9) saw1 = true;
    else {
      EXPECT_NEAR(d.location.real(), D, 1e-9);
      double k = d.location.imag() / p;
      EXPECT_NEAR(k, std::round(k), 1e-9);
    }
  }
  EXPECT_TRUE(saw0);
  EXPECT_TRUE(saw1);
}

TEST(ComplexDimensions, HalfSquareDoublePole) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("half_square"));
  auto dims = fzeta::complex_dimensions(z, std::nullopt, 20.0);
  const double p = 2.0 * kPi / std::log(2.0);
  for (const auto& d : dims) {
    if (std::abs(d.location - Cplx(1, 0)) < 1e-9) {
      EXPECT_EQ(d.order, 2);
      EXPECT_NEAR(d.principal_part[0].real(), 4.0 / std::log(2.0), 1e-9);
    } else if (std::abs(d.location) > 1e-9) {
      EXPECT_EQ(d.order, 1);
      double k = std::abs(d.location.imag()) / p;
      EXPECT_NEAR(k, std::round(k), 1e-9);
    }
  }
}

TEST(ComplexDimensions, WindowScreenErrors) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("cantor_string"));
  fzeta::Window w;
  w.screen_re = std::log(2.0) / std::log(3.0);  // right through the row
  EXPECT_THROW(fzeta::complex_dimensions(z, w, 20.0), fzeta::NumericError);
  w.screen_re = 0.2;  // strictly between 0 and D
  auto dims = fzeta::complex_dimensions(z, w, 20.0);
  for (const auto& d : dims) EXPECT_GT(d.location.real(), 0.2);
}

TEST(ResidueTerm, SegmentTerms) {
  auto e = fzeta::catalog_entry("segment");
  auto tz = fzeta::catalog_tube_zeta(e);
  auto dims = fzeta::complex_dimensions(tz, std::nullopt, 5.0);
  ASSERT_EQ(dims.size(), 2u);
  double v = 0.0;
  for (const auto& d : dims)
    for (const auto& term : fzeta::residue_term(tz, d, 0))
      v += fzeta::term_value_real(term, 0.25, 1);
  EXPECT_NEAR(v, 1.5, 1e-12);  // 2t + 1 at t = 0.25
}

TEST(ResidueTerm, CantorCollapseMatchesClosedForm) {
  // Simple-pole collapse: term = t^{1-w} res / (1 - w), equal to
  // (2t)^{1-w} / (2 log 3 (1-w) w).
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("cantor_string"));
  const double D = std::log(2.0) / std::log(3.0);
  const double p = 2.0 * kPi / std::log(3.0);
  for (int k : {0, 1, -2}) {
    const Cplx wk(D, p * k);
    fzeta::ComplexDimension dim;
    dim.location = wk;
    dim.order = 1;
    dim.principal_part = {std::pow(2.0, -wk) / (wk * std::log(3.0))};
    auto terms = fzeta::residue_term(z, dim, 0);
    ASSERT_EQ(terms.size(), 1u);
    const double t = 0.07;
    Cplx got;
    fzeta::term_value_real(terms[0], t, 1, &got);
    const Cplx want = std::pow(Cplx(2.0 * t, 0.0), 1.0 - wk) /
                      (2.0 * std::log(3.0) * (1.0 - wk) * wk);
    EXPECT_LE(std::abs(got - want), 1e-12 * std::abs(want));
  }
}

TEST(ResidueTerm, CrossCheckAgainstDirectContour) {
  // Symbolic Laurent x Taylor route vs direct contour quadrature of
  // t^{N-s+k}/(N-s)_{k+1} zeta(s) at sample t.
  for (const char* name : {"cantor_string", "half_square", "cantor_graph"}) {
    auto z = fzeta::catalog_zeta(fzeta::catalog_entry(name));
    auto dims = fzeta::complex_dimensions(z, std::nullopt, 12.0);
    for (int k : {0, 1}) {
      for (const auto& d : dims) {
        auto terms = fzeta::residue_term(z, d, k);
        for (double t : {0.08, 0.7}) {
          Cplx sym{};
          for (const auto& term : terms) {
            Cplx v;
            fzeta::term_value_real(term, t, z.ambient_dim, &v);
            sym += v;
          }
          Cplx direct = fzeta::residue_term_direct(z, d.location, k, t, 0.2);
          EXPECT_LE(std::abs(sym - direct),
                    1e-9 * std::max(1.0, std::abs(direct)))
              << name << " k=" << k << " t=" << t;
        }
      }
    }
  }
}

TEST(ResidueTerm, WeightZeroRejected) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("cantor_string"));
  fzeta::ComplexDimension dim;
  dim.location = {1.0, 0.0};  // s = N for the distance kernel
  dim.order = 1;
  dim.principal_part = {Cplx(1.0, 0.0)};
  EXPECT_THROW(fzeta::residue_term(z, dim, 0), fzeta::Error);
}

TEST(TubeExpansion, SegmentExact) {
  auto e = fzeta::catalog_entry("segment");
  auto tz = fzeta::catalog_tube_zeta(e);
  auto exp = fzeta::tube_expansion(tz, std::nullopt, 0);
  double sup = 0.0;
  for (double t : fzeta::log_spaced(0.02, 1.98, 100)) {
    auto v = fzeta::evaluate_expansion(exp, t, 0);
    sup = std::max(sup, std::abs(v.value - (2.0 * t + 1.0)));
  }
  EXPECT_LE(sup, 1e-12);
}

TEST(TubeExpansion, CantorStringAgainstOracle) {
  auto e = fzeta::catalog_entry("cantor_string");
  auto z = fzeta::catalog_zeta(e);
  auto exp = fzeta::tube_expansion(z, std::nullopt, 0, 200);
  auto oracle = fzeta::oracle_from_string(fzeta::FractalString::cantor());
  for (double t : fzeta::log_spaced(1e-3, 0.4, 20)) {
    auto v = fzeta::evaluate_expansion(exp, t, 200);
    const double o = oracle(t);
    EXPECT_LE(std::abs(v.value - o), 1e-6 + v.tail_bound) << "t=" << t;
    EXPECT_GT(v.tail_bound, 0.0);
  }
}

TEST(TubeExpansion, GasketAgainstExactOracle) {
  auto e = fzeta::catalog_entry("gasket");
  auto z = fzeta::catalog_zeta(e);
  auto exp = fzeta::tube_expansion(z, std::nullopt, 0, 400);
  auto spray = fzeta::catalog_spray(e);
  double sup_rel = 0.0;
  for (double t : fzeta::log_spaced(0.005, 0.28, 25)) {
    auto v = fzeta::evaluate_expansion(exp, t, 400);
    const double o = fzeta::spray_tube_volume(spray, t) + 3.0 * t + kPi * t * t;
    sup_rel = std::max(sup_rel, std::abs(v.value - o) / o);
  }
  EXPECT_LE(sup_rel, 1e-7);
}

TEST(TubeExpansion, ThreeCarpetAgainstExactOracle) {
  auto e = fzeta::catalog_entry("three_carpet");
  auto z = fzeta::catalog_zeta(e);
  auto exp = fzeta::tube_expansion(z, std::nullopt, 0, 400);
  auto spray = fzeta::catalog_spray(e);
  double sup_rel = 0.0;
  for (double t : fzeta::log_spaced(0.004, 0.45, 25)) {
    auto v = fzeta::evaluate_expansion(exp, t, 400);
    const double o = fzeta::spray_tube_volume(spray, t) + 6.0 * t +
                     3.0 * kPi * t * t + 4.0 * kPi * t * t * t / 3.0;
    sup_rel = std::max(sup_rel, std::abs(v.value - o) / o);
  }
  EXPECT_LE(sup_rel, 1e-7);
}

TEST(TubeExpansion, HalfSquareAgainstExactOracle) {
  // Decisive for the catalog normalization: the expansion of the
  // corrected closed form must reproduce the exact spray volume.
  auto e = fzeta::catalog_entry("half_square");
  auto z = fzeta::catalog_zeta(e);
  auto exp = fzeta::tube_expansion(z, std::nullopt, 0, 300);
  auto spray = fzeta::catalog_spray(e);
  double sup_rel = 0.0;
  for (double t : fzeta::log_spaced(0.003, 0.45, 25)) {
    auto v = fzeta::evaluate_expansion(exp, t, 300);
    const double o = fzeta::spray_tube_volume(spray, t);
    sup_rel = std::max(sup_rel, std::abs(v.value - o) / o);
  }
  EXPECT_LE(sup_rel, 1e-7);
}

TEST(TubeExpansion, CantorGraphAgainstExactOracle) {
  auto e = fzeta::catalog_entry("cantor_graph");
  auto z = fzeta::catalog_zeta(e);
  auto exp = fzeta::tube_expansion(z, std::nullopt, 0, 300);
  auto oracle = fzeta::oracle_cantor_graph();
  double sup = 0.0;
  for (double t : fzeta::log_spaced(1e-4, 0.3, 25)) {
    auto v = fzeta::evaluate_expansion(exp, t, 300);
    sup = std::max(sup, std::abs(v.value - oracle(t)) - v.tail_bound);
  }
  EXPECT_LE(sup, 1e-8);
}

TEST(TubeExpansion, WindowedNestAgainstOracle) {
  // a = 2 nest with a vertical screen inside (-1/(2(a+1)), 0): the
  // truncated expansion tracks the exact oracle with an O(t^{2 - sigma})
  // remainder.
  const double a = 2.0;
  auto e = fzeta::catalog_entry("nest", {{"a", a}});
  auto z = fzeta::catalog_zeta(e);
  fzeta::Window w;
  w.screen_re = -1.0 / (4.0 * (a + 1.0));
  auto exp = fzeta::tube_expansion(z, w, 0, 10);
  const double expo = 2.0 - w.screen_re;
  double worst_ratio = 0.0;
  for (double t : fzeta::log_spaced(1e-5, 1e-2, 10)) {
    const double err =
        std::abs(fzeta::evaluate_expansion(exp, t, 10).value -
                 fzeta::nest_tube_volume(a, t));
    worst_ratio = std::max(worst_ratio, err / std::pow(t, expo));
  }
  // the remainder constant is O(1) for this drum
  EXPECT_LE(worst_ratio, 10.0);
}

TEST(TubeExpansion, LevelConsistencyDerivative) {
  // d/dt of the level-(k+1) expansion equals the level-k expansion.
  auto e = fzeta::catalog_entry("cantor_string");
  auto z = fzeta::catalog_zeta(e);
  auto e0 = fzeta::tube_expansion(z, std::nullopt, 0, 150);
  auto e1 = fzeta::tube_expansion(z, std::nullopt, 1, 150);
  std::mt19937 gen(19);
  std::uniform_real_distribution<double> td(0.01, 0.45);
  for (int i = 0; i < 100; ++i) {
    const double t = td(gen);
    const double d1 = fzeta::evaluate_expansion_derivative(e1, t, 150);
    const double v0 = fzeta::evaluate_expansion(e0, t, 150).value;
    EXPECT_LE(std::abs(d1 - v0), 1e-8 * std::max(1.0, std::abs(v0)));
  }
}

TEST(TubeExpansion, ValidityEnforced) {
  auto e = fzeta::catalog_entry("cantor_string");
  auto z = fzeta::catalog_zeta(e);
  auto exp = fzeta::tube_expansion(z, std::nullopt, 0, 10);
  EXPECT_THROW(fzeta::evaluate_expansion(exp, 0.7, 10), fzeta::UsageError);
  EXPECT_THROW(fzeta::evaluate_expansion(exp, -0.1, 10), fzeta::UsageError);
}

TEST(ScreenError, ReconstructionIdentity) {
  // Partial expansion (window) + screen error = oracle value.
  auto e = fzeta::catalog_entry("cantor_string");
  auto z = fzeta::catalog_zeta(e);
  fzeta::Window w;
  w.screen_re = -0.4;
  auto exp = fzeta::tube_expansion(z, w, 0, 500);
  auto oracle = fzeta::oracle_from_string(fzeta::FractalString::cantor());
  const double t = 0.05;
  auto v = fzeta::evaluate_expansion(exp, t, 500);
  auto err = fzeta::screen_error_term(z, w, t, 0, 1e3);
  EXPECT_NEAR(v.value + err.value, oracle(t), 1e-3);
}

TEST(ScreenError, ScalingSlope) {
  // With a screen just right of the pole at 0, the error is governed by
  // the omitted pole and scales like ~ t^{N - sigma + k} within 10%.
  auto e = fzeta::catalog_entry("cantor_string");
  auto z = fzeta::catalog_zeta(e);
  fzeta::Window w;
  w.screen_re = 0.05;
  const double t = 0.08;
  auto e1 = fzeta::screen_error_term(z, w, t, 0, 2e3);
  auto e2 = fzeta::screen_error_term(z, w, t / 2.0, 0, 2e3);
  const double ratio = e1.value / e2.value;
  const double want = std::pow(2.0, 1.0 - w.screen_re);
  EXPECT_NEAR(ratio, want, 0.1 * want);
  // And the omitted pole is indeed what the error carries: res(zeta,0)=-2
  // gives the term -2t at level 0.
  EXPECT_NEAR(e1.value, -2.0 * t, 0.05 * std::abs(2.0 * t));
}

TEST(ScreenError, ZeroFunctionAndLanguidityGuard) {
  fzeta::ZetaHandle zero;
  zero.kind = fzeta::ZetaKind::distance;
  zero.ambient_dim = 1;
  zero.evaluate = [](Cplx) { return Cplx{}; };
  zero.languidity = fzeta::LanguidityProfile::weakly(-1.0);
  fzeta::Window w;
  w.screen_re = -0.5;
  auto err = fzeta::screen_error_term(zero, w, 0.1, 0, 100.0);
  EXPECT_NEAR(err.value, 0.0, 1e-14);
  zero.languidity = fzeta::LanguidityProfile::weakly(2.0);
  EXPECT_THROW(fzeta::screen_error_term(zero, w, 0.1, 0, 100.0),
               fzeta::UsageError);
}

TEST(Report, CantorGraph) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("cantor_graph"));
  auto dims = fzeta::complex_dimensions(z, std::nullopt, 40.0);
  auto rep = fzeta::minkowski_report(z, dims);
  EXPECT_NEAR(rep.dimension, 1.0, 1e-10);
  EXPECT_EQ(rep.measurable, fzeta::Measurability::measurable);
  ASSERT_TRUE(rep.content.has_value());
  EXPECT_NEAR(*rep.content, 2.0, 1e-9);
  EXPECT_EQ(rep.classification, fzeta::Fractality::strictly_subcritical);
  EXPECT_NEAR(rep.subcritical_dimension, std::log(2.0) / std::log(3.0), 1e-9);
  EXPECT_NEAR(rep.subcriticality_index, std::log(2.0) / std::log(3.0), 1e-9);
}

TEST(Report, CantorStringOscillatory) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("cantor_string"));
  auto dims = fzeta::complex_dimensions(z, std::nullopt, 60.0);
  auto rep = fzeta::minkowski_report(z, dims);
  EXPECT_NEAR(rep.dimension, std::log(2.0) / std::log(3.0), 1e-10);
  EXPECT_EQ(rep.measurable, fzeta::Measurability::nonmeasurable_oscillatory);
  EXPECT_EQ(rep.classification, fzeta::Fractality::critical);
  EXPECT_LT(rep.content_lower, rep.content_upper);
  // The oracle extrema of t^{-(1-D)} V(t) over two periods bracket the
  // residue of the tube zeta at D (sandwich property).
  // Sample deep enough that the subleading -2t term is negligible.
  const double D = rep.dimension;
  auto oracle = fzeta::oracle_from_string(fzeta::FractalString::cantor());
  double lo = 1e300, hi = -1e300;
  for (double x = 0.0; x < 2.0; x += 1.0 / 512.0) {
    const double t = 1e-5 * std::pow(3.0, -x);
    const double g = oracle(t) * std::pow(t, D - 1.0);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  auto tz = fzeta::tube_from_distance(z);
  Cplx res_tube =
      fzeta::contour_laurent(tz.evaluate, {D, 0.0}, 0.2, 2).residue();
  EXPECT_GE(res_tube.real(), lo - 1e-6);
  EXPECT_LE(res_tube.real(), hi + 1e-6);
  // The report bounds agree with the oracle extrema (same periodic G).
  EXPECT_NEAR(rep.content_lower, lo, 0.02 * hi);
  EXPECT_NEAR(rep.content_upper, hi, 0.02 * hi);
}

TEST(Report, NestGaugeCase) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("nest", {{"a", 1.0}}));
  auto dims = fzeta::complex_dimensions(z, std::nullopt, 10.0);
  auto rep = fzeta::minkowski_report(z, dims);
  EXPECT_NEAR(rep.dimension, 1.0, 1e-9);
  EXPECT_EQ(rep.measurable, fzeta::Measurability::degenerate_gauge);
  ASSERT_TRUE(rep.gauge_content.has_value());
  EXPECT_NEAR(*rep.gauge_content, 2.0 * kPi, 1e-7);
}

TEST(Report, NestMeasurableBothRegimes) {
  // a = 2: D = 1 governs; content 4 pi zeta(2) - 2 pi.
  {
    auto z = fzeta::catalog_zeta(fzeta::catalog_entry("nest", {{"a", 2.0}}));
    auto dims = fzeta::complex_dimensions(z, std::nullopt, 10.0);
    auto rep = fzeta::minkowski_report(z, dims);
    EXPECT_NEAR(rep.dimension, 1.0, 1e-9);
    ASSERT_TRUE(rep.content.has_value());
    EXPECT_NEAR(*rep.content, 4.0 * kPi * kPi * kPi / 6.0 - 2.0 * kPi, 1e-6);
    EXPECT_EQ(rep.classification, fzeta::Fractality::nonfractal);
  }
  // a = 1/2: D = 4/3 with the closed-form content.
  {
    auto z = fzeta::catalog_zeta(fzeta::catalog_entry("nest", {{"a", 0.5}}));
    auto dims = fzeta::complex_dimensions(z, std::nullopt, 10.0);
    auto rep = fzeta::minkowski_report(z, dims);
    const double D = 4.0 / 3.0;
    EXPECT_NEAR(rep.dimension, D, 1e-9);
    ASSERT_TRUE(rep.content.has_value());
    const double want = std::pow(2.0, 2.0 - D) * D * kPi *
                        std::pow(0.5, D - 1.0) / ((2.0 - D) * (D - 1.0));
    EXPECT_NEAR(*rep.content, want, 1e-6 * want);
  }
}

TEST(Report, ChirpMeasurable) {
  auto z = fzeta::catalog_zeta(
      fzeta::catalog_entry("chirp", {{"alpha", -0.5}, {"beta", 1.0}}));
  auto dims = fzeta::complex_dimensions(z, std::nullopt, 10.0);
  auto rep = fzeta::minkowski_report(z, dims);
  const double D = 1.75;
  EXPECT_NEAR(rep.dimension, D, 1e-9);
  ASSERT_TRUE(rep.content.has_value());
  const double want = std::pow(2.0, 2.0 - D) / ((2.0 - D) * (D - 1.0) * 2.0);
  EXPECT_NEAR(*rep.content, want, 1e-7 * want);
}

TEST(Report, SsNestSubcriticalAtZero) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("ss_nest", {{"a", 0.5}}));
  auto dims = fzeta::complex_dimensions(z, std::nullopt, 40.0);
  auto rep = fzeta::minkowski_report(z, dims);
  EXPECT_NEAR(rep.dimension, 1.0, 1e-9);
  EXPECT_EQ(rep.measurable, fzeta::Measurability::measurable);
  EXPECT_NEAR(*rep.content, 4.0 * kPi / 0.5, 1e-8);
  EXPECT_EQ(rep.classification, fzeta::Fractality::strictly_subcritical);
  EXPECT_NEAR(rep.subcritical_dimension, 0.0, 1e-9);
}

TEST(Report, ThirdSquareClassifier) {
  auto z = fzeta::catalog_zeta(fzeta::catalog_entry("third_square"));
  const double D = std::log(2.0) / std::log(3.0);
  const double p = 2.0 * kPi / std::log(3.0);
  for (int k : {-1, 0, 1}) {
    Cplx res = fzeta::contour_laurent(z.evaluate, Cplx(D, p * k), 0.15, 2)
                   .residue();
    EXPECT_GT(std::abs(res), 1e-6) << "k=" << k;
  }
  auto dims = fzeta::complex_dimensions(z, std::nullopt, 40.0);
  auto rep = fzeta::minkowski_report(z, dims);
  EXPECT_EQ(rep.classification, fzeta::Fractality::strictly_subcritical);
  EXPECT_NEAR(rep.subcritical_dimension, D, 1e-9);
}

TEST(Validate, SegmentStats) {
  auto e = fzeta::catalog_entry("segment");
  auto tz = fzeta::catalog_tube_zeta(e);
  auto exp = fzeta::tube_expansion(tz, std::nullopt, 0);
  auto st = fzeta::validate(exp, fzeta::oracle_segment(2.0),
                            fzeta::log_spaced(0.01, 1.9, 40), 0, 1e-12);
  EXPECT_TRUE(st.passed);
  EXPECT_LE(st.sup_abs, 1e-12);
}

}  // namespace
