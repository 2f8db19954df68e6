#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fzeta/catalog.hpp"
#include "fzeta/oracles.hpp"
#include "fzeta/planar.hpp"

using fzeta::FractalString;
using fzeta::kPi;

namespace {

TEST(StringOracle, CantorValues) {
  auto c = FractalString::cantor();
  EXPECT_NEAR(fzeta::string_tube_volume(c, 1.0 / 6.0), 1.0, 1e-15);
  EXPECT_NEAR(fzeta::string_tube_volume(c, 1.0 / 18.0), 7.0 / 9.0, 1e-15);
  EXPECT_NEAR(fzeta::string_tube_volume(c, 0.4), 1.0, 1e-15);  // t >= l1/2
}

TEST(StringOracle, AStringValues) {
  auto s = FractalString::a_string_of(1.0);
  // 2t = 0.4 saturates every gap except l_1 = 1/2.
  EXPECT_NEAR(fzeta::string_tube_volume(s, 0.2), 0.9, 1e-14);
  EXPECT_NEAR(fzeta::string_tube_volume(s, 0.3), 1.0, 1e-14);
  // direct summation oracle at a smaller t (tail telescopes exactly)
  const double t = 1e-3;
  const long J = 2000000;
  double direct = 0.0;
  for (long j = 1; j <= J; ++j)
    direct += std::min(fzeta::a_string_length(1.0, j), 2.0 * t);
  direct += std::pow(static_cast<double>(J + 1), -1.0);
  EXPECT_NEAR(fzeta::string_tube_volume(s, t), direct, 1e-12);
}

TEST(StringOracle, MonotoneAndBounded) {
  for (auto str : {FractalString::cantor(), FractalString::a_string_of(2.0)}) {
    double prev = 0.0;
    for (double t = 1e-5; t < 1.0; t *= 1.7) {
      double v = fzeta::string_tube_volume(str, t);
      EXPECT_GE(v + 1e-15, prev);
      EXPECT_LE(v, str.total_length() + 1e-15);
      prev = v;
    }
  }
}

TEST(StringOracle, ScalingCovariance) {
  auto c = FractalString::cantor();
  auto c3 = c.scaled(3.0);
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> td(1e-4, 0.4);
  for (int i = 0; i < 30; ++i) {
    double t = td(gen);
    EXPECT_NEAR(fzeta::string_tube_volume(c3, t),
                3.0 * fzeta::string_tube_volume(c, t / 3.0), 1e-13);
  }
}

TEST(SprayOracle, MatchesStringOnCantor) {
  fzeta::SelfSimilarSpray sp;
  sp.ratios = {1.0 / 3.0, 1.0 / 3.0};
  sp.ambient_dim = 1;
  sp.kappa = {2.0};
  sp.generator_volume = 1.0 / 3.0;
  sp.inradius = 1.0 / 6.0;
  auto c = FractalString::cantor();
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> td(1e-4, 0.5);
  for (int i = 0; i < 50; ++i) {
    double t = td(gen);
    EXPECT_NEAR(fzeta::spray_tube_volume(sp, t),
                fzeta::string_tube_volume(c, t), 1e-12);
  }
  EXPECT_NEAR(fzeta::spray_tube_volume(sp, 1.0 / 18.0), 7.0 / 9.0, 1e-14);
}

TEST(SprayOracle, SaturationAndErrors) {
  fzeta::SelfSimilarSpray sp;
  sp.ratios = {0.5, 0.25};
  sp.ambient_dim = 2;
  sp.kappa = {-4.0, 4.0};
  sp.generator_volume = 1.0;
  sp.inradius = 0.5;
  // t >= g: the lambda = 1 word contributes exactly |G|.
  double v = fzeta::spray_tube_volume(sp, 0.6);
  EXPECT_NEAR(v, sp.omega_volume(), 1e-12);  // everything saturated
  fzeta::SelfSimilarSpray bad = sp;
  bad.ratios = {0.9, 0.9};
  EXPECT_THROW(fzeta::spray_tube_volume(bad, 0.1), fzeta::UsageError);
}

TEST(CantorGraphOracle, Values) {
  EXPECT_NEAR(fzeta::cantor_graph_tube_volume(0.4), 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(fzeta::cantor_graph_tube_volume(1.0 / 3.0), 1.0 / 7.0, 1e-15);
  // continuity across the saturation knot
  EXPECT_NEAR(fzeta::cantor_graph_tube_volume(1.0 / 3.0 - 1e-12),
              fzeta::cantor_graph_tube_volume(1.0 / 3.0 + 1e-12), 1e-10);
  // small-t leading behavior ~ 2t
  const double t = 1e-7;
  EXPECT_NEAR(fzeta::cantor_graph_tube_volume(t) / t, 2.0, 0.02);
  // brute-force cross-check at a generic t
  const double tb = 0.017;
  double direct = 0.0;
  for (int k = 1; k < 60; ++k) {
    double tau = std::pow(3.0, k) * tb;
    double v = tau < 1.0 ? tau - 0.5 * tau * tau : 0.5;
    direct += std::pow(2.0 / 9.0, k) * v;
  }
  EXPECT_NEAR(fzeta::cantor_graph_tube_volume(tb), direct, 1e-15);
}

TEST(NestOracle, ValuesAndMonotone) {
  const double a = 2.0;
  // saturation: everything merges once l_1 <= 2t
  EXPECT_NEAR(fzeta::nest_tube_volume(a, 0.5), kPi, 1e-14);
  // brute force with explicit interval merging
  auto brute = [&](double t) {
    std::vector<std::pair<double, double>> iv;
    for (long k = 1; k < 400000; ++k) {
      double r = std::pow(static_cast<double>(k), -a);
      iv.push_back({std::max(0.0, r - t), std::min(1.0, r + t)});
      if (r + t < iv.back().second + 1e-18 && r < t) break;
      if (r < 0.25 * t) break;
    }
    iv.push_back({0.0, std::min(1.0, std::pow(static_cast<double>(400000), -a) + t)});
    std::sort(iv.begin(), iv.end());
    double area = 0.0, lo = -1.0, hi = -1.0;
    for (auto& [l, h] : iv) {
      if (l > hi) {
        if (hi > lo) area += hi * hi - lo * lo;
        lo = l;
        hi = h;
      } else {
        hi = std::max(hi, h);
      }
    }
    if (hi > lo) area += hi * hi - lo * lo;
    return kPi * area;
  };
  for (double t : {0.2, 0.05, 0.01, 0.003}) {
    EXPECT_NEAR(fzeta::nest_tube_volume(a, t), brute(t), 1e-11) << "t=" << t;
  }
  double prev = 0.0;
  for (double t = 1e-5; t < 1.0; t *= 1.5) {
    double v = fzeta::nest_tube_volume(a, t);
    EXPECT_GE(v + 1e-14, prev);
    EXPECT_LE(v, kPi + 1e-14);
    prev = v;
  }
}

TEST(ChirpOracle, MatchesDirectSummation) {
  // alpha = -1/2, beta = 1: rectangle areas are sqrt(j)/(j(j+1)), whose
  // tail past J is 2/sqrt(J) + O(J^{-3/2}) (integral comparison).
  const double alpha = -0.5, beta = 1.0;
  auto o = fzeta::oracle_chirp(alpha, beta);
  const long J = 40000000L;
  double omega = 0.0;
  for (long j = 1; j <= J; ++j)
    omega += std::sqrt(static_cast<double>(j)) * fzeta::a_string_length(1.0, j);
  const double tail = 2.0 / std::sqrt(static_cast<double>(J));
  EXPECT_NEAR(o.sat_value, omega + tail, 1e-7);
  for (double t : {0.01, 0.003}) {
    double direct = 0.0;
    for (long j = 1; j <= J; ++j)
      direct += std::sqrt(static_cast<double>(j)) *
                std::min(fzeta::a_string_length(1.0, j), 2.0 * t);
    EXPECT_NEAR(o(t), direct + tail, 1e-7) << "t=" << t;
  }
}

TEST(PrimitiveTube, SegmentAndCantor) {
  auto seg = fzeta::oracle_segment(2.0);
  EXPECT_NEAR(fzeta::primitive_tube(seg, 1, 1.0), 2.0, 1e-12);
  EXPECT_NEAR(fzeta::primitive_tube(seg, 0, 0.25), 1.5, 0.0);
  auto c = fzeta::oracle_from_string(FractalString::cantor());
  double piecewise = fzeta::primitive_tube(c, 1, 1.0 / 18.0, true);
  double adaptive = fzeta::primitive_tube(c, 1, 1.0 / 18.0, false);
  EXPECT_NEAR(piecewise, adaptive, 1e-10);
  // level-2 primitive via two different routes
  double p2 = fzeta::primitive_tube(c, 2, 0.05, true);
  double a2 = fzeta::primitive_tube(c, 2, 0.05, false);
  EXPECT_NEAR(p2, a2, 1e-10);
}

TEST(PlanarDistance, SegmentAndGasket) {
  EXPECT_NEAR(fzeta::dist_point_segment({0.5, 0.1}, {0, 0}, {1, 0}), 0.1, 1e-15);
  // gasket vertex
  EXPECT_NEAR(fzeta::gasket_distance(0.0, 0.0, 10), 0.0, 1e-12);
  // incenter of the removed middle triangle: inradius of a side-1/2
  // equilateral triangle
  const double s3 = std::sqrt(3.0);
  EXPECT_NEAR(fzeta::gasket_distance(0.5, s3 / 6.0, 10), 1.0 / (4.0 * s3), 1e-12);
  // outside the outer triangle
  EXPECT_NEAR(fzeta::gasket_distance(0.5, -0.2, 10), 0.2, 1e-13);
}

TEST(PlanarDistance, SquaresAndNest) {
  EXPECT_NEAR(fzeta::half_square_distance(0.25, 0.75, 12), 0.25, 1e-13);
  EXPECT_NEAR(fzeta::half_square_distance(0.1, 0.6, 12), 0.1, 1e-13);
  const double s2 = std::sqrt(2.0);
  EXPECT_NEAR(fzeta::third_square_distance(0.5, 0.5, 12), s2 / 6.0, 1e-13);
  // nest: min over bracketing radii, brute-force comparison
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> rd(0.01, 0.99);
  for (int i = 0; i < 40; ++i) {
    double r = rd(gen);
    double brute = r;
    for (long k = 1; k < 4000; ++k)
      brute = std::min(brute, std::abs(r - std::pow(static_cast<double>(k), -1.5)));
    EXPECT_NEAR(fzeta::nest_distance(r, 0.0, 1.5), brute, 1e-13);
  }
}

TEST(PlanarDistance, Carpet3) {
  EXPECT_NEAR(fzeta::carpet3_distance(0.5, 0.5, 0.5, 6), 1.0 / 6.0, 1e-13);
  EXPECT_NEAR(fzeta::carpet3_distance(-0.1, 0.5, 0.5, 6), 0.1, 1e-13);
  // (0.05)^3 sits inside the middle cube (1/27, 2/27)^3 of the corner
  // subcube, at distance 0.05 - 1/27 from its wall.
  EXPECT_NEAR(fzeta::carpet3_distance(0.05, 0.05, 0.05, 6), 0.05 - 1.0 / 27.0,
              1e-13);
  // a point on the carpet itself
  EXPECT_NEAR(fzeta::carpet3_distance(1.0 / 3.0, 0.2, 0.7, 6), 0.0, 1e-13);
}

TEST(PixelOracle, SegmentStadium) {
  fzeta::PlanarRecipe r;
  r.shape = "segment";
  auto res = fzeta::pixel_tube_volume(r, 0.1, 1, 512);
  const double want = 2.0 * 0.1 * 1.0 + kPi * 0.01;
  EXPECT_NEAR(res.value, want, res.bound + 2e-4);
}

TEST(PixelOracle, BoundShrinksWithResolution) {
  fzeta::PlanarRecipe r;
  r.shape = "segment";
  auto lo = fzeta::pixel_tube_volume(r, 0.1, 1, 256);
  auto hi = fzeta::pixel_tube_volume(r, 0.1, 1, 512);
  EXPECT_GE(lo.bound / hi.bound, 1.8);
}

TEST(PixelOracle, GasketAgainstExactSpray) {
  fzeta::PlanarRecipe r;
  r.shape = "gasket";
  r.depth = 8;
  auto sp = fzeta::catalog_spray(fzeta::catalog_entry("gasket"));
  for (double t : {0.05, 0.1}) {
    auto px = fzeta::pixel_tube_volume(r, t, 8, 512);
    double exact = fzeta::spray_tube_volume(sp, t) + 3.0 * t + kPi * t * t;
    EXPECT_NEAR(px.value, exact, 0.02 * exact) << "t=" << t;
  }
}

TEST(PixelOracle, CoarseResolutionRejected) {
  fzeta::PlanarRecipe r;
  r.shape = "segment";
  EXPECT_THROW(fzeta::pixel_tube_volume(r, 0.01, 1, 128), fzeta::UsageError);
}

}  // namespace
