#include "fzeta/moran.hpp"

#include <gtest/gtest.h>

#include <cmath>

using fzeta::Cplx;
using fzeta::Rectangle;

namespace {

TEST(MoranRoots, CantorLatticeRow) {
  // 2 * 3^{-s} = 1: roots log_3 2 + 2 pi i k / log 3, all simple.
  const double D = std::log(2.0) / std::log(3.0);
  const double p = 2.0 * fzeta::kPi / std::log(3.0);
  auto roots = fzeta::find_moran_roots({1.0 / 3.0, 1.0 / 3.0},
                                       Rectangle(0.0, 1.0, -20.0, 20.0));
  ASSERT_EQ(roots.size(), 7u);  // k = -3..3 fit in |Im| <= 20
  for (const auto& r : roots) {
    EXPECT_EQ(r.order, 1);
    double k = r.location.imag() / p;
    EXPECT_NEAR(k, std::round(k), 1e-11);
    EXPECT_NEAR(r.location.real(), D, 1e-11);
    // Principal part of 1/(1 - 2*3^{-s}): residue 1/(2^{... } log 3)
    Cplx deriv = std::log(3.0) * std::pow(3.0, -r.location) * 2.0;
    EXPECT_LE(std::abs(r.residue() - 1.0 / deriv), 1e-9);
  }
}

TEST(MoranRoots, BinaryLatticeRow) {
  const double p = 2.0 * fzeta::kPi / std::log(2.0);
  auto roots =
      fzeta::find_moran_roots({0.5, 0.5}, Rectangle(0.0, 2.0, -20.0, 20.0));
  ASSERT_EQ(roots.size(), 5u);  // k = -2..2
  for (const auto& r : roots) {
    EXPECT_NEAR(r.location.real(), 1.0, 1e-11);
    double k = r.location.imag() / p;
    EXPECT_NEAR(k, std::round(k), 1e-11);
    EXPECT_EQ(r.order, 1);
  }
}

TEST(MoranRoots, SingleRatioImaginaryAxis) {
  // a^s = 1 with a = 1/2: roots 2 pi i k / log 2 on the imaginary axis.
  const double p = 2.0 * fzeta::kPi / std::log(2.0);
  auto roots =
      fzeta::find_moran_roots({0.5}, Rectangle(-1.0, 1.0, -30.0, 30.0));
  ASSERT_EQ(roots.size(), 7u);  // k = -3..3
  for (const auto& r : roots) {
    EXPECT_NEAR(r.location.real(), 0.0, 1e-11);
    double k = r.location.imag() / p;
    EXPECT_NEAR(k, std::round(k), 1e-11);
  }
}

TEST(MoranRoots, TwoRowNonEqualRatios) {
  // {1/2, 1/4}: substituting x = 2^{-s} gives x + x^2 = 1, so there are
  // two lattice rows: one through x = (sqrt 5 - 1)/2 on the real axis and
  // one through x = -(sqrt 5 + 1)/2 (offset row at half-integer heights).
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  const double d_main = std::log(1.0 / golden) / std::log(2.0);
  const double d_neg = -std::log((std::sqrt(5.0) + 1.0) / 2.0) / std::log(2.0);
  const double p = 2.0 * fzeta::kPi / std::log(2.0);
  auto roots = fzeta::find_moran_roots({0.5, 0.25},
                                       Rectangle(-2.0, 2.0, -40.0, 40.0));
  int n_main = 0, n_neg = 0;
  for (const auto& r : roots) {
    if (std::abs(r.location.real() - d_main) < 1e-9) {
      ++n_main;
      double k = r.location.imag() / p;
      EXPECT_NEAR(k, std::round(k), 1e-10);
    } else if (std::abs(r.location.real() - d_neg) < 1e-9) {
      ++n_neg;
      double k = r.location.imag() / p - 0.5;
      EXPECT_NEAR(k, std::round(k), 1e-10);
    } else {
      ADD_FAILURE() << "unexpected root at " << r.location.real() << "+"
                    << r.location.imag() << "i";
    }
  }
  EXPECT_EQ(n_main + n_neg, static_cast<int>(roots.size()));
  EXPECT_GE(n_main, 9);
  EXPECT_GE(n_neg, 8);
}

TEST(MoranRoots, ConjugateSymmetry) {
  auto roots = fzeta::find_moran_roots({1.0 / 3.0, 1.0 / 3.0},
                                       Rectangle(0.0, 1.0, -25.0, 25.0));
  for (const auto& r : roots) {
    bool found = false;
    for (const auto& q : roots)
      if (std::abs(q.location - std::conj(r.location)) < 1e-9) found = true;
    EXPECT_TRUE(found);
  }
}

TEST(MoranRoots, SubdivisionStability) {
  // Doubling the implicit subdivision (via two nested rectangles that
  // tile the region) never changes the total count.
  Rectangle whole(0.0, 1.0, -20.0, 20.0);
  auto all = fzeta::find_moran_roots({1.0 / 3.0, 1.0 / 3.0}, whole);
  auto lower = fzeta::find_moran_roots({1.0 / 3.0, 1.0 / 3.0},
                                       Rectangle(0.0, 1.0, -20.0, 0.5));
  auto upper = fzeta::find_moran_roots({1.0 / 3.0, 1.0 / 3.0},
                                       Rectangle(0.0, 1.0, 0.5, 20.0));
  EXPECT_EQ(all.size(), lower.size() + upper.size());
}

TEST(MoranRoots, BadInputs) {
  EXPECT_THROW(fzeta::find_moran_roots({}, Rectangle(0, 1, -1, 1)),
               fzeta::UsageError);
  EXPECT_THROW(fzeta::find_moran_roots({1.5}, Rectangle(0, 1, -1, 1)),
               fzeta::UsageError);
}

TEST(MoranRoots, BoundaryRootDetected) {
  // Root exactly on the boundary Re s = D triggers the boundary error.
  const double D = std::log(2.0) / std::log(3.0);
  EXPECT_THROW(fzeta::find_moran_roots({1.0 / 3.0, 1.0 / 3.0},
                                       Rectangle(D - 1.0, D, -1.0, 1.0)),
               fzeta::NumericError);
}

}  // namespace
