#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fzeta/complexval.hpp"
#include "fzeta/errors.hpp"

namespace fzeta {

// Nodes/weights of n-point Gauss-Legendre on [-1, 1], computed once via
// Newton iteration on the Legendre recurrence.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;

  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double p0 = 0, p1 = 0;
      for (int it = 0; it < 100; ++it) {
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
        }
        double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
        double dx = p0 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
      x[i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }

  static const GaussLegendre& order16() {
    static const GaussLegendre g(16);
    return g;
  }
  static const GaussLegendre& order32() {
    static const GaussLegendre g(32);
    return g;
  }
};

template <typename F>
auto gl_integrate(const F& f, double a, double b, const GaussLegendre& g)
    -> decltype(f(0.0)) {
  using R = decltype(f(0.0));
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  R acc{};
  for (std::size_t i = 0; i < g.x.size(); ++i)
    acc += g.w[i] * f(mid + half * g.x[i]);
  return half * acc;
}

// Adaptive quadrature by interval bisection with 16/32-point Gauss
// comparison on each panel.
template <typename F>
auto adaptive_integrate(const F& f, double a, double b, double rel_tol,
                        double abs_tol = 0.0, int max_depth = 40)
    -> decltype(f(0.0)) {
  using R = decltype(f(0.0));
  struct Panel {
    double a, b;
    int depth;
  };
  std::vector<Panel> stack{{a, b, 0}};
  R total{};
  double scale = 0.0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    R coarse = gl_integrate(f, p.a, p.b, GaussLegendre::order16());
    R fine = gl_integrate(f, p.a, p.b, GaussLegendre::order32());
    double err = std::abs(fine - coarse);
    scale = std::max(scale, std::abs(fine));
    if (err <= rel_tol * std::max(scale, 1e-300) + abs_tol || p.depth >= max_depth) {
      if (p.depth >= max_depth && err > 1e3 * (rel_tol * scale + abs_tol))
        throw NumericError("quadrature-failure",
                           "adaptive panel refinement stalled");
      total += fine;
    } else {
      double m = 0.5 * (p.a + p.b);
      stack.push_back({p.a, m, p.depth + 1});
      stack.push_back({m, p.b, p.depth + 1});
    }
  }
  return total;
}

// Truncated power-series helpers (coefficient vectors, index = power).
inline std::vector<Cplx> series_mul(const std::vector<Cplx>& a,
                                    const std::vector<Cplx>& b,
                                    std::size_t n_keep) {
  std::vector<Cplx> c(n_keep, Cplx{});
  for (std::size_t i = 0; i < a.size() && i < n_keep; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n_keep; ++j)
      c[i + j] += a[i] * b[j];
  return c;
}

inline std::vector<Cplx> series_reciprocal(const std::vector<Cplx>& a,
                                           std::size_t n_keep) {
  if (a.empty() || std::abs(a[0]) == 0.0)
    throw NumericError("series-division", "reciprocal of series with zero constant term");
  std::vector<Cplx> r(n_keep, Cplx{});
  r[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < n_keep; ++k) {
    Cplx acc{};
    for (std::size_t j = 1; j <= k; ++j)
      if (j < a.size()) acc += a[j] * r[k - j];
    r[k] = -acc / a[0];
  }
  return r;
}

// Least squares for a tiny column basis via normal equations with
// Gaussian elimination; adequate for the 2-3 parameter fits used here.
inline std::vector<double> least_squares(
    const std::vector<std::vector<double>>& columns,
    const std::vector<double>& rhs) {
  const std::size_t m = columns.size();
  const std::size_t n = rhs.size();
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += columns[i][k] * columns[j][k];
      a[i][j] = s;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += columns[i][k] * rhs[k];
    a[i][m] = s;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    if (std::abs(a[col][col]) < 1e-300)
      throw NumericError("singular-fit", "degenerate least-squares system");
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = a[i][m] / a[i][i];
  return out;
}

}  // namespace fzeta
