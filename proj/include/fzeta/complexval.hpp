#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "fzeta/errors.hpp"

namespace fzeta {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline bool is_finite(const Cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(const Cplx& z, const char* where) {
  if (!is_finite(z)) throw NumericError("nonfinite-value", where);
}

// A pole of a meromorphic function together with its order and the
// principal-part coefficients c_{-order}, ..., c_{-1}.
struct ComplexDimension {
  Cplx location{};
  int order = 1;
  std::vector<Cplx> principal_part;  // c_{-order} first, c_{-1} last

  Cplx residue() const {
    return principal_part.empty() ? Cplx{} : principal_part.back();
  }
};

// Axis-aligned search region in the s-plane.
struct Rectangle {
  double re_min = 0.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;

  Rectangle() = default;
  Rectangle(double re_lo, double re_hi, double im_lo, double im_hi)
      : re_min(re_lo), re_max(re_hi), im_min(im_lo), im_max(im_hi) {
    if (!(re_min < re_max) || !(im_min < im_max))
      throw UsageError("bad-rectangle", "rectangle bounds must be ordered");
  }

  bool contains(const Cplx& z, double margin = 0.0) const {
    return z.real() > re_min + margin && z.real() < re_max - margin &&
           z.imag() > im_min + margin && z.imag() < im_max - margin;
  }
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
};

}  // namespace fzeta
