#pragma once

#include <complex>
#include <span>
#include <vector>

namespace glotbench {

using Complex = std::complex<double>;

/// All roots of c[0] z^d + c[1] z^(d-1) + ... + c[d].
///
/// Leading zeros are dropped (they only lower the degree), trailing zeros
/// become exact roots at the origin. The remaining roots are eigenvalues
/// of the balanced companion matrix, refined by a few safeguarded Newton
/// steps in extended precision. Throws zero_polynomial when every
/// coefficient is zero and invalid_parameter for fewer than 2 coefficients.
std::vector<Complex> polynomial_roots(std::span<const double> coeffs);

/// Coefficients (highest degree first, monic) of prod (z - r).
std::vector<Complex> poly_from_roots(std::span<const Complex> roots);

/// Horner evaluation, highest degree first.
Complex poly_eval(std::span<const double> coeffs, Complex z);

/// Parlett-Reinsch balancing: a diagonal similarity that equalises row
/// and column norms; eigenvalues are unchanged.
template <class Matrix>
void balance_matrix(Matrix& a) {
  constexpr double radix = 2.0;
  const auto n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (decltype(a.rows()) i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (decltype(a.rows()) j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace glotbench
