#include "glotbench/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "glotbench/error.hpp"

namespace glotbench {

namespace {

using LComplex = std::complex<long double>;

// p(z) and p'(z) for |z| <= 1, or for the reversed polynomial at w = 1/z
// otherwise; both keep Horner's recurrence well scaled.
struct Eval {
  LComplex value;
  LComplex deriv;
};

Eval horner(std::span<const long double> c, LComplex z) {
  LComplex p = 0.0L, d = 0.0L;
  for (long double a : c) {
    d = d * z + p;
    p = p * z + a;
  }
  return {p, d};
}

// Logarithmic derivative p'(z)/p(z). Outside the unit circle it is taken
// from the reversed polynomial at w = 1/z so Horner stays well scaled.
LComplex log_deriv(std::span<const long double> fwd, std::span<const long double> rev,
                   LComplex z) {
  const auto n = static_cast<long double>(fwd.size() - 1);
  if (std::abs(z) <= 1.0L) {
    const Eval e = horner(fwd, z);
    return e.deriv / e.value;
  }
  const LComplex w = 1.0L / z;
  const Eval e = horner(rev, w);
  return n * w - w * w * e.deriv / e.value;
}

// Snaps near-real roots onto the axis and averages each upper root with
// its nearest lower partner, so the result is exactly conjugate-closed.
// Leaves the roots untouched when the two halves do not match up.
void enforce_conjugates(std::vector<LComplex>& z) {
  std::vector<LComplex> upper, lower, real;
  for (const LComplex& r : z) {
    const long double tau = 1e-10L * std::max(std::abs(r), 1e-300L);
    if (r.imag() > tau) {
      upper.push_back(r);
    } else if (r.imag() < -tau) {
      lower.push_back(r);
    } else {
      real.emplace_back(r.real(), 0.0L);
    }
  }
  if (upper.size() != lower.size()) return;
  std::vector<LComplex> out = real;
  for (const LComplex& u : upper) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < lower.size(); ++j) {
      if (std::abs(std::conj(lower[j]) - u) < std::abs(std::conj(lower[best]) - u)) best = j;
    }
    const LComplex m = 0.5L * (u + std::conj(lower[best]));
    lower.erase(lower.begin() + static_cast<long>(best));
    out.push_back(m);
    out.push_back(std::conj(m));
  }
  z = std::move(out);
}

// Aberth-Ehrlich refinement in extended precision. The repulsion term keeps
// clustered roots apart, and the starting points are nudged off the real
// axis so a pair the eigensolver returned as two reals can still split into
// a conjugate pair.
void polish(std::span<const double> coeffs, std::vector<Complex>& roots) {
  const std::vector<long double> fwd(coeffs.begin(), coeffs.end());
  const std::vector<long double> rev(fwd.rbegin(), fwd.rend());
  std::vector<LComplex> z;
  z.reserve(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const long double turn = 1e-7L * static_cast<long double>(i + 1);
    z.push_back(LComplex(roots[i].real(), roots[i].imag()) *
                LComplex(std::cos(turn), std::sin(turn)));
  }
  const long double tiny = 64.0L * std::numeric_limits<long double>::epsilon();
  for (int sweep = 0; sweep < 200; ++sweep) {
    long double largest = 0.0L;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const LComplex ratio = log_deriv(fwd, rev, z[i]);
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) continue;
      LComplex repulsion = 0.0L;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) repulsion += 1.0L / (z[i] - z[j]);
      }
      const LComplex step = 1.0L / (ratio - repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      largest = std::max(largest, std::abs(step) / std::max(std::abs(z[i]), 1e-300L));
      z[i] -= step;
    }
    if (largest < tiny) break;
  }
  enforce_conjugates(z);
  roots.clear();
  for (const LComplex& r : z) {
    roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  }
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const double> coeffs) {
  if (coeffs.size() < 2) {
    throw Error(ErrorKind::invalid_parameter, "polynomial_roots: degree must be >= 1");
  }
  std::size_t first = 0;
  while (first < coeffs.size() && coeffs[first] == 0.0) ++first;
  if (first == coeffs.size()) {
    throw Error(ErrorKind::zero_polynomial, "polynomial_roots: all coefficients are zero");
  }
  std::size_t last = coeffs.size();
  while (coeffs[last - 1] == 0.0) --last;
  const std::size_t zeros_at_origin = coeffs.size() - last;
  const auto c = coeffs.subspan(first, last - first);
  const auto degree = static_cast<Eigen::Index>(c.size() - 1);

  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(degree) + zeros_at_origin);
  if (degree == 1) {
    roots.emplace_back(-c[1] / c[0], 0.0);
  } else if (degree > 1) {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (Eigen::Index j = 0; j < degree; ++j) {
      companion(0, j) = -c[static_cast<std::size_t>(j) + 1] / c[0];
    }
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    balance_matrix(companion);

    // The companion matrix is already upper Hessenberg, and balancing by a
    // diagonal similarity keeps it so.
    Eigen::RealSchur<Eigen::MatrixXd> schur(degree);
    schur.setMaxIterations(200 * degree);
    schur.computeFromHessenberg(companion, Eigen::MatrixXd::Identity(degree, degree), false);
    if (schur.info() != Eigen::Success) {
      throw Error(ErrorKind::degenerate_frame, "polynomial_roots: QR iteration did not converge");
    }
    const Eigen::MatrixXd& t = schur.matrixT();
    for (Eigen::Index i = 0; i < degree;) {
      if (i == degree - 1 || t(i + 1, i) == 0.0) {
        roots.emplace_back(t(i, i), 0.0);
        ++i;
        continue;
      }
      const double p = 0.5 * (t(i, i) - t(i + 1, i + 1));
      const double disc = p * p + t(i + 1, i) * t(i, i + 1);
      const double centre = t(i + 1, i + 1) + p;
      if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        roots.emplace_back(centre + s, 0.0);
        roots.emplace_back(centre - s, 0.0);
      } else {
        const double s = std::sqrt(-disc);
        roots.emplace_back(centre, s);
        roots.emplace_back(centre, -s);
      }
      i += 2;
    }
    polish(c, roots);
  }
  roots.insert(roots.end(), zeros_at_origin, Complex(0.0, 0.0));
  return roots;
}

std::vector<Complex> poly_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

Complex poly_eval(std::span<const double> coeffs, Complex z) {
  Complex p = 0.0;
  for (double a : coeffs) p = p * z + a;
  return p;
}

}  // namespace glotbench
