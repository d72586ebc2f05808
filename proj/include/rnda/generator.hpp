#pragma once

#include <functional>
#include <string>

#include "rnda/special.hpp"

namespace rnda {

/// Radial generator of a matrix-variate elliptical family. Values are
/// immutable after construction and evaluation is pure. The derivative member
/// must be an exact oracle for h^(j) (j = 0 returns h itself): the density
/// series consume high even derivative orders, where numerical
/// differentiation is hopeless, so none is attempted outside tests.
struct GeneratorFunction {
  std::string name;
  std::function<double(double)> h;
  std::function<double(int, double)> derivative;

  /// Optional exact log of the radial integral
  /// integral_0^inf u^{a-1} h(u^2) du as a function of the exponent a.
  /// When absent the normalizing constant falls back to quadrature.
  std::function<double(double)> log_radial_closed_form;
};

/// Normalizing constant of the elliptical family, in log space.
struct EllipticalConstant {
  double log_c = 0.0;
};

/// Gaussian member of the family: h(u) = exp(-beta u / 2), whose derivatives
/// and radial integral are available in closed form.
[[nodiscard]] GeneratorFunction normal_generator(AlgebraDim dim);

/// log of integral_0^inf u^{a-1} h(u^2) du by adaptive quadrature on the half
/// line. Throws std::domain_error when the integral diverges and
/// std::invalid_argument when h takes negative values on the sample grid.
[[nodiscard]] double radial_integral_log(const GeneratorFunction& h, double a);

/// log C(m, n) = log Gamma(beta m n / 2) - log 2 - (beta m n / 2) log pi
///             - log integral_0^inf u^{beta m n - 1} h(u^2) du.
/// Uses the generator's closed-form radial integral when it has one, else
/// quadrature. Degrees of freedom n may be fractional.
[[nodiscard]] EllipticalConstant elliptical_constant_log(const GeneratorFunction& h, int m,
                                                         double n, AlgebraDim dim);

}  // namespace rnda
