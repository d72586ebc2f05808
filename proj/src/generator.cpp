#include "rnda/generator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

namespace rnda {

GeneratorFunction normal_generator(AlgebraDim dim) {
  const double b = dim.beta();
  GeneratorFunction g;
  g.name = "normal";
  g.h = [b](double u) { return std::exp(-0.5 * b * u); };
  g.derivative = [b](int j, double v) {
    if (j < 0) throw std::invalid_argument("derivative order must be nonnegative");
    return std::pow(-0.5 * b, j) * std::exp(-0.5 * b * v);
  };
  g.log_radial_closed_form = [b](double a) {
    return (0.5 * a - 1.0) * std::log(2.0) - 0.5 * a * std::log(b) + std::lgamma(0.5 * a);
  };
  return g;
}

double radial_integral_log(const GeneratorFunction& h, double a) {
  if (!h.h) throw std::invalid_argument("generator has no evaluation function");
  for (double v : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
    if (h.h(v) < 0.0) {
      throw std::invalid_argument("generator is negative at u^2 = " + std::to_string(v));
    }
  }

  boost::math::quadrature::exp_sinh<double> integrator;
  // Evaluated in log space: the plain product u^{a-1} h(u^2) turns into
  // inf * 0 = NaN far out in the tail once a is large.
  auto f = [&h, a](double u) {
    if (u <= 0.0) {
      if (a > 1.0) return 0.0;
      if (a == 1.0) return h.h(0.0);
      return std::numeric_limits<double>::infinity();
    }
    const double hv = h.h(u * u);
    if (hv <= 0.0) return 0.0;
    return std::exp((a - 1.0) * std::log(u) + std::log(hv));
  };
  double error = 0.0;
  double value = 0.0;
  try {
    value = integrator.integrate(f, 1e-13, &error);
  } catch (const std::exception&) {
    throw std::domain_error("radial integral of the generator does not converge");
  }
  if (!std::isfinite(value) || value <= 0.0 ||
      error > 1e-7 * std::max(std::abs(value), 1e-300)) {
    throw std::domain_error("radial integral of the generator does not converge");
  }
  return std::log(value);
}

EllipticalConstant elliptical_constant_log(const GeneratorFunction& h, int m, double n,
                                           AlgebraDim dim) {
  if (m <= 0 || n <= 0) throw std::invalid_argument("dimensions must be positive");
  const double a = dim.beta() * static_cast<double>(m) * n;
  const double radial =
      h.log_radial_closed_form ? h.log_radial_closed_form(a) : radial_integral_log(h, a);
  const double half = 0.5 * a;
  return {std::lgamma(half) - std::log(2.0) - half * std::log(M_PI) - radial};
}

}  // namespace rnda
