#pragma once

#include <functional>
#include <span>

namespace boolmodel {

/// Value of a definite integral with its estimated absolute error.
struct Integral {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;

  Integral& operator+=(const Integral& o) {
    value += o.value;
    error += o.error;
    converged = converged && o.converged;
    return *this;
  }
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (31 points) on [a, b], split at the interior
/// breakpoints given, to the absolute tolerance tol.
Integral integrate(const Integrand& f, double a, double b, double tol = 1e-12,
                   std::span<const double> breaks = {});

/// Tanh-sinh quadrature, for integrands with endpoint singularities.
Integral integrate_endpoint_singular(const Integrand& f, double a, double b, double tol = 1e-12);

/// Gauss-Legendre with order doubled (10, 20, 40, 80) until two successive
/// results differ by at most tol; falls back to bisection after that.
Integral gauss_legendre(const Integrand& f, double a, double b, double tol = 1e-12, int depth = 0);

}  // namespace boolmodel
