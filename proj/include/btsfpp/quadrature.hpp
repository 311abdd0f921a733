#pragma once

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "btsfpp/errors.hpp"

namespace btsfpp {

/// Adaptive integral over a finite interval; tanh-sinh handles integrable
/// endpoint singularities (e.g. the Lomax mixing density near p = 0).
template <typename F>
double integrate_finite(const F& f, double a, double b, double tol = 1e-10) {
    if (!(a < b))
        throw std::invalid_argument("integrate_finite: requires a < b");
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0, l1 = 0.0;
    const double value = integrator.integrate(f, a, b, tol, &error, &l1);
    if (!std::isfinite(value) || error > 100.0 * std::max(tol, tol * std::abs(value)))
        throw convergence_error("finite quadrature did not reach tolerance", value, 0, error);
    return value;
}

/// Adaptive integral over (a, inf) for exponentially decaying integrands.
template <typename F>
double integrate_upper(const F& f, double a, double tol = 1e-10) {
    boost::math::quadrature::exp_sinh<double> integrator;
    double error = 0.0, l1 = 0.0;
    const auto shifted = [&f, a](double v) { return f(a + v); };
    const double value = integrator.integrate(shifted, tol, &error, &l1);
    if (!std::isfinite(value) || error > 100.0 * std::max(tol, tol * std::abs(value)))
        throw convergence_error("semi-infinite quadrature did not reach tolerance", value, 0, error);
    return value;
}

} // namespace btsfpp
