#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "scatterbound/errors.hpp"

namespace scatterbound {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 48;
    // interval pre-split points (forbidden-region endpoints, delta locations,
    // piecewise joints); integrands are allowed kinks exactly there
    std::vector<double> split_points;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

// Adaptive Gauss-Kronrod 7/15 over [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg = {});

QuadratureResult integrate_complex_real(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, const QuadratureConfig& cfg,
                                        std::complex<double>& value_out);

} // namespace scatterbound
