#pragma once

#include <functional>
#include <initializer_list>
#include <span>

namespace frachelm::quad {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // absolute error estimate
    int evaluations = 0;
    bool converged = false;
};

struct QuadOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) on [a, b]. Never throws; callers decide
/// what to do with an unconverged result.
QuadResult gauss_kronrod(const Integrand& f, double a, double b, const QuadOptions& opts = {});

/// Same, over consecutive panels [p0, p1], [p1, p2], ... sharing one
/// global error budget. Use breakpoints at known kinks or peaks.
QuadResult gauss_kronrod(const Integrand& f, std::span<const double> breakpoints,
                         const QuadOptions& opts = {});

inline QuadResult gauss_kronrod(const Integrand& f, std::initializer_list<double> breakpoints,
                                const QuadOptions& opts = {}) {
    return gauss_kronrod(f, std::span<const double>(breakpoints.begin(), breakpoints.size()), opts);
}

}  // namespace frachelm::quad
