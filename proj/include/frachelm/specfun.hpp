#pragma once

#include <complex>

namespace frachelm::specfun {

template <class T>
struct SpecFunResult {
    T value{};
    double est_error = 0.0;
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

/// J_0 or J_1 for x >= 0.
double bessel_j(int order, double x);
/// Y_0 or Y_1 for x > 0.
double bessel_y(int order, double x);
/// J_0(x) + i Y_0(x).
std::complex<double> hankel1_0(double x);

/// Struve function of the first kind H_0.
double struve_h0(double x);
/// Struve function of the second kind, H_0(x) - Y_0(x).
double struve_k0(double x);

/// Modified Bessel function K_0 for x > 0.
double bessel_k0(double x);
/// Modified Bessel function K_1 for x > 0.
double bessel_k1(double x);

double gamma_fn(double x);
/// 1/Gamma(x); zero at the poles.
double rgamma(double x);

/// sin(pi x) with exact argument reduction.
double sinpi(double x);

SpecFunResult<double> hyp1f1(double a, double b, double x);
SpecFunResult<double> hyp2f1(double a, double b, double c, double x);

}  // namespace frachelm::specfun
