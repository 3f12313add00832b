#include "frachelm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frachelm/errors.hpp"
#include "frachelm/quadrature.hpp"
#include "frachelm/specfun.hpp"

namespace frachelm {

using specfun::kPi;
using cplx = std::complex<double>;

namespace {

constexpr double kRelTol = 1e-11;
constexpr double kAbsTol = 1e-15;

double pos_pow(double base, double expo) { return std::exp(expo * std::log(base)); }

// 1/(e^a - 1) - 1/a
double bern(double a) {
    if (std::abs(a) < 0.1) {
        const double a2 = a * a;
        return -0.5 + a * (1.0 / 12.0 + a2 * (-1.0 / 720.0 + a2 * (1.0 / 30240.0 - a2 / 1209600.0)));
    }
    return 1.0 / std::expm1(a) - 1.0 / a;
}

// (1 - e^-w) / w
double phi1(double w) {
    if (std::abs(w) < 1e-4) return 1.0 - w / 2.0 + w * w / 6.0;
    return -std::expm1(-w) / w;
}

// |t^{2s} - e^{i pi s}|^2
double rot_den(double t2s, double s) { return t2s * t2s + 1.0 - 2.0 * std::cos(kPi * s) * t2s; }

// Weight of the rotated representation, shared by d = 2 and d = 3.
double rot_weight(double t, const KernelParams& p) {
    if (t == 0.0) return (p.m == 0 || 2.0 * p.s * p.m < 1.0) ? 0.0 : -std::sin(kPi * p.s * p.m);
    const double t2s = pos_pow(t, 2.0 * p.s);
    const double num = t2s * std::sin(kPi * p.s * (p.m + 1)) - std::sin(kPi * p.s * p.m);
    return pos_pow(t, 1.0 - 2.0 * p.s * p.m) * num / rot_den(t2s, p.s);
}

std::vector<double> laplace_breaks(double a, double vmax) {
    std::vector<double> b = {0.0, vmax};
    for (double c : {0.01 * a, 0.1 * a, 0.5 * a, a, 2.0 * a, 10.0 * a, 1.0, 5.0, 15.0})
        if (c > 0.0 && c < vmax) b.push_back(c);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double checked(const quad::QuadResult& r, const char* what) {
    if (!r.converged || !std::isfinite(r.value))
        throw QuadratureError(std::string(what) + ": quadrature error estimate " + std::to_string(r.error) +
                              " exceeds tolerance");
    return r.value;
}

double power_sum(double r, const KernelParams& p) {
    double sum = 0.0;
    for (int j = 0; j < p.m; ++j)
        sum += coeff_c(p.d, j, p.s) * pos_pow(p.k, 2.0 * p.s * j) * pos_pow(r, 2.0 * p.s * (j + 1) - p.d);
    return sum;
}

double rotated_integral_d2(double r, const KernelParams& p) {
    const double a = p.k * r;
    const auto f = [&](double v) {
        if (v == 0.0) return 0.0;
        return specfun::bessel_k0(v) * rot_weight(v / a, p);
    };
    const auto br = laplace_breaks(a, 60.0);
    quad::QuadOptions o;
    o.rel_tol = kRelTol;
    o.abs_tol = kAbsTol * a;
    const double val = checked(quad::gauss_kronrod(f, br, o), "phi_delta");
    return pos_pow(p.k, 2.0 - 2.0 * p.s) / (kPi * kPi) * val / a;
}

double trapezoid_integral_d2(double r, const std::vector<double>& nodes, const std::vector<double>& weights) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (weights[i] == 0.0) continue;
        sum += weights[i] * specfun::bessel_j(0, nodes[i] * r);
    }
    return sum;
}

void trapezoid_table(const KernelParams& p, const OscQuadSpec& q, std::vector<double>& nodes,
                     std::vector<double>& weights) {
    const long long n = std::max<long long>(q.N, 2);
    const double step = q.C / static_cast<double>(n - 1);
    bool shift = false;
    const long long near = std::llround(p.k / step);
    for (long long i = std::max<long long>(0, near - 1); i <= near + 1 && i < n; ++i)
        if (std::abs(i * step - p.k) < 1e-6 * p.k) shift = true;
    nodes.clear();
    weights.clear();
    if (!shift) {
        nodes.resize(n);
        weights.resize(n);
        for (long long i = 0; i < n; ++i) {
            const double rho = i * step;
            const double w = (i == 0 || i == n - 1) ? 0.5 * step : step;
            nodes[i] = rho;
            weights[i] = rho == 0.0 ? 0.0 : w * spectral_F(rho, p) * rho / (2.0 * kPi);
        }
    } else {
        nodes.resize(n - 1);
        weights.resize(n - 1);
        for (long long i = 0; i + 1 < n; ++i) {
            const double rho = (i + 0.5) * step;
            nodes[i] = rho;
            weights[i] = step * spectral_F(rho, p) * rho / (2.0 * kPi);
        }
    }
}

double special_L(double r, const KernelParams& p) {
    if (!p.special) return 0.0;
    return -pos_pow(p.k, 2.0 - 2.0 * p.s) / 4.0 * specfun::struve_k0(p.k * r);
}

double phi_delta_d1(double r, const KernelParams& p) {
    const double a = p.k * r;
    const double ss = std::sin(kPi * p.s);
    const auto f = [&](double v) {
        const double t = v / a;
        if (t == 0.0) return 0.0;
        const double t2s = pos_pow(t, 2.0 * p.s);
        return std::exp(-v) * t2s * ss / rot_den(t2s, p.s);
    };
    quad::QuadOptions o;
    o.rel_tol = kRelTol;
    o.abs_tol = kAbsTol * a;
    const double val = checked(quad::gauss_kronrod(f, laplace_breaks(a, 60.0), o), "phi_delta");
    return pos_pow(p.k, 1.0 - 2.0 * p.s) / kPi * val / a;
}

double phi_delta_d3(double r, const KernelParams& p) {
    const double a = p.k * r;
    const auto f = [&](double v) {
        if (v == 0.0) return 0.0;
        return std::exp(-v) * rot_weight(v / a, p);
    };
    quad::QuadOptions o;
    o.rel_tol = kRelTol;
    o.abs_tol = kAbsTol * a;
    const double val = checked(quad::gauss_kronrod(f, laplace_breaks(a, 60.0), o), "phi_delta");
    return power_sum(r, p) + pos_pow(p.k, 2.0 - 2.0 * p.s) / (2.0 * kPi * kPi * r) * val / a;
}

// 1 - z K_1(z) = int_0^z v K_0(v) dv
double one_minus_zk1(double z) {
    if (z >= 2.0) return 1.0 - z * specfun::bessel_k1(z);
    const long double zl = z;
    const long double q = zl * zl / 4.0L;
    constexpr long double euler = 0.577215664901532860606512090082402431L;
    long double t = 1.0L, i1 = 1.0L, s = 1.0L - 2.0L * euler, hk = 0.0L;
    for (int k = 1; k < 60; ++k) {
        t *= q / (static_cast<long double>(k) * (k + 1));
        hk += 1.0L / k;
        i1 += t;
        s += (2.0L * hk + 1.0L / (k + 1) - 2.0L * euler) * t;
        if (t < 1e-22L) break;
    }
    i1 *= zl / 2.0L;
    return static_cast<double>(-zl * std::log(zl / 2.0L) * i1 + zl * zl / 4.0L * s);
}

// Self-cell integral of pref * Phi_helm in d = 2.
cplx helmholtz_mass(double pref, double k, double h, bool refined) {
    const double h2 = h * h;
    if (refined) {
        // Disc of radius h/2 with H_0(z) ~ 1 + (2i/pi)(ln(z/2) + gamma).
        const double re = -h2 / 8.0 * (std::log(k * h / 4.0) + specfun::kEulerGamma) + h2 / 16.0;
        return pref * cplx(re, kPi * h2 / 16.0);
    }
    return -pref * (h2 / 8.0 * std::log(k * h / 2.0) - h2 / 16.0);
}

void require_d2(const KernelParams& p, const char* what) {
    if (p.d != 2) throw DomainError(std::string(what) + ": only d = 2 is supported");
}

}  // namespace

KernelParams KernelParams::make(double s, double k, int d) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("KernelParams: k must be positive");
    if (d < 1 || d > 3) throw DomainError("KernelParams: d must be 1, 2 or 3");
    const auto [m, special] = kernel_order(s);
    return {s, k, d, m, special};
}

std::pair<int, bool> kernel_order(double s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("kernel_order: s must lie in (0, 1)");
    const double inv = 1.0 / (2.0 * s);
    const double nearest = std::round(inv);
    const bool special = s <= 0.5 && nearest >= 1.0 && std::abs(inv - nearest) <= 1e-12 * inv;
    const int m = special ? static_cast<int>(nearest) : static_cast<int>(std::floor(inv));
    return {m, special};
}

std::complex<double> helm_fundamental(int d, double k, double r) {
    if (!(r > 0.0)) throw DomainError("helm_fundamental: r must be positive");
    if (!(k > 0.0)) throw DomainError("helm_fundamental: k must be positive");
    const cplx e = std::polar(1.0, k * r);
    switch (d) {
        case 1: return e / k;
        case 2: return cplx(0.0, 0.25) * specfun::hankel1_0(k * r);
        case 3: return e / (4.0 * kPi * r);
        default: throw DomainError("helm_fundamental: d must be 1, 2 or 3");
    }
}

std::complex<double> helm_asymptotic_constant(int d) {
    switch (d) {
        case 1: return 1.0;
        case 2: return std::polar(1.0 / (2.0 * std::sqrt(2.0)), kPi / 4.0);
        case 3: return 0.25;
        default: throw DomainError("helm_asymptotic_constant: d must be 1, 2 or 3");
    }
}

double coeff_c(int d, int j, double s) {
    const double a = s * (j + 1);
    return specfun::gamma_fn(d / 2.0 - a) / (pos_pow(4.0, a) * pos_pow(kPi, d / 2.0) * specfun::gamma_fn(a));
}

double spectral_F(double rho, const KernelParams& p) {
    if (!(rho > 0.0)) throw DomainError("spectral_F: rho must be positive");
    const double s = p.s, k = p.k;
    const double u = std::log(rho / k);
    // k^{2s} F written in u = ln(rho/k); every term is regular at u = 0.
    const double scaled = -p.m * phi1(2.0 * s * p.m * u) + std::exp(-2.0 * s * p.m * u) * bern(2.0 * s * u)
                          - bern(2.0 * u) / s;
    double f = scaled / pos_pow(k, 2.0 * s);
    if (p.special) f += pos_pow(k, 2.0 - 2.0 * s) / (rho * (rho + k));
    return f;
}

OscQuadSpec osc_quad_spec(const KernelParams& p, double h, double x_max) {
    require_d2(p, "osc_quad_spec");
    if (!(h > 0.0) || !(x_max > 0.0)) throw DomainError("osc_quad_spec: h and x_max must be positive");
    const double expo = 2.0 * p.s * (p.m + 1) - 0.5;
    if (!(expo > 0.0)) throw DomainError("osc_quad_spec: nonpositive decay exponent");
    OscQuadSpec q;
    q.C = pos_pow(h, -2.0 / expo);
    q.N = static_cast<long long>(std::ceil(10.0 * q.C * 2.0 * std::sqrt(2.0) * x_max / (2.0 * kPi)));
    return q;
}

double phi_delta(double r, const KernelParams& p, const std::optional<OscQuadSpec>& quad) {
    if (!(r > 0.0)) throw DomainError("phi_delta: r must be positive");
    switch (p.d) {
        case 1: return phi_delta_d1(r, p);
        case 3: return phi_delta_d3(r, p);
        case 2: break;
        default: throw DomainError("phi_delta: d must be 1, 2 or 3");
    }
    if (!quad) return power_sum(r, p) + rotated_integral_d2(r, p);
    std::vector<double> nodes, weights;
    trapezoid_table(p, *quad, nodes, weights);
    return power_sum(r, p) + trapezoid_integral_d2(r, nodes, weights) + special_L(r, p);
}

std::complex<double> phi_full(double r, const KernelParams& p, const std::optional<OscQuadSpec>& quad) {
    const double pref = pos_pow(p.k, 2.0 - 2.0 * p.s) / p.s;
    return pref * helm_fundamental(p.d, p.k, r) + phi_delta(r, p, quad);
}

CellMassTerms singular_cell_mass_terms(const KernelParams& p, double h, bool refined) {
    require_d2(p, "singular_cell_mass");
    if (!(h > 0.0)) throw DomainError("singular_cell_mass: h must be positive");
    const double s = p.s, k = p.k;
    const double kk = pos_pow(k, 2.0 - 2.0 * s);
    const double h2 = h * h;
    CellMassTerms t;

    t.helmholtz = helmholtz_mass(kk / s, k, h, refined);

    const double a = s * (p.m + 1);
    if (1.0 - a <= 0.0 && (1.0 - a) == std::floor(1.0 - a))
        throw PoleError("singular_cell_mass: Gamma(1 - s(m+1)) has a pole at s = " + std::to_string(s));
    t.spectral = pos_pow(h / 2.0, 2.0 * a) * pos_pow(k, 2.0 * s * p.m) * pos_pow(2.0, -2.0 * a) *
                 specfun::gamma_fn(1.0 - a) / specfun::gamma_fn(1.0 + a);

    for (int j = 0; j < p.m; ++j)
        t.power += kPi * coeff_c(2, j, s) * pos_pow(k, 2.0 * s * j) * pos_pow(h / 2.0, 2.0 * s * (j + 1)) /
                   (s * (j + 1));

    if (p.special) {
        // K_0(z) ~ -(2/pi)(ln(z/2) + gamma) integrated against -(k^{2-2s}/4) over the disc.
        t.special = kk * (h2 / 8.0 * std::log(h * k / 4.0) - h2 / 16.0);
        if (refined) t.special += kk * specfun::kEulerGamma * h2 / 8.0;
    }
    return t;
}

std::complex<double> singular_cell_mass(const KernelParams& p, double h, bool refined) {
    return singular_cell_mass_terms(p, h, refined).total();
}

double phi_delta_disc_mass(const KernelParams& p, double R) {
    require_d2(p, "phi_delta_disc_mass");
    if (!(R > 0.0)) throw DomainError("phi_delta_disc_mass: R must be positive");
    const double s = p.s, k = p.k;
    double power = 0.0;
    for (int j = 0; j < p.m; ++j)
        power += kPi * coeff_c(2, j, s) * pos_pow(k, 2.0 * s * j) * pos_pow(R, 2.0 * s * (j + 1)) / (s * (j + 1));

    // (2 k^{-2s} / pi) int_0^inf g(t) (1 - kRt K_1(kRt)) / t^2 dt, in v = kRt.
    const double a = k * R;
    const auto f = [&](double v) {
        if (v == 0.0) return 0.0;
        return a * rot_weight(v / a, p) * one_minus_zk1(v) / (v * v);
    };
    quad::QuadOptions o;
    o.rel_tol = kRelTol;
    o.abs_tol = 1e-18;
    std::vector<double> br = laplace_breaks(a, 40.0);
    const double head = checked(quad::gauss_kronrod(f, br, o), "phi_delta_disc_mass");
    // Tail v in [40, inf) mapped to w = 40 / v in (0, 1].
    const auto g = [&](double w) {
        if (w == 0.0) return 0.0;
        const double v = 40.0 / w;
        return f(v) * 40.0 / (w * w);
    };
    const double tail = checked(quad::gauss_kronrod(g, {0.0, 1e-3, 0.1, 1.0}, o), "phi_delta_disc_mass");
    return power + 2.0 * pos_pow(k, -2.0 * s) / kPi * (head + tail);
}

std::complex<double> square_cell_mass(const KernelParams& p, double h, KernelModel model) {
    require_d2(p, "square_cell_mass");
    if (!(h > 0.0)) throw DomainError("square_cell_mass: h must be positive");
    const double k = p.k;
    const double pref = model == KernelModel::helmholtz ? 1.0 : pos_pow(k, 2.0 - 2.0 * p.s) / p.s;
    // int_0^R H_0(kr) r dr = R H_1(kR) / k + 2i / (pi k^2)
    const auto helm_radial = [&](double R) {
        const double z = k * R;
        const cplx h1(specfun::bessel_j(1, z), specfun::bessel_y(1, z));
        return R * h1 / k + cplx(0.0, 2.0 / (kPi * k * k));
    };
    quad::QuadOptions o;
    o.rel_tol = 1e-12;
    o.abs_tol = 1e-20;
    const auto re = quad::gauss_kronrod(
        [&](double t) { return (cplx(0.0, 0.25) * helm_radial(h / (2.0 * std::cos(t)))).real(); }, 0.0, kPi / 4.0, o);
    const auto im = quad::gauss_kronrod(
        [&](double t) { return (cplx(0.0, 0.25) * helm_radial(h / (2.0 * std::cos(t)))).imag(); }, 0.0, kPi / 4.0, o);
    cplx total = 8.0 * pref * cplx(checked(re, "square_cell_mass"), checked(im, "square_cell_mass"));
    if (model == KernelModel::helmholtz) return total;
    o.rel_tol = 1e-10;
    const auto delta = quad::gauss_kronrod(
        [&](double t) { return phi_delta_disc_mass(p, h / (2.0 * std::cos(t))); }, 0.0, kPi / 4.0, o);
    return total + 4.0 / kPi * checked(delta, "square_cell_mass");
}

KernelEvaluator::KernelEvaluator(const KernelParams& params, const KernelOptions& opts, double h, double x_max)
    : params_(params), opts_(opts), h_(h) {
    if (!(h > 0.0) || !(x_max > 0.0)) throw DomainError("KernelEvaluator: h and x_max must be positive");
    if (opts_.model == KernelModel::helmholtz) {
        cell_mass_ = opts_.mass == CellMassRule::square ? square_cell_mass(params_, h, KernelModel::helmholtz)
                                                        : helmholtz_mass(1.0, params_.k, h, opts_.refined_hankel);
        return;
    }
    require_d2(params_, "KernelEvaluator");
    if (opts_.rule == SpectralRule::trapezoid) {
        quad_ = osc_quad_spec(params_, h, x_max);
        trapezoid_table(params_, *quad_, nodes_, weights_);
    }
    if (opts_.mass == CellMassRule::asymptotic) {
        cell_mass_ = singular_cell_mass(params_, h, opts_.refined_hankel);
    } else if (opts_.mass == CellMassRule::square) {
        cell_mass_ = square_cell_mass(params_, h);
    } else {
        const double pref = pos_pow(params_.k, 2.0 - 2.0 * params_.s) / params_.s;
        cell_mass_ = helmholtz_mass(pref, params_.k, h, opts_.refined_hankel) +
                     phi_delta_disc_mass(params_, h / 2.0);
    }
}

double KernelEvaluator::phi_delta(double r) const {
    if (opts_.model == KernelModel::helmholtz) return 0.0;
    if (!(r > 0.0)) throw DomainError("phi_delta: r must be positive");
    if (!quad_) return power_sum(r, params_) + rotated_integral_d2(r, params_);
    return power_sum(r, params_) + trapezoid_integral_d2(r, nodes_, weights_) + special_L(r, params_);
}

std::complex<double> KernelEvaluator::phi(double r) const {
    const cplx helm = helm_fundamental(params_.d, params_.k, r);
    if (opts_.model == KernelModel::helmholtz) return helm;
    return pos_pow(params_.k, 2.0 - 2.0 * params_.s) / params_.s * helm + phi_delta(r);
}

double KernelEvaluator::volume_coupling() const {
    if (opts_.model == KernelModel::helmholtz) return params_.k * params_.k;
    return pos_pow(params_.k, 2.0 * params_.s);
}

double KernelEvaluator::farfield_coupling() const {
    if (opts_.model == KernelModel::helmholtz) return params_.k * params_.k;
    return params_.k * params_.k / params_.s;
}

}  // namespace frachelm
