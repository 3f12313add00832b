#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace frachelm {

struct KernelParams {
    double s = 0.5;
    double k = 1.0;
    int d = 2;
    int m = 0;             // floor(1/(2s))
    bool special = false;  // s <= 1/2 and 1/(2s) integer

    /// Validates s, k, d and fills in the branch data.
    static KernelParams make(double s, double k, int d = 2);
};

struct OscQuadSpec {
    double C = 0.0;  // truncation radius in frequency
    long long N = 0; // trapezoid points on [0, C]
};

/// Which route evaluates the d = 2 spectral integral.
enum class SpectralRule {
    rotated,    // contour rotated onto the imaginary axis, adaptive quadrature
    trapezoid,  // truncated trapezoid sum on [0, C]
};

/// How the self-cell integral of the kernel is approximated.
enum class CellMassRule {
    asymptotic,     // closed-form small-h asymptotics of each kernel piece
    disc_integral,  // Phi^Delta integrated exactly over the disc of radius h/2
    square,         // whole kernel integrated over the square cell
};

/// fractional: Phi_{s,k}; helmholtz: the classical kernel Phi_helm alone.
enum class KernelModel { fractional, helmholtz };

std::pair<int, bool> kernel_order(double s);

std::complex<double> helm_fundamental(int d, double k, double r);
/// c_d in Phi_helm ~ c_d k^((d-3)/2) e^{ikr} / (pi r)^((d-1)/2).
std::complex<double> helm_asymptotic_constant(int d);

double coeff_c(int d, int j, double s);

/// Spectral function F(rho, k) of the d = 2 kernel, regular at rho = k.
double spectral_F(double rho, const KernelParams& params);

OscQuadSpec osc_quad_spec(const KernelParams& params, double h, double x_max);

/// Phi^Delta. For d = 2 a trapezoid spec selects the truncated trapezoid
/// rule; without one the rotated-contour integral is used.
double phi_delta(double r, const KernelParams& params, const std::optional<OscQuadSpec>& quad = std::nullopt);

std::complex<double> phi_full(double r, const KernelParams& params,
                              const std::optional<OscQuadSpec>& quad = std::nullopt);

struct CellMassTerms {
    std::complex<double> helmholtz;
    double spectral = 0.0;
    double power = 0.0;
    double special = 0.0;
    std::complex<double> total() const { return helmholtz + spectral + power + special; }
};

/// Self-cell mass of Phi_{s,k} for a d = 2 cell of width h, term by term.
/// `refined` keeps the constant of the small-argument Hankel expansion.
CellMassTerms singular_cell_mass_terms(const KernelParams& params, double h, bool refined = false);
std::complex<double> singular_cell_mass(const KernelParams& params, double h, bool refined = false);

/// Integral of Phi^Delta over the disc of radius R centred at the origin.
double phi_delta_disc_mass(const KernelParams& params, double R);

/// Integral of the kernel over the square cell [-h/2, h/2]^2, by radial
/// antiderivatives and an adaptive angular quadrature.
std::complex<double> square_cell_mass(const KernelParams& params, double h,
                                      KernelModel model = KernelModel::fractional);

struct KernelOptions {
    KernelModel model = KernelModel::fractional;
    SpectralRule rule = SpectralRule::rotated;
    CellMassRule mass = CellMassRule::square;
    bool refined_hankel = false;
};

/// Kernel bound to one discretization (h, x_max). Precomputes what can be
/// shared; every method is const and thread-safe.
class KernelEvaluator {
public:
    KernelEvaluator(const KernelParams& params, const KernelOptions& opts, double h, double x_max);

    const KernelParams& params() const { return params_; }
    const KernelOptions& options() const { return opts_; }
    double h() const { return h_; }

    double phi_delta(double r) const;
    std::complex<double> phi(double r) const;
    std::complex<double> cell_mass() const { return cell_mass_; }

    /// k^{2s} (or k^2 for the classical model): factor in front of the volume potential.
    double volume_coupling() const;
    /// k^2/s (or k^2): factor in front of the far-field integral.
    double farfield_coupling() const;

private:
    KernelParams params_;
    KernelOptions opts_;
    double h_;
    std::optional<OscQuadSpec> quad_;
    std::vector<double> nodes_;    // trapezoid abscissae
    std::vector<double> weights_;  // trapezoid weight * F * rho / (2 pi)
    std::complex<double> cell_mass_;
};

}  // namespace frachelm
