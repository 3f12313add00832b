#pragma once

#include <cstdint>
#include <vector>

#include "frachelm/direct.hpp"

namespace frachelm {

struct AngleSet {
    int n_inc = 0;
    std::vector<double> angles;  // 2 pi j / n_inc
    std::vector<Point> thetas;   // unit vectors
    double weight = 0.0;         // 2 pi / n_inc
};

AngleSet make_angles(int n_inc);

cplx plane_wave(double k, const Point& theta, const Point& x);

struct FarFieldMatrix {
    DenseMatrix F;  // F(i, j): measurement direction i, incidence direction j
    AngleSet angles;
    KernelParams params;
};

/// Q(i, j) = c e^{-ik theta_i . x_j} (n-1)(x_j) h^2 with c the far-field coupling.
DenseMatrix assemble_q(const LSMatrix& ls, const AngleSet& angles);

/// Plane-wave traces on the support, one column per incidence angle.
DenseMatrix incident_matrix(const LSMatrix& ls, const AngleSet& angles);

FarFieldMatrix farfield_matrix(const LSMatrix& ls, const DenseMatrix& q, const AngleSet& angles);

/// Multiplies every entry by (1 + delta g), g standard complex Gaussian.
void add_noise(FarFieldMatrix& fm, double delta, std::uint64_t seed);

/// Single-scattering prediction (k^2/s) sum_m e^{-ik(theta_i - theta_j).x_m} (n-1)(x_m) h^2.
DenseMatrix born_farfield(const LSMatrix& ls, const AngleSet& angles);

/// || (I + i r F_op)^* (I + i r F_op) - I ||_2 with F_op = (2 pi / N) F, r = 1/(4 pi).
double check_unitarity(const FarFieldMatrix& fm);

/// max |F(theta_i, theta_j) - F(-theta_j, -theta_i)|.
double check_reciprocity(const FarFieldMatrix& fm);

}  // namespace frachelm
