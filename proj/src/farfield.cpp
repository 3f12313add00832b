#include "frachelm/farfield.hpp"

#include <cmath>
#include <random>

#include "frachelm/errors.hpp"
#include "frachelm/parallel.hpp"
#include "frachelm/specfun.hpp"

namespace frachelm {

using specfun::kPi;

AngleSet make_angles(int n_inc) {
    if (n_inc < 2) throw DomainError("make_angles: need at least 2 directions");
    AngleSet a;
    a.n_inc = n_inc;
    a.weight = 2.0 * kPi / n_inc;
    for (int j = 0; j < n_inc; ++j) {
        const double t = 2.0 * kPi * j / n_inc;
        a.angles.push_back(t);
        a.thetas.push_back({std::cos(t), std::sin(t), 0.0});
    }
    return a;
}

cplx plane_wave(double k, const Point& theta, const Point& x) {
    return std::polar(1.0, k * (theta[0] * x[0] + theta[1] * x[1] + theta[2] * x[2]));
}

DenseMatrix assemble_q(const LSMatrix& ls, const AngleSet& angles) {
    const auto ns = static_cast<Eigen::Index>(ls.support.size());
    DenseMatrix Q(angles.n_inc, ns);
    const double c = ls.kernel->farfield_coupling() * ls.h * ls.h;
    const double k = ls.params.k;
    for (int i = 0; i < angles.n_inc; ++i)
        for (Eigen::Index j = 0; j < ns; ++j)
            Q(i, j) = c * std::conj(plane_wave(k, angles.thetas[i], ls.points[j])) * ls.contrast[j];
    return Q;
}

DenseMatrix incident_matrix(const LSMatrix& ls, const AngleSet& angles) {
    const auto ns = static_cast<Eigen::Index>(ls.support.size());
    DenseMatrix P(ns, angles.n_inc);
    for (Eigen::Index m = 0; m < ns; ++m)
        for (int j = 0; j < angles.n_inc; ++j) P(m, j) = plane_wave(ls.params.k, angles.thetas[j], ls.points[m]);
    return P;
}

FarFieldMatrix farfield_matrix(const LSMatrix& ls, const DenseMatrix& q, const AngleSet& angles) {
    FarFieldMatrix fm;
    fm.angles = angles;
    fm.params = ls.params;
    if (ls.support.empty()) {
        fm.F = DenseMatrix::Zero(angles.n_inc, angles.n_inc);
        return fm;
    }
    const LuSolver lu = factor_ls(ls);
    const DenseMatrix P = incident_matrix(ls, angles);
    // Solve the incidence columns in parallel blocks against the shared LU.
    DenseMatrix U(P.rows(), P.cols());
    const int blocks = std::max(1, std::min(num_threads(), angles.n_inc));
    const int per = (angles.n_inc + blocks - 1) / blocks;
    parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
        const int lo = static_cast<int>(b) * per, hi = std::min(angles.n_inc, lo + per);
        if (lo >= hi) return;
        U.middleCols(lo, hi - lo) = lu.solve(P.middleCols(lo, hi - lo));
    });
    fm.F = q * U;
    return fm;
}

void add_noise(FarFieldMatrix& fm, double delta, std::uint64_t seed) {
    if (delta < 0.0) throw DomainError("add_noise: noise level must be nonnegative");
    if (delta == 0.0) return;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    for (Eigen::Index j = 0; j < fm.F.cols(); ++j)
        for (Eigen::Index i = 0; i < fm.F.rows(); ++i) {
            const double re = g(rng), im = g(rng);
            fm.F(i, j) *= cplx(1.0 + delta * re, delta * im);
        }
}

DenseMatrix born_farfield(const LSMatrix& ls, const AngleSet& angles) {
    const double c = ls.kernel->farfield_coupling() * ls.h * ls.h;
    const double k = ls.params.k;
    DenseMatrix B = DenseMatrix::Zero(angles.n_inc, angles.n_inc);
    for (int i = 0; i < angles.n_inc; ++i)
        for (int j = 0; j < angles.n_inc; ++j) {
            const Point diff{angles.thetas[j][0] - angles.thetas[i][0], angles.thetas[j][1] - angles.thetas[i][1], 0.0};
            cplx acc(0.0, 0.0);
            for (std::size_t m = 0; m < ls.support.size(); ++m) acc += plane_wave(k, diff, ls.points[m]) * ls.contrast[m];
            B(i, j) = c * acc;
        }
    return B;
}

double check_unitarity(const FarFieldMatrix& fm) {
    const auto n = fm.F.rows();
    if (n == 0) return 0.0;
    const double r = 1.0 / (4.0 * kPi);
    const DenseMatrix I = DenseMatrix::Identity(n, n);
    const DenseMatrix S = I + cplx(0.0, r * fm.angles.weight) * fm.F;
    return spectral_norm(S.adjoint() * S - I);
}

double check_reciprocity(const FarFieldMatrix& fm) {
    const auto n = fm.F.rows();
    if (n % 2 != 0) throw DomainError("check_reciprocity: needs an even number of directions");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const Eigen::Index ii = (j + n / 2) % n, jj = (i + n / 2) % n;
            worst = std::max(worst, std::abs(fm.F(i, j) - fm.F(ii, jj)));
        }
    return worst;
}

}  // namespace frachelm
