#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "frachelm/kernel.hpp"
#include "frachelm/medium.hpp"
#include "frachelm/numerics.hpp"

namespace frachelm {

/// Kernel values on integer cell offsets, indexed by dx^2 + dy^2.
class OffsetTable {
public:
    /// Covers every offset with |dx|, |dy| < span.
    OffsetTable(const KernelEvaluator& kernel, int span);

    cplx at(int dx, int dy) const { return by_q_[static_cast<std::size_t>(dx * dx + dy * dy)]; }
    int span() const { return span_; }

private:
    int span_;
    std::vector<cplx> by_q_;
};

/// Distance between cells that are (dx, dy) cells apart.
inline double offset_distance(double h, int dx, int dy) { return h * std::sqrt(static_cast<double>(dx * dx + dy * dy)); }

struct LSMatrix {
    DenseMatrix M;
    std::vector<std::size_t> support;
    std::vector<Point> points;     // support cell centres
    std::vector<double> contrast;  // n - 1 on the support
    KernelParams params;
    double h = 0.0;
    std::shared_ptr<const KernelEvaluator> kernel;
};

LSMatrix assemble_ls(const Grid& grid, const Medium& medium, std::shared_ptr<const KernelEvaluator> kernel);

/// Factorization of I - M, reusable across right-hand sides.
LuSolver factor_ls(const LSMatrix& ls);

/// Total field on the support for an incident field sampled on the support.
DenseVector solve_total_field(const LSMatrix& ls, const DenseVector& incident);

/// Scattered field at arbitrary points from the total field on the support.
std::vector<cplx> scattered_field(const LSMatrix& ls, const DenseVector& total, const std::vector<Point>& points);

/// Discrete convolution of the kernel with a grid field (times h^2), with the
/// self-cell mass on the diagonal.
std::vector<cplx> convolve_grid(const std::vector<cplx>& f, const KernelEvaluator& kernel, const Grid& grid);

enum class RhsKind { gaussian, algebraic };

/// Right-hand side whose exact solution is known in closed form.
double manufactured_rhs(RhsKind kind, double alpha, const KernelParams& params, const Point& x);
double manufactured_solution(RhsKind kind, double alpha, const Point& x);

struct ValidationErrors {
    double err_L2 = 0.0;
    double err_Linf = 0.0;
};

ValidationErrors validate_direct(RhsKind kind, double alpha, const KernelEvaluator& kernel, const Grid& grid);

}  // namespace frachelm
