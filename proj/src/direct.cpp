#include "frachelm/direct.hpp"

#include <algorithm>
#include <cmath>

#include "frachelm/errors.hpp"
#include "frachelm/parallel.hpp"
#include "frachelm/specfun.hpp"

namespace frachelm {

OffsetTable::OffsetTable(const KernelEvaluator& kernel, int span) : span_(span) {
    if (span < 1) throw DomainError("OffsetTable: span must be positive");
    const std::size_t qmax = 2 * static_cast<std::size_t>(span - 1) * (span - 1);
    std::vector<char> used(qmax + 1, 0);
    std::vector<std::pair<int, int>> reps;
    for (int a = 0; a < span; ++a)
        for (int b = 0; b <= a; ++b) {
            const std::size_t q = static_cast<std::size_t>(a * a + b * b);
            if (!used[q]) {
                used[q] = 1;
                reps.emplace_back(a, b);
            }
        }
    by_q_.assign(qmax + 1, cplx(0.0, 0.0));
    by_q_[0] = kernel.cell_mass();
    const double h = kernel.h();
    parallel_for(reps.size(), [&](std::size_t i) {
        const auto [a, b] = reps[i];
        if (a == 0 && b == 0) return;
        by_q_[static_cast<std::size_t>(a * a + b * b)] = kernel.phi(offset_distance(h, a, b));
    });
}

LSMatrix assemble_ls(const Grid& grid, const Medium& medium, std::shared_ptr<const KernelEvaluator> kernel) {
    if (grid.d != 2) throw DomainError("assemble_ls: only d = 2 is supported");
    if (!kernel) throw DomainError("assemble_ls: missing kernel");
    LSMatrix ls;
    ls.params = kernel->params();
    ls.h = grid.h;
    ls.kernel = kernel;
    ls.support = medium.support;
    const std::size_t ns = ls.support.size();
    ls.points.resize(ns);
    ls.contrast.resize(ns);
    std::vector<int> ix(ns), iy(ns);
    int lo_x = grid.n, hi_x = -1, lo_y = grid.n, hi_y = -1;
    for (std::size_t a = 0; a < ns; ++a) {
        const std::size_t c = ls.support[a];
        ls.points[a] = grid.centers[c];
        ls.contrast[a] = medium.contrast(c);
        ix[a] = static_cast<int>(c % grid.n);
        iy[a] = static_cast<int>(c / grid.n);
        lo_x = std::min(lo_x, ix[a]);
        hi_x = std::max(hi_x, ix[a]);
        lo_y = std::min(lo_y, iy[a]);
        hi_y = std::max(hi_y, iy[a]);
    }
    ls.M = DenseMatrix::Zero(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(ns));
    if (ns == 0) return ls;

    const OffsetTable table(*kernel, std::max(hi_x - lo_x, hi_y - lo_y) + 1);
    const double scale = kernel->volume_coupling() * grid.h * grid.h;
    const double diag = kernel->volume_coupling();
    parallel_for(ns, [&](std::size_t i) {
        for (std::size_t j = 0; j < ns; ++j) {
            const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
            if (i == j)
                ls.M(ii, jj) = diag * ls.contrast[i] * kernel->cell_mass();
            else
                ls.M(ii, jj) = scale * table.at(ix[i] - ix[j], iy[i] - iy[j]) * ls.contrast[j];
        }
    });
    return ls;
}

LuSolver factor_ls(const LSMatrix& ls) {
    DenseMatrix A = -ls.M;
    A.diagonal().array() += 1.0;
    const DenseMatrix* M = &ls.M;
    return LuSolver(std::move(A), [M](const DenseMatrix& X) -> DenseMatrix { return X - (*M) * X; });
}

DenseVector solve_total_field(const LSMatrix& ls, const DenseVector& incident) {
    if (incident.size() != ls.M.rows()) throw DomainError("solve_total_field: incident field has wrong length");
    return factor_ls(ls).solve(incident);
}

std::vector<cplx> scattered_field(const LSMatrix& ls, const DenseVector& total, const std::vector<Point>& points) {
    if (total.size() != static_cast<Eigen::Index>(ls.support.size()))
        throw DomainError("scattered_field: total field has wrong length");
    std::vector<cplx> out(points.size(), cplx(0.0, 0.0));
    if (ls.support.empty()) return out;
    const KernelEvaluator& kernel = *ls.kernel;
    const double coupling = kernel.volume_coupling();
    const double h2 = ls.h * ls.h;
    parallel_for(points.size(), [&](std::size_t p) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < ls.support.size(); ++j) {
            const double dx = points[p][0] - ls.points[j][0];
            const double dy = points[p][1] - ls.points[j][1];
            const cplx w = ls.contrast[j] * total(static_cast<Eigen::Index>(j));
            if (std::abs(dx) < 0.5 * ls.h && std::abs(dy) < 0.5 * ls.h)
                acc += kernel.cell_mass() * w;
            else
                acc += kernel.phi(std::hypot(dx, dy)) * h2 * w;
        }
        out[p] = coupling * acc;
    });
    return out;
}

std::vector<cplx> convolve_grid(const std::vector<cplx>& f, const KernelEvaluator& kernel, const Grid& grid) {
    if (grid.d != 2) throw DomainError("convolve_grid: only d = 2 is supported");
    if (f.size() != grid.size()) throw DomainError("convolve_grid: field does not match grid");
    const int n = grid.n;
    const OffsetTable table(kernel, n);
    const double h2 = grid.h * grid.h;
    std::vector<cplx> u(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const int ix = static_cast<int>(i % n), iy = static_cast<int>(i / n);
        cplx acc(0.0, 0.0);
        for (int jy = 0; jy < n; ++jy) {
            const int dy = iy - jy;
            const cplx* row = f.data() + static_cast<std::size_t>(jy) * n;
            for (int jx = 0; jx < n; ++jx) {
                if (jx == ix && jy == iy) continue;
                acc += table.at(ix - jx, dy) * row[jx];
            }
        }
        u[i] = acc * h2 + kernel.cell_mass() * f[i];
    });
    return u;
}

double manufactured_rhs(RhsKind kind, double alpha, const KernelParams& p, const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < p.d; ++a) r2 += x[a] * x[a];
    const double s = p.s, hd = p.d / 2.0;
    const double k2s = std::pow(p.k, 2.0 * s);
    if (kind == RhsKind::gaussian) {
        const double pref = std::pow(2.0, 2.0 * s) * specfun::gamma_fn(s + hd) / specfun::gamma_fn(hd);
        return pref * specfun::hyp1f1(s + hd, hd, -r2).value - k2s * std::exp(-r2);
    }
    if (!(alpha > 0.0)) throw DomainError("manufactured_rhs: alpha must be positive");
    const double pref = std::pow(2.0, 2.0 * s) * specfun::gamma_fn(s + alpha) * specfun::gamma_fn(s + hd) /
                        (specfun::gamma_fn(alpha) * specfun::gamma_fn(hd));
    return pref * specfun::hyp2f1(s + alpha, s + hd, hd, -r2).value - k2s * std::pow(1.0 + r2, -alpha);
}

double manufactured_solution(RhsKind kind, double alpha, const Point& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (kind == RhsKind::gaussian) return std::exp(-r2);
    return std::pow(1.0 + r2, -alpha);
}

ValidationErrors validate_direct(RhsKind kind, double alpha, const KernelEvaluator& kernel, const Grid& grid) {
    std::vector<cplx> f(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        f[i] = manufactured_rhs(kind, alpha, kernel.params(), grid.centers[i]);
    });
    const auto u = convolve_grid(f, kernel, grid);
    ValidationErrors e;
    double sq = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double diff = std::abs(u[i] - manufactured_solution(kind, alpha, grid.centers[i]));
        sq += diff * diff;
        e.err_Linf = std::max(e.err_Linf, diff);
    }
    e.err_L2 = std::sqrt(sq * grid.h * grid.h);
    return e;
}

}  // namespace frachelm
