#include "frachelm/medium.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "frachelm/errors.hpp"
#include "frachelm/io.hpp"

namespace frachelm {

long long Grid::locate(const Point& p) const {
    long long idx = 0, stride = 1;
    for (int a = 0; a < d; ++a) {
        const double u = (p[a] + x_max) / h;
        if (!(u >= 0.0) || u >= n) return -1;
        idx += stride * static_cast<long long>(std::floor(u));
        stride *= n;
    }
    return idx;
}

Grid build_grid(double x_max, int n, int d) {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw DomainError("build_grid: x_max must be positive");
    if (n < 2) throw DomainError("build_grid: need at least 2 cells per axis");
    if (d < 1 || d > 3) throw DomainError("build_grid: d must be 1, 2 or 3");
    Grid g;
    g.d = d;
    g.x_max = x_max;
    g.n = n;
    g.h = 2.0 * x_max / n;
    g.axis.resize(n);
    for (int i = 0; i < n; ++i) g.axis[i] = -x_max + (i + 0.5) * g.h;
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
    g.centers.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        Point p{0.0, 0.0, 0.0};
        std::size_t rest = idx;
        for (int a = 0; a < d; ++a) {
            p[a] = g.axis[rest % n];
            rest /= n;
        }
        g.centers[idx] = p;
    }
    return g;
}

bool ShapeSpec::contains(const Point& p) const {
    const double dx = p[0] - center[0], dy = p[1] - center[1];
    switch (kind) {
        case Kind::disc: return dx * dx + dy * dy < radius * radius;
        case Kind::rect: return std::abs(dx) < half[0] && std::abs(dy) < half[1];
        case Kind::boomerang: {
            const double ex = dx - 0.5 * radius;
            return dx * dx + dy * dy < radius * radius && !(ex * ex + dy * dy < radius * radius);
        }
        case Kind::mask: return false;
    }
    return false;
}

ShapeSpec ShapeSpec::make_disc(Point c, double r, double contrast) {
    ShapeSpec s;
    s.kind = Kind::disc;
    s.center = c;
    s.radius = r;
    s.contrast = contrast;
    return s;
}

ShapeSpec ShapeSpec::make_rect(Point c, std::array<double, 2> half, double contrast) {
    ShapeSpec s;
    s.kind = Kind::rect;
    s.center = c;
    s.half = half;
    s.contrast = contrast;
    return s;
}

ShapeSpec ShapeSpec::make_boomerang(Point c, double scale, double contrast) {
    ShapeSpec s;
    s.kind = Kind::boomerang;
    s.center = c;
    s.radius = scale;
    s.contrast = contrast;
    return s;
}

ShapeSpec load_mask(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mask file " + path);
    ShapeSpec s;
    s.kind = ShapeSpec::Kind::mask;
    s.mask_path = path;
    std::string line;
    int rows = 0;
    std::size_t cols = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof()) throw IoError("mask file " + path + ": malformed value on row " + std::to_string(rows + 1));
        if (row.empty()) continue;
        if (rows == 0) cols = row.size();
        if (row.size() != cols) throw IoError("mask file " + path + ": ragged rows");
        s.mask.insert(s.mask.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0 || static_cast<std::size_t>(rows) != cols)
        throw IoError("mask file " + path + ": expected a square matrix");
    s.mask_n = rows;
    return s;
}

Medium make_medium(const Grid& grid, const std::vector<ShapeSpec>& shapes) {
    Medium med;
    med.n.assign(grid.size(), 1.0);
    for (const auto& s : shapes) {
        if (s.kind == ShapeSpec::Kind::mask) {
            if (grid.d != 2 || s.mask_n != grid.n)
                throw DomainError("make_medium: mask size " + std::to_string(s.mask_n) + " does not match grid");
            for (std::size_t i = 0; i < s.mask.size(); ++i) {
                if (s.mask[i] < 0.0) throw DomainError("make_medium: negative contrast in mask");
                if (s.mask[i] > 0.0) med.n[i] = 1.0 + s.mask[i];
            }
            continue;
        }
        if (!(s.contrast > 0.0)) throw DomainError("make_medium: contrast must be positive");
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (s.contains(grid.centers[i])) med.n[i] = 1.0 + s.contrast;
    }
    double cmin = INFINITY;
    for (std::size_t i = 0; i < med.n.size(); ++i) {
        if (med.n[i] != 1.0) {
            med.support.push_back(i);
            cmin = std::min(cmin, med.n[i] - 1.0);
        }
    }
    med.min_contrast = med.support.empty() ? 0.0 : cmin;
    return med;
}

void write_medium_csv(std::ostream& out, const Grid& grid, const Medium& medium) {
    io::write_header(out, {"x", "y", "n"});
    for (std::size_t i = 0; i < grid.size(); ++i)
        io::write_row(out, {grid.centers[i][0], grid.centers[i][1], medium.n[i]});
}

}  // namespace frachelm
