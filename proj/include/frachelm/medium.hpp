#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace frachelm {

using Point = std::array<double, 3>;

/// Uniform grid of n^d cells on [-x_max, x_max]^d. Cell (ix, iy, iz) has
/// flat index ix + n*iy + n*n*iz.
struct Grid {
    int d = 2;
    double x_max = 1.0;
    int n = 2;
    double h = 1.0;
    std::vector<double> axis;     // cell centres along one axis
    std::vector<Point> centers;

    std::size_t size() const { return centers.size(); }
    /// Flat index of the cell containing p, or -1 outside the box.
    long long locate(const Point& p) const;
};

Grid build_grid(double x_max, int n, int d = 2);

struct ShapeSpec {
    enum class Kind { disc, rect, boomerang, mask };
    Kind kind = Kind::disc;
    Point center{0.0, 0.0, 0.0};
    double radius = 1.0;                 // disc radius, boomerang scale
    std::array<double, 2> half{1.0, 1.0};  // rect half-widths
    double contrast = 1.0;
    std::string mask_path;
    std::vector<double> mask;            // row-major contrast values, n*n
    int mask_n = 0;

    bool contains(const Point& p) const;  // not meaningful for masks

    static ShapeSpec make_disc(Point c, double r, double contrast);
    static ShapeSpec make_rect(Point c, std::array<double, 2> half, double contrast);
    static ShapeSpec make_boomerang(Point c, double scale, double contrast);
};

/// Reads a whitespace-separated n x n matrix of contrast values. Row j
/// holds the cells with y index j (bottom row first), column i the x index.
ShapeSpec load_mask(const std::string& path);

struct Medium {
    std::vector<double> n;             // refractive index per grid cell
    std::vector<std::size_t> support;  // cells with n != 1
    double min_contrast = 0.0;         // min of n - 1 over the support

    double contrast(std::size_t cell) const { return n[cell] - 1.0; }
};

/// n = 1 + contrast inside each shape; later shapes overwrite earlier ones.
Medium make_medium(const Grid& grid, const std::vector<ShapeSpec>& shapes);

/// CSV with columns x, y, n.
void write_medium_csv(std::ostream& out, const Grid& grid, const Medium& medium);

}  // namespace frachelm
