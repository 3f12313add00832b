#include "frachelm/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "frachelm/errors.hpp"
#include "frachelm/parallel.hpp"

namespace frachelm {

SvdTriple svd_factor(const FarFieldMatrix& fm) { return svd(fm.F); }

DenseVector test_vector(const Point& z, const AngleSet& angles, double k) {
    DenseVector t(angles.n_inc);
    for (int j = 0; j < angles.n_inc; ++j) t(j) = std::conj(plane_wave(k, angles.thetas[j], z));
    return t;
}

double indicator(const SvdTriple& svd, const DenseVector& test, double floor) {
    if (test.size() != svd.V.rows()) throw DomainError("indicator: test vector has wrong length");
    const DenseVector rho = svd.V.transpose() * test;
    double sum = 0.0;
    for (Eigen::Index j = 0; j < rho.size(); ++j) {
        const double a2 = std::norm(rho(j));
        const double sigma = std::max(svd.S(j), floor);
        if (sigma == 0.0) {
            if (a2 != 0.0) return 0.0;
            continue;
        }
        sum += a2 / sigma;
    }
    return sum > 0.0 ? 1.0 / sum : 0.0;
}

double default_floor(const SvdTriple& svd, double noise) {
    const double smax = svd.S.size() ? svd.S(0) : 0.0;
    return (noise > 0.0 ? noise : 1e-12) * smax;
}

IndicatorMap indicator_map(const SvdTriple& svd, const AngleSet& angles, double k, const Grid& sample_grid,
                           double floor) {
    IndicatorMap map;
    map.grid = sample_grid;
    map.W.assign(sample_grid.size(), 0.0);
    parallel_for(sample_grid.size(), [&](std::size_t i) {
        map.W[i] = indicator(svd, test_vector(sample_grid.centers[i], angles, k), floor);
    });
    map.max_value = map.W.empty() ? 0.0 : *std::max_element(map.W.begin(), map.W.end());
    map.W_normalized.resize(map.W.size());
    for (std::size_t i = 0; i < map.W.size(); ++i)
        map.W_normalized[i] = map.max_value > 0.0 ? map.W[i] / map.max_value : 0.0;
    return map;
}

Grid decimate_grid(const Grid& grid, int factor) {
    if (factor < 1) throw DomainError("decimate_grid: factor must be positive");
    return build_grid(grid.x_max, std::max(2, grid.n / factor), grid.d);
}

std::vector<char> threshold_mask(const IndicatorMap& map, double fraction) {
    std::vector<char> mask(map.W.size(), 0);
    if (map.max_value <= 0.0) return mask;
    for (std::size_t i = 0; i < map.W.size(); ++i) mask[i] = map.W[i] >= fraction * map.max_value;
    return mask;
}

ThresholdMetrics threshold_metrics(const IndicatorMap& map, const std::vector<char>& truth, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("threshold_metrics: fraction must lie in (0, 1)");
    if (truth.size() != map.W.size()) throw DomainError("threshold_metrics: grids are not compatible");
    const auto mask = threshold_mask(map, fraction);
    std::size_t inter = 0, uni = 0, m = 0, t = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        inter += mask[i] && truth[i];
        uni += mask[i] || truth[i];
        m += mask[i] != 0;
        t += truth[i] != 0;
    }
    if (t == 0) throw DomainError("threshold_metrics: empty support");
    return {static_cast<double>(inter) / static_cast<double>(uni), static_cast<double>(m) / static_cast<double>(t)};
}

std::vector<char> support_at(const IndicatorMap& map, const Grid& grid, const Medium& medium) {
    std::vector<char> truth(map.grid.size(), 0);
    for (std::size_t i = 0; i < map.grid.size(); ++i) {
        const long long c = grid.locate(map.grid.centers[i]);
        truth[i] = c >= 0 && medium.n[static_cast<std::size_t>(c)] != 1.0;
    }
    return truth;
}

ThresholdMetrics threshold_metrics(const IndicatorMap& map, const Grid& grid, const Medium& medium, double fraction) {
    return threshold_metrics(map, support_at(map, grid, medium), fraction);
}

int connected_components(const std::vector<char>& mask, int n) {
    if (mask.size() != static_cast<std::size_t>(n) * n) throw DomainError("connected_components: size mismatch");
    std::vector<int> label(mask.size(), 0);
    std::vector<std::size_t> stack;
    int count = 0;
    for (std::size_t start = 0; start < mask.size(); ++start) {
        if (!mask[start] || label[start]) continue;
        ++count;
        label[start] = count;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t c = stack.back();
            stack.pop_back();
            const int x = static_cast<int>(c % n), y = static_cast<int>(c / n);
            const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
            for (const auto& p : nb) {
                if (p[0] < 0 || p[0] >= n || p[1] < 0 || p[1] >= n) continue;
                const std::size_t q = static_cast<std::size_t>(p[1]) * n + p[0];
                if (mask[q] && !label[q]) {
                    label[q] = count;
                    stack.push_back(q);
                }
            }
        }
    }
    return count;
}

}  // namespace frachelm
