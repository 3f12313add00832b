#pragma once

#include <vector>

#include "frachelm/farfield.hpp"

namespace frachelm {

SvdTriple svd_factor(const FarFieldMatrix& fm);

/// Entries e^{-ik theta_j . z}.
DenseVector test_vector(const Point& z, const AngleSet& angles, double k);

/// W = (sum_j |rho_j|^2 / max(sigma_j, floor))^{-1} with rho = V^T test.
double indicator(const SvdTriple& svd, const DenseVector& test, double floor);

/// Default spectral floor: 1e-12 sigma_max without noise, delta sigma_max with noise delta.
double default_floor(const SvdTriple& svd, double noise);

struct IndicatorMap {
    Grid grid;
    std::vector<double> W;
    std::vector<double> W_normalized;
    double max_value = 0.0;
};

IndicatorMap indicator_map(const SvdTriple& svd, const AngleSet& angles, double k, const Grid& sample_grid,
                           double floor);

/// Coarser grid over the same box: every `factor`-th cell per axis.
Grid decimate_grid(const Grid& grid, int factor);

struct ThresholdMetrics {
    double jaccard = 0.0;
    double area_ratio = 0.0;
};

/// `truth` holds the support indicator at the map's sample points.
std::vector<char> threshold_mask(const IndicatorMap& map, double fraction);
ThresholdMetrics threshold_metrics(const IndicatorMap& map, const std::vector<char>& truth, double fraction);
/// Support indicator of `medium` (on `grid`) sampled at the map's points.
std::vector<char> support_at(const IndicatorMap& map, const Grid& grid, const Medium& medium);
ThresholdMetrics threshold_metrics(const IndicatorMap& map, const Grid& grid, const Medium& medium, double fraction);

/// Number of 4-connected components of a mask on an n x n grid.
int connected_components(const std::vector<char>& mask, int n);

}  // namespace frachelm
