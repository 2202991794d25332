#pragma once

#include "odg/splat.hpp"

#include <vector>

namespace odg::detail {

/// Projected, culled and depth-sorted scene shared by the forward and
/// backward passes. Flat layouts keep the per-pixel loops allocation-free.
struct PreparedScene {
    int width = 0, height = 0, num_classes = 0;
    int count = 0;                 // surviving splats
    std::vector<int> source;       // original gaussian index, sorted by (depth, source)
    std::vector<double> mean_x, mean_y, depth, opacity;
    std::vector<double> inv_a, inv_b, inv_c; // inverse of (cov2d + lowpass I): [[a,b],[b,c]]
    std::vector<double> cutoff_radius;       // cutoff_sigma * sqrt(lambda_max)
    std::vector<double> probs;               // count * C, softmax class probabilities
};

PreparedScene prepare_scene(const std::vector<Gaussian3D>& gaussians, const CameraModel& cam,
                            const RenderSettings& settings);

/// Largest eigenvalue of a symmetric 2x2 [[a, b], [b, c]].
inline double sym2_max_eig(double a, double b, double c) {
    const double half_tr = 0.5 * (a + c);
    const double det = a * c - b * b;
    const double disc = std::sqrt(std::max(0.0, half_tr * half_tr - det));
    return half_tr + disc;
}

} // namespace odg::detail
