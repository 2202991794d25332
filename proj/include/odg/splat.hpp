#pragma once

#include "odg/common.hpp"
#include "odg/scene.hpp"

#include <optional>
#include <vector>

namespace odg {

/// Image-plane footprint of a projected Gaussian. cov2d is the raw EWA
/// covariance; the low-pass dilation is applied at evaluation time.
struct Splat2D {
    Vec2 mean2d = Vec2::Zero();   // continuous pixel coords
    Mat2 cov2d = Mat2::Zero();    // pixels^2
    double depth = 0.0;           // camera-space z, meters
    double opacity = 0.0;
    VecX sem_prob;                // softmax of the Gaussian's class logits
};

struct RenderSettings {
    int tile_size = 16;
    double alpha_max = 0.999;   // per-sample opacity clamp
    double t_min = 1e-4;        // early termination of transmittance
    double cutoff_sigma = 6.0;  // per-splat extent used by the tiled path
    double lowpass = 0.3;       // isotropic dilation of cov2d at evaluation
    double z_near = 0.05;       // near-plane cull, meters
    double alpha_min = 1e-4;    // below this, depth_norm falls back to bg_depth
    double bg_depth = 0.0;
};

/// Per-view accumulation buffers, row-major (row * width + col); the
/// semantic buffer interleaves C channels per pixel.
struct RenderOutput {
    int width = 0, height = 0, num_classes = 0;
    std::vector<double> depth;      // sum T_i a_i d_i
    std::vector<double> depth_norm; // depth / alpha where alpha > alpha_min, else bg
    std::vector<double> sem;        // sum T_i a_i c_i, per class
    std::vector<double> alpha;      // sum T_i a_i

    std::size_t pixel(int row, int col) const {
        return static_cast<std::size_t>(row) * width + col;
    }
};

/// Upstream gradients w.r.t. RenderOutput fields; empty vectors mean zero.
struct RenderOutputGrad {
    std::vector<double> d_depth;
    std::vector<double> d_depth_norm;
    std::vector<double> d_sem;
    std::vector<double> d_alpha;
};

/// Gradients for one input Gaussian.
struct GaussianGrad {
    Vec3 d_mu = Vec3::Zero();
    Vec3 d_scale = Vec3::Zero();
    Vec4 d_rot = Vec4::Zero();
    double d_opacity = 0.0;
    VecX d_sem;
};

/// Pinhole projection with the EWA covariance J W Sigma W^T J^T. Returns
/// nullopt when the mean is closer than z_near or the 99% ellipse misses
/// the image entirely.
std::optional<Splat2D> project_gaussian(const Gaussian3D& g, const CameraModel& cam,
                                        const RenderSettings& settings = {});

/// Tile-binned front-to-back compositor.
RenderOutput render_view(const std::vector<Gaussian3D>& gaussians, const CameraModel& cam,
                         const RenderSettings& settings = {});

/// Per-pixel reference path: every surviving splat is evaluated at every
/// pixel, with no early termination and no extent cutoff.
RenderOutput render_view_naive(const std::vector<Gaussian3D>& gaussians, const CameraModel& cam,
                               const RenderSettings& settings = {});

/// Reverse-mode gradients of the full compositing chain, including the
/// projection and 2D-covariance Jacobians. Culled Gaussians get zeros.
/// Non-finite upstream gradients are rejected.
std::vector<GaussianGrad> render_backward(const std::vector<Gaussian3D>& gaussians,
                                          const CameraModel& cam, const RenderOutputGrad& grad,
                                          const RenderSettings& settings = {});

} // namespace odg
