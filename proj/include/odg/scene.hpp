#pragma once

#include "odg/common.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace odg {

/// 3D anisotropic Gaussian with per-class semantic logits.
struct Gaussian3D {
    Vec3 mu = Vec3::Zero();          // world position, meters
    Vec3 scale = Vec3::Ones();       // positive axis lengths, meters
    Vec4 rot = Vec4(1, 0, 0, 0);     // unit quaternion (w, x, y, z)
    double opacity = 1.0;            // in [0, 1]
    VecX sem;                        // C class logits

    bool valid(double tol = 1e-6) const;
};

/// Box extents, yaw and planar velocity carried by dynamic queries.
/// Vertical velocity is fixed at zero.
struct BoxAttributes {
    double l = 4.0, w = 2.0, h = 1.5; // meters
    double theta = 0.0;               // yaw, radians
    double vx = 0.0, vy = 0.0;        // m/s

    static constexpr double vz = 0.0;
};

struct GridIndex {
    int h = 0, w = 0, z = 0;
    bool operator==(const GridIndex&) const = default;
};

/// Dense labeled occupancy grid. Label values are semantic class ids in
/// [0, C); free_label == C marks empty voxels.
struct VoxelGrid {
    Vec3 origin = Vec3::Zero();  // world coords of the min corner
    double voxel_size = 0.5;     // meters
    int H = 0, W = 0, Z = 0;
    std::uint16_t free_label = 0;
    std::vector<std::uint8_t> labels; // H*W*Z, z-fastest

    static VoxelGrid filled(const Vec3& origin, double voxel_size, int H, int W, int Z,
                            std::uint16_t free_label);

    std::size_t index(int h, int w, int z) const {
        return (static_cast<std::size_t>(h) * W + w) * Z + z;
    }
    std::uint8_t label(int h, int w, int z) const { return labels[index(h, w, z)]; }
    void set_label(int h, int w, int z, std::uint8_t c) { labels[index(h, w, z)] = c; }

    bool in_bounds(const GridIndex& i) const {
        return i.h >= 0 && i.h < H && i.w >= 0 && i.w < W && i.z >= 0 && i.z < Z;
    }
    bool same_geometry(const VoxelGrid& o, double tol = 1e-9) const;

    Vec3 aabb_min() const { return origin; }
    Vec3 aabb_max() const {
        return origin + voxel_size * Vec3(static_cast<double>(H), static_cast<double>(W),
                                          static_cast<double>(Z));
    }

    /// Normalized [0,1]^3 scene coordinates <-> world meters, via the grid AABB.
    Vec3 normalize(const Vec3& p) const;
    Vec3 denormalize(const Vec3& u) const;

    void validate() const; // throws DataError on broken invariants
};

/// Pinhole camera with a rigid camera-to-world transform.
struct CameraModel {
    double fx = 1, fy = 1, cx = 0, cy = 0;
    int width = 0, height = 0;
    Mat4 cam_to_world = Mat4::Identity();

    Mat4 world_to_cam() const;
    Mat3 rot_world_to_cam() const { return cam_to_world.block<3, 3>(0, 0).transpose(); }
    Vec3 to_camera(const Vec3& p_world) const;
    /// Unit-norm world-space direction through pixel center (ix+0.5, iy+0.5).
    Vec3 pixel_ray_dir(double u, double v) const;
    Vec3 center() const { return cam_to_world.block<3, 1>(0, 3); }

    void validate() const;
};

struct EgoPose {
    double timestamp = 0.0; // seconds
    Mat4 pose = Mat4::Identity(); // ego-to-world

    void validate() const;
};

/// Occupied voxel centers with their class labels, in extraction order.
struct GroundTruthSet {
    std::vector<Vec3> points;
    std::vector<int> classes;

    std::size_t size() const { return points.size(); }
};

/// Floor-quantizes a world point into the grid; out-of-bounds is a value.
std::optional<GridIndex> world_to_grid(const Vec3& p, const VoxelGrid& grid);

/// Voxel center of an in-range index; throws std::out_of_range otherwise.
Vec3 grid_to_world(const GridIndex& idx, const VoxelGrid& grid);

/// One (center, class) pair per occupied voxel, lexicographic in (h, w, z).
GroundTruthSet extract_ground_truth(const VoxelGrid& grid);

/// Sigma = R diag(s^2) R^T. A non-unit quaternion is normalized internally;
/// a zero quaternion is rejected.
Mat3 gaussian_covariance(const Gaussian3D& g);

struct PointsToGridResult {
    VoxelGrid grid;
    std::size_t dropped = 0; // out-of-bounds points
};

/// Votes labeled points into a grid shaped like `templ`. Ties within a voxel
/// resolve by highest confidence, then lowest class id.
PointsToGridResult points_to_grid(const std::vector<Vec3>& points, const std::vector<int>& classes,
                                  const std::vector<double>& confidences, const VoxelGrid& templ);

} // namespace odg
