#include "odg/scene.hpp"

#include <algorithm>
#include <cmath>

namespace odg {

Mat3 quat_to_rot(const Vec4& q) {
    const double n = q.norm();
    if (n < 1e-12) throw std::invalid_argument("zero quaternion");
    const double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
    Mat3 R;
    R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return R;
}

Vec4 quat_to_rot_backward(const Vec4& q, const Mat3& dR) {
    const double n = q.norm();
    if (n < 1e-12) throw std::invalid_argument("zero quaternion");
    const Vec4 u = q / n;
    const double w = u[0], x = u[1], y = u[2], z = u[3];

    // dR/d(unit quaternion components), contracted with dR.
    Vec4 du = Vec4::Zero();
    auto acc = [&](int r, int c, double dw, double dx, double dy, double dz) {
        const double g = dR(r, c);
        du[0] += g * dw;
        du[1] += g * dx;
        du[2] += g * dy;
        du[3] += g * dz;
    };
    acc(0, 0, 0, 0, -4 * y, -4 * z);
    acc(0, 1, -2 * z, 2 * y, 2 * x, -2 * w);
    acc(0, 2, 2 * y, 2 * z, 2 * w, 2 * x);
    acc(1, 0, 2 * z, 2 * y, 2 * x, 2 * w);
    acc(1, 1, 0, -4 * x, 0, -4 * z);
    acc(1, 2, -2 * x, -2 * w, 2 * z, 2 * y);
    acc(2, 0, -2 * y, 2 * z, -2 * w, 2 * x);
    acc(2, 1, 2 * x, 2 * w, 2 * z, 2 * y);
    acc(2, 2, 0, -4 * x, -4 * y, 0);

    // Chain through u = q / |q|: dq = (I - u u^T) / |q| * du.
    return (du - u * u.dot(du)) / n;
}

bool is_rigid(const Mat4& pose, double tol) {
    const Mat3 R = pose.block<3, 3>(0, 0);
    if (((R.transpose() * R) - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(R.determinant() - 1.0) > tol) return false;
    if (std::abs(pose(3, 0)) > tol || std::abs(pose(3, 1)) > tol || std::abs(pose(3, 2)) > tol ||
        std::abs(pose(3, 3) - 1.0) > tol)
        return false;
    return true;
}

bool Gaussian3D::valid(double tol) const {
    if (std::abs(rot.norm() - 1.0) > tol) return false;
    if (!(scale.array() > 0.0).all()) return false;
    if (!(opacity >= 0.0 && opacity <= 1.0)) return false;
    return mu.allFinite() && scale.allFinite() && sem.allFinite();
}

VoxelGrid VoxelGrid::filled(const Vec3& origin, double voxel_size, int H, int W, int Z,
                            std::uint16_t free_label) {
    VoxelGrid g;
    g.origin = origin;
    g.voxel_size = voxel_size;
    g.H = H;
    g.W = W;
    g.Z = Z;
    g.free_label = free_label;
    g.labels.assign(static_cast<std::size_t>(H) * W * Z, static_cast<std::uint8_t>(free_label));
    return g;
}

bool VoxelGrid::same_geometry(const VoxelGrid& o, double tol) const {
    return H == o.H && W == o.W && Z == o.Z && free_label == o.free_label &&
           std::abs(voxel_size - o.voxel_size) <= tol && (origin - o.origin).norm() <= tol;
}

Vec3 VoxelGrid::normalize(const Vec3& p) const {
    const Vec3 extent = aabb_max() - aabb_min();
    return (p - origin).cwiseQuotient(extent);
}

Vec3 VoxelGrid::denormalize(const Vec3& u) const {
    const Vec3 extent = aabb_max() - aabb_min();
    return origin + u.cwiseProduct(extent);
}

void VoxelGrid::validate() const {
    if (H <= 0 || W <= 0 || Z <= 0) throw DataError("voxel grid dims must be positive");
    if (!(voxel_size > 0.0)) throw DataError("voxel size must be positive");
    if (labels.size() != static_cast<std::size_t>(H) * W * Z)
        throw DataError("voxel grid label buffer size mismatch");
    for (std::uint8_t l : labels) {
        if (l > free_label) throw DataError("voxel label exceeds free label");
    }
}

Mat4 CameraModel::world_to_cam() const {
    const Mat3 R = cam_to_world.block<3, 3>(0, 0);
    const Vec3 t = cam_to_world.block<3, 1>(0, 3);
    Mat4 inv = Mat4::Identity();
    inv.block<3, 3>(0, 0) = R.transpose();
    inv.block<3, 1>(0, 3) = -R.transpose() * t;
    return inv;
}

Vec3 CameraModel::to_camera(const Vec3& p) const {
    const Mat3 R = cam_to_world.block<3, 3>(0, 0);
    const Vec3 t = cam_to_world.block<3, 1>(0, 3);
    return R.transpose() * (p - t);
}

Vec3 CameraModel::pixel_ray_dir(double u, double v) const {
    const Vec3 d_cam((u - cx) / fx, (v - cy) / fy, 1.0);
    const Mat3 R = cam_to_world.block<3, 3>(0, 0);
    return (R * d_cam).normalized();
}

void CameraModel::validate() const {
    if (!(fx > 0.0 && fy > 0.0)) throw DataError("camera focal lengths must be positive");
    if (width <= 0 || height <= 0) throw DataError("camera image size must be positive");
    if (!is_rigid(cam_to_world)) throw DataError("cam_to_world must be rigid");
}

void EgoPose::validate() const {
    if (!is_rigid(pose)) throw DataError("ego pose must be rigid");
}

std::optional<GridIndex> world_to_grid(const Vec3& p, const VoxelGrid& grid) {
    const Vec3 q = (p - grid.origin) / grid.voxel_size;
    const GridIndex idx{static_cast<int>(std::floor(q[0])), static_cast<int>(std::floor(q[1])),
                        static_cast<int>(std::floor(q[2]))};
    if (!grid.in_bounds(idx)) return std::nullopt;
    return idx;
}

Vec3 grid_to_world(const GridIndex& idx, const VoxelGrid& grid) {
    if (!grid.in_bounds(idx)) throw std::out_of_range("grid index out of range");
    return grid.origin + grid.voxel_size * Vec3(idx.h + 0.5, idx.w + 0.5, idx.z + 0.5);
}

GroundTruthSet extract_ground_truth(const VoxelGrid& grid) {
    GroundTruthSet out;
    for (int h = 0; h < grid.H; ++h) {
        for (int w = 0; w < grid.W; ++w) {
            for (int z = 0; z < grid.Z; ++z) {
                const std::uint8_t c = grid.label(h, w, z);
                if (c == grid.free_label) continue;
                out.points.push_back(grid_to_world({h, w, z}, grid));
                out.classes.push_back(c);
            }
        }
    }
    return out;
}

Mat3 gaussian_covariance(const Gaussian3D& g) {
    const Mat3 R = quat_to_rot(g.rot);
    const Vec3 s2 = g.scale.cwiseProduct(g.scale);
    return R * s2.asDiagonal() * R.transpose();
}

PointsToGridResult points_to_grid(const std::vector<Vec3>& points, const std::vector<int>& classes,
                                  const std::vector<double>& confidences,
                                  const VoxelGrid& templ) {
    if (points.size() != classes.size() || points.size() != confidences.size())
        throw std::invalid_argument("points_to_grid: size mismatch");
    PointsToGridResult res;
    res.grid = VoxelGrid::filled(templ.origin, templ.voxel_size, templ.H, templ.W, templ.Z,
                                 templ.free_label);
    // Per-voxel winning vote.
    std::vector<double> best_conf(res.grid.labels.size(),
                                  -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto idx = world_to_grid(points[i], templ);
        if (!idx) {
            ++res.dropped;
            continue;
        }
        const std::size_t lin = res.grid.index(idx->h, idx->w, idx->z);
        const int cur = res.grid.labels[lin];
        const bool untouched = best_conf[lin] == -std::numeric_limits<double>::infinity();
        if (untouched || confidences[i] > best_conf[lin] ||
            (confidences[i] == best_conf[lin] && classes[i] < cur)) {
            best_conf[lin] = confidences[i];
            res.grid.labels[lin] = static_cast<std::uint8_t>(classes[i]);
        }
    }
    return res;
}

} // namespace odg
