#include "odg/motion.hpp"

namespace odg {

void FrameWarp::validate() const {
    if (t_target > t_ref) throw DataError("frame warp target must not be after the keyframe");
    pose_target.validate();
    pose_ref.validate();
}

Vec3 warp_dynamic(const Vec3& p, double vx, double vy, double t_ref, double t_target) {
    const double dt = t_ref - t_target;
    return Vec3(p[0] - vx * dt, p[1] - vy * dt, p[2]);
}

Vec3 warp_ego(const Vec3& p, const EgoPose& pose_ref, const EgoPose& pose_target) {
    if (!is_rigid(pose_ref.pose) || !is_rigid(pose_target.pose))
        throw DataError("warp_ego requires rigid poses");
    const Mat4 m = pose_target.pose.inverse() * pose_ref.pose;
    return m.block<3, 3>(0, 0) * p + m.block<3, 1>(0, 3);
}

Mat3 warp_ego_linear(const EgoPose& pose_ref, const EgoPose& pose_target) {
    const Mat4 m = pose_target.pose.inverse() * pose_ref.pose;
    return m.block<3, 3>(0, 0);
}

Vec3 compose_warp(const Vec3& p, QueryKind kind, const FrameWarp& warp,
                  const std::optional<Vec2>& velocity) {
    if (kind == QueryKind::Dynamic && !velocity)
        throw std::invalid_argument("dynamic warp requires a velocity");
    Vec3 q = p;
    if (kind == QueryKind::Dynamic)
        q = warp_dynamic(q, (*velocity)[0], (*velocity)[1], warp.t_ref, warp.t_target);
    return warp_ego(q, warp.pose_ref, warp.pose_target);
}

} // namespace odg
