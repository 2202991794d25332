#pragma once

#include "odg/common.hpp"
#include "odg/scene.hpp"

#include <optional>

namespace odg {

enum class QueryKind { Static, Dynamic };

/// Alignment from the keyframe (t_ref) back to a history frame (t_target).
struct FrameWarp {
    double t_target = 0.0;
    double t_ref = 0.0;
    EgoPose pose_target;
    EgoPose pose_ref;

    double dt() const { return t_ref - t_target; }
    void validate() const;
};

/// Constant-velocity shift to a previous timestamp; z is untouched.
Vec3 warp_dynamic(const Vec3& p, double vx, double vy, double t_ref, double t_target);

/// dp/dv for warp_dynamic (needed when velocity is a learned quantity):
/// dx/dvx = -(t_ref - t_target), dy/dvy likewise, everything else zero.
inline double warp_dynamic_dvel(double t_ref, double t_target) { return -(t_ref - t_target); }

/// Rigid change of frame, P_target^-1 * P_ref applied to p.
Vec3 warp_ego(const Vec3& p, const EgoPose& pose_ref, const EgoPose& pose_target);

/// Combined warp matching the model: static points get ego compensation
/// only; dynamic points get the velocity shift first, then ego compensation.
/// Velocity must be present iff kind == Dynamic.
Vec3 compose_warp(const Vec3& p, QueryKind kind, const FrameWarp& warp,
                  const std::optional<Vec2>& velocity);

/// Rotation part of the combined linear map (for chaining gradients through
/// compose_warp back to the input point).
Mat3 warp_ego_linear(const EgoPose& pose_ref, const EgoPose& pose_target);

} // namespace odg
