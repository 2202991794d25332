#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace odg {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using VecX = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;

/// Thrown when a configuration value violates its contract.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an input file or data set is malformed or missing.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Counter-based deterministic RNG (splitmix64 core). Distribution code is
/// our own so streams are reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        // avoid log(0)
        u1 = std::max(u1, 0x1.0p-53);
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    /// Derive an independent stream, e.g. per module or per step.
    Rng fork(std::uint64_t salt) {
        Rng child(state_ ^ (0x6a09e667f3bcc909ull + salt * 0x9e3779b97f4a7c15ull));
        child.next_u64();
        return child;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline double sigmoid(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline double softplus(double x) {
    if (x > 30.0) return x;
    return std::log1p(std::exp(x));
}

inline double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

/// Rotation matrix of a unit quaternion (w, x, y, z).
Mat3 quat_to_rot(const Vec4& q);

/// Backward of quat_to_rot through the internal normalization: given
/// dL/dR, returns dL/dq for the *unnormalized* quaternion q.
Vec4 quat_to_rot_backward(const Vec4& q, const Mat3& d_rot);

/// Checks R^T R = I and det R = 1 within tol.
bool is_rigid(const Mat4& pose, double tol = 1e-6);

} // namespace odg
