#ifndef SENSORCTL_CAMERA_HPP
#define SENSORCTL_CAMERA_HPP

#include <vector>

#include "sensorctl/types.hpp"

namespace sensorctl {

// Planar pose, angle in (-pi, pi].
struct Pose2 {
    double x = 0.0;
    double y = 0.0;
    double alpha = 0.0;

    Pose2() = default;
    Pose2(double px, double py, double a);
    Vec as_vec() const;
    static Pose2 from_vec(const Vec& v);
};

using ObjectPose = Pose2;
using CameraPose = Pose2;

// 2-D rigid transform q -> R(angle) q + translation.
struct Transform2 {
    double angle = 0.0;
    Eigen::Vector2d translation = Eigen::Vector2d::Zero();

    Eigen::Vector2d apply(const Eigen::Vector2d& q) const;
    Transform2 inverse() const;
    Transform2 compose(const Transform2& inner) const;  // this after inner
};

// Point features in object coordinates with outward unit normals.
struct FeatureSet {
    std::vector<Eigen::Vector2d> points;
    std::vector<Eigen::Vector2d> normals;

    FeatureSet() = default;
    FeatureSet(std::vector<Eigen::Vector2d> pts, std::vector<Eigen::Vector2d> ns);
    std::size_t size() const { return points.size(); }

    // Unit square corners with outward diagonal normals.
    static FeatureSet unit_square();
};

// Transform taking object coordinates to camera coordinates.
Transform2 object_to_camera(const ObjectPose& p, const CameraPose& u);

// A feature faces the camera when its world-frame normal points against the
// camera viewing direction (the camera's +x axis); grazing views don't count.
bool visible(const ObjectPose& p, const CameraPose& u, std::size_t feature_index,
             const FeatureSet& features);

std::vector<std::size_t> visible_indices(const ObjectPose& p, const CameraPose& u,
                                         const FeatureSet& features);

// Camera-frame coordinates of the selected features, stacked in order
// (2 entries per feature). Raises ModelError when the selection is empty.
Vec project_features(const ObjectPose& p, const CameraPose& u, const FeatureSet& features,
                     const std::vector<std::size_t>& selection);

// Jacobian of project_features with respect to (x_o, y_o, alpha_o).
Mat project_features_jacobian(const ObjectPose& p, const CameraPose& u,
                              const FeatureSet& features,
                              const std::vector<std::size_t>& selection);

// Full 3-parameter measurement system [x_o, y_o, alpha_o] observing the fixed
// feature selection from camera pose u = [x_c, y_c, alpha_c], isotropic noise.
MeasurementSystem make_camera_system(const FeatureSet& features,
                                     const std::vector<std::size_t>& selection,
                                     double noise_sigma);

// Scalar system in alpha_o with x_o, y_o known and held fixed.
MeasurementSystem make_camera_alpha_system(const FeatureSet& features,
                                           const std::vector<std::size_t>& selection,
                                           double x_o, double y_o, double noise_sigma);

}  // namespace sensorctl

#endif
