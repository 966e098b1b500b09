#include "sensorctl/camera.hpp"

#include "sensorctl/errors.hpp"

namespace sensorctl {

namespace {
Eigen::Matrix2d rot(double a) {
    Eigen::Matrix2d R;
    R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return R;
}
Eigen::Matrix2d rot_deriv(double a) {
    Eigen::Matrix2d R;
    R << -std::sin(a), -std::cos(a), std::cos(a), -std::sin(a);
    return R;
}
}  // namespace

Pose2::Pose2(double px, double py, double a) : x(px), y(py), alpha(wrap_angle(a)) {}

Vec Pose2::as_vec() const {
    Vec v(3);
    v << x, y, alpha;
    return v;
}

Pose2 Pose2::from_vec(const Vec& v) {
    if (v.size() != 3) throw ArgumentError("Pose2: expected 3 coordinates");
    return Pose2(v[0], v[1], v[2]);
}

Eigen::Vector2d Transform2::apply(const Eigen::Vector2d& q) const {
    return rot(angle) * q + translation;
}

Transform2 Transform2::inverse() const {
    Transform2 inv;
    inv.angle = -angle;
    inv.translation = -(rot(-angle) * translation);
    return inv;
}

Transform2 Transform2::compose(const Transform2& inner) const {
    Transform2 out;
    out.angle = angle + inner.angle;
    out.translation = rot(angle) * inner.translation + translation;
    return out;
}

FeatureSet::FeatureSet(std::vector<Eigen::Vector2d> pts, std::vector<Eigen::Vector2d> ns)
    : points(std::move(pts)), normals(std::move(ns)) {
    if (points.empty()) throw ArgumentError("FeatureSet: need at least one feature");
    if (normals.size() != points.size()) throw ArgumentError("FeatureSet: normals mismatch");
    for (const auto& n : normals)
        if (std::abs(n.norm() - 1.0) > 1e-9) throw ArgumentError("FeatureSet: normal not unit");
}

FeatureSet FeatureSet::unit_square() {
    const double r = 1.0 / std::sqrt(2.0);
    return FeatureSet(
        {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}},
        {{r, r}, {r, -r}, {-r, -r}, {-r, r}});
}

Transform2 object_to_camera(const ObjectPose& p, const CameraPose& u) {
    // world-from-object composed with camera-from-world
    Transform2 t;
    t.angle = p.alpha - u.alpha;
    t.translation = rot(-u.alpha) * Eigen::Vector2d(p.x - u.x, p.y - u.y);
    return t;
}

bool visible(const ObjectPose& p, const CameraPose& u, std::size_t feature_index,
             const FeatureSet& features) {
    if (feature_index >= features.size()) throw ArgumentError("visible: feature index out of range");
    const Eigen::Vector2d n_world = rot(p.alpha) * features.normals[feature_index];
    const Eigen::Vector2d view(std::cos(u.alpha), std::sin(u.alpha));
    return n_world.dot(view) < 0.0;
}

std::vector<std::size_t> visible_indices(const ObjectPose& p, const CameraPose& u,
                                         const FeatureSet& features) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < features.size(); ++i)
        if (visible(p, u, i, features)) out.push_back(i);
    return out;
}

Vec project_features(const ObjectPose& p, const CameraPose& u, const FeatureSet& features,
                     const std::vector<std::size_t>& selection) {
    if (selection.empty()) throw ModelError("project_features: no visible features");
    const Transform2 t = object_to_camera(p, u);
    Vec z(2 * selection.size());
    for (std::size_t i = 0; i < selection.size(); ++i) {
        if (selection[i] >= features.size())
            throw ArgumentError("project_features: feature index out of range");
        const Eigen::Vector2d q = t.apply(features.points[selection[i]]);
        z[2 * i] = q[0];
        z[2 * i + 1] = q[1];
    }
    return z;
}

Mat project_features_jacobian(const ObjectPose& p, const CameraPose& u,
                              const FeatureSet& features,
                              const std::vector<std::size_t>& selection) {
    if (selection.empty()) throw ModelError("project_features_jacobian: no visible features");
    const Eigen::Matrix2d Rc = rot(-u.alpha);
    const Eigen::Matrix2d dR = rot_deriv(p.alpha);
    Mat J(2 * selection.size(), 3);
    for (std::size_t i = 0; i < selection.size(); ++i) {
        const Eigen::Vector2d& f = features.points[selection[i]];
        J.block<2, 2>(2 * i, 0) = Rc;
        J.block<2, 1>(2 * i, 2) = Rc * dR * f;
    }
    return J;
}

MeasurementSystem make_camera_system(const FeatureSet& features,
                                     const std::vector<std::size_t>& selection,
                                     double noise_sigma) {
    if (selection.empty()) throw ArgumentError("make_camera_system: empty selection");
    MeasurementSystem sys;
    sys.param_dim = 3;
    sys.control_dim = 3;
    sys.obs_dim = static_cast<Eigen::Index>(2 * selection.size());
    sys.transfer = [features, selection](const Vec& u, const Vec& p) {
        return project_features(Pose2::from_vec(p), Pose2::from_vec(u), features, selection);
    };
    sys.jacobian = [features, selection](const Vec& u, const Vec& p) {
        return project_features_jacobian(Pose2::from_vec(p), Pose2::from_vec(u), features,
                                         selection);
    };
    const Eigen::Index k = sys.obs_dim;
    const double var = noise_sigma * noise_sigma;
    sys.noise = [k, var](const Vec&, const Vec&) {
        return GaussianNoiseSpec::isotropic(k, var);
    };
    return sys;
}

MeasurementSystem make_camera_alpha_system(const FeatureSet& features,
                                           const std::vector<std::size_t>& selection,
                                           double x_o, double y_o, double noise_sigma) {
    if (selection.empty()) throw ArgumentError("make_camera_alpha_system: empty selection");
    MeasurementSystem sys;
    sys.param_dim = 1;
    sys.control_dim = 3;
    sys.obs_dim = static_cast<Eigen::Index>(2 * selection.size());
    sys.transfer = [features, selection, x_o, y_o](const Vec& u, const Vec& p) {
        return project_features(Pose2(x_o, y_o, p[0]), Pose2::from_vec(u), features, selection);
    };
    sys.jacobian = [features, selection, x_o, y_o](const Vec& u, const Vec& p) {
        const Mat full = project_features_jacobian(Pose2(x_o, y_o, p[0]), Pose2::from_vec(u),
                                                   features, selection);
        return Mat(full.col(2));
    };
    const Eigen::Index k = sys.obs_dim;
    const double var = noise_sigma * noise_sigma;
    sys.noise = [k, var](const Vec&, const Vec&) {
        return GaussianNoiseSpec::isotropic(k, var);
    };
    return sys;
}

}  // namespace sensorctl
