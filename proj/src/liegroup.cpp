#include "kpso3/liegroup.hpp"

#include <cmath>
#include <numbers>

namespace kpso3 {

namespace {

double wrap_angle(double r) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(r, two_pi);
    if (w < 0.0) w += two_pi;
    // fmod can return exactly two_pi after the correction when r is a tiny
    // negative number; fold that back to zero.
    if (w >= two_pi) w -= two_pi;
    return w;
}

}  // namespace

Eigen::Matrix3d AlgebraElement::matrix() const {
    const double a = coords_[0], b = coords_[1], c = coords_[2];
    Eigen::Matrix3d m;
    m << 0.0, -c, b,
         c, 0.0, -a,
         -b, a, 0.0;
    return m;
}

AlgebraElement AlgebraElement::from_matrix(const Eigen::Matrix3d& m) {
    return AlgebraElement(m(2, 1), m(0, 2), m(1, 0));
}

double inner_product(const AlgebraElement& a, const AlgebraElement& b) {
    return -0.5 * (a.matrix() * b.matrix()).trace();
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
    const Eigen::Matrix3d am = a.matrix(), bm = b.matrix();
    return AlgebraElement::from_matrix(am * bm - bm * am);
}

std::pair<AlgebraElement, AlgebraElement> cartan_split(const AlgebraElement& a) {
    return {AlgebraElement(a.a(), a.b(), 0.0), AlgebraElement(0.0, 0.0, a.c())};
}

GroupElement GroupElement::from_matrix(const Eigen::Matrix3d& m) {
    GroupElement g(m);
    if (g.orthogonality_error() > kOrthTol) {
        throw std::invalid_argument("matrix is not special orthogonal within tolerance");
    }
    return g;
}

double GroupElement::orthogonality_error() const {
    const double ortho = (m_.transpose() * m_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    const double det = std::abs(m_.determinant() - 1.0);
    return std::max(ortho, det);
}

GroupElement GroupElement::orthonormalized() const {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m_, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
    if (r.determinant() < 0.0) {
        Eigen::Matrix3d u = svd.matrixU();
        u.col(2) *= -1.0;
        r = u * svd.matrixV().transpose();
    }
    return GroupElement(r);
}

double distance(const GroupElement& x, const GroupElement& y) {
    return (x.matrix() - y.matrix()).norm();
}

GroupElement exp(const AlgebraElement& a, double t) {
    const Eigen::Vector3d w = a.coords() * t;
    const double angle = w.norm();
    if (angle == 0.0) return GroupElement::identity();
    const Eigen::Vector3d axis = w / angle;
    const Eigen::Matrix3d hat = AlgebraElement(axis).matrix();
    const Eigen::Matrix3d m = Eigen::Matrix3d::Identity() + std::sin(angle) * hat +
                              (1.0 - std::cos(angle)) * (hat * hat);
    return GroupElement::trusted(m);
}

GroupElement rotation_h(double s) {
    return exp(AlgebraElement::p1(), s);
}

SymmetryElement::SymmetryElement(double r, Component c) : angle_(wrap_angle(r)), comp_(c) {}

GroupElement SymmetryElement::matrix() const {
    const double c = std::cos(angle_), s = std::sin(angle_);
    Eigen::Matrix3d m;
    if (comp_ == Component::plus) {
        m << c, -s, 0.0,
             s, c, 0.0,
             0.0, 0.0, 1.0;
    } else {
        m << c, -s, 0.0,
             -s, -c, 0.0,
             0.0, 0.0, -1.0;
    }
    return GroupElement::trusted(m);
}

SymmetryElement SymmetryElement::operator*(const SymmetryElement& o) const {
    // K⁻(r) = K⁺(-r)·K⁻(0) and K⁻(0)·K⁺(r)·K⁻(0) = K⁺(-r) give the
    // component-wise angle law below.
    const double a = angle_, b = o.angle_;
    if (comp_ == Component::plus) {
        return o.comp_ == Component::plus ? plus(a + b) : minus(b - a);
    }
    return o.comp_ == Component::plus ? minus(a + b) : plus(b - a);
}

SymmetryElement SymmetryElement::inverse() const {
    return comp_ == Component::plus ? plus(-angle_) : minus(angle_);
}

GroupElement conjugate(const SymmetryElement& k, const GroupElement& x) {
    const Eigen::Matrix3d km = k.matrix().matrix();
    return GroupElement::trusted(km * x.matrix() * km.transpose());
}

AlgebraElement conjugate(const SymmetryElement& k, const AlgebraElement& a) {
    const Eigen::Matrix3d km = k.matrix().matrix();
    return AlgebraElement::from_matrix(km * a.matrix() * km.transpose());
}

}  // namespace kpso3
