#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>

/// Exact-structure arithmetic for SO(3) and its Lie algebra so(3), with the
/// K-P Cartan split L = K ⊕ P, the trace inner product, closed-form
/// exponentials and the conjugation action of the symmetry group
/// G = K⁺ ∪ K⁻ of rotations/reflections about the vertical axis.
namespace kpso3 {

/// Tolerance for orthogonality / determinant checks on group elements.
inline constexpr double kOrthTol = 1e-9;

/// Generic tolerance for numerical identities (round trips, group laws).
inline constexpr double kNumTol = 1e-9;

/// Element of so(3) stored as coordinates (a, b, c) in the orthonormal basis
/// {p1, p2, k}:
///
///   p1 = [0 0 0; 0 0 -1; 0 1 0]   (P part)
///   p2 = [0 0 1; 0 0 0; -1 0 0]   (P part)
///   k  = [0 -1 0; 1 0 0; 0 0 0]   (K part)
///
/// The induced matrix a·p1 + b·p2 + c·k is skew-symmetric by construction.
/// Units of the coordinates are rad/time.
class AlgebraElement {
public:
    AlgebraElement() : coords_(Eigen::Vector3d::Zero()) {}
    AlgebraElement(double a, double b, double c) : coords_(a, b, c) {}
    explicit AlgebraElement(const Eigen::Vector3d& coords) : coords_(coords) {}

    static AlgebraElement p1() { return {1.0, 0.0, 0.0}; }
    static AlgebraElement p2() { return {0.0, 1.0, 0.0}; }
    static AlgebraElement k() { return {0.0, 0.0, 1.0}; }

    /// Coordinates (a, b, c) in the {p1, p2, k} basis.
    const Eigen::Vector3d& coords() const { return coords_; }
    double a() const { return coords_[0]; }
    double b() const { return coords_[1]; }
    double c() const { return coords_[2]; }

    /// The 3x3 skew-symmetric matrix a·p1 + b·p2 + c·k.
    Eigen::Matrix3d matrix() const;

    /// Inverse of matrix(): coordinates of a skew-symmetric matrix.
    static AlgebraElement from_matrix(const Eigen::Matrix3d& m);

    AlgebraElement operator+(const AlgebraElement& o) const { return AlgebraElement(coords_ + o.coords_); }
    AlgebraElement operator-(const AlgebraElement& o) const { return AlgebraElement(coords_ - o.coords_); }
    AlgebraElement operator-() const { return AlgebraElement(-coords_); }
    AlgebraElement operator*(double s) const { return AlgebraElement(coords_ * s); }

    double norm() const { return coords_.norm(); }

private:
    Eigen::Vector3d coords_;
};

inline AlgebraElement operator*(double s, const AlgebraElement& a) { return a * s; }

/// Inner product -1/2 Tr(A·B). Under this normalization {p1, p2, k} is an
/// orthonormal basis and K ⟂ P.
double inner_product(const AlgebraElement& a, const AlgebraElement& b);

/// Lie bracket [A, B] = AB - BA, returned in basis coordinates.
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

/// Split A into its P part a·p1 + b·p2 and its K part c·k.
std::pair<AlgebraElement, AlgebraElement> cartan_split(const AlgebraElement& a);

/// A rotation matrix: M with MᵀM = I and det M = +1, both within kOrthTol.
class GroupElement {
public:
    /// Identity rotation.
    GroupElement() : m_(Eigen::Matrix3d::Identity()) {}

    /// Validating constructor; throws std::invalid_argument if m is not a
    /// rotation within kOrthTol.
    static GroupElement from_matrix(const Eigen::Matrix3d& m);

    /// Trusted constructor for matrices produced by exact group operations.
    static GroupElement trusted(const Eigen::Matrix3d& m) { return GroupElement(m); }

    static GroupElement identity() { return GroupElement(); }

    const Eigen::Matrix3d& matrix() const { return m_; }

    GroupElement operator*(const GroupElement& o) const { return GroupElement(m_ * o.m_); }

    /// Group inverse (= transpose).
    GroupElement inverse() const { return GroupElement(m_.transpose()); }

    /// Orthogonality defect max(‖MᵀM - I‖_max, |det M - 1|).
    double orthogonality_error() const;

    /// Nearest rotation by polar projection. Provided for callers that want
    /// to renormalize explicitly; no operation applies it silently.
    GroupElement orthonormalized() const;

private:
    explicit GroupElement(const Eigen::Matrix3d& m) : m_(m) {}
    Eigen::Matrix3d m_;
};

/// Frobenius distance between two group elements.
double distance(const GroupElement& x, const GroupElement& y);

/// e^{A t} via the closed-form axis-angle formula; exact for skew-symmetric
/// 3x3 matrices, identity when ‖A‖t = 0.
GroupElement exp(const AlgebraElement& a, double t = 1.0);

/// H(s) = e^{p1 s}, the rotation about the first axis used as the radial
/// factor of orbit representatives.
GroupElement rotation_h(double s);

/// Which connected component of G an element lives in. Plus elements have
/// +1 in entry (3,3), minus elements -1.
enum class Component { plus, minus };

/// Element of the symmetry group G = K⁺ ∪ K⁻ acting on SO(3) by conjugation.
///
/// K⁺(r) = e^{k r} is the rotation by r about the vertical axis; K⁻(r) is
/// the orientation-reversing block [cos r, -sin r; -sin r, -cos r] ⊕ (-1).
/// Angles are kept normalized to [0, 2π).
class SymmetryElement {
public:
    SymmetryElement() : angle_(0.0), comp_(Component::plus) {}

    static SymmetryElement plus(double r) { return {r, Component::plus}; }
    static SymmetryElement minus(double r) { return {r, Component::minus}; }
    static SymmetryElement identity() { return plus(0.0); }

    double angle() const { return angle_; }
    Component component() const { return comp_; }

    GroupElement matrix() const;

    /// Group law, closed over the two components.
    SymmetryElement operator*(const SymmetryElement& o) const;
    SymmetryElement inverse() const;

private:
    SymmetryElement(double r, Component c);
    double angle_;
    Component comp_;
};

/// Conjugation K·X·K⁻¹. Preserves entry (3,3), the trace and the rotation
/// invariants of X.
GroupElement conjugate(const SymmetryElement& k, const GroupElement& x);

/// Adjoint action K·A·K⁻¹ on the algebra; maps P to P and K-span to K-span.
AlgebraElement conjugate(const SymmetryElement& k, const AlgebraElement& a);

}  // namespace kpso3
