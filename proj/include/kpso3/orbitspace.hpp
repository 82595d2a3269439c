#pragma once

#include "kpso3/liegroup.hpp"

#include <string>
#include <vector>

/// The quotient SO(3)/G for G = K⁺ ∪ K⁻ is a half disc of radius π in polar
/// coordinates (ρ, θ): ρ ∈ [0, π], θ ∈ [0, π]. Every orbit has a canonical
/// representative H(π - ρ)·K⁺(θ). For the connected subgroup K⁺ alone the
/// quotient is the full disc, θ ∈ (-π, π]; the extra sign of θ is recovered
/// from the K⁺-invariant functional X₂₁ - X₁₂ (positive on the upper half).
///
/// Orbits are classified by isotropy type into five strata: the open interior
/// (trivial isotropy), the two boundary-diameter segments and the θ = π
/// segment (isotropy conjugate to the 2-element group V), the disc center
/// (4-element group W), the open boundary arc (isotropy K⁺) and the two
/// points representing the identity and the half-turn about the vertical
/// axis (full G).
namespace kpso3 {

/// Tolerance band for assigning points to boundary strata; classification is
/// stable under round-trip numerical noise of this size.
inline constexpr double kStratTol = 1e-7;

enum class DiscMode { half_disc, full_disc };

/// Point of the orbit-space disc in polar coordinates.
struct OrbitPoint {
    double rho = 0.0;    ///< radial coordinate in [0, π]
    double theta = 0.0;  ///< angular coordinate; [0, π] (half) or (-π, π] (full)
    DiscMode mode = DiscMode::half_disc;
};

/// Validating factory; canonicalizes θ to 0 at ρ = 0 and throws
/// std::invalid_argument when (rho, theta) is outside the disc for the mode.
OrbitPoint make_orbit_point(double rho, double theta, DiscMode mode = DiscMode::half_disc);

/// Position of p embedded in the plane, (ρ cos θ, ρ sin θ).
Eigen::Vector2d embed(const OrbitPoint& p);

/// Euclidean distance between embedded disc positions.
double orbit_distance(const OrbitPoint& p, const OrbitPoint& q);

/// Isotropy type of an orbit, ordered Trivial ≤ V ≤ W ≤ FullG and
/// Trivial ≤ Kplus ≤ FullG; V and Kplus are incomparable.
enum class StratumLabel { Trivial, V, W, Kplus, FullG };

/// Partial order on strata; returns false for incomparable pairs.
bool stratum_leq(StratumLabel a, StratumLabel b);

std::string to_string(StratumLabel s);

/// Projection SO(3) -> SO(3)/G. Reads only X₃₃ and X₁₁ + X₂₂ (plus the sign
/// functional in full-disc mode): s = arccos X₃₃, θ = arccos((X₁₁+X₂₂)/(1+X₃₃))
/// with θ = 0 at X₃₃ = -1, and ρ = π - s.
OrbitPoint project(const GroupElement& x, DiscMode mode = DiscMode::half_disc);

/// Canonical orbit representative H(π - ρ)·K⁺(θ); project ∘ representative
/// is the identity on the disc.
GroupElement representative(const OrbitPoint& p);

/// Stratum of the orbit of x (boundary tolerance kStratTol).
StratumLabel classify(const GroupElement& x);

/// Stratum from disc coordinates directly.
StratumLabel classify(const OrbitPoint& p);

/// Thrown when no conjugating symmetry element exists within tolerance;
/// signals an inconsistency between project and representative.
struct LiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Achievable matrix-level precision when identifying the orbit of x from
/// its disc coordinates. The angular coordinate is read through
/// arccos((X₁₁+X₂₂)/(1+X₃₃)), so roundoff in the entries is amplified near
/// the disc center and the diameter segments; conjugation identities can
/// only be expected to hold to this bound there.
double lift_tolerance(const GroupElement& x);

/// K ∈ G with K·from·K⁻¹ = to, assuming the two elements are on the same
/// orbit. Solved in closed form per component from the equivariant features
/// of the matrices; throws LiftError if neither component verifies within
/// max(1e-7, lift_tolerance(to)).
SymmetryElement find_conjugator(const GroupElement& from, const GroupElement& to);

/// K ∈ G with K·representative(p)·K⁻¹ = x_f, for x_f projecting to p.
SymmetryElement lift_conjugator(const OrbitPoint& p, const GroupElement& x_f);

/// The isotropy group of x inside G. Finite strata return the exact element
/// set ({1}, V-conjugate, W-conjugate); the K⁺ and full-G strata return the
/// continuous part sampled at `kplus_samples` equally spaced angles.
std::vector<SymmetryElement> isotropy_elements(const GroupElement& x, int kplus_samples = 64);

/// Cross-check utility from the analogous two-level problem: a special
/// unitary [[x, y], [-ȳ, x̄]] projects to the complex number x in the closed
/// unit disc, which parametrizes its orbits under conjugation by diagonal
/// unitaries. Returns (Re x, Im x); throws std::invalid_argument when u is
/// not special unitary within kOrthTol.
Eigen::Vector2d su2_disc_projection(const Eigen::Matrix2cd& u);

}  // namespace kpso3
