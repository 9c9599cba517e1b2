#pragma once

// Z2 invariants of class DIII sewing matrices on the circle and the torus:
// the Pfaffian (Teo-Kane) formula, the degree route, normalizations,
// homotopy classification, the relative invariant, the gerbe sign and the
// weak/strong torus invariants.

#include <array>
#include <optional>

#include "diii/symmetry.hpp"

namespace diii {

struct InvariantOptions {
  /// Validation tolerance for sewing and symmetry residuals.
  double tol = 1e-8;
  /// Largest accepted distance of a pre-rounding value from +-1.
  double sign_tol = 1e-6;
};

/// A Z2 value together with the complex number it was rounded from.
struct SignEstimate {
  Z2 value;
  Complex raw{1.0, 0.0};
  double deviation = 0.0;
};

/// Rounds raw to +-1; throws NotSignLike when it is further than sign_tol.
SignEstimate round_sign(Complex raw, double sign_tol);

namespace invariants {

SignEstimate teo_kane_1d(const SewingField& q, const InvariantOptions& opt = {});

struct PFunction {
  ScalarField p;
  long degree = 0;
  /// max over x of |det q(x) - p(tau x) p(x)| and the fixed-point Pfaffian gap.
  double relation_residual = 0.0;
};

/// A representative p with det q(x) = p(tau x) p(x) and p = Pf q on fixed points.
PFunction construct_p_1d(const SewingField& q, const InvariantOptions& opt = {});

/// q'(k) = D q(k) D, D = diag(g, 1, ..., 1), g invariant with g^2 = 1/det q.
SewingField normalize_determinant(const SewingField& q,
                                  const InvariantOptions& opt = {});

/// q''(k) = u^t q(k) u with u^t q(0) u = Q; requires det q = 1.
SewingField normalize_basepoint(const SewingField& q,
                                const InvariantOptions& opt = {});

enum class Homotopy { Homotopic, NotHomotopic };
const char* to_string(Homotopy h) noexcept;

Homotopy classify_1d(const SewingField& q0, const SewingField& q1,
                     const InvariantOptions& opt = {});

/// Pf[q(pi)] Pf[q(0)] for det q = 1.
SignEstimate gerbe_sign_1d(const SewingField& q, const InvariantOptions& opt = {});

/// Fu-Kane-Mele product over the four fixed points of the torus.
SignEstimate strong_invariant_2d(const SewingField& q,
                                 const InvariantOptions& opt = {});

std::array<SignEstimate, 2> weak_invariants_2d(const SewingField& q,
                                               const InvariantOptions& opt = {});

struct TorusInvariants {
  Z2 weak1;
  Z2 weak2;
  Z2 strong;
  std::array<SignEstimate, 3> estimates;
};

TorusInvariants full_invariant_2d(const SewingField& q,
                                  const InvariantOptions& opt = {});

/// Blockwise q ⊕ q'. Throws GridMismatch.
SewingField direct_sum(const SewingField& a, const SewingField& b);

/// q'(x) = h(tau x)^t q(x) h(x). Throws DimensionMismatch.
SewingField apply_intertwiner(const SewingField& q, const MatrixField& h);

/// Winding of det h around the circle.
long det_winding(const MatrixField& h);

struct RelativeInvariant {
  Space space = Space::Circle;
  /// circle: the single value; torus: ratios of the weak pair and the strong
  /// invariant.
  Z2 nu;
  std::optional<std::array<Z2, 2>> weak;
  std::optional<Z2> strong;
};

/// Ratio of the invariants of two Hamiltonians sharing one symmetry triple,
/// extracted with the same standard-form frame.
RelativeInvariant relative_invariant(const HamiltonianField& h0,
                                     const HamiltonianField& h1,
                                     const SymmetryTriple& sym,
                                     const InvariantOptions& opt = {});

/// Sewing field of a Hamiltonian in an arbitrary DIII frame: reduce the
/// triple to standard form, change basis and extract.
SewingField sewing_from_hamiltonian(const HamiltonianField& h,
                                    const SymmetryTriple& sym,
                                    const InvariantOptions& opt = {});

}  // namespace invariants
}  // namespace diii
