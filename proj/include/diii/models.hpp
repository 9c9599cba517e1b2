#pragma once

// Analytic sewing matrices and Hamiltonians sampled onto grids, addressable
// by name.

#include <array>
#include <string>
#include <vector>

#include "diii/symmetry.hpp"

namespace diii {

enum class FieldKind { Sewing, Hamiltonian };
const char* to_string(FieldKind kind) noexcept;

namespace models {

/// Constant Q of size 2n on any grid.
SewingField q_const(const Grid& grid, int n);

/// [[0, e^{ik}], [-e^{-ik}, 0]] ⊕ Q_{n-1}.
Matrix q_minus_at(double k, int n);
SewingField q_minus(const Grid& circle, int n);

/// q_minus pulled back along the projection onto coordinate `axis`.
SewingField q_weak(const Grid& torus, int axis, int n);

/// [[i x1, -x0 + i x2], [x0 + i x2, -i x1]] on the unit sphere.
Matrix q_sphere_basic(const std::array<double, 3>& x);

/// Equivariant map from the torus onto the sphere sending (pi, pi) to the
/// south pole and the other fixed points to the north pole.
std::array<double, 3> pi0_map(double k1, double k2);

/// q_sphere_basic o pi0_map, padded with Q_{n-1}.
SewingField q_strong_2d(const Grid& torus, int n = 1);

/// h(-k)^t Q h(k) with h = diag(e^{ik}, 1).
SewingField q_twist(const Grid& circle);

struct IntertwinerFixtures {
  SewingField q0;        // Q
  SewingField q0_prime;  // -Q
  MatrixField phi0;      // diag(1, -1)
  SewingField q1rot;     // [[sin k, -cos k], [cos k, sin k]]
  MatrixField phi1;      // e^{ik/2} [[sin k/2, -cos k/2], [cos k/2, sin k/2]]
};

IntertwinerFixtures intertwiner_fixtures(const Grid& circle);

/// Gapped Hamiltonian in the standard frame whose flattened sewing matrix
/// is homotopic to q: off-diagonal block A(tau x)^t q(x) A(x) with A
/// positive definite but not unitary.
HamiltonianField nonflat_hamiltonian(const SewingField& q);

/// Fixed unitary used to move model Hamiltonians out of the standard frame.
Matrix scrambling_unitary(int dim);

struct ModelInfo {
  std::string name;
  Space space;
  FieldKind kind;
  /// sewing rank at n = 1
  int rank;
  /// "nu=+-1" or "triple=(w1,w2,s)"
  std::string expected;
};

/// Stable ordering.
const std::vector<ModelInfo>& catalog();

/// One line per model: name space rank expected kind.
std::string catalog_table();

struct ModelField {
  FieldKind kind = FieldKind::Sewing;
  SewingField sewing;
  HamiltonianField hamiltonian;
  SymmetryTriple symmetries;
};

/// Throws UnknownModel, BadGrid when the grid space does not match the model,
/// InvalidArgument for n < 1.
ModelField make_model(const std::string& name, const Grid& grid, int n = 1);

}  // namespace models
}  // namespace diii
