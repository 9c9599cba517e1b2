#pragma once

// Class DIII symmetry algebra. An antiunitary operator is stored as its
// unitary part U and acts as v -> U conj(v); compositions are spelled out as
// plain matrix identities.

#include <vector>

#include "diii/sewing.hpp"

namespace diii {

struct AntiUnitary {
  Matrix unitary;

  Vector apply(const Vector& v) const { return unitary * v.conjugate(); }
  /// Unitary part of this o this (a linear map).
  Matrix square() const { return unitary * unitary.conjugate(); }
};

/// Linear map A o B for antiunitaries A, B.
Matrix compose(const AntiUnitary& a, const AntiUnitary& b);

struct SymmetryTriple {
  AntiUnitary T;
  AntiUnitary C;
  Matrix chi;

  /// chi is derived as T o C.
  static SymmetryTriple from_tc(const Matrix& t_unitary, const Matrix& c_unitary);
  /// chi = diag(1_m, -1_m), T = [[0,-K],[K,0]], C = [[0,-K],[-K,0]].
  static SymmetryTriple standard(int m);

  int dimension() const { return static_cast<int>(chi.rows()); }
};

struct TripleResiduals {
  double t_squared = 0.0;  // ||T^2 + 1||
  double c_squared = 0.0;  // ||C^2 - 1||
  double tc_anti = 0.0;    // ||TC + CT||
  double chi_squared = 0.0;
  double t_chi_anti = 0.0;
  double c_chi_anti = 0.0;
  double chi_is_tc = 0.0;  // ||chi - T o C||

  double max() const;
};

TripleResiduals check_triple(const SymmetryTriple& sym);

struct HamiltonianField {
  Grid grid;
  std::vector<Matrix> values;

  int dimension() const { return values.empty() ? 0 : static_cast<int>(values.front().rows()); }
  /// Smallest |eigenvalue| over all samples.
  double gap() const;
};

namespace symmetry {

struct DiiiResiduals {
  double particle_hole = 0.0;  // max ||C H(x) + H(tau x) C||
  double time_reversal = 0.0;  // max ||T H(x) - H(tau x) T||
  double chiral = 0.0;         // max ||chi H(x) + H(x) chi||
  double hermiticity = 0.0;

  double max() const;
  bool passed(double tol) const { return max() <= tol; }
};

/// Throws DimensionMismatch or OddTotalDimension; pass/fail is left to
/// DiiiResiduals::passed.
DiiiResiduals verify_class_diii(const HamiltonianField& h,
                                const SymmetryTriple& sym);

struct StandardForm {
  /// Columns are the new basis: W^* chi W = diag(1,-1), W^* U_T conj(W) = std.
  Matrix w;
  SymmetryTriple standardized;
  double residual = 0.0;
};

StandardForm standard_form(const SymmetryTriple& sym, double tol);

/// Top-left block phi of V = diag(phi, conj(phi)) in the standard frame.
Matrix commutant_phase(const Matrix& v, double tol);

/// H(x) = [[0, q(x)^*], [q(x), 0]].
HamiltonianField hamiltonian_from_sewing(const SewingField& q);

/// Flattens every sample and returns the lower-left block.
SewingField extract_sewing(const HamiltonianField& h, double tol);

/// H'(x) = W^* H(x) W.
HamiltonianField change_basis(const HamiltonianField& h, const Matrix& w);

struct IntertwinerResiduals {
  double intertwining = 0.0;  // max ||q'(x) - phi(tau x)^t q(x) phi(x)||
  double invariance = 0.0;    // max ||phi(tau x) - phi(x)||, strong only
  bool strong = false;

  bool passed(double tol) const {
    return intertwining <= tol && (!strong || invariance <= tol);
  }
};

IntertwinerResiduals verify_intertwiner(const SewingField& q,
                                        const SewingField& q_prime,
                                        const MatrixField& phi, bool strong);

}  // namespace symmetry
}  // namespace diii
