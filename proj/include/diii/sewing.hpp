#pragma once

// Sewing-matrix fields q(x) in U(2n) with q(tau x) = -q(x)^t, their
// determinant fields, and the phase unwrapping that produces winding numbers
// and continuous square-root branches.

#include <numbers>
#include <vector>

#include "diii/grid.hpp"

namespace diii {

struct SewingField {
  Grid grid;
  std::vector<Matrix> values;

  int rank() const { return values.empty() ? 0 : static_cast<int>(values.front().rows()); }
};

namespace sewing {

/// Largest principal phase step accepted between neighbouring samples.
inline constexpr double kMaxPhaseStep = std::numbers::pi / 2;
/// Window for snapping fixed-point branch values onto {+-1, +-i}.
inline constexpr double kSnapWindow = 1e-6;

struct SewingResiduals {
  double unitarity = 0.0;
  double sewing = 0.0;
  double skewness = 0.0;
  /// Grid index where the largest of the three residuals occurs.
  int worst_index = 0;

  double max() const;
  bool passed(double tol) const { return max() <= tol; }
};

/// Max-norm residuals of unitarity, q(tau x) + q(x)^t and fixed-point skewness.
SewingResiduals check_sewing(const SewingField& q);

/// Throws SewingViolation when check_sewing fails at tol.
void require_sewing(const SewingField& q, double tol);

struct DetField {
  ScalarField det;
  /// max |det q(tau x) - det q(x)|
  double invariance_residual = 0.0;
};

DetField det_field(const SewingField& q);

struct PhaseField {
  Grid grid;
  std::vector<double> theta;
  double base_value = 0.0;
};

struct Unwrapped {
  PhaseField phase;
  long winding = 0;
  /// Largest |principal step| met, including the closing step.
  double max_step = 0.0;
};

/// Continuous phase of a unimodular circle field, theta(0) in [0, 2pi).
/// Throws GridTooCoarse with the index of the first step above kMaxPhaseStep.
Unwrapped unwrap_phase_1d(const ScalarField& u);

/// s(k) = start * exp(i (theta(k) - theta(0)) / 2) continued along the whole
/// grid from k = 0; s^2 = u on every sample.
ScalarField sqrt_branch_1d(const ScalarField& u, Complex start, double tol);

struct Branch2d {
  ScalarField root;
  long n1 = 0;
  long n2 = 0;
  /// max |sum of principal steps around a plaquette|
  double max_plaquette = 0.0;
  /// max |s(tau x) - s(x)|
  double invariance_residual = 0.0;
};

/// Global continuous square root on the torus: row k2 = 0 first, then every
/// column. Both windings must vanish and every plaquette must close.
Branch2d sqrt_branch_2d(const ScalarField& u, Complex start, double tol);

/// r(pi)/r(0) for r(-k) = conj(r(k)), cross-checked against (-1)^deg(r).
Z2 equivariant_degree_parity(const ScalarField& r, double tol);

/// Nearest of {1, -1, i, -i} when within window, otherwise z unchanged.
Complex snap_unimodular(Complex z, double window = kSnapWindow);

/// Winding of a closed unimodular loop given as samples in order.
long loop_winding(const std::vector<Complex>& loop);

}  // namespace sewing
}  // namespace diii
