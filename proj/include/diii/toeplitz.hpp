#pragma once

// Block Toeplitz operators T_q on the Hardy space of modes m >= 0 with a
// banded sewing symbol q(k) = sum_{|m|<=W} qhat_m e^{imk}, their kernels and
// the Z2 index (-1)^{dim Ker T_q}.

#include <vector>

#include "diii/invariants.hpp"

namespace diii {

struct BandedSymbol {
  int rank = 0;
  int bandwidth = 0;
  /// qhat_m stored at index m + bandwidth.
  std::vector<Matrix> coeffs;
  /// max_k ||q(k) - sum_{|m|<=W} qhat_m e^{imk}|| over the source grid.
  double truncation_residual = 0.0;
  /// Largest change made when enforcing qhat_{-m} = -qhat_m^t.
  double sewing_adjustment = 0.0;

  /// Zero outside the band.
  Matrix coeff(int m) const;
  Matrix evaluate(double k) const;
  /// Symbol of the adjoint operator, q(k)^*.
  BandedSymbol adjoint() const;
};

struct ToeplitzTruncation {
  int blocks = 0;
  /// Block (i, j) = qhat_{i-j}, modes 0 .. blocks-1.
  Matrix matrix;
};

namespace toeplitz {

/// Throws BandwidthTooLarge unless 2W < N.
BandedSymbol fourier_coefficients(const SewingField& q, int bandwidth);

/// Smallest bandwidth whose truncation residual is at most tol; throws
/// Uncertified when none is.
BandedSymbol select_bandwidth(const SewingField& q, double tol);

/// Square section on modes 0 .. n-1. Throws InvalidArgument unless n > W.
ToeplitzTruncation build_truncation(const BandedSymbol& sym, int n);

/// Section with domain modes 0 .. n-1 and codomain modes 0 .. n-1+W.
Matrix build_rectangular(const BandedSymbol& sym, int n);

/// max ||q(k)^* q(k) - 1|| on 4W + 4 equispaced points, which is exact for a
/// trigonometric polynomial of degree W.
double unitarity_residual(const BandedSymbol& sym);

struct ExactKernel {
  int dimension = 0;
  double gap_ratio = 0.0;
  Eigen::VectorXd singular_values;
  /// Kernel vectors of T_q on modes 0 .. W-1, entry (mode u, channel c) at
  /// u * rank + c.
  std::vector<Vector> witnesses;
};

/// Kernel of the semi-infinite T_q. A kernel vector a has q a supported on
/// modes [-W, -1], so a = q^* b for some b there whose image q^* b has no
/// negative modes. Throws NotUnitary when the symbol is not unitary within
/// unitarity_tol (defaults to tol).
ExactKernel exact_kernel(const BandedSymbol& sym, double tol,
                         double unitarity_tol = -1.0);
int exact_kernel_dim_banded(const BandedSymbol& sym, double tol);

struct SvdKernel {
  int dimension = 0;
  std::vector<int> sizes;
  std::vector<int> counts;
  /// Gap ratio at the largest section.
  double gap_ratio = 0.0;
};

/// Kernel counts of rectangular sections. Throws InvalidArgument unless every
/// size exceeds 4W, Unstable when the two largest sizes disagree.
SvdKernel svd_kernel_dim(const BandedSymbol& sym, std::vector<int> sizes,
                         double tol);

/// (-1)^{dim Ker T_q}; throws IndexMismatch if dim Ker T_{q^*} differs.
Z2 z2_index(const BandedSymbol& sym, double tol);

/// Noether index -winding(det q), zero for every sewing symbol.
long noether_index(const SewingField& q);

struct IndexOptions {
  double tol = 1e-8;
  double kernel_tol = 1e-8;
  /// Negative: choose the smallest bandwidth reproducing q within tol.
  int bandwidth = -1;
};

struct IndexReport {
  Z2 nu;
  Z2 index;
  bool agree = false;
  int bandwidth = 0;
  double truncation_residual = 0.0;
  int kernel_dimension = 0;
  int adjoint_kernel_dimension = 0;
  double gap_ratio = 0.0;
  std::vector<Vector> witnesses;
};

/// Both sides of nu_q = ind(T_q). Throws Uncertified when the band
/// approximation misses q by more than opt.tol.
IndexReport index_theorem_check(const SewingField& q, const IndexOptions& opt = {});

}  // namespace toeplitz
}  // namespace diii
