#pragma once

// Dense complex linear algebra used throughout the library: flattening of
// Hermitian matrices, Pfaffians, kernels and the skew-Takagi congruence.

#include <complex>

#include <Eigen/Dense>

#include "diii/error.hpp"

namespace diii {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Element of Z2 written multiplicatively as a sign.
class Z2 {
 public:
  constexpr Z2() = default;

  static Z2 from_sign(int sign) {
    if (sign != 1 && sign != -1) {
      throw Error(ErrorCode::InvalidArgument, "Z2 sign must be +1 or -1");
    }
    Z2 z;
    z.sign_ = sign;
    return z;
  }
  /// (-1)^n
  static constexpr Z2 parity(long long n) {
    Z2 z;
    z.sign_ = (n % 2 == 0) ? 1 : -1;
    return z;
  }

  constexpr int sign() const { return sign_; }
  constexpr bool trivial() const { return sign_ == 1; }

  friend constexpr Z2 operator*(Z2 a, Z2 b) {
    Z2 z;
    z.sign_ = a.sign_ * b.sign_;
    return z;
  }
  friend constexpr bool operator==(Z2 a, Z2 b) = default;

 private:
  int sign_ = 1;
};

namespace linalg {

/// Standard symplectic matrix [[0, -1_n], [1_n, 0]] of size 2n.
Matrix symplectic(int n);

/// Block-diagonal a ⊕ b.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Largest singular value.
double op_norm(const Matrix& a);
double hermiticity_residual(const Matrix& a);
/// ||A + A^t|| with the plain (non-conjugating) transpose.
double skew_residual(const Matrix& a);
double unitarity_residual(const Matrix& a);

Complex determinant(const Matrix& a);

/// Q = H |H|^{-1}. Throws NotHermitian or SingularInput (a gapless sample).
Matrix polar_flatten(const Matrix& h, double tol);

/// Pfaffian of an even-size skew-symmetric matrix, Pf([[0,a],[-a,0]]) = a.
/// The input is skew-symmetrized before evaluation; its symmetric part must
/// stay below tol relative to max(1, ||A||).
Complex pfaffian(const Matrix& a, double tol);

struct KernelInfo {
  int dimension = 0;
  /// smallest retained / largest discarded singular value; +inf when nothing
  /// was discarded or nothing retained.
  double gap_ratio = 0.0;
  Eigen::VectorXd singular_values;
  /// Orthonormal kernel basis, one column per kernel direction.
  Matrix basis;
};

/// Kernel of A: directions whose singular values fall strictly below tol.
KernelInfo kernel(const Matrix& a, double tol);
int kernel_dimension(const Matrix& a, double tol);

/// Returns U unitary with U^t Q U = S for a skew-symmetric unitary S.
Matrix skew_takagi(const Matrix& s, double tol);

}  // namespace linalg
}  // namespace diii
