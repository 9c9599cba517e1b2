#include "diii/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace diii::linalg {
namespace {

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " requires a square matrix");
  }
}

Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  return r == 0.0 ? Complex(1.0, 0.0) : z / r;
}

}  // namespace

Matrix symplectic(int n) {
  Matrix q = Matrix::Zero(2 * n, 2 * n);
  q.topRightCorner(n, n) = -Matrix::Identity(n, n);
  q.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return q;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double hermiticity_residual(const Matrix& a) {
  require_square(a, "hermiticity_residual");
  return op_norm(a - a.adjoint());
}

double skew_residual(const Matrix& a) {
  require_square(a, "skew_residual");
  return op_norm(a + a.transpose());
}

double unitarity_residual(const Matrix& a) {
  require_square(a, "unitarity_residual");
  return op_norm(a.adjoint() * a - Matrix::Identity(a.rows(), a.cols()));
}

Complex determinant(const Matrix& a) {
  require_square(a, "determinant");
  if (a.size() == 0) return {1.0, 0.0};
  return a.determinant();
}

Matrix polar_flatten(const Matrix& h, double tol) {
  require_square(h, "polar_flatten");
  const double herm = hermiticity_residual(h);
  if (herm > tol) {
    throw Error(ErrorCode::NotHermitian,
                "residual " + std::to_string(herm), herm);
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double gap = values.size() ? values.cwiseAbs().minCoeff() : 0.0;
  if (values.size() && gap <= tol) {
    throw Error(ErrorCode::SingularInput,
                "smallest singular value " + std::to_string(gap), gap);
  }
  Eigen::VectorXcd signs(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    signs(i) = values(i) > 0.0 ? 1.0 : -1.0;
  }
  const Matrix& v = eig.eigenvectors();
  return v * signs.asDiagonal() * v.adjoint();
}

// Householder reduction to skew tridiagonal form by unitary congruences
// A -> G A G^t. Each nontrivial reflector has det G = -1 and
// Pf(G A G^t) = det(G) Pf(A).
Complex pfaffian(const Matrix& input, double tol) {
  require_square(input, "pfaffian");
  const Eigen::Index n = input.rows();
  if (n % 2 != 0) {
    throw Error(ErrorCode::OddDimension,
                "size " + std::to_string(n) + " is odd");
  }
  if (n == 0) return {1.0, 0.0};
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  const double residual = skew_residual(input);
  if (residual > tol * scale) {
    throw Error(ErrorCode::NotSkewSymmetric,
                "residual " + std::to_string(residual), residual);
  }

  Matrix a = 0.5 * (input - input.transpose());
  double sign = 1.0;
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Vector x = a.col(k).tail(m);
    const double tail = x.tail(m - 1).norm();
    if (tail == 0.0) continue;
    const double norm = x.norm();
    const Complex alpha = -unit_phase(x(0)) * norm;
    Vector u = x;
    u(0) -= alpha;
    const double beta = 2.0 / u.squaredNorm();
    // rows: G * A, columns: A * G^t with G = 1 - beta u u^*
    auto rows = a.bottomRows(m);
    const Eigen::RowVectorXcd w = u.adjoint() * rows;
    rows.noalias() -= beta * u * w;
    auto cols = a.rightCols(m);
    const Vector z = cols * u.conjugate();
    cols.noalias() -= beta * z * u.transpose();
    sign = -sign;
  }
  Complex pf = 1.0;
  for (Eigen::Index i = 0; i < n; i += 2) pf *= a(i, i + 1);
  return sign * pf;
}

KernelInfo kernel(const Matrix& a, double tol) {
  KernelInfo info;
  if (a.cols() == 0) {
    info.gap_ratio = std::numeric_limits<double>::infinity();
    info.basis = Matrix(0, 0);
    return info;
  }
  if (a.rows() == 0) {
    info.dimension = static_cast<int>(a.cols());
    info.gap_ratio = std::numeric_limits<double>::infinity();
    info.basis = Matrix::Identity(a.cols(), a.cols());
    return info;
  }
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  info.singular_values = svd.singularValues();
  Eigen::Index retained = 0;
  while (retained < info.singular_values.size() &&
         info.singular_values(retained) >= tol) {
    ++retained;
  }
  info.dimension = static_cast<int>(a.cols() - retained);
  info.basis = svd.matrixV().rightCols(info.dimension);
  const bool has_discarded = retained < info.singular_values.size();
  if (retained == 0 || !has_discarded) {
    info.gap_ratio = std::numeric_limits<double>::infinity();
  } else {
    const double low = info.singular_values(retained);
    info.gap_ratio = low == 0.0 ? std::numeric_limits<double>::infinity()
                                : info.singular_values(retained - 1) / low;
  }
  return info;
}

int kernel_dimension(const Matrix& a, double tol) {
  return kernel(a, tol).dimension;
}

// S conj(S) = -1 for a skew-symmetric unitary, so J v = S conj(v) is an
// antiunitary map with J^2 = -1 and <v, Jv> = 0. Pairs (v, Jv) built by
// Gram-Schmidt give X with X^t S X = Q, hence U = X^*.
Matrix skew_takagi(const Matrix& s, double tol) {
  require_square(s, "skew_takagi");
  const Eigen::Index dim = s.rows();
  if (dim % 2 != 0) {
    throw Error(ErrorCode::OddDimension,
                "size " + std::to_string(dim) + " is odd");
  }
  const double skew = skew_residual(s);
  const double unit = unitarity_residual(s);
  if (skew > tol || unit > tol) {
    throw Error(ErrorCode::NotSkewUnitary,
                "skew residual " + std::to_string(skew) +
                    ", unitarity residual " + std::to_string(unit),
                std::max(skew, unit));
  }
  const Eigen::Index n = dim / 2;
  Matrix basis(dim, 0);
  Matrix vs(dim, n);
  Matrix ws(dim, n);

  auto orthogonalize = [&](Vector v) {
    for (int pass = 0; pass < 2; ++pass) {
      if (basis.cols() > 0) v -= basis * (basis.adjoint() * v);
    }
    return v;
  };
  auto append = [&](const Vector& v) {
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v;
  };

  for (Eigen::Index j = 0; j < n; ++j) {
    Vector best;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      Vector candidate = orthogonalize(Vector::Unit(dim, i));
      const double norm = candidate.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = candidate;
      }
    }
    if (best_norm < 0.5) {
      throw Error(ErrorCode::NoConvergence,
                  "complement exhausted at pair " + std::to_string(j));
    }
    Vector v = orthogonalize(best / best_norm);
    v.normalize();
    append(v);
    Vector w = orthogonalize(s * v.conjugate());
    w.normalize();
    append(w);
    vs.col(j) = v;
    ws.col(j) = w;
  }

  Matrix x(dim, dim);
  x.leftCols(n) = vs.conjugate();
  x.rightCols(n) = ws.conjugate();
  Matrix u = x.adjoint();
  const double residual =
      op_norm(u.transpose() * symplectic(static_cast<int>(n)) * u - s);
  if (residual > 100.0 * std::max(tol, 1e-13)) {
    throw Error(ErrorCode::NoConvergence,
                "congruence residual " + std::to_string(residual), residual);
  }
  return u;
}

}  // namespace diii::linalg
