#include "diii/symmetry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "diii/parallel.hpp"

namespace diii {

using linalg::op_norm;

Matrix compose(const AntiUnitary& a, const AntiUnitary& b) {
  return a.unitary * b.unitary.conjugate();
}

SymmetryTriple SymmetryTriple::from_tc(const Matrix& t_unitary,
                                       const Matrix& c_unitary) {
  if (t_unitary.rows() != t_unitary.cols() ||
      c_unitary.rows() != c_unitary.cols() ||
      t_unitary.rows() != c_unitary.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "T and C must be square of equal size");
  }
  SymmetryTriple s{AntiUnitary{t_unitary}, AntiUnitary{c_unitary}, Matrix()};
  s.chi = compose(s.T, s.C);
  return s;
}

SymmetryTriple SymmetryTriple::standard(int m) {
  const Matrix id = Matrix::Identity(m, m);
  Matrix t = Matrix::Zero(2 * m, 2 * m);
  t.topRightCorner(m, m) = -id;
  t.bottomLeftCorner(m, m) = id;
  Matrix c = Matrix::Zero(2 * m, 2 * m);
  c.topRightCorner(m, m) = -id;
  c.bottomLeftCorner(m, m) = -id;
  return from_tc(t, c);
}

double TripleResiduals::max() const {
  return std::max({t_squared, c_squared, tc_anti, chi_squared, t_chi_anti,
                   c_chi_anti, chi_is_tc});
}

TripleResiduals check_triple(const SymmetryTriple& sym) {
  const Eigen::Index d = sym.chi.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix& ut = sym.T.unitary;
  const Matrix& uc = sym.C.unitary;
  const Matrix& chi = sym.chi;
  TripleResiduals r;
  r.t_squared = op_norm(sym.T.square() + id);
  r.c_squared = op_norm(sym.C.square() - id);
  r.tc_anti = op_norm(compose(sym.T, sym.C) + compose(sym.C, sym.T));
  r.chi_squared = op_norm(chi * chi - id);
  // T o chi has unitary part U_T conj(chi); chi o T has chi U_T.
  r.t_chi_anti = op_norm(ut * chi.conjugate() + chi * ut);
  r.c_chi_anti = op_norm(uc * chi.conjugate() + chi * uc);
  r.chi_is_tc = op_norm(chi - compose(sym.T, sym.C));
  return r;
}

double HamiltonianField::gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (const Matrix& h : values) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (h + h.adjoint()),
                                              Eigen::EigenvaluesOnly);
    gap = std::min(gap, eig.eigenvalues().cwiseAbs().minCoeff());
  }
  return gap;
}

namespace symmetry {

double DiiiResiduals::max() const {
  return std::max({particle_hole, time_reversal, chiral, hermiticity});
}

DiiiResiduals verify_class_diii(const HamiltonianField& h,
                                const SymmetryTriple& sym) {
  const int size = h.grid.size();
  if (static_cast<int>(h.values.size()) != size) {
    throw Error(ErrorCode::DimensionMismatch, "sample count differs from grid");
  }
  const int dim = h.dimension();
  if (dim % 2 != 0) {
    throw Error(ErrorCode::OddTotalDimension,
                "total dimension " + std::to_string(dim) + " is odd");
  }
  if (dim != sym.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "Hamiltonian dimension " + std::to_string(dim) +
                    " vs symmetry dimension " + std::to_string(sym.dimension()));
  }
  const Matrix& ut = sym.T.unitary;
  const Matrix& uc = sym.C.unitary;
  std::vector<DiiiResiduals> per(size);
  parallel_for(size, [&](std::size_t i) {
    const Matrix& here = h.values[i];
    const Matrix& image = h.values[h.grid.partner(static_cast<int>(i))];
    if (here.rows() != dim || here.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "ragged Hamiltonian samples");
    }
    per[i].particle_hole = op_norm(uc * here.conjugate() + image * uc);
    per[i].time_reversal = op_norm(ut * here.conjugate() - image * ut);
    per[i].chiral = op_norm(sym.chi * here + here * sym.chi);
    per[i].hermiticity = linalg::hermiticity_residual(here);
  });
  DiiiResiduals out;
  for (const auto& r : per) {
    out.particle_hole = std::max(out.particle_hole, r.particle_hole);
    out.time_reversal = std::max(out.time_reversal, r.time_reversal);
    out.chiral = std::max(out.chiral, r.chiral);
    out.hermiticity = std::max(out.hermiticity, r.hermiticity);
  }
  return out;
}

namespace {

// Orthonormal basis of the same span with the QR diagonal made positive.
Matrix normalize_columns(const Matrix& e) {
  if (e.cols() == 0) return e;
  Eigen::HouseholderQR<Matrix> qr(e);
  Matrix q = qr.householderQ() * Matrix::Identity(e.rows(), e.cols());
  const Matrix r = qr.matrixQR().topRows(e.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < e.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

StandardForm standard_form(const SymmetryTriple& sym, double tol) {
  const int dim = sym.dimension();
  if (dim % 2 != 0) {
    throw Error(ErrorCode::OddTotalDimension,
                "odd total dimension " + std::to_string(dim));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (sym.chi + sym.chi.adjoint()));
  const Eigen::VectorXd& values = eig.eigenvalues();
  int positive = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) positive += values(i) > 0.0;
  if (2 * positive != dim) {
    throw Error(ErrorCode::UnequalChiralEigenspaces,
                "chi eigenspaces have dimensions " + std::to_string(positive) +
                    " and " + std::to_string(dim - positive));
  }
  const TripleResiduals tr = check_triple(sym);
  if (tr.max() > tol) {
    throw Error(ErrorCode::InvalidArgument,
                "not a class DIII triple, residual " + std::to_string(tr.max()),
                tr.max());
  }
  const int m = positive;
  // eigenvalues ascending: -1 block first, +1 block last
  const Matrix& vecs = eig.eigenvectors();
  Matrix w0(dim, dim);
  for (int j = 0; j < m; ++j) {
    w0.col(j) = vecs.col(dim - 1 - j);
    w0.col(m + j) = vecs.col(m - 1 - j);
  }
  w0.leftCols(m) = normalize_columns(w0.leftCols(m));
  w0.rightCols(m) = normalize_columns(w0.rightCols(m));

  const Matrix t_prime = w0.adjoint() * sym.T.unitary * w0.conjugate();
  const Matrix a = t_prime.topRightCorner(m, m);
  Matrix fix = Matrix::Identity(dim, dim);
  fix.bottomRightCorner(m, m) = -a.transpose();

  StandardForm out;
  out.w = w0 * fix;
  const Matrix& w = out.w;
  out.standardized = SymmetryTriple{
      AntiUnitary{w.adjoint() * sym.T.unitary * w.conjugate()},
      AntiUnitary{w.adjoint() * sym.C.unitary * w.conjugate()},
      w.adjoint() * sym.chi * w};
  const SymmetryTriple target = SymmetryTriple::standard(m);
  out.residual = std::max(
      {op_norm(out.standardized.T.unitary - target.T.unitary),
       op_norm(out.standardized.C.unitary - target.C.unitary),
       op_norm(out.standardized.chi - target.chi)});
  if (out.residual > 100.0 * tol) {
    throw Error(ErrorCode::NoConvergence,
                "standard form residual " + std::to_string(out.residual),
                out.residual);
  }
  return out;
}

Matrix commutant_phase(const Matrix& v, double tol) {
  const int dim = static_cast<int>(v.rows());
  if (v.cols() != dim || dim % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "commutant element must be square of even size");
  }
  const int m = dim / 2;
  const SymmetryTriple std_sym = SymmetryTriple::standard(m);
  const double with_chi = op_norm(v * std_sym.chi - std_sym.chi * v);
  const double with_t =
      op_norm(std_sym.T.unitary * v.conjugate() - v * std_sym.T.unitary);
  if (with_chi > tol || with_t > tol) {
    throw Error(ErrorCode::NotInCommutant,
                "residuals chi " + std::to_string(with_chi) + ", T " +
                    std::to_string(with_t),
                std::max(with_chi, with_t));
  }
  const Matrix phi = v.topLeftCorner(m, m);
  Matrix rebuilt = Matrix::Zero(dim, dim);
  rebuilt.topLeftCorner(m, m) = phi;
  rebuilt.bottomRightCorner(m, m) = phi.conjugate();
  const double block = op_norm(v - rebuilt);
  if (block > 10.0 * tol) {
    throw Error(ErrorCode::NotInCommutant,
                "block form residual " + std::to_string(block), block);
  }
  return phi;
}

HamiltonianField hamiltonian_from_sewing(const SewingField& q) {
  HamiltonianField h{q.grid, std::vector<Matrix>(q.values.size())};
  const int m = q.rank();
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    Matrix sample = Matrix::Zero(2 * m, 2 * m);
    sample.topRightCorner(m, m) = q.values[i].adjoint();
    sample.bottomLeftCorner(m, m) = q.values[i];
    h.values[i] = std::move(sample);
  }
  return h;
}

SewingField extract_sewing(const HamiltonianField& h, double tol) {
  const int dim = h.dimension();
  if (dim % 2 != 0) {
    throw Error(ErrorCode::OddTotalDimension,
                "total dimension " + std::to_string(dim) + " is odd");
  }
  const int m = dim / 2;
  if (m % 2 != 0) {
    throw Error(ErrorCode::OddSewingRank,
                "sewing rank " + std::to_string(m) + " is odd");
  }
  SewingField q{h.grid, std::vector<Matrix>(h.values.size())};
  parallel_for(h.values.size(), [&](std::size_t i) {
    const Matrix& sample = h.values[i];
    const double scale = std::max(1.0, sample.cwiseAbs().maxCoeff());
    const double diagonal =
        std::max(op_norm(sample.topLeftCorner(m, m)),
                 op_norm(sample.bottomRightCorner(m, m)));
    if (diagonal > tol * scale) {
      throw Error(ErrorCode::NotStandardForm,
                  "diagonal block norm " + std::to_string(diagonal) +
                      " at index " + std::to_string(i),
                  diagonal, static_cast<std::int64_t>(i));
    }
    q.values[i] = linalg::polar_flatten(sample, tol).bottomLeftCorner(m, m);
  });
  const sewing::SewingResiduals r = sewing::check_sewing(q);
  if (!r.passed(10.0 * tol)) {
    throw Error(ErrorCode::SewingViolation,
                "sewing residual " + std::to_string(r.max()) + " at index " +
                    std::to_string(r.worst_index),
                r.max(), r.worst_index);
  }
  return q;
}

HamiltonianField change_basis(const HamiltonianField& h, const Matrix& w) {
  HamiltonianField out{h.grid, std::vector<Matrix>(h.values.size())};
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    out.values[i] = w.adjoint() * h.values[i] * w;
  }
  return out;
}

IntertwinerResiduals verify_intertwiner(const SewingField& q,
                                        const SewingField& q_prime,
                                        const MatrixField& phi, bool strong) {
  if (!(q.grid == q_prime.grid) || !(q.grid == phi.grid) ||
      q.rank() != q_prime.rank() || q.values.size() != phi.values.size() ||
      q.values.size() != q_prime.values.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "intertwiner fields must share grid and rank");
  }
  IntertwinerResiduals out;
  out.strong = strong;
  for (int i = 0; i < q.grid.size(); ++i) {
    const Matrix& image = phi.values[q.grid.partner(i)];
    if (image.rows() != q.rank() || phi.values[i].cols() != q.rank()) {
      throw Error(ErrorCode::DimensionMismatch, "intertwiner size");
    }
    out.intertwining = std::max(
        out.intertwining,
        op_norm(q_prime.values[i] - image.transpose() * q.values[i] * phi.values[i]));
    if (strong) {
      out.invariance = std::max(out.invariance, op_norm(image - phi.values[i]));
    }
  }
  return out;
}

}  // namespace symmetry
}  // namespace diii
