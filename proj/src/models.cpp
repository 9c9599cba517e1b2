#include "diii/models.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "diii/parallel.hpp"

namespace diii {

const char* to_string(FieldKind kind) noexcept {
  return kind == FieldKind::Sewing ? "sewing" : "hamiltonian";
}

namespace models {
namespace {

constexpr Complex kI{0.0, 1.0};

SewingField sample(const Grid& grid, const std::function<Matrix(double, double)>& f) {
  SewingField q{grid, std::vector<Matrix>(grid.size())};
  parallel_for(q.values.size(), [&](std::size_t i) {
    const auto [k1, k2] = grid.momentum(static_cast<int>(i));
    q.values[i] = f(k1, k2);
  });
  return q;
}

Matrix pad(const Matrix& block, int n) {
  if (n <= 1) return block;
  return linalg::direct_sum(block, linalg::symplectic(n - 1));
}

void require_space(const Grid& grid, Space space) {
  if (grid.space() != space) {
    throw Error(ErrorCode::BadGrid, std::string("model lives on the ") +
                                        to_string(space) + ", grid is a " +
                                        to_string(grid.space()));
  }
}

void require_n(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
}

}  // namespace

SewingField q_const(const Grid& grid, int n) {
  require_n(n);
  return SewingField{grid, std::vector<Matrix>(grid.size(), linalg::symplectic(n))};
}

Matrix q_minus_at(double k, int n) {
  Matrix top = Matrix::Zero(2, 2);
  top(0, 1) = std::polar(1.0, k);
  top(1, 0) = -std::polar(1.0, -k);
  return pad(top, n);
}

SewingField q_minus(const Grid& circle, int n) {
  require_space(circle, Space::Circle);
  require_n(n);
  return sample(circle, [n](double k, double) { return q_minus_at(k, n); });
}

SewingField q_weak(const Grid& torus, int axis, int n) {
  require_space(torus, Space::Torus);
  require_n(n);
  if (axis != 1 && axis != 2) {
    throw Error(ErrorCode::InvalidArgument, "axis must be 1 or 2");
  }
  return sample(torus, [n, axis](double k1, double k2) {
    return q_minus_at(axis == 1 ? k1 : k2, n);
  });
}

Matrix q_sphere_basic(const std::array<double, 3>& x) {
  Matrix q(2, 2);
  q(0, 0) = kI * x[1];
  q(0, 1) = -x[0] + kI * x[2];
  q(1, 0) = x[0] + kI * x[2];
  q(1, 1) = -kI * x[1];
  return q;
}

std::array<double, 3> pi0_map(double k1, double k2) {
  const double c1 = 1.0 - std::cos(k1);
  const double c2 = 1.0 - std::cos(k2);
  const double s = c1 * c2 / 4.0;
  const double radial = 4.0 * s * (1.0 - s);
  const double t1 = std::sin(k1) * c2;
  const double t2 = std::sin(k2) * c1;
  const double norm2 = t1 * t1 + t2 * t2;
  std::array<double, 3> x{1.0 - 2.0 * s, 0.0, 0.0};
  if (radial > 0.0 && norm2 > 0.0) {
    const double scale = std::sqrt(radial / norm2);
    x[1] = scale * t1;
    x[2] = scale * t2;
  }
  return x;
}

SewingField q_strong_2d(const Grid& torus, int n) {
  require_space(torus, Space::Torus);
  require_n(n);
  return sample(torus, [n](double k1, double k2) {
    return pad(q_sphere_basic(pi0_map(k1, k2)), n);
  });
}

SewingField q_twist(const Grid& circle) {
  require_space(circle, Space::Circle);
  return sample(circle, [](double k, double) {
    Matrix q = Matrix::Zero(2, 2);
    q(0, 1) = -std::polar(1.0, -k);
    q(1, 0) = std::polar(1.0, k);
    return q;
  });
}

IntertwinerFixtures intertwiner_fixtures(const Grid& circle) {
  require_space(circle, Space::Circle);
  IntertwinerFixtures out;
  const Matrix q = linalg::symplectic(1);
  out.q0 = q_const(circle, 1);
  out.q0_prime = SewingField{circle, std::vector<Matrix>(circle.size(), -q)};
  Matrix phi0 = Matrix::Identity(2, 2);
  phi0(1, 1) = -1.0;
  out.phi0 = MatrixField{circle, std::vector<Matrix>(circle.size(), phi0)};
  out.q1rot = sample(circle, [](double k, double) {
    Matrix m(2, 2);
    m << std::sin(k), -std::cos(k), std::cos(k), std::sin(k);
    return m;
  });
  const SewingField phi1 = sample(circle, [](double k, double) {
    const double s = std::sin(k / 2);
    const double c = std::cos(k / 2);
    Matrix m(2, 2);
    m << s, -c, c, s;
    return Matrix(std::polar(1.0, k / 2) * m);
  });
  out.phi1 = MatrixField{circle, phi1.values};
  return out;
}

HamiltonianField nonflat_hamiltonian(const SewingField& q) {
  const int r = q.rank();
  Matrix m = Matrix::Zero(r, r);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      m(a, b) = Complex(std::cos(0.7 * a + 1.1 * b), std::sin(0.3 * a * b + 0.4 * b));
    }
  }
  const Matrix hermitian = 0.5 * (m + m.adjoint());
  const Matrix unit = hermitian / (4.0 * linalg::op_norm(hermitian));
  HamiltonianField h{q.grid, std::vector<Matrix>(q.values.size())};
  auto a_at = [&](int i) {
    const auto [k1, k2] = q.grid.momentum(i);
    return Matrix(Matrix::Identity(r, r) +
                  (std::cos(k1) + 0.5 * std::sin(k2)) * unit +
                  0.25 * std::cos(k1 + k2) * Matrix::Identity(r, r));
  };
  parallel_for(q.values.size(), [&](std::size_t i) {
    const int idx = static_cast<int>(i);
    const Matrix b = a_at(q.grid.partner(idx)).transpose() * q.values[i] * a_at(idx);
    Matrix sample = Matrix::Zero(2 * r, 2 * r);
    sample.topRightCorner(r, r) = b.adjoint();
    sample.bottomLeftCorner(r, r) = b;
    h.values[i] = std::move(sample);
  });
  return h;
}

Matrix scrambling_unitary(int dim) {
  Matrix m(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      m(a, b) = Complex(std::cos(1.3 * a + 0.7 * b * b + 0.1), std::sin(0.5 * a * b + 0.2 * a + 0.3));
    }
  }
  return Eigen::HouseholderQR<Matrix>(m).householderQ() * Matrix::Identity(dim, dim);
}

const std::vector<ModelInfo>& catalog() {
  static const std::vector<ModelInfo> rows = {
      {"q_plus", Space::Circle, FieldKind::Sewing, 2, "nu=+1"},
      {"q_minus", Space::Circle, FieldKind::Sewing, 2, "nu=-1"},
      {"q_twist", Space::Circle, FieldKind::Sewing, 2, "nu=-1"},
      {"q1rot", Space::Circle, FieldKind::Sewing, 2, "nu=-1"},
      {"h_plus", Space::Circle, FieldKind::Hamiltonian, 2, "nu=+1"},
      {"h_minus", Space::Circle, FieldKind::Hamiltonian, 2, "nu=-1"},
      {"q_0", Space::Torus, FieldKind::Sewing, 2, "triple=(+1,+1,+1)"},
      {"q_w1", Space::Torus, FieldKind::Sewing, 2, "triple=(-1,+1,+1)"},
      {"q_w2", Space::Torus, FieldKind::Sewing, 2, "triple=(+1,-1,+1)"},
      {"q_s", Space::Torus, FieldKind::Sewing, 2, "triple=(+1,+1,-1)"},
      {"h_s", Space::Torus, FieldKind::Hamiltonian, 2, "triple=(+1,+1,-1)"},
  };
  return rows;
}

std::string catalog_table() {
  std::ostringstream out;
  out << "name space rank expected kind\n";
  for (const auto& row : catalog()) {
    out << row.name << ' ' << to_string(row.space) << ' ' << row.rank << ' '
        << row.expected << ' ' << to_string(row.kind) << '\n';
  }
  return out.str();
}

ModelField make_model(const std::string& name, const Grid& grid, int n) {
  require_n(n);
  const ModelInfo* info = nullptr;
  for (const auto& row : catalog()) {
    if (row.name == name) info = &row;
  }
  if (info == nullptr) throw Error(ErrorCode::UnknownModel, "no model named '" + name + "'");
  require_space(grid, info->space);

  auto padded = [&](SewingField q) {
    if (n > 1) {
      for (Matrix& m : q.values) m = pad(m, n);
    }
    return q;
  };

  ModelField out;
  out.kind = info->kind;
  if (name == "q_plus" || name == "q_0") {
    out.sewing = q_const(grid, n);
  } else if (name == "q_minus") {
    out.sewing = q_minus(grid, n);
  } else if (name == "q_twist") {
    out.sewing = padded(q_twist(grid));
  } else if (name == "q1rot") {
    out.sewing = padded(intertwiner_fixtures(grid).q1rot);
  } else if (name == "q_w1" || name == "q_w2") {
    out.sewing = q_weak(grid, name == "q_w1" ? 1 : 2, n);
  } else if (name == "q_s") {
    out.sewing = q_strong_2d(grid, n);
  } else {
    const SewingField base = name == "h_plus"    ? q_const(grid, n)
                             : name == "h_minus" ? q_minus(grid, n)
                                                 : q_strong_2d(grid, n);
    const HamiltonianField standard = nonflat_hamiltonian(base);
    const int dim = standard.dimension();
    const Matrix w = scrambling_unitary(dim);
    const SymmetryTriple std_sym = SymmetryTriple::standard(dim / 2);
    out.hamiltonian = HamiltonianField{grid, std::vector<Matrix>(standard.values.size())};
    for (std::size_t i = 0; i < standard.values.size(); ++i) {
      out.hamiltonian.values[i] = w * standard.values[i] * w.adjoint();
    }
    out.symmetries = SymmetryTriple::from_tc(w * std_sym.T.unitary * w.transpose(),
                                             w * std_sym.C.unitary * w.transpose());
    return out;
  }
  out.symmetries = SymmetryTriple::standard(out.sewing.rank());
  return out;
}

}  // namespace models
}  // namespace diii
