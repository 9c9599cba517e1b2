#include "diii/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "diii/parallel.hpp"

namespace diii {

SignEstimate round_sign(Complex raw, double sign_tol) {
  SignEstimate out;
  out.raw = raw;
  const int sign = raw.real() >= 0.0 ? 1 : -1;
  out.value = Z2::from_sign(sign);
  out.deviation = std::abs(raw - Complex(sign, 0.0));
  if (!(out.deviation <= sign_tol)) {
    throw Error(ErrorCode::NotSignLike,
                "value (" + std::to_string(raw.real()) + ", " +
                    std::to_string(raw.imag()) + ") is not +-1",
                out.deviation);
  }
  return out;
}

namespace invariants {
namespace {

Complex fixed_pfaffian(const Matrix& m, double tol) {
  return linalg::pfaffian(0.5 * (m - m.transpose()), tol);
}

void require_circle(const Grid& grid, const char* what) {
  if (grid.space() != Space::Circle) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " expects a circle field");
  }
}

void require_torus(const Grid& grid, const char* what) {
  if (grid.space() != Space::Torus) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " expects a torus field");
  }
}

double max_det_deviation(const sewing::DetField& d) {
  double worst = 0.0;
  for (Complex v : d.det.values) worst = std::max(worst, std::abs(v - 1.0));
  return worst;
}

ScalarField unimodular(const ScalarField& f) {
  ScalarField out = f;
  for (Complex& v : out.values) {
    const double r = std::abs(v);
    if (r == 0.0) throw Error(ErrorCode::SingularInput, "zero determinant");
    v /= r;
  }
  return out;
}

}  // namespace

SignEstimate teo_kane_1d(const SewingField& q, const InvariantOptions& opt) {
  require_circle(q.grid, "teo_kane_1d");
  sewing::require_sewing(q, opt.tol);
  const auto fixed = q.grid.fixed_points();
  const Complex pf0 = fixed_pfaffian(q.values[fixed[0]], opt.tol);
  const Complex pf_pi = fixed_pfaffian(q.values[fixed[1]], opt.tol);
  const auto det = sewing::det_field(q);
  ScalarField root;
  try {
    root = sewing::sqrt_branch_1d(det.det, pf0, opt.tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadStartValue) {
      throw Error(ErrorCode::BranchFailure, e.what(), e.residual());
    }
    throw;
  }
  return round_sign(pf_pi / root.values[fixed[1]], opt.sign_tol);
}

PFunction construct_p_1d(const SewingField& q, const InvariantOptions& opt) {
  require_circle(q.grid, "construct_p_1d");
  sewing::require_sewing(q, opt.tol);
  const int n = q.grid.size();
  const int half = n / 2;
  const auto det = sewing::det_field(q);
  const Complex pf0 = fixed_pfaffian(q.values[0], opt.tol);
  const Complex pf_pi = fixed_pfaffian(q.values[half], opt.tol);
  const ScalarField root = sewing::sqrt_branch_1d(det.det, pf0, opt.tol);

  // the branch ends at +-Pf(pi); a linear half-turn fixes the sign
  const Complex ratio = pf_pi / root.values[half];
  const SignEstimate turn = round_sign(ratio, std::max(opt.sign_tol, 10 * opt.tol));
  const double alpha_end = turn.value.trivial() ? 0.0 : std::numbers::pi;

  PFunction out;
  out.p.grid = q.grid;
  out.p.values.resize(n);
  for (int j = 0; j <= half; ++j) {
    const double alpha = alpha_end * static_cast<double>(j) / half;
    out.p.values[j] = root.values[j] * std::polar(1.0, alpha);
  }
  for (int j = half + 1; j < n; ++j) {
    out.p.values[j] = det.det.values[j] / out.p.values[n - j];
  }

  for (int j = 0; j < n; ++j) {
    const Complex lhs = det.det.values[j];
    const Complex rhs = out.p.values[q.grid.partner(j)] * out.p.values[j];
    out.relation_residual = std::max(out.relation_residual, std::abs(lhs - rhs));
  }
  out.relation_residual = std::max({out.relation_residual,
                                    std::abs(out.p.values[0] - pf0),
                                    std::abs(out.p.values[half] - pf_pi)});
  if (out.relation_residual > 100 * std::max(opt.tol, 1e-12)) {
    throw Error(ErrorCode::BranchFailure,
                "p violates its defining relations by " +
                    std::to_string(out.relation_residual),
                out.relation_residual);
  }
  try {
    out.degree = sewing::unwrap_phase_1d(unimodular(out.p)).winding;
  } catch (const Error& e) {
    throw Error(ErrorCode::BranchFailure,
                std::string("p is not continuous: ") + e.what(), e.residual(),
                e.index());
  }
  return out;
}

SewingField normalize_determinant(const SewingField& q, const InvariantOptions& opt) {
  require_circle(q.grid, "normalize_determinant");
  sewing::require_sewing(q, opt.tol);
  const int n = q.grid.size();
  const int half = n / 2;
  const auto det = sewing::det_field(q);
  const ScalarField unit = unimodular(det.det);
  const auto unwrapped = sewing::unwrap_phase_1d(unit);
  if (unwrapped.winding != 0 || det.invariance_residual > 10 * opt.tol) {
    throw Error(ErrorCode::NonzeroDetWinding,
                "det q winds " + std::to_string(unwrapped.winding) +
                    " times, invariance residual " +
                    std::to_string(det.invariance_residual),
                det.invariance_residual);
  }

  ScalarField inverse = unit;
  for (Complex& v : inverse.values) v = std::conj(v);
  const Complex pf0 = fixed_pfaffian(q.values[0], opt.tol);
  const Complex start = std::conj(pf0) / std::abs(pf0);
  ScalarField g = sewing::sqrt_branch_1d(inverse, start, 10 * opt.tol);
  for (int j = half + 1; j < n; ++j) g.values[j] = g.values[n - j];
  try {
    sewing::unwrap_phase_1d(g);
  } catch (const Error& e) {
    throw Error(ErrorCode::BranchFailure,
                std::string("reflected square root is discontinuous: ") + e.what(),
                e.residual(), e.index());
  }

  SewingField out{q.grid, std::vector<Matrix>(q.values.size())};
  parallel_for(q.values.size(), [&](std::size_t i) {
    Matrix m = q.values[i];
    m.row(0) *= g.values[i];
    m.col(0) *= g.values[i];
    out.values[i] = std::move(m);
  });
  return out;
}

SewingField normalize_basepoint(const SewingField& q, const InvariantOptions& opt) {
  require_circle(q.grid, "normalize_basepoint");
  const auto det = sewing::det_field(q);
  const double off = max_det_deviation(det);
  if (off > std::max(opt.tol, 1e-10)) {
    throw Error(ErrorCode::InvalidArgument,
                "base-point normalization needs det q = 1, deviation " +
                    std::to_string(off),
                off);
  }
  const Matrix& q0 = q.values[q.grid.fixed_points()[0]];
  const Matrix u = linalg::skew_takagi(0.5 * (q0 - q0.transpose()), opt.tol).adjoint();
  const Matrix ut = u.transpose();
  SewingField out{q.grid, std::vector<Matrix>(q.values.size())};
  parallel_for(q.values.size(),
               [&](std::size_t i) { out.values[i] = ut * q.values[i] * u; });
  return out;
}

const char* to_string(Homotopy h) noexcept {
  return h == Homotopy::Homotopic ? "Homotopic" : "NotHomotopic";
}

Homotopy classify_1d(const SewingField& q0, const SewingField& q1,
                     const InvariantOptions& opt) {
  if (q0.rank() != q1.rank()) {
    throw Error(ErrorCode::RankMismatch,
                "ranks " + std::to_string(q0.rank()) + " and " +
                    std::to_string(q1.rank()));
  }
  return teo_kane_1d(q0, opt).value == teo_kane_1d(q1, opt).value
             ? Homotopy::Homotopic
             : Homotopy::NotHomotopic;
}

SignEstimate gerbe_sign_1d(const SewingField& q, const InvariantOptions& opt) {
  require_circle(q.grid, "gerbe_sign_1d");
  const auto fixed = q.grid.fixed_points();
  const Complex pf0 = fixed_pfaffian(q.values[fixed[0]], opt.tol);
  const Complex pf_pi = fixed_pfaffian(q.values[fixed[1]], opt.tol);
  return round_sign(pf_pi * pf0, opt.sign_tol);
}

SignEstimate strong_invariant_2d(const SewingField& q, const InvariantOptions& opt) {
  require_torus(q.grid, "strong_invariant_2d");
  sewing::require_sewing(q, opt.tol);
  const auto fixed = q.grid.fixed_points();
  const auto det = sewing::det_field(q);
  const Complex pf_origin = fixed_pfaffian(q.values[fixed[0]], opt.tol);
  const auto branch = sewing::sqrt_branch_2d(det.det, pf_origin, opt.tol);
  Complex product = 1.0;
  for (int i : fixed) {
    const Complex s = sewing::snap_unimodular(branch.root.values[i]);
    product *= fixed_pfaffian(q.values[i], opt.tol) / s;
  }
  return round_sign(product, opt.sign_tol);
}

std::array<SignEstimate, 2> weak_invariants_2d(const SewingField& q,
                                               const InvariantOptions& opt) {
  require_torus(q.grid, "weak_invariants_2d");
  return {teo_kane_1d(restrict_to_circle(q, 1), opt),
          teo_kane_1d(restrict_to_circle(q, 2), opt)};
}

TorusInvariants full_invariant_2d(const SewingField& q, const InvariantOptions& opt) {
  const auto weak = weak_invariants_2d(q, opt);
  const auto strong = strong_invariant_2d(q, opt);
  return {weak[0].value, weak[1].value, strong.value, {weak[0], weak[1], strong}};
}

SewingField direct_sum(const SewingField& a, const SewingField& b) {
  if (!(a.grid == b.grid)) {
    throw Error(ErrorCode::GridMismatch, "direct sum of fields on different grids");
  }
  SewingField out{a.grid, std::vector<Matrix>(a.values.size())};
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    out.values[i] = linalg::direct_sum(a.values[i], b.values[i]);
  }
  return out;
}

SewingField apply_intertwiner(const SewingField& q, const MatrixField& h) {
  if (!(q.grid == h.grid) || q.values.size() != h.values.size()) {
    throw Error(ErrorCode::DimensionMismatch, "intertwiner sampled on another grid");
  }
  SewingField out{q.grid, std::vector<Matrix>(q.values.size())};
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    const Matrix& hi = h.values[i];
    if (hi.rows() != q.values[i].rows() || hi.cols() != q.values[i].cols()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "intertwiner has size " + std::to_string(hi.rows()) + " for rank " +
                      std::to_string(q.values[i].rows()),
                  std::numeric_limits<double>::quiet_NaN(), static_cast<int>(i));
    }
  }
  parallel_for(q.values.size(), [&](std::size_t i) {
    const Matrix& image = h.values[q.grid.partner(static_cast<int>(i))];
    out.values[i] = image.transpose() * q.values[i] * h.values[i];
  });
  return out;
}

long det_winding(const MatrixField& h) {
  require_circle(h.grid, "det_winding");
  ScalarField d{h.grid, std::vector<Complex>(h.values.size())};
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    d.values[i] = linalg::determinant(h.values[i]);
  }
  return sewing::unwrap_phase_1d(unimodular(d)).winding;
}

SewingField sewing_from_hamiltonian(const HamiltonianField& h,
                                    const SymmetryTriple& sym,
                                    const InvariantOptions& opt) {
  const auto residuals = symmetry::verify_class_diii(h, sym);
  if (!residuals.passed(opt.tol)) {
    throw Error(ErrorCode::NotStandardForm,
                "Hamiltonian violates the class DIII relations by " +
                    std::to_string(residuals.max()),
                residuals.max());
  }
  const auto frame = symmetry::standard_form(sym, opt.tol);
  return symmetry::extract_sewing(symmetry::change_basis(h, frame.w), opt.tol);
}

RelativeInvariant relative_invariant(const HamiltonianField& h0,
                                     const HamiltonianField& h1,
                                     const SymmetryTriple& sym,
                                     const InvariantOptions& opt) {
  if (!(h0.grid == h1.grid)) {
    throw Error(ErrorCode::GridMismatch, "Hamiltonians on different grids");
  }
  if (h0.dimension() != h1.dimension()) {
    throw Error(ErrorCode::RankMismatch,
                "dimensions " + std::to_string(h0.dimension()) + " and " +
                    std::to_string(h1.dimension()));
  }
  const SewingField q0 = sewing_from_hamiltonian(h0, sym, opt);
  const SewingField q1 = sewing_from_hamiltonian(h1, sym, opt);
  RelativeInvariant out;
  out.space = h0.grid.space();
  if (out.space == Space::Circle) {
    out.nu = teo_kane_1d(q0, opt).value * teo_kane_1d(q1, opt).value;
    return out;
  }
  const auto a = full_invariant_2d(q0, opt);
  const auto b = full_invariant_2d(q1, opt);
  out.weak = std::array<Z2, 2>{a.weak1 * b.weak1, a.weak2 * b.weak2};
  out.strong = a.strong * b.strong;
  out.nu = out.weak->at(0);
  return out;
}

}  // namespace invariants
}  // namespace diii
