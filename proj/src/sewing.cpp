#include "diii/sewing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diii/parallel.hpp"

namespace diii::sewing {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double principal_step(Complex from, Complex to) {
  return std::arg(to * std::conj(from));
}

void require_space(const Grid& grid, Space space, const char* what) {
  if (grid.space() != space) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " expects a " + to_string(space) +
                    " field");
  }
}

void require_step(double step, int index) {
  if (std::abs(step) > kMaxPhaseStep) {
    throw Error(ErrorCode::GridTooCoarse,
                "phase step " + std::to_string(step) + " at index " +
                    std::to_string(index),
                step, index);
  }
}

double wrap_to_2pi(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

}  // namespace

double SewingResiduals::max() const {
  return std::max({unitarity, sewing, skewness});
}

SewingResiduals check_sewing(const SewingField& q) {
  const int size = q.grid.size();
  if (static_cast<int>(q.values.size()) != size) {
    throw Error(ErrorCode::DimensionMismatch,
                "field has " + std::to_string(q.values.size()) +
                    " samples for " + std::to_string(size) + " grid points");
  }
  std::vector<double> unit(size), sew(size), skew(size, 0.0);
  parallel_for(size, [&](std::size_t i) {
    const Matrix& m = q.values[i];
    unit[i] = linalg::unitarity_residual(m);
    const Matrix& image = q.values[q.grid.partner(static_cast<int>(i))];
    sew[i] = linalg::op_norm(image + m.transpose());
  });
  for (int i : q.grid.fixed_points()) {
    skew[i] = linalg::skew_residual(q.values[i]);
  }
  SewingResiduals out;
  double worst = -1.0;
  for (int i = 0; i < size; ++i) {
    out.unitarity = std::max(out.unitarity, unit[i]);
    out.sewing = std::max(out.sewing, sew[i]);
    out.skewness = std::max(out.skewness, skew[i]);
    const double here = std::max({unit[i], sew[i], skew[i]});
    if (here > worst) {
      worst = here;
      out.worst_index = i;
    }
  }
  return out;
}

void require_sewing(const SewingField& q, double tol) {
  const SewingResiduals r = check_sewing(q);
  if (!r.passed(tol)) {
    throw Error(ErrorCode::SewingViolation,
                "max residual " + std::to_string(r.max()) + " at index " +
                    std::to_string(r.worst_index),
                r.max(), r.worst_index);
  }
}

DetField det_field(const SewingField& q) {
  DetField out;
  out.det.grid = q.grid;
  out.det.values.resize(q.values.size());
  parallel_for(q.values.size(), [&](std::size_t i) {
    out.det.values[i] = linalg::determinant(q.values[i]);
  });
  for (int i = 0; i < q.grid.size(); ++i) {
    const double r =
        std::abs(out.det.values[q.grid.partner(i)] - out.det.values[i]);
    out.invariance_residual = std::max(out.invariance_residual, r);
  }
  return out;
}

Unwrapped unwrap_phase_1d(const ScalarField& u) {
  require_space(u.grid, Space::Circle, "unwrap_phase_1d");
  const int n = u.grid.size();
  Unwrapped out;
  out.phase.grid = u.grid;
  out.phase.theta.resize(n);
  out.phase.theta[0] = wrap_to_2pi(std::arg(u.values[0]));
  out.phase.base_value = out.phase.theta[0];
  for (int j = 1; j < n; ++j) {
    const double step = principal_step(u.values[j - 1], u.values[j]);
    require_step(step, j);
    out.max_step = std::max(out.max_step, std::abs(step));
    out.phase.theta[j] = out.phase.theta[j - 1] + step;
  }
  const double closing = principal_step(u.values[n - 1], u.values[0]);
  require_step(closing, 0);
  out.max_step = std::max(out.max_step, std::abs(closing));
  const double total = out.phase.theta[n - 1] + closing - out.phase.theta[0];
  out.winding = std::lround(total / kTwoPi);
  return out;
}

ScalarField sqrt_branch_1d(const ScalarField& u, Complex start, double tol) {
  const double bad = std::abs(start * start - u.values.at(0));
  if (bad > tol) {
    throw Error(ErrorCode::BadStartValue,
                "|start^2 - u(0)| = " + std::to_string(bad), bad);
  }
  const Unwrapped unwrapped = unwrap_phase_1d(u);
  const auto& theta = unwrapped.phase.theta;
  ScalarField s{u.grid, std::vector<Complex>(theta.size())};
  for (std::size_t j = 0; j < theta.size(); ++j) {
    s.values[j] = start * std::polar(1.0, 0.5 * (theta[j] - theta[0]));
  }
  return s;
}

Branch2d sqrt_branch_2d(const ScalarField& u, Complex start, double tol) {
  require_space(u.grid, Space::Torus, "sqrt_branch_2d");
  const Grid& g = u.grid;
  const int n1 = g.dims()[0];
  const int n2 = g.dims()[1];
  auto at = [&](int j1, int j2) { return u.values[g.index(j1 % n1, j2 % n2)]; };

  const double bad = std::abs(start * start - at(0, 0));
  if (bad > tol) {
    throw Error(ErrorCode::BadStartValue,
                "|start^2 - u(0,0)| = " + std::to_string(bad), bad);
  }

  Branch2d out;
  // every edge must be resolvable and every plaquette must close
  for (int j1 = 0; j1 < n1; ++j1) {
    for (int j2 = 0; j2 < n2; ++j2) {
      const double right = principal_step(at(j1, j2), at(j1 + 1, j2));
      const double up = principal_step(at(j1, j2), at(j1, j2 + 1));
      require_step(right, g.index(j1, j2));
      require_step(up, g.index(j1, j2));
      const double loop = right +
                          principal_step(at(j1 + 1, j2), at(j1 + 1, j2 + 1)) -
                          principal_step(at(j1, j2 + 1), at(j1 + 1, j2 + 1)) -
                          up;
      out.max_plaquette = std::max(out.max_plaquette, std::abs(loop));
    }
  }
  if (out.max_plaquette > std::numbers::pi) {
    throw Error(ErrorCode::InconsistentUnwrap,
                "plaquette phase sum " + std::to_string(out.max_plaquette),
                out.max_plaquette);
  }

  std::vector<double> theta(g.size());
  theta[g.index(0, 0)] = wrap_to_2pi(std::arg(at(0, 0)));
  for (int j1 = 1; j1 < n1; ++j1) {
    theta[g.index(j1, 0)] =
        theta[g.index(j1 - 1, 0)] + principal_step(at(j1 - 1, 0), at(j1, 0));
  }
  for (int j1 = 0; j1 < n1; ++j1) {
    for (int j2 = 1; j2 < n2; ++j2) {
      theta[g.index(j1, j2)] = theta[g.index(j1, j2 - 1)] +
                               principal_step(at(j1, j2 - 1), at(j1, j2));
    }
  }
  const double base = theta[g.index(0, 0)];
  out.n1 = std::lround((theta[g.index(n1 - 1, 0)] +
                        principal_step(at(n1 - 1, 0), at(0, 0)) - base) /
                       kTwoPi);
  out.n2 = std::lround((theta[g.index(0, n2 - 1)] +
                        principal_step(at(0, n2 - 1), at(0, 0)) - base) /
                       kTwoPi);
  if (out.n1 != 0 || out.n2 != 0) {
    throw Error(ErrorCode::NonzeroWinding,
                "windings (" + std::to_string(out.n1) + ", " +
                    std::to_string(out.n2) + ")");
  }

  out.root.grid = g;
  out.root.values.resize(g.size());
  for (int i = 0; i < g.size(); ++i) {
    out.root.values[i] = start * std::polar(1.0, 0.5 * (theta[i] - base));
  }
  for (int i = 0; i < g.size(); ++i) {
    out.invariance_residual =
        std::max(out.invariance_residual,
                 std::abs(out.root.values[g.partner(i)] - out.root.values[i]));
  }
  if (out.invariance_residual > 10.0 * tol) {
    throw Error(ErrorCode::BranchFailure,
                "square root not invariant, residual " +
                    std::to_string(out.invariance_residual),
                out.invariance_residual);
  }
  return out;
}

Z2 equivariant_degree_parity(const ScalarField& r, double tol) {
  require_space(r.grid, Space::Circle, "equivariant_degree_parity");
  double residual = 0.0;
  for (int i = 0; i < r.grid.size(); ++i) {
    residual = std::max(
        residual, std::abs(r.values[r.grid.partner(i)] - std::conj(r.values[i])));
  }
  if (residual > tol) {
    throw Error(ErrorCode::NotEquivariant,
                "equivariance residual " + std::to_string(residual), residual);
  }
  const auto fixed = r.grid.fixed_points();
  const Complex at0 = r.values[fixed[0]];
  const Complex at_pi = r.values[fixed[1]];
  for (Complex v : {at0, at_pi}) {
    const double off = std::abs(v - Complex(v.real() > 0 ? 1.0 : -1.0, 0.0));
    if (off > tol) {
      throw Error(ErrorCode::NotEquivariant,
                  "fixed-point value is not +-1", off);
    }
  }
  const Z2 ratio = Z2::from_sign((at0.real() > 0) == (at_pi.real() > 0) ? 1 : -1);
  const Z2 from_degree = Z2::parity(unwrap_phase_1d(r).winding);
  if (ratio != from_degree) {
    throw Error(ErrorCode::CrossCheckFailure,
                "r(pi)/r(0) disagrees with the degree parity");
  }
  return ratio;
}

Complex snap_unimodular(Complex z, double window) {
  for (Complex target : {Complex(1, 0), Complex(-1, 0), Complex(0, 1),
                         Complex(0, -1)}) {
    if (std::abs(z - target) <= window) return target;
  }
  return z;
}

long loop_winding(const std::vector<Complex>& loop) {
  double total = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double step = principal_step(loop[j], loop[(j + 1) % n]);
    require_step(step, static_cast<int>((j + 1) % n));
    total += step;
  }
  return std::lround(total / kTwoPi);
}

}  // namespace diii::sewing
