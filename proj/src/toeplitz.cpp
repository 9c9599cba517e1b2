#include "diii/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "diii/parallel.hpp"

namespace diii {

Matrix BandedSymbol::coeff(int m) const {
  if (m < -bandwidth || m > bandwidth) return Matrix::Zero(rank, rank);
  return coeffs[m + bandwidth];
}

Matrix BandedSymbol::evaluate(double k) const {
  Matrix out = Matrix::Zero(rank, rank);
  for (int m = -bandwidth; m <= bandwidth; ++m) {
    out += coeffs[m + bandwidth] * std::polar(1.0, m * k);
  }
  return out;
}

BandedSymbol BandedSymbol::adjoint() const {
  BandedSymbol out = *this;
  for (int m = -bandwidth; m <= bandwidth; ++m) {
    out.coeffs[m + bandwidth] = coeffs[-m + bandwidth].adjoint();
  }
  return out;
}

namespace toeplitz {
namespace {

void require_circle(const SewingField& q) {
  if (q.grid.space() != Space::Circle) {
    throw Error(ErrorCode::InvalidArgument, "Toeplitz symbols live on the circle");
  }
}

/// qhat_m for |m| <= max_mode by direct summation.
std::vector<Matrix> dft(const SewingField& q, int max_mode) {
  const int n = q.grid.size();
  const int r = q.rank();
  std::vector<Matrix> out(2 * max_mode + 1, Matrix::Zero(r, r));
  parallel_for(out.size(), [&](std::size_t slot) {
    const int m = static_cast<int>(slot) - max_mode;
    Matrix acc = Matrix::Zero(r, r);
    for (int j = 0; j < n; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(
                                                           (static_cast<long>(m) * j) % n) / n;
      acc += q.values[j] * std::polar(1.0, angle);
    }
    out[slot] = acc / static_cast<double>(n);
  });
  return out;
}

BandedSymbol band(const SewingField& q, const std::vector<Matrix>& full,
                  int max_mode, int bandwidth) {
  BandedSymbol sym;
  sym.rank = q.rank();
  sym.bandwidth = bandwidth;
  sym.coeffs.resize(2 * bandwidth + 1);
  for (int m = -bandwidth; m <= bandwidth; ++m) {
    sym.coeffs[m + bandwidth] = full[m + max_mode];
  }
  for (int m = 0; m <= bandwidth; ++m) {
    const Matrix& plus = sym.coeffs[m + bandwidth];
    const Matrix& minus = sym.coeffs[-m + bandwidth];
    const Matrix averaged = 0.5 * (minus - plus.transpose());
    sym.sewing_adjustment =
        std::max(sym.sewing_adjustment, linalg::op_norm(averaged - minus));
    sym.coeffs[-m + bandwidth] = averaged;
    sym.coeffs[m + bandwidth] = -averaged.transpose();
  }
  std::vector<double> residual(q.values.size());
  parallel_for(q.values.size(), [&](std::size_t j) {
    const double k = q.grid.momentum(static_cast<int>(j))[0];
    residual[j] = linalg::op_norm(q.values[j] - sym.evaluate(k));
  });
  sym.truncation_residual = *std::max_element(residual.begin(), residual.end());
  return sym;
}

int max_mode_for(const SewingField& q) { return (q.grid.size() - 1) / 2; }

}  // namespace

BandedSymbol fourier_coefficients(const SewingField& q, int bandwidth) {
  require_circle(q);
  if (bandwidth < 0 || 2 * bandwidth >= q.grid.size()) {
    throw Error(ErrorCode::BandwidthTooLarge,
                "bandwidth " + std::to_string(bandwidth) + " needs more than " +
                    std::to_string(2 * bandwidth) + " samples, grid has " +
                    std::to_string(q.grid.size()));
  }
  return band(q, dft(q, bandwidth), bandwidth, bandwidth);
}

BandedSymbol select_bandwidth(const SewingField& q, double tol) {
  require_circle(q);
  const int max_mode = max_mode_for(q);
  const auto full = dft(q, max_mode);
  double best = std::numeric_limits<double>::infinity();
  for (int w = 0; w <= max_mode; ++w) {
    BandedSymbol sym = band(q, full, max_mode, w);
    if (sym.truncation_residual <= tol) return sym;
    best = std::min(best, sym.truncation_residual);
  }
  throw Error(ErrorCode::Uncertified,
              "no bandwidth reproduces the symbol, best truncation residual " +
                  std::to_string(best),
              best);
}

ToeplitzTruncation build_truncation(const BandedSymbol& sym, int n) {
  if (n <= sym.bandwidth) {
    throw Error(ErrorCode::InvalidArgument,
                "section of " + std::to_string(n) + " blocks for bandwidth " +
                    std::to_string(sym.bandwidth));
  }
  const int r = sym.rank;
  ToeplitzTruncation out{n, Matrix::Zero(n * r, n * r)};
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - sym.bandwidth); j <= std::min(n - 1, i + sym.bandwidth); ++j) {
      out.matrix.block(i * r, j * r, r, r) = sym.coeff(i - j);
    }
  }
  return out;
}

Matrix build_rectangular(const BandedSymbol& sym, int n) {
  const int r = sym.rank;
  const int rows = n + sym.bandwidth;
  Matrix out = Matrix::Zero(rows * r, n * r);
  for (int i = 0; i < rows; ++i) {
    for (int j = std::max(0, i - sym.bandwidth); j <= std::min(n - 1, i + sym.bandwidth); ++j) {
      out.block(i * r, j * r, r, r) = sym.coeff(i - j);
    }
  }
  return out;
}

double unitarity_residual(const BandedSymbol& sym) {
  const int points = 4 * sym.bandwidth + 4;
  double worst = 0.0;
  for (int j = 0; j < points; ++j) {
    const Matrix q = sym.evaluate(2.0 * std::numbers::pi * j / points);
    worst = std::max(worst, linalg::unitarity_residual(q));
  }
  return worst;
}

ExactKernel exact_kernel(const BandedSymbol& sym, double tol, double unitarity_tol) {
  const double unit = unitarity_residual(sym);
  if (unit > (unitarity_tol < 0.0 ? tol : unitarity_tol)) {
    throw Error(ErrorCode::NotUnitary,
                "symbol unitarity residual " + std::to_string(unit), unit);
  }
  ExactKernel out;
  const int w = sym.bandwidth;
  const int r = sym.rank;
  if (w == 0) {
    out.gap_ratio = std::numeric_limits<double>::infinity();
    return out;
  }
  const BandedSymbol star = sym.adjoint();
  // rows: modes t = -2W .. -1, columns: modes s = -W .. -1
  Matrix l = Matrix::Zero(2 * w * r, w * r);
  for (int t = -2 * w; t <= -1; ++t) {
    for (int s = -w; s <= -1; ++s) {
      l.block((t + 2 * w) * r, (s + w) * r, r, r) = star.coeff(t - s);
    }
  }
  const linalg::KernelInfo info = linalg::kernel(l, tol);
  out.dimension = info.dimension;
  out.gap_ratio = info.gap_ratio;
  out.singular_values = info.singular_values;
  for (int c = 0; c < info.dimension; ++c) {
    const Vector b = info.basis.col(c);
    Vector a = Vector::Zero(w * r);
    for (int u = 0; u < w; ++u) {
      for (int s = -w; s <= -1; ++s) {
        a.segment(u * r, r) += star.coeff(u - s) * b.segment((s + w) * r, r);
      }
    }
    out.witnesses.push_back(std::move(a));
  }
  return out;
}

int exact_kernel_dim_banded(const BandedSymbol& sym, double tol) {
  return exact_kernel(sym, tol).dimension;
}

SvdKernel svd_kernel_dim(const BandedSymbol& sym, std::vector<int> sizes, double tol) {
  if (sizes.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no section sizes given");
  }
  std::sort(sizes.begin(), sizes.end());
  for (int n : sizes) {
    if (n <= 4 * sym.bandwidth) {
      throw Error(ErrorCode::InvalidArgument,
                  "section size " + std::to_string(n) + " must exceed 4W = " +
                      std::to_string(4 * sym.bandwidth));
    }
  }
  SvdKernel out;
  out.sizes = sizes;
  out.counts.resize(sizes.size());
  std::vector<double> gaps(sizes.size());
  parallel_for(sizes.size(), [&](std::size_t i) {
    const auto info = linalg::kernel(build_rectangular(sym, sizes[i]), tol);
    out.counts[i] = info.dimension;
    gaps[i] = info.gap_ratio;
  });
  out.gap_ratio = gaps.back();
  out.dimension = out.counts.back();
  if (sizes.size() > 1 && out.counts[sizes.size() - 2] != out.dimension) {
    std::string detail = "kernel counts";
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      detail += " N=" + std::to_string(sizes[i]) + ":" + std::to_string(out.counts[i]);
    }
    throw Error(ErrorCode::Unstable, detail);
  }
  return out;
}

Z2 z2_index(const BandedSymbol& sym, double tol) {
  const int dim = exact_kernel_dim_banded(sym, tol);
  const int adjoint_dim = exact_kernel_dim_banded(sym.adjoint(), tol);
  if (dim != adjoint_dim) {
    throw Error(ErrorCode::IndexMismatch,
                "dim Ker T = " + std::to_string(dim) + " but dim Ker T^* = " +
                    std::to_string(adjoint_dim));
  }
  return Z2::parity(dim);
}

long noether_index(const SewingField& q) {
  require_circle(q);
  ScalarField d = sewing::det_field(q).det;
  for (Complex& v : d.values) v /= std::abs(v);
  return -sewing::unwrap_phase_1d(d).winding;
}

IndexReport index_theorem_check(const SewingField& q, const IndexOptions& opt) {
  require_circle(q);
  sewing::require_sewing(q, opt.tol);
  const BandedSymbol sym = opt.bandwidth < 0 ? select_bandwidth(q, opt.tol)
                                             : fourier_coefficients(q, opt.bandwidth);
  if (sym.truncation_residual > opt.tol) {
    throw Error(ErrorCode::Uncertified,
                "bandwidth " + std::to_string(sym.bandwidth) +
                    " misses the symbol by " + std::to_string(sym.truncation_residual),
                sym.truncation_residual);
  }
  IndexReport out;
  out.nu = invariants::teo_kane_1d(q, {opt.tol, 1e-6}).value;
  out.bandwidth = sym.bandwidth;
  out.truncation_residual = sym.truncation_residual;
  const double unitarity_tol = 4.0 * std::max(opt.tol, sym.truncation_residual);
  const ExactKernel kernel = exact_kernel(sym, opt.kernel_tol, unitarity_tol);
  out.kernel_dimension = kernel.dimension;
  out.gap_ratio = kernel.gap_ratio;
  out.witnesses = kernel.witnesses;
  out.adjoint_kernel_dimension =
      exact_kernel(sym.adjoint(), opt.kernel_tol, unitarity_tol).dimension;
  if (out.adjoint_kernel_dimension != out.kernel_dimension) {
    throw Error(ErrorCode::IndexMismatch,
                "dim Ker T = " + std::to_string(out.kernel_dimension) +
                    " but dim Ker T^* = " +
                    std::to_string(out.adjoint_kernel_dimension));
  }
  out.index = Z2::parity(out.kernel_dimension);
  out.agree = out.index == out.nu;
  return out;
}

}  // namespace toeplitz
}  // namespace diii
