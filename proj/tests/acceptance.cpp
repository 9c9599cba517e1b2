// Acceptance run: one PASS/FAIL line per criterion AC1-AC12, nonzero exit
// status when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "diii/toeplitz.hpp"
#include "support.hpp"

using namespace diii;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double max_deviation(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, linalg::op_norm(a[i] - b[i]));
  return d;
}

SewingField deform(const SewingField& q, const std::function<Matrix(double)>& h) {
  return invariants::apply_intertwiner(q, support::sample_matrix(q.grid, h));
}

/// Circle sewing fields of every catalogue model, Hamiltonians reduced to their sewing matrix.
std::vector<std::pair<std::string, SewingField>> circle_models(int n) {
  std::vector<std::pair<std::string, SewingField>> out;
  for (const auto& row : models::catalog()) {
    if (row.space != Space::Circle) continue;
    const auto m = models::make_model(row.name, Grid::circle(n));
    out.emplace_back(row.name, m.kind == FieldKind::Sewing
                                   ? m.sewing
                                   : invariants::sewing_from_hamiltonian(m.hamiltonian,
                                                                         m.symmetries));
  }
  return out;
}

/// B = U diag(s) V with s in [0.5, 2]: condition number at most 4.
Matrix well_conditioned(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> s(0.5, 2.0);
  Eigen::VectorXcd d(n);
  for (int j = 0; j < n; ++j) d(j) = s(rng);
  return oracle::random_unitary(rng, n) * d.asDiagonal() * oracle::random_unitary(rng, n);
}

/// Skew-symmetric with singular values in [0.5, 2]: V^t diag(s_j Q_1) V.
Matrix well_conditioned_skew(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> s(0.5, 2.0);
  Matrix core = Matrix::Zero(n, n);
  for (int j = 0; j < n / 2; ++j) {
    const double v = s(rng);
    core(2 * j, 2 * j + 1) = -v;
    core(2 * j + 1, 2 * j) = v;
  }
  const Matrix u = oracle::random_unitary(rng, n);
  return u.transpose() * core * u;
}

Outcome ac1() {
  Outcome o;
  struct Case {
    const char* name;
    SewingField q;
    int expected;
  };
  const std::vector<Case> cases{{"q_plus", support::q_plus(256, 1), 1},
                                {"q_minus n=1", support::q_minus(256, 1), -1},
                                {"q_minus n=3", support::q_minus(256, 3), -1}};
  for (const Case& c : cases) {
    const auto est = invariants::teo_kane_1d(c.q);
    o.require(est.value.sign() == c.expected, c.name);
    o.require(est.deviation <= 1e-8, std::string(c.name) + " deviation");
    o.detail << c.name << "=" << est.value.sign() << " (dev " << est.deviation << ") ";
  }
  return o;
}

Outcome ac2() {
  Outcome o;
  for (int n = 1; n <= 5; ++n) {
    const Complex pf = linalg::pfaffian(linalg::symplectic(n), 1e-12);
    const double want = ((n * (n + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    o.require(pf == Complex(want, 0.0), "Pf(Q_2n) n=" + std::to_string(n));
  }
  std::mt19937_64 rng(1001);
  double worst_sq = 0.0, worst_cov = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int size = 2 * (1 + trial % 6);
    const Matrix a = well_conditioned_skew(rng, size);
    const Matrix b = well_conditioned(rng, size);
    const Complex pf = linalg::pfaffian(a, 1e-10);
    const Complex det = a.determinant();
    worst_sq = std::max(worst_sq, std::abs(pf * pf - det) / std::abs(det));
    const Complex want = b.determinant() * pf;
    worst_cov = std::max(worst_cov,
                         std::abs(linalg::pfaffian(b * a * b.transpose(), 1e-10) - want) /
                             std::abs(want));
  }
  o.require(worst_sq <= 1e-9, "Pf^2 = det");
  o.require(worst_cov <= 1e-9, "Pf(BAB^t) = det B Pf A");
  o.detail << "Pf(Q_2n) exact for n<=5; max rel err Pf^2-det " << worst_sq << ", covariance "
           << worst_cov;
  return o;
}

Outcome ac3() {
  Outcome o;
  const auto sm = toeplitz::fourier_coefficients(support::q_minus(), 1);
  const auto km = toeplitz::exact_kernel(sm, 1e-8);
  o.require(km.dimension == 1, "dim Ker T_{q_minus} = 1");
  if (km.witnesses.size() == 1) {
    const Vector& w = km.witnesses[0];
    const double first = std::abs(w(0));
    o.require(std::abs(first - 1.0) <= 1e-10 && (w.norm() - first) <= 1e-10,
              "witness is mode 0 of the first channel");
  }
  const auto sp = toeplitz::fourier_coefficients(support::q_plus(), 1);
  o.require(toeplitz::exact_kernel(sp, 1e-8).dimension == 0, "dim Ker T_{q_plus} = 0");

  int agree = 0, total = 0, max_band = 0;
  auto test = [&](const SewingField& q, const std::string& name) {
    const auto rep = toeplitz::index_theorem_check(q);
    ++total;
    agree += rep.agree;
    max_band = std::max(max_band, rep.bandwidth);
    o.require(rep.agree, name);
    return rep;
  };
  test(support::q_plus(), "q_plus");
  test(support::q_minus(), "q_minus");
  test(invariants::direct_sum(support::q_minus(), support::q_minus()), "q_minus + q_minus");
  std::mt19937_64 rng(1003);
  for (int trial = 0; trial < 50; ++trial) {
    const auto loop = oracle::random_trig_loop(rng, 2, 1);
    const auto base = trial % 2 ? support::q_minus() : support::q_plus();
    const auto rep = test(deform(base, [&](double k) { return loop(k); }),
                          "deformation " + std::to_string(trial));
    o.require(rep.bandwidth <= 3, "bandwidth <= 3");
  }
  o.detail << "kernel dims 1/0, agreement " << agree << "/" << total << ", max bandwidth "
           << max_band;
  return o;
}

Outcome ac4() {
  Outcome o;
  std::mt19937_64 rng(1004);
  const std::vector<double> tols{1e-2, 1e-4, 1e-8, 1e-12};
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto loop = oracle::random_trig_loop(rng, 2, 1 + trial % 3);
    auto base = trial % 2 ? support::q_minus() : support::q_plus();
    if (trial % 4 == 3) base = invariants::direct_sum(base, support::q_minus());
    const auto q = deform(base, [&](double k) {
      const Matrix h = loop(k);
      return base.rank() == 2 ? h : linalg::direct_sum(h, h);
    });
    const auto sym = toeplitz::select_bandwidth(q, 1e-10);
    for (int n : {sym.bandwidth + 1, 2 * sym.bandwidth + 3, 16}) {
      const auto t = toeplitz::build_truncation(sym, n);
      o.require((t.matrix + t.matrix.transpose()).norm() == 0.0, "square truncation skew");
      for (double tol : tols) {
        const int dim = linalg::kernel_dimension(t.matrix, tol);
        o.require(dim % 2 == 0, "even kernel, trial " + std::to_string(trial));
        ++checked;
      }
    }
  }
  // the rectangular sections see the odd kernel of q_minus
  const auto sm = toeplitz::fourier_coefficients(support::q_minus(), 1);
  const auto square = linalg::kernel_dimension(toeplitz::build_truncation(sm, 16).matrix, 1e-8);
  const auto rect = toeplitz::svd_kernel_dim(sm, {8, 16, 32}, 1e-8).dimension;
  o.require(rect == 1, "rectangular sections recover dim 1 for q_minus");
  o.detail << checked << " (symbol, size, tol) kernels all even; q_minus square section dim "
           << square << " vs rectangular dim " << rect;
  return o;
}

Outcome ac5() {
  Outcome o;
  struct Row {
    const char* name;
    int w1, w2, s;
  };
  const std::vector<Row> rows{{"q_w1", -1, 1, 1}, {"q_w2", 1, -1, 1}, {"q_s", 1, 1, -1},
                              {"q_0", 1, 1, 1}};
  for (int n : {32, 64, 128}) {
    for (const Row& r : rows) {
      const auto t =
          invariants::full_invariant_2d(models::make_model(r.name, Grid::torus(n, n)).sewing);
      o.require(t.weak1.sign() == r.w1 && t.weak2.sign() == r.w2 && t.strong.sign() == r.s,
                std::string(r.name) + " at " + std::to_string(n));
    }
  }
  o.detail << "4 models x grids 32^2, 64^2, 128^2";
  return o;
}

Outcome ac6() {
  Outcome o;
  const Grid g = Grid::torus(32, 32);
  const std::vector<std::string> names{"q_0", "q_w1", "q_w2", "q_s"};
  std::vector<SewingField> fields;
  std::vector<std::array<int, 3>> single;
  for (const auto& n : names) {
    fields.push_back(models::make_model(n, g).sewing);
    const auto t = invariants::full_invariant_2d(fields.back());
    single.push_back({t.weak1.sign(), t.weak2.sign(), t.strong.sign()});
  }
  std::set<std::array<int, 3>> seen;
  for (int mask = 1; mask < 16; ++mask) {
    std::optional<SewingField> sum;
    std::array<int, 3> expected{1, 1, 1};
    for (int j = 0; j < 4; ++j) {
      if (!(mask & (1 << j))) continue;
      sum = sum ? invariants::direct_sum(*sum, fields[j]) : fields[j];
      for (int c = 0; c < 3; ++c) expected[c] *= single[j][c];
    }
    const auto t = invariants::full_invariant_2d(*sum);
    const std::array<int, 3> got{t.weak1.sign(), t.weak2.sign(), t.strong.sign()};
    o.require(got == expected, "subset mask " + std::to_string(mask));
    seen.insert(got);
  }
  seen.insert({1, 1, 1});  // empty sum
  o.require(seen.size() == 8, "all 8 elements reached");
  o.detail << "16 subsets, " << seen.size() << " distinct elements of (+-1)^3";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::mt19937_64 rng(1007);
  int cases = 0;
  auto check_normalized = [&](const SewingField& q, int nu, const std::string& what) {
    const auto d = invariants::normalize_determinant(q);
    o.require(support::nu(d) == nu, what + " normalize_determinant");
    o.require(support::nu(invariants::normalize_basepoint(d)) == nu,
              what + " normalize_basepoint");
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto loop = oracle::random_trig_loop(rng, 2, 1 + trial % 3);
    const auto base = trial % 2 ? support::q_minus() : support::q_plus();
    const auto q = deform(base, [&](double k) { return loop(k); });
    const int expected = (loop.winding % 2 == 0 ? 1 : -1) * support::nu(base);
    o.require(support::nu(q) == expected, "trig trial " + std::to_string(trial));
    check_normalized(q, expected, "trig trial " + std::to_string(trial));
    ++cases;
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto loop = oracle::random_even_loop(rng, 2, 1.5);
    const auto base = trial % 2 ? support::q_minus() : support::q_plus();
    const auto q = deform(base, [&](double k) { return loop(k); });
    o.require(support::nu(q) == support::nu(base), "even trial " + std::to_string(trial));
    check_normalized(q, support::nu(base), "even trial " + std::to_string(trial));
    ++cases;
  }
  o.detail << cases << " deformations, nu transforms by (-1)^winding(det h)";
  return o;
}

Outcome ac8() {
  Outcome o;
  int cases = 0;
  auto test = [&](const SewingField& q, const std::string& name) {
    const auto p = invariants::construct_p_1d(q);
    o.require(Z2::parity(p.degree) == invariants::teo_kane_1d(q).value, name);
    ++cases;
  };
  for (const auto& [name, q] : circle_models(256)) test(q, name);
  std::mt19937_64 rng(1008);
  for (int trial = 0; trial < 50; ++trial) {
    const auto loop = oracle::random_trig_loop(rng, 2, 1 + trial % 3);
    test(deform(trial % 2 ? support::q_minus() : support::q_plus(),
                [&](double k) { return loop(k); }),
         "deformation " + std::to_string(trial));
  }
  o.detail << cases << " fields, (-1)^deg p = nu in all";
  return o;
}

Outcome ac9() {
  Outcome o;
  std::mt19937_64 rng(1009);
  const Grid g = Grid::circle(256);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = oracle::random_equivariant_loop(rng);
    const auto field = support::sample_scalar(g, [&](double k, double) { return r(k); });
    const long winding = sewing::unwrap_phase_1d(field).winding;
    const Complex ratio = r(oracle::kPi) / r(0.0);
    const int exact = ratio.real() > 0 ? 1 : -1;
    o.require(winding == r.degree, "winding trial " + std::to_string(trial));
    o.require(Z2::parity(winding).sign() == exact, "oracle ratio trial " + std::to_string(trial));
    o.require(sewing::equivariant_degree_parity(field, 1e-10) == Z2::parity(winding),
              "library ratio trial " + std::to_string(trial));
  }
  o.detail << "100 equivariant maps";
  return o;
}

Outcome ac10() {
  Outcome o;
  int cases = 0;
  auto test = [&](const SewingField& q, const std::string& name) {
    const auto n = invariants::normalize_determinant(q);
    o.require(invariants::gerbe_sign_1d(n).value == invariants::teo_kane_1d(n).value, name);
    ++cases;
  };
  for (const auto& [name, q] : circle_models(256)) test(q, name);
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 30; ++trial) {
    const auto loop = oracle::random_trig_loop(rng, 2, 1 + trial % 3);
    test(deform(trial % 2 ? support::q_minus() : support::q_plus(),
                [&](double k) { return loop(k); }),
         "deformation " + std::to_string(trial));
  }
  o.detail << cases << " det-normalized fields";
  return o;
}

Outcome ac11() {
  Outcome o;
  const auto fx = models::intertwiner_fixtures(Grid::circle(256));
  const auto s0 = symmetry::verify_intertwiner(fx.q0, fx.q0_prime, fx.phi0, true);
  o.require(s0.passed(1e-10), "(q0, q0', phi0) strong");
  const auto w1 = symmetry::verify_intertwiner(fx.q0, fx.q1rot, fx.phi1, false);
  o.require(w1.passed(1e-10), "(q1rot, q0, phi1) weak");
  const auto s1 = symmetry::verify_intertwiner(fx.q0, fx.q1rot, fx.phi1, true);
  o.require(!s1.passed(1e-10), "(q1rot, q0, phi1) not strong");
  o.require(s1.invariance >= 1.0, "strong-failure residual >= 1");
  o.detail << "phi0 residual " << s0.intertwining << ", phi1 weak residual " << w1.intertwining
           << ", phi1 invariance residual " << s1.invariance;
  return o;
}

Outcome ac12() {
  Outcome o;
  std::mt19937_64 rng(1012);
  double round_trip = 0.0;
  std::vector<SewingField> qs{support::q_plus(), support::q_minus(), support::q_minus(256, 3)};
  for (int trial = 0; trial < 10; ++trial) {
    const auto loop = oracle::random_trig_loop(rng, 2, 2);
    qs.push_back(deform(trial % 2 ? support::q_minus() : support::q_plus(),
                        [&](double k) { return loop(k); }));
  }
  for (const auto& q : qs) {
    const auto back = symmetry::extract_sewing(symmetry::hamiltonian_from_sewing(q), 1e-10);
    round_trip = std::max(round_trip, max_deviation(back.values, q.values));
  }
  o.require(round_trip <= 1e-12, "extract o hamiltonian");

  double standard = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 4;
    const Matrix v = oracle::random_unitary(rng, 2 * m);
    const auto s = SymmetryTriple::standard(m);
    const auto conj = SymmetryTriple::from_tc(v * s.T.unitary * v.transpose(),
                                              v * s.C.unitary * v.transpose());
    standard = std::max(standard, symmetry::standard_form(conj, 1e-10).residual);
  }
  o.require(standard <= 1e-10, "standard_form");

  double takagi = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    const Matrix v = oracle::random_unitary(rng, 2 * n);
    const Matrix s = v.transpose() * oracle::symplectic(n) * v;
    const Matrix u = linalg::skew_takagi(s, 1e-10);
    takagi = std::max({takagi, linalg::op_norm(u.transpose() * oracle::symplectic(n) * u - s),
                       linalg::unitarity_residual(u)});
  }
  o.require(takagi <= 1e-9, "skew_takagi");
  o.detail << "round trip " << round_trip << ", standard form " << standard << ", takagi "
           << takagi;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3},   {"AC4", ac4},   {"AC5", ac5},   {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11}, {"AC12", ac12}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s %s [%.2fs]\n", name, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(),
                secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
