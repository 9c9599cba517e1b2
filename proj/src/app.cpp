#include "diii/app.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "diii/invariants.hpp"
#include "diii/toeplitz.hpp"

namespace diii::app {
namespace {

using Json = nlohmann::ordered_json;
using linalg::op_norm;

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json sign_json(const SignEstimate& s) {
  return Json{{"value", s.value.sign()},
              {"pre_rounding", complex_json(s.raw)},
              {"deviation", s.deviation}};
}

Json input_json(const SampleFile& sample) {
  const Grid& g = sample.grid();
  Json grid = g.space() == Space::Circle ? Json::array({g.dims()[0]})
                                         : Json::array({g.dims()[0], g.dims()[1]});
  return Json{{"digest", digest(serialize_sample(sample))},
              {"space", to_string(g.space())},
              {"grid", grid},
              {"rank", sample.rank},
              {"kind", to_string(sample.kind)}};
}

Json header(const char* command) {
  return Json{{"schema", kReportSchema}, {"command", command}};
}

void flatten(const Json& node, const std::string& prefix, std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  out << prefix << ": " << (node.is_string() ? node.get<std::string>() : node.dump()) << '\n';
}

std::string render(const Json& doc, ReportFormat format) {
  if (format == ReportFormat::Json) return doc.dump(2) + "\n";
  std::ostringstream out;
  flatten(doc, "", out);
  return out.str();
}

Json sewing_residuals_json(const sewing::SewingResiduals& r) {
  return Json{{"unitarity", r.unitarity},
              {"sewing", r.sewing},
              {"fixed_point_skewness", r.skewness},
              {"worst_index", r.worst_index}};
}

/// Per-sample class DIII residual, for locating the worst sample.
std::vector<double> local_diii_residuals(const HamiltonianField& h, const SymmetryTriple& sym) {
  std::vector<double> out(h.values.size());
  const Matrix& ut = sym.T.unitary;
  const Matrix& uc = sym.C.unitary;
  for (int i = 0; i < h.grid.size(); ++i) {
    const Matrix& hi = h.values[i];
    const Matrix& image = h.values[h.grid.partner(i)];
    out[i] = std::max({op_norm(uc * hi.conjugate() + image * uc),
                       op_norm(ut * hi.conjugate() - image * ut),
                       op_norm(sym.chi * hi + hi * sym.chi),
                       linalg::hermiticity_residual(hi)});
  }
  return out;
}

Json location_json(const Grid& grid, int index) {
  const auto k = grid.momentum(index);
  Json coords = grid.space() == Space::Circle
                    ? Json::array({grid.coords(index)[0]})
                    : Json::array({grid.coords(index)[0], grid.coords(index)[1]});
  return Json{{"index", index}, {"coords", coords}, {"momentum", Json::array({k[0], k[1]})}};
}

SewingField sewing_of(const SampleFile& sample, const InvariantOptions& opt) {
  if (sample.kind == FieldKind::Sewing) return sample.sewing;
  return invariants::sewing_from_hamiltonian(sample.hamiltonian, sample.triple(), opt);
}

Json circle_branch_json(const SewingField& q) {
  const auto det = sewing::det_field(q);
  ScalarField unit = det.det;
  for (Complex& v : unit.values) v /= std::abs(v);
  const auto unwrapped = sewing::unwrap_phase_1d(unit);
  return Json{{"det_winding", unwrapped.winding},
              {"max_phase_step", unwrapped.max_step},
              {"det_invariance", det.invariance_residual}};
}

Json torus_branch_json(const SewingField& q, double tol) {
  const auto det = sewing::det_field(q);
  const Complex start = linalg::pfaffian(q.values[0] * 0.5 - q.values[0].transpose() * 0.5, tol);
  const auto branch = sewing::sqrt_branch_2d(det.det, start, tol);
  return Json{{"det_windings", Json::array({branch.n1, branch.n2})},
              {"max_plaquette", branch.max_plaquette},
              {"root_invariance", branch.invariance_residual},
              {"det_invariance", det.invariance_residual}};
}

struct Computed {
  Json invariants;
  Json diagnostics;
  Json extra = Json::object();
};

Computed compute(const SampleFile& sample, const ReportOptions& opt) {
  const InvariantOptions iopt{opt.tol, opt.sign_tol};
  const SewingField q = sewing_of(sample, iopt);
  Computed out;
  out.diagnostics["sewing"] = sewing_residuals_json(sewing::check_sewing(q));
  if (sample.kind == FieldKind::Hamiltonian) {
    const auto r = symmetry::verify_class_diii(sample.hamiltonian, sample.triple());
    out.diagnostics["symmetry"] = Json{{"particle_hole", r.particle_hole},
                                       {"time_reversal", r.time_reversal},
                                       {"chiral", r.chiral},
                                       {"hermiticity", r.hermiticity},
                                       {"gap", sample.hamiltonian.gap()}};
  }
  if (q.grid.space() == Space::Circle) {
    const auto nu = invariants::teo_kane_1d(q, iopt);
    out.invariants["nu_1d"] = nu.value.sign();
    out.diagnostics["branch"] = circle_branch_json(q);
    out.diagnostics["rounding"] = Json{{"nu_1d", sign_json(nu)}};
    if (opt.toeplitz) {
      const auto rep = toeplitz::index_theorem_check(
          q, toeplitz::IndexOptions{opt.tol, opt.kernel_tol, opt.bandwidth});
      out.invariants["toeplitz_index"] = rep.index.sign();
      out.invariants["agree"] = rep.agree;
      Json t{{"bandwidth", rep.bandwidth},
             {"truncation_residual", rep.truncation_residual},
             {"kernel_dimension", rep.kernel_dimension},
             {"adjoint_kernel_dimension", rep.adjoint_kernel_dimension},
             {"gap_ratio", std::isfinite(rep.gap_ratio) ? Json(rep.gap_ratio) : Json("inf")}};
      if (opt.witness) {
        Json list = Json::array();
        for (const Vector& w : rep.witnesses) {
          Json entries = Json::array();
          for (Eigen::Index j = 0; j < w.size(); ++j) {
            if (std::abs(w(j)) <= 1e-12) continue;
            entries.push_back(Json{{"mode", j / q.rank()},
                                   {"channel", j % q.rank()},
                                   {"value", complex_json(w(j))}});
          }
          list.push_back(std::move(entries));
        }
        t["witnesses"] = std::move(list);
      }
      out.extra["toeplitz"] = std::move(t);
    }
    if (opt.gerbe) {
      const SewingField normalized = invariants::normalize_determinant(q, iopt);
      const auto g = invariants::gerbe_sign_1d(normalized, iopt);
      out.invariants["gerbe"] = g.value.sign();
      double det_dev = 0.0;
      for (Complex d : sewing::det_field(normalized).det.values) {
        det_dev = std::max(det_dev, std::abs(d - 1.0));
      }
      out.extra["gerbe"] = Json{{"sign", sign_json(g)}, {"normalized_det_deviation", det_dev}};
    }
  } else {
    if (opt.toeplitz || opt.gerbe) {
      throw Error(ErrorCode::InvalidArgument,
                  "--toeplitz and --gerbe apply to circle inputs only");
    }
    const auto all = invariants::full_invariant_2d(q, iopt);
    out.invariants["nu_weak"] = Json::array({all.weak1.sign(), all.weak2.sign()});
    out.invariants["nu_strong"] = all.strong.sign();
    out.invariants["triple"] =
        Json::array({all.weak1.sign(), all.weak2.sign(), all.strong.sign()});
    out.diagnostics["branch"] = torus_branch_json(q, opt.tol);
    out.diagnostics["rounding"] = Json{{"nu_weak_1", sign_json(all.estimates[0])},
                                       {"nu_weak_2", sign_json(all.estimates[1])},
                                       {"nu_strong", sign_json(all.estimates[2])}};
  }
  return out;
}

bool same_triple(const SymmetryTriple& a, const SymmetryTriple& b, double tol) {
  return a.dimension() == b.dimension() && op_norm(a.T.unitary - b.T.unitary) <= tol &&
         op_norm(a.C.unitary - b.C.unitary) <= tol;
}

}  // namespace

CheckResult check(const SampleFile& sample, const ReportOptions& opt) {
  Json doc = header("check");
  doc["input"] = input_json(sample);
  CheckResult out;
  int worst = 0;
  if (sample.kind == FieldKind::Sewing) {
    const auto r = sewing::check_sewing(sample.sewing);
    out.passed = r.passed(opt.tol);
    worst = r.worst_index;
    doc["residuals"] = sewing_residuals_json(r);
  } else {
    const SymmetryTriple sym = sample.triple();
    const auto triple = check_triple(sym);
    const auto r = symmetry::verify_class_diii(sample.hamiltonian, sym);
    const double gap = sample.hamiltonian.gap();
    const auto local = local_diii_residuals(sample.hamiltonian, sym);
    worst = static_cast<int>(std::max_element(local.begin(), local.end()) - local.begin());
    out.passed = triple.max() <= opt.tol && r.passed(opt.tol) && gap > opt.tol;
    doc["residuals"] = Json{{"symmetry_algebra", triple.max()},
                            {"particle_hole", r.particle_hole},
                            {"time_reversal", r.time_reversal},
                            {"chiral", r.chiral},
                            {"hermiticity", r.hermiticity},
                            {"worst_index", worst}};
    doc["gap"] = gap;
  }
  doc["tolerance"] = opt.tol;
  doc["status"] = out.passed ? "PASS" : "FAIL";
  if (!out.passed) doc["failure"] = location_json(sample.grid(), worst);
  out.report = render(doc, opt.format);
  return out;
}

std::string invariant(const SampleFile& sample, const ReportOptions& opt) {
  Computed c = compute(sample, opt);
  Json doc = header("invariant");
  doc["input"] = input_json(sample);
  doc["invariants"] = std::move(c.invariants);
  doc["diagnostics"] = std::move(c.diagnostics);
  for (auto& [key, value] : c.extra.items()) doc[key] = value;
  return render(doc, opt.format);
}

std::string classify(const SampleFile& a, const SampleFile& b, const ReportOptions& opt) {
  if (a.grid().space() != b.grid().space() || !(a.grid() == b.grid())) {
    throw Error(ErrorCode::GridMismatch, "inputs live on different grids");
  }
  if (a.rank != b.rank) {
    throw Error(ErrorCode::RankMismatch,
                "ranks " + std::to_string(a.rank) + " and " + std::to_string(b.rank));
  }
  ReportOptions plain = opt;
  plain.toeplitz = plain.gerbe = plain.witness = false;
  const Computed ca = compute(a, plain);
  const Computed cb = compute(b, plain);

  Json doc = header("classify");
  doc["inputs"] = Json::array({input_json(a), input_json(b)});
  doc["invariants"] = Json::array({ca.invariants, cb.invariants});
  const InvariantOptions iopt{opt.tol, opt.sign_tol};
  const bool shared_frame = a.kind == FieldKind::Hamiltonian &&
                            b.kind == FieldKind::Hamiltonian &&
                            same_triple(a.triple(), b.triple(), opt.tol);
  if (a.grid().space() == Space::Circle) {
    const int na = ca.invariants["nu_1d"].get<int>();
    const int nb = cb.invariants["nu_1d"].get<int>();
    int relative = na * nb;
    if (shared_frame) {
      relative = invariants::relative_invariant(a.hamiltonian, b.hamiltonian, a.triple(), iopt)
                     .nu.sign();
    }
    doc["relative"] = Json{{"nu", relative}};
    doc["verdict"] = to_string(relative == 1 ? invariants::Homotopy::Homotopic
                                             : invariants::Homotopy::NotHomotopic);
  } else {
    const auto& ta = ca.invariants["triple"];
    const auto& tb = cb.invariants["triple"];
    Json weak = Json::array({ta[0].get<int>() * tb[0].get<int>(),
                             ta[1].get<int>() * tb[1].get<int>()});
    int strong = ta[2].get<int>() * tb[2].get<int>();
    if (shared_frame) {
      const auto rel =
          invariants::relative_invariant(a.hamiltonian, b.hamiltonian, a.triple(), iopt);
      weak = Json::array({(*rel.weak)[0].sign(), (*rel.weak)[1].sign()});
      strong = rel.strong->sign();
    }
    doc["relative"] = Json{{"nu_weak", weak}, {"nu_strong", strong}};
  }
  return render(doc, opt.format);
}

}  // namespace diii::app
