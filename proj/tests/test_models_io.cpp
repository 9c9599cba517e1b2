#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "diii/app.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace diii;
using Json = nlohmann::ordered_json;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

app::ReportOptions json_options() {
  app::ReportOptions o;
  o.format = app::ReportFormat::Json;
  return o;
}

}  // namespace

TEST_CASE("constant and rank-padded models") {
  const auto q = models::q_const(Grid::circle(8), 1);
  for (const Matrix& m : q.values) CHECK(linalg::op_norm(m - linalg::symplectic(1)) == 0.0);
  const auto q3 = models::q_minus(Grid::circle(32), 3);
  CHECK(q3.rank() == 6);
  CHECK(sewing::check_sewing(q3).max() <= 1e-14);
}

TEST_CASE("sphere model and the torus-to-sphere map") {
  const Matrix at_north = models::q_sphere_basic({1.0, 0.0, 0.0});
  CHECK(linalg::op_norm(at_north - linalg::symplectic(1)) == 0.0);
  CHECK(linalg::pfaffian(at_north, 1e-12) == Complex(-1.0));
  const Matrix at_south = models::q_sphere_basic({-1.0, 0.0, 0.0});
  CHECK(linalg::pfaffian(at_south, 1e-12) == Complex(1.0));

  std::mt19937_64 rng(61);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 3> x{d(rng), d(rng), d(rng)};
    const double r = std::hypot(x[0], x[1], x[2]);
    for (double& v : x) v /= r;
    const Matrix q = models::q_sphere_basic(x);
    CHECK(linalg::unitarity_residual(q) <= 1e-14);
    CHECK(std::abs(q.determinant() - 1.0) <= 1e-14);
    // involution (x0, x1, x2) -> (x0, -x1, -x2)
    const Matrix image = models::q_sphere_basic({x[0], -x[1], -x[2]});
    CHECK(linalg::op_norm(image + q.transpose()) <= 1e-14);
  }

  const auto pi = oracle::kPi;
  const auto p00 = models::pi0_map(0, 0), pp0 = models::pi0_map(pi, 0),
             p0p = models::pi0_map(0, pi), ppp = models::pi0_map(pi, pi);
  CHECK(p00[0] == doctest::Approx(1.0));
  CHECK(pp0[0] == doctest::Approx(1.0));
  CHECK(p0p[0] == doctest::Approx(1.0));
  CHECK(ppp[0] == doctest::Approx(-1.0));
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_real_distribution<double> k(-pi, pi);
    const double k1 = k(rng), k2 = k(rng);
    const auto a = models::pi0_map(k1, k2), b = models::pi0_map(-k1, -k2);
    CHECK(std::hypot(a[0], a[1], a[2]) == doctest::Approx(1.0));
    CHECK(b[0] == doctest::Approx(a[0]));
    CHECK(b[1] == doctest::Approx(-a[1]));
    CHECK(b[2] == doctest::Approx(-a[2]));
  }
}

TEST_CASE("model catalogue") {
  const auto& cat = models::catalog();
  CHECK(cat.size() >= 10);
  for (const auto& row : cat) {
    const Grid g = row.space == Space::Circle ? Grid::circle(64) : Grid::torus(16, 16);
    const auto m = models::make_model(row.name, g);
    CHECK(m.kind == row.kind);
    if (m.kind == FieldKind::Sewing) {
      CHECK(sewing::check_sewing(m.sewing).max() <= 1e-12);
    } else {
      CHECK(symmetry::verify_class_diii(m.hamiltonian, m.symmetries).max() <= 1e-10);
      CHECK(m.hamiltonian.gap() > 0.1);
    }
  }
  CHECK(models::catalog_table().rfind("name space rank expected kind\n", 0) == 0);
  CHECK(code_of([] { models::make_model("nope", Grid::circle(8)); }) == ErrorCode::UnknownModel);
  CHECK(code_of([] { models::make_model("q_s", Grid::circle(8)); }) == ErrorCode::BadGrid);
  CHECK(code_of([] { models::make_model("q_plus", Grid::circle(8), 0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("sample files round trip") {
  const auto s = sample_from_model(models::make_model("h_minus", Grid::circle(16)));
  const std::string text = serialize_sample(s);
  const auto back = parse_sample(text);
  CHECK(back.kind == FieldKind::Hamiltonian);
  CHECK(back.rank == 2);
  REQUIRE(back.symmetries.has_value());
  CHECK(serialize_sample(back) == text);
  for (std::size_t i = 0; i < s.hamiltonian.values.size(); ++i) {
    CHECK(linalg::op_norm(back.hamiltonian.values[i] - s.hamiltonian.values[i]) == 0.0);
  }

  const auto path = std::filesystem::temp_directory_path() / "diii_unit_roundtrip.json";
  write_sample(s, path.string());
  CHECK(serialize_sample(read_sample(path.string())) == text);
  std::filesystem::remove(path);

  CHECK(digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(digest("a") == "fnv1a64:af63dc4c8601ec8c");
}

TEST_CASE("sample parse errors") {
  const auto s = sample_from_model(models::make_model("q_minus", Grid::circle(8)));
  Json doc = Json::parse(serialize_sample(s));
  auto parse_code = [](const Json& j) { return code_of([&] { parse_sample(j.dump()); }); };
  CHECK(code_of([] { parse_sample("{"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_sample("/nonexistent/file.json"); }) == ErrorCode::ParseError);
  {
    Json j = doc;
    j["schema"] = "other";
    CHECK(parse_code(j) == ErrorCode::ParseError);
  }
  {
    Json j = doc;
    j["grid"] = Json::array({7});
    CHECK(parse_code(j) == ErrorCode::ParseError);
  }
  {
    Json j = doc;
    j["data"].erase(j["data"].begin());
    CHECK(parse_code(j) == ErrorCode::ParseError);
  }
  {
    Json j = doc;
    j["kind"] = "mystery";
    CHECK(parse_code(j) == ErrorCode::ParseError);
  }
  {
    Json j = doc;
    j.erase("rank");
    CHECK(parse_code(j) == ErrorCode::ParseError);
  }
}

TEST_CASE("reports") {
  const auto qm = sample_from_model(models::make_model("q_minus", Grid::circle(64)));
  const auto qp = sample_from_model(models::make_model("q_plus", Grid::circle(64)));

  auto checked = app::check(qm, json_options());
  CHECK(checked.passed);
  CHECK(Json::parse(checked.report)["status"] == "PASS");

  auto corrupt = qm;
  corrupt.sewing.values[9] = Matrix::Identity(2, 2);
  checked = app::check(corrupt, json_options());
  CHECK_FALSE(checked.passed);
  const Json failure = Json::parse(checked.report)["failure"];
  CHECK(failure["index"] == 9);

  const auto hs = sample_from_model(models::make_model("h_minus", Grid::circle(64)));
  CHECK(Json::parse(app::check(hs, json_options()).report).contains("gap"));

  auto opt = json_options();
  opt.toeplitz = true;
  opt.gerbe = true;
  const std::string inv = app::invariant(qm, opt);
  CHECK(inv == app::invariant(qm, opt));
  const Json j = Json::parse(inv);
  CHECK(j["invariants"]["nu_1d"] == -1);
  CHECK(j["invariants"]["toeplitz_index"] == -1);
  CHECK(j["invariants"]["agree"] == true);
  CHECK(j["invariants"]["gerbe"] == -1);

  const auto w2 = sample_from_model(models::make_model("q_w2", Grid::torus(16, 16)));
  const Json t = Json::parse(app::invariant(w2, json_options()));
  CHECK(t["invariants"]["triple"] == Json::array({1, -1, 1}));
  CHECK(code_of([&] { app::invariant(w2, opt); }) == ErrorCode::InvalidArgument);

  const Json c = Json::parse(app::classify(qp, qm, json_options()));
  CHECK(c["relative"]["nu"] == -1);
  CHECK(c["verdict"] == "NotHomotopic");
  CHECK(Json::parse(app::classify(qm, qm, json_options()))["verdict"] == "Homotopic");
  CHECK(code_of([&] { app::classify(qm, w2, json_options()); }) == ErrorCode::GridMismatch);

  const auto w1 = sample_from_model(models::make_model("q_w1", Grid::torus(16, 16)));
  const Json cw = Json::parse(app::classify(w1, w2, json_options()));
  CHECK(cw["relative"]["nu_weak"] == Json::array({-1, -1}));

  const std::string text = app::invariant(qm, app::ReportOptions{});
  CHECK(text.find("invariants.nu_1d: -1") != std::string::npos);
}
