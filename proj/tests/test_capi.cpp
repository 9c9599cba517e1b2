// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>
#include <thread>

#include "diii/diii.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  diii_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("model emission and sample info") {
  diii_sample* s = nullptr;
  const int dims[1] = {32};
  REQUIRE(diii_sample_from_model("q_minus", dims, 1, 1, &s) == DIII_OK);
  int space = -1, d[2] = {0, 0}, rank = 0, kind = -1;
  CHECK(diii_sample_info(s, &space, d, &rank, &kind) == DIII_OK);
  CHECK(space == 0);
  CHECK(d[0] == 32);
  CHECK(rank == 2);
  CHECK(kind == 0);

  char* json = nullptr;
  REQUIRE(diii_sample_to_json(s, &json) == DIII_OK);
  const std::string text = take(json);
  diii_sample* again = nullptr;
  REQUIRE(diii_sample_parse(text.c_str(), &again) == DIII_OK);
  char* json2 = nullptr;
  REQUIRE(diii_sample_to_json(again, &json2) == DIII_OK);
  CHECK(take(json2) == text);
  diii_sample_free(again);
  diii_sample_free(s);

  diii_sample* torus = nullptr;
  REQUIRE(diii_sample_from_model("q_s", nullptr, 0, 1, &torus) == DIII_OK);
  CHECK(diii_sample_info(torus, &space, d, &rank, nullptr) == DIII_OK);
  CHECK(space == 1);
  CHECK(d[0] == 64);
  CHECK(d[1] == 64);
  diii_sample_free(torus);
}

TEST_CASE("status codes and last error") {
  diii_sample* s = nullptr;
  CHECK(diii_sample_from_model("nope", nullptr, 0, 1, &s) == DIII_USAGE);
  CHECK(s == nullptr);
  CHECK(std::string(diii_last_error_code()) == "UnknownModel");
  CHECK(std::strlen(diii_last_error()) > 0);

  const int odd[1] = {7};
  CHECK(diii_sample_from_model("q_plus", odd, 1, 1, &s) == DIII_USAGE);
  CHECK(std::string(diii_last_error_code()) == "OddN");

  CHECK(diii_sample_parse("{\"schema\": 1}", &s) == DIII_PARSE);
  CHECK(diii_sample_parse(nullptr, &s) == DIII_USAGE);

  char* table = nullptr;
  CHECK(diii_models_table(&table) == DIII_OK);
  CHECK(std::string(diii_last_error()).empty());
  CHECK(take(table).find("q_minus") != std::string::npos);

  // errors are per thread
  std::thread([] {
    diii_sample* t = nullptr;
    diii_sample_from_model("nope", nullptr, 0, 1, &t);
  }).join();
  CHECK(std::string(diii_last_error()).empty());
}

TEST_CASE("commands through the C API") {
  diii_sample* qm = nullptr;
  diii_sample* qp = nullptr;
  const int dims[1] = {64};
  REQUIRE(diii_sample_from_model("q_minus", dims, 1, 1, &qm) == DIII_OK);
  REQUIRE(diii_sample_from_model("q_plus", dims, 1, 1, &qp) == DIII_OK);

  diii_options opt;
  diii_options_default(&opt);
  char* report = nullptr;
  int passed = 0;
  REQUIRE(diii_check(qm, &opt, &report, &passed) == DIII_OK);
  CHECK(passed == 1);
  CHECK(take(report).find("status: PASS") != std::string::npos);

  opt.toeplitz = 1;
  opt.format = DIII_FORMAT_JSON;
  REQUIRE(diii_invariant(qm, &opt, &report) == DIII_OK);
  const std::string inv = take(report);
  CHECK(inv.find("\"nu_1d\": -1") != std::string::npos);
  CHECK(inv.find("\"toeplitz_index\": -1") != std::string::npos);

  REQUIRE(diii_classify(qp, qm, nullptr, &report) == DIII_OK);
  CHECK(take(report).find("verdict: NotHomotopic") != std::string::npos);

  opt.tol = -1.0;
  CHECK(diii_invariant(qm, &opt, &report) == DIII_USAGE);

  diii_sample_free(qm);
  diii_sample_free(qp);
}

TEST_CASE("Pfaffian entry point") {
  // [[0, 2+i], [-(2+i), 0]] as interleaved re/im
  const double entries[8] = {0, 0, 2, 1, -2, -1, 0, 0};
  double out[2] = {0, 0};
  REQUIRE(diii_pfaffian(entries, 2, 1e-12, out) == DIII_OK);
  CHECK(out[0] == 2.0);
  CHECK(out[1] == 1.0);
  const double odd[2] = {0, 0};
  CHECK(diii_pfaffian(odd, 1, 1e-12, out) == DIII_VALIDATION);
}
