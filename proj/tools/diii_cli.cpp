// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 parse error,
// 4 numerical failure, 5 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "diii/diii.h"

namespace {

struct SampleDeleter {
  void operator()(diii_sample* s) const { diii_sample_free(s); }
};
using SamplePtr = std::unique_ptr<diii_sample, SampleDeleter>;

struct StringDeleter {
  void operator()(char* s) const { diii_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

int fail(diii_status status) {
  std::cerr << "error: " << diii_last_error() << '\n';
  return static_cast<int>(status);
}

int usage(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return DIII_USAGE;
}

bool parse_grid(const std::string& text, std::vector<int>& dims) {
  dims.clear();
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, text.find('x') != std::string::npos ? 'x' : ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size()) return false;
      dims.push_back(v);
    } catch (...) {
      return false;
    }
  }
  return dims.size() == 1 || dims.size() == 2;
}

int emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) return usage("cannot write '" + out_path + "'");
  return 0;
}

diii_status load(const std::string& path, SamplePtr& sample) {
  diii_sample* raw = nullptr;
  const diii_status st = diii_sample_read(path.c_str(), &raw);
  sample.reset(raw);
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z2 invariants of class DIII sewing matrices and Hamiltonians"};
  app.require_subcommand(1);

  diii_options opt;
  diii_options_default(&opt);
  std::string format = "text";
  std::string out_path;
  std::string grid_text;
  int n = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", opt.tol, "validation tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", out_path, "write the report to this file");
  };

  auto* models = app.add_subcommand("models", "list the built-in models");

  std::string model_name;
  auto* emit = app.add_subcommand("emit", "write a model as a sample file");
  emit->add_option("model", model_name, "model name")->required();
  emit->add_option("--grid", grid_text, "N or N1xN2");
  emit->add_option("--n", n, "rank parameter, sewing rank 2n")->check(CLI::PositiveNumber);
  emit->add_option("--out", out_path, "output path (stdout when omitted)");

  std::string file_a;
  std::string file_b;
  auto* check = app.add_subcommand("check", "validate a sample file");
  check->add_option("file", file_a)->required();
  add_common(check);

  auto* invariant = app.add_subcommand("invariant", "compute the Z2 invariants");
  invariant->add_option("file", file_a)->required();
  add_common(invariant);
  invariant->add_option("--tol-kernel", opt.tol_kernel, "singular value cutoff")
      ->check(CLI::PositiveNumber);
  invariant->add_option("--bandwidth", opt.bandwidth, "Toeplitz symbol bandwidth");
  bool toeplitz = false;
  bool gerbe = false;
  bool witness = false;
  invariant->add_flag("--toeplitz", toeplitz, "also compute the Toeplitz Z2 index");
  invariant->add_flag("--gerbe", gerbe, "also compute the gerbe sign");
  invariant->add_flag("--witness", witness, "include Toeplitz kernel witnesses");

  auto* classify = app.add_subcommand("classify", "compare two sample files");
  classify->add_option("first", file_a)->required();
  classify->add_option("second", file_b)->required();
  add_common(classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : DIII_USAGE;
  }
  opt.format = format == "json" ? DIII_FORMAT_JSON : DIII_FORMAT_TEXT;
  opt.toeplitz = toeplitz;
  opt.gerbe = gerbe;
  opt.witness = witness;
  if (witness) opt.toeplitz = 1;

  if (models->parsed()) {
    char* table = nullptr;
    if (const diii_status st = diii_models_table(&table); st != DIII_OK) return fail(st);
    OwnedString owned(table);
    std::cout << table;
    return 0;
  }

  if (emit->parsed()) {
    std::vector<int> dims;
    if (!grid_text.empty() && !parse_grid(grid_text, dims)) {
      return usage("BadGrid: cannot read grid '" + grid_text + "'");
    }
    diii_sample* raw = nullptr;
    const diii_status st = diii_sample_from_model(model_name.c_str(), dims.data(),
                                                  static_cast<int>(dims.size()), n, &raw);
    SamplePtr sample(raw);
    if (st != DIII_OK) return fail(st);
    char* json = nullptr;
    if (const diii_status s2 = diii_sample_to_json(sample.get(), &json); s2 != DIII_OK) {
      return fail(s2);
    }
    OwnedString owned(json);
    return emit_text(json, out_path);
  }

  SamplePtr a;
  if (const diii_status st = load(file_a, a); st != DIII_OK) {
    return fail(st);
  }
  char* report = nullptr;

  if (check->parsed()) {
    int passed = 0;
    if (const diii_status st = diii_check(a.get(), &opt, &report, &passed); st != DIII_OK) {
      return fail(st);
    }
    OwnedString owned(report);
    if (const int rc = emit_text(report, out_path); rc != 0) return rc;
    return passed ? 0 : DIII_VALIDATION;
  }

  if (invariant->parsed()) {
    if (const diii_status st = diii_invariant(a.get(), &opt, &report); st != DIII_OK) {
      return fail(st);
    }
    OwnedString owned(report);
    return emit_text(report, out_path);
  }

  SamplePtr b;
  if (const diii_status st = load(file_b, b); st != DIII_OK) {
    return fail(st);
  }
  if (const diii_status st = diii_classify(a.get(), b.get(), &opt, &report); st != DIII_OK) {
    return fail(st);
  }
  OwnedString owned(report);
  return emit_text(report, out_path);
}
