#include "diii/diii.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "diii/app.hpp"

struct diii_sample {
  diii::SampleFile file;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_code;

diii_status status_of(diii::ErrorClass c) {
  switch (c) {
    case diii::ErrorClass::Validation: return DIII_VALIDATION;
    case diii::ErrorClass::Usage: return DIII_USAGE;
    case diii::ErrorClass::Parse: return DIII_PARSE;
    case diii::ErrorClass::Numerical: return DIII_NUMERICAL;
  }
  return DIII_INTERNAL;
}

template <class Body>
diii_status guarded(Body&& body) {
  last_error.clear();
  last_code.clear();
  try {
    body();
    return DIII_OK;
  } catch (const diii::Error& e) {
    last_error = e.what();
    last_code = diii::to_string(e.code());
    return status_of(diii::error_class(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    last_code = "Internal";
    return DIII_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    last_code = "Internal";
    return DIII_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw diii::Error(diii::ErrorCode::InvalidArgument, std::string(what) + " is null");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

diii::app::ReportOptions to_report_options(const diii_options* o) {
  diii_options d;
  diii_options_default(&d);
  if (o == nullptr) o = &d;
  diii::app::ReportOptions r;
  r.tol = o->tol;
  r.kernel_tol = o->tol_kernel;
  r.sign_tol = o->sign_tol;
  r.toeplitz = o->toeplitz != 0;
  r.gerbe = o->gerbe != 0;
  r.witness = o->witness != 0;
  r.bandwidth = o->bandwidth;
  r.format = o->format == DIII_FORMAT_JSON ? diii::app::ReportFormat::Json
                                           : diii::app::ReportFormat::Text;
  if (!(r.tol > 0) || !(r.kernel_tol > 0) || !(r.sign_tol > 0)) {
    throw diii::Error(diii::ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  return r;
}

}  // namespace

extern "C" {

void diii_options_default(diii_options* options) {
  if (options == nullptr) return;
  options->tol = 1e-8;
  options->tol_kernel = 1e-8;
  options->sign_tol = 1e-6;
  options->toeplitz = 0;
  options->gerbe = 0;
  options->witness = 0;
  options->bandwidth = -1;
  options->format = DIII_FORMAT_TEXT;
}

const char* diii_last_error(void) { return last_error.c_str(); }

const char* diii_last_error_code(void) { return last_code.c_str(); }

void diii_string_free(char* text) { std::free(text); }

diii_status diii_models_table(char** table) {
  return guarded([&] {
    require(table, "table");
    *table = copy_string(diii::models::catalog_table());
  });
}

diii_status diii_sample_from_model(const char* name, const int* dims, int ndims, int n,
                                   diii_sample** sample) {
  return guarded([&] {
    require(name, "name");
    require(sample, "sample");
    *sample = nullptr;
    const diii::models::ModelInfo* info = nullptr;
    for (const auto& row : diii::models::catalog()) {
      if (row.name == name) info = &row;
    }
    if (info == nullptr) {
      throw diii::Error(diii::ErrorCode::UnknownModel, std::string("no model named '") + name + "'");
    }
    const bool circle = info->space == diii::Space::Circle;
    if (ndims != 0 && (dims == nullptr || ndims != (circle ? 1 : 2))) {
      throw diii::Error(diii::ErrorCode::BadGrid,
                        std::string("model '") + name + "' needs " + (circle ? "1" : "2") +
                            " grid sizes");
    }
    const diii::Grid grid =
        circle ? diii::Grid::circle(ndims ? dims[0] : diii::Grid::kDefaultCircle)
               : diii::Grid::torus(ndims ? dims[0] : diii::Grid::kDefaultTorus,
                                   ndims ? dims[1] : diii::Grid::kDefaultTorus);
    auto out = std::make_unique<diii_sample>();
    out->file = diii::sample_from_model(diii::models::make_model(name, grid, n));
    *sample = out.release();
  });
}

diii_status diii_sample_parse(const char* json, diii_sample** sample) {
  return guarded([&] {
    require(json, "json");
    require(sample, "sample");
    *sample = nullptr;
    auto out = std::make_unique<diii_sample>();
    out->file = diii::parse_sample(json);
    *sample = out.release();
  });
}

diii_status diii_sample_read(const char* path, diii_sample** sample) {
  return guarded([&] {
    require(path, "path");
    require(sample, "sample");
    *sample = nullptr;
    auto out = std::make_unique<diii_sample>();
    out->file = diii::read_sample(path);
    *sample = out.release();
  });
}

diii_status diii_sample_write(const diii_sample* sample, const char* path) {
  return guarded([&] {
    require(sample, "sample");
    require(path, "path");
    diii::write_sample(sample->file, path);
  });
}

diii_status diii_sample_to_json(const diii_sample* sample, char** json) {
  return guarded([&] {
    require(sample, "sample");
    require(json, "json");
    *json = copy_string(diii::serialize_sample(sample->file));
  });
}

diii_status diii_sample_info(const diii_sample* sample, int* space, int dims[2], int* rank,
                             int* kind) {
  return guarded([&] {
    require(sample, "sample");
    const diii::Grid& g = sample->file.grid();
    if (space) *space = g.space() == diii::Space::Circle ? 0 : 1;
    if (dims) {
      dims[0] = g.dims()[0];
      dims[1] = g.dims()[1];
    }
    if (rank) *rank = sample->file.rank;
    if (kind) *kind = sample->file.kind == diii::FieldKind::Sewing ? 0 : 1;
  });
}

void diii_sample_free(diii_sample* sample) { delete sample; }

diii_status diii_check(const diii_sample* sample, const diii_options* options, char** report,
                       int* passed) {
  return guarded([&] {
    require(sample, "sample");
    require(report, "report");
    const auto result = diii::app::check(sample->file, to_report_options(options));
    *report = copy_string(result.report);
    if (passed) *passed = result.passed ? 1 : 0;
  });
}

diii_status diii_invariant(const diii_sample* sample, const diii_options* options,
                           char** report) {
  return guarded([&] {
    require(sample, "sample");
    require(report, "report");
    *report = copy_string(diii::app::invariant(sample->file, to_report_options(options)));
  });
}

diii_status diii_classify(const diii_sample* a, const diii_sample* b,
                          const diii_options* options, char** report) {
  return guarded([&] {
    require(a, "first sample");
    require(b, "second sample");
    require(report, "report");
    *report = copy_string(diii::app::classify(a->file, b->file, to_report_options(options)));
  });
}

diii_status diii_pfaffian(const double* entries, int dim, double tol, double out[2]) {
  return guarded([&] {
    require(entries, "entries");
    require(out, "out");
    if (dim < 0) throw diii::Error(diii::ErrorCode::InvalidArgument, "negative dimension");
    diii::Matrix a(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        const double* z = entries + 2 * (r * dim + c);
        a(r, c) = diii::Complex(z[0], z[1]);
      }
    }
    const diii::Complex pf = diii::linalg::pfaffian(a, tol);
    out[0] = pf.real();
    out[1] = pf.imag();
  });
}

}  // extern "C"
