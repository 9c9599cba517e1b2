#pragma once

// Report generation behind the command-line front end. Reports are
// "diii-report/1" JSON documents with a fixed key order, or a flattened
// "key: value" text rendering of the same document.

#include <string>

#include "diii/sample_io.hpp"

namespace diii::app {

inline constexpr const char* kReportSchema = "diii-report/1";

enum class ReportFormat { Json, Text };

struct ReportOptions {
  double tol = 1e-8;
  double kernel_tol = 1e-8;
  double sign_tol = 1e-6;
  bool toeplitz = false;
  bool gerbe = false;
  bool witness = false;
  /// Toeplitz band; negative selects the smallest exact one.
  int bandwidth = -1;
  ReportFormat format = ReportFormat::Text;
};

struct CheckResult {
  bool passed = false;
  std::string report;
};

CheckResult check(const SampleFile& sample, const ReportOptions& opt);

/// Circle: nu_1d plus the optional Toeplitz index and gerbe sign.
/// Torus: the weak pair and the strong invariant.
std::string invariant(const SampleFile& sample, const ReportOptions& opt);

/// Both invariants, their componentwise ratio and, on the circle, the
/// homotopy verdict. Throws GridMismatch or RankMismatch.
std::string classify(const SampleFile& a, const SampleFile& b, const ReportOptions& opt);

}  // namespace diii::app
