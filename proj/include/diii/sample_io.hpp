#pragma once

// JSON sample files ("diii-sample/1"): a sewing or Hamiltonian field on a
// circle or torus grid, row-major complex entries stored as [re, im] pairs.

#include <cstdint>
#include <optional>
#include <string>

#include "diii/models.hpp"

namespace diii {

struct SampleFile {
  FieldKind kind = FieldKind::Sewing;
  /// Sewing rank 2n; Hamiltonian samples have size 2 * rank.
  int rank = 0;
  SewingField sewing;
  HamiltonianField hamiltonian;
  /// Hamiltonian files only; the standard triple when absent.
  std::optional<SymmetryTriple> symmetries;

  const Grid& grid() const { return kind == FieldKind::Sewing ? sewing.grid : hamiltonian.grid; }
  SymmetryTriple triple() const;
};

inline constexpr const char* kSampleSchema = "diii-sample/1";

SampleFile sample_from_model(const models::ModelField& model);

/// Throws ParseError for malformed JSON, wrong schema, bad grid or data size.
SampleFile parse_sample(const std::string& text);
std::string serialize_sample(const SampleFile& sample);

SampleFile read_sample(const std::string& path);
void write_sample(const SampleFile& sample, const std::string& path);

/// "fnv1a64:" followed by 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace diii
