#include "diii/sample_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace diii {
namespace {

using Json = nlohmann::ordered_json;

void encode_matrix_entries(const Matrix& m, Json& data) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
}

Json encode_matrix(const Matrix& m) {
  Json data = Json::array();
  encode_matrix_entries(m, data);
  return data;
}

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

Complex decode_entry(const Json& pair, std::size_t position) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
      !pair[1].is_number()) {
    parse_fail("data entry " + std::to_string(position) + " is not an [re, im] pair");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

Matrix decode_matrix(const Json& data, std::size_t offset, int dim) {
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const std::size_t pos = offset + static_cast<std::size_t>(r * dim + c);
      m(r, c) = decode_entry(data[pos], pos);
    }
  }
  return m;
}

const Json& field(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) parse_fail(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

SymmetryTriple SampleFile::triple() const {
  if (symmetries) return *symmetries;
  return SymmetryTriple::standard(rank);
}

SampleFile sample_from_model(const models::ModelField& model) {
  SampleFile out;
  out.kind = model.kind;
  if (model.kind == FieldKind::Sewing) {
    out.sewing = model.sewing;
    out.rank = model.sewing.rank();
  } else {
    out.hamiltonian = model.hamiltonian;
    out.rank = model.hamiltonian.dimension() / 2;
    out.symmetries = model.symmetries;
  }
  return out;
}

SampleFile parse_sample(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("top level must be an object");
  const Json& schema = field(doc, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSampleSchema) {
    parse_fail(std::string("schema must be \"") + kSampleSchema + "\"");
  }
  const Json& space_j = field(doc, "space");
  const Json& grid_j = field(doc, "grid");
  const Json& rank_j = field(doc, "rank");
  const Json& kind_j = field(doc, "kind");
  const Json& data = field(doc, "data");
  if (!space_j.is_string() || !grid_j.is_array() || !rank_j.is_number_integer() ||
      !kind_j.is_string() || !data.is_array()) {
    parse_fail("space, grid, rank, kind or data has the wrong type");
  }
  for (const Json& d : grid_j) {
    if (!d.is_number_integer()) parse_fail("grid sizes must be integers");
  }

  const std::string space = space_j.get<std::string>();
  std::optional<Grid> grid;
  try {
    if (space == "circle" && grid_j.size() == 1) {
      grid = Grid::circle(grid_j[0].get<int>());
    } else if (space == "torus" && grid_j.size() == 2) {
      grid = Grid::torus(grid_j[0].get<int>(), grid_j[1].get<int>());
    } else {
      parse_fail("space '" + space + "' with " + std::to_string(grid_j.size()) +
                 " grid sizes");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    parse_fail(std::string("invalid grid: ") + e.what());
  }

  SampleFile out;
  out.rank = rank_j.get<int>();
  if (out.rank < 2 || out.rank % 2 != 0) {
    parse_fail("rank must be a positive even integer, got " + std::to_string(out.rank));
  }
  const std::string kind = kind_j.get<std::string>();
  if (kind == "sewing") {
    out.kind = FieldKind::Sewing;
  } else if (kind == "hamiltonian") {
    out.kind = FieldKind::Hamiltonian;
  } else {
    parse_fail("kind must be sewing or hamiltonian, got '" + kind + "'");
  }
  const int dim = out.kind == FieldKind::Sewing ? out.rank : 2 * out.rank;
  const std::size_t block = static_cast<std::size_t>(dim) * dim;
  const std::size_t expected = static_cast<std::size_t>(grid->size()) * block;
  if (data.size() != expected) {
    parse_fail("data has " + std::to_string(data.size()) + " entries, expected " +
               std::to_string(expected));
  }
  std::vector<Matrix> values(grid->size());
  for (int i = 0; i < grid->size(); ++i) {
    values[i] = decode_matrix(data, static_cast<std::size_t>(i) * block, dim);
  }
  if (out.kind == FieldKind::Sewing) {
    out.sewing = SewingField{*grid, std::move(values)};
  } else {
    out.hamiltonian = HamiltonianField{*grid, std::move(values)};
  }

  if (const auto it = doc.find("symmetries"); it != doc.end()) {
    if (out.kind != FieldKind::Hamiltonian) {
      parse_fail("symmetries are only meaningful for hamiltonian files");
    }
    const Json& t = field(*it, "T");
    const Json& c = field(*it, "C");
    if (!t.is_array() || !c.is_array() || t.size() != block || c.size() != block) {
      parse_fail("symmetries.T and symmetries.C need " + std::to_string(block) +
                 " entries each");
    }
    out.symmetries = SymmetryTriple::from_tc(decode_matrix(t, 0, dim), decode_matrix(c, 0, dim));
  }
  return out;
}

std::string serialize_sample(const SampleFile& sample) {
  const Grid& grid = sample.grid();
  Json doc;
  doc["schema"] = kSampleSchema;
  doc["space"] = to_string(grid.space());
  doc["grid"] = grid.space() == Space::Circle ? Json::array({grid.dims()[0]})
                                              : Json::array({grid.dims()[0], grid.dims()[1]});
  doc["rank"] = sample.rank;
  doc["kind"] = to_string(sample.kind);
  Json data = Json::array();
  const auto& values =
      sample.kind == FieldKind::Sewing ? sample.sewing.values : sample.hamiltonian.values;
  for (const Matrix& m : values) encode_matrix_entries(m, data);
  doc["data"] = std::move(data);
  if (sample.kind == FieldKind::Hamiltonian && sample.symmetries) {
    doc["symmetries"] = Json{{"T", encode_matrix(sample.symmetries->T.unitary)},
                             {"C", encode_matrix(sample.symmetries->C.unitary)}};
  }
  return doc.dump() + "\n";
}

SampleFile read_sample(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sample(buffer.str());
}

void write_sample(const SampleFile& sample, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << serialize_sample(sample);
  if (!out) throw Error(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

std::string digest(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + buf;
}

}  // namespace diii
