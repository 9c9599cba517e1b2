#pragma once

// Helpers that sample test-side functions onto library grids.

#include <functional>

#include "diii/invariants.hpp"
#include "diii/models.hpp"
#include "oracles.hpp"

namespace support {

inline diii::MatrixField sample_matrix(const diii::Grid& grid,
                                       const std::function<diii::Matrix(double)>& f) {
  diii::MatrixField out{grid, std::vector<diii::Matrix>(grid.size())};
  for (int i = 0; i < grid.size(); ++i) out.values[i] = f(grid.momentum(i)[0]);
  return out;
}

inline diii::SewingField sample_sewing(const diii::Grid& grid,
                                       const std::function<diii::Matrix(double)>& f) {
  return diii::SewingField{grid, sample_matrix(grid, f).values};
}

inline diii::ScalarField sample_scalar(const diii::Grid& grid,
                                       const std::function<diii::Complex(double, double)>& f) {
  diii::ScalarField out{grid, std::vector<diii::Complex>(grid.size())};
  for (int i = 0; i < grid.size(); ++i) {
    const auto k = grid.momentum(i);
    out.values[i] = f(k[0], k[1]);
  }
  return out;
}

inline diii::SewingField q_plus(int n = 256, int half_rank = 1) {
  return diii::models::q_const(diii::Grid::circle(n), half_rank);
}

inline diii::SewingField q_minus(int n = 256, int half_rank = 1) {
  return diii::models::q_minus(diii::Grid::circle(n), half_rank);
}

inline int nu(const diii::SewingField& q) {
  return diii::invariants::teo_kane_1d(q).value.sign();
}

}  // namespace support
