#include "diii/grid.hpp"

#include <numbers>
#include <string>

namespace diii {
namespace {

void check_size(int n) {
  if (n % 2 != 0) {
    throw Error(ErrorCode::OddN, "grid size " + std::to_string(n) + " is odd");
  }
  if (n < 4) {
    throw Error(ErrorCode::TooSmall,
                "grid size " + std::to_string(n) + " is below 4");
  }
}

}  // namespace

const char* to_string(Space space) noexcept {
  return space == Space::Circle ? "circle" : "torus";
}

Grid::Grid(Space space, std::vector<int> dims)
    : space_(space), dims_(std::move(dims)) {}

Grid Grid::circle(int n) {
  check_size(n);
  return Grid(Space::Circle, {n, 1});
}

Grid Grid::torus(int n1, int n2) {
  check_size(n1);
  check_size(n2);
  return Grid(Space::Torus, {n1, n2});
}

int Grid::size() const { return dims_[0] * dims_[1]; }

std::array<int, 2> Grid::coords(int index) const {
  return {index / dims_[1], index % dims_[1]};
}

std::array<double, 2> Grid::momentum(int index) const {
  const auto [j1, j2] = coords(index);
  const double two_pi = 2.0 * std::numbers::pi;
  const double k1 = two_pi * j1 / dims_[0];
  const double k2 = space_ == Space::Torus ? two_pi * j2 / dims_[1] : 0.0;
  return {k1, k2};
}

int Grid::partner(int index) const {
  const auto [j1, j2] = coords(index);
  const int p1 = (dims_[0] - j1) % dims_[0];
  const int p2 = (dims_[1] - j2) % dims_[1];
  return this->index(p1, p2);
}

std::vector<int> Grid::fixed_points() const {
  const int h1 = dims_[0] / 2;
  if (space_ == Space::Circle) return {0, h1};
  const int h2 = dims_[1] / 2;
  return {index(0, 0), index(h1, 0), index(0, h2), index(h1, h2)};
}

std::vector<int> Grid::circle_indices(int axis) const {
  if (axis != 1 && axis != 2) {
    throw Error(ErrorCode::InvalidArgument,
                "axis must be 1 or 2, got " + std::to_string(axis));
  }
  std::vector<int> out;
  if (space_ == Space::Circle) {
    for (int j = 0; j < dims_[0]; ++j) out.push_back(j);
    return out;
  }
  const int n = axis == 1 ? dims_[0] : dims_[1];
  for (int j = 0; j < n; ++j) {
    out.push_back(axis == 1 ? index(j, 0) : index(0, j));
  }
  return out;
}

}  // namespace diii
