#pragma once

// Discretized involutive circle (S^1, k -> -k) and torus (T^2, k -> -k).
// Even sizes only, so that every fixed point of the involution is a grid
// point.

#include <array>
#include <vector>

#include "diii/linalg.hpp"

namespace diii {

enum class Space { Circle, Torus };

const char* to_string(Space space) noexcept;

class Grid {
 public:
  static constexpr int kDefaultCircle = 256;
  static constexpr int kDefaultTorus = 64;

  /// Empty circle grid with no points; placeholder for default-built results.
  Grid() : space_(Space::Circle), dims_{0, 1} {}

  /// Throws OddN or TooSmall (N < 4).
  static Grid circle(int n);
  static Grid torus(int n1, int n2);

  Space space() const { return space_; }
  const std::vector<int>& dims() const { return dims_; }
  int size() const;

  /// Lexicographic index, first coordinate slowest.
  int index(int j1, int j2) const { return j1 * dims_[1] + j2; }
  std::array<int, 2> coords(int index) const;
  /// (k1, k2); k2 = 0 on the circle.
  std::array<double, 2> momentum(int index) const;

  /// Index of the involution image of a point.
  int partner(int index) const;
  /// Circle: {0, pi}. Torus: (0,0), (pi,0), (0,pi), (pi,pi) in that order.
  std::vector<int> fixed_points() const;

  /// Indices of the coordinate circle through (0,0); axis 1 runs along k1.
  std::vector<int> circle_indices(int axis) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(Space space, std::vector<int> dims);

  Space space_;
  std::vector<int> dims_;  // circle: {N, 1}
};

struct ScalarField {
  Grid grid;
  std::vector<Complex> values;
};

struct MatrixField {
  Grid grid;
  std::vector<Matrix> values;
};

/// Restriction of a torus field to the coordinate circle through (0,0).
template <class Field>
Field restrict_to_circle(const Field& field, int axis) {
  if (field.grid.space() != Space::Torus) {
    throw Error(ErrorCode::InvalidArgument, "restriction needs a torus field");
  }
  const auto indices = field.grid.circle_indices(axis);
  Field out = field;
  out.grid = Grid::circle(static_cast<int>(indices.size()));
  out.values.clear();
  out.values.reserve(indices.size());
  for (int i : indices) out.values.push_back(field.values[i]);
  return out;
}

}  // namespace diii
