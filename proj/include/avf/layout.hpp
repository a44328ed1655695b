#pragma once
// How a flat state vector maps back onto fields on a grid.  Writers use this
// to label snapshot rows; nothing in the numerics depends on it.

#include <cstddef>
#include <string>
#include <vector>

#include "avf/vec.hpp"

namespace avf {

enum class Boundary { Periodic, Dirichlet, Neumann, None };

struct ComponentView {
  std::string name;    // "u", "phi", "pi", "E", "B1", ...
  std::size_t offset;  // start in the flat vector
  std::size_t count;
  Vec coords;          // per-entry coordinate along the axis; empty for 2D/3D blocks
};

struct StateLayout {
  enum class Kind { ScalarField1D, StackedPair, Field3D };

  Kind kind = Kind::ScalarField1D;
  Boundary boundary = Boundary::Periodic;
  std::vector<ComponentView> components;

  // Tensor-grid axes: 2D spectral-element fields set axis1/axis2 (node
  // coordinates per direction); 3D fields set grid_n and axis1.
  Vec axis1, axis2;
  unsigned grid_n = 0;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& c : components) n += c.count;
    return n;
  }
};

// Evenly spaced coordinates x_j = a + (j + first) * dx.
inline Vec uniform_coords(double a, double dx, std::size_t count, std::size_t first = 0) {
  Vec x(count);
  for (std::size_t j = 0; j < count; ++j) x[j] = a + double(j + first) * dx;
  return x;
}

}  // namespace avf
