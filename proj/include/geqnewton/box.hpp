#ifndef GEQNEWTON_BOX_HPP
#define GEQNEWTON_BOX_HPP

#include <cstddef>
#include <limits>

#include "geqnewton/errors.hpp"
#include "geqnewton/linalg.hpp"

namespace geqnewton {

// Box B = [lower, upper] with IEEE +/-infinity encoding unbounded sides.
// F = N_B is the normal cone of the box; an all-free box makes F == 0.
struct Box {
  Vec lower;
  Vec upper;

  Box() = default;
  Box(Vec lo, Vec up) : lower(std::move(lo)), upper(std::move(up)) {
    if (lower.size() != upper.size()) throw DimensionError("Box: bound sizes differ");
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (!(lower[i] <= upper[i])) {
        throw ParameterError("Box: lower > upper at component " + std::to_string(i));
      }
    }
  }

  static Box all_free(std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    return Box(Vec(n, -inf), Vec(n, inf));
  }
  static Box nonneg(std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    return Box(Vec(n, 0.0), Vec(n, inf));
  }

  std::size_t dim() const { return lower.size(); }

  bool is_free(std::size_t i) const {
    return lower[i] == -std::numeric_limits<double>::infinity() &&
           upper[i] == std::numeric_limits<double>::infinity();
  }
  bool all_free_box() const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (!is_free(i)) return false;
    return true;
  }
};

// Componentwise Euclidean projection onto the box.
Vec project_box(const Box& box, const Vec& v);

}  // namespace geqnewton

#endif  // GEQNEWTON_BOX_HPP
