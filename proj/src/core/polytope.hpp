#pragma once

#include <vector>

#include "core/constraints.hpp"

namespace sanov {

// All vertices of the polytope {q in the simplex : q satisfies a}.
// Exact basis enumeration: suitable for the small alphabets this project
// targets; throws a capacity error when the basis count explodes.
std::vector<std::vector<double>> feasible_vertices(const ConstraintSet& a);

// Vertices of the same polytope intersected with {q_x = 0 : !support[x]}.
std::vector<std::vector<double>> feasible_vertices_on_support(const ConstraintSet& a,
                                                              const std::vector<bool>& support);

}  // namespace sanov
