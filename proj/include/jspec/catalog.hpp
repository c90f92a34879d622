#pragma once

// Named polytope fixtures.

#include <string>
#include <vector>

#include "jspec/geometry.hpp"

namespace jspec {

/// Delta_n: the n+1 standard unit vectors of R^{n+1}.
Polytope simplex(int n);
/// [-1,1]^2 listed counter-clockwise from (1,1).
Polytope square();
Polytope cube();
Polytope octahedron();
/// Affinely regular pentagon with vertices in Q(sqrt 5).
Polytope pentagon();
/// Affinely regular hexagon with integer vertices.
Polytope hexagon();
/// [-2,2] x [-1,1].
Polytope rectangle();

/// "simplex3" (or "delta3"), "square", "cube", "octahedron", "pentagon", "hexagon", "rectangle".
Polytope polytope_by_name(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace jspec
