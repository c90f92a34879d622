#include "jspec/catalog.hpp"

#include "jspec/error.hpp"

namespace jspec {

namespace {

std::vector<ExactVector> integer_points(const std::vector<std::vector<long>>& rows) {
  std::vector<ExactVector> out;
  for (const auto& r : rows) {
    ExactVector v;
    for (long x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Polytope simplex(int n) {
  if (n < 0) throw InvalidInput("simplex dimension must be nonnegative");
  std::vector<ExactVector> vs;
  for (int i = 0; i <= n; ++i) {
    ExactVector v(n + 1);
    v[i] = 1;
    vs.push_back(std::move(v));
  }
  return Polytope(std::move(vs), "simplex" + std::to_string(n));
}

Polytope square() { return Polytope(integer_points({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}), "square"); }

Polytope cube() {
  std::vector<std::vector<long>> rows;
  for (int m = 0; m < 8; ++m) rows.push_back({m & 4 ? -1 : 1, m & 2 ? -1 : 1, m & 1 ? -1 : 1});
  return Polytope(integer_points(rows), "cube");
}

Polytope octahedron() {
  return Polytope(integer_points({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}),
                  "octahedron");
}

Polytope pentagon() {
  // Image of the regular pentagon under the map fixing (1,0) and scaling y
  // by 1/sin(72 deg); the coordinates then lie in Q(sqrt 5).
  const Exact r5 = Exact::sqrt5();
  const Exact c1 = (r5 - Exact(1)) / Exact(4);   // cos 72
  const Exact c2 = -(r5 + Exact(1)) / Exact(4);  // cos 144
  const Exact s = (r5 - Exact(1)) / Exact(2);    // sin 144 / sin 72
  return Polytope({{Exact(1), Exact(0)}, {c1, Exact(1)}, {c2, s}, {c2, -s}, {c1, Exact(-1)}}, "pentagon");
}

Polytope hexagon() {
  return Polytope(integer_points({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}), "hexagon");
}

Polytope rectangle() { return Polytope(integer_points({{2, 1}, {-2, 1}, {-2, -1}, {2, -1}}), "rectangle"); }

Polytope polytope_by_name(const std::string& name) {
  for (const std::string prefix : {"simplex", "delta"}) {
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
      const std::string digits = name.substr(prefix.size());
      if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 2)
        throw InvalidInput("unknown polytope '" + name + "'");
      return simplex(std::stoi(digits));
    }
  }
  if (name == "square") return square();
  if (name == "cube") return cube();
  if (name == "octahedron") return octahedron();
  if (name == "pentagon") return pentagon();
  if (name == "hexagon") return hexagon();
  if (name == "rectangle") return rectangle();
  throw InvalidInput("unknown polytope '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"simplex1", "simplex2", "simplex3", "simplex4", "square",
          "cube",     "pentagon", "hexagon",  "octahedron", "rectangle"};
}

}  // namespace jspec
