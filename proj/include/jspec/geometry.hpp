#pragma once

// Convex bodies: exact polytopes, Euclidean balls and EJA state spaces.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jspec/eja.hpp"
#include "jspec/exact.hpp"
#include "jspec/parallel.hpp"

namespace jspec {

/// Vertex subsets are bitmasks; the cap keeps them in 32 bits.
using VertexSet = std::uint32_t;
constexpr int kMaxVertices = 24;

/// Convex hull of finitely many points over Q(sqrt 5), stored together with
/// coordinates in its own affine hull (origin = vertex 0, basis = a maximal
/// independent set of differences v_i - v_0 in index order).
class Polytope {
 public:
  /// Throws InvalidInput on duplicate or non-extremal vertices.
  explicit Polytope(std::vector<ExactVector> vertices, std::string name = "");
  /// Skips the extremality check; for vertex subsets of a face.
  static Polytope unchecked(std::vector<ExactVector> vertices, std::string name = "");

  const std::string& name() const { return name_; }
  int num_vertices() const { return int(vertices_.size()); }
  int ambient_dim() const { return ambient_; }
  int dim() const { return int(basis_.size()); }
  VertexSet all() const { return num_vertices() == 32 ? ~VertexSet(0) : (VertexSet(1) << num_vertices()) - 1; }

  const std::vector<ExactVector>& vertices() const { return vertices_; }
  const ExactVector& vertex(int i) const { return vertices_[i]; }
  /// Vertices in affine-hull coordinates.
  const std::vector<ExactVector>& local_vertices() const { return local_; }
  const ExactVector& local(int i) const { return local_[i]; }

  /// Affine-hull coordinates of an ambient point, or nullopt if it is off the hull.
  std::optional<ExactVector> to_local(const ExactVector& x) const;
  ExactVector to_ambient(const ExactVector& local) const;

  /// Sub-polytope spanned by a vertex subset (indices kept in order).
  Polytope subset(VertexSet s) const;
  std::vector<int> indices(VertexSet s) const;
  /// Index of an ambient vertex, or -1.
  int find_vertex(const ExactVector& x) const;

 private:
  Polytope() = default;
  void build_frame();

  std::string name_;
  int ambient_ = 0;
  std::vector<ExactVector> vertices_;
  ExactVector origin_;
  std::vector<ExactVector> basis_;
  std::vector<ExactVector> local_;
};

struct Ball {
  int n = 1;  // unit ball in R^n centred at 0
};

struct EjaStateSpace {
  AlgebraDescriptor algebra;
};

using ConvexBody = std::variant<Polytope, Ball, EjaStateSpace>;

std::string body_name(const ConvexBody& body);

/// Affine functional a . x + b on local coordinates of a polytope.
struct AffineFunctional {
  ExactVector a;
  Exact b;
  Exact operator()(const ExactVector& x) const { return dot(a, x) + b; }
};

/// An exposed face and the functional that certifies it: the functional is
/// zero on the face vertices and at most -1 on every other vertex.
struct Face {
  VertexSet vertices = 0;
  int dim = -1;  // -1 for the empty face
  AffineFunctional certificate;
};

class FaceLattice {
 public:
  FaceLattice(const Polytope& p, std::vector<Face> faces);

  const std::vector<Face>& faces() const { return faces_; }
  /// Face index for a vertex set, or -1.
  int index_of(VertexSet s) const;
  bool is_face(VertexSet s) const { return index_of(s) >= 0; }
  int dim_of(VertexSet s) const;

  VertexSet bottom() const { return 0; }
  VertexSet top() const { return top_; }
  VertexSet meet(VertexSet a, VertexSet b) const;
  /// Smallest face containing both.
  VertexSet join(VertexSet a, VertexSet b) const;
  /// Faces covered by s (one dimension lower).
  std::vector<VertexSet> facets_of(VertexSet s) const;

 private:
  std::vector<Face> faces_;  // sorted by (dim, mask)
  VertexSet top_ = 0;
};

/// Exact LP certificate: is s the argmax set of some affine functional?
std::optional<AffineFunctional> certify_exposed(const Polytope& p, VertexSet s);

/// All exposed faces including the empty face and the polytope itself.
FaceLattice exposed_faces(const Polytope& p, int cap = 14, ExecPolicy policy = ExecPolicy::Parallel);

/// A flag is a strictly increasing chain of nonempty faces.
using Flag = std::vector<VertexSet>;
std::vector<Flag> flags(const FaceLattice& lattice);
/// Flags that cannot be refined; each runs from a vertex up to the polytope.
std::vector<Flag> maximal_flags(const FaceLattice& lattice);

/// Centroid for the uniform measure on the relative interior.
ExactVector barycenter(const Polytope& p);
std::vector<double> barycenter(const Ball& b);
EjaElement barycenter(const EjaStateSpace& s);

enum class Membership { Inside, Boundary, Outside };
std::string to_string(Membership m);

/// Inside means relative interior.
Membership membership(const Polytope& p, const ExactVector& x);
Membership membership(const Ball& b, const std::vector<double>& x, double tol = 1e-10);
Membership membership(const EjaStateSpace& s, const EjaElement& x, double tol = 1e-10);
/// Exact test for x in conv(vertices).
bool in_hull(const std::vector<ExactVector>& vertices, const ExactVector& x);

/// Cone over the body: points of the body sit at u = 1.
struct ConeEmbedding {
  int dim = 0;
  std::string cone;  // "nonnegative orthant", "polyhedral", "lorentz", "symmetric"
  std::vector<double> order_unit;
  std::vector<ExactVector> rays;      // polytopes only
  std::optional<ExactVector> exact_unit;  // polytopes only
  std::vector<std::vector<double>> gram;  // inner product on the cone's space
};

ConeEmbedding cone_embed(const ConvexBody& body);

/// Affine self-map of a polytope in local coordinates, with its vertex permutation.
struct PolytopeAutomorphism {
  std::vector<int> perm;  // vertex i -> perm[i]
  ExactMatrix linear;
  ExactVector shift;
  ExactVector apply(const ExactVector& local) const { return linear * local + shift; }
};

/// Barycenter at the origin, and a group-averaged inner product
/// M = (1/|G|) sum_g L_g^T L_g making every automorphism orthogonal.
struct CanonicalEmbedding {
  ExactVector center;                 // local coordinates of the barycenter
  std::vector<ExactVector> points;    // local vertices minus the center
  ExactMatrix gram;
};

CanonicalEmbedding canonical_embed(const Polytope& p, const std::vector<PolytopeAutomorphism>& group);
Exact canonical_inner(const CanonicalEmbedding& c, const ExactVector& x, const ExactVector& y);

}  // namespace jspec
