#pragma once

// Automorphism groups, transitivity on frames and flags, and Jordan-frame
// transporters.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jspec/eja.hpp"
#include "jspec/geometry.hpp"
#include "jspec/parallel.hpp"

namespace jspec {

// ---------------------------------------------------------------- polytopes

/// Every vertex permutation that extends to an affine self-map, sorted by
/// permutation (identity first). Throws CapExceeded above `cap` vertices.
std::vector<PolytopeAutomorphism> automorphism_group(const Polytope& p, int cap = 12);

/// Closure under composition and inverses, checked on permutations.
bool is_group(const std::vector<PolytopeAutomorphism>& g);

using Tuple = std::vector<int>;
Tuple act(const PolytopeAutomorphism& g, const Tuple& t);
VertexSet act(const PolytopeAutomorphism& g, VertexSet s);
Flag act(const PolytopeAutomorphism& g, const Flag& f);

/// Orbits of the group on a finite invariant set, listed as index lists in
/// first-appearance order.
std::vector<std::vector<int>> orbits(const std::vector<PolytopeAutomorphism>& g, const std::vector<Tuple>& items);
std::vector<std::vector<int>> flag_orbits(const std::vector<PolytopeAutomorphism>& g, const std::vector<Flag>& items);

struct FrameOrbits {
  int k = 0;
  long frames = 0;
  std::vector<long> orbit_sizes;
  std::vector<Tuple> representatives;
};

struct StrongSymmetryReport {
  bool strongly_symmetric = true;
  int group_order = 0;
  int rank = 0;
  std::vector<FrameOrbits> by_k;
  /// Two ordered frames in different orbits, when transitivity fails.
  std::optional<std::pair<Tuple, Tuple>> witness;
};
StrongSymmetryReport is_strongly_symmetric(const Polytope& p, int cap = 12, ExecPolicy policy = ExecPolicy::Parallel);

/// Exhaustive check that no automorphism maps frame a to frame b.
bool frames_in_different_orbits(const Polytope& p, const Tuple& a, const Tuple& b, int cap = 12);

struct RegularityReport {
  bool regular = true;
  int group_order = 0;
  long maximal_flags = 0;
  std::vector<long> orbit_sizes;
  std::optional<std::pair<Flag, Flag>> witness;
};
RegularityReport is_regular(const Polytope& p, int cap = 12);

struct BijectionReport {
  long frames = 0;
  long flags = 0;
  long images = 0;  // distinct flags hit
  bool bijective = false;
};
/// F_i = join of the first i frame states, over all maximal frames.
/// Throws InvalidInput unless the polytope is spectral and strongly symmetric.
BijectionReport frame_flag_bijection(const Polytope& p, int cap = 12);
/// Same map on the sub-frame lattice of a fixed Jordan frame, with joins computed on idempotents.
BijectionReport frame_flag_bijection(const std::vector<EjaElement>& frame);

// ---------------------------------------------------------------- EJA transporters

/// Jordan automorphism given by its action on coefficient vectors.
struct EjaAutomorphism {
  AlgebraDescriptor algebra;
  std::string kind;  // "orthogonal", "unitary", "symplectic", "spin-rotation", "spin-reflection"
  std::vector<std::vector<double>> matrix;  // dim x dim
  EjaElement apply(const EjaElement& x) const;
};

/// T with T(a_i) = b_i. Matrix families conjugate by U = U_B U_A^dagger;
/// the spin factor rotates the ball. HermO throws Unsupported.
EjaAutomorphism jordan_frame_transporter(const std::vector<EjaElement>& a, const std::vector<EjaElement>& b);

struct TransporterResiduals {
  double mapping = 0;       // max |T(a_i) - b_i|
  double orthogonality = 0; // |T^T G T - G| for the trace-form Gram G
  double unit = 0;          // |T(e) - e|
  double cone = 0;          // max negative eigenvalue of T(y^2) over samples
  double spectrum = 0;      // max eigenvalue drift of T(x) over samples
  double max() const;
};
TransporterResiduals check_transporter(const EjaAutomorphism& t, const std::vector<EjaElement>& a,
                                       const std::vector<EjaElement>& b, std::uint64_t seed = 0);

/// Completes orthogonal primitive idempotents to a Jordan frame.
std::vector<EjaElement> extend_frame(const std::vector<EjaElement>& partial, std::uint64_t seed);

struct EjaTrial {
  int k = 0;  // size of the sub-frames being transported
  double residual = 0;
  bool ok = false;
  std::string error;
};

struct EjaStrongSymmetryReport {
  AlgebraDescriptor algebra;
  bool unsupported = false;
  int trials = 0;
  int passed = 0;
  double max_residual = 0;
  std::vector<EjaTrial> results;
  bool pass() const { return !unsupported && passed == trials; }
};
EjaStrongSymmetryReport verify_strong_symmetry_eja(const AlgebraDescriptor& alg, int trials, std::uint64_t seed,
                                                   double tol = 1e-8, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace jspec
