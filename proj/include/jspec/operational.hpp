#pragma once

// Effects, measurements, frames, rank and spectrality.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jspec/eja.hpp"
#include "jspec/geometry.hpp"
#include "jspec/parallel.hpp"

namespace jspec {

// ---------------------------------------------------------------- effects

/// Effects on a polytope are affine functionals in its local coordinates.
bool is_effect(const Polytope& p, const AffineFunctional& f);
/// Affine functional given in ambient coordinates.
bool is_effect_ambient(const Polytope& p, const ExactVector& a, const Exact& b);
/// EJA effects are elements with spectrum in [0, 1] under the trace pairing.
bool is_effect(const EjaStateSpace& s, const EjaElement& e, double tol = 1e-10);

AffineFunctional unit_effect(const Polytope& p);
/// Converts a local-coordinate functional to ambient coordinates.
std::pair<ExactVector, Exact> to_ambient_functional(const Polytope& p, const AffineFunctional& f);

struct BallEffect {
  std::vector<double> a;  // e(y) = a . y + b on the unit ball
  double b = 0;
};

// ---------------------------------------------------------------- measurements

/// Exact LP: a submeasurement with e_i(w_j) = delta_ij completed to a
/// measurement by adding the remainder u - sum e_i to the first effect.
/// States are ambient points of the polytope; throws InvalidInput if one is outside.
std::optional<std::vector<AffineFunctional>> distinguishing_measurement(const Polytope& p,
                                                                        const std::vector<ExactVector>& states);
std::optional<std::vector<AffineFunctional>> distinguishing_measurement(const Polytope& p,
                                                                        const std::vector<int>& vertex_indices);
/// States must be primitive idempotents; distinguishable iff pairwise orthogonal.
std::optional<std::vector<EjaElement>> distinguishing_measurement(const EjaStateSpace& s,
                                                                  const std::vector<EjaElement>& states,
                                                                  double tol = 1e-9);
/// Pure states of the ball are unit vectors; at most an antipodal pair is distinguishable.
std::optional<std::vector<BallEffect>> distinguishing_measurement(const Ball& b,
                                                                  const std::vector<std::vector<double>>& states,
                                                                  double tol = 1e-9);

// ---------------------------------------------------------------- frames

struct PolytopeFrame {
  std::vector<int> vertices;                 // ordered
  std::vector<AffineFunctional> measurement; // e_i(w_j) = delta_ij, sum = u
};

/// Unordered vertex subsets of size k that are perfectly distinguishable, ascending.
std::vector<VertexSet> distinguishable_subsets(const Polytope& p, int k, ExecPolicy policy = ExecPolicy::Parallel);
/// Ordered k-frames in lexicographic order of vertex indices.
std::vector<PolytopeFrame> enumerate_frames(const Polytope& p, int k, int cap = 12,
                                            ExecPolicy policy = ExecPolicy::Parallel);

/// Maximal frame cardinality.
int rank(const Polytope& p, int cap = 12, ExecPolicy policy = ExecPolicy::Parallel);
int rank(const Ball& b);
/// Counted from the spectral decomposition of an element with simple spectrum.
int rank(const EjaStateSpace& s, std::uint64_t seed = 0);

/// Unordered frames not contained in a larger frame.
std::vector<VertexSet> maximal_frame_subsets(const Polytope& p, int cap = 12,
                                             ExecPolicy policy = ExecPolicy::Parallel);

// ---------------------------------------------------------------- spectrality

enum class SpectralVerdict { Spectral, NotSpectral, Probabilistic };
std::string to_string(SpectralVerdict v);

struct SpectralityOptions {
  int cap = 12;
  long samples = 100000;  // used above dimension 3
  std::uint64_t seed = 0;
  ExecPolicy policy = ExecPolicy::Parallel;
};

struct PolytopeSpectrality {
  SpectralVerdict verdict = SpectralVerdict::NotSpectral;
  std::string method;
  int rank = 0;
  std::map<int, long> frames_by_k;         // ordered frame counts
  std::vector<VertexSet> maximal_frames;   // unordered
  std::optional<ExactVector> counterexample;  // ambient point of the body in no frame hull
  long samples = 0;
};

PolytopeSpectrality is_spectral(const Polytope& p, const SpectralityOptions& opt = {});

/// Exact: is x in conv(frame) for one of the given vertex subsets?
bool covered_by_frames(const Polytope& p, const std::vector<VertexSet>& frames, const ExactVector& x);

/// Convex decomposition of a state over a frame.
struct EjaConvexDecomposition {
  std::vector<double> weights;    // descending
  std::vector<EjaElement> frame;  // primitive idempotents
  double residual = 0;
};
/// Throws InvalidInput if the element is not a state.
EjaConvexDecomposition spectral_decompose_state(const EjaElement& state, double tol = 1e-9);

struct BallDecomposition {
  double weight = 1;             // on the first point
  std::vector<double> point;     // unit vector; the other point is its antipode
};
BallDecomposition spectral_decompose_state(const Ball& b, const std::vector<double>& x);

// ---------------------------------------------------------------- faces

/// Smallest face containing the frame vertices.
VertexSet face_of_frame(const FaceLattice& lattice, const std::vector<int>& frame);
/// Orthogonal complement face; defined here for simplices only (Unsupported otherwise).
VertexSet complement_face(const Polytope& p, const FaceLattice& lattice, VertexSet face);

/// EJA faces are named by idempotents: the face of a frame is the sum of its
/// elements, and the complement of p is e - p.
EjaElement face_of_frame(const std::vector<EjaElement>& frame);
EjaElement complement_face(const EjaElement& p);

/// Lattice operations on idempotents: p <= q iff p.q = p; join is the support
/// of p + q; meet is the eigenvalue-1 idempotent of U_p(q).
bool idempotent_leq(const EjaElement& p, const EjaElement& q, double tol = 1e-8);
EjaElement idempotent_join(const EjaElement& p, const EjaElement& q, double tol = 1e-8);
EjaElement idempotent_meet(const EjaElement& p, const EjaElement& q, double tol = 1e-8);

/// Faces generated by subsets of a fixed Jordan frame, computed through the
/// idempotent operations above and matched back to subsets.
struct SubframeLattice {
  int rank = 0;
  std::vector<EjaElement> idempotents;  // indexed by subset mask
  std::vector<std::vector<int>> meet, join;  // subset-mask tables
  std::vector<int> complement;
  std::vector<std::vector<bool>> leq;
  double max_match_residual = 0;  // distance from computed idempotents to the matched subset
};
SubframeLattice subframe_lattice(const std::vector<EjaElement>& frame, double tol = 1e-8);

struct OrthomodularReport {
  long pairs = 0;
  bool involution = true;      // F'' = F
  bool order_reversal = true;  // F <= G  =>  G' <= F'
  bool complement_laws = true; // F ^ F' = 0, F v F' = 1
  bool orthomodular = true;    // F <= G  =>  G = F v (F' ^ G)
  bool pass() const { return involution && order_reversal && complement_laws && orthomodular; }
};
OrthomodularReport check_orthomodular(const SubframeLattice& lattice);

}  // namespace jspec
