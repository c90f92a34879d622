#pragma once

// Farran-Robertson sections, the Madden-Robertson table data, and the
// drivers that run the classification checks end to end.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jspec/eja.hpp"
#include "jspec/formula.hpp"
#include "jspec/geometry.hpp"
#include "jspec/parallel.hpp"
#include "jspec/symmetry.hpp"

namespace jspec {

// ---------------------------------------------------------------- sections

/// Span of the barycenters of a maximal flag, intersected with the polytope.
struct PolytopeFrSection {
  Flag flag;
  std::vector<ExactVector> basis;  // ambient barycenters c_1..c_r of the flag faces
  Polytope section;
  bool is_simplex = false;
  bool vertices_form_frame = false;
};
/// Throws InvalidInput unless the polytope is spectral and strongly symmetric.
PolytopeFrSection fr_polytope(const Polytope& p, int cap = 12);

/// Span of a Jordan frame intersected with the cone, normalized: the simplex on the frame.
struct EjaFrSection {
  AlgebraDescriptor algebra;
  std::vector<EjaElement> frame;  // the simplex vertices
  Polytope simplex;               // abstract simplex on r vertices
  double vertex_residual = 0;     // idempotency, trace and orthogonality defects
  long samples = 0;               // accepted points of span and cone
  long drawn = 0;
  long mismatches = 0;            // cone membership disagreeing with frame coordinates
  double min_frame_coordinate = 0;
};
EjaFrSection fr_polytope(const AlgebraDescriptor& alg, long samples = 10000, std::uint64_t seed = 0);

struct FrSymmetry {
  int order = 0;
  int vertices = 0;
  bool full_symmetric = false;  // order == r!
  std::string name;             // "S_r", or "Z_2" for two vertices
  bool transporters_unsupported = false;
  double transporter_residual = 0;  // EJA: automorphisms realizing frame permutations
};
FrSymmetry fr_polytope_symmetry(const PolytopeFrSection& s, int cap = 12);
FrSymmetry fr_polytope_symmetry(const EjaFrSection& s);

// ---------------------------------------------------------------- tables

struct EjaAnnotation {
  std::string printed;
  std::string family;  // key accepted by family_from_key
  std::string param;   // formula
  std::string when;    // formula; empty means always
  std::string when_printed;
  friend bool operator==(const EjaAnnotation&, const EjaAnnotation&) = default;
};

struct OpenQuestion {
  std::string note;
  std::string alternative_param;
  friend bool operator==(const OpenQuestion&, const OpenQuestion&) = default;
};

struct MrTableRow {
  int table = 0;
  std::string type;
  std::string symmetric_space;
  std::vector<std::string> parameters;
  std::vector<std::string> constraints;
  std::string rank, rank_printed;
  std::string isotropy_dim, isotropy_printed;
  std::string root_space;
  std::vector<std::string> polytopes;
  std::optional<EjaAnnotation> eja;
  std::vector<std::string> coincidences;
  std::optional<OpenQuestion> open_question;
  friend bool operator==(const MrTableRow&, const MrTableRow&) = default;
};

struct MrTables {
  int schema_version = 1;
  std::string path;
  std::vector<MrTableRow> rows;
};

/// $JORDAN_SPECTRA_TABLES if set, else the installed data directory.
std::string default_tables_path();
MrTables load_mr_tables(const std::string& path);
std::string tables_to_json(const MrTables& t);
MrTables tables_from_json(const std::string& text);

/// Loaded once from default_tables_path().
const MrTables& mr_tables();
std::vector<MrTableRow> mr_table_all();
/// Throws InvalidInput for unknown labels.
MrTableRow mr_table_lookup(const std::string& type);

struct EvaluatedRow {
  MrTableRow row;
  Bindings bindings;
  long rank = 0;
  long isotropy_dim = 0;
  std::string root_space;
  std::vector<std::string> polytopes;
  std::optional<AlgebraDescriptor> eja;  // when the annotation applies
};
/// Throws InvalidInput if a parameter is missing or a constraint fails.
EvaluatedRow evaluate_row(const MrTableRow& row, const Bindings& b);

struct TableCheckEntry {
  std::string type;
  Bindings bindings;
  std::string status;  // "pass", "fail", "flagged"
  long isotropy_dim = 0, eja_dim = 0;
  long rank = 0, eja_rank = 0;
  std::string message;
};
struct TableConsistencyReport {
  std::vector<TableCheckEntry> entries;
  std::vector<std::string> flagged_rows;
  long failures = 0;
  bool pass() const { return failures == 0; }
};
/// Enumerates parameters 1..max_param subject to row constraints.
TableConsistencyReport table_consistency_check(const MrTables& t, int max_param = 8);

// ---------------------------------------------------------------- drivers

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail", "unsupported"
  double residual = 0;
  std::string detail;
};

struct TheoremReport {
  std::string target;
  std::vector<CheckResult> checks;
  bool pass() const;           // no check failed
  bool fully_supported() const;  // and none unsupported
};

TheoremReport verify_main_theorem_if_direction(const AlgebraDescriptor& alg, int trials, std::uint64_t seed,
                                               ExecPolicy policy = ExecPolicy::Parallel);
/// Exact run on the simplex of the given dimension.
TheoremReport verify_main_theorem_if_direction(int simplex_dim, ExecPolicy policy = ExecPolicy::Parallel);

struct ConverseEntry {
  std::string name;
  int vertices = 0, dim = 0;
  bool is_simplex = false;
  bool spectral = false;
  bool strongly_symmetric = false;
  std::optional<ExactVector> counterexample;  // ambient point in no frame hull
  std::optional<std::pair<Tuple, Tuple>> orbit_witness;
  std::string error;
  bool sss() const { return spectral && strongly_symmetric; }
};
struct ConverseReport {
  std::vector<ConverseEntry> entries;
  bool pass() const;  // sss exactly on simplices, and every non-simplex carries a witness
};
ConverseReport verify_converse_on_polytopes(const std::vector<Polytope>& catalog, int cap = 12,
                                            ExecPolicy policy = ExecPolicy::Parallel);

/// Standalone re-verification of emitted witnesses.
bool recheck_spectral_counterexample(const Polytope& p, const ExactVector& ambient, int cap = 12);
bool recheck_orbit_witness(const Polytope& p, const Tuple& a, const Tuple& b, int cap = 12);

}  // namespace jspec
