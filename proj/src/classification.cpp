#include "jspec/classification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "jspec/catalog.hpp"
#include "jspec/error.hpp"
#include "jspec/operational.hpp"
#include "jspec/random.hpp"

namespace jspec {

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

bool spectral_and_strongly_symmetric(const Polytope& p, int cap) {
  return is_spectral(p, SpectralityOptions{cap}).verdict == SpectralVerdict::Spectral &&
         is_strongly_symmetric(p, cap).strongly_symmetric;
}

}  // namespace

// ---------------------------------------------------------------- sections

PolytopeFrSection fr_polytope(const Polytope& p, int cap) {
  if (!spectral_and_strongly_symmetric(p, cap))
    throw InvalidInput(p.name() + " is not spectral and strongly symmetric; no Farran-Robertson section");
  PolytopeFrSection s{{}, {}, p};
  const auto lattice = exposed_faces(p, std::max(cap, 14));
  s.flag = maximal_flags(lattice).front();
  for (VertexSet f : s.flag) s.basis.push_back(barycenter(p.subset(f)));

  // Affine span of the barycenters, in local coordinates.
  ExactMatrix diffs(int(s.basis.size()) - 1, p.dim());
  const ExactVector c0 = *p.to_local(s.basis[0]);
  for (int i = 1; i < int(s.basis.size()); ++i) {
    const ExactVector ci = *p.to_local(s.basis[i]);
    for (int k = 0; k < p.dim(); ++k) diffs(i - 1, k) = ci[k] - c0[k];
  }
  if (matrix_rank(diffs) != p.dim())
    throw Unsupported("flag barycenters of " + p.name() + " do not span the body");
  s.section = p;
  s.is_simplex = p.num_vertices() == p.dim() + 1;
  std::vector<int> all(p.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  s.vertices_form_frame = distinguishing_measurement(p, all).has_value();
  return s;
}

EjaFrSection fr_polytope(const AlgebraDescriptor& alg, long samples, std::uint64_t seed) {
  const int r = alg.rank();
  EjaFrSection s{alg, random_jordan_frame(alg, seed), simplex(r - 1)};
  for (const auto& c : s.frame) {
    s.vertex_residual = std::max(s.vertex_residual, norm(jordan_product(c, c) - c));
    s.vertex_residual = std::max(s.vertex_residual, std::abs(trace(c) - 1));
  }
  const auto fr = frame_residuals(s.frame);
  s.vertex_residual = std::max({s.vertex_residual, fr.orthogonality, fr.completeness});

  Rng rng(mix_seed(seed, 0x5EC7));
  std::uniform_real_distribution<double> coord(-0.25, 1.0);
  s.min_frame_coordinate = samples > 0 ? 1e300 : 0;
  const long max_draws = 1000 * std::max(samples, 1L);
  while (s.samples < samples && s.drawn < max_draws) {
    ++s.drawn;
    EjaElement x = EjaElement::zero(alg);
    for (const auto& c : s.frame) x = x + coord(rng) * c;
    const double min_eig = eigenvalues(x).back();
    double min_coord = 1e300;
    for (const auto& c : s.frame) min_coord = std::min(min_coord, inner(x, c) / inner(c, c));
    if (min_eig >= 1e-9 && min_coord < -1e-10) ++s.mismatches;
    if (min_eig < -1e-9 && min_coord >= 0) ++s.mismatches;
    if (min_eig >= 0) {
      ++s.samples;
      s.min_frame_coordinate = std::min(s.min_frame_coordinate, min_coord);
    }
  }
  return s;
}

FrSymmetry fr_polytope_symmetry(const PolytopeFrSection& s, int cap) {
  FrSymmetry out;
  out.vertices = s.section.num_vertices();
  out.order = int(automorphism_group(s.section, cap).size());
  out.full_symmetric = out.order == factorial(out.vertices);
  out.name = out.full_symmetric ? (out.vertices == 2 ? "Z_2" : "S_" + std::to_string(out.vertices))
                                : "order " + std::to_string(out.order);
  return out;
}

FrSymmetry fr_polytope_symmetry(const EjaFrSection& s) {
  FrSymmetry out;
  out.vertices = s.simplex.num_vertices();
  out.order = int(automorphism_group(s.simplex).size());
  out.full_symmetric = out.order == factorial(out.vertices);
  out.name = out.full_symmetric ? (out.vertices == 2 ? "Z_2" : "S_" + std::to_string(out.vertices))
                                : "order " + std::to_string(out.order);
  // Each permutation of the frame should come from a Jordan automorphism.
  std::vector<int> perm(s.frame.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<EjaElement> image;
    for (int i : perm) image.push_back(s.frame[i]);
    try {
      const auto t = jordan_frame_transporter(s.frame, image);
      out.transporter_residual = std::max(out.transporter_residual, check_transporter(t, s.frame, image).max());
    } catch (const Unsupported&) {
      out.transporters_unsupported = true;
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------- tables

namespace {

using nlohmann::json;

std::vector<std::string> strings(const json& j, const char* key) {
  return j.contains(key) ? j.at(key).get<std::vector<std::string>>() : std::vector<std::string>{};
}

MrTableRow row_from_json(const json& j) {
  MrTableRow r;
  r.table = j.at("table").get<int>();
  r.type = j.at("type").get<std::string>();
  r.symmetric_space = j.at("symmetric_space").get<std::string>();
  r.parameters = strings(j, "parameters");
  r.constraints = strings(j, "constraints");
  r.rank = j.at("rank").get<std::string>();
  r.rank_printed = j.value("rank_printed", "");
  r.isotropy_dim = j.at("isotropy_dim").get<std::string>();
  r.isotropy_printed = j.value("isotropy_printed", "");
  r.root_space = j.at("root_space").get<std::string>();
  r.polytopes = strings(j, "polytopes");
  if (j.contains("eja") && !j.at("eja").is_null()) {
    const auto& e = j.at("eja");
    r.eja = EjaAnnotation{e.at("printed").get<std::string>(), e.at("family").get<std::string>(),
                          e.at("param").get<std::string>(), e.value("when", ""), e.value("when_printed", "")};
  }
  r.coincidences = strings(j, "coincidences");
  if (j.contains("open_question"))
    r.open_question = OpenQuestion{j.at("open_question").at("note").get<std::string>(),
                                   j.at("open_question").value("alternative_param", "")};
  return r;
}

json row_to_json(const MrTableRow& r) {
  json j;
  j["table"] = r.table;
  j["type"] = r.type;
  j["symmetric_space"] = r.symmetric_space;
  j["parameters"] = r.parameters;
  j["constraints"] = r.constraints;
  j["rank"] = r.rank;
  j["rank_printed"] = r.rank_printed;
  j["isotropy_dim"] = r.isotropy_dim;
  j["isotropy_printed"] = r.isotropy_printed;
  j["root_space"] = r.root_space;
  j["polytopes"] = r.polytopes;
  if (r.eja)
    j["eja"] = {{"printed", r.eja->printed},
                {"family", r.eja->family},
                {"param", r.eja->param},
                {"when", r.eja->when},
                {"when_printed", r.eja->when_printed}};
  else
    j["eja"] = nullptr;
  if (!r.coincidences.empty()) j["coincidences"] = r.coincidences;
  if (r.open_question)
    j["open_question"] = {{"note", r.open_question->note}, {"alternative_param", r.open_question->alternative_param}};
  return j;
}

}  // namespace

std::string default_tables_path() {
  if (const char* env = std::getenv("JORDAN_SPECTRA_TABLES"); env && *env) return env;
  return std::string(JSPEC_DATA_DIR) + "/mr_tables.json";
}

MrTables tables_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("table resource is not valid JSON: ") + e.what());
  }
  MrTables t;
  try {
    t.schema_version = j.at("schema_version").get<int>();
    for (const auto& r : j.at("rows")) t.rows.push_back(row_from_json(r));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed table resource: ") + e.what());
  }
  return t;
}

MrTables load_mr_tables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read table resource " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  MrTables t = tables_from_json(buf.str());
  t.path = path;
  return t;
}

std::string tables_to_json(const MrTables& t) {
  json j;
  j["schema_version"] = t.schema_version;
  j["rows"] = json::array();
  for (const auto& r : t.rows) j["rows"].push_back(row_to_json(r));
  return j.dump(2);
}

const MrTables& mr_tables() {
  static const MrTables tables = load_mr_tables(default_tables_path());
  return tables;
}

std::vector<MrTableRow> mr_table_all() { return mr_tables().rows; }

MrTableRow mr_table_lookup(const std::string& type) {
  for (const auto& r : mr_tables().rows)
    if (r.type == type) return r;
  throw InvalidInput("unknown table row '" + type + "'");
}

EvaluatedRow evaluate_row(const MrTableRow& row, const Bindings& b) {
  for (const auto& p : row.parameters)
    if (!b.count(p)) throw InvalidInput("row " + row.type + " needs parameter " + p);
  for (const auto& c : row.constraints)
    if (!evaluate_formula(c, b)) throw InvalidInput("row " + row.type + ": constraint " + c + " fails");
  EvaluatedRow e;
  e.row = row;
  e.bindings = b;
  e.rank = evaluate_formula(row.rank, b);
  e.isotropy_dim = evaluate_formula(row.isotropy_dim, b);
  e.root_space = substitute_label(row.root_space, b);
  for (const auto& p : row.polytopes) e.polytopes.push_back(substitute_label(p, b));
  if (row.eja && (row.eja->when.empty() || evaluate_formula(row.eja->when, b)))
    e.eja = AlgebraDescriptor::make(family_from_key(row.eja->family), int(evaluate_formula(row.eja->param, b)));
  return e;
}

namespace {

std::vector<Bindings> parameter_domain(const MrTableRow& row, int max_param) {
  std::vector<Bindings> out;
  Bindings cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == row.parameters.size()) {
      for (const auto& c : row.constraints)
        if (!evaluate_formula(c, cur)) return;
      out.push_back(cur);
      return;
    }
    for (long v = 1; v <= max_param; ++v) {
      cur[row.parameters[i]] = v;
      rec(i + 1);
    }
    cur.erase(row.parameters[i]);
  };
  rec(0);
  return out;
}

bool arithmetic_matches(const MrTableRow& row, const Bindings& b, const std::string& param, TableCheckEntry& e) {
  try {
    const auto alg = AlgebraDescriptor::make(family_from_key(row.eja->family), int(evaluate_formula(param, b)));
    e.eja_dim = alg.dim();
    e.eja_rank = alg.rank();
  } catch (const InvalidInput& err) {
    e.message = err.what();
    return false;
  }
  return e.isotropy_dim == e.eja_dim - 1 && e.rank == e.eja_rank - 1;
}

std::string bindings_text(const Bindings& b) {
  std::string s;
  for (const auto& [k, v] : b) s += (s.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return s;
}

}  // namespace

TableConsistencyReport table_consistency_check(const MrTables& t, int max_param) {
  TableConsistencyReport rep;
  for (const auto& row : t.rows) {
    bool flagged = false;
    for (const auto& b : parameter_domain(row, max_param)) {
      const auto ev = evaluate_row(row, b);
      // Simplex polytopes of dimension >= 2 must come with an applicable EJA.
      for (const auto& poly : ev.polytopes) {
        if (poly.rfind("Delta_", 0) != 0) continue;
        const long n = std::stol(poly.substr(6));
        if (n >= 2 && !ev.eja) {
          rep.entries.push_back({row.type, b, "fail", ev.isotropy_dim, 0, ev.rank, 0,
                                 poly + " row without an EJA annotation"});
          ++rep.failures;
        }
      }
      if (!ev.eja) continue;
      TableCheckEntry e{row.type, b, "pass", ev.isotropy_dim, 0, ev.rank, 0, ""};
      if (arithmetic_matches(row, b, row.eja->param, e)) {
        e.message = "isotropy " + std::to_string(e.isotropy_dim) + " = " + std::to_string(e.eja_dim) + " - 1, rank " +
                    std::to_string(e.rank) + " = " + std::to_string(e.eja_rank) + " - 1";
      } else if (row.open_question && !row.open_question->alternative_param.empty()) {
        TableCheckEntry alt = e;
        const bool alt_ok = arithmetic_matches(row, b, row.open_question->alternative_param, alt);
        e.status = alt_ok ? "flagged" : "fail";
        e.message = "printed " + row.eja->printed + " fails dim/rank arithmetic at " + bindings_text(b) +
                    (alt_ok ? "; parameter " + row.open_question->alternative_param + " satisfies it" : "");
        if (alt_ok) {
          e.eja_dim = alt.eja_dim;
          e.eja_rank = alt.eja_rank;
          flagged = true;
        } else {
          ++rep.failures;
        }
      } else {
        e.status = "fail";
        e.message = "printed " + row.eja->printed + " fails dim/rank arithmetic at " + bindings_text(b);
        ++rep.failures;
      }
      rep.entries.push_back(std::move(e));
    }
    if (flagged) rep.flagged_rows.push_back(row.type);
  }
  return rep;
}

// ---------------------------------------------------------------- drivers

bool TheoremReport::pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == "fail"; });
}

bool TheoremReport::fully_supported() const {
  return pass() &&
         std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == "unsupported"; });
}

namespace {

CheckResult toleranced(std::string name, double residual, double tol, std::string detail = "") {
  return {std::move(name), residual <= tol ? "pass" : "fail", residual, std::move(detail)};
}

CheckResult exact(std::string name, bool ok, std::string detail = "") {
  return {std::move(name), ok ? "pass" : "fail", ok ? 0.0 : 1.0, std::move(detail)};
}

template <class F>
CheckResult guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {name, "fail", 1.0, e.what()};
  }
}

}  // namespace

TheoremReport verify_main_theorem_if_direction(const AlgebraDescriptor& alg, int trials, std::uint64_t seed,
                                               ExecPolicy policy) {
  TheoremReport rep{alg.name(), {}};
  const std::size_t n = std::size_t(std::max(trials, 1));
  const int r = alg.rank();

  rep.checks.push_back(guarded("spectral decomposition", [&] {
    const auto res = map_indices<double>(n, policy, [&](std::size_t t) {
      const auto d = spectral_decompose_state(random_state(alg, mix_seed(seed, t)));
      double sum = 0, neg = 0;
      for (double w : d.weights) {
        sum += w;
        neg = std::max(neg, -w);
      }
      return std::max({d.residual, std::abs(sum - 1), neg});
    });
    return toleranced("spectral decomposition", *std::max_element(res.begin(), res.end()), 1e-8,
                      std::to_string(n) + " random states");
  }));

  const auto frames = map_indices<std::vector<EjaElement>>(
      n, policy, [&](std::size_t t) { return random_jordan_frame(alg, mix_seed(seed, n + t)); });
  rep.checks.push_back(guarded("frame orthonormality", [&] {
    double worst = 0;
    for (const auto& f : frames) {
      worst = std::max(worst, frame_residuals(f).orthogonality);
      for (const auto& c : f) worst = std::max(worst, std::abs(inner(c, c) - 1));
    }
    return toleranced("frame orthonormality", worst, 1e-9);
  }));
  rep.checks.push_back(guarded("maximal frame sums to unit", [&] {
    double worst = 0;
    for (const auto& f : frames) worst = std::max(worst, frame_residuals(f).completeness);
    return toleranced("maximal frame sums to unit", worst, 1e-9);
  }));
  rep.checks.push_back(guarded("rank", [&] {
    const int got = rank(EjaStateSpace{alg}, seed);
    return exact("rank", got == r, "computed " + std::to_string(got) + ", expected " + std::to_string(r));
  }));
  rep.checks.push_back(guarded("strong symmetry", [&] {
    const auto s = verify_strong_symmetry_eja(alg, int(n), seed, 1e-8, policy);
    if (s.unsupported) return CheckResult{"strong symmetry", "unsupported", 0.0, "Jordan-frame transporters not constructed"};
    return CheckResult{"strong symmetry", s.pass() ? "pass" : "fail", s.max_residual,
                       std::to_string(s.passed) + "/" + std::to_string(s.trials) + " transporter trials"};
  }));
  rep.checks.push_back(guarded("barycenter", [&] {
    const EjaElement b = barycenter(EjaStateSpace{alg});
    double worst = norm(b - (1.0 / r) * EjaElement::unit(alg));
    for (const auto& f : frames) {
      EjaElement avg = EjaElement::zero(alg);
      for (const auto& c : f) avg = avg + (1.0 / r) * c;
      worst = std::max(worst, norm(avg - b));
    }
    return toleranced("barycenter", worst, 1e-12, "frame averages against e/rank");
  }));
  rep.checks.push_back(guarded("fr polytope", [&] {
    const auto s = fr_polytope(alg, 100 * long(n), seed);
    const bool ok = s.simplex.num_vertices() == r && s.mismatches == 0 && s.min_frame_coordinate >= -1e-10 &&
                    s.samples == 100 * long(n);
    return CheckResult{"fr polytope", ok && s.vertex_residual <= 1e-9 ? "pass" : "fail", s.vertex_residual,
                       "simplex on " + std::to_string(r) + " frame vertices, " + std::to_string(s.samples) +
                           " section samples"};
  }));
  rep.checks.push_back(guarded("frame flag bijection", [&] {
    const auto b = frame_flag_bijection(frames.front());
    return exact("frame flag bijection", b.bijective && b.frames == factorial(r),
                 std::to_string(b.frames) + " frames, " + std::to_string(b.flags) + " flags");
  }));
  rep.checks.push_back(guarded("orthomodular lattice", [&] {
    const auto l = subframe_lattice(frames.front());
    const auto o = check_orthomodular(l);
    return CheckResult{"orthomodular lattice", o.pass() ? "pass" : "fail", l.max_match_residual,
                       std::to_string(o.pairs) + " pairs"};
  }));
  return rep;
}

TheoremReport verify_main_theorem_if_direction(int n, ExecPolicy policy) {
  const Polytope p = simplex(n);
  const int r = n + 1;
  TheoremReport rep{p.name(), {}};
  rep.checks.push_back(guarded("spectral", [&] {
    const auto s = is_spectral(p, SpectralityOptions{12, 100000, 0, policy});
    return exact("spectral", s.verdict == SpectralVerdict::Spectral, s.method);
  }));
  const auto frames = enumerate_frames(p, r, 12, policy);
  rep.checks.push_back(guarded("frame measurements", [&] {
    bool ok = long(frames.size()) == factorial(r);
    for (const auto& f : frames) {
      AffineFunctional sum{ExactVector(p.dim()), Exact(0)};
      for (int i = 0; i < r; ++i) {
        ok = ok && is_effect(p, f.measurement[i]);
        for (int j = 0; j < r; ++j) ok = ok && f.measurement[i](p.local(f.vertices[j])) == Exact(i == j ? 1 : 0);
        sum.a = sum.a + f.measurement[i].a;
        sum.b += f.measurement[i].b;
      }
      for (const auto& v : p.local_vertices()) ok = ok && sum(v) == Exact(1);
    }
    return exact("frame measurements", ok, std::to_string(frames.size()) + " maximal frames, exact");
  }));
  rep.checks.push_back(guarded("rank", [&] {
    const int got = rank(p, 12, policy);
    return exact("rank", got == r, "computed " + std::to_string(got));
  }));
  rep.checks.push_back(guarded("strong symmetry", [&] {
    const auto s = is_strongly_symmetric(p, 12, policy);
    return exact("strong symmetry", s.strongly_symmetric, "group order " + std::to_string(s.group_order));
  }));
  rep.checks.push_back(guarded("barycenter", [&] {
    const ExactVector b = barycenter(p);
    const auto lb = *p.to_local(b);
    bool ok = true;
    for (const auto& f : frames)
      for (const auto& e : f.measurement) ok = ok && e(lb) == Exact(Rational(1, r));
    return exact("barycenter", ok, "every frame effect takes 1/rank at the barycenter");
  }));
  rep.checks.push_back(guarded("fr polytope", [&] {
    const auto s = fr_polytope(p);
    return exact("fr polytope", s.is_simplex && s.vertices_form_frame && s.section.vertices() == p.vertices(),
                 "section equals the simplex");
  }));
  rep.checks.push_back(guarded("frame flag bijection", [&] {
    const auto b = frame_flag_bijection(p);
    return exact("frame flag bijection", b.bijective,
                 std::to_string(b.frames) + " frames, " + std::to_string(b.flags) + " flags");
  }));
  rep.checks.push_back(guarded("orthomodular lattice", [&] {
    const auto lattice = exposed_faces(p, 14, policy);
    const auto& faces = lattice.faces();
    const VertexSet top = p.all();
    auto comp = [&](VertexSet f) { return complement_face(p, lattice, f); };
    auto leq = [](VertexSet a, VertexSet b) { return (a & ~b) == 0; };
    bool ok = true;
    for (const auto& f : faces)
      for (const auto& g : faces) {
        const VertexSet a = f.vertices, b = g.vertices;
        ok = ok && comp(comp(a)) == a;
        if (leq(a, b)) {
          ok = ok && leq(comp(b), comp(a));
          ok = ok && lattice.join(a, lattice.meet(comp(a), b)) == b;
        }
      }
    for (const auto& f : faces) {
      ok = ok && lattice.meet(f.vertices, comp(f.vertices)) == lattice.bottom();
      ok = ok && lattice.join(f.vertices, comp(f.vertices)) == top;
    }
    return exact("orthomodular lattice", ok, std::to_string(faces.size() * faces.size()) + " pairs, exact");
  }));
  return rep;
}

bool ConverseReport::pass() const {
  for (const auto& e : entries) {
    if (!e.error.empty()) return false;
    if (e.sss() != e.is_simplex) return false;
    if (!e.is_simplex && !e.counterexample && !e.orbit_witness) return false;
  }
  return true;
}

ConverseReport verify_converse_on_polytopes(const std::vector<Polytope>& catalog, int cap, ExecPolicy policy) {
  ConverseReport rep;
  for (const auto& p : catalog) {
    ConverseEntry e;
    e.name = p.name();
    e.vertices = p.num_vertices();
    e.dim = p.dim();
    e.is_simplex = p.num_vertices() == p.dim() + 1;
    try {
      const auto s = is_spectral(p, SpectralityOptions{cap, 100000, 0, policy});
      e.spectral = s.verdict == SpectralVerdict::Spectral;
      e.counterexample = s.counterexample;
      const auto ss = is_strongly_symmetric(p, cap, policy);
      e.strongly_symmetric = ss.strongly_symmetric;
      e.orbit_witness = ss.witness;
    } catch (const std::exception& err) {
      e.error = err.what();
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

bool recheck_spectral_counterexample(const Polytope& p, const ExactVector& ambient, int cap) {
  if (int(ambient.size()) != p.ambient_dim()) return false;
  if (membership(p, ambient) == Membership::Outside) return false;
  return !covered_by_frames(p, maximal_frame_subsets(p, cap), ambient);
}

bool recheck_orbit_witness(const Polytope& p, const Tuple& a, const Tuple& b, int cap) {
  if (a.size() != b.size()) return false;
  for (const Tuple* t : {&a, &b}) {
    for (int v : *t)
      if (v < 0 || v >= p.num_vertices()) return false;
    if (std::set<int>(t->begin(), t->end()).size() != t->size()) return false;
    if (!distinguishing_measurement(p, *t)) return false;
  }
  return frames_in_different_orbits(p, a, b, cap);
}

}  // namespace jspec
