#include "jspec/io.hpp"

#include "jspec/catalog.hpp"
#include "jspec/error.hpp"

namespace jspec {

json to_json(const Exact& x) { return to_string(x); }

Exact exact_from_json(const json& j) {
  if (j.is_string()) return parse_exact(j.get<std::string>());
  if (j.is_number_integer()) return Exact(j.get<long>());
  throw InvalidInput("exact values must be strings or integers, got " + j.dump());
}

json to_json(const ExactVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

ExactVector exact_vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of exact values, got " + j.dump());
  ExactVector v;
  for (const auto& x : j) v.push_back(exact_from_json(x));
  return v;
}

AlgebraDescriptor algebra_from_json(const json& j) {
  if (!j.contains("family") || !j.at("family").is_string()) throw InvalidInput("eja body needs a \"family\"");
  const Family f = family_from_key(j.at("family").get<std::string>());
  const char* key = f == Family::Spin ? "n" : "m";
  const char* other = f == Family::Spin ? "m" : "n";
  const json& p = j.contains(key) ? j.at(key) : (j.contains(other) ? j.at(other) : json());
  if (!p.is_number_integer()) throw InvalidInput(std::string("eja body needs an integer \"") + key + "\"");
  return AlgebraDescriptor::make(f, p.get<int>());
}

json algebra_to_json(const AlgebraDescriptor& a) {
  json j{{"type", "eja"}, {"family", a.key()}, {"name", a.name()}, {"dim", a.dim()}, {"rank", a.rank()}};
  j[a.family() == Family::Spin ? "n" : "m"] = a.param();
  return j;
}

ConvexBody body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw InvalidInput("body must be an object with a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "polytope") {
    const std::string name = j.value("name", "");
    if (!j.contains("vertices")) {
      if (name.empty()) throw InvalidInput("polytope body needs \"vertices\" or a catalog \"name\"");
      return polytope_by_name(name);
    }
    std::vector<ExactVector> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(exact_vector_from_json(v));
    return Polytope(std::move(vs), name.empty() ? "polytope" : name);
  }
  if (type == "ball") {
    if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<int>() < 1)
      throw InvalidInput("ball body needs a positive integer \"n\"");
    return Ball{j.at("n").get<int>()};
  }
  if (type == "eja") return EjaStateSpace{algebra_from_json(j)};
  throw InvalidInput("unknown body type '" + type + "'");
}

json body_to_json(const ConvexBody& b) {
  if (const auto* p = std::get_if<Polytope>(&b)) {
    json vs = json::array();
    for (const auto& v : p->vertices()) vs.push_back(to_json(v));
    return {{"type", "polytope"}, {"name", p->name()}, {"vertices", vs}};
  }
  if (const auto* ball = std::get_if<Ball>(&b)) return {{"type", "ball"}, {"n", ball->n}};
  return algebra_to_json(std::get<EjaStateSpace>(b).algebra);
}

json to_json(const AffineFunctional& f) { return {{"a", to_json(f.a)}, {"b", to_json(f.b)}}; }

json to_json(const PolytopeSpectrality& s) {
  json j{{"spectral", s.verdict == SpectralVerdict::Spectral},
         {"verdict", to_string(s.verdict)},
         {"method", s.method},
         {"rank", s.rank},
         {"samples", s.samples}};
  json counts = json::object();
  for (const auto& [k, n] : s.frames_by_k) counts[std::to_string(k)] = n;
  j["frames_by_k"] = counts;
  j["maximal_frames"] = json::array();
  for (VertexSet f : s.maximal_frames) {
    json idx = json::array();
    for (int i = 0; i < kMaxVertices; ++i)
      if (f & (VertexSet(1) << i)) idx.push_back(i);
    j["maximal_frames"].push_back(idx);
  }
  if (s.counterexample) j["witness"] = spectral_witness(*s.counterexample);
  return j;
}

json to_json(const StrongSymmetryReport& r) {
  json j{{"strongly_symmetric", r.strongly_symmetric}, {"group_order", r.group_order}, {"rank", r.rank}};
  j["frame_orbits"] = json::array();
  for (const auto& fo : r.by_k)
    j["frame_orbits"].push_back(
        {{"k", fo.k}, {"frames", fo.frames}, {"orbit_sizes", fo.orbit_sizes}, {"representatives", fo.representatives}});
  if (r.witness) j["witness"] = orbit_witness(r.witness->first, r.witness->second);
  return j;
}

json to_json(const RegularityReport& r) {
  json j{{"regular", r.regular},
         {"group_order", r.group_order},
         {"maximal_flags", r.maximal_flags},
         {"orbit_sizes", r.orbit_sizes}};
  if (r.witness) j["witness"] = {{"kind", "flag_pair"}, {"flags", {r.witness->first, r.witness->second}}};
  return j;
}

json to_json(const BijectionReport& r) {
  return {{"frames", r.frames}, {"flags", r.flags}, {"images", r.images}, {"bijective", r.bijective}};
}

json to_json(const EjaStrongSymmetryReport& r) {
  json j{{"algebra", algebra_to_json(r.algebra)},
         {"unsupported", r.unsupported},
         {"trials", r.trials},
         {"passed", r.passed},
         {"max_residual", r.max_residual},
         {"strongly_symmetric", r.pass()},
         {"method", "randomized Jordan-frame transporters"}};
  json errors = json::array();
  for (std::size_t i = 0; i < r.results.size(); ++i)
    if (!r.results[i].ok)
      errors.push_back({{"trial", i}, {"k", r.results[i].k}, {"residual", r.results[i].residual},
                        {"error", r.results[i].error}});
  j["failures"] = errors;
  return j;
}

json to_json(const MrTableRow& r) {
  json j{{"table", r.table},
         {"type", r.type},
         {"symmetric_space", r.symmetric_space},
         {"parameters", r.parameters},
         {"constraints", r.constraints},
         {"rank", r.rank},
         {"rank_printed", r.rank_printed},
         {"isotropy_dim", r.isotropy_dim},
         {"isotropy_printed", r.isotropy_printed},
         {"root_space", r.root_space},
         {"polytopes", r.polytopes}};
  j["eja"] = r.eja ? json{{"printed", r.eja->printed}, {"family", r.eja->family}, {"param", r.eja->param},
                          {"when", r.eja->when}, {"when_printed", r.eja->when_printed}}
                   : json(nullptr);
  if (!r.coincidences.empty()) j["coincidences"] = r.coincidences;
  if (r.open_question)
    j["open_question"] = {{"note", r.open_question->note}, {"alternative_param", r.open_question->alternative_param}};
  return j;
}

json to_json(const EvaluatedRow& r) {
  json j = to_json(r.row);
  j["bindings"] = r.bindings;
  j["evaluated"] = {{"rank", r.rank},
                    {"isotropy_dim", r.isotropy_dim},
                    {"root_space", r.root_space},
                    {"polytopes", r.polytopes},
                    {"eja", r.eja ? algebra_to_json(*r.eja) : json(nullptr)}};
  return j;
}

json to_json(const TableConsistencyReport& r) {
  json j{{"pass", r.pass()}, {"failures", r.failures}, {"flagged_rows", r.flagged_rows}};
  j["entries"] = json::array();
  for (const auto& e : r.entries)
    j["entries"].push_back({{"type", e.type},
                            {"bindings", e.bindings},
                            {"status", e.status},
                            {"isotropy_dim", e.isotropy_dim},
                            {"eja_dim", e.eja_dim},
                            {"rank", e.rank},
                            {"eja_rank", e.eja_rank},
                            {"message", e.message}});
  return j;
}

json to_json(const TheoremReport& r) {
  json j{{"target", r.target}, {"pass", r.pass()}, {"fully_supported", r.fully_supported()}};
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"status", c.status}, {"residual", c.residual}, {"detail", c.detail}});
  return j;
}

json to_json(const ConverseReport& r) {
  json j{{"pass", r.pass()}};
  j["entries"] = json::array();
  for (const auto& e : r.entries) {
    json x{{"name", e.name},
           {"vertices", e.vertices},
           {"dim", e.dim},
           {"is_simplex", e.is_simplex},
           {"spectral", e.spectral},
           {"strongly_symmetric", e.strongly_symmetric},
           {"sss", e.sss()}};
    json w = json::array();
    if (e.counterexample) w.push_back(spectral_witness(*e.counterexample));
    if (e.orbit_witness) w.push_back(orbit_witness(e.orbit_witness->first, e.orbit_witness->second));
    x["witnesses"] = w;
    if (!e.error.empty()) x["error"] = e.error;
    j["entries"].push_back(x);
  }
  return j;
}

json to_json(const EjaElement& x) {
  json c = json::array();
  for (int k = 0; k < x.algebra().dim(); ++k) c.push_back(x[k]);
  return c;
}

json spectral_witness(const ExactVector& point) {
  return {{"kind", "uncovered_point"}, {"point", to_json(point)}};
}

json orbit_witness(const Tuple& a, const Tuple& b) { return {{"kind", "orbit_pair"}, {"frames", {a, b}}}; }

bool recheck_witness(const Polytope& p, const json& w, int cap) {
  const std::string kind = w.value("kind", "");
  try {
    if (kind == "uncovered_point") return recheck_spectral_counterexample(p, exact_vector_from_json(w.at("point")), cap);
    if (kind == "orbit_pair") {
      const auto& f = w.at("frames");
      if (!f.is_array() || f.size() != 2) throw InvalidInput("orbit_pair witness needs two frames");
      return recheck_orbit_witness(p, f[0].get<Tuple>(), f[1].get<Tuple>(), cap);
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed witness: ") + e.what());
  }
  throw InvalidInput("unknown witness kind '" + kind + "'");
}

}  // namespace jspec
