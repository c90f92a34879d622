// jspec: command-line front end. Every command prints one JSON document.
// Exit codes: 0 success, 1 property refuted, 2 error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jspec/catalog.hpp"
#include "jspec/classification.hpp"
#include "jspec/error.hpp"
#include "jspec/io.hpp"
#include "jspec/random.hpp"

using namespace jspec;

namespace {

struct Config {
  std::string input;
  std::string eja;
  int m = 0, n = 0;
  std::uint64_t seed = 0;
  int trials = 100;
  double tol = 1e-10;
  int cap = 12;
  std::string out;
  // command specific
  std::string property;
  int k = 0;
  std::string type;
  std::vector<std::string> bind;
  bool check_tables = false;
  int simplex_dim = -1;
  bool converse = false;
};

struct Result {
  json body;
  int code = 0;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

// The input document: a body, or an object with "body" plus extras ("state", "point", "witness").
struct Input {
  ConvexBody body;
  json doc;
};

Input load_input(const Config& c) {
  if (!c.eja.empty()) {
    json spec{{"type", "eja"}, {"family", c.eja}};
    if (c.m) spec["m"] = c.m;
    if (c.n) spec["n"] = c.n;
    return {body_from_json(spec), json::object()};
  }
  if (c.input.empty()) throw InvalidInput("give --input FILE or --eja FAMILY");
  json doc = read_json_file(c.input);
  const json& spec = doc.contains("body") ? doc.at("body") : doc;
  return {body_from_json(spec), doc};
}

AlgebraDescriptor as_algebra(const ConvexBody& b) {
  if (const auto* e = std::get_if<EjaStateSpace>(&b)) return e->algebra;
  if (const auto* ball = std::get_if<Ball>(&b)) return AlgebraDescriptor::make(Family::Spin, ball->n);
  throw InvalidInput("expected an EJA or ball body");
}

json doubles(const std::vector<double>& v) { return json(v); }

// ---------------------------------------------------------------- decompose

// Barycentric weights of x on an affinely independent vertex subset, if x lies in its hull.
std::optional<ExactVector> frame_weights(const Polytope& p, VertexSet s, const ExactVector& local) {
  const auto idx = p.indices(s);
  ExactMatrix a(p.dim() + 1, int(idx.size()));
  ExactVector rhs(p.dim() + 1);
  for (int c = 0; c < int(idx.size()); ++c) {
    for (int r = 0; r < p.dim(); ++r) a(r, c) = p.local(idx[c])[r];
    a(p.dim(), c) = Exact(1);
  }
  for (int r = 0; r < p.dim(); ++r) rhs[r] = local[r];
  rhs[p.dim()] = Exact(1);
  const auto w = solve_any(a, rhs);
  if (!w) return std::nullopt;
  for (const auto& x : *w)
    if (x.sign() < 0) return std::nullopt;
  return w;
}

Result cmd_decompose(const Config& c) {
  const Input in = load_input(c);
  json r;
  if (const auto* p = std::get_if<Polytope>(&in.body)) {
    const ExactVector x = in.doc.contains("point") ? exact_vector_from_json(in.doc.at("point")) : barycenter(*p);
    if (membership(*p, x) == Membership::Outside) throw InvalidInput("point is not in the polytope");
    const auto local = *p->to_local(x);
    r["point"] = to_json(x);
    for (VertexSet s : maximal_frame_subsets(*p, c.cap)) {
      if (auto w = frame_weights(*p, s, local)) {
        r["decomposed"] = true;
        r["frame"] = p->indices(s);
        r["weights"] = to_json(*w);
        return {r, 0};
      }
    }
    r["decomposed"] = false;
    r["witness"] = spectral_witness(x);
    return {r, 1};
  }
  if (const auto* b = std::get_if<Ball>(&in.body)) {
    std::vector<double> x;
    if (in.doc.contains("point")) {
      x = in.doc.at("point").get<std::vector<double>>();
    } else {
      Rng rng(mix_seed(c.seed, 0));
      std::normal_distribution<double> g;
      double len = 0;
      for (int i = 0; i < b->n; ++i) {
        x.push_back(g(rng));
        len += x.back() * x.back();
      }
      const double radius = std::uniform_real_distribution<double>(0, 1)(rng);
      for (double& v : x) v *= radius / std::sqrt(len);
    }
    const auto d = spectral_decompose_state(*b, x);
    std::vector<double> anti = d.point;
    for (double& v : anti) v = -v;
    r["point"] = doubles(x);
    r["weights"] = {d.weight, 1 - d.weight};
    r["pure_states"] = {d.point, anti};
    r["decomposed"] = true;
    return {r, 0};
  }
  const auto alg = std::get<EjaStateSpace>(in.body).algebra;
  EjaElement x = in.doc.contains("state") ? EjaElement(alg, in.doc.at("state").get<std::vector<double>>())
                                          : random_state(alg, c.seed);
  const auto d = spectral_decompose_state(x, c.tol);
  r["state"] = to_json(x);
  r["weights"] = d.weights;
  r["frame"] = json::array();
  for (const auto& f : d.frame) r["frame"].push_back(to_json(f));
  r["residual"] = d.residual;
  r["decomposed"] = true;
  return {r, d.residual <= std::max(c.tol, 1e-8) ? 0 : 1};
}

// ---------------------------------------------------------------- check

Result cmd_check(const Config& c) {
  const Input in = load_input(c);
  const auto* p = std::get_if<Polytope>(&in.body);
  if (c.property == "spectral") {
    if (p) {
      const auto s = is_spectral(*p, SpectralityOptions{c.cap, 100000, c.seed});
      return {to_json(s), s.verdict == SpectralVerdict::NotSpectral ? 1 : 0};
    }
    const auto alg = as_algebra(in.body);
    double worst = 0;
    for (int t = 0; t < c.trials; ++t)
      worst = std::max(worst, spectral_decompose_state(random_state(alg, mix_seed(c.seed, t))).residual);
    const bool ok = worst <= std::max(c.tol, 1e-8);
    return {json{{"spectral", ok}, {"method", "spectral decomposition of random states"}, {"trials", c.trials},
                 {"max_residual", worst}},
            ok ? 0 : 1};
  }
  if (c.property == "strong-symmetry") {
    if (p) {
      const auto s = is_strongly_symmetric(*p, c.cap);
      return {to_json(s), s.strongly_symmetric ? 0 : 1};
    }
    const auto r = verify_strong_symmetry_eja(as_algebra(in.body), c.trials, c.seed, std::max(c.tol, 1e-8));
    json j = to_json(r);
    if (r.unsupported) {
      j["strongly_symmetric"] = nullptr;
      j["status"] = "unsupported";
      return {j, 2};
    }
    return {j, r.pass() ? 0 : 1};
  }
  if (c.property == "regular") {
    if (!p) throw InvalidInput("regularity is checked for polytopes only");
    const auto r = is_regular(*p, c.cap);
    return {to_json(r), r.regular ? 0 : 1};
  }
  if (c.property == "rank") {
    int r = 0;
    if (p) r = rank(*p, c.cap);
    else if (const auto* b = std::get_if<Ball>(&in.body)) r = rank(*b);
    else r = rank(std::get<EjaStateSpace>(in.body), c.seed);
    return {json{{"rank", r}}, 0};
  }
  throw InvalidInput("unknown property '" + c.property + "'");
}

// ---------------------------------------------------------------- frames

Result cmd_frames(const Config& c) {
  const Input in = load_input(c);
  json r;
  if (const auto* p = std::get_if<Polytope>(&in.body)) {
    const int k = c.k > 0 ? c.k : rank(*p, c.cap);
    r["k"] = k;
    r["frames"] = json::array();
    for (const auto& f : enumerate_frames(*p, k, c.cap)) {
      json m = json::array();
      for (const auto& e : f.measurement) m.push_back(to_json(e));
      r["frames"].push_back({{"vertices", f.vertices}, {"measurement", m}});
    }
    r["count"] = r["frames"].size();
    return {r, 0};
  }
  const auto alg = as_algebra(in.body);
  auto frame = random_jordan_frame(alg, c.seed);
  const int k = c.k > 0 ? c.k : alg.rank();
  if (k > alg.rank()) throw InvalidInput("k exceeds the rank " + std::to_string(alg.rank()));
  const auto res = frame_residuals(frame);
  frame.erase(frame.begin() + k, frame.end());
  r["k"] = k;
  r["frame"] = json::array();
  for (const auto& f : frame) r["frame"].push_back(to_json(f));
  r["orthogonality_residual"] = res.orthogonality;
  r["completeness_residual"] = res.completeness;
  return {r, 0};
}

// ---------------------------------------------------------------- fr-polytope

Result cmd_fr_polytope(const Config& c) {
  const Input in = load_input(c);
  json r;
  if (const auto* p = std::get_if<Polytope>(&in.body)) {
    PolytopeFrSection s = [&] {
      try {
        return fr_polytope(*p, c.cap);
      } catch (const InvalidInput&) {
        return PolytopeFrSection{{}, {}, *p};
      }
    }();
    if (s.flag.empty()) {
      r["refused"] = true;
      r["reason"] = "not spectral and strongly symmetric";
      return {r, 1};
    }
    const auto sym = fr_polytope_symmetry(s, c.cap);
    r["flag"] = s.flag;
    r["basis"] = json::array();
    for (const auto& b : s.basis) r["basis"].push_back(to_json(b));
    r["section"] = body_to_json(s.section);
    r["is_simplex"] = s.is_simplex;
    r["vertices_form_frame"] = s.vertices_form_frame;
    r["symmetry"] = {{"order", sym.order}, {"name", sym.name}, {"full_symmetric", sym.full_symmetric}};
    return {r, s.is_simplex && s.vertices_form_frame ? 0 : 1};
  }
  const auto alg = as_algebra(in.body);
  const auto s = fr_polytope(alg, 10000, c.seed);
  const auto sym = fr_polytope_symmetry(s);
  r["simplex_vertices"] = s.simplex.num_vertices();
  r["frame"] = json::array();
  for (const auto& f : s.frame) r["frame"].push_back(to_json(f));
  r["vertex_residual"] = s.vertex_residual;
  r["samples"] = s.samples;
  r["drawn"] = s.drawn;
  r["mismatches"] = s.mismatches;
  r["min_frame_coordinate"] = s.min_frame_coordinate;
  r["symmetry"] = {{"order", sym.order},
                   {"name", sym.name},
                   {"full_symmetric", sym.full_symmetric},
                   {"transporters", sym.transporters_unsupported ? json("unsupported") : json(sym.transporter_residual)}};
  const bool ok = s.vertex_residual <= 1e-9 && s.mismatches == 0 && s.min_frame_coordinate >= -c.tol;
  return {r, ok ? 0 : 1};
}

// ---------------------------------------------------------------- tables

Result cmd_tables(const Config& c) {
  const MrTables& t = mr_tables();
  if (c.check_tables) {
    const auto rep = table_consistency_check(t);
    return {to_json(rep), rep.pass() ? 0 : 1};
  }
  json r;
  r["source"] = t.path;
  if (c.type.empty()) {
    r["rows"] = json::array();
    for (const auto& row : t.rows) r["rows"].push_back(to_json(row));
    return {r, 0};
  }
  const auto row = mr_table_lookup(c.type);
  if (c.bind.empty() && !row.parameters.empty()) {
    r["row"] = to_json(row);
    return {r, 0};
  }
  Bindings b;
  for (const auto& kv : c.bind) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidInput("--bind expects NAME=VALUE, got " + kv);
    try {
      b[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw InvalidInput("--bind value must be an integer: " + kv);
    }
  }
  r["row"] = to_json(evaluate_row(row, b));
  return {r, 0};
}

// ---------------------------------------------------------------- verify-theorem

Result cmd_verify(const Config& c) {
  if (c.converse) {
    std::vector<Polytope> cat;
    for (const auto& name : catalog_names()) cat.push_back(polytope_by_name(name));
    const auto rep = verify_converse_on_polytopes(cat, c.cap);
    return {to_json(rep), rep.pass() ? 0 : 1};
  }
  if (c.simplex_dim >= 0) {
    const auto rep = verify_main_theorem_if_direction(c.simplex_dim);
    return {to_json(rep), rep.pass() ? 0 : 1};
  }
  const Input in = load_input(c);
  if (const auto* p = std::get_if<Polytope>(&in.body)) {
    if (p->num_vertices() != p->dim() + 1) throw InvalidInput("the if-direction driver takes simplices or EJAs");
    const auto rep = verify_main_theorem_if_direction(p->dim());
    return {to_json(rep), rep.pass() ? 0 : 1};
  }
  const auto rep = verify_main_theorem_if_direction(as_algebra(in.body), c.trials, c.seed);
  return {to_json(rep), rep.pass() ? 0 : 1};
}

// ---------------------------------------------------------------- plot-data

Result cmd_plot(const Config& c) {
  const Input in = load_input(c);
  json r;
  if (const auto* p = std::get_if<Polytope>(&in.body)) {
    if (p->ambient_dim() > 3) throw InvalidInput("plot data needs ambient dimension at most 3");
    const auto lattice = exposed_faces(*p, std::max(c.cap, 14));
    r["vertices"] = json::array();
    for (const auto& v : p->vertices()) r["vertices"].push_back(to_doubles(v));
    r["edges"] = json::array();
    r["facets"] = json::array();
    for (const auto& f : lattice.faces()) {
      if (f.dim == 1) r["edges"].push_back(p->indices(f.vertices));
      if (f.dim == p->dim() - 1 && p->dim() > 1) r["facets"].push_back(p->indices(f.vertices));
    }
    r["barycenter"] = to_doubles(barycenter(*p));
    r["maximal_frames"] = json::array();
    for (VertexSet s : maximal_frame_subsets(*p, c.cap)) r["maximal_frames"].push_back(p->indices(s));
    return {r, 0};
  }
  if (const auto* b = std::get_if<Ball>(&in.body)) {
    if (b->n > 3) throw InvalidInput("plot data needs n at most 3");
    Rng rng(mix_seed(c.seed, 0));
    std::normal_distribution<double> g;
    r["boundary"] = json::array();
    for (int t = 0; t < c.trials; ++t) {
      std::vector<double> x(b->n);
      double len = 0;
      for (double& v : x) {
        v = g(rng);
        len += v * v;
      }
      for (double& v : x) v /= std::sqrt(len);
      r["boundary"].push_back(x);
    }
    std::vector<double> e1(b->n, 0.0), e2(b->n, 0.0);
    e1[0] = 1;
    e2[0] = -1;
    r["fr_section"] = {e1, e2};
    return {r, 0};
  }
  // EJA: the section simplex in frame coordinates, and where random state orbits meet it.
  const auto alg = std::get<EjaStateSpace>(in.body).algebra;
  const int rk = alg.rank();
  r["section_vertices"] = json::array();
  for (int i = 0; i < rk; ++i) {
    std::vector<double> v(rk, 0.0);
    v[i] = 1;
    r["section_vertices"].push_back(v);
  }
  r["orbit_points"] = json::array();
  for (int t = 0; t < c.trials; ++t)
    r["orbit_points"].push_back(spectral_decompose_state(random_state(alg, mix_seed(c.seed, t))).weights);
  return {r, 0};
}

// ---------------------------------------------------------------- recheck

Result cmd_recheck(const Config& c) {
  if (c.input.empty()) throw InvalidInput("recheck needs --input FILE");
  const json doc = read_json_file(c.input);
  if (!doc.contains("body")) throw InvalidInput("recheck input needs a \"body\"");
  const ConvexBody body = body_from_json(doc.at("body"));
  const auto* p = std::get_if<Polytope>(&body);
  if (!p) throw InvalidInput("witnesses are rechecked on polytopes");
  std::vector<json> ws;
  if (doc.contains("witness")) ws.push_back(doc.at("witness"));
  if (doc.contains("witnesses"))
    for (const auto& w : doc.at("witnesses")) ws.push_back(w);
  if (ws.empty()) throw InvalidInput("no witness in input");
  json r;
  r["results"] = json::array();
  bool all = true;
  for (const auto& w : ws) {
    const bool ok = recheck_witness(*p, w, c.cap);
    all = all && ok;
    r["results"].push_back({{"kind", w.value("kind", "")}, {"valid", ok}});
  }
  r["valid"] = all;
  return {r, all ? 0 : 1};
}

void add_common(CLI::App* sub, Config& c, bool body = true) {
  if (body) {
    sub->add_option("--input,input", c.input, "JSON body file");
    sub->add_option("--eja", c.eja, "EJA family: sym_r, herm_c, herm_h, spin, herm_o");
    sub->add_option("--m", c.m, "matrix size");
    sub->add_option("--n", c.n, "spin-factor dimension");
  }
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--trials", c.trials, "randomized trials")->capture_default_str();
  sub->add_option("--tol", c.tol, "tolerance")->capture_default_str();
  sub->add_option("--cap", c.cap, "vertex cap")->capture_default_str();
  sub->add_option("--out", c.out, "write JSON here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral and symmetry checks for convex bodies and Jordan algebras"};
  app.require_subcommand(1);
  Config c;
  std::map<std::string, std::function<Result(const Config&)>> commands;

  auto* dec = app.add_subcommand("decompose", "Spectral decomposition of a state");
  add_common(dec, c);
  commands["decompose"] = cmd_decompose;

  auto* chk = app.add_subcommand("check", "Check a property");
  add_common(chk, c);
  chk->add_option("--property", c.property, "spectral, strong-symmetry, regular, rank")
      ->required()
      ->check(CLI::IsMember({"spectral", "strong-symmetry", "regular", "rank"}));
  commands["check"] = cmd_check;

  auto* fr = app.add_subcommand("frames", "List frames and their measurements");
  add_common(fr, c);
  fr->add_option("--k", c.k, "frame size (default: rank)");
  commands["frames"] = cmd_frames;

  auto* fp = app.add_subcommand("fr-polytope", "Farran-Robertson section");
  add_common(fp, c);
  commands["fr-polytope"] = cmd_fr_polytope;

  auto* tb = app.add_subcommand("tables", "Symmetric-space table rows");
  add_common(tb, c, false);
  tb->add_option("--type", c.type, "row label, e.g. AI or EIV");
  tb->add_option("--bind", c.bind, "parameter binding NAME=VALUE");
  tb->add_flag("--check", c.check_tables, "run the dimension/rank consistency check");
  commands["tables"] = cmd_tables;

  auto* vt = app.add_subcommand("verify-theorem", "Run the classification checks");
  add_common(vt, c);
  vt->add_option("--simplex", c.simplex_dim, "simplex dimension");
  vt->add_flag("--converse", c.converse, "run the converse over the polytope catalog");
  commands["verify-theorem"] = cmd_verify;

  auto* pd = app.add_subcommand("plot-data", "Point and segment data for plotting");
  add_common(pd, c);
  commands["plot-data"] = cmd_plot;

  auto* rc = app.add_subcommand("recheck", "Re-verify witnesses emitted by other commands");
  add_common(rc, c, false);
  rc->add_option("--input,input", c.input, "JSON with \"body\" and \"witness\" or \"witnesses\"");
  commands["recheck"] = cmd_recheck;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  json out{{"schema_version", kSchemaVersion}, {"command", name}};
  int code = 0;
  try {
    Result r = commands.at(name)(c);
    if (name != "tables" && name != "recheck" && !(name == "verify-theorem" && (c.converse || c.simplex_dim >= 0)))
      out["body"] = body_to_json(load_input(c).body);
    if (name == "verify-theorem" && c.simplex_dim >= 0) out["body"] = body_to_json(simplex(c.simplex_dim));
    out["config"] = {{"seed", c.seed}, {"trials", c.trials}, {"tol", c.tol}, {"cap", c.cap}};
    out["result"] = r.body;
    for (const char* key : {"spectral", "strongly_symmetric", "regular", "rank", "pass", "valid", "witness"})
      if (r.body.is_object() && r.body.contains(key)) out[key] = r.body[key];
    code = r.code;
  } catch (const std::exception& e) {
    out["error"] = e.what();
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  }
  const std::string text = out.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) {
      std::cerr << "error: cannot write " << c.out << "\n";
      return 2;
    }
    f << text;
  }
  return code;
}
