// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "jspec/catalog.hpp"
#include "jspec/classification.hpp"
#include "jspec/error.hpp"
#include "jspec/io.hpp"
#include "jspec/operational.hpp"
#include "jspec/symmetry.hpp"

using namespace jspec;

namespace {

AlgebraDescriptor alg(Family f, int p) { return AlgebraDescriptor::make(f, p); }

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

// ---------------------------------------------------------------- 1

Outcome spectral_engine() {
  Outcome o;
  std::vector<AlgebraDescriptor> algs;
  for (int m = 1; m <= 5; ++m) algs.push_back(alg(Family::SymR, m));
  for (int m = 1; m <= 4; ++m) algs.push_back(alg(Family::HermC, m));
  for (int m = 1; m <= 3; ++m) algs.push_back(alg(Family::HermH, m));
  for (int n = 1; n <= 10; ++n) algs.push_back(alg(Family::Spin, n));
  algs.push_back(alg(Family::HermO, 3));
  double worst = 0;
  for (const auto& a : algs) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      const auto x = random_element(a, s);
      const auto d = spectral_decompose(x, SpectralOptions{});
      double r = d.residual;
      for (const auto& c : d.frame) r = std::max(r, norm(jordan_product(c, c) - c));
      const auto fr = frame_residuals(d.frame);
      r = std::max({r, fr.orthogonality, fr.completeness});
      worst = std::max(worst, r);
      o.require(r <= 1e-8, a.name() + " seed " + std::to_string(s) + " residual " + std::to_string(r));
    }
  }
  std::ostringstream n;
  n << algs.size() << " algebras x 200 elements, max residual " << worst;
  if (o.ok) o.note = n.str();
  return o;
}

// ---------------------------------------------------------------- 2

Outcome family_ranks() {
  Outcome o;
  // Dimension and rank columns, written out independently of the algebra descriptors.
  struct Row {
    Family f;
    int p;
    int dim, rank;
  };
  std::vector<Row> rows;
  for (int m = 1; m <= 5; ++m) rows.push_back({Family::SymR, m, m * (m + 1) / 2, m});
  for (int m = 1; m <= 4; ++m) rows.push_back({Family::HermC, m, m * m, m});
  for (int m = 1; m <= 3; ++m) rows.push_back({Family::HermH, m, m * (2 * m - 1), m});
  for (int n = 1; n <= 10; ++n) rows.push_back({Family::Spin, n, n + 1, 2});
  rows.push_back({Family::HermO, 3, 27, 3});
  for (const auto& r : rows) {
    const auto a = alg(r.f, r.p);
    for (std::uint64_t seed : {0u, 1u, 2u}) {
      const int got = rank(EjaStateSpace{a}, seed);
      o.require(got == r.rank, a.name() + ": computed rank " + std::to_string(got));
    }
    o.require(a.dim() == r.dim, a.name() + ": dimension " + std::to_string(a.dim()));
  }
  o.require(rank(Ball{3}) == 2, "ball rank");
  if (o.ok) o.note = std::to_string(rows.size()) + " family/parameter pairs";
  return o;
}

// ---------------------------------------------------------------- 3

// Brute force: effects are affine maps fixed by their values on an affine
// basis that starts with the frame vertices; the remaining basis values range
// over the grid {0, 1/q, ..., 1}.
bool oracle_distinguishable(const Polytope& p, const std::vector<int>& frame, int q) {
  const int d = p.dim(), nv = p.num_vertices(), k = int(frame.size());
  std::vector<int> basis;
  auto independent = [&](const std::vector<int>& b) {
    ExactMatrix m(int(b.size()) - 1, d);
    for (int i = 1; i < int(b.size()); ++i)
      for (int c = 0; c < d; ++c) m(i - 1, c) = p.local(b[i])[c] - p.local(b[0])[c];
    return matrix_rank(m) == int(b.size()) - 1;
  };
  for (int v : frame) {
    basis.push_back(v);
    if (!independent(basis)) return false;  // affinely dependent vertices cannot be told apart
  }
  for (int v = 0; v < nv && int(basis.size()) < d + 1; ++v) {
    if (std::find(basis.begin(), basis.end(), v) != basis.end()) continue;
    basis.push_back(v);
    if (!independent(basis)) basis.pop_back();
  }
  // Barycentric coordinates of every vertex in the basis.
  ExactMatrix a(d + 1, d + 1);
  for (int c = 0; c <= d; ++c) {
    for (int r = 0; r < d; ++r) a(r, c) = p.local(basis[c])[r];
    a(d, c) = Exact(1);
  }
  const ExactMatrix inv = *inverse(a);
  std::vector<ExactVector> bary(nv);
  for (int v = 0; v < nv; ++v) {
    ExactVector rhs(d + 1);
    for (int r = 0; r < d; ++r) rhs[r] = p.local(v)[r];
    rhs[d] = Exact(1);
    bary[v] = inv * rhs;
  }
  const int free = d + 1 - k;
  // Candidate effects for each frame index: vertex values in [0,1], delta on the frame.
  std::vector<std::vector<std::vector<Exact>>> cands(k);
  for (int i = 0; i < k; ++i) {
    std::vector<int> digits(free, 0);
    for (;;) {
      std::vector<Exact> basis_vals(d + 1);
      for (int j = 0; j < k; ++j) basis_vals[j] = Exact(i == j ? 1 : 0);
      for (int j = 0; j < free; ++j) basis_vals[k + j] = Exact(Rational(digits[j], q));
      std::vector<Exact> vals(nv);
      bool ok = true;
      for (int v = 0; v < nv && ok; ++v) {
        Exact s(0);
        for (int j = 0; j <= d; ++j) s += bary[v][j] * basis_vals[j];
        vals[v] = s;
        ok = s >= Exact(0) && s <= Exact(1);
      }
      if (ok) cands[i].push_back(vals);
      int pos = 0;
      while (pos < free && ++digits[pos] > q) digits[pos++] = 0;
      if (pos == free) break;
    }
    if (cands[i].empty()) return false;
  }
  // Choose one candidate per index with pointwise sum <= 1 (the remainder completes the measurement).
  std::vector<Exact> acc(nv, Exact(0));
  std::function<bool(int)> pick = [&](int i) {
    if (i == k) return true;
    for (const auto& c : cands[i]) {
      bool ok = true;
      for (int v = 0; v < nv && ok; ++v) ok = acc[v] + c[v] <= Exact(1);
      if (!ok) continue;
      for (int v = 0; v < nv; ++v) acc[v] += c[v];
      const bool found = pick(i + 1);
      for (int v = 0; v < nv; ++v) acc[v] -= c[v];
      if (found) return true;
    }
    return false;
  };
  return pick(0);
}

Outcome operational_oracle() {
  Outcome o;
  long compared = 0;
  for (const char* name : {"simplex1", "simplex2", "simplex3", "simplex4", "square", "pentagon", "hexagon", "cube",
                           "octahedron"}) {
    const Polytope p = polytope_by_name(name);
    for (int k = 2; k <= std::min(p.num_vertices(), p.dim() + 1); ++k) {
      const auto lp = distinguishable_subsets(p, k);
      const std::set<VertexSet> lp_set(lp.begin(), lp.end());
      for (VertexSet s = 0; s <= p.all(); ++s) {
        if (std::popcount(s) != k) continue;
        const bool brute = oracle_distinguishable(p, p.indices(s), 12);
        ++compared;
        o.require(brute == bool(lp_set.count(s)),
                  std::string(name) + ": LP and brute force disagree on subset " + std::to_string(s));
      }
    }
  }
  // Pinned fixtures.
  std::set<std::vector<int>> pent, expected;
  for (const auto& f : enumerate_frames(pentagon(), 2)) pent.insert(f.vertices);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j && (i - j + 5) % 5 != 1 && (j - i + 5) % 5 != 1) expected.insert({i, j});
  o.require(pent == expected && pent.size() == 10, "pentagon 2-frames are not the 10 non-adjacent ordered pairs");
  o.require(enumerate_frames(square(), 3).empty(), "square has a 3-frame");
  for (int n = 1; n <= 4; ++n) o.require(rank(simplex(n)) == n + 1, "simplex rank");
  if (o.ok) o.note = std::to_string(compared) + " vertex subsets compared; pinned fixtures match";
  return o;
}

// ---------------------------------------------------------------- 4

Outcome theorem_if() {
  Outcome o;
  for (const auto& a : {alg(Family::SymR, 3), alg(Family::SymR, 4), alg(Family::HermC, 3), alg(Family::HermH, 3),
                        alg(Family::Spin, 3), alg(Family::Spin, 10), alg(Family::HermO, 3)}) {
    const auto r = verify_main_theorem_if_direction(a, 100, 11);
    for (const auto& c : r.checks) {
      if (a.family() == Family::HermO && c.name == "strong symmetry") {
        o.require(c.status == "unsupported", "HermO transporters should be reported unsupported");
        continue;
      }
      o.require(c.status == "pass", a.name() + ": " + c.name + " " + c.status + " " + c.detail);
      if (c.name == "frame orthonormality" || c.name == "maximal frame sums to unit")
        o.require(c.residual <= 1e-9, a.name() + ": " + c.name + " residual");
      if (c.name == "barycenter") o.require(c.residual <= 1e-12, a.name() + ": barycenter residual");
      if (c.name == "strong symmetry") o.require(c.residual <= 1e-8, a.name() + ": transporter residual");
    }
  }
  for (int n = 1; n <= 5; ++n) {
    const auto r = verify_main_theorem_if_direction(n);
    o.require(r.fully_supported(), "simplex" + std::to_string(n) + " failed");
  }
  if (o.ok) o.note = "7 algebras x 100 trials, simplices 1..5 exact; Herm(3,O) transporters unsupported";
  return o;
}

// ---------------------------------------------------------------- 5

std::string run(const std::string& cmd, int* status = nullptr) {
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "";
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int st = pclose(pipe);
  if (status) *status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

const std::string kCli = JSPEC_CLI_PATH;
const std::string kFixtures = JSPEC_FIXTURE_DIR;

Outcome converse() {
  Outcome o;
  std::vector<Polytope> cat;
  for (const auto& name : catalog_names()) cat.push_back(polytope_by_name(name));
  const auto rep = verify_converse_on_polytopes(cat);
  o.require(rep.pass(), "converse report fails");
  for (const auto& e : rep.entries) {
    o.require(e.sss() == e.is_simplex, e.name + " misclassified");
    if (e.name == "pentagon") o.require(e.strongly_symmetric && !e.spectral, "pentagon verdict");
    if (e.name == "square") {
      o.require(!e.strongly_symmetric && !e.spectral, "square verdict");
      o.require(e.counterexample && e.orbit_witness, "square witnesses missing");
    }
  }
  // The square's witnesses, emitted and re-verified through the CLI.
  const std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/jspec_accept_";
  for (const char* prop : {"spectral", "strong-symmetry"}) {
    const std::string file = tmp + prop + ".json";
    int st = -1;
    run(kCli + " check --property " + prop + " --input " + kFixtures + "/square.json --out " + file, &st);
    o.require(st == 1, std::string("check ") + prop + " on the square should exit 1");
    run(kCli + " recheck --input " + file, &st);
    o.require(st == 0, std::string("recheck of the square ") + prop + " witness failed");
    std::remove(file.c_str());
  }
  if (o.ok) o.note = "sss exactly on simplices; pentagon strongly symmetric, not spectral; square witnesses recheck";
  return o;
}

// ---------------------------------------------------------------- 6

Outcome bijection() {
  Outcome o;
  const long expect[] = {0, 0, 6, 24, 120};
  std::string counts;
  for (int n = 2; n <= 4; ++n) {
    const auto b = frame_flag_bijection(simplex(n));
    o.require(b.frames == expect[n] && b.flags == expect[n] && b.images == expect[n] && b.bijective,
              "simplex" + std::to_string(n) + " counts " + std::to_string(b.frames) + "/" + std::to_string(b.flags));
    counts += (counts.empty() ? "" : ", ") + std::to_string(b.frames) + "<->" + std::to_string(b.flags);
  }
  if (o.ok) o.note = counts;
  return o;
}

// ---------------------------------------------------------------- 7

Outcome orthomodular() {
  Outcome o;
  for (const auto& a : {alg(Family::SymR, 3), alg(Family::HermC, 3), alg(Family::HermO, 3)}) {
    for (const auto& frame : {standard_jordan_frame(a), random_jordan_frame(a, 4)}) {
      const auto l = subframe_lattice(frame);
      const auto r = check_orthomodular(l);
      o.require(r.pass() && r.pairs == 64, a.name() + " orthomodular laws");
      o.require(l.max_match_residual <= 1e-8, a.name() + " lattice match residual");
    }
  }
  if (o.ok) o.note = "3 algebras, standard and random frames, 64 pairs each";
  return o;
}

// ---------------------------------------------------------------- 8

Outcome fr_extraction() {
  Outcome o;
  for (const auto& a : {alg(Family::SymR, 3), alg(Family::HermC, 3)}) {
    const auto s = fr_polytope(a, 10000, 2);
    o.require(s.simplex.num_vertices() == 3 && s.simplex.dim() == 2, a.name() + " is not a triangle");
    o.require(s.vertex_residual <= 1e-9, a.name() + " vertex residual");
    o.require(s.samples == 10000 && s.mismatches == 0 && s.min_frame_coordinate >= -1e-10,
              a.name() + " section samples");
  }
  for (int n : {2, 3, 5}) {
    const auto s = fr_polytope(alg(Family::Spin, n), 10000, 2);
    o.require(s.simplex.num_vertices() == 2 && s.vertex_residual <= 1e-9 && s.mismatches == 0 &&
                  s.min_frame_coordinate >= -1e-10,
              "spin factor section");
  }
  const auto d3 = fr_polytope(simplex(3));
  o.require(d3.section.vertices() == simplex(3).vertices() && d3.is_simplex && d3.vertices_form_frame,
            "simplex3 section");
  if (o.ok) o.note = "Delta_2 for Sym(3,R) and Herm(3,C), Delta_1 for spin factors, Delta_3 exact";
  return o;
}

// ---------------------------------------------------------------- 9

Outcome bits_are_balls() {
  Outcome o;
  double worst = 0;
  for (int n : {2, 3, 5, 9}) {
    const auto a = alg(Family::Spin, n);
    for (std::uint64_t s = 0; s < 500; ++s) {
      const auto f = random_jordan_frame(a, s);
      o.require(f.size() == 2, "spin frame of size " + std::to_string(f.size()));
      if (f.size() != 2) continue;
      double r = std::abs(f[0][n] - f[1][n]);
      for (int k = 0; k < n; ++k) r = std::max(r, std::abs(f[0][k] + f[1][k]));
      worst = std::max(worst, r);
      o.require(r <= 1e-9, "antipodality residual");
      const auto d = spectral_decompose_state(random_state(a, 1000 + s));
      o.require(d.weights.size() <= 2, "decomposition with more than two terms");
    }
  }
  if (o.ok) {
    std::ostringstream n;
    n << "2000 frames, max antipodality residual " << worst;
    o.note = n.str();
  }
  return o;
}

// ---------------------------------------------------------------- 10

Outcome tables() {
  Outcome o;
  const auto rep = table_consistency_check(mr_tables());
  o.require(rep.pass(), "consistency failures: " + std::to_string(rep.failures));
  o.require(std::find(rep.flagged_rows.begin(), rep.flagged_rows.end(), "A_n") != rep.flagged_rows.end(),
            "A_n annotation not flagged");
  long checked = 0;
  for (const auto& e : rep.entries) checked += e.status == "pass";
  if (o.ok) o.note = std::to_string(checked) + " annotated instances pass; flagged: A_n";
  return o;
}

// ---------------------------------------------------------------- 11

Outcome determinism() {
  Outcome o;
  const std::string f = kFixtures + "/";
  const std::vector<std::string> cmds = {
      "decompose --eja herm_o --m 3 --seed 5",
      "decompose --input " + f + "square_point.json",
      "decompose --input " + f + "ball3.json --seed 2",
      "check --property spectral --input " + f + "pentagon.json",
      "check --property strong-symmetry --input " + f + "square.json",
      "check --property strong-symmetry --eja herm_h --m 3 --trials 30 --seed 4",
      "check --property regular --input " + f + "cube.json",
      "check --property rank --input " + f + "herm3c.json --seed 1",
      "frames --input " + f + "pentagon.json --k 2",
      "frames --eja sym_r --m 4 --seed 9",
      "fr-polytope --eja herm_c --m 3 --seed 3",
      "fr-polytope --input " + f + "simplex2.json",
      "tables --type EIV",
      "tables --type AI --bind n=4",
      "tables --check",
      "verify-theorem --eja sym_r --m 3 --trials 100 --seed 7",
      "verify-theorem --simplex 3",
      "plot-data --input " + f + "pentagon.json",
      "plot-data --eja herm_c --m 3 --trials 50 --seed 1",
  };
  for (const auto& c : cmds) {
    int s1 = -1, s2 = -1;
    const std::string a = run(kCli + " " + c + " 2>/dev/null", &s1);
    const std::string b = run(kCli + " " + c + " 2>/dev/null", &s2);
    o.require(!a.empty() && a == b && s1 == s2, "output differs for: " + c);
    o.require(s1 == 0 || s1 == 1, "error exit for: " + c);
  }
  if (o.ok) o.note = std::to_string(cmds.size()) + " commands byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"spectral engine residuals", spectral_engine},
      {"rank conformance", family_ranks},
      {"distinguishability oracle equivalence", operational_oracle},
      {"if direction", theorem_if},
      {"converse on polytopes", converse},
      {"frame-flag bijection", bijection},
      {"orthomodular sub-frame lattices", orthomodular},
      {"Farran-Robertson extraction", fr_extraction},
      {"bits are balls", bits_are_balls},
      {"table data integrity", tables},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << o.note
              << std::endl;
  }
  return failed ? 1 : 0;
}
