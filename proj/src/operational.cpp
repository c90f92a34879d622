#include "jspec/operational.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

#include "jspec/error.hpp"
#include "jspec/lp.hpp"
#include "jspec/random.hpp"

namespace jspec {

// ---------------------------------------------------------------- effects

bool is_effect(const Polytope& p, const AffineFunctional& f) {
  if (int(f.a.size()) != p.dim()) throw InvalidInput("functional has wrong dimension");
  for (const auto& v : p.local_vertices()) {
    const Exact x = f(v);
    if (x.sign() < 0 || x > Exact(1)) return false;
  }
  return true;
}

bool is_effect_ambient(const Polytope& p, const ExactVector& a, const Exact& b) {
  if (int(a.size()) != p.ambient_dim()) throw InvalidInput("functional has wrong dimension");
  for (const auto& v : p.vertices()) {
    const Exact x = dot(a, v) + b;
    if (x.sign() < 0 || x > Exact(1)) return false;
  }
  return true;
}

bool is_effect(const EjaStateSpace& s, const EjaElement& e, double tol) {
  if (!(e.algebra() == s.algebra)) throw AlgebraMismatch("effect from another algebra");
  const auto ev = eigenvalues(e, tol);
  return ev.back() >= -tol && ev.front() <= 1 + tol;
}

AffineFunctional unit_effect(const Polytope& p) { return {ExactVector(p.dim()), Exact(1)}; }

std::pair<ExactVector, Exact> to_ambient_functional(const Polytope& p, const AffineFunctional& f) {
  // Find a with D^T a = f.a, where the columns of D are the local basis
  // directions; then a . x + b' agrees with f on the affine hull.
  const int amb = p.ambient_dim(), d = p.dim();
  ExactMatrix dt(d, amb);
  const ExactVector origin = p.to_ambient(ExactVector(d));
  for (int k = 0; k < d; ++k) {
    ExactVector unit(d);
    unit[k] = 1;
    const ExactVector dir = p.to_ambient(unit) - origin;
    for (int j = 0; j < amb; ++j) dt(k, j) = dir[j];
  }
  auto a = solve_any(dt, f.a);
  if (!a) throw Error("internal: affine hull basis is not independent");
  return {*a, f.b - dot(*a, origin)};
}

// ---------------------------------------------------------------- measurements

namespace {

AffineFunctional add(const AffineFunctional& x, const AffineFunctional& y) { return {x.a + y.a, x.b + y.b}; }
AffineFunctional sub(const AffineFunctional& x, const AffineFunctional& y) { return {x.a - y.a, x.b - y.b}; }

// Submeasurement e_1..e_k with e_i(w_j) = delta_ij on local points.
std::optional<std::vector<AffineFunctional>> submeasurement(const Polytope& p, const std::vector<ExactVector>& states) {
  const int k = int(states.size()), d = p.dim(), w = d + 1;
  LinearProgram lp(k * w);
  auto effect_row = [&](int i, const ExactVector& x) {
    ExactVector row(k * w);
    for (int c = 0; c < d; ++c) row[i * w + c] = x[c];
    row[i * w + d] = 1;
    return row;
  };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) lp.add(effect_row(i, states[j]), Relation::Equal, i == j ? 1 : 0);
  for (const auto& v : p.local_vertices()) {
    ExactVector sum(k * w);
    for (int i = 0; i < k; ++i) {
      auto row = effect_row(i, v);
      lp.add(row, Relation::GreaterEq, 0);
      sum = sum + row;
    }
    lp.add(sum, Relation::LessEq, 1);
  }
  const auto r = lp_feasible(lp);
  if (!std::holds_alternative<Feasible>(r)) return std::nullopt;
  const auto& x = std::get<Feasible>(r).witness;
  std::vector<AffineFunctional> out;
  for (int i = 0; i < k; ++i)
    out.push_back({ExactVector(x.begin() + i * w, x.begin() + i * w + d), x[i * w + d]});
  return out;
}

std::vector<AffineFunctional> complete(const Polytope& p, std::vector<AffineFunctional> effects) {
  AffineFunctional rest = unit_effect(p);
  for (const auto& e : effects) rest = sub(rest, e);
  effects[0] = add(effects[0], rest);
  return effects;
}

std::vector<ExactVector> local_states(const Polytope& p, const std::vector<int>& idx) {
  std::vector<ExactVector> out;
  for (int i : idx) {
    if (i < 0 || i >= p.num_vertices()) throw InvalidInput("vertex index out of range");
    out.push_back(p.local(i));
  }
  return out;
}

}  // namespace

std::optional<std::vector<AffineFunctional>> distinguishing_measurement(const Polytope& p,
                                                                        const std::vector<ExactVector>& states) {
  if (states.empty()) throw InvalidInput("no states given");
  std::vector<ExactVector> loc;
  for (const auto& s : states) {
    if (membership(p, s) == Membership::Outside) throw InvalidInput("state is not in the body");
    loc.push_back(*p.to_local(s));
  }
  auto sub = submeasurement(p, loc);
  if (!sub) return std::nullopt;
  return complete(p, std::move(*sub));
}

std::optional<std::vector<AffineFunctional>> distinguishing_measurement(const Polytope& p,
                                                                        const std::vector<int>& vertex_indices) {
  if (vertex_indices.empty()) throw InvalidInput("no states given");
  auto sub = submeasurement(p, local_states(p, vertex_indices));
  if (!sub) return std::nullopt;
  return complete(p, std::move(*sub));
}

std::optional<std::vector<EjaElement>> distinguishing_measurement(const EjaStateSpace& s,
                                                                  const std::vector<EjaElement>& states,
                                                                  double tol) {
  if (states.empty()) throw InvalidInput("no states given");
  for (const auto& w : states) {
    if (!(w.algebra() == s.algebra)) throw AlgebraMismatch("state from another algebra");
    if (!is_primitive_idempotent(w, tol)) throw InvalidInput("distinguishability is decided for pure states only");
  }
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      if (std::abs(inner(states[i], states[j])) > tol) return std::nullopt;
  std::vector<EjaElement> effects = states;
  EjaElement rest = EjaElement::unit(s.algebra);
  for (const auto& w : states) rest -= w;
  effects[0] += rest;
  return effects;
}

std::optional<std::vector<BallEffect>> distinguishing_measurement(const Ball& b,
                                                                  const std::vector<std::vector<double>>& states,
                                                                  double tol) {
  if (states.empty()) throw InvalidInput("no states given");
  for (const auto& x : states) {
    if (int(x.size()) != b.n) throw InvalidInput("state has wrong dimension");
    if (membership(b, x, tol) != Membership::Boundary)
      throw InvalidInput("distinguishability is decided for pure states only");
  }
  if (states.size() == 1) return std::vector<BallEffect>{{std::vector<double>(b.n, 0.0), 1.0}};
  if (states.size() > 2) return std::nullopt;
  double gap = 0;
  for (int k = 0; k < b.n; ++k) gap = std::max(gap, std::abs(states[0][k] + states[1][k]));
  if (gap > tol) return std::nullopt;
  BallEffect e1{std::vector<double>(b.n), 0.5}, e2{std::vector<double>(b.n), 0.5};
  for (int k = 0; k < b.n; ++k) {
    e1.a[k] = states[0][k] / 2;
    e2.a[k] = -states[0][k] / 2;
  }
  return std::vector<BallEffect>{e1, e2};
}

// ---------------------------------------------------------------- frames

namespace {

std::vector<VertexSet> k_subsets(int n, int k) {
  std::vector<VertexSet> out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n || k <= 0) return out;
  while (true) {
    VertexSet s = 0;
    for (int i : idx) s |= VertexSet(1) << i;
    out.push_back(s);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

void check_cap(const Polytope& p, int cap) {
  if (p.num_vertices() > cap)
    throw CapExceeded("frame enumeration: " + std::to_string(p.num_vertices()) + " vertices exceeds cap " +
                      std::to_string(cap));
}

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<VertexSet> distinguishable_subsets(const Polytope& p, int k, ExecPolicy policy) {
  const auto cands = k_subsets(p.num_vertices(), k);
  const auto ok = map_indices<char>(cands.size(), policy, [&](std::size_t i) {
    return char(submeasurement(p, local_states(p, p.indices(cands[i]))).has_value());
  });
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (ok[i]) out.push_back(cands[i]);
  return out;
}

std::vector<PolytopeFrame> enumerate_frames(const Polytope& p, int k, int cap, ExecPolicy policy) {
  check_cap(p, cap);
  if (k <= 0) throw InvalidInput("frame size must be positive");
  std::vector<PolytopeFrame> out;
  for (VertexSet s : distinguishable_subsets(p, k, policy)) {
    const auto idx = p.indices(s);
    const auto sub = *submeasurement(p, local_states(p, idx));
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    do {
      PolytopeFrame f;
      std::vector<AffineFunctional> effects;
      for (int i : order) {
        f.vertices.push_back(idx[i]);
        effects.push_back(sub[i]);
      }
      f.measurement = complete(p, std::move(effects));
      out.push_back(std::move(f));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  std::sort(out.begin(), out.end(),
            [](const PolytopeFrame& a, const PolytopeFrame& b) { return a.vertices < b.vertices; });
  return out;
}

int rank(const Polytope& p, int cap, ExecPolicy policy) {
  check_cap(p, cap);
  int k = 0;
  while (k < p.num_vertices() && !distinguishable_subsets(p, k + 1, policy).empty()) ++k;
  return k;
}

int rank(const Ball&) { return 2; }

int rank(const EjaStateSpace& s, std::uint64_t seed) {
  const auto frame = random_jordan_frame(s.algebra, seed);
  for (const auto& c : frame)
    if (!is_primitive_idempotent(c)) throw NonConvergence("rank: frame element is not primitive", 0);
  return int(frame.size());
}

std::vector<VertexSet> maximal_frame_subsets(const Polytope& p, int cap, ExecPolicy policy) {
  check_cap(p, cap);
  std::vector<std::vector<VertexSet>> by_k(1);
  while (true) {
    auto next = distinguishable_subsets(p, int(by_k.size()), policy);
    if (next.empty()) break;
    by_k.push_back(std::move(next));
  }
  std::vector<VertexSet> out;
  for (std::size_t k = 1; k < by_k.size(); ++k)
    for (VertexSet s : by_k[k]) {
      bool maximal = true;
      if (k + 1 < by_k.size())
        for (VertexSet t : by_k[k + 1])
          if ((s & ~t) == 0) {
            maximal = false;
            break;
          }
      if (maximal) out.push_back(s);
    }
  return out;
}

// ---------------------------------------------------------------- spectrality

std::string to_string(SpectralVerdict v) {
  switch (v) {
    case SpectralVerdict::Spectral: return "spectral";
    case SpectralVerdict::NotSpectral: return "not spectral";
    case SpectralVerdict::Probabilistic: return "probabilistic";
  }
  return "?";
}

bool covered_by_frames(const Polytope& p, const std::vector<VertexSet>& frames, const ExactVector& x) {
  const auto loc = p.to_local(x);
  if (!loc) return false;
  for (VertexSet s : frames)
    if (in_hull(local_states(p, p.indices(s)), *loc)) return true;
  return false;
}

namespace {

// Halfspace a . x <= b in local coordinates.
struct Halfspace {
  ExactVector a;
  Exact b;
};

struct Cell {
  std::vector<Halfspace> hs;
};

LinearProgram cell_program(const Cell& c, int extra) {
  const int d = int(c.hs.front().a.size());
  LinearProgram lp(d + extra);
  for (const auto& h : c.hs) {
    ExactVector row = h.a;
    row.resize(d + extra);
    if (extra) row[d] = 1;  // slack t
    lp.add(row, Relation::LessEq, h.b);
  }
  return lp;
}

// Max t with a_j . x + t <= b_j, t <= 1. Returns (t, x) or nullopt if empty.
std::optional<std::pair<Exact, ExactVector>> interior_point(const Cell& c) {
  const int d = int(c.hs.front().a.size());
  LinearProgram lp = cell_program(c, 1);
  ExactVector obj(d + 1);
  obj[d] = 1;
  lp.objective = obj;
  lp.set_bounds(d, std::nullopt, Exact(1));
  const auto r = lp_optimize(lp);
  if (!std::holds_alternative<Optimal>(r)) return std::nullopt;
  const auto& o = std::get<Optimal>(r);
  return std::make_pair(o.value, ExactVector(o.witness.begin(), o.witness.begin() + d));
}

Exact extreme(const Cell& c, const AffineFunctional& f, bool maximize) {
  LinearProgram lp = cell_program(c, 0);
  lp.objective = maximize ? f.a : Exact(-1) * f.a;
  const auto r = lp_optimize(lp);
  if (!std::holds_alternative<Optimal>(r)) throw Error("internal: cell program not optimal");
  const Exact v = std::get<Optimal>(r).value;
  return (maximize ? v : -v) + f.b;
}

class Subdivision {
 public:
  Subdivision(const Polytope& p, const FaceLattice& lattice, const std::vector<VertexSet>& frames)
      : p_(p), frames_(frames) {
    const int d = p.dim();
    for (const auto& f : lattice.faces())
      if (f.dim == d - 1) omega_.hs.push_back({f.certificate.a, -f.certificate.b});
    for (VertexSet s : frames) {
      if (std::popcount(s) != d + 1) continue;
      const auto idx = p.indices(s);
      ExactMatrix m(d + 1, d + 1);
      for (int j = 0; j <= d; ++j) {
        for (int r = 0; r < d; ++r) m(r, j) = p.local(idx[j])[r];
        m(d, j) = 1;
      }
      const auto inv = inverse(m);
      if (!inv) continue;
      std::vector<AffineFunctional> bary;
      for (int i = 0; i <= d; ++i) {
        AffineFunctional l{ExactVector(d), (*inv)(i, d)};
        for (int r = 0; r < d; ++r) l.a[r] = (*inv)(i, r);
        bary.push_back(std::move(l));
      }
      simplices_.push_back(std::move(bary));
    }
  }

  // Uncovered local point, or nullopt if the frame hulls cover the body.
  std::optional<ExactVector> run() { return visit(omega_); }

 private:
  std::optional<ExactVector> visit(const Cell& c) {
    const auto ip = interior_point(c);
    if (!ip || ip->first.sign() <= 0) return std::nullopt;  // no interior
    for (const auto& s : simplices_) {
      bool inside = true;
      for (const auto& l : s)
        if (extreme(c, l, false).sign() < 0) {
          inside = false;
          break;
        }
      if (inside) return std::nullopt;
    }
    for (const auto& s : simplices_)
      for (const auto& l : s) {
        if (extreme(c, l, false).sign() >= 0 || extreme(c, l, true).sign() <= 0) continue;
        Cell lo = c, hi = c;
        lo.hs.push_back({l.a, -l.b});              // l <= 0
        hi.hs.push_back({Exact(-1) * l.a, l.b});   // l >= 0
        if (auto x = visit(lo)) return x;
        return visit(hi);
      }
    // No frame hyperplane cuts this cell and no full frame simplex contains
    // it, so its interior misses every full-dimensional frame hull.
    return perturb(c, ip->second, ip->first);
  }

  // Moves along a moment curve until the point also avoids lower-dimensional hulls.
  std::optional<ExactVector> perturb(const Cell& c, const ExactVector& x0, const Exact& t) {
    const int d = int(x0.size());
    Exact l1max;
    for (const auto& h : c.hs) {
      Exact l1;
      for (const auto& v : h.a) l1 += abs(v);
      l1max = std::max(l1max, l1);
    }
    Exact s = std::min(Exact(Rational(1, 2)), t / (Exact(2) * (Exact(1) + l1max)));
    for (int attempt = 0; attempt < 200; ++attempt) {
      ExactVector x = x0;
      Exact pw = s;
      for (int k = 0; k < d; ++k) {
        x[k] += pw;
        pw *= s;
      }
      bool hit = false;
      for (VertexSet f : frames_)
        if (in_hull(local_states(p_, p_.indices(f)), x)) {
          hit = true;
          break;
        }
      if (!hit) return x;
      s /= Exact(2);
    }
    throw NonConvergence("could not isolate an uncovered point", 0);
  }

  const Polytope& p_;
  const std::vector<VertexSet>& frames_;
  Cell omega_;
  std::vector<std::vector<AffineFunctional>> simplices_;
};

// Double-precision barycentric test used to filter samples before exact certification.
struct FloatSimplex {
  std::vector<double> origin;
  std::vector<std::vector<double>> dirs;
  std::vector<std::vector<double>> gram_inv;
};

std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
  const int n = int(a.size());
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

FloatSimplex float_simplex(const Polytope& p, VertexSet s) {
  const auto idx = p.indices(s);
  FloatSimplex f;
  f.origin = to_doubles(p.local(idx[0]));
  for (std::size_t i = 1; i < idx.size(); ++i) {
    auto v = to_doubles(p.local(idx[i]));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= f.origin[k];
    f.dirs.push_back(std::move(v));
  }
  const int m = int(f.dirs.size());
  std::vector<std::vector<double>> g(m, std::vector<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (std::size_t k = 0; k < f.origin.size(); ++k) g[i][j] += f.dirs[i][k] * f.dirs[j][k];
  f.gram_inv = invert(std::move(g));
  return f;
}

bool float_contains(const FloatSimplex& f, const std::vector<double>& x, double tol) {
  const int m = int(f.dirs.size()), d = int(x.size());
  std::vector<double> y(d), rhs(m, 0.0), mu(m, 0.0);
  for (int k = 0; k < d; ++k) y[k] = x[k] - f.origin[k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < d; ++k) rhs[i] += f.dirs[i][k] * y[k];
  double sum = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) mu[i] += f.gram_inv[i][j] * rhs[j];
    if (mu[i] < -tol) return false;
    sum += mu[i];
  }
  if (sum > 1 + tol) return false;
  double res = 0;
  for (int k = 0; k < d; ++k) {
    double r = y[k];
    for (int i = 0; i < m; ++i) r -= mu[i] * f.dirs[i][k];
    res += r * r;
  }
  return std::sqrt(res) <= tol;
}

}  // namespace

PolytopeSpectrality is_spectral(const Polytope& p, const SpectralityOptions& opt) {
  check_cap(p, opt.cap);
  PolytopeSpectrality out;
  std::vector<std::vector<VertexSet>> by_k(1);
  while (true) {
    auto next = distinguishable_subsets(p, int(by_k.size()), opt.policy);
    if (next.empty()) break;
    by_k.push_back(std::move(next));
  }
  out.rank = int(by_k.size()) - 1;
  for (int k = 1; k <= out.rank; ++k) out.frames_by_k[k] = long(by_k[k].size()) * factorial(k);
  out.maximal_frames = maximal_frame_subsets(p, opt.cap, opt.policy);

  for (VertexSet s : out.maximal_frames) {
    const auto hull = local_states(p, p.indices(s));
    bool all = true;
    for (const auto& v : p.local_vertices())
      if (!in_hull(hull, v)) {
        all = false;
        break;
      }
    if (all) {
      out.verdict = SpectralVerdict::Spectral;
      out.method = "a single frame hull contains every vertex";
      return out;
    }
  }

  if (p.dim() <= 3) {
    const FaceLattice lattice = exposed_faces(p, opt.cap, opt.policy);
    Subdivision sub(p, lattice, out.maximal_frames);
    out.method = "exact subdivision by frame-simplex hyperplanes";
    if (auto x = sub.run()) {
      out.verdict = SpectralVerdict::NotSpectral;
      out.counterexample = p.to_ambient(*x);
    } else {
      out.verdict = SpectralVerdict::Spectral;
    }
    return out;
  }

  // Sampling: sample i depends only on (seed, i).
  out.method = "sampling";
  out.samples = opt.samples;
  std::vector<FloatSimplex> fs;
  for (VertexSet s : out.maximal_frames) fs.push_back(float_simplex(p, s));
  auto sample = [&](long i) {
    Rng rng(mix_seed(opt.seed, std::uint64_t(i)));
    std::uniform_int_distribution<int> w(1, 1000);
    ExactVector x(p.dim());
    long total = 0;
    for (const auto& v : p.local_vertices()) {
      const int wi = w(rng);
      total += wi;
      x = x + Exact(wi) * v;
    }
    return (Exact(1) / Exact(total)) * x;
  };
  const auto miss = map_indices<char>(std::size_t(opt.samples), opt.policy, [&](std::size_t i) {
    const auto x = to_doubles(sample(long(i)));
    for (const auto& f : fs)
      if (float_contains(f, x, 1e-9)) return char(0);
    return char(1);
  });
  for (long i = 0; i < opt.samples; ++i) {
    if (!miss[i]) continue;
    const ExactVector x = sample(i);
    if (!covered_by_frames(p, out.maximal_frames, p.to_ambient(x))) {
      out.verdict = SpectralVerdict::NotSpectral;
      out.counterexample = p.to_ambient(x);
      return out;
    }
  }
  out.verdict = SpectralVerdict::Probabilistic;
  return out;
}

EjaConvexDecomposition spectral_decompose_state(const EjaElement& state, double tol) {
  if (std::abs(trace(state) - 1) > std::max(tol, 1e-9)) throw InvalidInput("element does not have unit trace");
  const auto dec = spectral_decompose(state, SpectralOptions{});
  if (dec.eigenvalues.back() < -tol) throw InvalidInput("element has a negative eigenvalue; not a state");
  EjaConvexDecomposition out;
  EjaElement sum = EjaElement::zero(state.algebra());
  for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
    if (dec.eigenvalues[i] <= tol) continue;
    out.weights.push_back(dec.eigenvalues[i]);
    out.frame.push_back(dec.frame[i]);
    sum += dec.eigenvalues[i] * dec.frame[i];
  }
  out.residual = norm(sum - state);
  return out;
}

BallDecomposition spectral_decompose_state(const Ball& b, const std::vector<double>& x) {
  if (membership(b, x) == Membership::Outside) throw InvalidInput("point is not in the ball");
  double r = 0;
  for (double v : x) r += v * v;
  r = std::sqrt(r);
  BallDecomposition out;
  out.point.assign(b.n, 0.0);
  if (r < 1e-15) {
    out.point[0] = 1;
    out.weight = 0.5;
    return out;
  }
  for (int k = 0; k < b.n; ++k) out.point[k] = x[k] / r;
  out.weight = (1 + std::min(r, 1.0)) / 2;
  return out;
}

// ---------------------------------------------------------------- faces

VertexSet face_of_frame(const FaceLattice& lattice, const std::vector<int>& frame) {
  VertexSet s = 0;
  for (int i : frame) s |= VertexSet(1) << i;
  return lattice.join(s, 0);
}

VertexSet complement_face(const Polytope& p, const FaceLattice& lattice, VertexSet face) {
  if (!lattice.is_face(face)) throw InvalidInput("not a face");
  if (p.num_vertices() != p.dim() + 1)
    throw Unsupported("face complements are computed for simplices only");
  return p.all() & ~face;
}

EjaElement face_of_frame(const std::vector<EjaElement>& frame) {
  if (frame.empty()) throw InvalidInput("empty frame");
  EjaElement p = EjaElement::zero(frame[0].algebra());
  for (const auto& c : frame) p += c;
  return p;
}

EjaElement complement_face(const EjaElement& p) { return EjaElement::unit(p.algebra()) - p; }

bool idempotent_leq(const EjaElement& p, const EjaElement& q, double tol) {
  return norm(jordan_product(p, q) - p) <= tol;
}

EjaElement idempotent_join(const EjaElement& p, const EjaElement& q, double tol) {
  EjaElement out = EjaElement::zero(p.algebra());
  SpectralOptions opt;
  opt.tol = 1e-7;
  for (const auto& t : coarse_decompose(p + q, opt))
    if (t.eigenvalue > tol * 100) out += t.idempotent;
  return out;
}

EjaElement idempotent_meet(const EjaElement& p, const EjaElement& q, double tol) {
  EjaElement out = EjaElement::zero(p.algebra());
  SpectralOptions opt;
  opt.tol = 1e-7;
  for (const auto& t : coarse_decompose(quadratic_rep(p, q), opt))
    if (std::abs(t.eigenvalue - 1) <= tol * 100) out += t.idempotent;
  return out;
}

SubframeLattice subframe_lattice(const std::vector<EjaElement>& frame, double tol) {
  SubframeLattice l;
  l.rank = int(frame.size());
  const int n = 1 << l.rank;
  const auto& alg = frame.at(0).algebra();
  for (int s = 0; s < n; ++s) {
    EjaElement p = EjaElement::zero(alg);
    for (int i = 0; i < l.rank; ++i)
      if (s & (1 << i)) p += frame[i];
    l.idempotents.push_back(std::move(p));
  }
  auto match = [&](const EjaElement& x) {
    int best = 0;
    double dist = norm(x - l.idempotents[0]);
    for (int s = 1; s < n; ++s) {
      const double d = norm(x - l.idempotents[s]);
      if (d < dist) {
        dist = d;
        best = s;
      }
    }
    l.max_match_residual = std::max(l.max_match_residual, dist);
    return best;
  };
  l.meet.assign(n, std::vector<int>(n));
  l.join.assign(n, std::vector<int>(n));
  l.leq.assign(n, std::vector<bool>(n));
  l.complement.resize(n);
  for (int s = 0; s < n; ++s) {
    l.complement[s] = match(complement_face(l.idempotents[s]));
    for (int t = 0; t < n; ++t) {
      l.meet[s][t] = match(idempotent_meet(l.idempotents[s], l.idempotents[t], tol));
      l.join[s][t] = match(idempotent_join(l.idempotents[s], l.idempotents[t], tol));
      l.leq[s][t] = idempotent_leq(l.idempotents[s], l.idempotents[t], tol);
    }
  }
  return l;
}

OrthomodularReport check_orthomodular(const SubframeLattice& l) {
  OrthomodularReport r;
  const int n = int(l.complement.size());
  const int top = n - 1;
  for (int f = 0; f < n; ++f) {
    const int fc = l.complement[f];
    if (l.complement[fc] != f) r.involution = false;
    if (l.meet[f][fc] != 0 || l.join[f][fc] != top) r.complement_laws = false;
    for (int g = 0; g < n; ++g) {
      ++r.pairs;
      if (!l.leq[f][g]) continue;
      if (!l.leq[l.complement[g]][fc]) r.order_reversal = false;
      if (l.join[f][l.meet[fc][g]] != g) r.orthomodular = false;
    }
  }
  return r;
}

}  // namespace jspec
