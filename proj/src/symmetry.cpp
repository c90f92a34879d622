#include "jspec/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "jspec/error.hpp"
#include "jspec/operational.hpp"
#include "jspec/random.hpp"

namespace jspec {

// ---------------------------------------------------------------- polytope groups

namespace {

std::vector<int> affine_basis(const Polytope& p) {
  std::vector<int> basis = {0};
  ExactMatrix m(0, p.dim());
  for (int i = 1; i < p.num_vertices() && int(basis.size()) <= p.dim(); ++i) {
    ExactMatrix trial(int(basis.size()), p.dim());
    for (int r = 0; r + 1 < int(basis.size()); ++r)
      for (int c = 0; c < p.dim(); ++c) trial(r, c) = p.local(basis[r + 1])[c] - p.local(0)[c];
    for (int c = 0; c < p.dim(); ++c) trial(int(basis.size()) - 1, c) = p.local(i)[c] - p.local(0)[c];
    if (matrix_rank(trial) == int(basis.size())) basis.push_back(i);
  }
  return basis;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  // (a after b)(i) = a[b[i]]
  std::vector<int> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

}  // namespace

std::vector<PolytopeAutomorphism> automorphism_group(const Polytope& p, int cap) {
  const int n = p.num_vertices(), d = p.dim();
  if (n > cap)
    throw CapExceeded("automorphism group: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(cap));
  std::map<ExactVector, int> index;
  for (int i = 0; i < n; ++i) index[p.local(i)] = i;
  const auto basis = affine_basis(p);
  ExactMatrix x(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) x(r, c) = p.local(basis[c + 1])[r] - p.local(basis[0])[r];
  const ExactMatrix x_inv = d ? *inverse(x) : ExactMatrix(0, 0);

  std::vector<PolytopeAutomorphism> group;
  std::vector<int> image(basis.size());
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> assign = [&](std::size_t pos) {
    if (pos == basis.size()) {
      ExactMatrix y(d, d);
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) y(r, c) = p.local(image[c + 1])[r] - p.local(image[0])[r];
      PolytopeAutomorphism g;
      g.linear = y * x_inv;
      g.shift = p.local(image[0]) - g.linear * p.local(basis[0]);
      g.perm.assign(n, -1);
      std::vector<bool> hit(n, false);
      for (int i = 0; i < n; ++i) {
        const auto it = index.find(g.apply(p.local(i)));
        if (it == index.end() || hit[it->second]) return;
        hit[it->second] = true;
        g.perm[i] = it->second;
      }
      group.push_back(std::move(g));
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      image[pos] = v;
      assign(pos + 1);
      used[v] = false;
    }
  };
  assign(0);
  std::sort(group.begin(), group.end(),
            [](const PolytopeAutomorphism& a, const PolytopeAutomorphism& b) { return a.perm < b.perm; });
  return group;
}

bool is_group(const std::vector<PolytopeAutomorphism>& g) {
  if (g.empty()) return false;
  std::set<std::vector<int>> perms;
  for (const auto& x : g) perms.insert(x.perm);
  if (perms.size() != g.size()) return false;
  std::vector<int> id(g[0].perm.size());
  std::iota(id.begin(), id.end(), 0);
  if (!perms.count(id)) return false;
  for (const auto& a : g) {
    std::vector<int> inv(a.perm.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[a.perm[i]] = int(i);
    if (!perms.count(inv)) return false;
    for (const auto& b : g)
      if (!perms.count(compose(a.perm, b.perm))) return false;
  }
  return true;
}

Tuple act(const PolytopeAutomorphism& g, const Tuple& t) {
  Tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = g.perm[t[i]];
  return out;
}

VertexSet act(const PolytopeAutomorphism& g, VertexSet s) {
  VertexSet out = 0;
  for (int i = 0; i < int(g.perm.size()); ++i)
    if (s & (VertexSet(1) << i)) out |= VertexSet(1) << g.perm[i];
  return out;
}

Flag act(const PolytopeAutomorphism& g, const Flag& f) {
  Flag out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = act(g, f[i]);
  return out;
}

namespace {

template <class T>
std::vector<std::vector<int>> orbits_of(const std::vector<PolytopeAutomorphism>& g, const std::vector<T>& items) {
  std::map<T, int> index;
  for (int i = 0; i < int(items.size()); ++i) index[items[i]] = i;
  std::vector<int> orbit_of(items.size(), -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < int(items.size()); ++i) {
    if (orbit_of[i] >= 0) continue;
    std::set<int> members;
    for (const auto& x : g) {
      const auto it = index.find(act(x, items[i]));
      if (it == index.end()) throw InvalidInput("item set is not invariant under the group");
      members.insert(it->second);
    }
    for (int m : members) orbit_of[m] = int(out.size());
    out.emplace_back(members.begin(), members.end());
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> orbits(const std::vector<PolytopeAutomorphism>& g, const std::vector<Tuple>& items) {
  return orbits_of(g, items);
}

std::vector<std::vector<int>> flag_orbits(const std::vector<PolytopeAutomorphism>& g, const std::vector<Flag>& items) {
  return orbits_of(g, items);
}

StrongSymmetryReport is_strongly_symmetric(const Polytope& p, int cap, ExecPolicy policy) {
  StrongSymmetryReport r;
  const auto group = automorphism_group(p, cap);
  r.group_order = int(group.size());
  r.rank = rank(p, cap, policy);
  for (int k = 1; k <= r.rank; ++k) {
    std::vector<Tuple> tuples;
    for (const auto& f : enumerate_frames(p, k, cap, policy)) tuples.push_back(f.vertices);
    const auto orb = orbits(group, tuples);
    FrameOrbits fo;
    fo.k = k;
    fo.frames = long(tuples.size());
    for (const auto& o : orb) {
      fo.orbit_sizes.push_back(long(o.size()));
      fo.representatives.push_back(tuples[o.front()]);
    }
    if (orb.size() > 1) {
      r.strongly_symmetric = false;
      if (!r.witness) r.witness = std::make_pair(fo.representatives[0], fo.representatives[1]);
    }
    r.by_k.push_back(std::move(fo));
  }
  return r;
}

bool frames_in_different_orbits(const Polytope& p, const Tuple& a, const Tuple& b, int cap) {
  if (a.size() != b.size()) return true;
  for (const auto& g : automorphism_group(p, cap))
    if (act(g, a) == b) return false;
  return true;
}

RegularityReport is_regular(const Polytope& p, int cap) {
  RegularityReport r;
  const auto group = automorphism_group(p, cap);
  r.group_order = int(group.size());
  const auto fl = maximal_flags(exposed_faces(p, std::max(cap, 14)));
  r.maximal_flags = long(fl.size());
  const auto orb = flag_orbits(group, fl);
  for (const auto& o : orb) r.orbit_sizes.push_back(long(o.size()));
  r.regular = orb.size() == 1;
  if (!r.regular) r.witness = std::make_pair(fl[orb[0].front()], fl[orb[1].front()]);
  return r;
}

BijectionReport frame_flag_bijection(const Polytope& p, int cap) {
  if (is_spectral(p, SpectralityOptions{cap}).verdict != SpectralVerdict::Spectral ||
      !is_strongly_symmetric(p, cap).strongly_symmetric)
    throw InvalidInput("frame-flag bijection requires a spectral, strongly symmetric body");
  const auto lattice = exposed_faces(p, std::max(cap, 14));
  const auto fl = maximal_flags(lattice);
  const std::set<Flag> all(fl.begin(), fl.end());
  const int r = rank(p, cap);
  BijectionReport out;
  out.flags = long(all.size());
  std::set<Flag> images;
  bool valid = true;
  for (const auto& f : enumerate_frames(p, r, cap)) {
    ++out.frames;
    Flag chain;
    VertexSet s = 0;
    for (int v : f.vertices) {
      s |= VertexSet(1) << v;
      chain.push_back(lattice.join(s, 0));
    }
    if (!all.count(chain)) valid = false;
    images.insert(chain);
  }
  out.images = long(images.size());
  out.bijective = valid && out.images == out.frames && images == all;
  return out;
}

BijectionReport frame_flag_bijection(const std::vector<EjaElement>& frame) {
  const auto l = subframe_lattice(frame);
  const int r = l.rank, n = 1 << r, top = n - 1;
  // Maximal chains of the computed lattice, built from its order relation.
  auto covers = [&](int s, int t) {
    if (s == t || !l.leq[s][t]) return false;
    for (int u = 0; u < n; ++u)
      if (u != s && u != t && l.leq[s][u] && l.leq[u][t]) return false;
    return true;
  };
  std::set<Flag> all;
  Flag cur;
  std::function<void(int)> up = [&](int s) {
    if (s == top) {
      all.insert(cur);
      return;
    }
    for (int t = 0; t < n; ++t)
      if (covers(s, t)) {
        cur.push_back(VertexSet(t));
        up(t);
        cur.pop_back();
      }
  };
  up(0);
  BijectionReport out;
  out.flags = long(all.size());
  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::set<Flag> images;
  bool valid = true;
  do {
    ++out.frames;
    Flag chain;
    int s = 0;
    for (int i : order) {
      s = l.join[s][1 << i];
      chain.push_back(VertexSet(s));
    }
    if (!all.count(chain)) valid = false;
    images.insert(chain);
  } while (std::next_permutation(order.begin(), order.end()));
  out.images = long(images.size());
  out.bijective = valid && out.images == out.frames && images == all;
  return out;
}

// ---------------------------------------------------------------- EJA transporters

EjaElement EjaAutomorphism::apply(const EjaElement& x) const {
  if (!(x.algebra() == algebra)) throw AlgebraMismatch("automorphism applied to another algebra");
  const int n = algebra.dim();
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[i] += matrix[i][j] * x[j];
  return EjaElement(algebra, std::move(y));
}

namespace {

using QMatrix = std::vector<std::vector<Quaternion>>;

QMatrix to_quaternions(const HermitianMatrix& a) {
  QMatrix q(a.m, std::vector<Quaternion>(a.m));
  for (int i = 0; i < a.m; ++i)
    for (int j = 0; j < a.m; ++j) q[i][j] = a(i, j).lo();
  return q;
}

HermitianMatrix from_quaternions(const QMatrix& q) {
  HermitianMatrix a(int(q.size()));
  for (int i = 0; i < a.m; ++i)
    for (int j = 0; j < a.m; ++j) a(i, j) = Octonion(q[i][j], Quaternion{});
  return a;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size();
  QMatrix c(n, std::vector<Quaternion>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] = c[i][j] + a[i][k] * b[k][j];
  return c;
}

QMatrix adjoint(const QMatrix& a) {
  const std::size_t n = a.size();
  QMatrix c(n, std::vector<Quaternion>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = a[j][i].conj();
  return c;
}

// Columns are unit vectors v_i with v_i v_i^dagger = frame[i]. Each v_i is the
// column of the projection through its largest diagonal entry, scaled so that
// entry becomes positive real.
QMatrix frame_unitary(const std::vector<EjaElement>& frame) {
  const int m = frame[0].algebra().param();
  QMatrix u(m, std::vector<Quaternion>(m));
  for (int i = 0; i < m; ++i) {
    const HermitianMatrix pm = to_matrix(frame[i]);
    int j = 0;
    for (int r = 1; r < m; ++r)
      if (pm(r, r).re() > pm(j, j).re()) j = r;
    const double s = std::sqrt(std::max(pm(j, j).re(), 1e-300));
    for (int r = 0; r < m; ++r) u[r][i] = (1.0 / s) * pm(r, j).lo();
  }
  return u;
}

std::vector<std::vector<double>> matrix_of(const AlgebraDescriptor& alg,
                                           const std::function<EjaElement(const EjaElement&)>& f) {
  const int n = alg.dim();
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    const auto col = f(EjaElement::basis(alg, k));
    for (int i = 0; i < n; ++i) m[i][k] = col[i];
  }
  return m;
}

std::vector<double> spin_direction(const EjaElement& c) {
  const int n = c.algebra().param();
  std::vector<double> u(n);
  double len = 0;
  for (int k = 0; k < n; ++k) {
    u[k] = c[k];
    len += u[k] * u[k];
  }
  len = std::sqrt(len);
  if (len < 1e-12) throw InvalidInput("spin idempotent has no direction");
  for (double& x : u) x /= len;
  return u;
}

void check_frame(const std::vector<EjaElement>& f) {
  if (f.empty()) throw InvalidInput("empty frame");
  const auto& alg = f[0].algebra();
  if (int(f.size()) != alg.rank()) throw InvalidInput("transporter needs complete Jordan frames");
  for (const auto& c : f) {
    if (!(c.algebra() == alg)) throw AlgebraMismatch("frame elements from different algebras");
    if (!is_primitive_idempotent(c, 1e-8)) throw InvalidInput("frame element is not a primitive idempotent");
  }
  const auto r = frame_residuals(f);
  if (r.orthogonality > 1e-8 || r.completeness > 1e-8) throw InvalidInput("not a Jordan frame");
}

}  // namespace

EjaAutomorphism jordan_frame_transporter(const std::vector<EjaElement>& a, const std::vector<EjaElement>& b) {
  check_frame(a);
  check_frame(b);
  const AlgebraDescriptor alg = a[0].algebra();
  if (!(b[0].algebra() == alg)) throw AlgebraMismatch("frames from different algebras");
  EjaAutomorphism t{alg, "", {}};
  switch (alg.family()) {
    case Family::HermO:
      throw Unsupported("Jordan-frame transporters for Herm(3,O) are not constructed");
    case Family::Spin: {
      const int n = alg.param();
      const auto ua = spin_direction(a[0]), ub = spin_direction(b[0]);
      std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
      double c = 0;
      for (int k = 0; k < n; ++k) c += ua[k] * ub[k];
      c = std::clamp(c, -1.0, 1.0);
      std::vector<double> w(n);
      double wl = 0;
      for (int k = 0; k < n; ++k) {
        w[k] = ub[k] - c * ua[k];
        wl += w[k] * w[k];
      }
      wl = std::sqrt(wl);
      if (n == 1) {
        t.kind = c > 0 ? "spin-rotation" : "spin-reflection";
        r[0][0] = c > 0 ? 1 : -1;
      } else {
        if (wl < 1e-12) {
          // Parallel or antiparallel: rotate in a plane containing ua.
          int j = 0;
          for (int k = 1; k < n; ++k)
            if (std::abs(ua[k]) < std::abs(ua[j])) j = k;
          for (int k = 0; k < n; ++k) w[k] = (k == j ? 1.0 : 0.0) - ua[j] * ua[k];
          wl = 0;
          for (double x : w) wl += x * x;
          wl = std::sqrt(wl);
        }
        for (double& x : w) x /= wl;
        const double s = std::sqrt(std::max(0.0, 1 - c * c));
        // Rotation by angle acos(c) in the plane (ua, w).
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            r[i][j] = (i == j ? 1.0 : 0.0) + s * (w[i] * ua[j] - ua[i] * w[j]) +
                      (c - 1) * (ua[i] * ua[j] + w[i] * w[j]);
        t.kind = "spin-rotation";
      }
      t.matrix.assign(n + 1, std::vector<double>(n + 1, 0.0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.matrix[i][j] = r[i][j];
      t.matrix[n][n] = 1;
      return t;
    }
    default: {
      const QMatrix u = multiply(frame_unitary(b), adjoint(frame_unitary(a)));
      const QMatrix ud = adjoint(u);
      t.kind = alg.family() == Family::SymR ? "orthogonal" : (alg.family() == Family::HermC ? "unitary" : "symplectic");
      t.matrix = matrix_of(alg, [&](const EjaElement& x) {
        return from_matrix(alg, from_quaternions(multiply(multiply(u, to_quaternions(to_matrix(x))), ud)));
      });
      return t;
    }
  }
}

double TransporterResiduals::max() const {
  return std::max({mapping, orthogonality, unit, cone, spectrum});
}

TransporterResiduals check_transporter(const EjaAutomorphism& t, const std::vector<EjaElement>& a,
                                       const std::vector<EjaElement>& b, std::uint64_t seed) {
  TransporterResiduals r;
  const auto& alg = t.algebra;
  for (std::size_t i = 0; i < a.size(); ++i) r.mapping = std::max(r.mapping, norm(t.apply(a[i]) - b[i]));
  const int n = alg.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += t.matrix[k][i] * t.matrix[k][j];
      r.orthogonality = std::max(r.orthogonality, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  const auto e = EjaElement::unit(alg);
  r.unit = norm(t.apply(e) - e);
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto y = random_element(alg, mix_seed(seed, 2 * s));
    const auto ev = eigenvalues(t.apply(jordan_product(y, y)));
    r.cone = std::max(r.cone, -ev.back());
    const auto x = random_element(alg, mix_seed(seed, 2 * s + 1));
    const auto e1 = eigenvalues(x), e2 = eigenvalues(t.apply(x));
    for (std::size_t k = 0; k < std::min(e1.size(), e2.size()); ++k)
      r.spectrum = std::max(r.spectrum, std::abs(e1[k] - e2[k]));
    if (e1.size() != e2.size()) r.spectrum = std::max(r.spectrum, 1.0);
  }
  return r;
}

std::vector<EjaElement> extend_frame(const std::vector<EjaElement>& partial, std::uint64_t seed) {
  if (partial.empty()) throw InvalidInput("empty partial frame");
  const auto& alg = partial[0].algebra();
  const int r = alg.rank(), k = int(partial.size());
  if (k == r) return partial;
  if (k > r) throw InvalidInput("partial frame longer than the rank");
  const EjaElement p = face_of_frame(partial), q = complement_face(p);
  // Separate the face of q from p by lifting p's eigenvalue far above U_q(w).
  const EjaElement z = quadratic_rep(q, random_element(alg, seed));
  const double lift = 10 * (1 + norm(z));
  SpectralOptions opt;
  opt.seed = seed;
  const auto dec = spectral_decompose(z + lift * p, opt);
  std::vector<EjaElement> out = partial;
  for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i)
    if (dec.eigenvalues[i] < lift / 2) out.push_back(dec.frame[i]);
  if (int(out.size()) != r) throw NonConvergence("frame extension produced the wrong number of idempotents", 0);
  return out;
}

EjaStrongSymmetryReport verify_strong_symmetry_eja(const AlgebraDescriptor& alg, int trials, std::uint64_t seed,
                                                   double tol, ExecPolicy policy) {
  EjaStrongSymmetryReport rep{alg, false, 0, 0, 0.0, {}};
  if (alg.family() == Family::HermO) {
    rep.unsupported = true;
    return rep;
  }
  rep.trials = trials;
  rep.results = map_indices<EjaTrial>(std::size_t(trials), policy, [&](std::size_t t) {
    EjaTrial res;
    res.k = 1 + int(t) % alg.rank();
    try {
      auto a = random_jordan_frame(alg, mix_seed(seed, 4 * t));
      auto b = random_jordan_frame(alg, mix_seed(seed, 4 * t + 1));
      a.erase(a.begin() + res.k, a.end());
      b.erase(b.begin() + res.k, b.end());
      const auto fa = extend_frame(a, mix_seed(seed, 4 * t + 2));
      const auto fb = extend_frame(b, mix_seed(seed, 4 * t + 3));
      const auto tr = jordan_frame_transporter(fa, fb);
      res.residual = check_transporter(tr, fa, fb, mix_seed(seed, 4 * t)).max();
      res.ok = res.residual <= tol;
    } catch (const std::exception& e) {
      res.error = e.what();
      res.ok = false;
    }
    return res;
  });
  for (const auto& r : rep.results) {
    if (r.ok) ++rep.passed;
    rep.max_residual = std::max(rep.max_residual, r.residual);
  }
  return rep;
}

}  // namespace jspec
