#include "jspec/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "jspec/error.hpp"
#include "jspec/lp.hpp"

namespace jspec {

namespace {

ExactMatrix columns(const std::vector<ExactVector>& cols, int rows) {
  ExactMatrix m(rows, int(cols.size()));
  for (int j = 0; j < int(cols.size()); ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

int affine_rank(const std::vector<ExactVector>& pts) {
  if (pts.size() <= 1) return int(pts.size()) - 1;
  ExactMatrix m(int(pts.size()) - 1, int(pts[0].size()));
  for (int i = 1; i < int(pts.size()); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
  return matrix_rank(m);
}

}  // namespace

Polytope::Polytope(std::vector<ExactVector> vertices, std::string name) {
  *this = unchecked(std::move(vertices), std::move(name));
  for (int i = 0; i < num_vertices(); ++i) {
    std::vector<ExactVector> others;
    for (int j = 0; j < num_vertices(); ++j)
      if (j != i) others.push_back(local_[j]);
    if (!others.empty() && in_hull(others, local_[i]))
      throw InvalidInput("vertex " + std::to_string(i) + " is not extremal");
  }
}

Polytope Polytope::unchecked(std::vector<ExactVector> vertices, std::string name) {
  if (vertices.empty()) throw InvalidInput("polytope needs at least one vertex");
  if (int(vertices.size()) > kMaxVertices) throw CapExceeded("too many vertices for a vertex bitmask");
  Polytope p;
  p.name_ = std::move(name);
  p.ambient_ = int(vertices[0].size());
  for (const auto& v : vertices)
    if (int(v.size()) != p.ambient_) throw InvalidInput("vertices have inconsistent dimensions");
  std::set<std::vector<std::string>> seen;
  for (const auto& v : vertices) {
    std::vector<std::string> key;
    for (const auto& x : v) key.push_back(to_string(x));
    if (!seen.insert(key).second) throw InvalidInput("duplicate vertex");
  }
  p.vertices_ = std::move(vertices);
  p.build_frame();
  return p;
}

void Polytope::build_frame() {
  origin_ = vertices_[0];
  basis_.clear();
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    auto trial = basis_;
    trial.push_back(vertices_[i] - origin_);
    if (matrix_rank(columns(trial, ambient_)) == int(trial.size())) basis_ = std::move(trial);
  }
  local_.clear();
  for (const auto& v : vertices_) {
    auto x = to_local(v);
    if (!x) throw Error("internal: vertex off its own affine hull");
    local_.push_back(std::move(*x));
  }
}

std::optional<ExactVector> Polytope::to_local(const ExactVector& x) const {
  if (int(x.size()) != ambient_) return std::nullopt;
  return solve_any(columns(basis_, ambient_), x - origin_);
}

ExactVector Polytope::to_ambient(const ExactVector& local) const {
  ExactVector x = origin_;
  for (int k = 0; k < dim(); ++k) x = x + local[k] * basis_[k];
  return x;
}

std::vector<int> Polytope::indices(VertexSet s) const {
  std::vector<int> out;
  for (int i = 0; i < num_vertices(); ++i)
    if (s & (VertexSet(1) << i)) out.push_back(i);
  return out;
}

Polytope Polytope::subset(VertexSet s) const {
  std::vector<ExactVector> vs;
  for (int i : indices(s)) vs.push_back(vertices_[i]);
  return unchecked(std::move(vs), name_);
}

int Polytope::find_vertex(const ExactVector& x) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices_[i] == x) return i;
  return -1;
}

std::string body_name(const ConvexBody& body) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polytope>) return b.name().empty() ? "polytope" : b.name();
        else if constexpr (std::is_same_v<T, Ball>) return "ball(" + std::to_string(b.n) + ")";
        else return b.algebra.name();
      },
      body);
}

// ---------------------------------------------------------------- faces

std::optional<AffineFunctional> certify_exposed(const Polytope& p, VertexSet s) {
  const int d = p.dim();
  LinearProgram lp(d + 1);  // a_1..a_d, beta
  for (int i = 0; i < p.num_vertices(); ++i) {
    ExactVector row = p.local(i);
    row.push_back(Exact(-1));
    if (s & (VertexSet(1) << i)) lp.add(row, Relation::Equal, 0);
    else lp.add(row, Relation::LessEq, -1);
  }
  const auto r = lp_feasible(lp);
  if (!std::holds_alternative<Feasible>(r)) return std::nullopt;
  const auto& w = std::get<Feasible>(r).witness;
  AffineFunctional f{ExactVector(w.begin(), w.begin() + d), -w[d]};
  return f;
}

FaceLattice::FaceLattice(const Polytope& p, std::vector<Face> faces) : faces_(std::move(faces)), top_(p.all()) {
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
}

int FaceLattice::index_of(VertexSet s) const {
  for (int i = 0; i < int(faces_.size()); ++i)
    if (faces_[i].vertices == s) return i;
  return -1;
}

int FaceLattice::dim_of(VertexSet s) const {
  const int i = index_of(s);
  if (i < 0) throw InvalidInput("not a face");
  return faces_[i].dim;
}

VertexSet FaceLattice::meet(VertexSet a, VertexSet b) const {
  VertexSet best = 0;
  int best_dim = -1;
  for (const auto& f : faces_)
    if ((f.vertices & ~(a & b)) == 0 && f.dim > best_dim) {
      best = f.vertices;
      best_dim = f.dim;
    }
  return best;
}

VertexSet FaceLattice::join(VertexSet a, VertexSet b) const {
  for (const auto& f : faces_)  // ascending dimension
    if (((a | b) & ~f.vertices) == 0) return f.vertices;
  return top_;
}

std::vector<VertexSet> FaceLattice::facets_of(VertexSet s) const {
  const int d = dim_of(s);
  std::vector<VertexSet> out;
  for (const auto& f : faces_)
    if (f.dim == d - 1 && (f.vertices & ~s) == 0 && f.vertices != s) out.push_back(f.vertices);
  return out;
}

FaceLattice exposed_faces(const Polytope& p, int cap, ExecPolicy policy) {
  if (p.num_vertices() > cap)
    throw CapExceeded("face enumeration: " + std::to_string(p.num_vertices()) + " vertices exceeds cap " +
                      std::to_string(cap));
  const std::size_t count = std::size_t(1) << p.num_vertices();
  auto certs = map_indices<std::optional<AffineFunctional>>(
      count, policy, [&](std::size_t s) { return certify_exposed(p, VertexSet(s)); });
  std::vector<Face> faces;
  for (std::size_t s = 0; s < count; ++s) {
    if (!certs[s]) continue;
    std::vector<ExactVector> pts;
    for (int i : p.indices(VertexSet(s))) pts.push_back(p.local(i));
    faces.push_back({VertexSet(s), affine_rank(pts), std::move(*certs[s])});
  }
  return FaceLattice(p, std::move(faces));
}

std::vector<Flag> flags(const FaceLattice& lattice) {
  std::vector<Flag> out;
  Flag cur;
  std::function<void(int)> extend = [&](int last) {
    out.push_back(cur);
    const auto& fs = lattice.faces();
    for (int j = 0; j < int(fs.size()); ++j) {
      const VertexSet v = fs[j].vertices;
      if (fs[j].dim <= fs[last].dim || (fs[last].vertices & ~v) != 0 || v == fs[last].vertices) continue;
      cur.push_back(v);
      extend(j);
      cur.pop_back();
    }
  };
  const auto& fs = lattice.faces();
  for (int i = 0; i < int(fs.size()); ++i) {
    if (fs[i].vertices == 0) continue;
    cur = {fs[i].vertices};
    extend(i);
  }
  return out;
}

std::vector<Flag> maximal_flags(const FaceLattice& lattice) {
  std::vector<Flag> out;
  Flag cur;
  std::function<void(VertexSet, int)> up = [&](VertexSet s, int d) {
    if (s == lattice.top()) {
      out.push_back(cur);
      return;
    }
    for (const auto& f : lattice.faces()) {
      if (f.dim != d + 1 || (s & ~f.vertices) != 0) continue;
      cur.push_back(f.vertices);
      up(f.vertices, f.dim);
      cur.pop_back();
    }
  };
  for (const auto& f : lattice.faces()) {
    if (f.dim != 0) continue;
    cur = {f.vertices};
    up(f.vertices, 0);
  }
  return out;
}

// ---------------------------------------------------------------- barycenters

ExactVector barycenter(const Polytope& p) {
  const int n = p.num_vertices(), d = p.dim();
  if (n == d + 1) {
    ExactVector c(p.ambient_dim());
    for (const auto& v : p.vertices()) c = c + v;
    return (Exact(1) / Exact(n)) * c;
  }
  // Pulling triangulation: cone the lowest vertex over the triangulated
  // facets that avoid it, recursively.
  const FaceLattice lattice = exposed_faces(p, kMaxVertices, ExecPolicy::Serial);
  std::map<VertexSet, std::vector<std::vector<int>>> memo;
  std::function<std::vector<std::vector<int>>(VertexSet)> triangulate = [&](VertexSet f) {
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    std::vector<std::vector<int>> out;
    const int apex = std::countr_zero(f);
    if (lattice.dim_of(f) == 0) {
      out.push_back({apex});
    } else {
      for (VertexSet g : lattice.facets_of(f)) {
        if (g & (VertexSet(1) << apex)) continue;
        for (auto s : triangulate(g)) {
          s.insert(s.begin(), apex);
          out.push_back(std::move(s));
        }
      }
    }
    memo[f] = out;
    return out;
  };
  Exact total;
  ExactVector acc(d);
  for (const auto& simplex : triangulate(p.all())) {
    ExactMatrix m(d, d);
    for (int i = 1; i <= d; ++i)
      for (int j = 0; j < d; ++j) m(i - 1, j) = p.local(simplex[i])[j] - p.local(simplex[0])[j];
    const Exact vol = abs(determinant(m));
    ExactVector c(d);
    for (int i : simplex) c = c + p.local(i);
    acc = acc + (vol / Exact(d + 1)) * c;
    total += vol;
  }
  return p.to_ambient((Exact(1) / total) * acc);
}

std::vector<double> barycenter(const Ball& b) { return std::vector<double>(b.n, 0.0); }

EjaElement barycenter(const EjaStateSpace& s) {
  return (1.0 / s.algebra.rank()) * EjaElement::unit(s.algebra);
}

// ---------------------------------------------------------------- membership

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "inside";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "?";
}

bool in_hull(const std::vector<ExactVector>& vertices, const ExactVector& x) {
  const int n = int(vertices.size());
  if (n == 0) return false;
  const int dim = int(x.size());
  LinearProgram lp(n);
  for (int j = 0; j < n; ++j) lp.set_bounds(j, Exact(0), std::nullopt);
  lp.add(ExactVector(n, Exact(1)), Relation::Equal, 1);
  for (int k = 0; k < dim; ++k) {
    ExactVector row(n);
    for (int j = 0; j < n; ++j) row[j] = vertices[j][k];
    lp.add(row, Relation::Equal, x[k]);
  }
  return std::holds_alternative<Feasible>(lp_feasible(lp));
}

Membership membership(const Polytope& p, const ExactVector& x) {
  const auto loc = p.to_local(x);
  if (!loc) return Membership::Outside;
  const int n = p.num_vertices(), d = p.dim();
  if (d == 0) return Membership::Inside;
  // Maximize t subject to lambda_i >= t, sum lambda = 1, sum lambda_i v_i = x.
  LinearProgram lp(n + 1);
  ExactVector obj(n + 1);
  obj[n] = 1;
  lp.objective = obj;
  lp.set_bounds(n, std::nullopt, Exact(1));
  for (int i = 0; i < n; ++i) {
    ExactVector row(n + 1);
    row[i] = 1;
    row[n] = -1;
    lp.add(row, Relation::GreaterEq, 0);
  }
  ExactVector ones(n + 1, Exact(1));
  ones[n] = 0;
  lp.add(ones, Relation::Equal, 1);
  for (int k = 0; k < d; ++k) {
    ExactVector row(n + 1);
    for (int i = 0; i < n; ++i) row[i] = p.local(i)[k];
    lp.add(row, Relation::Equal, (*loc)[k]);
  }
  const auto r = lp_optimize(lp);
  if (!std::holds_alternative<Optimal>(r)) return Membership::Outside;
  const Exact& t = std::get<Optimal>(r).value;
  if (t.sign() < 0) return Membership::Outside;
  return t.sign() > 0 ? Membership::Inside : Membership::Boundary;
}

Membership membership(const Ball& b, const std::vector<double>& x, double tol) {
  if (int(x.size()) != b.n) return Membership::Outside;
  double r2 = 0;
  for (double v : x) r2 += v * v;
  const double r = std::sqrt(r2);
  if (r > 1 + tol) return Membership::Outside;
  return r >= 1 - tol ? Membership::Boundary : Membership::Inside;
}

Membership membership(const EjaStateSpace& s, const EjaElement& x, double tol) {
  if (!(x.algebra() == s.algebra)) return Membership::Outside;
  if (std::abs(trace(x) - 1) > tol * 10) return Membership::Outside;
  const auto ev = eigenvalues(x, tol);
  const double lo = ev.back();
  if (lo < -tol) return Membership::Outside;
  return lo <= tol ? Membership::Boundary : Membership::Inside;
}

// ---------------------------------------------------------------- cone embedding

namespace {

std::vector<std::vector<double>> scaled_identity(int n, double s) {
  std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) g[i][i] = s;
  return g;
}

ConeEmbedding polytope_cone(const Polytope& p) {
  ConeEmbedding c;
  const int n = p.num_vertices(), amb = p.ambient_dim();
  ExactMatrix v(n, amb);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < amb; ++j) v(i, j) = p.vertex(i)[j];
  // Homogeneous position: some linear functional is 1 on every vertex.
  if (auto u = solve_any(v, ExactVector(n, Exact(1))); u && matrix_rank(v) == p.dim() + 1) {
    c.dim = amb;
    c.rays = p.vertices();
    c.exact_unit = *u;
    bool orthant = n == amb;
    for (int i = 0; orthant && i < n; ++i)
      for (int j = 0; j < amb; ++j)
        if (p.vertex(i)[j] != Exact(i == j ? 1 : 0)) orthant = false;
    c.cone = orthant ? "nonnegative orthant" : "polyhedral";
  } else {
    c.dim = p.dim() + 1;
    for (const auto& x : p.local_vertices()) {
      ExactVector r = x;
      r.push_back(Exact(1));
      c.rays.push_back(std::move(r));
    }
    ExactVector unit(c.dim);
    unit[c.dim - 1] = 1;
    c.exact_unit = unit;
    c.cone = "polyhedral";
  }
  c.order_unit = to_doubles(*c.exact_unit);
  c.gram = scaled_identity(c.dim, 1.0);
  return c;
}

}  // namespace

ConeEmbedding cone_embed(const ConvexBody& body) {
  return std::visit(
      [](const auto& b) -> ConeEmbedding {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return polytope_cone(b);
        } else if constexpr (std::is_same_v<T, Ball>) {
          ConeEmbedding c;
          c.dim = b.n + 1;
          c.cone = "lorentz";
          c.order_unit.assign(c.dim, 0.0);
          c.order_unit.back() = 1.0;
          c.gram = scaled_identity(c.dim, 1.0);
          return c;
        } else {
          ConeEmbedding c;
          c.dim = b.algebra.dim();
          c.cone = "symmetric";
          c.order_unit = EjaElement::unit(b.algebra).coeffs();
          c.gram = scaled_identity(c.dim, b.algebra.family() == Family::Spin ? 2.0 : 1.0);
          return c;
        }
      },
      body);
}

// ---------------------------------------------------------------- canonical embedding

CanonicalEmbedding canonical_embed(const Polytope& p, const std::vector<PolytopeAutomorphism>& group) {
  if (group.empty()) throw InvalidInput("canonical embedding needs a nonempty group");
  const int d = p.dim();
  CanonicalEmbedding c;
  c.center = *p.to_local(barycenter(p));
  for (const auto& v : p.local_vertices()) c.points.push_back(v - c.center);
  c.gram = ExactMatrix(d, d);
  for (const auto& g : group) c.gram = c.gram + g.linear.transpose() * g.linear;
  const Exact inv = Exact(1) / Exact(long(group.size()));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c.gram(i, j) *= inv;
  return c;
}

Exact canonical_inner(const CanonicalEmbedding& c, const ExactVector& x, const ExactVector& y) {
  return dot(x, c.gram * y);
}

}  // namespace jspec
