#include "jspec/eja.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "jspec/error.hpp"
#include "jspec/jacobi.hpp"
#include "jspec/random.hpp"

namespace jspec {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
using Complex = std::complex<double>;

void require_same(const EjaElement& a, const EjaElement& b) {
  if (!(a.algebra() == b.algebra())) {
    throw AlgebraMismatch("operands belong to " + a.algebra().name() + " and " + b.algebra().name());
  }
}

HermitianMatrix multiply(const HermitianMatrix& a, const HermitianMatrix& b) {
  HermitianMatrix c(a.m);
  for (int i = 0; i < a.m; ++i)
    for (int j = 0; j < a.m; ++j) {
      Octonion s;
      for (int k = 0; k < a.m; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptor

AlgebraDescriptor AlgebraDescriptor::make(Family family, int param) {
  if (param < 1) throw InvalidInput("algebra parameter must be positive");
  switch (family) {
    case Family::SymR: return {family, param, param * (param + 1) / 2, param};
    case Family::HermC: return {family, param, param * param, param};
    case Family::HermH: return {family, param, param * (2 * param - 1), param};
    case Family::Spin: return {family, param, param + 1, 2};
    case Family::HermO:
      if (param != 3) throw InvalidInput("Herm(m,O) is a Euclidean Jordan algebra only for m = 3");
      return {family, 3, 27, 3};
  }
  throw InvalidInput("unknown family");
}

int AlgebraDescriptor::division_dim() const {
  switch (family_) {
    case Family::SymR: return 1;
    case Family::HermC: return 2;
    case Family::HermH: return 4;
    case Family::HermO: return 8;
    case Family::Spin: return 0;
  }
  return 0;
}

std::string AlgebraDescriptor::key() const {
  switch (family_) {
    case Family::SymR: return "sym_r";
    case Family::HermC: return "herm_c";
    case Family::HermH: return "herm_h";
    case Family::Spin: return "spin";
    case Family::HermO: return "herm_o";
  }
  return "";
}

std::string AlgebraDescriptor::name() const {
  const std::string m = std::to_string(param_);
  switch (family_) {
    case Family::SymR: return "Sym(" + m + ",R)";
    case Family::HermC: return "Herm(" + m + ",C)";
    case Family::HermH: return "Herm(" + m + ",H)";
    case Family::Spin: return "R^" + m + "+R";
    case Family::HermO: return "Herm(3,O)";
  }
  return "";
}

Family family_from_key(const std::string& key) {
  if (key == "sym_r") return Family::SymR;
  if (key == "herm_c") return Family::HermC;
  if (key == "herm_h") return Family::HermH;
  if (key == "spin") return Family::Spin;
  if (key == "herm_o") return Family::HermO;
  throw InvalidInput("unknown algebra family '" + key + "'");
}

// ---------------------------------------------------------------------------
// Elements

EjaElement::EjaElement(AlgebraDescriptor alg, std::vector<double> coeffs)
    : alg_(alg), coeffs_(std::move(coeffs)) {
  if (int(coeffs_.size()) != alg_.dim()) {
    throw InvalidInput("coefficient vector has length " + std::to_string(coeffs_.size()) + ", " +
                       alg_.name() + " has dimension " + std::to_string(alg_.dim()));
  }
}

EjaElement EjaElement::zero(const AlgebraDescriptor& alg) {
  return {alg, std::vector<double>(alg.dim(), 0.0)};
}

EjaElement EjaElement::unit(const AlgebraDescriptor& alg) {
  std::vector<double> c(alg.dim(), 0.0);
  if (alg.family() == Family::Spin) {
    c.back() = 1.0;
  } else {
    for (int i = 0; i < alg.param(); ++i) c[i] = 1.0;
  }
  return {alg, std::move(c)};
}

EjaElement EjaElement::basis(const AlgebraDescriptor& alg, int k) {
  std::vector<double> c(alg.dim(), 0.0);
  c.at(k) = 1.0;
  return {alg, std::move(c)};
}

EjaElement& EjaElement::operator+=(const EjaElement& o) {
  require_same(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

EjaElement& EjaElement::operator-=(const EjaElement& o) {
  require_same(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

EjaElement& EjaElement::operator*=(double s) {
  for (double& v : coeffs_) v *= s;
  return *this;
}

HermitianMatrix to_matrix(const EjaElement& x) {
  const auto& alg = x.algebra();
  if (!alg.is_matrix()) throw InvalidInput("spin factor elements have no matrix form");
  const int m = alg.param(), d = alg.division_dim();
  HermitianMatrix a(m);
  for (int i = 0; i < m; ++i) a(i, i) = Octonion(x[i]);
  int idx = m;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < d; ++k, ++idx) {
        const double v = x[idx] / kSqrt2;
        a(i, j)[k] += v;
        a(j, i)[k] += (k == 0 ? v : -v);
      }
  return a;
}

EjaElement from_matrix(const AlgebraDescriptor& alg, const HermitianMatrix& a) {
  if (!alg.is_matrix()) throw InvalidInput("spin factor elements have no matrix form");
  const int m = alg.param(), d = alg.division_dim();
  if (a.m != m) throw InvalidInput("matrix size does not match algebra");
  std::vector<double> c(alg.dim());
  for (int i = 0; i < m; ++i) c[i] = a(i, i).re();
  int idx = m;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < d; ++k, ++idx) {
        const double upper = a(i, j)[k];
        const double lower = k == 0 ? a(j, i)[k] : -a(j, i)[k];
        c[idx] = (upper + lower) / kSqrt2;
      }
  return {alg, std::move(c)};
}

// ---------------------------------------------------------------------------
// Arithmetic

EjaElement jordan_product(const EjaElement& a, const EjaElement& b) {
  require_same(a, b);
  const auto& alg = a.algebra();
  if (alg.family() == Family::Spin) {
    const int n = alg.param();
    const double s = a[n], t = b[n];
    std::vector<double> c(n + 1);
    double dot = 0;
    for (int i = 0; i < n; ++i) {
      c[i] = t * a[i] + s * b[i];
      dot += a[i] * b[i];
    }
    c[n] = dot + s * t;
    return {alg, std::move(c)};
  }
  const HermitianMatrix x = to_matrix(a), y = to_matrix(b);
  const HermitianMatrix xy = multiply(x, y), yx = multiply(y, x);
  HermitianMatrix sym(x.m);
  for (std::size_t k = 0; k < sym.entries.size(); ++k) {
    sym.entries[k] = 0.5 * (xy.entries[k] + yx.entries[k]);
  }
  return from_matrix(alg, sym);
}

double trace(const EjaElement& x) {
  const auto& alg = x.algebra();
  if (alg.family() == Family::Spin) return 2 * x[alg.param()];
  double s = 0;
  for (int i = 0; i < alg.param(); ++i) s += x[i];
  return s;
}

// tr(x.y) equals the coefficient dot product in the orthonormal matrix bases and
// twice it for the spin factor.
double inner(const EjaElement& x, const EjaElement& y) {
  require_same(x, y);
  double s = 0;
  for (int k = 0; k < x.algebra().dim(); ++k) s += x[k] * y[k];
  return x.algebra().family() == Family::Spin ? 2 * s : s;
}

double norm(const EjaElement& x) { return std::sqrt(inner(x, x)); }

EjaElement power(const EjaElement& x, int k) {
  if (k < 0) throw InvalidInput("negative Jordan power");
  EjaElement r = EjaElement::unit(x.algebra());
  for (int i = 0; i < k; ++i) r = jordan_product(x, r);
  return r;
}

EjaElement quadratic_rep(const EjaElement& a, const EjaElement& b) {
  const EjaElement ab = jordan_product(a, b);
  return 2.0 * jordan_product(a, ab) - jordan_product(jordan_product(a, a), b);
}

double determinant(const EjaElement& x) {
  const int r = x.algebra().rank();
  if (r <= 3) {
    const double p1 = trace(x);
    if (r == 1) return p1;
    const EjaElement x2 = jordan_product(x, x);
    const double p2 = trace(x2);
    if (r == 2) return (p1 * p1 - p2) / 2;
    const double p3 = trace(jordan_product(x, x2));
    return (p1 * p1 * p1 - 3 * p1 * p2 + 2 * p3) / 6;
  }
  const auto ev = eigenvalues(x);
  return std::accumulate(ev.begin(), ev.end(), 1.0, std::multiplies<>());
}

// ---------------------------------------------------------------------------
// Spectral theory

namespace {

double cluster_gap(double tol, double scale) { return tol * (1 + scale); }

struct RawEigen {
  double value;
  std::vector<Complex> vec;  // empty for closed-form families
};

// Groups descending eigenvalues into runs of near-equal values.
std::vector<std::pair<int, int>> cluster_runs(const std::vector<double>& values, double gap) {
  std::vector<std::pair<int, int>> runs;
  int start = 0;
  for (int k = 1; k <= int(values.size()); ++k) {
    if (k == int(values.size()) || values[k - 1] - values[k] > gap) {
      runs.emplace_back(start, k);
      start = k;
    }
  }
  return runs;
}

std::vector<SpectralTerm> coarse_matrix(const EjaElement& x, const SpectralOptions& opt) {
  const auto& alg = x.algebra();
  const int m = alg.param();
  const HermitianMatrix a = to_matrix(x);
  const bool quaternionic = alg.family() == Family::HermH;
  const int n = quaternionic ? 2 * m : m;

  DenseMatrix<Complex> h(n, n);
  if (quaternionic) {
    // q = a + bi + cj + dk  ->  [[a+bi, c+di], [-c+di, a-bi]]
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Octonion& q = a(i, j);
        const Complex alpha(q[0], q[1]), beta(q[2], q[3]);
        h(2 * i, 2 * j) = alpha;
        h(2 * i, 2 * j + 1) = beta;
        h(2 * i + 1, 2 * j) = -std::conj(beta);
        h(2 * i + 1, 2 * j + 1) = std::conj(alpha);
      }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) h(i, j) = Complex(a(i, j)[0], a(i, j)[1]);
  }

  std::vector<double> values;
  DenseMatrix<Complex> vectors;
  if (alg.family() == Family::SymR) {
    DenseMatrix<double> r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = h(i, j).real();
    auto es = jacobi_eigen(std::move(r), opt.max_sweeps);
    values = es.values;
    vectors = DenseMatrix<Complex>(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) vectors(i, j) = es.vectors(i, j);
  } else {
    auto es = jacobi_eigen(std::move(h), opt.max_sweeps);
    values = es.values;
    vectors = std::move(es.vectors);
  }

  double scale = 0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const auto runs = cluster_runs(values, cluster_gap(opt.tol, scale));

  std::vector<SpectralTerm> out;
  for (auto [lo, hi] : runs) {
    const int count = hi - lo;
    if (quaternionic && count % 2 != 0) {
      throw NonConvergence("quaternionic eigenvalues did not pair up", values[lo]);
    }
    double mean = 0;
    for (int k = lo; k < hi; ++k) mean += values[k];
    mean /= count;

    DenseMatrix<Complex> p(n, n);
    for (int k = lo; k < hi; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) += vectors(i, k) * std::conj(vectors(j, k));

    HermitianMatrix proj(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Octonion q;
        if (quaternionic) {
          // Average the two copies of each quaternion entry inside its 2x2 block.
          const Complex alpha = 0.5 * (p(2 * i, 2 * j) + std::conj(p(2 * i + 1, 2 * j + 1)));
          const Complex beta = 0.5 * (p(2 * i, 2 * j + 1) - std::conj(p(2 * i + 1, 2 * j)));
          q[0] = alpha.real();
          q[1] = alpha.imag();
          q[2] = beta.real();
          q[3] = beta.imag();
        } else {
          q[0] = p(i, j).real();
          q[1] = p(i, j).imag();
        }
        proj(i, j) = q;
      }
    out.push_back({mean, from_matrix(alg, proj), quaternionic ? count / 2 : count});
  }
  return out;
}

std::vector<SpectralTerm> coarse_spin(const EjaElement& x, const SpectralOptions& opt) {
  const auto& alg = x.algebra();
  const int n = alg.param();
  const double t = x[n];
  double r = 0;
  for (int i = 0; i < n; ++i) r += x[i] * x[i];
  r = std::sqrt(r);
  const double scale = std::abs(t) + r;
  if (2 * r <= cluster_gap(opt.tol, scale)) {
    return {{t, EjaElement::unit(alg), 2}};
  }
  std::vector<double> plus(n + 1), minus(n + 1);
  for (int i = 0; i < n; ++i) {
    plus[i] = x[i] / r / 2;
    minus[i] = -plus[i];
  }
  plus[n] = minus[n] = 0.5;
  return {{t + r, EjaElement(alg, plus), 1}, {t - r, EjaElement(alg, minus), 1}};
}

// Real roots of y^3 + p y + q (p <= 0), shifted by `shift`, descending.
std::array<double, 3> depressed_cubic_roots(double shift, double p, double q) {
  std::array<double, 3> roots{0, 0, 0};
  if (p < 0) {
    const double rad = 2 * std::sqrt(-p / 3);
    const double arg = std::clamp(3 * q / (p * rad), -1.0, 1.0);
    const double phi = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k) roots[k] = rad * std::cos(phi - 2 * std::numbers::pi * k / 3);
  }
  for (double& y : roots) {
    for (int it = 0; it < 3; ++it) {
      const double d = 3 * y * y + p;
      if (d == 0) break;
      const double step = ((y * y + p) * y + q) / d;
      if (!std::isfinite(step) || std::abs(step) > 1e-3 * (std::abs(y) + std::sqrt(-p) + 1e-300)) break;
      y -= step;
    }
    y += shift;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

// Lagrange idempotents prod_{beta != alpha} (x - l_beta e) / (l_alpha - l_beta).
std::vector<SpectralTerm> lagrange_terms(const EjaElement& x, const std::vector<double>& values,
                                         const std::vector<int>& mult) {
  const auto& alg = x.algebra();
  const EjaElement e = EjaElement::unit(alg);
  std::vector<SpectralTerm> out;
  for (std::size_t a = 0; a < values.size(); ++a) {
    EjaElement c = e;
    for (std::size_t b = 0; b < values.size(); ++b) {
      if (a == b) continue;
      c = jordan_product(c, x - values[b] * e);
      c *= 1.0 / (values[a] - values[b]);
    }
    out.push_back({values[a], std::move(c), mult[a]});
  }
  return out;
}

double terms_defect(const EjaElement& x, const std::vector<SpectralTerm>& terms) {
  EjaElement recon = EjaElement::zero(x.algebra());
  double worst = 0;
  for (const auto& t : terms) {
    recon += t.eigenvalue * t.idempotent;
    worst = std::max(worst, norm(jordan_product(t.idempotent, t.idempotent) - t.idempotent));
  }
  return std::max(worst, norm(recon - x));
}

std::vector<SpectralTerm> coarse_octonion(const EjaElement& x, const SpectralOptions& opt) {
  const auto& alg = x.algebra();
  const EjaElement e = EjaElement::unit(alg);
  const double e1 = trace(x);
  const double mean = e1 / 3;
  // Work with the traceless part y = x - mean e: its characteristic polynomial
  // is y^3 + p y + q with p = -tr(y^2)/2 and q = -tr(y^3)/3.
  const EjaElement y = x - mean * e;
  const double ynorm = norm(y);
  if (ynorm <= cluster_gap(opt.tol, norm(x))) return {{mean, e, 3}};
  const EjaElement y2 = jordan_product(y, y);
  const double p = -ynorm * ynorm / 2;
  const double q = -trace(jordan_product(y, y2)) / 3;

  const auto r = depressed_cubic_roots(mean, p, q);
  const double scale = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
  const double tight = cluster_gap(opt.tol, scale);
  // Characteristic-polynomial roots lose about half their digits near a double
  // root, so nearby pairs are tried both merged and split.
  const double loose = 1e-4 * (1 + scale);

  std::vector<std::vector<SpectralTerm>> candidates;
  auto merged_at = [&](int k) {
    // Pair (k, k+1) merged; the simple root is accurate and fixes the double one.
    const double simple = k == 0 ? r[2] : r[0];
    const double dbl = (e1 - simple) / 2;
    std::vector<double> vals = k == 0 ? std::vector<double>{dbl, simple} : std::vector<double>{simple, dbl};
    std::vector<int> mult = k == 0 ? std::vector<int>{2, 1} : std::vector<int>{1, 2};
    return lagrange_terms(x, vals, mult);
  };
  const double g01 = r[0] - r[1], g12 = r[1] - r[2];
  if (g01 <= tight && g12 <= tight) return {{mean, e, 3}};
  if (g01 <= tight) return merged_at(0);
  if (g12 <= tight) return merged_at(1);
  candidates.push_back(lagrange_terms(x, {r[0], r[1], r[2]}, {1, 1, 1}));
  if (g01 <= loose) candidates.push_back(merged_at(0));
  if (g12 <= loose) candidates.push_back(merged_at(1));

  std::size_t best = 0;
  double best_defect = terms_defect(x, candidates[0]);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double d = terms_defect(x, candidates[k]);
    if (d < best_defect) {
      best = k;
      best_defect = d;
    }
  }
  return candidates[best];
}

std::vector<EjaElement> refine(const EjaElement& c, int mult, const SpectralOptions& opt,
                               std::uint64_t seed, int depth) {
  const auto& alg = c.algebra();
  const EjaElement e = EjaElement::unit(alg);
  constexpr int kAttempts = 32;
  if (depth > alg.rank()) throw NonConvergence("fine refinement recursed too deeply", 0);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    EjaElement w = random_element(alg, mix_seed(seed, attempt));
    w *= 0.25 / std::max(norm(w), 1e-300);
    // z lives in the Peirce 1-space of c with eigenvalues near 1 there, 0 elsewhere.
    const EjaElement z = quadratic_rep(c, e + w);
    const auto terms = coarse_decompose(z, opt);
    std::vector<const SpectralTerm*> inside;
    int total = 0;
    for (const auto& t : terms) {
      if (t.eigenvalue > 0.5) {
        inside.push_back(&t);
        total += t.multiplicity;
      }
    }
    if (total != mult) continue;
    std::vector<EjaElement> out;
    for (const auto* t : inside) {
      if (t->multiplicity == 1) {
        out.push_back(t->idempotent);
      } else {
        auto sub = refine(t->idempotent, t->multiplicity, opt, mix_seed(seed, 1000 + attempt), depth + 1);
        out.insert(out.end(), sub.begin(), sub.end());
      }
    }
    return out;
  }
  throw NonConvergence("fine refinement of a degenerate eigenspace failed", 0);
}

}  // namespace

std::vector<SpectralTerm> coarse_decompose(const EjaElement& x, const SpectralOptions& opt) {
  if (!(opt.tol > 0)) throw InvalidInput("tolerance must be positive");
  switch (x.algebra().family()) {
    case Family::Spin: return coarse_spin(x, opt);
    case Family::HermO: return coarse_octonion(x, opt);
    default: return coarse_matrix(x, opt);
  }
}

SpectralDecomposition spectral_decompose(const EjaElement& x, const SpectralOptions& opt) {
  SpectralDecomposition out;
  out.coarse = coarse_decompose(x, opt);
  for (std::size_t k = 0; k < out.coarse.size(); ++k) {
    const auto& term = out.coarse[k];
    if (term.multiplicity == 1) {
      out.eigenvalues.push_back(term.eigenvalue);
      out.frame.push_back(term.idempotent);
      continue;
    }
    auto parts = refine(term.idempotent, term.multiplicity, opt, mix_seed(opt.seed, k), 0);
    for (auto& p : parts) {
      out.eigenvalues.push_back(term.eigenvalue);
      out.frame.push_back(std::move(p));
    }
  }
  EjaElement recon = EjaElement::zero(x.algebra());
  for (std::size_t i = 0; i < out.frame.size(); ++i) recon += out.eigenvalues[i] * out.frame[i];
  out.residual = norm(recon - x);
  return out;
}

std::vector<double> eigenvalues(const EjaElement& x, double tol) {
  SpectralOptions opt;
  opt.tol = tol;
  std::vector<double> out;
  for (const auto& t : coarse_decompose(x, opt)) out.insert(out.end(), t.multiplicity, t.eigenvalue);
  return out;
}

bool is_idempotent(const EjaElement& x, double tol) {
  return norm(jordan_product(x, x) - x) <= tol;
}

bool is_primitive_idempotent(const EjaElement& x, double tol) {
  return is_idempotent(x, tol) && std::abs(trace(x) - 1) <= tol;
}

EjaElement random_element(const AlgebraDescriptor& alg, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(alg.dim());
  for (double& v : c) v = normal(rng);
  return {alg, std::move(c)};
}

EjaElement random_state(const AlgebraDescriptor& alg, std::uint64_t seed) {
  const EjaElement y = random_element(alg, seed);
  EjaElement sq = jordan_product(y, y);
  sq *= 1.0 / trace(sq);
  return sq;
}

std::vector<EjaElement> random_jordan_frame(const AlgebraDescriptor& alg, std::uint64_t seed) {
  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const EjaElement x = random_element(alg, mix_seed(seed, attempt));
    const auto terms = coarse_decompose(x);
    if (int(terms.size()) != alg.rank()) continue;
    std::vector<EjaElement> frame;
    for (const auto& t : terms) frame.push_back(t.idempotent);
    return frame;
  }
  throw NonConvergence("no element with simple spectrum found", 0);
}

std::vector<EjaElement> standard_jordan_frame(const AlgebraDescriptor& alg) {
  std::vector<EjaElement> frame;
  if (alg.family() == Family::Spin) {
    const int n = alg.param();
    std::vector<double> plus(n + 1, 0.0), minus(n + 1, 0.0);
    plus[0] = 0.5;
    minus[0] = -0.5;
    plus[n] = minus[n] = 0.5;
    frame.emplace_back(alg, plus);
    frame.emplace_back(alg, minus);
    return frame;
  }
  for (int i = 0; i < alg.param(); ++i) frame.push_back(EjaElement::basis(alg, i));
  return frame;
}

FrameResiduals frame_residuals(const std::vector<EjaElement>& frame) {
  FrameResiduals r;
  if (frame.empty()) return r;
  const auto& alg = frame.front().algebra();
  EjaElement sum = EjaElement::zero(alg);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    sum += frame[i];
    for (std::size_t j = i; j < frame.size(); ++j) {
      EjaElement p = jordan_product(frame[i], frame[j]);
      if (i == j) p -= frame[i];
      r.orthogonality = std::max(r.orthogonality, norm(p));
    }
  }
  r.completeness = norm(sum - EjaElement::unit(alg));
  return r;
}

}  // namespace jspec
