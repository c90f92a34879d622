#pragma once

// Simple finite-dimensional Euclidean Jordan algebras.
//
// Elements are coefficient vectors in a fixed real basis that is orthonormal
// for the trace form (x, y) = tr(x . y) on the matrix families:
//
//   * diagonal matrix units e_00, ..., e_{m-1,m-1} first;
//   * then, for each pair i < j in lexicographic order and each unit u_k of the
//     division algebra (k = 0..d-1, d = 1, 2, 4, 8), the generator
//     (u_k e_ij + conj(u_k) e_ji) / sqrt(2).
//
// The spin factor R^n (+) R stores (x_1, ..., x_n, t); its trace form is
// 2(<x, y> + s t), so that basis is orthogonal with squared norm 2.

#include <cstdint>
#include <string>
#include <vector>

#include "jspec/octonion.hpp"

namespace jspec {

enum class Family { SymR, HermC, HermH, Spin, HermO };

class AlgebraDescriptor {
 public:
  /// Throws InvalidInput unless param is admissible (HermO requires 3).
  static AlgebraDescriptor make(Family family, int param);

  Family family() const { return family_; }
  int param() const { return param_; }
  int dim() const { return dim_; }
  int rank() const { return rank_; }

  bool is_matrix() const { return family_ != Family::Spin; }
  /// Real dimension of the division algebra of a matrix family (1, 2, 4 or 8).
  int division_dim() const;

  /// "sym_r", "herm_c", "herm_h", "spin", "herm_o".
  std::string key() const;
  /// Human-readable name such as "Herm(3,C)".
  std::string name() const;

  friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;

 private:
  AlgebraDescriptor(Family f, int p, int d, int r) : family_(f), param_(p), dim_(d), rank_(r) {}
  Family family_;
  int param_;
  int dim_;
  int rank_;
};

Family family_from_key(const std::string& key);

class EjaElement {
 public:
  EjaElement(AlgebraDescriptor alg, std::vector<double> coeffs);

  static EjaElement zero(const AlgebraDescriptor& alg);
  static EjaElement unit(const AlgebraDescriptor& alg);
  static EjaElement basis(const AlgebraDescriptor& alg, int k);

  const AlgebraDescriptor& algebra() const { return alg_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator[](int k) const { return coeffs_[k]; }

  EjaElement& operator+=(const EjaElement& o);
  EjaElement& operator-=(const EjaElement& o);
  EjaElement& operator*=(double s);
  friend EjaElement operator+(EjaElement a, const EjaElement& b) { return a += b; }
  friend EjaElement operator-(EjaElement a, const EjaElement& b) { return a -= b; }
  friend EjaElement operator*(double s, EjaElement a) { return a *= s; }

 private:
  AlgebraDescriptor alg_;
  std::vector<double> coeffs_;
};

/// Dense Hermitian matrix over the octonions; R, C, H use leading components only.
struct HermitianMatrix {
  int m = 0;
  std::vector<Octonion> entries;

  explicit HermitianMatrix(int size) : m(size), entries(std::size_t(size) * size) {}
  Octonion& operator()(int i, int j) { return entries[std::size_t(i) * m + j]; }
  const Octonion& operator()(int i, int j) const { return entries[std::size_t(i) * m + j]; }
};

HermitianMatrix to_matrix(const EjaElement& x);
/// Projects onto the self-adjoint basis; entries outside the algebra's division
/// algebra components are ignored.
EjaElement from_matrix(const AlgebraDescriptor& alg, const HermitianMatrix& a);

EjaElement jordan_product(const EjaElement& a, const EjaElement& b);
double trace(const EjaElement& x);
double inner(const EjaElement& x, const EjaElement& y);
double norm(const EjaElement& x);
double determinant(const EjaElement& x);
EjaElement power(const EjaElement& x, int k);
/// U_a(b) = 2 a.(a.b) - a^2.b
EjaElement quadratic_rep(const EjaElement& a, const EjaElement& b);

struct SpectralOptions {
  double tol = 1e-10;
  std::uint64_t seed = 0;  // drives the non-canonical fine refinement only
  int max_sweeps = 100;
};

struct SpectralTerm {
  double eigenvalue;
  EjaElement idempotent;
  int multiplicity;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // descending, with multiplicity
  std::vector<EjaElement> frame;    // primitive idempotents, aligned with eigenvalues
  std::vector<SpectralTerm> coarse; // distinct eigenvalues, descending
  double residual = 0;              // |sum lambda_i c_i - x|
};

/// Coarse decomposition only: distinct eigenvalues and their idempotents.
std::vector<SpectralTerm> coarse_decompose(const EjaElement& x, const SpectralOptions& opt = {});
SpectralDecomposition spectral_decompose(const EjaElement& x, const SpectralOptions& opt = {});
inline SpectralDecomposition spectral_decompose(const EjaElement& x, double tol) {
  SpectralOptions opt;
  opt.tol = tol;
  return spectral_decompose(x, opt);
}
std::vector<double> eigenvalues(const EjaElement& x, double tol = 1e-10);

bool is_idempotent(const EjaElement& x, double tol = 1e-9);
bool is_primitive_idempotent(const EjaElement& x, double tol = 1e-9);

/// Coefficients are i.i.d. standard normal.
EjaElement random_element(const AlgebraDescriptor& alg, std::uint64_t seed);
/// y.y / tr(y.y) for a random y.
EjaElement random_state(const AlgebraDescriptor& alg, std::uint64_t seed);
/// Frame of a random element whose spectrum is simple.
std::vector<EjaElement> random_jordan_frame(const AlgebraDescriptor& alg, std::uint64_t seed);

/// e_ii for matrix families; ((+-e_1)/2, 1/2) for the spin factor.
std::vector<EjaElement> standard_jordan_frame(const AlgebraDescriptor& alg);

/// max_ij |(c_i . c_j) - delta_ij c_i| and |sum c_i - e| for a candidate frame.
struct FrameResiduals {
  double orthogonality = 0;
  double completeness = 0;
};
FrameResiduals frame_residuals(const std::vector<EjaElement>& frame);

}  // namespace jspec
