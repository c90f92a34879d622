#pragma once

// Cyclic Jacobi eigensolver for small dense real-symmetric and complex-Hermitian
// matrices. One template handles both scalar types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <type_traits>
#include <vector>

#include "jspec/error.hpp"

namespace jspec {

template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

namespace detail {
inline double conj_of(double v) { return v; }
inline std::complex<double> conj_of(const std::complex<double>& v) { return std::conj(v); }
inline double real_of(double v) { return v; }
inline double real_of(const std::complex<double>& v) { return v.real(); }
}  // namespace detail

template <typename T>
struct EigenSystem {
  std::vector<double> values;  // descending
  DenseMatrix<T> vectors;      // column k belongs to values[k]
  int sweeps = 0;
};

/// Diagonalizes the Hermitian matrix `a`. Each eigenvector is normalized so that
/// its first component of non-negligible magnitude is positive real.
template <typename T>
EigenSystem<T> jacobi_eigen(DenseMatrix<T> a, int max_sweeps = 100) {
  using detail::conj_of;
  const int n = a.rows();
  DenseMatrix<T> v = DenseMatrix<T>::identity(n);

  double scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale += std::norm(a(i, j));
  scale = std::sqrt(scale);
  const double eps = std::numeric_limits<double>::epsilon();

  auto off_norm = [&] {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2 * s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= eps * scale || scale == 0) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= eps * eps * scale) {
          a(p, q) = T(0);
          a(q, p) = T(0);
          continue;
        }
        // Phase that makes the (p, q) entry real: D = diag(1, conj(apq) / r).
        const T phase = conj_of(apq) / r;
        const double app = detail::real_of(a(p, p));
        const double aqq = detail::real_of(a(q, q));
        const double tau = (aqq - app) / (2 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = t * c;
        // J = D R with R = [[c, s], [-s, c]].
        const T jpp = T(c), jpq = T(s), jqp = T(-s) * phase, jqq = T(c) * phase;
        for (int k = 0; k < n; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (int k = 0; k < n; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = conj_of(jpp) * apk + conj_of(jqp) * aqk;
          a(q, k) = conj_of(jpq) * apk + conj_of(jqq) * aqk;
        }
        a(p, q) = T(0);
        a(q, p) = T(0);
        a(p, p) = T(detail::real_of(a(p, p)));
        a(q, q) = T(detail::real_of(a(q, q)));
        for (int k = 0; k < n; ++k) {
          const T vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  if (sweep == max_sweeps && off_norm() > eps * scale * 16) {
    throw NonConvergence("Jacobi eigensolver did not converge", off_norm());
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return detail::real_of(a(x, x)) > detail::real_of(a(y, y));
  });

  EigenSystem<T> out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = DenseMatrix<T>(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.values[k] = detail::real_of(a(src, src));
    int lead = 0;
    double best = 0;
    for (int i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, src));
      if (mag > 1e-8) {
        lead = i;
        best = mag;
        break;
      }
    }
    T fix = best > 0 ? conj_of(v(lead, src)) / best : T(1);
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, src) * fix;
  }
  return out;
}

}  // namespace jspec
