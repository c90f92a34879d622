#pragma once

// Exact scalars for polytope geometry.
//
// Rational is GMP-backed and always canonical. Exact is an element a + b*sqrt(5)
// of the ordered field Q(sqrt 5); it contains Q and is closed under the field
// operations, which is what the regular pentagon needs (no affine image of it
// has rational vertices).

#include <boost/multiprecision/gmp.hpp>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace jspec {

using Rational = boost::multiprecision::mpq_rational;

std::string to_string(const Rational& q);  // "p" or "p/q"
Rational parse_rational(const std::string& s);

class Exact {
 public:
  Exact() = default;
  Exact(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Exact(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Exact(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Exact sqrt5() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  bool is_rational() const { return b_ == 0; }
  int sign() const;
  double to_double() const;

  Exact operator-() const { return {-a_, -b_}; }
  Exact& operator+=(const Exact& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Exact& operator-=(const Exact& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Exact& operator*=(const Exact& o);
  Exact& operator/=(const Exact& o);

  friend Exact operator+(Exact x, const Exact& y) { return x += y; }
  friend Exact operator-(Exact x, const Exact& y) { return x -= y; }
  friend Exact operator*(Exact x, const Exact& y) { return x *= y; }
  friend Exact operator/(Exact x, const Exact& y) { return x /= y; }

  friend bool operator==(const Exact& x, const Exact& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const Exact& x, const Exact& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational a_{0};
  Rational b_{0};
};

/// "a", "a/b", "a+b*sqrt5", "b*sqrt5", "-1/4-1/4*sqrt5", ...
std::string to_string(const Exact& x);
Exact parse_exact(const std::string& s);

Exact abs(const Exact& x);

using ExactVector = std::vector<Exact>;

ExactVector operator+(const ExactVector& a, const ExactVector& b);
ExactVector operator-(const ExactVector& a, const ExactVector& b);
ExactVector operator*(const Exact& s, const ExactVector& a);
Exact dot(const ExactVector& a, const ExactVector& b);
std::vector<double> to_doubles(const ExactVector& v);

/// Dense row-major matrix over Exact.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
  static ExactMatrix identity(int n);
  static ExactMatrix from_rows(const std::vector<ExactVector>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Exact& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const Exact& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  ExactVector row(int i) const;
  ExactVector col(int j) const;
  ExactMatrix transpose() const;
  ExactVector operator*(const ExactVector& v) const;
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Exact> data_;
};

/// Reduced row echelon form; returns pivot columns.
std::vector<int> row_reduce(ExactMatrix& m);
int matrix_rank(ExactMatrix m);
Exact determinant(ExactMatrix m);
/// Solves A x = b when A is square and nonsingular; otherwise returns nullopt.
std::optional<ExactVector> solve(const ExactMatrix& a, const ExactVector& b);
/// Any solution of A x = b (free variables zero), or nullopt if inconsistent.
std::optional<ExactVector> solve_any(const ExactMatrix& a, const ExactVector& b);
std::optional<ExactMatrix> inverse(const ExactMatrix& a);

}  // namespace jspec
