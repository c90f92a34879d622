#include "jspec/exact.hpp"

#include <algorithm>

#include "jspec/error.hpp"

namespace jspec {

namespace {

int sign_of(const Rational& q) { return q.sign(); }

std::string strip(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

}  // namespace

std::string to_string(const Rational& q) { return q.str(); }

namespace {

// mpz's string constructor treats a leading 0 as octal; always read base 10.
boost::multiprecision::mpz_int decimal(std::string t) {
  bool neg = false;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    neg = t[0] == '-';
    t.erase(0, 1);
  }
  const auto nz = t.find_first_not_of('0');
  t = nz == std::string::npos ? "0" : t.substr(nz);
  boost::multiprecision::mpz_int v(t);
  return neg ? boost::multiprecision::mpz_int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw InvalidInput("empty rational");
  const auto ok_digits = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  try {
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
      if (!ok_digits(frac, false)) throw InvalidInput("bad decimal '" + text + "'");
      const bool neg = !whole.empty() && whole[0] == '-';
      if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
      if (whole.empty()) whole = "0";
      if (!ok_digits(whole, false)) throw InvalidInput("bad decimal '" + text + "'");
      Rational r(decimal(whole + frac),
                 boost::multiprecision::pow(boost::multiprecision::mpz_int(10), unsigned(frac.size())));
      return neg ? Rational(-r) : r;
    }
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      if (!ok_digits(s, true)) throw InvalidInput("bad rational '" + text + "'");
      return Rational(decimal(s));
    }
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!ok_digits(num, true) || !ok_digits(den, false)) throw InvalidInput("bad rational '" + text + "'");
    const boost::multiprecision::mpz_int d = decimal(den);
    if (d == 0) throw InvalidInput("zero denominator in '" + text + "'");
    return Rational(decimal(num), d);
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidInput("bad rational '" + text + "'");
  }
}

int Exact::sign() const {
  const int sa = sign_of(a_), sb = sign_of(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with 5 b^2.
  const Rational lhs = a_ * a_, rhs = 5 * b_ * b_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

double Exact::to_double() const {
  return a_.convert_to<double>() + b_.convert_to<double>() * 2.23606797749978969640917366873;
}

Exact& Exact::operator*=(const Exact& o) {
  if (b_ == 0 && o.b_ == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 5 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Exact& Exact::operator/=(const Exact& o) {
  if (o.a_ == 0 && o.b_ == 0) throw Error("division by zero");
  if (o.b_ == 0) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  // 1 / (c + d r5) = (c - d r5) / (c^2 - 5 d^2)
  const Rational n = o.a_ * o.a_ - 5 * o.b_ * o.b_;
  *this *= Exact(o.a_ / n, -o.b_ / n);
  return *this;
}

std::string to_string(const Exact& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.surd_part();
  if (b == 0) return to_string(a);
  const std::string surd = (abs(b) == 1 ? std::string() : to_string(Rational(abs(b))) + "*") + "sqrt5";
  if (a == 0) return (b < 0 ? "-" : "") + surd;
  return to_string(a) + (b < 0 ? "-" : "+") + surd;
}

Exact parse_exact(const std::string& text) {
  std::string s = strip(text);
  replace_all(s, "sqrt(5)", "sqrt5");
  replace_all(s, "√5", "sqrt5");
  if (s.find("sqrt5") == std::string::npos) return Exact(parse_rational(s));
  Rational a(0), b(0);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    const auto at = term.find("sqrt5");
    if (at == std::string::npos) {
      a += parse_rational(term);
      continue;
    }
    if (at + 5 != term.size()) throw InvalidInput("bad surd term '" + term + "'");
    std::string coef = term.substr(0, at);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    if (coef.empty() || coef == "+") {
      b += 1;
    } else if (coef == "-") {
      b -= 1;
    } else {
      b += parse_rational(coef);
    }
  }
  return {a, b};
}

Exact abs(const Exact& x) { return x.sign() < 0 ? -x : x; }

ExactVector operator+(const ExactVector& a, const ExactVector& b) {
  ExactVector c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

ExactVector operator-(const ExactVector& a, const ExactVector& b) {
  ExactVector c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

ExactVector operator*(const Exact& s, const ExactVector& a) {
  ExactVector c(a);
  for (auto& v : c) v *= s;
  return c;
}

Exact dot(const ExactVector& a, const ExactVector& b) {
  Exact s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> to_doubles(const ExactVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_double());
  return out;
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<ExactVector>& rows) {
  const int r = int(rows.size());
  const int c = r == 0 ? 0 : int(rows[0].size());
  ExactMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (int(rows[i].size()) != c) throw InvalidInput("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExactVector ExactMatrix::row(int i) const {
  return ExactVector(data_.begin() + std::size_t(i) * cols_, data_.begin() + std::size_t(i + 1) * cols_);
}

ExactVector ExactMatrix::col(int j) const {
  ExactVector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ExactVector ExactMatrix::operator*(const ExactVector& v) const {
  if (int(v.size()) != cols_) throw InvalidInput("dimension mismatch in matrix-vector product");
  ExactVector out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j).sign() != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("dimension mismatch in matrix product");
  ExactMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      if (a(i, k).sign() == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix c(a);
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

std::vector<int> row_reduce(ExactMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col).sign() != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Exact inv = Exact(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).sign() == 0) continue;
      const Exact f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int matrix_rank(ExactMatrix m) { return int(row_reduce(m).size()); }

Exact determinant(ExactMatrix m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square matrix");
  const int n = m.rows();
  Exact det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m(i, col).sign() != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Exact(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const Exact inv = Exact(1) / m(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col).sign() == 0) continue;
      const Exact f = m(i, col) * inv;
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

std::optional<ExactVector> solve_any(const ExactMatrix& a, const ExactVector& b) {
  ExactMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  ExactVector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(int(r), a.cols());
  return x;
}

std::optional<ExactVector> solve(const ExactMatrix& a, const ExactVector& b) {
  if (a.rows() != a.cols() || matrix_rank(a) != a.rows()) return std::nullopt;
  return solve_any(a, b);
}

std::optional<ExactMatrix> inverse(const ExactMatrix& a) {
  const int n = a.rows();
  if (n != a.cols()) return std::nullopt;
  ExactMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (int(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
  ExactMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace jspec
