#include "jspec/formula.hpp"

#include <cctype>

#include "jspec/error.hpp"

namespace jspec {

namespace {

class Parser {
 public:
  Parser(const std::string& s, const Bindings& v) : s_(s), vars_(v) {}

  long run() {
    const long v = logical_or();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput("formula \"" + s_ + "\": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) != 0) return false;
    pos_ += tok.size();
    return true;
  }

  long logical_or() {
    long v = logical_and();
    while (eat("||")) {
      const long r = logical_and();
      v = (v || r) ? 1 : 0;
    }
    return v;
  }
  long logical_and() {
    long v = comparison();
    while (eat("&&")) {
      const long r = comparison();
      v = (v && r) ? 1 : 0;
    }
    return v;
  }
  long comparison() {
    const long l = additive();
    if (eat("==")) return l == additive();
    if (eat("!=")) return l != additive();
    if (eat("<=")) return l <= additive();
    if (eat(">=")) return l >= additive();
    if (eat("<")) return l < additive();
    if (eat(">")) return l > additive();
    return l;
  }
  long additive() {
    long v = term();
    for (;;) {
      if (eat("+")) v += term();
      else if (eat("-")) v -= term();
      else return v;
    }
  }
  long term() {
    long v = unary();
    for (;;) {
      if (eat("*")) {
        v *= unary();
      } else if (eat("//")) {
        const long d = unary();
        if (d == 0) fail("division by zero");
        long q = v / d;
        if ((v % d != 0) && ((v < 0) != (d < 0))) --q;
        v = q;
      } else if (eat("/")) {
        const long d = unary();
        if (d == 0) fail("division by zero");
        if (v % d != 0) fail("inexact division");
        v /= d;
      } else if (eat("%")) {
        const long d = unary();
        if (d == 0) fail("division by zero");
        v = ((v % d) + d) % d;
      } else {
        return v;
      }
    }
  }
  long unary() {
    if (eat("-")) return -unary();
    if (eat("(")) {
      const long v = logical_or();
      if (!eat(")")) fail("missing ')'");
      return v;
    }
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = 10 * v + (s_[pos_++] - '0');
      return v;
    }
    std::string name;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      name += s_[pos_++];
    if (name.empty()) fail(pos_ < s_.size() ? "unexpected '" + s_.substr(pos_, 1) + "'" : "unexpected end");
    const auto it = vars_.find(name);
    if (it == vars_.end()) fail("unbound parameter " + name);
    return it->second;
  }

  const std::string& s_;
  const Bindings& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

long evaluate_formula(const std::string& expr, const Bindings& vars) { return Parser(expr, vars).run(); }

std::string substitute_label(const std::string& label, const Bindings& vars) {
  std::string out;
  std::size_t i = 0;
  while (i < label.size()) {
    if (label[i] != '{') {
      out += label[i++];
      continue;
    }
    const auto close = label.find('}', i);
    if (close == std::string::npos) throw InvalidInput("unbalanced braces in label " + label);
    const std::string inner = label.substr(i + 1, close - i - 1);
    try {
      out += std::to_string(evaluate_formula(inner, vars));
    } catch (const InvalidInput&) {
      out += "{" + inner + "}";  // leave symbolic when parameters are unbound
    }
    i = close + 1;
  }
  return out;
}

}  // namespace jspec
