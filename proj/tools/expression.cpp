#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <vector>

namespace illume {

namespace {

using Fn = std::function<double(const Vec&)>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Fn parse() {
    Fn f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fn expr() {
    Fn f = term();
    for (;;) {
      if (accept('+')) {
        Fn g = term();
        f = [f, g](const Vec& x) { return f(x) + g(x); };
      } else if (accept('-')) {
        Fn g = term();
        f = [f, g](const Vec& x) { return f(x) - g(x); };
      } else {
        return f;
      }
    }
  }

  Fn term() {
    Fn f = unary();
    for (;;) {
      if (accept('*')) {
        Fn g = unary();
        f = [f, g](const Vec& x) { return f(x) * g(x); };
      } else if (accept('/')) {
        Fn g = unary();
        f = [f, g](const Vec& x) { return f(x) / g(x); };
      } else {
        return f;
      }
    }
  }

  Fn unary() {
    if (accept('-')) {
      Fn f = unary();
      return [f](const Vec& x) { return -f(x); };
    }
    if (accept('+')) return unary();
    return power();
  }

  Fn power() {
    Fn f = primary();
    if (accept('^')) {
      Fn g = unary();
      return [f, g](const Vec& x) { return std::pow(f(x), g(x)); };
    }
    return f;
  }

  std::vector<Fn> args() {
    std::vector<Fn> out;
    if (accept(')')) return out;
    do {
      out.push_back(expr());
    } while (accept(','));
    if (!accept(')')) fail("expected ')'");
    return out;
  }

  Fn primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      Fn f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return [v](const Vec&) { return v; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (accept('(')) return call(name, args());
      if (name == "x") return [](const Vec& p) { return p.x(); };
      if (name == "y") return [](const Vec& p) { return p.y(); };
      if (name == "z") return [](const Vec& p) { return p.z(); };
      if (name == "r" || name == "norm") return [](const Vec& p) { return p.norm(); };
      if (name == "pi") return [](const Vec&) { return kPi; };
      if (name == "e") return [](const Vec&) { return std::exp(1.0); };
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected character");
  }

  Fn call(const std::string& name, const std::vector<Fn>& a) {
    auto need = [&](std::size_t k) {
      if (a.size() != k) fail(name + " expects " + std::to_string(k) + " argument(s)");
    };
    using U = double (*)(double);
    const std::pair<const char*, U> unary_fns[] = {
        {"exp", [](double v) { return std::exp(v); }},   {"log", [](double v) { return std::log(v); }},
        {"sqrt", [](double v) { return std::sqrt(v); }}, {"sin", [](double v) { return std::sin(v); }},
        {"cos", [](double v) { return std::cos(v); }},   {"abs", [](double v) { return std::abs(v); }},
    };
    for (const auto& [fname, fn] : unary_fns) {
      if (name == fname) {
        need(1);
        Fn f = a[0];
        U g = fn;
        return [f, g](const Vec& x) { return g(f(x)); };
      }
    }
    if (name == "pow") {
      need(2);
      Fn f = a[0];
      Fn g = a[1];
      return [f, g](const Vec& x) { return std::pow(f(x), g(x)); };
    }
    if (name == "norm") {
      need(0);
      return [](const Vec& p) { return p.norm(); };
    }
    fail("unknown function '" + name + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(const Vec&)> compile_expression(const std::string& text) {
  const std::string copy = text;
  return Parser(copy).parse();
}

}  // namespace illume
