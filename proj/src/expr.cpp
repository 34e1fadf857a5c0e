#include "dichot/expr.hpp"

#include "dichot/quasiconvex.hpp"

#include <cctype>

namespace dichot {

ExprPtr Expr::lit(Rational v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Lit;
  e->value = std::move(v);
  return e;
}

ExprPtr Expr::var() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  return e;
}

ExprPtr Expr::unary(Kind k, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(a)};
  return e;
}

ExprPtr Expr::binary(Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr Expr::with_params(Kind k, std::vector<Rational> params, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->params = std::move(params);
  e->args = std::move(args);
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.params != b.params || a.args.size() != b.args.size()) return false;
  if (a.kind == Expr::Kind::Lit && a.value != b.value) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!(*a.args[i] == *b.args[i])) return false;
  }
  return true;
}

namespace {

std::string describe(const std::set<std::string>& expected) {
  std::string out;
  for (const auto& s : expected) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

InvalidExpression::InvalidExpression(std::size_t position, std::set<std::string> expected, const std::string& msg)
    : std::runtime_error(msg + " at position " + std::to_string(position) +
                         (expected.empty() ? "" : " (expected " + describe(expected) + ")")),
      position_(position),
      expected_(std::move(expected)) {}

// ---- parser ----

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    skip();
    if (i_ != s_.size()) fail({"'+'", "'-'", "'*'", "end of input"}, "unexpected input");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(std::set<std::string> expected, const std::string& msg) const {
    throw InvalidExpression(i_, std::move(expected), msg);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"}, "missing token");
  }
  bool at_digit() {
    skip();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }

  Rational rational() {
    skip();
    const std::size_t start = i_;
    if (!at_digit()) fail({"rational"}, "expected a rational literal");
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail({"positive integer"}, "bad denominator");
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    try {
      return parse_rational(s_.substr(start, i_ - start));
    } catch (const std::invalid_argument&) {
      i_ = start;
      fail({"rational"}, "invalid rational literal");
    }
  }

  Rational signed_rational() {
    const bool neg = accept('-');
    Rational q = rational();
    return neg ? Rational(-q) : q;
  }

  std::string identifier() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (accept('+')) {
        e = Expr::binary(Expr::Kind::Add, e, term());
      } else if (accept('-')) {
        e = Expr::binary(Expr::Kind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (accept('*')) e = Expr::binary(Expr::Kind::Mul, e, factor());
    return e;
  }

  ExprPtr factor() {
    skip();
    if (i_ >= s_.size()) fail({"rational", "'x'", "'-'", "'('", "function"}, "unexpected end of input");
    if (accept('-')) {
      if (at_digit()) return Expr::lit(Rational(-rational()));
      return Expr::unary(Expr::Kind::Neg, factor());
    }
    if (at_digit()) return Expr::lit(rational());
    if (accept('(')) {
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    const std::size_t start = i_;
    const std::string name = identifier();
    if (name == "x") return Expr::var();
    if (name.empty()) fail({"rational", "'x'", "'-'", "'('", "function"}, "unexpected character");
    if (name == "abs" || name == "min" || name == "max" || name == "spike" || name == "step" || name == "stair" ||
        name == "scale") {
      expect('(');
      ExprPtr e = call(name, start);
      expect(')');
      return e;
    }
    i_ = start;
    fail({"'x'", "abs", "min", "max", "spike", "step", "stair", "scale"}, "unknown name '" + name + "'");
  }

  ExprPtr call(const std::string& name, std::size_t start) {
    using K = Expr::Kind;
    if (name == "abs") return Expr::unary(K::Abs, expr());
    if (name == "min" || name == "max") {
      ExprPtr a = expr();
      expect(',');
      return Expr::binary(name == "min" ? K::Min : K::Max, a, expr());
    }
    if (name == "spike") {
      Rational z = signed_rational();
      expect(';');
      Rational eps = signed_rational();
      if (eps <= 0) {
        i_ = start;
        fail({}, "spike width must be positive");
      }
      return Expr::with_params(K::Spike, {z, eps});
    }
    if (name == "step") {
      Rational c = signed_rational();
      expect(';');
      Rational lo = signed_rational();
      expect(',');
      Rational hi = signed_rational();
      return Expr::with_params(K::Step, {c, lo, hi});
    }
    if (name == "stair") {
      std::vector<Rational> params;
      do {
        params.push_back(signed_rational());
        expect(',');
        params.push_back(signed_rational());
        if (params.size() > 2 && !(params[params.size() - 4] < params[params.size() - 2])) {
          fail({}, "stair breakpoints must be strictly increasing");
        }
      } while (accept(';'));
      return Expr::with_params(K::Stair, std::move(params));
    }
    // scale
    Rational k = signed_rational();
    expect(';');
    return Expr::with_params(K::Scale, {k}, {expr()});
  }
};

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) {
  using K = Expr::Kind;
  auto p = [](const ExprPtr& a) { return print(*a); };
  auto r = [](const Rational& q) { return to_string(q); };
  switch (e.kind) {
    case K::Lit: return r(e.value);
    case K::Var: return "x";
    case K::Add: return "(" + p(e.args[0]) + " + " + p(e.args[1]) + ")";
    case K::Sub: return "(" + p(e.args[0]) + " - " + p(e.args[1]) + ")";
    case K::Mul: return "(" + p(e.args[0]) + " * " + p(e.args[1]) + ")";
    case K::Neg: return "-(" + p(e.args[0]) + ")";
    case K::Abs: return "abs(" + p(e.args[0]) + ")";
    case K::Min: return "min(" + p(e.args[0]) + ", " + p(e.args[1]) + ")";
    case K::Max: return "max(" + p(e.args[0]) + ", " + p(e.args[1]) + ")";
    case K::Spike: return "spike(" + r(e.params[0]) + "; " + r(e.params[1]) + ")";
    case K::Step: return "step(" + r(e.params[0]) + "; " + r(e.params[1]) + ", " + r(e.params[2]) + ")";
    case K::Stair: {
      std::string out = "stair(";
      for (std::size_t i = 0; i < e.params.size(); i += 2) {
        out += (i ? "; " : "") + r(e.params[i]) + ", " + r(e.params[i + 1]);
      }
      return out + ")";
    }
    case K::Scale: return "scale(" + r(e.params[0]) + "; " + p(e.args[0]) + ")";
  }
  return "?";
}

// ---- evaluation ----

namespace {

Rational stair_value(const std::vector<Rational>& params, const Rational& q) {
  Rational v = 0;
  for (std::size_t i = 0; i < params.size(); i += 2) {
    if (q >= params[i]) v += params[i + 1];
  }
  return v;
}

}  // namespace

Rational interpret(const Expr& e, const Rational& x) {
  using K = Expr::Kind;
  auto a = [&](std::size_t i) { return interpret(*e.args[i], x); };
  switch (e.kind) {
    case K::Lit: return e.value;
    case K::Var: return x;
    case K::Add: return a(0) + a(1);
    case K::Sub: return a(0) - a(1);
    case K::Mul: return a(0) * a(1);
    case K::Neg: return -a(0);
    case K::Abs: return abs(a(0));
    case K::Min: return min(a(0), a(1));
    case K::Max: return max(a(0), a(1));
    case K::Spike: return spike_value(e.params[0], e.params[1], x);
    case K::Step: return x >= e.params[0] ? e.params[2] : e.params[1];
    case K::Stair: return stair_value(e.params, x);
    case K::Scale: return e.params[0] * a(0);
  }
  return 0;
}

RatInterval image(const Expr& e, const RatInterval& I) {
  using K = Expr::Kind;
  auto a = [&](std::size_t i) { return image(*e.args[i], I); };
  switch (e.kind) {
    case K::Lit: return RatInterval(e.value);
    case K::Var: return I;
    case K::Add: return a(0) + a(1);
    case K::Sub: return a(0) - a(1);
    case K::Mul: return a(0) * a(1);
    case K::Neg: return -a(0);
    case K::Abs: return abs(a(0));
    case K::Min: return min(a(0), a(1));
    case K::Max: return max(a(0), a(1));
    case K::Spike: {
      const Rational& z = e.params[0];
      const Rational& eps = e.params[1];
      const Rational top = spike_value(z, eps, max(I.lo(), min(z, I.hi())));
      const Rational bottom = min(spike_value(z, eps, I.lo()), spike_value(z, eps, I.hi()));
      return RatInterval(bottom, top);
    }
    case K::Step: {
      const Rational& c = e.params[0];
      if (I.hi() < c) return RatInterval(e.params[1]);
      if (I.lo() >= c) return RatInterval(e.params[2]);
      return hull(RatInterval(e.params[1]), RatInterval(e.params[2]));
    }
    case K::Stair: {
      RatInterval out(stair_value(e.params, I.lo()));
      out = hull(out, RatInterval(stair_value(e.params, I.hi())));
      for (std::size_t i = 0; i < e.params.size(); i += 2) {
        const Rational& c = e.params[i];
        if (I.lo() < c && c <= I.hi()) {
          out = hull(out, RatInterval(stair_value(e.params, c)));
          out = hull(out, RatInterval(Rational(stair_value(e.params, c) - e.params[i + 1])));
        }
      }
      return out;
    }
    case K::Scale: return e.params[0] * a(0);
  }
  return RatInterval(Rational(0));
}

bool is_continuous(const Expr& e) {
  if (e.kind == Expr::Kind::Step || e.kind == Expr::Kind::Stair) return false;
  for (const auto& a : e.args) {
    if (!is_continuous(*a)) return false;
  }
  return true;
}

namespace {

ExactReal eval_real(const Expr& e, const ExactReal& x) {
  using K = Expr::Kind;
  auto a = [&](std::size_t i) { return eval_real(*e.args[i], x); };
  switch (e.kind) {
    case K::Lit: return ExactReal(e.value);
    case K::Var: return x;
    case K::Add: return a(0) + a(1);
    case K::Sub: return a(0) - a(1);
    case K::Mul: return a(0) * a(1);
    case K::Neg: return -a(0);
    case K::Abs: return abs(a(0));
    case K::Min: return min(a(0), a(1));
    case K::Max: return max(a(0), a(1));
    case K::Spike:
      return max(ExactReal(0), ExactReal(1) - abs(x - ExactReal(e.params[0])) * ExactReal(Rational(1 / e.params[1])));
    case K::Scale: return ExactReal(e.params[0]) * a(0);
    case K::Step:
    case K::Stair: break;
  }
  throw std::logic_error("eval_real: discontinuous node");
}

}  // namespace

Compiled compile(const ExprPtr& e) {
  Compiled c;
  c.continuous = is_continuous(*e);
  c.rational.eval_q = [e](const Rational& q) { return ExactReal(interpret(*e, q)); };
  c.rational.image = [e](const RatInterval& I) { return image(*e, I); };
  if (!c.continuous) {
    c.real = lift(c.rational);
    return c;
  }
  c.real = RealFn([e](const ExactReal& x, int p, Budget& b) -> Outcome<RatInterval> {
    if (!b.charge(p)) return b.exhausted("expression: budget exhausted at precision " + std::to_string(p));
    if (const auto& q = x.exact_value()) return RatInterval(interpret(*e, *q));
    return eval_real(*e, x).approx(p);
  });
  return c;
}

}  // namespace dichot
