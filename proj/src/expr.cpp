#include "conegrad/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

namespace conegrad {
namespace {

ExprPtr make(ExprKind kind, ExprPtr lhs, ExprPtr rhs = nullptr) {
  return std::make_shared<const Expr>(Expr{kind, 0.0, 0, std::move(lhs), std::move(rhs)});
}

std::optional<double> as_constant(const ExprPtr& e) {
  if (e && e->kind == ExprKind::Constant) return e->value;
  return std::nullopt;
}

// Folds only when the result stays finite; otherwise the node is kept and
// the domain error surfaces at evaluation time.
ExprPtr fold_or(double v, ExprPtr fallback) {
  if (std::isfinite(v)) return constant(v);
  return fallback;
}

bool is_function(ExprKind k) {
  return k == ExprKind::Sin || k == ExprKind::Cos || k == ExprKind::Exp || k == ExprKind::Log ||
         k == ExprKind::Sqrt;
}

std::optional<ExprKind> function_named(std::string_view name) {
  if (name == "sin") return ExprKind::Sin;
  if (name == "cos") return ExprKind::Cos;
  if (name == "exp") return ExprKind::Exp;
  if (name == "log") return ExprKind::Log;
  if (name == "sqrt") return ExprKind::Sqrt;
  return std::nullopt;
}

const char* function_name(ExprKind k) {
  switch (k) {
    case ExprKind::Sin: return "sin";
    case ExprKind::Cos: return "cos";
    case ExprKind::Exp: return "exp";
    case ExprKind::Log: return "log";
    case ExprKind::Sqrt: return "sqrt";
    default: return "?";
  }
}

double eval_function(ExprKind k, double a) {
  switch (k) {
    case ExprKind::Sin: return std::sin(a);
    case ExprKind::Cos: return std::cos(a);
    case ExprKind::Exp: return std::exp(a);
    case ExprKind::Log:
      if (!(a > 0.0)) throw Error(ErrorCode::EvalDomainError, "log of nonpositive value");
      return std::log(a);
    case ExprKind::Sqrt:
      if (!(a >= 0.0)) throw Error(ErrorCode::EvalDomainError, "sqrt of negative value");
      return std::sqrt(a);
    default: throw Error(ErrorCode::InternalInconsistency, "not a function node");
  }
}

double eval_pow(double base, double exponent) {
  const bool integral = std::floor(exponent) == exponent;
  if (!integral && base < 0.0) {
    throw Error(ErrorCode::EvalDomainError, "non-integer power of negative base");
  }
  if (base == 0.0 && exponent < 0.0) throw Error(ErrorCode::EvalDomainError, "negative power of zero");
  return std::pow(base, exponent);
}

// ---------------------------------------------------------------------------
// parser

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  ExprPtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw Error(ErrorCode::SyntaxError, "empty expression", pos_);
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(ExprKind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make(ExprKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(ExprKind::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make(ExprKind::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return make(ExprKind::Neg, parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept('^')) return make(ExprKind::Pow, base, parse_unary());
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("malformed number");
    }
    return constant(value);
  }

  ExprPtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    const bool call = pos_ < text_.size() && text_[pos_] == '(';

    if (auto fn = function_named(name)) {
      if (!call) throw Error(ErrorCode::ArityError, "function '" + name + "' used without an argument", start);
      ++pos_;
      std::vector<ExprPtr> args{parse_expr()};
      while (accept(',')) args.push_back(parse_expr());
      expect(')');
      if (args.size() != 1) {
        throw Error(ErrorCode::ArityError,
                    "function '" + name + "' takes 1 argument, got " + std::to_string(args.size()), start);
      }
      return make(*fn, args.front());
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        if (call) throw Error(ErrorCode::ArityError, "variable '" + name + "' cannot be called", start);
        return variable(i);
      }
    }
    throw Error(ErrorCode::UnknownIdentifier, "unknown identifier '" + name + "'", start);
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

void print(const Expr& e, const std::vector<std::string>& vars, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print(*e.lhs, vars, out);
    out += op;
    print(*e.rhs, vars, out);
    out += ')';
  };
  switch (e.kind) {
    case ExprKind::Constant: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", std::abs(e.value));
      if (std::signbit(e.value)) {
        out += "(-";
        out += buf;
        out += ')';
      } else {
        out += buf;
      }
      return;
    }
    case ExprKind::Variable:
      out += e.index < vars.size() ? vars[e.index] : "x" + std::to_string(e.index);
      return;
    case ExprKind::Add: return binary(" + ");
    case ExprKind::Sub: return binary(" - ");
    case ExprKind::Mul: return binary(" * ");
    case ExprKind::Div: return binary(" / ");
    case ExprKind::Pow: return binary("^");
    case ExprKind::Neg:
      out += "(-";
      print(*e.lhs, vars, out);
      out += ')';
      return;
    default:
      out += function_name(e.kind);
      out += '(';
      print(*e.lhs, vars, out);
      out += ')';
      return;
  }
}

}  // namespace

ExprPtr constant(double v) { return std::make_shared<const Expr>(Expr{ExprKind::Constant, v, 0, nullptr, nullptr}); }

ExprPtr variable(std::size_t index) {
  return std::make_shared<const Expr>(Expr{ExprKind::Variable, 0.0, index, nullptr, nullptr});
}

bool is_constant(const ExprPtr& e, double v) {
  const auto c = as_constant(e);
  return c && *c == v;
}

ExprPtr add(ExprPtr a, ExprPtr b) {
  const auto ca = as_constant(a), cb = as_constant(b);
  if (ca && cb) return fold_or(*ca + *cb, make(ExprKind::Add, a, b));
  if (is_constant(a, 0.0)) return b;
  if (is_constant(b, 0.0)) return a;
  return make(ExprKind::Add, std::move(a), std::move(b));
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  const auto ca = as_constant(a), cb = as_constant(b);
  if (ca && cb) return fold_or(*ca - *cb, make(ExprKind::Sub, a, b));
  if (is_constant(b, 0.0)) return a;
  if (is_constant(a, 0.0)) return neg(std::move(b));
  return make(ExprKind::Sub, std::move(a), std::move(b));
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  const auto ca = as_constant(a), cb = as_constant(b);
  if (ca && cb) return fold_or(*ca * *cb, make(ExprKind::Mul, a, b));
  if (is_constant(a, 0.0) || is_constant(b, 0.0)) return constant(0.0);
  if (is_constant(a, 1.0)) return b;
  if (is_constant(b, 1.0)) return a;
  return make(ExprKind::Mul, std::move(a), std::move(b));
}

ExprPtr div(ExprPtr a, ExprPtr b) {
  const auto ca = as_constant(a), cb = as_constant(b);
  if (ca && cb && *cb != 0.0) return fold_or(*ca / *cb, make(ExprKind::Div, a, b));
  if (is_constant(b, 1.0)) return a;
  if (is_constant(a, 0.0) && cb && *cb != 0.0) return constant(0.0);
  return make(ExprKind::Div, std::move(a), std::move(b));
}

ExprPtr pow(ExprPtr base, ExprPtr exponent) {
  const auto cb = as_constant(base), ce = as_constant(exponent);
  if (cb && ce) {
    try {
      return fold_or(eval_pow(*cb, *ce), make(ExprKind::Pow, base, exponent));
    } catch (const Error&) {
      return make(ExprKind::Pow, std::move(base), std::move(exponent));
    }
  }
  if (is_constant(exponent, 1.0)) return base;
  if (is_constant(exponent, 0.0)) return constant(1.0);
  return make(ExprKind::Pow, std::move(base), std::move(exponent));
}

ExprPtr neg(ExprPtr a) {
  if (const auto c = as_constant(a)) return constant(-*c);
  if (a->kind == ExprKind::Neg) return a->lhs;
  return make(ExprKind::Neg, std::move(a));
}

ExprPtr apply(ExprKind function, ExprPtr arg) {
  if (!is_function(function)) throw Error(ErrorCode::InvalidArgument, "not a unary function kind");
  if (const auto c = as_constant(arg)) {
    try {
      return fold_or(eval_function(function, *c), make(function, arg));
    } catch (const Error&) {
      return make(function, std::move(arg));
    }
  }
  return make(function, std::move(arg));
}

ExprPtr parse_expr(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

ExprPtr differentiate(const ExprPtr& e, std::size_t var) {
  switch (e->kind) {
    case ExprKind::Constant: return constant(0.0);
    case ExprKind::Variable: return constant(e->index == var ? 1.0 : 0.0);
    case ExprKind::Add: return add(differentiate(e->lhs, var), differentiate(e->rhs, var));
    case ExprKind::Sub: return sub(differentiate(e->lhs, var), differentiate(e->rhs, var));
    case ExprKind::Mul:
      return add(mul(differentiate(e->lhs, var), e->rhs), mul(e->lhs, differentiate(e->rhs, var)));
    case ExprKind::Div: {
      // (u/v)' = (u' v - u v') / v^2
      ExprPtr num = sub(mul(differentiate(e->lhs, var), e->rhs), mul(e->lhs, differentiate(e->rhs, var)));
      return div(num, pow(e->rhs, constant(2.0)));
    }
    case ExprKind::Neg: return neg(differentiate(e->lhs, var));
    case ExprKind::Pow: {
      const ExprPtr& u = e->lhs;
      const ExprPtr& p = e->rhs;
      ExprPtr du = differentiate(u, var);
      ExprPtr dp = differentiate(p, var);
      if (const auto c = as_constant(p)) {
        return mul(mul(constant(*c), pow(u, constant(*c - 1.0))), du);
      }
      if (is_constant(dp, 0.0)) {
        return mul(mul(p, pow(u, sub(p, constant(1.0)))), du);
      }
      // u^p (p' log u + p u'/u)
      ExprPtr inner = add(mul(dp, apply(ExprKind::Log, u)), div(mul(p, du), u));
      return mul(e, inner);
    }
    case ExprKind::Sin: return mul(apply(ExprKind::Cos, e->lhs), differentiate(e->lhs, var));
    case ExprKind::Cos: return mul(neg(apply(ExprKind::Sin, e->lhs)), differentiate(e->lhs, var));
    case ExprKind::Exp: return mul(e, differentiate(e->lhs, var));
    case ExprKind::Log: return div(differentiate(e->lhs, var), e->lhs);
    case ExprKind::Sqrt: return div(differentiate(e->lhs, var), mul(constant(2.0), e));
  }
  throw Error(ErrorCode::InternalInconsistency, "unhandled node kind");
}

double evaluate(const Expr& e, std::span<const double> x) {
  switch (e.kind) {
    case ExprKind::Constant: return e.value;
    case ExprKind::Variable:
      if (e.index >= x.size()) throw Error(ErrorCode::DimensionMismatch, "variable index out of range", e.index);
      return x[e.index];
    case ExprKind::Add: return evaluate(*e.lhs, x) + evaluate(*e.rhs, x);
    case ExprKind::Sub: return evaluate(*e.lhs, x) - evaluate(*e.rhs, x);
    case ExprKind::Mul: return evaluate(*e.lhs, x) * evaluate(*e.rhs, x);
    case ExprKind::Div: {
      const double num = evaluate(*e.lhs, x);
      const double den = evaluate(*e.rhs, x);
      if (den == 0.0) throw Error(ErrorCode::EvalDomainError, "division by zero");
      return num / den;
    }
    case ExprKind::Pow: return eval_pow(evaluate(*e.lhs, x), evaluate(*e.rhs, x));
    case ExprKind::Neg: return -evaluate(*e.lhs, x);
    default: return eval_function(e.kind, evaluate(*e.lhs, x));
  }
}

std::string to_string(const Expr& e, const std::vector<std::string>& variables) {
  std::string out;
  print(e, variables, out);
  return out;
}

std::size_t arity(const Expr& e) {
  if (e.kind == ExprKind::Variable) return e.index + 1;
  std::size_t a = 0;
  if (e.lhs) a = std::max(a, arity(*e.lhs));
  if (e.rhs) a = std::max(a, arity(*e.rhs));
  return a;
}

}  // namespace conegrad
