#include "groupcalc/exprlang.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "groupcalc/algebra.hpp"
#include "groupcalc/format.hpp"

namespace groupcalc::expr {

namespace {

constexpr std::array<std::pair<Func, std::string_view>, 8> kFunctions{{
    {Func::ExpG, "expG"},
    {Func::LogG, "logG"},
    {Func::CosG, "cosG"},
    {Func::SinG, "sinG"},
    {Func::GPow, "gpow"},
    {Func::GInt, "gint"},
    {Func::Deform, "deform"},
    {Func::DualDeform, "dualdeform"},
}};

std::optional<Func> lookup(std::string_view n) {
  for (const auto& [f, s] : kFunctions) {
    if (s == n) return f;
  }
  return std::nullopt;
}

std::vector<std::string> function_names() {
  std::vector<std::string> out;
  for (const auto& [f, s] : kFunctions) out.emplace_back(s);
  return out;
}

enum class Tok { Number, Ident, Op, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  Span span;
  double number = 0.0;
  BinOp op = BinOp::Add;
  std::string_view text{};
};

// UTF-8 encodings of the accepted aliases.
constexpr std::string_view kMinusSign = "\xE2\x88\x92";
constexpr std::array<std::pair<std::string_view, BinOp>, 4> kCircled{{
    {"\xE2\x8A\x95", BinOp::GSum},
    {"\xE2\x8A\x96", BinOp::GSub},
    {"\xE2\x8A\x97", BinOp::GProd},
    {"\xE2\x8A\x98", BinOp::GDiv},
}};

const std::vector<std::string> kOperandStart{"number", "identifier", "(", "-"};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, {start, start}};
    const std::string_view rest = src_.substr(pos_);
    const char c = rest[0];

    if (c == '(') {
      for (const auto& [text, op] : deformed_spellings()) {
        if (rest.starts_with(text)) {
          pos_ += text.size();
          return {Tok::Op, {start, pos_}, 0.0, op};
        }
      }
      ++pos_;
      return {Tok::LParen, {start, pos_}};
    }
    if (c == ')') return single(Tok::RParen);
    if (c == ',') return single(Tok::Comma);
    if (c == '+') return single_op(BinOp::Add);
    if (c == '-') return single_op(BinOp::Sub);
    if (c == '*') return single_op(BinOp::Mul);
    if (c == '/') return single_op(BinOp::Div);
    if (rest.starts_with(kMinusSign)) {
      pos_ += kMinusSign.size();
      return {Tok::Op, {start, pos_}, 0.0, BinOp::Sub};
    }
    for (const auto& [text, op] : kCircled) {
      if (rest.starts_with(text)) {
        pos_ += text.size();
        return {Tok::Op, {start, pos_}, 0.0, op};
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      return {Tok::Ident, {start, pos_}, 0.0, BinOp::Add, src_.substr(start, pos_ - start)};
    }
    throw ParseError("unexpected character at offset " + std::to_string(start), start, kOperandStart);
  }

 private:
  static const std::array<std::pair<std::string_view, BinOp>, 5>& deformed_spellings() {
    static const std::array<std::pair<std::string_view, BinOp>, 5> s{{
        {"(+)", BinOp::GSum},
        {"(-)", BinOp::GSub},
        {"(\xE2\x88\x92)", BinOp::GSub},
        {"(*)", BinOp::GProd},
        {"(/)", BinOp::GDiv},
    }};
    return s;
  }

  Token single(Tok kind) {
    ++pos_;
    return {kind, {pos_ - 1, pos_}};
  }
  Token single_op(BinOp op) {
    ++pos_;
    return {Tok::Op, {pos_ - 1, pos_}, 0.0, op};
  }

  Token number(std::size_t start) {
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t count = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw ParseError("malformed number", start, {"digit"});
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError("malformed exponent", pos_, {"digit"});
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc{} || !std::isfinite(v)) {
      throw ParseError("number out of range", start, {"finite number"});
    }
    return {Tok::Number, {start, pos_}, v};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

bool additive(BinOp op) {
  return op == BinOp::Add || op == BinOp::Sub || op == BinOp::GSum || op == BinOp::GSub;
}

Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  Expr run() {
    Expr e = expression();
    if (tok_.kind != Tok::End) {
      throw ParseError("unexpected input at offset " + std::to_string(tok_.span.begin), tok_.span.begin,
                       {"operator", "end of input"});
    }
    return e;
  }

 private:
  void advance() { tok_ = lex_.next(); }

  Expr expression() {
    Expr lhs = term();
    while (tok_.kind == Tok::Op && additive(tok_.op)) {
      const BinOp op = tok_.op;
      advance();
      Expr rhs = term();
      const Span s{lhs->span.begin, rhs->span.end};
      lhs = make({Binary{op, lhs, rhs}, s});
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (tok_.kind == Tok::Op && !additive(tok_.op)) {
      const BinOp op = tok_.op;
      advance();
      Expr rhs = unary();
      const Span s{lhs->span.begin, rhs->span.end};
      lhs = make({Binary{op, lhs, rhs}, s});
    }
    return lhs;
  }

  Expr unary() {
    if (tok_.kind == Tok::Op && tok_.op == BinOp::Sub) {
      const std::size_t begin = tok_.span.begin;
      advance();
      Expr operand = unary();
      const Span s{begin, operand->span.end};
      return make({Negate{operand}, s});
    }
    return atom();
  }

  Expr atom() {
    const Token t = tok_;
    switch (t.kind) {
      case Tok::Number:
        advance();
        return make({Number{t.number}, t.span});
      case Tok::LParen: {
        advance();
        Expr inner = expression();
        expect(Tok::RParen, ")");
        return inner;
      }
      case Tok::Ident:
        advance();
        if (tok_.kind == Tok::LParen) return call(t);
        if (lookup(t.text)) {
          throw ParseError("function '" + std::string(t.text) + "' needs an argument list", tok_.span.begin,
                           {"("});
        }
        return make({Variable{std::string(t.text)}, t.span});
      default:
        throw ParseError(t.kind == Tok::End ? "unexpected end of input"
                                            : "expected an operand at offset " + std::to_string(t.span.begin),
                         t.span.begin, kOperandStart);
    }
  }

  Expr call(const Token& ident) {
    const auto f = lookup(ident.text);
    if (!f) {
      throw ParseError("unknown function '" + std::string(ident.text) + "'", ident.span.begin, function_names());
    }
    advance();  // "("
    std::vector<Expr> args;
    const std::size_t n = arity(*f);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) expect(Tok::Comma, ",");
      args.push_back(expression());
    }
    const std::size_t end = tok_.span.end;
    expect(Tok::RParen, ")");
    return make({Call{*f, std::move(args)}, {ident.span.begin, end}});
  }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) {
      std::vector<std::string> expected{what};
      if (kind == Tok::RParen || kind == Tok::Comma) expected.insert(expected.begin(), "operator");
      throw ParseError(std::string("expected '") + what + "' at offset " + std::to_string(tok_.span.begin),
                       tok_.span.begin, std::move(expected));
    }
    advance();
  }

  Lexer lex_;
  Token tok_{Tok::End, {}};
};

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e->kind)) return additive(b->op) ? 1 : 2;
  if (std::holds_alternative<Negate>(e->kind)) return 3;
  return 4;
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + print(e) + ")" : print(e); }

[[noreturn]] void fail(const std::string& what, Span span) {
  throw EvalDomainError(what + " (bytes " + std::to_string(span.begin) + ".." + std::to_string(span.end) + ")",
                        span);
}

long integral_argument(double v, Span span) {
  if (!(std::floor(v) == v) || std::abs(v) > 9.007199254740992e15) {
    fail("expected an integer argument, got " + shortest_repr(v), span);
  }
  return static_cast<long>(v);
}

double evaluate(const Expr& e, const GroupClass& cls, const Environment& env);

double apply_binary(const Binary& b, double x, double y, const GroupClass& cls) {
  switch (b.op) {
    case BinOp::Add: return x + y;
    case BinOp::Sub: return x - y;
    case BinOp::Mul: return x * y;
    case BinOp::Div: return x / y;
    case BinOp::GSum: return g_sum(cls, x, y);
    case BinOp::GSub: return g_sub(cls, x, y);
    case BinOp::GProd: return g_prod(cls, x, y);
    case BinOp::GDiv: return g_div(cls, x, y);
  }
  return 0.0;
}

double apply_call(const Call& c, const GroupClass& cls, const Environment& env) {
  const double x = evaluate(c.args[0], cls, env);
  switch (c.func) {
    case Func::ExpG: return exp_g(cls, x);
    case Func::LogG: return log_g(cls, x);
    case Func::CosG: return cos_g(cls, x);
    case Func::SinG: return sin_g(cls, x);
    case Func::GPow: {
      const double n = evaluate(c.args[1], cls, env);
      return g_pow(cls, x, integral_argument(n, c.args[1]->span));
    }
    case Func::GInt: return g_integer(cls, integral_argument(x, c.args[0]->span)).value;
    case Func::Deform: return deform(cls, x).value;
    case Func::DualDeform: return dual_deform(cls, x).value;
  }
  return 0.0;
}

double evaluate(const Expr& e, const GroupClass& cls, const Environment& env) {
  double v = 0.0;
  try {
    if (const auto* n = std::get_if<Number>(&e->kind)) {
      v = n->value;
    } else if (const auto* var = std::get_if<Variable>(&e->kind)) {
      const auto it = env.find(var->name);
      if (it == env.end()) fail("unbound variable '" + var->name + "'", e->span);
      v = it->second;
    } else if (const auto* neg = std::get_if<Negate>(&e->kind)) {
      v = -evaluate(neg->operand, cls, env);
    } else if (const auto* b = std::get_if<Binary>(&e->kind)) {
      const double x = evaluate(b->lhs, cls, env);
      const double y = evaluate(b->rhs, cls, env);
      v = apply_binary(*b, x, y, cls);
    } else {
      v = apply_call(std::get<Call>(e->kind), cls, env);
    }
  } catch (const EvalDomainError&) {
    throw;
  } catch (const DomainError& err) {
    fail(err.what(), e->span);
  }
  if (!std::isfinite(v)) fail("result is not finite", e->span);
  return v;
}

}  // namespace

std::string_view name(Func f) {
  for (const auto& [g, s] : kFunctions) {
    if (g == f) return s;
  }
  return {};
}

std::string_view symbol(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::GSum: return "(+)";
    case BinOp::GSub: return "(-)";
    case BinOp::GProd: return "(*)";
    case BinOp::GDiv: return "(/)";
  }
  return {};
}

std::size_t arity(Func f) { return f == Func::GPow ? 2 : 1; }

Expr parse(std::string_view source) { return Parser(source).run(); }

std::string print(const Expr& e) {
  if (const auto* n = std::get_if<Number>(&e->kind)) return shortest_repr(n->value);
  if (const auto* v = std::get_if<Variable>(&e->kind)) return v->name;
  if (const auto* neg = std::get_if<Negate>(&e->kind)) return "-" + wrap(neg->operand, precedence(neg->operand) < 3);
  if (const auto* b = std::get_if<Binary>(&e->kind)) {
    const int p = precedence(e);
    return wrap(b->lhs, precedence(b->lhs) < p) + " " + std::string(symbol(b->op)) + " " +
           wrap(b->rhs, precedence(b->rhs) <= p);
  }
  const auto& c = std::get<Call>(e->kind);
  std::string out(name(c.func));
  out += '(';
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += print(c.args[i]);
  }
  return out + ')';
}

bool equal(const Expr& a, const Expr& b) {
  if (a->kind.index() != b->kind.index()) return false;
  if (const auto* n = std::get_if<Number>(&a->kind)) return n->value == std::get<Number>(b->kind).value;
  if (const auto* v = std::get_if<Variable>(&a->kind)) return v->name == std::get<Variable>(b->kind).name;
  if (const auto* neg = std::get_if<Negate>(&a->kind)) return equal(neg->operand, std::get<Negate>(b->kind).operand);
  if (const auto* x = std::get_if<Binary>(&a->kind)) {
    const auto& y = std::get<Binary>(b->kind);
    return x->op == y.op && equal(x->lhs, y.lhs) && equal(x->rhs, y.rhs);
  }
  const auto& x = std::get<Call>(a->kind);
  const auto& y = std::get<Call>(b->kind);
  if (x.func != y.func || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (!equal(x.args[i], y.args[i])) return false;
  }
  return true;
}

Environment default_environment() { return {{"pi", std::numbers::pi}, {"e", std::numbers::e}}; }

double eval(const Expr& e, const GroupClass& cls, const Environment& env) { return evaluate(e, cls, env); }

int repl(std::istream& in, std::ostream& out, std::ostream& err, GroupClass cls) {
  int failures = 0;
  std::string line;
  const auto env = default_environment();
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string_view body = std::string_view(line).substr(first);
    if (body == "quit" || body == "exit") break;
    std::size_t caret_base = 0;
    try {
      if (body.starts_with("class ")) {
        caret_base = 6;
        std::string_view spec = body.substr(6);
        while (!spec.empty() && (spec.back() == ' ' || spec.back() == '\r')) spec.remove_suffix(1);
        cls = GroupClass::parse(spec);
        out << "class " << cls.spec() << '\n';
        continue;
      }
      out << format12(eval(parse(body), cls, env)) << '\n';
    } catch (const ParseError& e) {
      ++failures;
      err << "parse error: " << e.what() << '\n' << "  " << body << '\n'
          << "  " << std::string(caret_base + e.offset(), ' ') << "^\n";
    } catch (const std::exception& e) {
      ++failures;
      err << "error: " << e.what() << '\n';
    }
  }
  return failures;
}

}  // namespace groupcalc::expr
