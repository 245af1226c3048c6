#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "groupcalc/errors.hpp"
#include "groupcalc/group_class.hpp"

namespace groupcalc::expr {

/// Byte range [begin, end) in the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class BinOp { Add, Sub, Mul, Div, GSum, GSub, GProd, GDiv };

enum class Func { ExpG, LogG, CosG, SinG, GPow, GInt, Deform, DualDeform };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Number {
  double value;
};
struct Variable {
  std::string name;
};
struct Negate {
  Expr operand;
};
struct Binary {
  BinOp op;
  Expr lhs;
  Expr rhs;
};
struct Call {
  Func func;
  std::vector<Expr> args;
};

struct Node {
  std::variant<Number, Variable, Negate, Binary, Call> kind;
  Span span;
};

std::string_view name(Func f);
std::string_view symbol(BinOp op);
/// Number of arguments a function takes.
std::size_t arity(Func f);

/// Precedence climbing over
///   expr   := term (("+" | "-" | "(+)" | "(-)") term)*
///   term   := unary (("*" | "/" | "(*)" | "(/)") unary)*
///   unary  := "-" unary | atom
///   atom   := number | ident | ident "(" args ")" | "(" expr ")"
/// The unicode aliases U+2295..U+2298 and U+2212 are accepted.
Expr parse(std::string_view source);

/// Canonical text; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);

/// Structural equality ignoring spans.
bool equal(const Expr& a, const Expr& b);

/// Thrown when evaluation leaves a domain; carries the span of the subexpression.
class EvalDomainError : public DomainError {
 public:
  EvalDomainError(const std::string& what, Span span) : DomainError(what), span_(span) {}
  Span span() const noexcept { return span_; }

 private:
  Span span_;
};

using Environment = std::map<std::string, double, std::less<>>;

/// Environment holding pi and e.
Environment default_environment();

/// Evaluates under `cls`. Plain operators are ordinary arithmetic, parenthesized
/// ones the deformed versions. Throws EvalDomainError.
double eval(const Expr& e, const GroupClass& cls, const Environment& env = default_environment());

/// Line-oriented loop: each line is an expression or "class <spec>". Results go to
/// `out`, diagnostics to `err`. Returns the number of lines that failed.
int repl(std::istream& in, std::ostream& out, std::ostream& err, GroupClass cls);

}  // namespace groupcalc::expr
