#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "derivkit/derivation.hpp"
#include "derivkit/error.hpp"
#include "derivkit/multipoly.hpp"

namespace derivkit {

/// Variable names accepted by the parser, in canonical order.
inline const std::vector<std::string>& known_variables() {
  static const std::vector<std::string> v{"x", "y", "y1", "y2", "y3", "y4", "y5", "y6", "y7", "y8", "y9"};
  return v;
}

inline constexpr unsigned long kMaxExponent = 1000000;

struct Ast {
  enum class Kind { Number, Variable, Add, Sub, Mul, Pow, Neg };
  Kind kind;
  std::size_t column = 0;  ///< 1-based
  Rat value;
  std::string name;
  unsigned long exponent = 0;
  std::vector<std::unique_ptr<Ast>> children;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view src, std::size_t pos = 0) : src_(src), pos_(pos) {}

  std::unique_ptr<Ast> expr() {
    auto lhs = term();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      auto node = make(c == '+' ? Ast::Kind::Add : Ast::Kind::Sub);
      ++pos_;
      node->children.push_back(std::move(lhs));
      node->children.push_back(term());
      lhs = std::move(node);
    }
  }

  std::size_t pos() const { return pos_; }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

 private:
  std::unique_ptr<Ast> make(Ast::Kind k) const {
    auto n = std::make_unique<Ast>();
    n->kind = k;
    n->column = pos_ + 1;
    return n;
  }

  std::unique_ptr<Ast> term() {
    auto lhs = factor();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '*') {
        auto node = make(Ast::Kind::Mul);
        ++pos_;
        node->children.push_back(std::move(lhs));
        node->children.push_back(factor());
        lhs = std::move(node);
        continue;
      }
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '(')
        fail("implicit multiplication is not allowed; use '*'");
      return lhs;
    }
  }

  // factor := '-' factor | base ('^' nat)?
  std::unique_ptr<Ast> factor() {
    skip_ws();
    if (peek() == '-') {
      auto node = make(Ast::Kind::Neg);
      ++pos_;
      node->children.push_back(factor());
      return node;
    }
    auto b = base();
    skip_ws();
    if (peek() != '^') return b;
    auto node = make(Ast::Kind::Pow);
    ++pos_;
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a nonnegative integer exponent");
    std::size_t start = pos_;
    unsigned long e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<unsigned long>(peek() - '0');
      if (e > kMaxExponent) {
        pos_ = start;
        fail("exponent exceeds " + std::to_string(kMaxExponent));
      }
      ++pos_;
    }
    node->exponent = e;
    node->children.push_back(std::move(b));
    return node;
  }

  std::unique_ptr<Ast> base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::unique_ptr<Ast> number() {
    auto node = make(Ast::Kind::Number);
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    BigInt num(std::string(src_.substr(start, pos_ - start)), 10);
    BigInt den = 1;
    if (peek() == '/') {
      ++pos_;
      std::size_t ds = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (ds == pos_) fail("expected a positive integer denominator");
      den = BigInt(std::string(src_.substr(ds, pos_ - ds)), 10);
      if (den == 0) {
        pos_ = ds;
        fail("denominator must be positive");
      }
    }
    node->value = make_rat(num, den);
    return node;
  }

  std::unique_ptr<Ast> variable() {
    auto node = make(Ast::Kind::Variable);
    std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
    node->name = std::string(src_.substr(start, pos_ - start));
    const auto& known = known_variables();
    if (std::find(known.begin(), known.end(), node->name) == known.end()) {
      pos_ = start;
      fail("unknown variable '" + node->name + "'");
    }
    return node;
  }

  std::string_view src_;
  std::size_t pos_;
};

inline void collect_vars(const Ast& a, std::vector<const Ast*>& out) {
  if (a.kind == Ast::Kind::Variable) out.push_back(&a);
  for (const auto& c : a.children) collect_vars(*c, out);
}

inline std::vector<std::string> canonical_subset(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& k : known_variables())
    if (std::find(names.begin(), names.end(), k) != names.end()) out.push_back(k);
  return out;
}

}  // namespace detail

/// Parses the whole of `src` into an expression tree.
inline std::unique_ptr<Ast> parse_ast(std::string_view src) {
  detail::PolyParser p(src);
  auto ast = p.expr();
  p.skip_ws();
  if (p.pos() != src.size()) p.fail(std::string("unexpected character '") + p.peek() + "'");
  return ast;
}

/// Evaluates an expression tree over the given variables. Throws
/// ParseError at the variable's column if it is not in `vars`.
inline MultiPoly lower(const Ast& a, const std::vector<std::string>& vars) {
  switch (a.kind) {
    case Ast::Kind::Number:
      return MultiPoly::constant(a.value, vars);
    case Ast::Kind::Variable:
      if (std::find(vars.begin(), vars.end(), a.name) == vars.end())
        throw ParseError("variable '" + a.name + "' is not declared", a.column);
      return MultiPoly::variable(vars, a.name);
    case Ast::Kind::Add:
      return lower(*a.children[0], vars) + lower(*a.children[1], vars);
    case Ast::Kind::Sub:
      return lower(*a.children[0], vars) - lower(*a.children[1], vars);
    case Ast::Kind::Mul:
      return lower(*a.children[0], vars) * lower(*a.children[1], vars);
    case Ast::Kind::Pow:
      return lower(*a.children[0], vars).pow(static_cast<unsigned>(a.exponent));
    case Ast::Kind::Neg:
      return -lower(*a.children[0], vars);
  }
  throw std::logic_error("unknown AST node");
}

/// Parses a polynomial over the variables it mentions, in canonical order
/// x, y, y1, ..., y9.
inline MultiPoly parse_poly(std::string_view src) {
  auto ast = parse_ast(src);
  std::vector<const Ast*> uses;
  detail::collect_vars(*ast, uses);
  std::vector<std::string> names;
  for (const auto* u : uses) names.push_back(u->name);
  return lower(*ast, detail::canonical_subset(names));
}

/// Parses a polynomial over a fixed variable list.
inline MultiPoly parse_poly(std::string_view src, const std::vector<std::string>& vars) {
  return lower(*parse_ast(src), vars);
}

/// Parses `deriv{ v1: p1, v2: p2, ... }`. The declared variables, in
/// canonical order, form the ring; every body may use only those.
inline Derivation parse_derivation(std::string_view src) {
  std::size_t pos = 0;
  auto ws = [&] {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    ws();
    if (pos >= src.size() || src[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos + 1);
    ++pos;
  };
  ws();
  if (src.substr(pos, 5) != "deriv") throw ParseError("expected 'deriv'", pos + 1);
  pos += 5;
  expect('{');

  struct Entry {
    std::string name;
    std::unique_ptr<Ast> body;
  };
  std::vector<Entry> entries;
  ws();
  if (pos < src.size() && src[pos] == '}') throw ParseError("empty derivation", pos + 1);
  for (;;) {
    ws();
    std::size_t start = pos;
    while (pos < src.size() && std::isalnum(static_cast<unsigned char>(src[pos]))) ++pos;
    std::string name(src.substr(start, pos - start));
    const auto& known = known_variables();
    if (name.empty()) throw ParseError("expected a variable name", start + 1);
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ParseError("unknown variable '" + name + "'", start + 1);
    for (const auto& e : entries)
      if (e.name == name) throw ParseError("duplicate variable '" + name + "'", start + 1);
    expect(':');
    detail::PolyParser p(src, pos);
    auto body = p.expr();
    pos = p.pos();
    entries.push_back({name, std::move(body)});
    ws();
    if (pos < src.size() && src[pos] == ',') {
      ++pos;
      continue;
    }
    expect('}');
    break;
  }
  ws();
  if (pos != src.size()) throw ParseError("unexpected text after derivation", pos + 1);

  std::vector<std::string> names;
  for (const auto& e : entries) names.push_back(e.name);
  const auto vars = detail::canonical_subset(names);
  std::vector<MultiPoly> images(vars.size());
  for (const auto& e : entries) {
    auto idx = std::find(vars.begin(), vars.end(), e.name) - vars.begin();
    images[idx] = lower(*e.body, vars);
  }
  return Derivation(vars, images);
}

}  // namespace derivkit
