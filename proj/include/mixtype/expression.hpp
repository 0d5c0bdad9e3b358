#pragma once

// Arithmetic expressions t = f(x, y) for user-defined graphs.
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = ("+" | "-") unary | power ;
//   power   = primary [ "^" unary ] ;
//   primary = number | constant | variable | function "(" expr ")" | "(" expr ")" ;
//   constant = "pi" | "e" ;   variable = "x" | "y" | "u" | "v" ;
//   function = "sin" | "cos" | "tan" | "sinh" | "cosh" | "tanh" | "exp" | "log"
//            | "arctan" | "sqrt" ;
//
// '#' starts a comment that runs to the end of the line.

#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "mixtype/errors.hpp"
#include "mixtype/surface.hpp"
#include "mixtype/taylor.hpp"

namespace mixtype {

class Expression {
public:
  static Expression parse(std::string_view text) {
    Parser p{strip_comments(text), 0};
    Expression e;
    e.root_ = p.expr();
    p.skip_ws();
    if (p.pos != p.src.size()) p.fail("unexpected trailing input");
    e.source_ = std::string(text);
    return e;
  }

  static Expression from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open expression file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }

  template <class T>
  T eval(const T& x, const T& y) const {
    return eval_node<T>(*root_, x, y);
  }

  const std::string& source() const { return source_; }

  ScalarGraph as_graph() const {
    return [e = *this](ParamPoint p) { return e.eval(ScalarJet2::variable_x(p.u), ScalarJet2::variable_y(p.v)); };
  }

  SurfaceDef as_surface(std::string name = "graph") const {
    return graph_to_surface(
        as_graph(), std::move(name), Rect::unbounded(), [e = *this](ParamPoint p) { return e.eval(p.u, p.v); },
        [e = *this](ParamPoint p) {
          return e.eval(ScalarJet2x::variable_x(p.u), ScalarJet2x::variable_y(p.v));
        });
  }

private:
  enum class Op { num, var_x, var_y, add, sub, mul, div, neg, pow, func };
  enum class Fn { sin, cos, tan, sinh, cosh, tanh, exp, log, arctan, sqrt };

  struct Node {
    Op op = Op::num;
    double value = 0.0;
    Fn fn = Fn::sin;
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  static NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }
  static NodePtr number(double v) {
    auto n = std::make_shared<Node>();
    n->value = v;
    return n;
  }

  static std::string strip_comments(std::string_view text) {
    std::string out;
    bool comment = false;
    for (char c : text) {
      if (c == '#') comment = true;
      else if (c == '\n') comment = false;
      if (!comment) out.push_back(c);
    }
    return out;
  }

  struct Parser {
    std::string src;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& what) const {
      throw ParseError("expression: " + what + " at offset " + std::to_string(pos));
    }
    void skip_ws() {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool accept(char c) {
      skip_ws();
      if (pos < src.size() && src[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    NodePtr expr() {
      NodePtr lhs = term();
      while (true) {
        if (accept('+')) lhs = make(Op::add, lhs, term());
        else if (accept('-')) lhs = make(Op::sub, lhs, term());
        else return lhs;
      }
    }
    NodePtr term() {
      NodePtr lhs = unary();
      while (true) {
        if (accept('*')) lhs = make(Op::mul, lhs, unary());
        else if (accept('/')) lhs = make(Op::div, lhs, unary());
        else return lhs;
      }
    }
    NodePtr unary() {
      if (accept('-')) return make(Op::neg, unary());
      if (accept('+')) return unary();
      return power();
    }
    NodePtr power() {
      NodePtr base = primary();
      if (accept('^')) return make(Op::pow, base, unary());
      return base;
    }
    NodePtr primary() {
      skip_ws();
      if (pos >= src.size()) fail("unexpected end of input");
      const char c = src[pos];
      if (accept('(')) {
        NodePtr inner = expr();
        if (!accept(')')) fail("expected ')'");
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(src.substr(pos), &used);
        } catch (const std::logic_error&) {
          fail("malformed number");
        }
        pos += used;
        return number(v);
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::size_t start = pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) ++pos;
        const std::string id = src.substr(start, pos - start);
        if (id == "x" || id == "u") return make(Op::var_x);
        if (id == "y" || id == "v") return make(Op::var_y);
        if (id == "pi") return number(std::numbers::pi);
        if (id == "e") return number(std::numbers::e);
        Fn fn;
        if (id == "sin") fn = Fn::sin;
        else if (id == "cos") fn = Fn::cos;
        else if (id == "tan") fn = Fn::tan;
        else if (id == "sinh") fn = Fn::sinh;
        else if (id == "cosh") fn = Fn::cosh;
        else if (id == "tanh") fn = Fn::tanh;
        else if (id == "exp") fn = Fn::exp;
        else if (id == "log") fn = Fn::log;
        else if (id == "arctan") fn = Fn::arctan;
        else if (id == "sqrt") fn = Fn::sqrt;
        else fail("unknown identifier '" + id + "'");
        if (!accept('(')) fail("expected '(' after " + id);
        auto n = std::make_shared<Node>();
        n->op = Op::func;
        n->fn = fn;
        n->a = expr();
        if (!accept(')')) fail("expected ')'");
        return n;
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  };

  template <class T>
  static T eval_node(const Node& n, const T& x, const T& y) {
    using std::atan;
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    using std::tan;
    using std::tanh;
    switch (n.op) {
    case Op::num: return T(n.value);
    case Op::var_x: return x;
    case Op::var_y: return y;
    case Op::add: return eval_node(*n.a, x, y) + eval_node(*n.b, x, y);
    case Op::sub: return eval_node(*n.a, x, y) - eval_node(*n.b, x, y);
    case Op::mul: return eval_node(*n.a, x, y) * eval_node(*n.b, x, y);
    case Op::div: return eval_node(*n.a, x, y) / eval_node(*n.b, x, y);
    case Op::neg: return -eval_node(*n.a, x, y);
    case Op::pow: {
      const T base = eval_node(*n.a, x, y);
      if (n.b->op == Op::num) return pow(base, n.b->value);
      return exp(eval_node(*n.b, x, y) * log(base));
    }
    case Op::func: {
      const T a = eval_node(*n.a, x, y);
      switch (n.fn) {
      case Fn::sin: return sin(a);
      case Fn::cos: return cos(a);
      case Fn::tan: return tan(a);
      case Fn::sinh: return sinh(a);
      case Fn::cosh: return cosh(a);
      case Fn::tanh: return tanh(a);
      case Fn::exp: return exp(a);
      case Fn::log: return log(a);
      case Fn::arctan: return atan(a);
      case Fn::sqrt: return sqrt(a);
      }
    }
    }
    return T(0.0);
  }

  NodePtr root_;
  std::string source_;
};

} // namespace mixtype
