#include <cctype>
#include <string>

#include "symexpr/expr.hpp"

namespace popsym::symexpr {

namespace {

// Recursive-descent parser for the documented grammar:
//
//   expr    = ["-"] term { ("+"|"-") term }
//   term    = factor { ("*"|"/") factor }
//   factor  = primary [ "^" factor ]
//   primary = number | ident | call | "(" expr ")" | "-" primary
//   call    = ("exp"|"ln"|"sin"|"cos") "(" expr ")" | "pow" "(" expr "," expr ")"
//   number  = digits [ "." digits ]
//   ident   = letter { letter | digit | "_" | "'" }
//
// Jet variables are written phi, phi_x, phi_xy, ... (psi likewise); theta is
// the porous exponent; every other identifier is a named parameter.
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Expr parse_expr() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    Expr acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+'))
        acc += parse_term();
      else if (eat('-'))
        acc -= parse_term();
      else
        break;
    }
    return acc;
  }

  Expr parse_term() {
    Expr acc = parse_factor();
    while (true) {
      if (eat('*'))
        acc = acc * parse_factor();
      else if (eat('/'))
        acc = acc / parse_factor();
      else
        break;
    }
    return acc;
  }

  Expr parse_factor() {
    Expr base = parse_primary();
    if (eat('^')) {
      Expr e = parse_factor();  // right associative
      return make_pow(base, e);
    }
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -parse_primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr parse_number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string intpart = s_.substr(start, pos_ - start);
    std::string fracpart;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      fracpart = s_.substr(fs, pos_ - fs);
      if (fracpart.empty()) fail("digits expected after '.'");
    }
    // decimal literals become exact rationals
    Rational num(intpart + fracpart);
    if (!fracpart.empty()) {
      mpz_class den(1);
      for (std::size_t i = 0; i < fracpart.size(); ++i) den *= 10;
      num /= Rational(den);
    }
    num.canonicalize();
    return Expr(num);
  }

  Expr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
            s_[pos_] == '\''))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);

    if (name == "exp" || name == "ln" || name == "sin" || name == "cos") {
      if (!eat('(')) fail("expected '(' after function name");
      Expr a = parse_expr();
      if (!eat(')')) fail("expected ')'");
      if (name == "exp") return make_exp(a);
      if (name == "ln") return make_ln(a);
      if (name == "sin") return make_sin(a);
      return make_cos(a);
    }
    if (name == "pow") {
      if (!eat('(')) fail("expected '(' after pow");
      Expr a = parse_expr();
      if (!eat(',')) fail("expected ',' in pow");
      Expr b = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return make_pow(a, b);
    }

    if (name == "x") return Expr::x();
    if (name == "y") return Expr::y();
    if (name == "t") return Expr::t();
    if (name == "theta") return Expr::theta();

    if (name == "phi" || name == "psi" || name.rfind("phi_", 0) == 0 ||
        name.rfind("psi_", 0) == 0) {
      JetBase base = name[0] == 'p' && name[1] == 'h' ? JetBase::Phi : JetBase::Psi;
      int nx = 0, ny = 0, nt = 0;
      if (name.size() > 3) {
        if (name[3] != '_' || name.size() == 4) fail("unknown identifier '" + name + "'");
        for (std::size_t i = 4; i < name.size(); ++i) {
          switch (name[i]) {
            case 'x': ++nx; break;
            case 'y': ++ny; break;
            case 't': ++nt; break;
            default: fail("unknown jet suffix in '" + name + "'");
          }
        }
      }
      if (nx + ny + nt > kMaxJetOrder)
        fail("jet order above " + std::to_string(kMaxJetOrder) + " in '" + name + "'");
      return Expr::jet(base, nx, ny, nt);
    }

    // any other identifier is a named parameter (gamma, tau, h, c1..c5, ...)
    return Expr::param(name);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

}  // namespace popsym::symexpr
