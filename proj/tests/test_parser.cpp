#include <doctest.h>

#include "symexpr/expr.hpp"

using namespace popsym::symexpr;

TEST_CASE("parses the governing equation") {
  Expr delta = parse("phi_t - 2*phi_x^2 - 2*phi*phi_xx - 2*phi_y^2 - 2*phi*phi_yy + h*phi^theta");
  Expr want = Expr::jet(JetBase::Phi, 0, 0, 1) -
              Expr(2) * pow_int(Expr::jet(JetBase::Phi, 1, 0, 0), 2) -
              Expr(2) * Expr::phi() * Expr::jet(JetBase::Phi, 2, 0, 0) -
              Expr(2) * pow_int(Expr::jet(JetBase::Phi, 0, 1, 0), 2) -
              Expr(2) * Expr::phi() * Expr::jet(JetBase::Phi, 0, 2, 0) +
              Expr::param("h") * make_pow(Expr::phi(), Expr::theta());
  CHECK(delta == want);
}

TEST_CASE("parses zero") {
  CHECK(parse("0").is_zero());
  CHECK(parse("x - x").is_zero());
}

TEST_CASE("lattice exponent arithmetic in the grammar") {
  Expr e = parse("phi^theta * phi^(-1)");
  CHECK(e == make_pow(Expr::phi(), Expr::theta() - Expr(1)));
}

TEST_CASE("jet spelling is flexible but canonical") {
  CHECK(parse("phi_xy") == parse("phi_yx"));
  CHECK(parse("phi_xxt") == parse("phi_txx"));
}

TEST_CASE("decimal literals are exact rationals") {
  CHECK(parse("0.5") == Expr(Rational(1, 2)));
  CHECK(parse("2.25*x") == Expr(Rational(9, 4)) * Expr::x());
}

TEST_CASE("errors carry positions") {
  CHECK_THROWS_AS(parse("x + * y"), popsym::ParseError);
  CHECK_THROWS_AS(parse("phi_q"), popsym::ParseError);
  CHECK_THROWS_AS(parse("phi_xxxxx"), popsym::ParseError);
  CHECK_THROWS_AS(parse("(x + y"), popsym::ParseError);
}

TEST_CASE("functions and pow form") {
  Expr a = parse("exp(ln(x + 1))");
  CHECK(a == Expr::x() + Expr(1));
  Expr b = parse("pow(x + y, -1)");
  CHECK(b == make_pow(Expr::x() + Expr::y(), Expr(-1L)));
  Expr c = parse("sin(x)^2 + cos(x)^2");
  CHECK(c == Expr(1));
}

TEST_CASE("print then parse is the identity") {
  const char* samples[] = {
      "phi_t - 2*phi_x^2 - 2*phi*phi_xx - 2*phi_y^2 - 2*phi*phi_yy + h*phi^theta",
      "gamma*x*phi_x + tau*phi",
      "sin(k*ln(t))*x - cos(k*ln(t))*y",
      "exp(ln(16/(h*(theta-2)^2*(x^2+y^2)))/(theta-2))",
      "1/(theta-1)*phi + (theta-2)/(2*theta-2)*x*phi_x",
      "pow(x^2+y^2, -2)*h^3",
  };
  for (const char* s : samples) {
    Expr e = parse(s);
    Expr back = parse(e.str());
    CHECK(back == e);
  }
}
