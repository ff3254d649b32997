// exercises the shared-library C interface end to end
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "popsym.h"

namespace {
struct Str {
  char* s = nullptr;
  ~Str() { popsym_string_free(s); }
  std::string view() const { return s ? s : ""; }
};
struct Ex {
  popsym_expr* e = nullptr;
  ~Ex() { popsym_expr_free(e); }
};
}  // namespace

TEST_CASE("parse, print, round trip") {
  Ex e;
  REQUIRE(popsym_parse("phi_t - 2*phi_x^2 - 2*phi*phi_xx - 2*phi_y^2 - 2*phi*phi_yy + h*phi^theta",
                       &e.e) == POPSYM_OK);
  Str s;
  REQUIRE(popsym_print(e.e, &s.s) == POPSYM_OK);
  Ex back;
  REQUIRE(popsym_parse(s.s, &back.e) == POPSYM_OK);
  Str s2;
  REQUIRE(popsym_print(back.e, &s2.s) == POPSYM_OK);
  CHECK(s.view() == s2.view());
}

TEST_CASE("parse errors carry messages and positions") {
  popsym_expr* e = nullptr;
  CHECK(popsym_parse("x + * y", &e) == POPSYM_ERR_PARSE);
  CHECK(std::string(popsym_last_error()).find("position") != std::string::npos);
  CHECK(popsym_parse("phi_xxxxx", &e) == POPSYM_ERR_PARSE);
}

TEST_CASE("differentiate and zero test") {
  Ex e;
  REQUIRE(popsym_parse("phi^theta", &e.e) == POPSYM_OK);
  Ex d;
  REQUIRE(popsym_differentiate(e.e, "phi", &d.e) == POPSYM_OK);
  Str s;
  REQUIRE(popsym_print(d.e, &s.s) == POPSYM_OK);
  CHECK(s.view() == "(theta)*phi^(theta - 1)");

  Ex gamma_tau;
  REQUIRE(popsym_parse("2*gamma + tau - 1", &gamma_tau.e) == POPSYM_OK);
  int verdict = -1;
  REQUIRE(popsym_is_zero(gamma_tau.e, 0, &verdict) == POPSYM_OK);
  CHECK(verdict == 0);
}

TEST_CASE("substitute and evaluate") {
  Ex e;
  REQUIRE(popsym_parse("phi^theta", &e.e) == POPSYM_OK);
  Ex two_phi;
  REQUIRE(popsym_parse("2*phi", &two_phi.e) == POPSYM_OK);
  Ex sub;
  REQUIRE(popsym_substitute(e.e, "phi", two_phi.e, &sub.e) == POPSYM_OK);
  const char* names[] = {"phi"};
  double values[] = {3.0};
  double out = 0;
  REQUIRE(popsym_eval(sub.e, "1/2", names, values, 1, &out) == POPSYM_OK);
  CHECK(std::abs(out - std::sqrt(6.0)) < 1e-12);
  // domain error: negative base under a fractional power
  double bad = 0;
  double neg[] = {-1.0};
  CHECK(popsym_eval(e.e, "1/2", names, neg, 1, &bad) == POPSYM_ERR_EVAL);
}

TEST_CASE("tables check through the C surface") {
  for (const char* which : {"commutation", "adjoint", "invariants"}) {
    Str s;
    int ok = 0;
    REQUIRE(popsym_tables(which, "text", 1, &s.s, &ok) == POPSYM_OK);
    CHECK(ok == 1);
  }
  Str csv;
  int ok = 0;
  REQUIRE(popsym_tables("adjoint", "csv", 0, &csv.s, &ok) == POPSYM_OK);
  // header plus 25 cells
  int lines = 0;
  for (const char* p = csv.s; *p; ++p) lines += *p == '\n';
  CHECK(lines == 26);
  popsym_expr* dummy = nullptr;
  (void)dummy;
  CHECK(popsym_tables("nonsense", "text", 0, &csv.s, &ok) == POPSYM_ERR_DOMAIN);
}

TEST_CASE("classification through the C surface") {
  const char* alpha[5] = {"1", "5", "2", "3", "-1"};
  Str s;
  int ok = 0;
  REQUIRE(popsym_classify(alpha, "1/2", 1, "json", &s.s, &ok) == POPSYM_OK);
  CHECK(ok == 1);
  CHECK(s.view().find("\"case\":1") != std::string::npos);
  CHECK(s.view().find("X1 + 2*X3") != std::string::npos);
  const char* zero[5] = {"0", "0", "0", "0", "0"};
  CHECK(popsym_classify(zero, "1/2", 0, "text", &s.s, &ok) == POPSYM_ERR_DOMAIN);
}

TEST_CASE("verify scope through the C surface") {
  Str s;
  int ok = 0;
  REQUIRE(popsym_verify("symmetries", "json", nullptr, "1/2", 7, nullptr, &s.s, &ok) ==
          POPSYM_OK);
  CHECK(ok == 1);
  CHECK(s.view().find("\"paper_ref\"") != std::string::npos);
  CHECK(popsym_verify("bogus", "text", nullptr, nullptr, 0, nullptr, &s.s, &ok) ==
        POPSYM_ERR_DOMAIN);
}

TEST_CASE("inadmissible simulation families are rejected") {
  Str s;
  int ok = 0;
  popsym_status st =
      popsym_simulate("S1", "1/2", 0.0, 10, 0, ".", "text", &s.s, &ok);
  CHECK(st == POPSYM_ERR_DOMAIN);
  CHECK(std::string(popsym_last_error()).find("backward parabolic") != std::string::npos);
}

TEST_CASE("grammar is available") {
  Str s;
  REQUIRE(popsym_grammar(&s.s) == POPSYM_OK);
  CHECK(s.view().find("factor") != std::string::npos);
}
