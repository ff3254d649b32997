#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace popsym::symexpr {

using Rational = mpq_class;

// Dense univariate polynomial in theta over Q.
// Invariant: coefficient vector is trimmed (no trailing zeros); zero == empty.
class ThetaPoly {
 public:
  ThetaPoly() = default;
  explicit ThetaPoly(Rational c);
  explicit ThetaPoly(std::vector<Rational> coeffs);

  static ThetaPoly theta();

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const;
  const Rational& leading() const;

  ThetaPoly operator+(const ThetaPoly& o) const;
  ThetaPoly operator-(const ThetaPoly& o) const;
  ThetaPoly operator*(const ThetaPoly& o) const;
  ThetaPoly operator-() const;
  bool operator==(const ThetaPoly& o) const { return c_ == o.c_; }

  // Division with remainder; divisor must be nonzero.
  static void divmod(const ThetaPoly& a, const ThetaPoly& b, ThetaPoly& q, ThetaPoly& r);
  static ThetaPoly gcd(ThetaPoly a, ThetaPoly b);  // monic gcd; gcd(0,0)=0

  ThetaPoly monic() const;
  ThetaPoly scaled(const Rational& s) const;
  ThetaPoly derivative() const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;

  int cmp(const ThetaPoly& o) const;
  std::size_t hash() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Element of Q(theta): num/den with den monic and gcd(num, den) = 1.
// The canonical zero is num = 0, den = 1.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rational(1)) {}
  RatFunc(long n) : RatFunc(Rational(n)) {}  // NOLINT(runtime/explicit) - numeric literal convenience
  explicit RatFunc(Rational r);
  RatFunc(ThetaPoly num, ThetaPoly den);

  static RatFunc theta() { return RatFunc(ThetaPoly::theta(), ThetaPoly(Rational(1))); }
  // (a*theta + b) as a convenience for lattice exponents and linear forms.
  static RatFunc linear(const Rational& a, const Rational& b);

  const ThetaPoly& num() const { return num_; }
  const ThetaPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  // Constant means independent of theta.
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }
  std::optional<Rational> as_rational() const;  // set iff is_constant()
  // Integer-valued constant.
  std::optional<long> as_long() const;
  // Linear form m + n*theta with integer m, n (used by the phi exponent lattice).
  bool as_int_linear(std::int64_t& m, std::int64_t& n) const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;  // throws DomainError on zero divisor
  RatFunc operator-() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc inverse() const;
  RatFunc pow(long n) const;
  RatFunc derivative() const;  // d/dtheta, quotient rule

  // Exact evaluation at theta = x; nullopt when the denominator vanishes.
  std::optional<Rational> eval(const Rational& x) const;
  double eval(double x) const;  // throws EvalError on zero denominator

  // Sign of the leading numerator coefficient (canonical sign of the value
  // as theta -> +inf); 0 for the zero element.
  int sign_key() const;

  int cmp(const RatFunc& o) const;
  std::size_t hash() const;

  std::string to_string() const;  // grammar-compatible rendering

 private:
  void reduce();
  ThetaPoly num_, den_;
};

std::string rational_to_string(const Rational& r);

}  // namespace popsym::symexpr
