#include "symexpr/ratfunc.hpp"

#include <algorithm>
#include <sstream>

#include "symexpr/errors.hpp"

namespace popsym::symexpr {

namespace {
std::size_t hash_mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}
std::size_t hash_rational(const Rational& r) {
  // cheap structural hash from the decimal rendering; exactness not required
  std::string s = r.get_str();
  return std::hash<std::string>{}(s);
}
}  // namespace

ThetaPoly::ThetaPoly(Rational c) {
  if (c != 0) c_.push_back(std::move(c));
}

ThetaPoly::ThetaPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

ThetaPoly ThetaPoly::theta() {
  return ThetaPoly(std::vector<Rational>{Rational(0), Rational(1)});
}

void ThetaPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational ThetaPoly::coeff(std::size_t k) const {
  return k < c_.size() ? c_[k] : Rational(0);
}

const Rational& ThetaPoly::leading() const {
  static const Rational zero(0);
  return c_.empty() ? zero : c_.back();
}

ThetaPoly ThetaPoly::operator+(const ThetaPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return ThetaPoly(std::move(r));
}

ThetaPoly ThetaPoly::operator-(const ThetaPoly& o) const { return *this + (-o); }

ThetaPoly ThetaPoly::operator-() const {
  std::vector<Rational> r(c_);
  for (auto& x : r) x = -x;
  return ThetaPoly(std::move(r));
}

ThetaPoly ThetaPoly::operator*(const ThetaPoly& o) const {
  if (is_zero() || o.is_zero()) return ThetaPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return ThetaPoly(std::move(r));
}

void ThetaPoly::divmod(const ThetaPoly& a, const ThetaPoly& b, ThetaPoly& q, ThetaPoly& r) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem(a.c_);
  std::vector<Rational> quo;
  int db = b.degree();
  if (static_cast<int>(rem.size()) - 1 >= db) quo.assign(rem.size() - db, Rational(0));
  while (static_cast<int>(rem.size()) - 1 >= db && !rem.empty()) {
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    int dr = static_cast<int>(rem.size()) - 1;
    if (dr < db || rem.empty()) break;
    Rational f = rem.back() / b.leading();
    quo[dr - db] = f;
    for (int i = 0; i <= db; ++i) rem[dr - db + i] -= f * b.c_[i];
  }
  q = ThetaPoly(std::move(quo));
  r = ThetaPoly(std::move(rem));
}

ThetaPoly ThetaPoly::gcd(ThetaPoly a, ThetaPoly b) {
  while (!b.is_zero()) {
    ThetaPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

ThetaPoly ThetaPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading());
}

ThetaPoly ThetaPoly::scaled(const Rational& s) const {
  std::vector<Rational> r(c_);
  for (auto& x : r) x *= s;
  return ThetaPoly(std::move(r));
}

ThetaPoly ThetaPoly::derivative() const {
  if (c_.size() <= 1) return ThetaPoly();
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return ThetaPoly(std::move(r));
}

Rational ThetaPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double ThetaPoly::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

int ThetaPoly::cmp(const ThetaPoly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size() ? -1 : 1;
  for (std::size_t i = c_.size(); i-- > 0;) {
    int s = ::cmp(c_[i], o.c_[i]);
    if (s != 0) return s;
  }
  return 0;
}

std::size_t ThetaPoly::hash() const {
  std::size_t h = 0x51ed2701;
  for (const auto& x : c_) h = hash_mix(h, hash_rational(x));
  return h;
}

RatFunc::RatFunc(Rational r) : num_(ThetaPoly(std::move(r))), den_(ThetaPoly(Rational(1))) {}

RatFunc::RatFunc(ThetaPoly num, ThetaPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  reduce();
}

RatFunc RatFunc::linear(const Rational& a, const Rational& b) {
  return RatFunc(ThetaPoly(std::vector<Rational>{b, a}), ThetaPoly(Rational(1)));
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = ThetaPoly(Rational(1));
    return;
  }
  ThetaPoly g = ThetaPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    ThetaPoly q, r;
    ThetaPoly::divmod(num_, g, q, r);
    num_ = q;
    ThetaPoly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    den_ = den_.scaled(Rational(1) / lead);
    num_ = num_.scaled(Rational(1) / lead);
  }
}

bool RatFunc::is_one() const {
  return num_.degree() == 0 && den_.degree() == 0 && num_.coeff(0) == 1;
}

std::optional<Rational> RatFunc::as_rational() const {
  if (!is_constant()) return std::nullopt;
  if (num_.is_zero()) return Rational(0);
  return num_.coeff(0) / den_.coeff(0);
}

std::optional<long> RatFunc::as_long() const {
  auto r = as_rational();
  if (!r) return std::nullopt;
  if (r->get_den() != 1) return std::nullopt;
  if (!r->get_num().fits_slong_p()) return std::nullopt;
  return r->get_num().get_si();
}

bool RatFunc::as_int_linear(std::int64_t& m, std::int64_t& n) const {
  if (den_.degree() != 0 || num_.degree() > 1) return false;
  Rational d = den_.coeff(0);
  Rational c0 = num_.coeff(0) / d;
  Rational c1 = num_.coeff(1) / d;
  if (c0.get_den() != 1 || c1.get_den() != 1) return false;
  if (!c0.get_num().fits_slong_p() || !c1.get_num().fits_slong_p()) return false;
  m = c0.get_num().get_si();
  n = c1.get_num().get_si();
  return true;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of the zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long n) const {
  if (n == 0) return RatFunc(Rational(1));
  RatFunc base = n < 0 ? inverse() : *this;
  long k = n < 0 ? -n : n;
  RatFunc acc(Rational(1));
  for (long i = 0; i < k; ++i) acc = acc * base;
  return acc;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::optional<Rational> RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) return std::nullopt;
  return num_.eval(x) / d;
}

double RatFunc::eval(double x) const {
  double d = den_.eval(x);
  if (d == 0.0) throw EvalError("coefficient denominator vanishes at theta sample");
  return num_.eval(x) / d;
}

int RatFunc::sign_key() const { return sgn(num_.leading()); }

int RatFunc::cmp(const RatFunc& o) const {
  int s = num_.cmp(o.num_);
  if (s != 0) return s;
  return den_.cmp(o.den_);
}

std::size_t RatFunc::hash() const { return hash_mix(num_.hash(), den_.hash()); }

std::string rational_to_string(const Rational& r) { return r.get_str(); }

namespace {
// renders a polynomial as e.g. "2*theta^2 - theta + 1/3"
std::string poly_to_string(const ThetaPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = (a == 1);
    if (k == 0 || !unit) os << rational_to_string(a);
    if (k > 0) {
      if (!unit) os << "*";
      os << "theta";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}
}  // namespace

std::string RatFunc::to_string() const {
  if (is_zero()) return "0";
  auto r = as_rational();
  if (r) return rational_to_string(*r);
  std::string n = poly_to_string(num_);
  if (den_.degree() == 0) {
    // denominator is the constant 1 after normalization
    return "(" + n + ")";
  }
  return "(" + n + ")/(" + poly_to_string(den_) + ")";
}

}  // namespace popsym::symexpr
