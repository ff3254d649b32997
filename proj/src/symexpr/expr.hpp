#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symexpr/errors.hpp"
#include "symexpr/ratfunc.hpp"

namespace popsym::symexpr {

enum class Space : std::uint8_t { X = 0, Y = 1, T = 2 };

// Two jet families live in the kernel: the model field phi and the opaque
// multiplier psi used while deriving the adjoint equation.
enum class JetBase : std::uint8_t { Phi = 0, Psi = 1 };

inline constexpr int kMaxJetOrder = 4;

struct JetIndex {
  std::uint8_t nx = 0, ny = 0, nt = 0;

  JetIndex() = default;
  JetIndex(int x, int y, int t);

  int order() const { return nx + ny + nt; }
  JetIndex incremented(Space s) const;
  int count(Space s) const;

  friend bool operator==(const JetIndex& a, const JetIndex& b) {
    return a.nx == b.nx && a.ny == b.ny && a.nt == b.nt;
  }
};

enum class KernelKind : std::uint8_t { Inv = 0, Exp = 1, Ln = 2, Sin = 3, Cos = 4 };

class Expr;
struct KernelNode;

class Atom {
 public:
  enum class Tag : std::uint8_t { Var = 0, Jet = 1, Param = 2, Kernel = 3 };

  static Atom var(Space s);
  static Atom jet(JetBase b, JetIndex idx);
  static Atom param(std::string name);
  static Atom kernel(KernelKind k, Expr arg);

  Tag tag() const { return tag_; }
  Space space() const { return space_; }
  JetBase jet_base() const { return jbase_; }
  const JetIndex& jet_index() const { return jidx_; }
  const std::string& param_name() const { return pname_; }
  const KernelNode& kernel() const { return *knode_; }

  bool is_var(Space s) const { return tag_ == Tag::Var && space_ == s; }
  bool is_jet() const { return tag_ == Tag::Jet; }
  bool is_phi() const;  // the dependent variable itself: jet(Phi, 0,0,0)
  bool is_param(const std::string& n) const { return tag_ == Tag::Param && pname_ == n; }
  bool is_kernel(KernelKind k) const;

  int cmp(const Atom& o) const;
  bool operator==(const Atom& o) const { return cmp(o) == 0; }
  bool operator<(const Atom& o) const { return cmp(o) < 0; }
  std::size_t hash() const;

  std::string str() const;

 private:
  Atom() = default;
  Tag tag_ = Tag::Var;
  Space space_ = Space::X;
  JetBase jbase_ = JetBase::Phi;
  JetIndex jidx_;
  std::string pname_;
  std::shared_ptr<const KernelNode> knode_;
};

// One multiplicand: atom^(em + en*theta). The theta part `en` is only ever
// nonzero for the phi atom (the Z + Z*theta exponent lattice).
struct Factor {
  Atom atom;
  std::int64_t em = 1;
  std::int64_t en = 0;

  int cmp(const Factor& o) const;
};

struct Term {
  RatFunc coeff;
  std::vector<Factor> mono;  // sorted by atom, atoms unique, no zero exponents
};

// Canonical sum of terms: terms sorted by monomial, like terms merged, no
// zero coefficients. The default-constructed Expr is the unique zero.
class Expr {
 public:
  Expr() = default;
  Expr(long n) : Expr(RatFunc(Rational(n))) {}  // NOLINT - literal convenience
  explicit Expr(Rational r) : Expr(RatFunc(std::move(r))) {}
  explicit Expr(RatFunc c);

  static Expr theta();
  static Expr var(Space s);
  static Expr x() { return var(Space::X); }
  static Expr y() { return var(Space::Y); }
  static Expr t() { return var(Space::T); }
  static Expr jet(JetBase b, int nx, int ny, int nt);
  static Expr phi() { return jet(JetBase::Phi, 0, 0, 0); }
  static Expr psi() { return jet(JetBase::Psi, 0, 0, 0); }
  static Expr param(std::string name);
  static Expr from_atom(Atom a);
  // Assembles an expression from arbitrary (term) data, normalizing fully.
  static Expr from_terms(const std::vector<Term>& ts);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;  // no atoms at all (theta allowed)
  std::optional<RatFunc> constant_value() const;  // set iff is_constant
  bool is_one() const;

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;
  Expr operator-() const;
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  bool operator==(const Expr& o) const { return cmp(o) == 0; }
  bool operator!=(const Expr& o) const { return cmp(o) != 0; }
  int cmp(const Expr& o) const;
  std::size_t hash() const;

  std::string str() const;

 private:
  std::vector<Term> terms_;
  friend Expr normalize_product(RatFunc coeff, std::vector<Factor> factors, int depth);
  friend class TermSum;
};

struct KernelNode {
  KernelKind kind;
  Expr arg;
  std::size_t cached_hash;
  KernelNode(KernelKind k, Expr a);
};

// Kernel constructors; each returns a fully normalized expression and applies
// the rewrite rules (integer powers expand, Exp merges, Exp(n*ln w) pulls
// w^n out, Exp(ln a) -> a, sin/cos of 0, cos^2 -> 1 - sin^2, ...).
Expr make_pow(const Expr& base, const Expr& exponent);
Expr make_exp(const Expr& a);
Expr make_ln(const Expr& a);
Expr make_sin(const Expr& a);
Expr make_cos(const Expr& a);
Expr pow_int(const Expr& b, long n);  // n may be negative

inline Expr operator*(long n, const Expr& e) { return Expr(n) * e; }
inline Expr operator+(long n, const Expr& e) { return Expr(n) + e; }
inline Expr operator-(long n, const Expr& e) { return Expr(n) - e; }

std::string to_string(const Expr& e);

// Parses the documented expression grammar; inverse of to_string on
// normalized expressions.
Expr parse(const std::string& text);

// Accumulator for sums that avoids quadratic re-normalization.
class TermSum {
 public:
  void add(const Expr& e);
  void add_scaled(const RatFunc& c, const Expr& e);
  Expr done() const;

 private:
  struct MonoLess {
    bool operator()(const std::vector<Factor>& a, const std::vector<Factor>& b) const;
  };
  std::map<std::vector<Factor>, RatFunc, MonoLess> acc_;
};

}  // namespace popsym::symexpr
