#include "symexpr/expr.hpp"

#include <algorithm>
#include <sstream>

namespace popsym::symexpr {

namespace {
std::size_t hash_mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}
constexpr int kMaxFoldDepth = 64;
constexpr long kMaxExpandPower = 64;
}  // namespace

// ---------------------------------------------------------------------------
// JetIndex

JetIndex::JetIndex(int x, int y, int t) {
  if (x < 0 || y < 0 || t < 0 || x + y + t > kMaxJetOrder)
    throw JetOrderError("jet order above " + std::to_string(kMaxJetOrder) +
                        " requested: (" + std::to_string(x) + "," + std::to_string(y) + "," +
                        std::to_string(t) + ")");
  nx = static_cast<std::uint8_t>(x);
  ny = static_cast<std::uint8_t>(y);
  nt = static_cast<std::uint8_t>(t);
}

JetIndex JetIndex::incremented(Space s) const {
  return JetIndex(nx + (s == Space::X ? 1 : 0), ny + (s == Space::Y ? 1 : 0),
                  nt + (s == Space::T ? 1 : 0));
}

int JetIndex::count(Space s) const {
  switch (s) {
    case Space::X: return nx;
    case Space::Y: return ny;
    default: return nt;
  }
}

// ---------------------------------------------------------------------------
// Atom

Atom Atom::var(Space s) {
  Atom a;
  a.tag_ = Tag::Var;
  a.space_ = s;
  return a;
}

Atom Atom::jet(JetBase b, JetIndex idx) {
  Atom a;
  a.tag_ = Tag::Jet;
  a.jbase_ = b;
  a.jidx_ = idx;
  return a;
}

Atom Atom::param(std::string name) {
  Atom a;
  a.tag_ = Tag::Param;
  a.pname_ = std::move(name);
  return a;
}

Atom Atom::kernel(KernelKind k, Expr arg) {
  Atom a;
  a.tag_ = Tag::Kernel;
  a.knode_ = std::make_shared<const KernelNode>(k, std::move(arg));
  return a;
}

bool Atom::is_phi() const {
  return tag_ == Tag::Jet && jbase_ == JetBase::Phi && jidx_.order() == 0;
}

bool Atom::is_kernel(KernelKind k) const { return tag_ == Tag::Kernel && knode_->kind == k; }

int Atom::cmp(const Atom& o) const {
  if (tag_ != o.tag_) return tag_ < o.tag_ ? -1 : 1;
  switch (tag_) {
    case Tag::Var:
      if (space_ != o.space_) return space_ < o.space_ ? -1 : 1;
      return 0;
    case Tag::Jet: {
      if (jbase_ != o.jbase_) return jbase_ < o.jbase_ ? -1 : 1;
      int oa = jidx_.order(), ob = o.jidx_.order();
      if (oa != ob) return oa < ob ? -1 : 1;
      if (jidx_.nx != o.jidx_.nx) return jidx_.nx < o.jidx_.nx ? -1 : 1;
      if (jidx_.ny != o.jidx_.ny) return jidx_.ny < o.jidx_.ny ? -1 : 1;
      if (jidx_.nt != o.jidx_.nt) return jidx_.nt < o.jidx_.nt ? -1 : 1;
      return 0;
    }
    case Tag::Param:
      return pname_.compare(o.pname_) < 0 ? -1 : (pname_ == o.pname_ ? 0 : 1);
    case Tag::Kernel: {
      if (knode_->kind != o.knode_->kind) return knode_->kind < o.knode_->kind ? -1 : 1;
      return knode_->arg.cmp(o.knode_->arg);
    }
  }
  return 0;
}

std::size_t Atom::hash() const {
  std::size_t h = static_cast<std::size_t>(tag_) * 0x100001b3;
  switch (tag_) {
    case Tag::Var: return hash_mix(h, static_cast<std::size_t>(space_));
    case Tag::Jet:
      return hash_mix(h, (static_cast<std::size_t>(jbase_) << 16) |
                             (static_cast<std::size_t>(jidx_.nx) << 8) |
                             (static_cast<std::size_t>(jidx_.ny) << 4) | jidx_.nt);
    case Tag::Param: return hash_mix(h, std::hash<std::string>{}(pname_));
    case Tag::Kernel:
      return hash_mix(hash_mix(h, static_cast<std::size_t>(knode_->kind)), knode_->cached_hash);
  }
  return h;
}

std::string Atom::str() const {
  switch (tag_) {
    case Tag::Var:
      return space_ == Space::X ? "x" : (space_ == Space::Y ? "y" : "t");
    case Tag::Jet: {
      std::string s = jbase_ == JetBase::Phi ? "phi" : "psi";
      if (jidx_.order() > 0) {
        s += "_";
        s.append(jidx_.nx, 'x');
        s.append(jidx_.ny, 'y');
        s.append(jidx_.nt, 't');
      }
      return s;
    }
    case Tag::Param:
      return pname_;
    case Tag::Kernel: {
      const char* name = nullptr;
      switch (knode_->kind) {
        case KernelKind::Inv: return "(" + knode_->arg.str() + ")";  // exponent printed by caller
        case KernelKind::Exp: name = "exp"; break;
        case KernelKind::Ln: name = "ln"; break;
        case KernelKind::Sin: name = "sin"; break;
        case KernelKind::Cos: name = "cos"; break;
      }
      return std::string(name) + "(" + knode_->arg.str() + ")";
    }
  }
  return "?";
}

KernelNode::KernelNode(KernelKind k, Expr a) : kind(k), arg(std::move(a)) {
  cached_hash = hash_mix(static_cast<std::size_t>(kind) * 0x9dc5, arg.hash());
}

int Factor::cmp(const Factor& o) const {
  int s = atom.cmp(o.atom);
  if (s != 0) return s;
  if (em != o.em) return em < o.em ? -1 : 1;
  if (en != o.en) return en < o.en ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Term-product normalization

namespace {

bool factor_less(const Factor& a, const Factor& b) { return a.cmp(b) < 0; }

// Returns the exponent em + en*theta as a RatFunc.
RatFunc exp_ratfunc(const Factor& f) {
  return RatFunc::linear(Rational(static_cast<long>(f.en)), Rational(static_cast<long>(f.em)));
}

}  // namespace

Expr normalize_product(RatFunc coeff, std::vector<Factor> factors, int depth) {
  if (depth > kMaxFoldDepth) throw DomainError("normalization recursion limit exceeded");
  if (coeff.is_zero()) return Expr();

  // merge equal atoms
  std::map<Atom, std::pair<std::int64_t, std::int64_t>> merged;
  for (const auto& f : factors) {
    auto& e = merged[f.atom];
    e.first += f.em;
    e.second += f.en;
  }

  std::vector<Expr> extra;
  std::vector<Factor> kept;
  // Exp factors are collected and consolidated into a single factor
  std::vector<std::pair<Atom, std::int64_t>> exps;

  for (auto& [atom, e] : merged) {
    std::int64_t em = e.first, en = e.second;
    if (em == 0 && en == 0) continue;
    if (en != 0 && !atom.is_phi())
      throw DomainError("theta-lattice exponent on a non-phi atom");
    if (atom.tag() == Atom::Tag::Kernel) {
      switch (atom.kernel().kind) {
        case KernelKind::Exp:
          exps.emplace_back(atom, em);
          continue;
        case KernelKind::Inv:
          if (em < 0) {
            extra.push_back(pow_int(atom.kernel().arg, -em));
            continue;
          }
          break;
        case KernelKind::Cos:
          if (em >= 2) {
            std::int64_t k = em / 2, r = em % 2;
            Expr sin2 = Expr(1) - normalize_product(
                                      RatFunc(Rational(1)),
                                      {Factor{Atom::kernel(KernelKind::Sin, atom.kernel().arg), 2, 0}},
                                      depth + 1);
            Expr repl = pow_int(sin2, k);
            if (r) repl = repl * Expr::from_atom(atom);
            extra.push_back(repl);
            continue;
          }
          break;
        default:
          break;
      }
    }
    kept.push_back(Factor{atom, em, en});
  }

  if (exps.size() == 1 && exps[0].second == 1) {
    // already canonical (atom arguments are built through make_exp)
    kept.push_back(Factor{exps[0].first, 1, 0});
  } else if (!exps.empty()) {
    Expr exp_arg;
    for (const auto& [atom, em] : exps)
      exp_arg += Expr(static_cast<long>(em)) * atom.kernel().arg;
    Expr built = make_exp(exp_arg);
    if (built.terms().size() == 1 && built.terms()[0].coeff.is_one() &&
        built.terms()[0].mono.size() == 1 &&
        built.terms()[0].mono[0].atom.is_kernel(KernelKind::Exp) &&
        built.terms()[0].mono[0].em == 1 && built.terms()[0].mono[0].en == 0) {
      kept.push_back(built.terms()[0].mono[0]);
    } else if (!built.is_one()) {
      extra.push_back(built);
    }
  }

  // absorb rule: a standalone atom power joins an Exp factor whose argument
  // already carries a (necessarily non-integer) ln of that same atom, so that
  // like terms with merged symbolic exponents can collect.
  for (std::size_t ei = 0; ei < kept.size(); ++ei) {
    if (!kept[ei].atom.is_kernel(KernelKind::Exp) || kept[ei].em != 1) continue;
    const Expr& arg = kept[ei].atom.kernel().arg;
    std::vector<std::size_t> absorbed;
    Expr add_to_arg;
    for (std::size_t fi = 0; fi < kept.size(); ++fi) {
      if (fi == ei) continue;
      const Atom& a = kept[fi].atom;
      if (a.tag() == Atom::Tag::Kernel) continue;
      // does arg contain c*ln(a)?
      bool found = false;
      for (const auto& t : arg.terms()) {
        if (t.mono.size() == 1 && t.mono[0].em == 1 && t.mono[0].en == 0 &&
            t.mono[0].atom.is_kernel(KernelKind::Ln)) {
          const Expr& w = t.mono[0].atom.kernel().arg;
          if (w.terms().size() == 1 && w.terms()[0].coeff.is_one() &&
              w.terms()[0].mono.size() == 1 && w.terms()[0].mono[0].em == 1 &&
              w.terms()[0].mono[0].en == 0 && w.terms()[0].mono[0].atom == a) {
            found = true;
            break;
          }
        }
      }
      if (found) {
        add_to_arg += Expr(exp_ratfunc(kept[fi])) * make_ln(Expr::from_atom(a));
        absorbed.push_back(fi);
      }
    }
    if (!absorbed.empty()) {
      std::vector<Factor> rest;
      for (std::size_t fi = 0; fi < kept.size(); ++fi)
        if (fi != ei && std::find(absorbed.begin(), absorbed.end(), fi) == absorbed.end())
          rest.push_back(kept[fi]);
      Expr rebuilt = make_exp(arg + add_to_arg);
      Expr base = normalize_product(coeff, std::move(rest), depth + 1);
      Expr out = base * rebuilt;
      for (const auto& ex : extra) out = out * ex;
      return out;
    }
  }

  std::sort(kept.begin(), kept.end(), factor_less);
  Expr out;
  out.terms_.push_back(Term{std::move(coeff), std::move(kept)});
  for (const auto& ex : extra) out = out * ex;
  return out;
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr(RatFunc c) {
  if (!c.is_zero()) terms_.push_back(Term{std::move(c), {}});
}

Expr Expr::theta() { return Expr(RatFunc::theta()); }
Expr Expr::var(Space s) { return from_atom(Atom::var(s)); }

Expr Expr::jet(JetBase b, int nx, int ny, int nt) {
  return from_atom(Atom::jet(b, JetIndex(nx, ny, nt)));
}

Expr Expr::param(std::string name) { return from_atom(Atom::param(std::move(name))); }

Expr Expr::from_atom(Atom a) {
  Expr e;
  e.terms_.push_back(Term{RatFunc(Rational(1)), {Factor{std::move(a), 1, 0}}});
  return e;
}

bool TermSum::MonoLess::operator()(const std::vector<Factor>& a,
                                   const std::vector<Factor>& b) const {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int s = a[i].cmp(b[i]);
    if (s != 0) return s < 0;
  }
  return a.size() < b.size();
}

void TermSum::add(const Expr& e) {
  for (const auto& t : e.terms()) {
    auto it = acc_.find(t.mono);
    if (it == acc_.end())
      acc_.emplace(t.mono, t.coeff);
    else
      it->second = it->second + t.coeff;
  }
}

void TermSum::add_scaled(const RatFunc& c, const Expr& e) {
  if (c.is_zero()) return;
  for (const auto& t : e.terms()) {
    auto it = acc_.find(t.mono);
    if (it == acc_.end())
      acc_.emplace(t.mono, t.coeff * c);
    else
      it->second = it->second + t.coeff * c;
  }
}

Expr TermSum::done() const {
  Expr out;
  for (const auto& [mono, coeff] : acc_)
    if (!coeff.is_zero()) out.terms_.push_back(Term{coeff, mono});
  return out;
}

Expr Expr::from_terms(const std::vector<Term>& ts) {
  TermSum s;
  for (const auto& t : ts) {
    // re-normalize each term through the product pipeline
    s.add(normalize_product(t.coeff, t.mono, 0));
  }
  return s.done();
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
}

std::optional<RatFunc> Expr::constant_value() const {
  if (terms_.empty()) return RatFunc(Rational(0));
  if (terms_.size() == 1 && terms_[0].mono.empty()) return terms_[0].coeff;
  return std::nullopt;
}

bool Expr::is_one() const {
  auto c = constant_value();
  return c && c->is_one();
}

Expr Expr::operator+(const Expr& o) const {
  TermSum s;
  s.add(*this);
  s.add(o);
  return s.done();
}

Expr Expr::operator-(const Expr& o) const {
  TermSum s;
  s.add(*this);
  s.add_scaled(RatFunc(Rational(-1)), o);
  return s.done();
}

Expr Expr::operator-() const {
  TermSum s;
  s.add_scaled(RatFunc(Rational(-1)), *this);
  return s.done();
}

Expr Expr::operator*(const Expr& o) const {
  TermSum s;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      std::vector<Factor> fs = a.mono;
      fs.insert(fs.end(), b.mono.begin(), b.mono.end());
      s.add(normalize_product(a.coeff * b.coeff, std::move(fs), 0));
    }
  return s.done();
}

Expr Expr::operator/(const Expr& o) const {
  if (o.is_zero()) throw DomainError("division by the zero expression");
  if (o.terms_.size() == 1) {
    const Term& d = o.terms_[0];
    std::vector<Factor> inv = d.mono;
    for (auto& f : inv) {
      f.em = -f.em;
      f.en = -f.en;
    }
    TermSum s;
    for (const auto& a : terms_) {
      std::vector<Factor> fs = a.mono;
      fs.insert(fs.end(), inv.begin(), inv.end());
      s.add(normalize_product(a.coeff / d.coeff, std::move(fs), 0));
    }
    return s.done();
  }
  return *this * make_pow(o, Expr(-1L));
}

int Expr::cmp(const Expr& o) const {
  std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Term& a = terms_[i];
    const Term& b = o.terms_[i];
    std::size_t m = std::min(a.mono.size(), b.mono.size());
    for (std::size_t j = 0; j < m; ++j) {
      int s = a.mono[j].cmp(b.mono[j]);
      if (s != 0) return s;
    }
    if (a.mono.size() != b.mono.size()) return a.mono.size() < b.mono.size() ? -1 : 1;
    int s = a.coeff.cmp(b.coeff);
    if (s != 0) return s;
  }
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
  return 0;
}

std::size_t Expr::hash() const {
  std::size_t h = 0x811c9dc5;
  for (const auto& t : terms_) {
    std::size_t th = t.coeff.hash();
    for (const auto& f : t.mono) {
      th = hash_mix(th, f.atom.hash());
      th = hash_mix(th, static_cast<std::size_t>(f.em * 1315423911 + f.en));
    }
    h = hash_mix(h, th);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Kernel constructors

Expr pow_int(const Expr& b, long n) {
  if (n == 0) return Expr(1L);
  if (n < 0) return Expr(1L) / pow_int(b, -n);
  if (n > kMaxExpandPower) throw DomainError("integer power too large to expand");
  Expr acc(1L);
  Expr base = b;
  long k = n;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = (k >>= 1) ? base * base : base;
  }
  return acc;
}

namespace {

// extracts the common coefficient and common pure-integer atom powers from a
// sum so that Inv bases are canonical up to monomial content
void content_extract(Expr& base, Expr& content) {
  content = Expr(1L);
  const auto& ts = base.terms();
  if (ts.empty()) return;
  // coefficient content: make the first term's coefficient 1
  RatFunc c0 = ts[0].coeff;
  // atoms present in every term with integer exponents
  std::vector<Factor> common = ts[0].mono;
  for (std::size_t i = 1; i < ts.size() && !common.empty(); ++i) {
    std::vector<Factor> next;
    for (const auto& f : common) {
      if (f.en != 0) continue;
      for (const auto& g : ts[i].mono) {
        if (g.atom == f.atom && g.en == 0) {
          next.push_back(Factor{f.atom, std::min(f.em, g.em), 0});
          break;
        }
      }
    }
    common = std::move(next);
  }
  Expr content_mono = normalize_product(c0, common, 0);
  if (content_mono.is_one()) return;
  content = content_mono;
  base = base / content_mono;
}

}  // namespace

Expr make_pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero()) return Expr(1L);
  auto cv = exponent.constant_value();
  if (cv) {
    if (auto n = cv->as_long()) {
      if (base.is_zero()) {
        if (*n > 0) return Expr();
        throw DomainError("zero base with non-positive exponent");
      }
      if (*n == 1) return base;
      if (base.terms().size() == 1) {
        const Term& t = base.terms()[0];
        std::vector<Factor> fs = t.mono;
        for (auto& f : fs) {
          f.em *= *n;
          f.en *= *n;
        }
        return normalize_product(t.coeff.pow(*n), std::move(fs), 0);
      }
      if (*n > 0) return pow_int(base, *n);
      Expr b = base, content;
      content_extract(b, content);
      Expr inv_part = Expr::from_terms(
          {Term{RatFunc(Rational(1)), {Factor{Atom::kernel(KernelKind::Inv, b), -*n, 0}}}});
      return make_pow(content, exponent) * inv_part;
    }
  }
  if (base.is_zero()) {
    throw DomainError("zero base with symbolic exponent");
  }
  // single-factor unit-coefficient bases get structural folds
  if (base.terms().size() == 1 && base.terms()[0].coeff.is_one() &&
      base.terms()[0].mono.size() == 1) {
    const Factor& f = base.terms()[0].mono[0];
    if (f.atom.is_phi() && cv) {
      std::int64_t m = 0, n = 0;
      if (cv->as_int_linear(m, n)) {
        // (phi^(bm + bn th))^(m + n th) stays in the lattice when the theta^2
        // part vanishes
        std::int64_t bm = f.em, bn = f.en;
        if (bn == 0 || n == 0) {
          std::int64_t rm = bm * m;
          std::int64_t rn = bm * n + bn * m;
          return Expr::from_terms(
              {Term{RatFunc(Rational(1)), {Factor{f.atom, rm, rn}}}});
        }
      }
    }
    if (f.atom.is_kernel(KernelKind::Exp) && f.em == 1 && f.en == 0) {
      return make_exp(f.atom.kernel().arg * exponent);
    }
  }
  return make_exp(exponent * make_ln(base));
}

Expr make_exp(const Expr& a) {
  if (a.is_zero()) return Expr(1L);
  Expr pulled(1L);
  std::vector<Term> kept;
  for (const auto& t : a.terms()) {
    if (t.mono.size() == 1 && t.mono[0].em == 1 && t.mono[0].en == 0 &&
        t.mono[0].atom.is_kernel(KernelKind::Ln)) {
      if (auto n = t.coeff.as_long()) {
        pulled = pulled * make_pow(t.mono[0].atom.kernel().arg, Expr(*n));
        continue;
      }
    }
    kept.push_back(t);
  }
  if (kept.empty()) return pulled;
  Expr arg;
  {
    TermSum s;
    for (auto& t : kept) s.add(Expr::from_terms({t}));
    arg = s.done();
  }
  Expr atom_expr = Expr::from_atom(Atom::kernel(KernelKind::Exp, arg));
  if (pulled.is_one()) return atom_expr;
  return pulled * atom_expr;
}

Expr make_ln(const Expr& a) {
  if (a.is_one()) return Expr();
  if (a.terms().size() == 1 && a.terms()[0].coeff.is_one() && a.terms()[0].mono.size() == 1) {
    const Factor& f = a.terms()[0].mono[0];
    if (f.atom.is_kernel(KernelKind::Exp) && f.em == 1 && f.en == 0)
      return f.atom.kernel().arg;
  }
  return Expr::from_atom(Atom::kernel(KernelKind::Ln, a));
}

namespace {
int expr_sign_key(const Expr& e) {
  if (e.is_zero()) return 0;
  return e.terms()[0].coeff.sign_key();
}
}  // namespace

Expr make_sin(const Expr& a) {
  if (a.is_zero()) return Expr();
  if (expr_sign_key(a) < 0) return -make_sin(-a);
  return Expr::from_atom(Atom::kernel(KernelKind::Sin, a));
}

Expr make_cos(const Expr& a) {
  if (a.is_zero()) return Expr(1L);
  if (expr_sign_key(a) < 0) return make_cos(-a);
  return Expr::from_atom(Atom::kernel(KernelKind::Cos, a));
}

// ---------------------------------------------------------------------------
// Printer

namespace {

void print_factor(std::ostringstream& os, const Factor& f) {
  if (f.atom.is_kernel(KernelKind::Inv)) {
    os << f.atom.str() << "^(-" << f.em << ")";
    return;
  }
  os << f.atom.str();
  if (f.en == 0) {
    if (f.em != 1) {
      if (f.em < 0)
        os << "^(" << f.em << ")";
      else
        os << "^" << f.em;
    }
  } else {
    RatFunc lin = RatFunc::linear(Rational(static_cast<long>(f.en)),
                                  Rational(static_cast<long>(f.em)));
    std::string s = lin.to_string();
    if (s.front() != '(') s = "(" + s + ")";
    os << "^" << s;
  }
}

void print_term(std::ostringstream& os, const Term& t, bool leading) {
  RatFunc c = t.coeff;
  bool neg = c.sign_key() < 0;
  if (neg) c = -c;
  if (leading) {
    if (neg) os << "-";
  } else {
    os << (neg ? " - " : " + ");
  }
  bool unit = c.is_one();
  if (!unit || t.mono.empty()) os << c.to_string();
  bool first = unit && !t.mono.empty();
  for (const auto& f : t.mono) {
    if (!first || &f != &t.mono.front()) os << "*";
    print_factor(os, f);
    first = false;
  }
}

}  // namespace

std::string Expr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool leading = true;
  for (const auto& t : terms_) {
    print_term(os, t, leading);
    leading = false;
  }
  return os.str();
}

std::string to_string(const Expr& e) { return e.str(); }

}  // namespace popsym::symexpr
