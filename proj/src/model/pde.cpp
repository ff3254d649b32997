#include "model/pde.hpp"

#include <map>

namespace popsym::model {

using namespace symexpr;

Expr delta() {
  Expr h = Expr::param("h");
  return Expr::jet(JetBase::Phi, 0, 0, 1) - Expr(2) * pow_int(Expr::jet(JetBase::Phi, 1, 0, 0), 2) -
         Expr(2) * Expr::phi() * Expr::jet(JetBase::Phi, 2, 0, 0) -
         Expr(2) * pow_int(Expr::jet(JetBase::Phi, 0, 1, 0), 2) -
         Expr(2) * Expr::phi() * Expr::jet(JetBase::Phi, 0, 2, 0) +
         h * make_pow(Expr::phi(), Expr::theta());
}

Expr evolution_rhs() {
  return Expr::jet(JetBase::Phi, 0, 0, 1) - delta();
}

namespace {

struct JetKey {
  int nx, ny, nt;
  bool operator<(const JetKey& o) const {
    if (nt != o.nt) return nt < o.nt;
    if (nx != o.nx) return nx < o.nx;
    return ny < o.ny;
  }
};

}  // namespace

Expr reduce_onshell(const Expr& e) {
  std::map<JetKey, Expr> cache;  // on-shell images of time jets

  // on-shell image of d_t^nt phi, spatial jets only
  std::function<Expr(int)> time_power = [&](int nt) -> Expr {
    JetKey key{0, 0, nt};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Expr val;
    if (nt == 1) {
      val = evolution_rhs();
    } else {
      Expr prev = time_power(nt - 1);
      Expr d = total_derivative(prev, Space::T);
      val = reduce_onshell(d);  // prev is spatial, so d carries only nt == 1 jets
    }
    cache.emplace(key, val);
    return val;
  };

  auto image = [&](const JetIndex& idx) -> Expr {
    JetKey key{idx.nx, idx.ny, idx.nt};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Expr val = time_power(idx.nt);
    for (int i = 0; i < idx.nx; ++i) val = total_derivative(val, Space::X);
    for (int i = 0; i < idx.ny; ++i) val = total_derivative(val, Space::Y);
    cache.emplace(key, val);
    return val;
  };

  Expr cur = e;
  for (int guard = 0; guard < 256; ++guard) {
    // pick the time jet with the highest time order (ties: highest total order)
    std::vector<Atom> jets = collect_jets(cur);
    const Atom* pick = nullptr;
    for (const auto& j : jets) {
      if (j.jet_base() != JetBase::Phi || j.jet_index().nt == 0) continue;
      if (!pick || j.jet_index().nt > pick->jet_index().nt ||
          (j.jet_index().nt == pick->jet_index().nt &&
           j.jet_index().order() > pick->jet_index().order()))
        pick = &j;
    }
    if (!pick) return cur;
    cur = substitute(cur, *pick, image(pick->jet_index()));
  }
  throw DomainError("on-shell reduction did not terminate");
}

}  // namespace popsym::model
