#include "gmv/controls.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>

#include "gmv/error.hpp"
#include "gmv/semantics.hpp"

namespace gmv {

namespace {

Formula B(Direction d, Formula f) { return Formula::box(d, std::move(f)); }
Formula D(Direction d, Formula f) { return Formula::dia(d, std::move(f)); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bot();
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::disj(out, fs[i]);
  return out;
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Calls fn on every k-subset of [0, n) in lexicographic order until it
// returns true.
bool for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool is_button(const PointedModel& m, std::size_t w, const Formula& f, Direction d) {
  return holds_at(m, w, B(d, D(d, B(d, f))));
}

bool is_switch(const PointedModel& m, std::size_t w, const Formula& f, Direction d) {
  return holds_at(m, w, B(d, Formula::conj(D(d, f), D(d, Formula::neg(f)))));
}

bool is_pushed(const PointedModel& m, std::size_t w, const Formula& f, Direction d) {
  return holds_at(m, w, B(d, f));
}

Formula pattern_formula(const ControlFamily& family, std::uint32_t pushed, std::uint32_t pattern) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < family.buttons.size(); ++i) {
    const Formula b = B(family.direction, family.buttons[i]);
    parts.push_back(((pushed >> i) & 1) ? b : Formula::neg(b));
  }
  for (std::size_t j = 0; j < family.switches.size(); ++j) {
    const Formula& s = family.switches[j];
    parts.push_back(((pattern >> j) & 1) ? s : Formula::neg(s));
  }
  return conj_all(parts);
}

IndependenceResult check_independent(const ControlFamily& family, const ControlBudget& budget) {
  const PointedModel& m = family.base;
  const Direction d = family.direction;
  const std::size_t nb = family.buttons.size();
  const std::size_t ns = family.switches.size();
  const std::size_t point = m.point;
  if (nb + ns > 20) throw BudgetExceeded("control family larger than 20 controls");

  for (std::size_t i = 0; i < nb; ++i) {
    const Formula& b = family.buttons[i];
    if (!is_button(m, point, b, d)) {
      return FailureWitness{"button " + print(b) + " is not a button at the point", point, {}, {}};
    }
    if (is_pushed(m, point, b, d)) {
      return FailureWitness{"button " + print(b) + " is already pushed at the point", point, {}, {}};
    }
  }
  for (const auto& s : family.switches) {
    if (!is_switch(m, point, s, d)) {
      return FailureWitness{"switch " + print(s) + " is not a switch at the point", point, {}, {}};
    }
  }

  const std::size_t n = m.frame.size();
  std::vector<std::uint32_t> pushed(n, 0), pattern(n, 0);
  for (std::size_t i = 0; i < nb; ++i) {
    eval(m, B(d, family.buttons[i])).for_each([&](std::size_t w) { pushed[w] |= 1U << i; });
  }
  for (std::size_t j = 0; j < ns; ++j) {
    eval(m, family.switches[j]).for_each([&](std::size_t w) { pattern[w] |= 1U << j; });
  }

  const WorldSet cone = m.frame.cone(d, point);
  const std::uint32_t patterns = 1U << ns;
  const std::uint32_t button_sets = 1U << nb;
  if (static_cast<std::uint64_t>(cone.count()) * button_sets * patterns > budget.table) {
    throw BudgetExceeded("independence table exceeds the budget");
  }

  IndependenceCertificate cert{family, {}};
  std::vector<std::size_t> first(static_cast<std::size_t>(button_sets) * patterns);
  for (std::size_t u : cone.members()) {
    std::fill(first.begin(), first.end(), kNone);
    m.frame.successors(d, u).for_each([&](std::size_t t) {
      auto& slot = first[static_cast<std::size_t>(pushed[t]) * patterns + pattern[t]];
      if (slot == kNone) slot = t;
    });
    for (std::uint32_t bp = 0; bp < button_sets; ++bp) {
      if ((bp & pushed[u]) != pushed[u]) continue;
      for (std::uint32_t t = 0; t < patterns; ++t) {
        const std::size_t w = first[static_cast<std::size_t>(bp) * patterns + t];
        if (w == kNone) {
          return FailureWitness{"no successor realizes the pattern", u, bp, t};
        }
        cert.table.push_back({u, bp, t, w});
      }
    }
  }
  return cert;
}

std::optional<ControlFamily> find_family(const PointedModel& m, std::size_t w, Direction d,
                                         std::size_t buttons, std::size_t switches,
                                         const ControlBudget& budget) {
  if (w >= m.frame.size()) throw BadWorldIndex("world " + std::to_string(w) + " out of range");
  const PointedModel base = m.at(w);

  std::vector<std::string> names;
  for (const auto& [letter, set] : m.valuation) names.push_back(letter);
  std::vector<Formula> pool;
  for (const auto& l : names) pool.push_back(Formula::atom(l));
  if (budget.max_size >= 2 && !names.empty()) {
    const std::size_t k = std::min<std::size_t>(names.size(), 8);
    Substitution rename;
    for (std::size_t i = 0; i < k; ++i) rename[canonical_letter(i)] = Formula::atom(names[i]);
    for (const auto& f : enumerate(k, budget.max_size, {})) {
      if (f.size() >= 2) pool.push_back(substitute(f, rename));
    }
  }

  const WorldSet cone = m.frame.cone(d, w);
  std::set<WorldSet> seen;
  std::vector<Formula> button_cands, switch_cands;
  for (const auto& f : pool) {
    const WorldSet ext = eval(base, f) & cone;
    if (ext.empty() || ext == cone || !seen.insert(ext).second) continue;
    if (is_button(base, w, f, d) && !is_pushed(base, w, f, d)) button_cands.push_back(f);
    if (is_switch(base, w, f, d)) switch_cands.push_back(f);
  }

  std::optional<ControlFamily> found;
  std::uint64_t checks = 0;
  for_each_combination(button_cands.size(), buttons, [&](const std::vector<std::size_t>& bi) {
    return for_each_combination(switch_cands.size(), switches, [&](const std::vector<std::size_t>& si) {
      if (++checks > budget.checks) throw BudgetExceeded("find_family check budget exhausted");
      ControlFamily fam{d, {}, {}, base};
      for (auto i : bi) fam.buttons.push_back(button_cands[i]);
      for (auto j : si) fam.switches.push_back(switch_cands[j]);
      if (std::holds_alternative<IndependenceCertificate>(check_independent(fam, budget))) {
        found = std::move(fam);
        return true;
      }
      return false;
    });
  });
  return found;
}

namespace {

// Clusters of a preorder cone, root cluster first with the root world first.
struct ClusterPoset {
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::vector<bool>> le;

  std::size_t size() const { return members.size(); }

  std::optional<std::size_t> lub(std::uint64_t set) const {
    std::vector<std::size_t> upper;
    for (std::size_t c = 0; c < size(); ++c) {
      bool ok = true;
      for (std::size_t x = 0; x < size() && ok; ++x) {
        if (((set >> x) & 1) && !le[x][c]) ok = false;
      }
      if (ok) upper.push_back(c);
    }
    for (std::size_t c : upper) {
      if (std::all_of(upper.begin(), upper.end(), [&](std::size_t u) { return le[c][u]; })) return c;
    }
    return std::nullopt;
  }
};

ClusterPoset clusters_of(const PointedModel& cm, Direction d) {
  const Frame& fr = cm.frame;
  const auto cone = fr.cone(d, cm.point).members();
  for (std::size_t x : cone) {
    for (std::size_t y : cone) {
      if (x == y && !fr.related(d, x, x)) throw InsufficientControls("countermodel is not reflexive");
      if (!fr.related(d, x, y)) continue;
      for (std::size_t z : cone) {
        if (fr.related(d, y, z) && !fr.related(d, x, z)) {
          throw InsufficientControls("countermodel is not transitive");
        }
      }
    }
  }
  ClusterPoset p;
  std::vector<bool> done(fr.size(), false);
  auto take = [&](std::size_t x) {
    std::vector<std::size_t> c = {x};
    done[x] = true;
    for (std::size_t y : cone) {
      if (!done[y] && fr.related(d, x, y) && fr.related(d, y, x)) {
        c.push_back(y);
        done[y] = true;
      }
    }
    p.members.push_back(std::move(c));
  };
  take(cm.point);
  for (std::size_t x : cone) {
    if (!done[x]) take(x);
  }
  const std::size_t k = p.members.size();
  p.le.assign(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) p.le[a][b] = fr.related(d, p.members[a][0], p.members[b][0]);
  }
  return p;
}

// Every cluster above h(P) is h(P') for some superset P'.
bool has_back_property(const ClusterPoset& p, const std::vector<std::size_t>& h) {
  for (std::size_t s = 0; s < h.size(); ++s) {
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (!p.le[h[s]][c]) continue;
      bool hit = false;
      for (std::size_t t = 0; t < h.size() && !hit; ++t) hit = (t & s) == s && h[t] == c;
      if (!hit) return false;
    }
  }
  return true;
}

// Monotone map from button subsets onto clusters with h(empty) = root and the
// back property.
std::optional<std::vector<std::size_t>> cluster_map(const ClusterPoset& p, std::size_t buttons) {
  const std::size_t subsets = std::size_t{1} << buttons;
  if (p.size() > subsets) return std::nullopt;

  // Lattice route: buttons name the join-irreducible clusters.
  std::vector<std::size_t> irreducible;
  bool lattice = p.size() <= 64;
  for (std::size_t c = 1; c < p.size() && lattice; ++c) {
    std::uint64_t below = 0;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (x != c && p.le[x][c]) below |= std::uint64_t{1} << x;
    }
    const auto j = p.lub(below);
    if (!j) lattice = false;
    else if (*j != c) irreducible.push_back(c);
  }
  if (lattice && irreducible.size() <= buttons) {
    std::vector<std::size_t> h(subsets);
    bool ok = true;
    for (std::size_t s = 0; s < subsets && ok; ++s) {
      std::uint64_t set = 0;
      for (std::size_t i = 0; i < irreducible.size(); ++i) {
        if ((s >> i) & 1) set |= std::uint64_t{1} << irreducible[i];
      }
      const auto j = p.lub(set);
      if (!j) ok = false;
      else h[s] = *j;
    }
    if (ok && has_back_property(p, h)) return h;
  }

  // General route: backtracking over subsets by popcount.
  std::vector<std::size_t> order(subsets);
  for (std::size_t s = 0; s < subsets; ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(), [](std::size_t a, std::size_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::size_t> h(subsets, 0);
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (++nodes > 2000000) return false;
    if (k == subsets) return has_back_property(p, h);
    const std::size_t s = order[k];
    for (std::size_t c = 0; c < p.size(); ++c) {
      bool monotone = true;
      for (std::size_t i = 0; i < buttons && monotone; ++i) {
        if ((s >> i) & 1) monotone = p.le[h[s & ~(std::size_t{1} << i)]][c];
      }
      if (!monotone) continue;
      h[s] = c;
      if (assign(k + 1)) return true;
    }
    return false;
  };
  h[0] = 0;
  if (assign(1)) return h;
  return std::nullopt;
}

}  // namespace

Substitution simulate_countermodel(const IndependenceCertificate& cert, const Formula& f,
                                   const PointedModel& cm) {
  const ControlFamily& fam = cert.family;
  const Direction d = fam.direction;
  const auto dirs = directions(f);
  if (dirs.size() > 1) throw MixedDirections("formula uses both directions: " + print(f));
  const Direction fd = dirs.empty() ? d : *dirs.begin();
  const Formula g = orient(f, d);

  const ClusterPoset poset = clusters_of(cm, fd);
  const std::size_t nb = fam.buttons.size();
  const std::size_t ns = fam.switches.size();
  std::size_t widest = 0;
  for (const auto& c : poset.members) widest = std::max(widest, c.size());
  if ((std::size_t{1} << ns) < widest) {
    throw InsufficientControls("a cluster of " + std::to_string(widest) + " worlds needs more than " +
                               std::to_string(ns) + " switches");
  }
  const auto h = cluster_map(poset, nb);
  if (!h) {
    throw InsufficientControls(std::to_string(poset.size()) + " clusters cannot be reached with " +
                               std::to_string(nb) + " buttons");
  }

  std::uint32_t t0 = 0;
  for (std::size_t j = 0; j < ns; ++j) {
    if (holds_at(fam.base, fam.base.point, fam.switches[j])) t0 |= 1U << j;
  }
  auto label = [&](std::uint32_t pushed, std::uint32_t t) {
    const auto& c = poset.members[(*h)[pushed]];
    return c[(t ^ t0) % c.size()];
  };

  Substitution sigma;
  const std::uint32_t patterns = 1U << ns;
  for (const auto& letter : letters(g)) {
    const WorldSet truth = cm.value(letter);
    std::vector<Formula> cases;
    for (std::uint32_t s = 0; s < (1U << nb); ++s) {
      for (std::uint32_t t = 0; t < patterns; ++t) {
        if (truth.contains(label(s, t))) cases.push_back(pattern_formula(fam, s, t));
      }
    }
    if (cases.size() == (std::size_t{1} << nb) * patterns) {
      sigma[letter] = Formula::top();
    } else {
      sigma[letter] = disj_all(cases);
    }
  }

  if (holds_at(fam.base, fam.base.point, substitute(g, sigma))) {
    throw VerificationFailed("instance of " + print(g) + " holds at the point");
  }
  return sigma;
}

}  // namespace gmv
