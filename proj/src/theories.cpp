#include "gmv/theories.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>

#include "gmv/error.hpp"
#include "program.hpp"

namespace gmv {

std::string to_string(Theory t) {
  switch (t) {
    case Theory::PL: return "pl";
    case Theory::S4: return "s4";
    case Theory::S4_2: return "s4.2";
    case Theory::S5: return "s5";
  }
  return "?";
}

std::optional<Theory> theory_from_string(std::string_view s) {
  for (Theory t : kAllTheories) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

const char* to_string(Verdict::Kind k) noexcept {
  switch (k) {
    case Verdict::Kind::Valid: return "valid";
    case Verdict::Kind::Invalid: return "invalid";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

std::vector<Formula> axioms(Theory t, Direction d) {
  const Formula p = Formula::atom("p");
  const Formula q = Formula::atom("q");
  auto B = [d](Formula f) { return Formula::box(d, std::move(f)); };
  auto D = [d](Formula f) { return Formula::dia(d, std::move(f)); };
  if (t == Theory::PL) return {Formula::iff(B(p), p)};
  std::vector<Formula> out = {
      Formula::imp(B(Formula::imp(p, q)), Formula::imp(B(p), B(q))),
      Formula::imp(B(p), p),
      Formula::imp(B(p), B(B(p))),
  };
  if (t == Theory::S4_2) out.push_back(Formula::imp(D(B(p)), B(D(p))));
  if (t == Theory::S5) out.push_back(Formula::imp(D(p), B(D(p))));
  return out;
}

bool frame_in_class(Theory t, const Frame& frame, Direction d) {
  const Frame f = d == Direction::Up ? frame : frame.converse();
  const std::size_t n = f.size();
  switch (t) {
    case Theory::PL:
      for (std::size_t i = 0; i < n; ++i) {
        if (!(f.successors(Direction::Up, i) == WorldSet::singleton(n, i))) return false;
      }
      return true;
    case Theory::S4: return is_preorder(f);
    case Theory::S4_2: return is_preorder(f) && directed(f, Direction::Up);
    case Theory::S5:
      if (!is_preorder(f)) return false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (f.up(i, j) != f.up(j, i)) return false;
        }
      }
      return true;
  }
  return false;
}

namespace {

class OutOfBudget {};

struct Meter {
  std::uint64_t used = 0;
  std::uint64_t limit = 0;
  void charge(std::uint64_t units) {
    used += units;
    if (used > limit) throw OutOfBudget{};
  }
};

Formula oriented(const Formula& f) {
  const auto dirs = directions(f);
  if (dirs.size() > 1) throw MixedDirections("formula uses both directions: " + print(f));
  return dirs.count(Direction::Down) ? orient(f, Direction::Up) : f;
}

bool uses_down(const Formula& f) { return directions(f).count(Direction::Down) > 0; }

// ---------------------------------------------------------------- PL

std::uint64_t eval_flat(const detail::Program& prog, std::uint64_t v) {
  // Bit k of the result is the value of op k; modalities are the identity.
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < prog.ops.size(); ++k) {
    const auto& op = prog.ops[k];
    auto at = [&](int i) { return (bits >> i) & 1; };
    std::uint64_t x = 0;
    switch (op.kind) {
      case Kind::Atom: x = (v >> op.letter) & 1; break;
      case Kind::Top: x = 1; break;
      case Kind::Bot: x = 0; break;
      case Kind::Not: x = !at(op.a); break;
      case Kind::Box:
      case Kind::Dia: x = at(op.a); break;
      case Kind::And: x = at(op.a) & at(op.b); break;
      case Kind::Or: x = at(op.a) | at(op.b); break;
      case Kind::Imp: x = (at(op.a) ^ 1) | at(op.b); break;
      case Kind::Iff: x = at(op.a) == at(op.b); break;
    }
    bits |= x << k;
  }
  return bits;
}

// First falsifying valuation, or nullopt when f is a tautology.
std::optional<std::uint64_t> truth_table(const Formula& f, Meter& meter) {
  const detail::Program prog(f);
  if (prog.ops.size() > 64 || prog.letters.size() > 40) throw OutOfBudget{};
  const std::uint64_t total = std::uint64_t{1} << prog.letters.size();
  for (std::uint64_t v = 0; v < total; ++v) {
    meter.charge(prog.ops.size());
    if (!((eval_flat(prog, v) >> prog.root()) & 1)) return v;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- types

struct Types {
  detail::Program prog;
  std::vector<int> modal_ops;
  std::vector<std::uint64_t> truth;
  // Necessity set: modal nodes that are true boxes or false diamonds.
  std::vector<std::uint32_t> nec;
  // Modal nodes that need a witness successor.
  std::vector<std::uint32_t> need;
  // Modal nodes this type can witness for a predecessor.
  std::vector<std::uint32_t> wit;

  Types(const Formula& f, Meter& meter) : prog(f) {
    if (prog.ops.size() > 64) throw OutOfBudget{};
    std::vector<int> base;
    for (std::size_t k = 0; k < prog.ops.size(); ++k) {
      const Kind kind = prog.ops[k].kind;
      if (kind == Kind::Atom || kind == Kind::Box || kind == Kind::Dia) {
        base.push_back(static_cast<int>(k));
        if (kind != Kind::Atom) modal_ops.push_back(static_cast<int>(k));
      }
    }
    if (base.size() > 20 || modal_ops.size() > 32) throw OutOfBudget{};
    const std::uint64_t total = std::uint64_t{1} << base.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      meter.charge(prog.ops.size());
      std::uint64_t bits = 0;
      std::size_t next_base = 0;
      bool ok = true;
      for (std::size_t k = 0; k < prog.ops.size() && ok; ++k) {
        const auto& op = prog.ops[k];
        auto at = [&](int i) -> std::uint64_t { return (bits >> i) & 1; };
        std::uint64_t x = 0;
        switch (op.kind) {
          case Kind::Atom: x = (mask >> next_base++) & 1; break;
          case Kind::Box:
            x = (mask >> next_base++) & 1;
            if (x && !at(op.a)) ok = false;
            break;
          case Kind::Dia:
            x = (mask >> next_base++) & 1;
            if (!x && at(op.a)) ok = false;
            break;
          case Kind::Top: x = 1; break;
          case Kind::Bot: x = 0; break;
          case Kind::Not: x = !at(op.a); break;
          case Kind::And: x = at(op.a) & at(op.b); break;
          case Kind::Or: x = at(op.a) | at(op.b); break;
          case Kind::Imp: x = (at(op.a) ^ 1) | at(op.b); break;
          case Kind::Iff: x = at(op.a) == at(op.b); break;
        }
        bits |= x << k;
      }
      if (!ok) continue;
      std::uint32_t n = 0, nd = 0, w = 0;
      for (std::size_t j = 0; j < modal_ops.size(); ++j) {
        const auto& op = prog.ops[static_cast<std::size_t>(modal_ops[j])];
        const bool self = (bits >> modal_ops[j]) & 1;
        const bool arg = (bits >> op.a) & 1;
        const bool is_box = op.kind == Kind::Box;
        if (is_box == self) n |= 1U << j;
        if (is_box != self) nd |= 1U << j;
        if (arg != is_box) w |= 1U << j;
      }
      truth.push_back(bits);
      nec.push_back(n);
      need.push_back(nd);
      wit.push_back(w);
    }
  }

  std::size_t size() const { return truth.size(); }
  bool root_true(std::size_t t) const { return (truth[t] >> prog.root()) & 1; }
  bool sees(std::size_t t, std::size_t s) const { return (nec[t] & ~nec[s]) == 0; }

  // First alive successor of t witnessing modal node j, or size().
  std::size_t witness(std::size_t t, std::size_t j, const std::vector<char>& alive,
                      Meter& meter) const {
    meter.charge(size());
    for (std::size_t s = 0; s < size(); ++s) {
      if (alive[s] && ((wit[s] >> j) & 1) && sees(t, s)) return s;
    }
    return size();
  }

  void eliminate(std::vector<char>& alive, Meter& meter) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t t = 0; t < size(); ++t) {
        if (!alive[t]) continue;
        for (std::uint32_t req = need[t]; req; req &= req - 1) {
          const auto j = static_cast<std::size_t>(std::countr_zero(req));
          if (witness(t, j, alive, meter) == size()) {
            alive[t] = 0;
            changed = true;
            break;
          }
        }
      }
    }
  }
};

struct Refutation {
  std::vector<char> alive;
  std::size_t failing = 0;
  // For S4.2, a type in the final cluster.
  std::optional<std::size_t> top;
};

std::optional<std::size_t> first_failing(const Types& ty, const std::vector<char>& alive) {
  for (std::size_t t = 0; t < ty.size(); ++t) {
    if (alive[t] && !ty.root_true(t)) return t;
  }
  return std::nullopt;
}

std::optional<Refutation> refute(Theory th, const Types& ty, Meter& meter) {
  const std::size_t n = ty.size();
  if (th == Theory::S4) {
    std::vector<char> alive(n, 1);
    ty.eliminate(alive, meter);
    if (auto t = first_failing(ty, alive)) return Refutation{std::move(alive), *t, std::nullopt};
    return std::nullopt;
  }
  std::vector<std::uint32_t> tops(ty.nec.begin(), ty.nec.end());
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
  for (std::uint32_t star : tops) {
    std::vector<char> alive(n, 0);
    for (std::size_t t = 0; t < n; ++t) {
      const bool in = th == Theory::S5 ? ty.nec[t] == star : (ty.nec[t] & ~star) == 0;
      alive[t] = in ? 1 : 0;
    }
    meter.charge(n);
    ty.eliminate(alive, meter);
    std::optional<std::size_t> top;
    for (std::size_t t = 0; t < n && !top; ++t) {
      if (alive[t] && ty.nec[t] == star) top = t;
    }
    if (!top) continue;
    if (auto t = first_failing(ty, alive)) return Refutation{std::move(alive), *t, top};
  }
  return std::nullopt;
}

// Failing type plus the first witness for every requirement, closed.
PointedModel model_from_types(const Types& ty, const Refutation& r, Meter& meter) {
  std::vector<std::size_t> chosen = {r.failing};
  std::vector<int> pos(ty.size(), -1);
  pos[r.failing] = 0;
  if (r.top && pos[*r.top] < 0) {
    pos[*r.top] = static_cast<int>(chosen.size());
    chosen.push_back(*r.top);
  }
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const std::size_t t = chosen[i];
    for (std::uint32_t req = ty.need[t]; req; req &= req - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(req));
      const std::size_t s = ty.witness(t, j, r.alive, meter);
      if (pos[s] < 0) {
        pos[s] = static_cast<int>(chosen.size());
        chosen.push_back(s);
      }
    }
  }
  const std::size_t n = chosen.size();
  std::vector<WorldSet> rows(n, WorldSet(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (ty.sees(chosen[u], chosen[v])) rows[u].insert(v);
    }
  }
  PointedModel m{Frame(n, std::move(rows), "countermodel"), {}, 0};
  for (std::size_t k = 0; k < ty.prog.ops.size(); ++k) {
    const auto& op = ty.prog.ops[k];
    if (op.kind != Kind::Atom) continue;
    WorldSet s(n);
    for (std::size_t u = 0; u < n; ++u) {
      if ((ty.truth[chosen[u]] >> k) & 1) s.insert(u);
    }
    m.valuation[ty.prog.letters[static_cast<std::size_t>(op.letter)]] = s;
  }
  return m;
}

// ---------------------------------------------------------------- search

// Up rows as bitmasks; world 0 sees every world.
using SmallFrame = std::vector<std::uint32_t>;

constexpr std::size_t kMaxSearchWorlds = 5;

bool small_transitive(const SmallFrame& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (((r[i] >> j) & 1) && (r[j] & ~r[i])) return false;
    }
  }
  return true;
}

bool small_directed(const SmallFrame& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      if (!((r[i] >> a) & 1)) continue;
      for (std::size_t b = a + 1; b < r.size(); ++b) {
        if (((r[i] >> b) & 1) && !(r[a] & r[b])) return false;
      }
    }
  }
  return true;
}

// Rooted preorders on n worlds; bit k of the edge mask is the k-th
// off-diagonal pair (i, j) in lexicographic order.
const std::vector<SmallFrame>& rooted_preorders(std::size_t n) {
  static std::array<std::vector<SmallFrame>, kMaxSearchWorlds + 1> cache;
  static std::array<std::once_flag, kMaxSearchWorlds + 1> once;
  std::call_once(once[n], [n] {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) pairs.emplace_back(i, j);
      }
    }
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    const std::uint32_t all = (1U << n) - 1;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      SmallFrame r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = 1U << i;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if ((mask >> k) & 1) r[pairs[k].first] |= 1U << pairs[k].second;
      }
      if (r[0] != all || !small_transitive(r)) continue;
      cache[n].push_back(std::move(r));
    }
  });
  return cache[n];
}

std::uint32_t eval_small(const detail::Program& prog, const SmallFrame& r, std::uint64_t v,
                         std::vector<std::uint32_t>& val) {
  const std::size_t n = r.size();
  const std::uint32_t all = (1U << n) - 1;
  for (std::size_t k = 0; k < prog.ops.size(); ++k) {
    const auto& op = prog.ops[k];
    const std::uint32_t a = op.a >= 0 ? val[static_cast<std::size_t>(op.a)] : 0;
    const std::uint32_t b = op.b >= 0 ? val[static_cast<std::size_t>(op.b)] : 0;
    std::uint32_t x = 0;
    switch (op.kind) {
      case Kind::Atom:
        x = static_cast<std::uint32_t>(v >> (static_cast<std::size_t>(op.letter) * n)) & all;
        break;
      case Kind::Top: x = all; break;
      case Kind::Bot: x = 0; break;
      case Kind::Not: x = ~a & all; break;
      case Kind::And: x = a & b; break;
      case Kind::Or: x = a | b; break;
      case Kind::Imp: x = (~a | b) & all; break;
      case Kind::Iff: x = ~(a ^ b) & all; break;
      case Kind::Box:
        for (std::size_t w = 0; w < n; ++w) {
          if (!(r[w] & ~a)) x |= 1U << w;
        }
        break;
      case Kind::Dia:
        for (std::size_t w = 0; w < n; ++w) {
          if (r[w] & a) x |= 1U << w;
        }
        break;
    }
    val[k] = x;
  }
  return val[static_cast<std::size_t>(prog.root())];
}

PointedModel small_model(const detail::Program& prog, const SmallFrame& r, std::uint64_t v) {
  const std::size_t n = r.size();
  std::vector<WorldSet> rows;
  for (std::uint32_t row : r) {
    WorldSet s(n);
    for (std::size_t j = 0; j < n; ++j) {
      if ((row >> j) & 1) s.insert(j);
    }
    rows.push_back(s);
  }
  PointedModel m{Frame(n, std::move(rows), "countermodel"), {}, 0};
  for (std::size_t l = 0; l < prog.letters.size(); ++l) {
    WorldSet s(n);
    for (std::size_t w = 0; w < n; ++w) {
      if ((v >> (l * n + w)) & 1) s.insert(w);
    }
    m.valuation[prog.letters[l]] = s;
  }
  return m;
}

std::optional<PointedModel> canonical_search(Theory th, const Formula& f,
                                             std::size_t max_worlds, Meter& meter) {
  const detail::Program prog(f);
  std::vector<std::uint32_t> val(prog.ops.size());
  max_worlds = std::min(max_worlds, kMaxSearchWorlds);
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const std::size_t bits = n * prog.letters.size();
    if (bits > 20) break;
    const std::uint64_t valuations = std::uint64_t{1} << bits;
    std::vector<SmallFrame> frames;
    if (th == Theory::S5) {
      frames.push_back(SmallFrame(n, (1U << n) - 1));
    } else {
      for (const auto& r : rooted_preorders(n)) {
        if (th == Theory::S4 || small_directed(r)) frames.push_back(r);
      }
    }
    for (const auto& r : frames) {
      for (std::uint64_t v = 0; v < valuations; ++v) {
        meter.charge(prog.ops.size() * n);
        if (!(eval_small(prog, r, v, val) & 1)) return small_model(prog, r, v);
      }
    }
  }
  return std::nullopt;
}

PointedModel pl_model(const Formula& f, std::uint64_t v) {
  PointedModel m{single_point(), {}, 0};
  m.frame.set_name("countermodel");
  std::size_t l = 0;
  for (const auto& letter : letters(f)) {
    WorldSet s(1);
    if ((v >> l++) & 1) s.insert(0);
    m.valuation[letter] = s;
  }
  return m;
}

}  // namespace

Verdict decide(Theory t, const Formula& f, const DecideBudget& budget) {
  const Formula g = oriented(f);
  Meter meter{0, budget.nodes};
  Verdict out;
  try {
    if (t == Theory::PL) {
      const auto v = truth_table(g, meter);
      if (!v) {
        out.kind = Verdict::Kind::Valid;
        return out;
      }
      out.kind = Verdict::Kind::Invalid;
      out.countermodel = pl_model(g, *v);
      return out;
    }
    const Types ty(g, meter);
    const auto r = refute(t, ty, meter);
    if (!r) {
      out.kind = Verdict::Kind::Valid;
      return out;
    }
    out.kind = Verdict::Kind::Invalid;
    auto m = canonical_search(t, g, budget.search_worlds, meter);
    if (!m) m = model_from_types(ty, *r, meter);
    if (uses_down(f)) m->frame = m->frame.converse();
    out.countermodel = std::move(m);
    return out;
  } catch (const OutOfBudget&) {
    out = Verdict{};
    out.kind = Verdict::Kind::Unknown;
    out.report = "budget of " + std::to_string(budget.nodes) + " work units exhausted";
    return out;
  }
}

std::optional<bool> is_valid(Theory t, const Formula& f, const DecideBudget& budget) {
  const Formula g = oriented(f);
  Meter meter{0, budget.nodes};
  try {
    if (t == Theory::PL) return !truth_table(g, meter).has_value();
    const Types ty(g, meter);
    return !refute(t, ty, meter).has_value();
  } catch (const OutOfBudget&) {
    return std::nullopt;
  }
}

Classification classify(const FragmentReport& report, const DecideBudget& budget,
                        unsigned threads) {
  constexpr std::size_t kTheories = kAllTheories.size();
  // Per entry and theory: 0 agree, 1 disagree, 2 unknown, 3 bimodal.
  std::vector<std::array<char, kTheories>> outcome(report.entries.size());
  parallel_for(report.entries.size(), threads, [&](std::size_t i) {
    const auto& e = report.entries[i];
    if (!is_monomodal(e.formula)) {
      outcome[i].fill(3);
      return;
    }
    for (std::size_t k = 0; k < kTheories; ++k) {
      const auto v = is_valid(kAllTheories[k], e.formula, budget);
      outcome[i][k] = !v ? 2 : (*v == e.member ? 0 : 1);
    }
  });
  Classification c;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i][0] == 3) {
      ++c.bimodal;
      continue;
    }
    for (std::size_t k = 0; k < kTheories; ++k) {
      const Theory t = kAllTheories[k];
      if (outcome[i][k] == 2) ++c.unknown[t];
      if (outcome[i][k] == 1 && !c.separators.count(t)) {
        c.separators.emplace(t, report.entries[i].formula);
      }
    }
  }
  for (Theory t : kAllTheories) {
    if (!c.separators.count(t)) c.matches.insert(t);
  }
  return c;
}

}  // namespace gmv
