// Reference implementations used only by the tests. They share no code with
// the library beyond the Formula tree and are written for obviousness.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gmv/formula.hpp"
#include "gmv/frame.hpp"

namespace oracle {

using gmv::Direction;
using gmv::Formula;
using gmv::Kind;

using Matrix = std::vector<std::vector<bool>>;
using Set = std::vector<bool>;

struct Model {
  Matrix up;
  std::map<std::string, Set> val;
  std::size_t size() const { return up.size(); }
};

inline Model from(const gmv::PointedModel& m) {
  Model out;
  const std::size_t n = m.frame.size();
  out.up.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.up[i][j] = m.frame.up(i, j);
  }
  for (const auto& [l, s] : m.valuation) {
    Set v(n, false);
    for (std::size_t w = 0; w < n; ++w) v[w] = s.contains(w);
    out.val[l] = v;
  }
  return out;
}

inline bool holds(const Model& m, std::size_t w, const Formula& f) {
  const std::size_t n = m.size();
  auto sees = [&](Direction d, std::size_t a, std::size_t b) {
    return d == Direction::Up ? m.up[a][b] : m.up[b][a];
  };
  switch (f.kind()) {
    case Kind::Atom: {
      auto it = m.val.find(f.name());
      return it != m.val.end() && it->second[w];
    }
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::Not: return !holds(m, w, f.arg());
    case Kind::And: return holds(m, w, f.lhs()) && holds(m, w, f.rhs());
    case Kind::Or: return holds(m, w, f.lhs()) || holds(m, w, f.rhs());
    case Kind::Imp: return !holds(m, w, f.lhs()) || holds(m, w, f.rhs());
    case Kind::Iff: return holds(m, w, f.lhs()) == holds(m, w, f.rhs());
    case Kind::Box:
      for (std::size_t v = 0; v < n; ++v) {
        if (sees(f.direction(), w, v) && !holds(m, v, f.arg())) return false;
      }
      return true;
    case Kind::Dia:
      for (std::size_t v = 0; v < n; ++v) {
        if (sees(f.direction(), w, v) && holds(m, v, f.arg())) return true;
      }
      return false;
  }
  return false;
}

inline bool tautology(const Formula& f) {
  const auto ls = gmv::letters(f);
  const std::vector<std::string> names(ls.begin(), ls.end());
  std::function<bool(const Formula&, std::size_t)> ev = [&](const Formula& g, std::size_t v) {
    switch (g.kind()) {
      case Kind::Atom: {
        for (std::size_t i = 0; i < names.size(); ++i) {
          if (names[i] == g.name()) return ((v >> i) & 1) != 0;
        }
        return false;
      }
      case Kind::Top: return true;
      case Kind::Bot: return false;
      case Kind::Not: return !ev(g.arg(), v);
      case Kind::Box:
      case Kind::Dia: return ev(g.arg(), v);
      case Kind::And: return ev(g.lhs(), v) && ev(g.rhs(), v);
      case Kind::Or: return ev(g.lhs(), v) || ev(g.rhs(), v);
      case Kind::Imp: return !ev(g.lhs(), v) || ev(g.rhs(), v);
      case Kind::Iff: return ev(g.lhs(), v) == ev(g.rhs(), v);
    }
    return false;
  };
  for (std::size_t v = 0; v < (std::size_t{1} << names.size()); ++v) {
    if (!ev(f, v)) return false;
  }
  return true;
}

inline bool reflexive_transitive(const Matrix& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!r[i][i]) return false;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (r[i][j] && r[j][k] && !r[i][k]) return false;
      }
    }
  }
  return true;
}

inline bool directed(const Matrix& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!r[i][a] || !r[i][b]) continue;
        bool meet = false;
        for (std::size_t c = 0; c < n && !meet; ++c) meet = r[a][c] && r[b][c];
        if (!meet) return false;
      }
    }
  }
  return true;
}

// Every relation on n worlds satisfying keep, by brute force over n^2 bits.
inline std::vector<Matrix> relations(std::size_t n, const std::function<bool(const Matrix&)>& keep) {
  std::vector<Matrix> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n * n)); ++mask) {
    Matrix r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) r[i][j] = (mask >> (i * n + j)) & 1;
    }
    if (keep(r)) out.push_back(r);
  }
  return out;
}

// Whether f holds at every world of every model on the given frames.
inline bool valid_on_frames(const Formula& f, const std::vector<Matrix>& frames) {
  const auto ls = gmv::letters(f);
  const std::vector<std::string> names(ls.begin(), ls.end());
  for (const auto& r : frames) {
    const std::size_t n = r.size();
    const std::size_t bits = n * names.size();
    for (std::size_t v = 0; v < (std::size_t{1} << bits); ++v) {
      Model m{r, {}};
      for (std::size_t l = 0; l < names.size(); ++l) {
        Set s(n, false);
        for (std::size_t w = 0; w < n; ++w) s[w] = (v >> (l * n + w)) & 1;
        m.val[names[l]] = s;
      }
      for (std::size_t w = 0; w < n; ++w) {
        if (!holds(m, w, f)) return false;
      }
    }
  }
  return true;
}

inline Matrix universal(std::size_t n) { return Matrix(n, std::vector<bool>(n, true)); }

// Least family containing the valuation sets and closed under complement,
// intersection and both boxes.
inline std::set<Set> algebra_closure(const Model& m) {
  const std::size_t n = m.size();
  std::set<Set> fam;
  fam.insert(Set(n, true));
  for (const auto& [l, s] : m.val) fam.insert(s);
  auto box = [&](const Set& x, bool up) {
    Set out(n, true);
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t v = 0; v < n; ++v) {
        const bool rel = up ? m.up[w][v] : m.up[v][w];
        if (rel && !x[v]) out[w] = false;
      }
    }
    return out;
  };
  while (true) {
    std::set<Set> next = fam;
    for (const auto& a : fam) {
      Set c(n);
      for (std::size_t w = 0; w < n; ++w) c[w] = !a[w];
      next.insert(c);
      next.insert(box(a, true));
      next.insert(box(a, false));
      for (const auto& b : fam) {
        Set i(n);
        for (std::size_t w = 0; w < n; ++w) i[w] = a[w] && b[w];
        next.insert(i);
      }
    }
    if (next.size() == fam.size()) return fam;
    fam = std::move(next);
  }
}

// Whether every substitution instance of f holds at w, with letters ranging
// over the closure family.
inline bool ml_member(const Model& m, std::size_t w, const Formula& f) {
  const auto fam_set = algebra_closure(m);
  const std::vector<Set> fam(fam_set.begin(), fam_set.end());
  const auto ls = gmv::letters(f);
  const std::vector<std::string> names(ls.begin(), ls.end());
  std::vector<std::size_t> pick(names.size(), 0);
  while (true) {
    Model inst{m.up, {}};
    for (std::size_t l = 0; l < names.size(); ++l) inst.val[names[l]] = fam[pick[l]];
    if (!holds(inst, w, f)) return false;
    std::size_t l = 0;
    while (l < names.size() && ++pick[l] == fam.size()) pick[l++] = 0;
    if (l == names.size()) return true;
  }
}

}  // namespace oracle
