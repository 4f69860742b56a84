#include "gmv/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "gmv/error.hpp"

namespace gmv {

const char* to_string(Direction d) noexcept {
  return d == Direction::Up ? "up" : "down";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

// Position in the canonical order among nodes of equal size.
int rank(Kind k, Direction d) {
  switch (k) {
    case Kind::Atom: return 0;
    case Kind::Top: return 1;
    case Kind::Bot: return 2;
    case Kind::Not: return 3;
    case Kind::Box: return d == Direction::Up ? 4 : 6;
    case Kind::Dia: return d == Direction::Up ? 5 : 7;
    case Kind::And: return 8;
    case Kind::Imp: return 9;
    case Kind::Or: return 10;
    case Kind::Iff: return 11;
  }
  return 12;
}

}  // namespace

Formula Formula::make(Kind k, Direction d, std::string name,
                      std::vector<Formula> children) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->dir = d;
  n->name = std::move(name);
  n->children = std::move(children);
  std::size_t h = mix(static_cast<std::size_t>(rank(k, d)), std::hash<std::string>{}(n->name));
  for (const auto& c : n->children) {
    n->size += c.size();
    h = mix(h, c.hash());
  }
  n->hash = h;
  return Formula(std::move(n));
}

Formula::Formula() {
  static const std::shared_ptr<const Node> kTop = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Top;
    n->hash = mix(static_cast<std::size_t>(rank(Kind::Top, Direction::Up)),
                  std::hash<std::string>{}(""));
    return n;
  }();
  node_ = kTop;
}

Formula Formula::atom(std::string name) {
  return make(Kind::Atom, Direction::Up, std::move(name), {});
}
Formula Formula::top() { return Formula(); }
Formula Formula::bot() { return make(Kind::Bot, Direction::Up, "", {}); }
Formula Formula::neg(Formula f) {
  return make(Kind::Not, Direction::Up, "", {std::move(f)});
}
Formula Formula::conj(Formula a, Formula b) {
  return make(Kind::And, Direction::Up, "", {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return make(Kind::Or, Direction::Up, "", {std::move(a), std::move(b)});
}
Formula Formula::imp(Formula a, Formula b) {
  return make(Kind::Imp, Direction::Up, "", {std::move(a), std::move(b)});
}
Formula Formula::iff(Formula a, Formula b) {
  return make(Kind::Iff, Direction::Up, "", {std::move(a), std::move(b)});
}
Formula Formula::box(Direction d, Formula f) {
  return make(Kind::Box, d, "", {std::move(f)});
}
Formula Formula::dia(Direction d, Formula f) {
  return make(Kind::Dia, d, "", {std::move(f)});
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind() ||
      a.direction() != b.direction() || a.name() != b.name()) {
    return false;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.node_->children[i] == b.node_->children[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = rank(a.kind(), a.direction()) <=> rank(b.kind(), b.direction()); c != 0) {
    return c;
  }
  if (a.kind() == Kind::Atom) {
    // p2 sorts before p10.
    if (auto c = a.name().size() <=> b.name().size(); c != 0) return c;
    return a.name().compare(b.name()) <=> 0;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.node_->children[i] <=> b.node_->children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case Kind::Not: return Formula::neg(std::move(kids[0]));
    case Kind::Box: return Formula::box(f.direction(), std::move(kids[0]));
    case Kind::Dia: return Formula::dia(f.direction(), std::move(kids[0]));
    case Kind::And: return Formula::conj(std::move(kids[0]), std::move(kids[1]));
    case Kind::Or: return Formula::disj(std::move(kids[0]), std::move(kids[1]));
    case Kind::Imp: return Formula::imp(std::move(kids[0]), std::move(kids[1]));
    case Kind::Iff: return Formula::iff(std::move(kids[0]), std::move(kids[1]));
    default: return f;
  }
}

template <typename Leaf, typename Node>
Formula map_tree(const Formula& f, const Leaf& leaf, const Node& node) {
  if (f.arity() == 0) return leaf(f);
  std::vector<Formula> kids;
  kids.reserve(f.arity());
  kids.push_back(map_tree(f.lhs(), leaf, node));
  if (f.arity() == 2) kids.push_back(map_tree(f.rhs(), leaf, node));
  return node(f, std::move(kids));
}

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  for (std::size_t i = 0; i < f.arity(); ++i) collect(i == 0 ? f.lhs() : f.rhs(), out);
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& s) {
  return map_tree(
      f,
      [&](const Formula& leaf) {
        if (leaf.kind() == Kind::Atom) {
          if (auto it = s.find(leaf.name()); it != s.end()) return it->second;
        }
        return leaf;
      },
      rebuild);
}

Formula orient(const Formula& f, Direction d) {
  return map_tree(
      f, [](const Formula& leaf) { return leaf; },
      [d](const Formula& n, std::vector<Formula> kids) {
        if (n.kind() == Kind::Box) return Formula::box(d, std::move(kids[0]));
        if (n.kind() == Kind::Dia) return Formula::dia(d, std::move(kids[0]));
        return rebuild(n, std::move(kids));
      });
}

std::set<std::string> letters(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Kind::Atom) out.insert(g.name());
    for (std::size_t i = 0; i < g.arity(); ++i) walk(i == 0 ? g.lhs() : g.rhs());
  };
  walk(f);
  return out;
}

std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  collect(f, out);
  return out;
}

std::size_t modal_depth(const Formula& f) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    d = std::max(d, modal_depth(i == 0 ? f.lhs() : f.rhs()));
  }
  return f.is_modal() ? d + 1 : d;
}

std::set<Direction> directions(const Formula& f) {
  std::set<Direction> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_modal()) out.insert(g.direction());
    for (std::size_t i = 0; i < g.arity(); ++i) walk(i == 0 ? g.lhs() : g.rhs());
  };
  walk(f);
  return out;
}

bool is_monomodal(const Formula& f) { return directions(f).size() <= 1; }

std::string canonical_letter(std::size_t i) { return "p" + std::to_string(i); }

std::vector<Formula> enumerate(std::size_t k, std::size_t max_size,
                               const std::set<Direction>& dirs) {
  std::vector<Formula> out;
  if (max_size == 0) return out;
  // by_size[s] holds the formulas of size s in canonical order.
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  for (std::size_t i = 0; i < k; ++i) by_size[1].push_back(Formula::atom(canonical_letter(i)));
  by_size[1].push_back(Formula::top());
  by_size[1].push_back(Formula::bot());

  std::vector<std::function<Formula(const Formula&)>> unary;
  unary.emplace_back([](const Formula& f) { return Formula::neg(f); });
  for (Direction d : {Direction::Up, Direction::Down}) {
    if (!dirs.count(d)) continue;
    unary.emplace_back([d](const Formula& f) { return Formula::box(d, f); });
    unary.emplace_back([d](const Formula& f) { return Formula::dia(d, f); });
  }

  for (std::size_t s = 2; s <= max_size; ++s) {
    auto& level = by_size[s];
    for (const auto& op : unary) {
      for (const auto& f : by_size[s - 1]) level.push_back(op(f));
    }
    for (auto make : {&Formula::conj, &Formula::imp}) {
      for (std::size_t ls = 1; ls + 1 < s; ++ls) {
        const std::size_t rs = s - 1 - ls;
        for (const auto& l : by_size[ls]) {
          for (const auto& r : by_size[rs]) level.push_back(make(l, r));
        }
      }
    }
  }
  std::size_t total = 0;
  for (const auto& level : by_size) total += level.size();
  out.reserve(total);
  for (auto& level : by_size) {
    for (auto& f : level) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace gmv
