#include "gmv/frame.hpp"

#include <algorithm>
#include <set>

#include "gmv/error.hpp"

namespace gmv {

Frame::Frame(std::size_t n, std::vector<WorldSet> up_rows, std::string name)
    : n_(n), up_(std::move(up_rows)), name_(std::move(name)) {
  if (n_ == 0) throw BadWorldIndex("a frame needs at least one world");
  if (up_.size() != n_) throw BadWorldIndex("row count does not match world count");
  down_.assign(n_, WorldSet(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    if (up_[i].universe() != n_) throw BadWorldIndex("row universe does not match world count");
    up_[i].for_each([&](std::size_t j) { down_[j].insert(i); });
  }
}

std::size_t Frame::edge_count() const {
  std::size_t e = 0;
  for (const auto& r : up_) e += r.count();
  return e;
}

WorldSet Frame::box(Direction d, const WorldSet& x) const {
  WorldSet out(n_);
  for (std::size_t w = 0; w < n_; ++w) {
    if (successors(d, w).subset_of(x)) out.insert(w);
  }
  return out;
}

WorldSet Frame::dia(Direction d, const WorldSet& x) const {
  WorldSet out(n_);
  for (std::size_t w = 0; w < n_; ++w) {
    if (successors(d, w).intersects(x)) out.insert(w);
  }
  return out;
}

WorldSet Frame::reach(const WorldSet& from, bool up_steps, bool down_steps) const {
  WorldSet seen = from;
  std::vector<std::size_t> stack = from.members();
  while (!stack.empty()) {
    const std::size_t w = stack.back();
    stack.pop_back();
    auto visit = [&](const WorldSet& row) {
      row.for_each([&](std::size_t v) {
        if (!seen.contains(v)) {
          seen.insert(v);
          stack.push_back(v);
        }
      });
    };
    if (up_steps) visit(up_[w]);
    if (down_steps) visit(down_[w]);
  }
  return seen;
}

WorldSet Frame::cone(Direction d, std::size_t w) const {
  if (w >= n_) throw BadWorldIndex("world " + std::to_string(w) + " out of range");
  return reach(WorldSet::singleton(n_, w), d == Direction::Up, d == Direction::Down);
}

WorldSet Frame::component(std::size_t w) const {
  if (w >= n_) throw BadWorldIndex("world " + std::to_string(w) + " out of range");
  return reach(WorldSet::singleton(n_, w), true, true);
}

Frame Frame::converse() const { return Frame(n_, down_, name_); }

bool directed(const Frame& f, Direction d) {
  const std::size_t n = f.size();
  for (std::size_t w = 0; w < n; ++w) {
    const auto succ = f.successors(d, w).members();
    for (std::size_t a = 0; a < succ.size(); ++a) {
      for (std::size_t b = a + 1; b < succ.size(); ++b) {
        if (!f.successors(d, succ[a]).intersects(f.successors(d, succ[b]))) return false;
      }
    }
  }
  return true;
}

FrameProperties properties(const Frame& f) {
  FrameProperties p;
  const std::size_t n = f.size();
  p.reflexive = true;
  p.transitive = true;
  p.antisymmetric = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!f.up(i, i)) p.reflexive = false;
    f.successors(Direction::Up, i).for_each([&](std::size_t j) {
      if (!f.successors(Direction::Up, j).subset_of(f.successors(Direction::Up, i))) {
        p.transitive = false;
      }
      if (j != i && f.up(j, i)) p.antisymmetric = false;
    });
  }
  p.up_directed = directed(f, Direction::Up);
  p.down_directed = directed(f, Direction::Down);
  return p;
}

bool is_preorder(const Frame& f) {
  const auto p = properties(f);
  return p.reflexive && p.transitive;
}

WorldSet PointedModel::value(const std::string& letter) const {
  if (auto it = valuation.find(letter); it != valuation.end()) return it->second;
  return WorldSet(frame.size());
}

PointedModel PointedModel::at(std::size_t w) const {
  if (w >= frame.size()) throw BadWorldIndex("world " + std::to_string(w) + " out of range");
  PointedModel m = *this;
  m.point = w;
  return m;
}

Frame make_frame(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                 Closure close, std::string name) {
  if (n == 0) throw BadWorldIndex("a frame needs at least one world");
  std::vector<WorldSet> rows(n, WorldSet(n));
  for (auto [i, j] : edges) {
    if (i >= n || j >= n) {
      throw BadWorldIndex("edge (" + std::to_string(i) + "," + std::to_string(j) +
                          ") out of range for " + std::to_string(n) + " worlds");
    }
    rows[i].insert(j);
  }
  if (close.transitive) {
    // Compose until nothing changes.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        WorldSet next = rows[i];
        rows[i].for_each([&](std::size_t j) { next |= rows[j]; });
        if (!(next == rows[i])) {
          rows[i] = std::move(next);
          changed = true;
        }
      }
    }
  }
  if (close.reflexive) {
    for (std::size_t i = 0; i < n; ++i) rows[i].insert(i);
  }
  return Frame(n, std::move(rows), std::move(name));
}

Frame single_point() { return make_frame(1, {}, {true, false}, "point"); }

Frame cluster(std::size_t c) {
  if (c == 0) throw BadWorldIndex("cluster needs at least one world");
  return Frame(c, std::vector<WorldSet>(c, WorldSet::full(c)),
               c == 1 ? "point" : "cluster" + std::to_string(c));
}

Frame chain(std::size_t h) {
  if (h == 0) throw BadWorldIndex("chain needs at least one world");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < h; ++i) edges.emplace_back(i, i + 1);
  return make_frame(h, edges, {true, true}, "chain" + std::to_string(h));
}

PointedModel with_world_letters(const Frame& f, std::size_t point, const std::string& prefix) {
  if (point >= f.size()) throw BadWorldIndex("point out of range");
  PointedModel m{f, {}, point};
  for (std::size_t w = 0; w < f.size(); ++w) {
    m.valuation[prefix + std::to_string(w)] = WorldSet::singleton(f.size(), w);
  }
  return m;
}

namespace {

void check_budget(std::size_t bits, std::size_t budget, const char* what) {
  if (bits >= 63 || (std::size_t{1} << bits) > budget) {
    throw BudgetExceeded(std::string(what) + ": 2^" + std::to_string(bits) +
                         " worlds exceeds the world budget of " + std::to_string(budget));
  }
}

}  // namespace

std::pair<Frame, std::size_t> bs_frame(std::size_t m, std::size_t n, std::size_t world_budget) {
  check_budget(m + n, world_budget, "bs_frame");
  const std::size_t size = std::size_t{1} << (m + n);
  std::vector<WorldSet> rows(size, WorldSet(size));
  for (std::size_t u = 0; u < size; ++u) {
    const std::size_t a = u >> n;
    for (std::size_t v = 0; v < size; ++v) {
      const std::size_t b = v >> n;
      if ((a & ~b) == 0) rows[u].insert(v);
    }
  }
  return {Frame(size, std::move(rows), "bs" + std::to_string(m) + "x" + std::to_string(n)), 0};
}

PointedModel bs_model(std::size_t m, std::size_t n, std::size_t world_budget) {
  auto [frame, root] = bs_frame(m, n, world_budget);
  PointedModel model{frame, {}, root};
  const std::size_t size = frame.size();
  for (std::size_t i = 1; i <= m; ++i) {
    WorldSet s(size);
    for (std::size_t u = 0; u < size; ++u) {
      if ((u >> n) & (std::size_t{1} << (i - 1))) s.insert(u);
    }
    model.valuation["b" + std::to_string(i)] = s;
  }
  for (std::size_t j = 1; j <= n; ++j) {
    WorldSet s(size);
    for (std::size_t u = 0; u < size; ++u) {
      if (u & (std::size_t{1} << (j - 1))) s.insert(u);
    }
    model.valuation["s" + std::to_string(j)] = s;
  }
  return model;
}

PointedModel powerset_frame(const PowersetSpec& spec, const std::vector<int>& point,
                            std::size_t world_budget) {
  std::vector<int> all;
  std::set<int> seen;
  auto add = [&](int i) {
    if (i < 0) throw OverlappingIndexSets("negative index " + std::to_string(i));
    if (!seen.insert(i).second) {
      throw OverlappingIndexSets("index " + std::to_string(i) + " occurs more than once");
    }
    all.push_back(i);
  };
  for (int i : spec.buttons) add(i);
  for (const auto& c : spec.classes) {
    for (int i : c) add(i);
  }
  std::sort(all.begin(), all.end());
  check_budget(all.size(), world_budget, "powerset_frame");

  auto pos = [&](int i) {
    return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), i) - all.begin());
  };
  const std::size_t size = std::size_t{1} << all.size();
  std::size_t button_mask = 0;
  for (int i : spec.buttons) button_mask |= std::size_t{1} << pos(i);

  std::vector<WorldSet> rows(size, WorldSet(size));
  for (std::size_t u = 0; u < size; ++u) {
    for (std::size_t v = 0; v < size; ++v) {
      if ((u & button_mask & ~v) == 0) rows[u].insert(v);
    }
  }

  std::size_t point_mask = 0;
  for (int i : point) {
    if (!seen.count(i)) {
      throw BadWorldIndex("point index " + std::to_string(i) + " is not in the index set");
    }
    point_mask |= std::size_t{1} << pos(i);
  }

  PointedModel m{Frame(size, std::move(rows), "powerset"), {}, point_mask};
  for (int i : spec.buttons) {
    WorldSet s(size);
    for (std::size_t u = 0; u < size; ++u) {
      if (!(u & (std::size_t{1} << pos(i)))) s.insert(u);
    }
    m.valuation["b" + std::to_string(i)] = s;
  }
  for (std::size_t j = 0; j < spec.classes.size(); ++j) {
    const auto& cls = spec.classes[j];
    WorldSet s(size);
    for (std::size_t u = 0; u < size; ++u) {
      for (std::size_t k = 0; k < cls.size(); ++k) {
        if (u & (std::size_t{1} << pos(cls[k]))) {
          if (k % 2 == 0) s.insert(u);
          break;
        }
      }
    }
    m.valuation["s" + std::to_string(j + 1)] = s;
  }
  return m;
}

PointedModel combo_frame(ComboKind kind, std::size_t c, std::size_t m, std::size_t n,
                         std::size_t world_budget) {
  if (c == 0) throw BadWorldIndex("cluster needs at least one world");
  const PointedModel bs = bs_model(m, n, world_budget);
  const std::size_t old_size = bs.frame.size();
  const std::size_t size = old_size - 1 + c;
  if (size > world_budget) throw BudgetExceeded("combo_frame exceeds the world budget");
  // Old world u > 0 becomes u - 1 + c; the old root becomes all of K.
  auto image = [&](std::size_t u) { return u - 1 + c; };
  WorldSet cluster_worlds(size);
  for (std::size_t k = 0; k < c; ++k) cluster_worlds.insert(k);

  std::vector<WorldSet> rows(size, WorldSet(size));
  for (std::size_t k = 0; k < c; ++k) rows[k] = WorldSet::full(size);
  for (std::size_t u = 1; u < old_size; ++u) {
    WorldSet& row = rows[image(u)];
    bs.frame.successors(Direction::Up, u).for_each([&](std::size_t v) {
      if (v == 0) {
        row |= cluster_worlds;
      } else {
        row.insert(image(v));
      }
    });
  }
  const std::string tag = std::to_string(c) + "_" + std::to_string(m) + "x" + std::to_string(n);
  Frame below(size, std::move(rows), "combo_below" + tag);

  PointedModel out{below, {}, 0};
  for (const auto& [letter, set] : bs.valuation) {
    WorldSet s(size);
    set.for_each([&](std::size_t u) {
      if (u == 0) {
        s |= cluster_worlds;
      } else {
        s.insert(image(u));
      }
    });
    out.valuation[letter] = s;
  }
  for (std::size_t k = 0; k < c; ++k) {
    out.valuation["k" + std::to_string(k)] = WorldSet::singleton(size, k);
  }
  if (kind == ComboKind::ClusterAboveBs) {
    out.frame = below.converse();
    out.frame.set_name("combo_above" + tag);
  }
  return out;
}

}  // namespace gmv
