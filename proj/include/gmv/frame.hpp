// Finite bimodal Kripke frames.
//
// A frame stores only its up relation. The down relation is the converse by
// construction: down(i, j) holds exactly when up(j, i) does. The converse rows
// are materialized once at construction for fast evaluation and are never
// settable on their own.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmv/formula.hpp"
#include "gmv/world_set.hpp"

namespace gmv {

inline constexpr std::size_t kDefaultWorldBudget = std::size_t{1} << 16;

struct Closure {
  bool reflexive = false;
  bool transitive = false;
};

class Frame {
 public:
  Frame() : Frame(1, {WorldSet::full(1)}) {}
  // Rows must all have universe n; row i lists the up-successors of i.
  Frame(std::size_t n, std::vector<WorldSet> up_rows, std::string name = "frame");

  std::size_t size() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool up(std::size_t i, std::size_t j) const { return up_[i].contains(j); }
  bool down(std::size_t i, std::size_t j) const { return up_[j].contains(i); }
  bool related(Direction d, std::size_t i, std::size_t j) const {
    return d == Direction::Up ? up(i, j) : down(i, j);
  }
  const WorldSet& successors(Direction d, std::size_t i) const {
    return d == Direction::Up ? up_[i] : down_[i];
  }
  const std::vector<WorldSet>& up_rows() const noexcept { return up_; }
  std::size_t edge_count() const;

  // {w : every d-successor of w lies in x}.
  WorldSet box(Direction d, const WorldSet& x) const;
  // {w : some d-successor of w lies in x}.
  WorldSet dia(Direction d, const WorldSet& x) const;

  // Worlds reachable from w by zero or more d-steps.
  WorldSet cone(Direction d, std::size_t w) const;
  // Worlds reachable from `from` by zero or more steps of the enabled kinds.
  WorldSet reach(const WorldSet& from, bool up_steps, bool down_steps) const;
  // Reachable from w under the union of both relations and their converses.
  WorldSet component(std::size_t w) const;

  // Same worlds, up and down exchanged.
  Frame converse() const;

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.n_ == b.n_ && a.name_ == b.name_ && a.up_ == b.up_;
  }
  // Ignores the name.
  bool same_relation(const Frame& o) const { return n_ == o.n_ && up_ == o.up_; }

 private:
  std::size_t n_;
  std::vector<WorldSet> up_;
  std::vector<WorldSet> down_;
  std::string name_;
};

struct FrameProperties {
  bool reflexive = false;
  bool transitive = false;
  bool antisymmetric = false;
  bool up_directed = false;
  bool down_directed = false;
};

FrameProperties properties(const Frame& f);
// Any two d-successors of any world have a common d-successor.
bool directed(const Frame& f, Direction d);
bool is_preorder(const Frame& f);

struct PointedModel {
  Frame frame;
  // Letters missing from the map denote the empty set.
  std::map<std::string, WorldSet> valuation;
  std::size_t point = 0;

  WorldSet value(const std::string& letter) const;
  PointedModel at(std::size_t w) const;

  friend bool operator==(const PointedModel&, const PointedModel&) = default;
};

Frame make_frame(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                 Closure close = {}, std::string name = "frame");

Frame single_point();
Frame cluster(std::size_t c);
Frame chain(std::size_t h);

// Adds letters <prefix>0..<prefix>(n-1), each true at exactly one world.
PointedModel with_world_letters(const Frame& f, std::size_t point, const std::string& prefix = "w");

// Worlds are pairs (A, t) with A a subset of {1..m} and t in {0,1}^n, indexed
// as (mask(A) << n) | t. (A, t) sees (A', t') iff A is a subset of A'. The
// designated world is (empty, 0) = 0.
std::pair<Frame, std::size_t> bs_frame(std::size_t m, std::size_t n,
                                       std::size_t world_budget = kDefaultWorldBudget);
// bs_frame plus letters b1..bm ("i in A") and s1..sn (switch bit j).
PointedModel bs_model(std::size_t m, std::size_t n,
                      std::size_t world_budget = kDefaultWorldBudget);

struct PowersetSpec {
  std::vector<int> buttons;
  std::vector<std::vector<int>> classes;
};

// Worlds are the subsets S of the union U of all indices, indexed by the mask
// over U sorted ascending. Button indices are ordered by inclusion; indices of
// parity classes are free, so S sees S' iff S ∩ B ⊆ S' ∩ B. Letters: b<i> for
// i in B holds iff i ∉ S; s<j> (j = 1, 2, ... per class) holds iff the least
// member of C_j ∩ S sits at an even position of C_j, and fails when C_j ∩ S
// is empty.
PointedModel powerset_frame(const PowersetSpec& spec, const std::vector<int>& point,
                            std::size_t world_budget = kDefaultWorldBudget);

enum class ComboKind { ClusterBelowBs, ClusterAboveBs };

// ClusterBelowBs: bs_frame(m, n) with its designated world replaced by a total
// cluster K of c worlds (worlds 0..c-1). K sees every old world and every old
// edge into the root is redirected to all of K. ClusterAboveBs is the converse
// frame. Letters: bs letters (K inherits the root's) plus k0..k(c-1) marking
// single cluster worlds. The designated world is 0.
PointedModel combo_frame(ComboKind kind, std::size_t c, std::size_t m, std::size_t n,
                         std::size_t world_budget = kDefaultWorldBudget);

// Line-oriented text format:
//   frame <name> / worlds <n> / up <i> <j> ... / closure ... / point <i> /
//   val <letter> <i> ... / end
std::string to_text(const Frame& f);
std::string to_text(const PointedModel& m);
// The flag is false when the text has no point line (point defaults to 0).
std::pair<PointedModel, bool> model_from_text(const std::string& text);
Frame frame_from_text(const std::string& text);

void save(const Frame& f, const std::string& path);
void save(const PointedModel& m, const std::string& path);
PointedModel load_model(const std::string& path);
Frame load_frame(const std::string& path);

}  // namespace gmv
