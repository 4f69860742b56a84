// Bimodal propositional language over an "up" modality and its converse
// "down" modality.
//
// Formulas are immutable trees with shared subterms; copying a Formula copies
// a pointer. Equality and ordering are structural.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gmv {

enum class Direction : std::uint8_t { Up, Down };

constexpr Direction converse(Direction d) noexcept {
  return d == Direction::Up ? Direction::Down : Direction::Up;
}

const char* to_string(Direction d) noexcept;

enum class Kind : std::uint8_t {
  Atom,
  Top,
  Bot,
  Not,
  Box,
  Dia,
  And,
  Or,
  Imp,
  Iff,
};

class Formula {
 public:
  // Defaults to Top so that containers of formulas are cheap to size.
  Formula();

  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula box(Direction d, Formula f);
  static Formula dia(Direction d, Formula f);

  Kind kind() const noexcept;
  Direction direction() const noexcept;
  const std::string& name() const noexcept;
  const Formula& lhs() const noexcept;
  const Formula& rhs() const noexcept;
  // Operand of a unary node.
  const Formula& arg() const noexcept;
  std::size_t arity() const noexcept;

  // Constructor count; cached at construction.
  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;

  bool is_modal() const noexcept {
    return kind() == Kind::Box || kind() == Kind::Dia;
  }

  // Identity of the shared node; distinct from structural equality.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, Direction d, std::string name,
                      std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind = Kind::Top;
  Direction dir = Direction::Up;
  std::string name;
  std::vector<Formula> children;
  std::size_t size = 1;
  std::size_t hash = 0;
};

inline Kind Formula::kind() const noexcept { return node_->kind; }
inline Direction Formula::direction() const noexcept { return node_->dir; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline const Formula& Formula::lhs() const noexcept { return node_->children[0]; }
inline const Formula& Formula::rhs() const noexcept { return node_->children[1]; }
inline const Formula& Formula::arg() const noexcept { return node_->children[0]; }
inline std::size_t Formula::arity() const noexcept { return node_->children.size(); }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

using Substitution = std::map<std::string, Formula>;

// Grammar (loosest to tightest): <->  (left), -> (right), |, &, unary.
// Unary operators are ~ [u] <u> [d] <d>; [] and <> alias [u] and <u>.
Formula parse(std::string_view text);
std::string print(const Formula& f);

Formula substitute(const Formula& f, const Substitution& s);

std::set<std::string> letters(const Formula& f);
// Distinct subtrees, including f itself.
std::set<Formula> subformulas(const Formula& f);
std::size_t modal_depth(const Formula& f);
inline std::size_t size(const Formula& f) { return f.size(); }

// Directions of the modal operators occurring in f.
std::set<Direction> directions(const Formula& f);
bool is_monomodal(const Formula& f);
// Rewrites every modality to direction d.
Formula orient(const Formula& f, Direction d);

// Canonical letter names p0, p1, ...
std::string canonical_letter(std::size_t i);

// All formulas over p0..p(k-1) built from true, false, ~, &, -> and Box/Dia
// in the given directions, with size <= max_size, without duplicates.
//
// Order (size-lexicographic): ascending size; within a size, unary nodes
// before binary nodes. Unary operators are ordered ~, [u], <u>, [d], <d> and
// range over operands in enumeration order. Binary nodes are ordered &, ->,
// then by ascending left size, then left operand, then right operand.
// Size 1 is p0, ..., p(k-1), true, false.
std::vector<Formula> enumerate(std::size_t k, std::size_t max_size,
                               const std::set<Direction>& dirs);

}  // namespace gmv
