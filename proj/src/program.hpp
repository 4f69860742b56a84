#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "gmv/formula.hpp"

namespace gmv::detail {

// A formula flattened to a DAG of operations, children before parents. The
// root is the last op.
struct Program {
  struct Op {
    Kind kind;
    Direction dir;
    int a = -1;
    int b = -1;
    int letter = -1;
  };
  std::vector<Op> ops;
  // Sorted; Op::letter indexes into this.
  std::vector<std::string> letters;
  std::vector<Formula> nodes;

  explicit Program(const Formula& f) {
    for (const auto& l : gmv::letters(f)) letters.push_back(l);
    std::unordered_map<Formula, int, FormulaHash> index;
    compile(f, index);
  }

  int root() const { return static_cast<int>(ops.size()) - 1; }

 private:
  int compile(const Formula& f, std::unordered_map<Formula, int, FormulaHash>& index) {
    if (auto it = index.find(f); it != index.end()) return it->second;
    Op op{f.kind(), f.direction()};
    if (f.kind() == Kind::Atom) {
      op.letter = static_cast<int>(
          std::lower_bound(letters.begin(), letters.end(), f.name()) - letters.begin());
    } else if (f.arity() >= 1) {
      op.a = compile(f.lhs(), index);
      if (f.arity() == 2) op.b = compile(f.rhs(), index);
    }
    ops.push_back(op);
    nodes.push_back(f);
    const int id = static_cast<int>(ops.size()) - 1;
    index.emplace(f, id);
    return id;
  }
};

}  // namespace gmv::detail
