#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convalg/law_report.hpp"

namespace convalg {

// Finite bounded lattice. Elements are indices into `names`; `leq` is the
// reflexive-transitive closure of whatever pairs the construction supplied.
// Join/meet tables are derived from the order and validated to be actual
// least upper / greatest lower bounds.
class FinLattice {
public:
  FinLattice() = default;

  // `pairs` lists (a, b) with a <= b; closure is applied here.
  static FinLattice from_leq(std::vector<std::string> names,
                             const std::vector<std::pair<int, int>>& pairs);

  // Total order 0 < 1 < ... < n-1 over the given names.
  static FinLattice chain(std::vector<std::string> names);

  // Powerset of `k` ground elements ordered by inclusion (2^k elements).
  static FinLattice powerset(int k);

  int size() const { return n_; }
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }

  bool leq(int a, int b) const { return leq_[a * n_ + b] != 0; }
  int join(int a, int b) const { return join_[a * n_ + b]; }
  int meet(int a, int b) const { return meet_[a * n_ + b]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  int join_all(const std::vector<int>& xs) const {
    int acc = bottom_;
    for (int x : xs) acc = join(acc, x);
    return acc;
  }
  int meet_all(const std::vector<int>& xs) const {
    int acc = top_;
    for (int x : xs) acc = meet(acc, x);
    return acc;
  }

  // Order axioms, lub/glb property of the tables, absorption, bounds.
  LawReport check() const;

  // True when meet distributes over join everywhere.
  bool is_distributive() const;

  // For each element, an index c with x ⊓ c = ⊥ and x ⊔ c = ⊤, or -1.
  std::vector<int> complements() const;

private:
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<uint8_t> leq_;
  std::vector<int32_t> join_, meet_;
  int bottom_ = -1, top_ = -1;

  void derive_tables();  // throws std::invalid_argument if not a lattice
};

} // namespace convalg
