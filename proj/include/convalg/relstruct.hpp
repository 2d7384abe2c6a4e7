#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "convalg/law_report.hpp"
#include "convalg/psg.hpp"

namespace convalg {

// Ternary relation over an indexed carrier. R x y z reads "x splits into y
// followed by z"; convolution joins over the decompositions of x.
class TernaryRel {
public:
  TernaryRel() = default;
  TernaryRel(std::vector<std::string> names,
             std::vector<std::array<int, 3>> triples);

  int size() const { return n_; }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;

  bool has(int x, int y, int z) const;
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }

  // (y,z) pairs with R x y z
  const std::vector<std::pair<int, int>>& decompositions(int x) const {
    return by1_[x];
  }
  // (x,z) pairs with R x y z, for fixed y
  const std::vector<std::pair<int, int>>& with_second(int y) const {
    return by2_[y];
  }
  // (x,y) pairs with R x y z, for fixed z
  const std::vector<std::pair<int, int>>& with_third(int z) const {
    return by3_[z];
  }

  bool is_commutative() const;
  // largest number of decompositions of any single element
  int max_decompositions() const;

private:
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<std::array<int, 3>> triples_;  // sorted, deduplicated
  std::vector<std::vector<std::pair<int, int>>> by1_, by2_, by3_;
};

struct RelMonoid {
  TernaryRel rel;
  std::vector<int> units;
};

// Law rows:
//   assoc               exists u: R u y z & R x u w  <=>
//                       exists v: R v z w & R x y v
//   left-unit-exists    every y has e in E with R y e y
//   left-unit-unique    e in E and R x e y imply x = y
//   right-unit-exists   every y has e in E with R y y e
//   right-unit-unique   e in E and R x y e imply x = y
//   locally-finite      records the decomposition bound (always passes on a
//                       finite carrier)
//   commutative         optional row, R x y z <=> R x z y
LawReport check_rel_monoid(const RelMonoid& rm,
                           bool include_commutative_row = false);

// R x y z iff y z is defined and equals x; units taken from the monoid.
// The relation is a relational monoid exactly when the partial monoid is
// strict, which this function does not verify.
RelMonoid rel_of_psg(const PartialMonoid& m);

nlohmann::json rel_monoid_to_json(const RelMonoid& rm);
RelMonoid rel_monoid_from_json(const nlohmann::json& j);

// Union on a shared carrier (names taken from the first argument).
TernaryRel rel_union(const TernaryRel& a, const TernaryRel& b);

// Binary relation as a dense boolean matrix, possibly rectangular.
class BinRel {
public:
  BinRel() = default;
  explicit BinRel(int n) : BinRel(n, n) {}
  BinRel(int rows, int cols)
      : rows_(rows), cols_(cols), m_(static_cast<size_t>(rows) * cols, 0) {}
  static BinRel identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool at(int i, int j) const {
    return m_[static_cast<size_t>(i) * cols_ + j] != 0;
  }
  void set(int i, int j, bool v = true) {
    m_[static_cast<size_t>(i) * cols_ + j] = v;
  }

  BinRel compose(const BinRel& o) const;  // cols must match o's rows
  BinRel converse() const;
  BinRel unite(const BinRel& o) const;    // same shape
  int count() const;
  bool operator==(const BinRel& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && m_ == o.m_;
  }
  bool operator!=(const BinRel& o) const { return !(*this == o); }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<uint8_t> m_;
};

} // namespace convalg
