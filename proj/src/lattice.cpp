#include "convalg/lattice.hpp"

#include <stdexcept>

namespace convalg {

FinLattice FinLattice::from_leq(std::vector<std::string> names,
                                const std::vector<std::pair<int, int>>& pairs) {
  FinLattice l;
  l.n_ = static_cast<int>(names.size());
  l.names_ = std::move(names);
  l.leq_.assign(static_cast<size_t>(l.n_) * l.n_, 0);
  for (int a = 0; a < l.n_; ++a) l.leq_[a * l.n_ + a] = 1;
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= l.n_ || b < 0 || b >= l.n_)
      throw std::invalid_argument("leq pair out of range");
    l.leq_[a * l.n_ + b] = 1;
  }
  // Warshall transitive closure.
  for (int k = 0; k < l.n_; ++k)
    for (int a = 0; a < l.n_; ++a)
      if (l.leq_[a * l.n_ + k])
        for (int b = 0; b < l.n_; ++b)
          if (l.leq_[k * l.n_ + b]) l.leq_[a * l.n_ + b] = 1;
  for (int a = 0; a < l.n_; ++a)
    for (int b = a + 1; b < l.n_; ++b)
      if (l.leq(a, b) && l.leq(b, a))
        throw std::invalid_argument("order not antisymmetric: " + l.names_[a] +
                                    " and " + l.names_[b]);
  l.derive_tables();
  return l;
}

FinLattice FinLattice::chain(std::vector<std::string> names) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < static_cast<int>(names.size()); ++i) pairs.push_back({i, i + 1});
  return from_leq(std::move(names), pairs);
}

FinLattice FinLattice::powerset(int k) {
  if (k < 0 || k > 16) throw std::invalid_argument("powerset: bad ground size");
  int n = 1 << k;
  std::vector<std::string> names(n);
  for (int s = 0; s < n; ++s) {
    std::string nm = "{";
    for (int i = 0; i < k; ++i)
      if (s & (1 << i)) nm += (nm.size() > 1 ? "," : "") + std::to_string(i);
    names[s] = nm + "}";
  }
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a & b) == a) pairs.push_back({a, b});
  return from_leq(std::move(names), pairs);
}

void FinLattice::derive_tables() {
  join_.assign(static_cast<size_t>(n_) * n_, -1);
  meet_.assign(static_cast<size_t>(n_) * n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      int lub = -1, glb = -1;
      for (int c = 0; c < n_; ++c) {
        if (leq(a, c) && leq(b, c) && (lub == -1 || leq(c, lub))) lub = c;
        if (leq(c, a) && leq(c, b) && (glb == -1 || leq(glb, c))) glb = c;
      }
      // The greedy scan above finds *a* minimal upper bound; verify it is least.
      if (lub != -1)
        for (int c = 0; c < n_; ++c)
          if (leq(a, c) && leq(b, c) && !leq(lub, c)) lub = -1;
      if (glb != -1)
        for (int c = 0; c < n_; ++c)
          if (leq(c, a) && leq(c, b) && !leq(c, glb)) glb = -1;
      if (lub == -1 || glb == -1)
        throw std::invalid_argument("not a lattice: no lub/glb for " + names_[a] +
                                    ", " + names_[b]);
      join_[a * n_ + b] = lub;
      meet_[a * n_ + b] = glb;
    }
  bottom_ = top_ = -1;
  for (int c = 0; c < n_; ++c) {
    bool bot = true, top = true;
    for (int x = 0; x < n_; ++x) {
      bot = bot && leq(c, x);
      top = top && leq(x, c);
    }
    if (bot) bottom_ = c;
    if (top) top_ = c;
  }
  if (bottom_ == -1 || top_ == -1)
    throw std::invalid_argument("lattice has no bottom or top");
}

LawReport FinLattice::check() const {
  LawReport r;
  r.subject = "lattice(" + std::to_string(n_) + " elements)";
  auto& refl = r.add("order-reflexive");
  auto& antisym = r.add("order-antisymmetric");
  auto& trans = r.add("order-transitive");
  auto& lub = r.add("join-is-lub");
  auto& glb = r.add("meet-is-glb");
  auto& bounds = r.add("bottom-top");
  for (int a = 0; a < n_; ++a) {
    refl.cases++;
    if (!leq(a, a)) {
      refl.status = LawCheck::Status::fail;
      refl.witness = names_[a];
    }
  }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      antisym.cases++;
      if (a != b && leq(a, b) && leq(b, a)) {
        antisym.status = LawCheck::Status::fail;
        antisym.witness = names_[a] + ", " + names_[b];
      }
      for (int c = 0; c < n_; ++c) {
        trans.cases++;
        if (leq(a, b) && leq(b, c) && !leq(a, c)) {
          trans.status = LawCheck::Status::fail;
          trans.witness = names_[a] + " <= " + names_[b] + " <= " + names_[c];
        }
      }
    }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      int j = join(a, b), m = meet(a, b);
      bool jok = leq(a, j) && leq(b, j);
      bool mok = leq(m, a) && leq(m, b);
      for (int c = 0; c < n_; ++c) {
        if (leq(a, c) && leq(b, c)) jok = jok && leq(j, c);
        if (leq(c, a) && leq(c, b)) mok = mok && leq(c, m);
      }
      lub.cases++;
      glb.cases++;
      if (!jok) {
        lub.status = LawCheck::Status::fail;
        lub.witness = names_[a] + " join " + names_[b];
      }
      if (!mok) {
        glb.status = LawCheck::Status::fail;
        glb.witness = names_[a] + " meet " + names_[b];
      }
    }
  for (int a = 0; a < n_; ++a) {
    bounds.cases++;
    if (!leq(bottom_, a) || !leq(a, top_)) {
      bounds.status = LawCheck::Status::fail;
      bounds.witness = names_[a];
    }
  }
  return r;
}

bool FinLattice::is_distributive() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return false;
  return true;
}

std::vector<int> FinLattice::complements() const {
  std::vector<int> comp(n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int c = 0; c < n_; ++c)
      if (meet(a, c) == bottom_ && join(a, c) == top_) {
        comp[a] = c;
        break;
      }
  return comp;
}

} // namespace convalg
