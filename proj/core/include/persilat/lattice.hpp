#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace persilat {

class Diagram;

// A finite poset on at most 64 nodes, stored as up-set bitmasks.
class NodePoset {
 public:
  static constexpr std::size_t max_nodes = 64;

  // leq[i][j] is true iff i <= j. Must be a partial order.
  NodePoset(std::vector<std::string> ids, const std::vector<std::vector<bool>>& leq);
  static NodePoset from_diagram(const Diagram& d);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::size_t index(const std::string& id) const;
  bool leq(std::size_t i, std::size_t j) const { return (up_[i] >> j) & 1U; }
  std::uint64_t up(std::size_t i) const { return up_[i]; }
  std::uint64_t down(std::size_t i) const { return down_[i]; }

 private:
  std::vector<std::string> ids_;
  std::vector<std::uint64_t> up_, down_;
};

// Meet of an antichain of generators, as a bitmask over node indices. The
// empty mask is the empty meet, i.e. top.
using MeetTerm = std::uint64_t;

// Element of the free bounded distributive lattice: a join of meet terms in
// normal form (an antichain of clauses, sorted canonically). No clauses is
// bottom; the single empty clause is top.
class LatticeTerm {
 public:
  LatticeTerm() = default;

  const std::vector<MeetTerm>& clauses() const noexcept { return clauses_; }
  bool is_bottom() const noexcept { return clauses_.empty(); }
  bool is_top() const noexcept { return clauses_.size() == 1 && clauses_[0] == 0; }

  friend bool operator==(const LatticeTerm&, const LatticeTerm&) = default;
  // Canonical order: bottom first, top last, otherwise lexicographic in the
  // sorted generator index lists of the clauses.
  friend bool operator<(const LatticeTerm& a, const LatticeTerm& b);

 private:
  friend class FreeLattice;
  explicit LatticeTerm(std::vector<MeetTerm> clauses) : clauses_(std::move(clauses)) {}

  std::vector<MeetTerm> clauses_;
};

struct Enumeration {
  std::vector<LatticeTerm> elements;
  bool truncated = false;
};

class FreeLattice {
 public:
  static constexpr std::size_t default_budget = 100000;
  // Heyting implication enumerates every antichain of generators.
  static constexpr std::size_t max_implication_nodes = 20;

  explicit FreeLattice(NodePoset poset);

  const NodePoset& poset() const noexcept { return poset_; }

  LatticeTerm top() const;
  LatticeTerm bottom() const;
  LatticeTerm generator(std::size_t i) const;
  LatticeTerm generator(const std::string& id) const { return generator(poset_.index(id)); }

  // Normal form of the join of the given clauses (each an arbitrary set of
  // generators, minimized here).
  LatticeTerm from_clauses(std::vector<MeetTerm> clauses) const;

  LatticeTerm meet(const LatticeTerm& a, const LatticeTerm& b) const;
  LatticeTerm join(const LatticeTerm& a, const LatticeTerm& b) const;
  // Empty lists give top and bottom respectively.
  LatticeTerm meet(const std::vector<LatticeTerm>& terms) const;
  LatticeTerm join(const std::vector<LatticeTerm>& terms) const;

  // M <= N iff every generator of N lies above some generator of M.
  bool clause_leq(MeetTerm m, MeetTerm n) const;
  bool leq(const LatticeTerm& a, const LatticeTerm& b) const;

  // Largest x with x ^ a <= b. Throws BudgetExceeded beyond
  // max_implication_nodes generators.
  LatticeTerm implies(const LatticeTerm& a, const LatticeTerm& b) const;

  // Some x in `elements` with a ^ x the least and a v x the greatest member
  // of `elements`; nothing if no such x exists or the set has no extremes.
  std::optional<LatticeTerm> complement(const LatticeTerm& a,
                                        const std::vector<LatticeTerm>& elements) const;

  // All elements generated by the nodes under finite meets and joins, in
  // canonical order, optionally with the formal bounds adjoined. Stops once
  // `budget` elements are collected and flags the result as truncated.
  Enumeration enumerate_elements(std::size_t budget = default_budget,
                                 bool adjoin_bounds = true) const;

  // Covering pairs (lower, upper) among the given elements.
  std::vector<std::pair<LatticeTerm, LatticeTerm>> hasse_edges(
      const std::vector<LatticeTerm>& elements) const;

  // "⊤", "⊥", "X0", "X0 ∧ X1", "(X0 ∧ X1) ∨ X2".
  std::string to_string(const LatticeTerm& t) const;

  // Parses node ids combined with "&" (meet), "|" (join), parentheses, and
  // the constants "top" / "bottom" (or ⊤ / ⊥, ∧ / ∨). Meet binds tighter.
  LatticeTerm parse(const std::string& text) const;

  // The meet-term minimal elements of an arbitrary generator set.
  MeetTerm minimize(MeetTerm m) const;

 private:
  std::vector<MeetTerm> normalize(std::vector<MeetTerm> clauses) const;
  std::uint64_t up_closure(MeetTerm m) const;

  NodePoset poset_;
};

}  // namespace persilat
