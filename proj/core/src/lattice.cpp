#include "persilat/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>

#include "persilat/diagram.hpp"
#include "persilat/error.hpp"

namespace persilat {

namespace {

std::vector<std::size_t> bits_of(std::uint64_t m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

// Lexicographic order on the sorted index lists of two generator sets.
bool clause_less(MeetTerm a, MeetTerm b) {
  while (a && b) {
    const int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

int term_class(const LatticeTerm& t) { return t.is_bottom() ? 0 : t.is_top() ? 2 : 1; }

}  // namespace

NodePoset::NodePoset(std::vector<std::string> ids, const std::vector<std::vector<bool>>& leq)
    : ids_(std::move(ids)) {
  const std::size_t n = ids_.size();
  if (n > max_nodes)
    throw BudgetExceeded("the formal lattice supports at most 64 nodes, got " + std::to_string(n));
  if (leq.size() != n) throw ShapeError("order relation size does not match node count");
  up_.assign(n, 0);
  down_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) throw ShapeError("order relation must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      up_[i] |= std::uint64_t{1} << j;
      down_[j] |= std::uint64_t{1} << i;
    }
  }
}

NodePoset NodePoset::from_diagram(const Diagram& d) {
  const std::size_t n = d.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = d.reachable(i, j);
  std::vector<std::string> ids;
  for (const auto& node : d.nodes()) ids.push_back(node.id);
  return NodePoset(std::move(ids), leq);
}

std::size_t NodePoset::index(const std::string& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it != ids_.end() && *it == id) return static_cast<std::size_t>(it - ids_.begin());
  auto lin = std::find(ids_.begin(), ids_.end(), id);
  if (lin == ids_.end()) throw UnknownNodeError(id);
  return static_cast<std::size_t>(lin - ids_.begin());
}

bool operator<(const LatticeTerm& a, const LatticeTerm& b) {
  const int ca = term_class(a), cb = term_class(b);
  if (ca != cb) return ca < cb;
  return std::lexicographical_compare(a.clauses_.begin(), a.clauses_.end(), b.clauses_.begin(),
                                      b.clauses_.end(), clause_less);
}

FreeLattice::FreeLattice(NodePoset poset) : poset_(std::move(poset)) {}

LatticeTerm FreeLattice::top() const { return LatticeTerm({0}); }
LatticeTerm FreeLattice::bottom() const { return LatticeTerm(); }

LatticeTerm FreeLattice::generator(std::size_t i) const {
  if (i >= poset_.size()) throw Error(ErrorCode::index, "generator index out of range");
  return LatticeTerm({std::uint64_t{1} << i});
}

std::uint64_t FreeLattice::up_closure(MeetTerm m) const {
  std::uint64_t u = 0;
  for (auto i : bits_of(m)) u |= poset_.up(i);
  return u;
}

MeetTerm FreeLattice::minimize(MeetTerm m) const {
  MeetTerm out = m;
  for (auto i : bits_of(m)) {
    // Drop i when some other member lies strictly below it.
    if (poset_.down(i) & m & ~(std::uint64_t{1} << i)) out &= ~(std::uint64_t{1} << i);
  }
  return out;
}

bool FreeLattice::clause_leq(MeetTerm m, MeetTerm n) const {
  const std::uint64_t um = up_closure(m);
  return (up_closure(n) & ~um) == 0;
}

std::vector<MeetTerm> FreeLattice::normalize(std::vector<MeetTerm> clauses) const {
  for (auto& c : clauses) c = minimize(c);
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  std::vector<MeetTerm> kept;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < clauses.size() && !dominated; ++j)
      dominated = j != i && clause_leq(clauses[i], clauses[j]);
    if (!dominated) kept.push_back(clauses[i]);
  }
  std::sort(kept.begin(), kept.end(), clause_less);
  return kept;
}

LatticeTerm FreeLattice::from_clauses(std::vector<MeetTerm> clauses) const {
  const std::uint64_t valid =
      poset_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << poset_.size()) - 1;
  for (auto c : clauses)
    if (c & ~valid) throw Error(ErrorCode::index, "clause mentions a generator outside the poset");
  return LatticeTerm(normalize(std::move(clauses)));
}

LatticeTerm FreeLattice::meet(const LatticeTerm& a, const LatticeTerm& b) const {
  std::vector<MeetTerm> out;
  out.reserve(a.clauses().size() * b.clauses().size());
  for (auto x : a.clauses())
    for (auto y : b.clauses()) out.push_back(x | y);
  return LatticeTerm(normalize(std::move(out)));
}

LatticeTerm FreeLattice::join(const LatticeTerm& a, const LatticeTerm& b) const {
  std::vector<MeetTerm> out = a.clauses();
  out.insert(out.end(), b.clauses().begin(), b.clauses().end());
  return LatticeTerm(normalize(std::move(out)));
}

LatticeTerm FreeLattice::meet(const std::vector<LatticeTerm>& terms) const {
  LatticeTerm acc = top();
  for (const auto& t : terms) acc = meet(acc, t);
  return acc;
}

LatticeTerm FreeLattice::join(const std::vector<LatticeTerm>& terms) const {
  LatticeTerm acc = bottom();
  for (const auto& t : terms) acc = join(acc, t);
  return acc;
}

bool FreeLattice::leq(const LatticeTerm& a, const LatticeTerm& b) const {
  for (auto m : a.clauses()) {
    bool covered = false;
    for (auto n : b.clauses()) {
      if (clause_leq(m, n)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

namespace {

// Calls visit(mask) for every antichain of the poset, the empty one first.
// Stops early when visit returns false.
void for_each_antichain(const NodePoset& p, const std::function<bool(std::uint64_t)>& visit) {
  const std::size_t n = p.size();
  std::function<bool(std::size_t, std::uint64_t, std::uint64_t)> rec =
      [&](std::size_t next, std::uint64_t chosen, std::uint64_t blocked) {
        if (!visit(chosen)) return false;
        for (std::size_t i = next; i < n; ++i) {
          if ((blocked >> i) & 1U) continue;
          if (!rec(i + 1, chosen | (std::uint64_t{1} << i), blocked | p.up(i) | p.down(i)))
            return false;
        }
        return true;
      };
  rec(0, 0, 0);
}

}  // namespace

LatticeTerm FreeLattice::implies(const LatticeTerm& a, const LatticeTerm& b) const {
  if (poset_.size() > max_implication_nodes) {
    throw BudgetExceeded("implication is limited to " + std::to_string(max_implication_nodes) +
                         " generators, diagram has " + std::to_string(poset_.size()));
  }
  std::vector<MeetTerm> found;
  for_each_antichain(poset_, [&](std::uint64_t x) {
    bool ok = true;
    for (auto c : a.clauses()) {
      const MeetTerm m = minimize(x | c);
      bool covered = false;
      for (auto n : b.clauses())
        if (clause_leq(m, n)) {
          covered = true;
          break;
        }
      if (!covered) {
        ok = false;
        break;
      }
    }
    if (ok) found.push_back(x);
    return true;
  });
  return LatticeTerm(normalize(std::move(found)));
}

std::optional<LatticeTerm> FreeLattice::complement(const LatticeTerm& a,
                                                   const std::vector<LatticeTerm>& elements) const {
  if (elements.empty()) return std::nullopt;
  const LatticeTerm* least = nullptr;
  const LatticeTerm* greatest = nullptr;
  for (const auto& e : elements) {
    if (!least || leq(e, *least)) least = &e;
    if (!greatest || leq(*greatest, e)) greatest = &e;
  }
  for (const auto& e : elements) {
    if (!leq(*least, e) || !leq(e, *greatest)) return std::nullopt;
  }
  for (const auto& x : elements) {
    if (meet(a, x) == *least && join(a, x) == *greatest) return x;
  }
  return std::nullopt;
}

Enumeration FreeLattice::enumerate_elements(std::size_t budget, bool adjoin_bounds) const {
  Enumeration result;
  if (poset_.size() == 0 || budget == 0) {
    result.truncated = poset_.size() != 0;
    return result;
  }
  const std::size_t reserve = adjoin_bounds ? 2 : 0;
  const std::size_t room = budget > reserve ? budget - reserve : 0;

  // Join-irreducibles: nonempty antichains of generators.
  std::vector<MeetTerm> irreducibles;
  bool truncated = false;
  for_each_antichain(poset_, [&](std::uint64_t x) {
    if (x == 0) return true;
    if (irreducibles.size() >= std::max<std::size_t>(room, 1)) {
      truncated = true;
      return false;
    }
    irreducibles.push_back(x);
    return true;
  });

  // Every nonempty antichain of irreducibles is a distinct element.
  std::vector<MeetTerm> chosen;
  std::function<bool(std::size_t)> rec = [&](std::size_t next) {
    if (!chosen.empty()) {
      if (result.elements.size() >= room) {
        truncated = true;
        return false;
      }
      std::vector<MeetTerm> clauses = chosen;
      std::sort(clauses.begin(), clauses.end(), clause_less);
      result.elements.push_back(LatticeTerm(std::move(clauses)));
    }
    for (std::size_t i = next; i < irreducibles.size(); ++i) {
      const MeetTerm c = irreducibles[i];
      bool free = true;
      for (auto d : chosen)
        if (clause_leq(c, d) || clause_leq(d, c)) {
          free = false;
          break;
        }
      if (!free) continue;
      chosen.push_back(c);
      const bool go_on = rec(i + 1);
      chosen.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  rec(0);

  if (adjoin_bounds && budget >= 2) {
    result.elements.push_back(bottom());
    result.elements.push_back(top());
  }
  std::sort(result.elements.begin(), result.elements.end());
  result.truncated = truncated;
  return result;
}

std::vector<std::pair<LatticeTerm, LatticeTerm>> FreeLattice::hasse_edges(
    const std::vector<LatticeTerm>& elements) const {
  const std::size_t n = elements.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  std::vector<std::size_t> height(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      le[i][j] = leq(elements[i], elements[j]);
      if (le[i][j]) ++height[j];
    }
  std::vector<std::pair<LatticeTerm, LatticeTerm>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> above;
    for (std::size_t b = 0; b < n; ++b)
      if (le[a][b] && !le[b][a]) above.push_back(b);
    std::sort(above.begin(), above.end(),
              [&](std::size_t x, std::size_t y) { return height[x] < height[y]; });
    std::vector<std::size_t> covers;
    for (auto b : above) {
      const bool blocked =
          std::any_of(covers.begin(), covers.end(), [&](std::size_t c) { return le[c][b]; });
      if (!blocked) covers.push_back(b);
    }
    std::sort(covers.begin(), covers.end(),
              [&](std::size_t x, std::size_t y) { return elements[x] < elements[y]; });
    for (auto b : covers) edges.emplace_back(elements[a], elements[b]);
  }
  return edges;
}

std::string FreeLattice::to_string(const LatticeTerm& t) const {
  if (t.is_bottom()) return "⊥";
  if (t.is_top()) return "⊤";
  std::string out;
  const bool several = t.clauses().size() > 1;
  for (std::size_t k = 0; k < t.clauses().size(); ++k) {
    if (k) out += " ∨ ";
    const auto gens = bits_of(t.clauses()[k]);
    const bool wrap = several && gens.size() > 1;
    if (wrap) out += '(';
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (g) out += " ∧ ";
      out += poset_.id(gens[g]);
    }
    if (wrap) out += ')';
  }
  return out;
}

namespace {

class TermParser {
 public:
  TermParser(const FreeLattice& lattice, const std::string& text) : l_(lattice), s_(text) {}

  LatticeTerm run() {
    LatticeTerm t = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + s_.substr(i_) + "'");
    return t;
  }

 private:
  static constexpr std::string_view meet_sym = "∧", join_sym = "∨", top_sym = "⊤",
                                    bottom_sym = "⊥";

  LatticeTerm expr() {
    LatticeTerm t = conj();
    while (eat("|") || eat(join_sym)) t = l_.join(t, conj());
    return t;
  }

  LatticeTerm conj() {
    LatticeTerm t = atom();
    while (eat("&") || eat(meet_sym)) t = l_.meet(t, atom());
    return t;
  }

  LatticeTerm atom() {
    if (eat("(")) {
      LatticeTerm t = expr();
      if (!eat(")")) fail("missing ')'");
      return t;
    }
    if (eat(top_sym)) return l_.top();
    if (eat(bottom_sym)) return l_.bottom();
    skip();
    std::size_t j = i_;
    while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) &&
           std::string_view("&|()").find(s_[j]) == std::string_view::npos &&
           s_.compare(j, meet_sym.size(), meet_sym) != 0 &&
           s_.compare(j, join_sym.size(), join_sym) != 0)
      ++j;
    if (j == i_) fail("expected a node id");
    std::string name = s_.substr(i_, j - i_);
    i_ = j;
    const auto& ids = l_.poset().ids();
    if (std::find(ids.begin(), ids.end(), name) == ids.end()) {
      if (name == "top") return l_.top();
      if (name == "bottom") return l_.bottom();
    }
    return l_.generator(name);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) != 0) return false;
    i_ += tok.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::parse, "term '" + s_ + "': " + why);
  }

  const FreeLattice& l_;
  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace

LatticeTerm FreeLattice::parse(const std::string& text) const { return TermParser(*this, text).run(); }

}  // namespace persilat
