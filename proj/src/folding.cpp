#include "stallings/folding.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace stallings {

namespace {

class DisjointSet {
 public:
  DisjointSet(std::size_t n, FoldStats* stats) : parent_(n), rank_(n, 0), min_(n), stats_(stats) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = min_[i] = static_cast<StateId>(i);
  }

  StateId find(StateId x) {
    if (stats_) ++stats_->finds;
    StateId root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      StateId next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Returns the surviving root (union by rank); tracks the least member.
  StateId unite(StateId x, StateId y) {
    if (stats_) ++stats_->unions;
    StateId rx = find(x), ry = find(y);
    if (rx == ry) return rx;
    if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
    if (rank_[rx] == rank_[ry]) ++rank_[rx];
    parent_[ry] = rx;
    min_[rx] = std::min(min_[rx], min_[ry]);
    return rx;
  }

  StateId least_member(StateId root) const { return min_[root]; }

 private:
  std::vector<StateId> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<StateId> min_;
  FoldStats* stats_;
};

// Shared quotient-and-fold engine. Seeds the union-find with `seed_pairs`,
// then drives folding to completion via per-class (letter -> target) slots.
Automaton fold_with_seeds(const Automaton& a,
                          const std::vector<std::pair<StateId, StateId>>& seed_pairs,
                          FoldStats* stats) {
  if (!a.is_involutive()) throw std::invalid_argument("fold requires an involutive automaton");
  for (const auto& [p, q] : seed_pairs) {
    if (p >= a.num_states() || q >= a.num_states()) {
      throw std::invalid_argument("identify: state index out of range");
    }
  }
  DisjointSet uf(a.num_states(), stats);
  std::vector<std::unordered_map<Letter, StateId>> slots(a.num_states());
  std::deque<std::pair<StateId, StateId>> merges(seed_pairs.begin(), seed_pairs.end());

  // Insert an edge into its (current) source class; a clash schedules a merge.
  auto insert = [&](StateId root, Letter lab, StateId dst) {
    auto [it, inserted] = slots[root].try_emplace(lab, dst);
    if (!inserted) {
      StateId r1 = uf.find(it->second);
      StateId r2 = uf.find(dst);
      if (r1 != r2) merges.emplace_back(r1, r2);
    }
  };

  for (const Edge& e : a.edges()) insert(uf.find(e.src), e.label, e.dst);

  while (!merges.empty()) {
    auto [x, y] = merges.front();
    merges.pop_front();
    StateId rx = uf.find(x), ry = uf.find(y);
    if (rx == ry) continue;
    StateId winner = uf.unite(rx, ry);
    StateId loser = winner == rx ? ry : rx;
    if (slots[loser].size() > slots[winner].size()) std::swap(slots[loser], slots[winner]);
    for (const auto& [lab, dst] : slots[loser]) insert(winner, lab, dst);
    slots[loser].clear();
  }

  // Renumber classes by least original member.
  std::vector<StateId> roots;
  roots.reserve(a.num_states());
  std::vector<StateId> root_of(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) {
    root_of[q] = uf.find(q);
    if (root_of[q] == q) roots.push_back(q);
  }
  std::sort(roots.begin(), roots.end(),
            [&](StateId x, StateId y) { return uf.least_member(x) < uf.least_member(y); });
  std::vector<StateId> number(a.num_states(), 0);
  for (std::size_t i = 0; i < roots.size(); ++i) number[roots[i]] = static_cast<StateId>(i);

  std::vector<StateId> initials, terminals;
  for (StateId q : a.initials()) initials.push_back(number[root_of[q]]);
  for (StateId q : a.terminals()) terminals.push_back(number[root_of[q]]);
  std::vector<Edge> edges;
  for (const Edge& e : a.edges()) {
    edges.push_back({number[root_of[e.src]], e.label, number[root_of[e.dst]]});
  }
  return Automaton::from_parts(a.alphabet(), roots.size(), std::move(initials),
                               std::move(terminals), std::move(edges));
}

}  // namespace

Automaton fold(const Automaton& a, FoldStats* stats) { return fold_with_seeds(a, {}, stats); }

Automaton identify(const Automaton& a, const std::vector<std::pair<StateId, StateId>>& pairs,
                   FoldStats* stats) {
  return fold_with_seeds(a, pairs, stats);
}

Automaton merge_terminals(const Automaton& a) {
  if (a.terminals().empty()) throw std::invalid_argument("merge_terminals: no terminal states");
  if (a.initials().size() != 1) throw std::invalid_argument("merge_terminals: needs one initial");
  StateId q0 = a.initials()[0];
  std::vector<StateId> number(a.num_states(), 0);
  std::vector<bool> merged(a.num_states(), false);
  merged[q0] = true;
  for (StateId t : a.terminals()) merged[t] = true;
  // the merged class takes the least involved index
  StateId cls = q0;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (merged[q]) {
      cls = q;
      break;
    }
  }
  StateId next = 0;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (q == cls || !merged[q]) number[q] = next++;
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (merged[q]) number[q] = number[cls];
  }
  std::vector<Edge> edges;
  for (const Edge& e : a.edges()) edges.push_back({number[e.src], e.label, number[e.dst]});
  return Automaton::from_parts(a.alphabet(), next, {number[q0]}, {number[q0]},
                               std::move(edges));
}

}  // namespace stallings
