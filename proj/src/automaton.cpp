#include "stallings/automaton.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace stallings {

namespace {

void require_alphabet(const Automaton& a) {
  if (!a.alphabet()) throw std::invalid_argument("automaton has no alphabet");
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  require_alphabet(a);
  require_alphabet(b);
  if (*a.alphabet() != *b.alphabet()) throw std::invalid_argument("alphabet mismatch");
}

std::vector<StateId> sorted_unique(std::vector<StateId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Edge> sorted_unique(std::vector<Edge> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Adjacency by source state; silent edges are kept with label kSilent.
std::vector<std::vector<std::pair<Letter, StateId>>> adjacency(const Automaton& a) {
  std::vector<std::vector<std::pair<Letter, StateId>>> adj(a.num_states());
  for (const Edge& e : a.edges()) adj[e.src].emplace_back(e.label, e.dst);
  return adj;
}

std::vector<std::vector<StateId>> silent_adjacency(const Automaton& a) {
  std::vector<std::vector<StateId>> adj(a.num_states());
  for (const Edge& e : a.edges()) {
    if (e.label == kSilent) adj[e.src].push_back(e.dst);
  }
  return adj;
}

void close_over_silent(const std::vector<std::vector<StateId>>& silent, std::vector<bool>& set) {
  std::deque<StateId> queue;
  for (StateId q = 0; q < set.size(); ++q) {
    if (set[q]) queue.push_back(q);
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (StateId r : silent[q]) {
      if (!set[r]) {
        set[r] = true;
        queue.push_back(r);
      }
    }
  }
}

std::vector<bool> state_set(std::size_t n, const std::vector<StateId>& states) {
  std::vector<bool> set(n, false);
  for (StateId q : states) set[q] = true;
  return set;
}

}  // namespace

Automaton Automaton::empty(AlphabetPtr alphabet) {
  return from_parts(std::move(alphabet), 0, {}, {}, {});
}

Automaton Automaton::epsilon(AlphabetPtr alphabet) {
  return from_parts(std::move(alphabet), 1, {0}, {0}, {});
}

Automaton Automaton::single_word(AlphabetPtr alphabet, const Word& w) {
  std::vector<Edge> edges;
  edges.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    edges.push_back({static_cast<StateId>(i), w[i], static_cast<StateId>(i + 1)});
  }
  StateId last = static_cast<StateId>(w.size());
  return from_parts(std::move(alphabet), w.size() + 1, {0}, {last}, std::move(edges));
}

Automaton Automaton::all_words(AlphabetPtr alphabet) {
  std::vector<Edge> edges;
  for (Letter a = 0; a < alphabet->letter_count(); ++a) edges.push_back({0, a, 0});
  return from_parts(std::move(alphabet), 1, {0}, {0}, std::move(edges));
}

Automaton Automaton::from_parts(AlphabetPtr alphabet, std::size_t num_states,
                                std::vector<StateId> initials, std::vector<StateId> terminals,
                                std::vector<Edge> edges) {
  if (!alphabet) throw std::invalid_argument("automaton requires an alphabet");
  Automaton a;
  a.alphabet_ = std::move(alphabet);
  a.num_states_ = num_states;
  a.initials_ = sorted_unique(std::move(initials));
  a.terminals_ = sorted_unique(std::move(terminals));
  a.edges_ = sorted_unique(std::move(edges));
  for (StateId q : a.initials_) {
    if (q >= num_states) throw std::invalid_argument("initial state out of range");
  }
  for (StateId q : a.terminals_) {
    if (q >= num_states) throw std::invalid_argument("terminal state out of range");
  }
  for (const Edge& e : a.edges_) {
    if (e.src >= num_states || e.dst >= num_states) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.label != kSilent && !a.alphabet_->contains(e.label)) {
      throw std::invalid_argument("edge label outside alphabet");
    }
  }
  return a;
}

bool Automaton::is_terminal(StateId q) const {
  return std::binary_search(terminals_.begin(), terminals_.end(), q);
}

bool Automaton::has_silent_edges() const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.label == kSilent; });
}

bool Automaton::is_deterministic() const {
  if (initials_.size() > 1) return false;
  if (has_silent_edges()) return false;
  std::set<std::pair<StateId, Letter>> seen;
  for (const Edge& e : edges_) {
    if (!seen.insert({e.src, e.label}).second) return false;
  }
  return true;
}

bool Automaton::is_involutive() const {
  std::set<Edge> set(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) {
    if (e.label == kSilent) return false;
    if (!set.count({e.dst, inverse(e.label), e.src})) return false;
  }
  return true;
}

bool Automaton::is_trim() const {
  Automaton t = trim(*this);
  return t.num_states() == num_states_ && t.edges().size() == edges_.size();
}

bool Automaton::is_inverse() const {
  return terminals_.size() == 1 && is_deterministic() && is_involutive() && is_trim();
}

bool Automaton::has_basepoint() const {
  return is_inverse() && initials_.size() == 1 && initials_ == terminals_;
}

bool Automaton::accepts(const Word& w) const {
  if (num_states_ == 0 || initials_.empty()) return false;
  auto silent = silent_adjacency(*this);
  std::vector<bool> current = state_set(num_states_, initials_);
  close_over_silent(silent, current);
  for (Letter a : w) {
    std::vector<bool> next(num_states_, false);
    for (const Edge& e : edges_) {
      if (e.label == a && current[e.src]) next[e.dst] = true;
    }
    close_over_silent(silent, next);
    current = std::move(next);
  }
  for (StateId t : terminals_) {
    if (current[t]) return true;
  }
  return false;
}

bool Automaton::accepts_empty_word() const { return accepts({}); }

Automaton involutive_closure(const Automaton& a) {
  require_alphabet(a);
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : a.edges()) {
    if (e.label == kSilent) throw std::invalid_argument("involutive_closure: silent edge");
    edges.push_back({e.dst, inverse(e.label), e.src});
  }
  return Automaton::from_parts(a.alphabet(), a.num_states(), a.initials(), a.terminals(),
                               std::move(edges));
}

Automaton trim(const Automaton& a) {
  if (a.num_states() == 0) return a;
  std::vector<bool> forward(a.num_states(), false);
  for (StateId q : a.initials()) forward[q] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : a.edges()) {
      if (forward[e.src] && !forward[e.dst]) {
        forward[e.dst] = true;
        changed = true;
      }
    }
  }
  std::vector<bool> backward(a.num_states(), false);
  for (StateId q : a.terminals()) backward[q] = true;
  changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : a.edges()) {
      if (backward[e.dst] && !backward[e.src]) {
        backward[e.src] = true;
        changed = true;
      }
    }
  }
  std::vector<StateId> remap(a.num_states(), 0);
  std::size_t kept = 0;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (forward[q] && backward[q]) remap[q] = static_cast<StateId>(kept++);
  }
  std::vector<StateId> initials, terminals;
  for (StateId q : a.initials()) {
    if (forward[q] && backward[q]) initials.push_back(remap[q]);
  }
  for (StateId q : a.terminals()) {
    if (forward[q] && backward[q]) terminals.push_back(remap[q]);
  }
  std::vector<Edge> edges;
  for (const Edge& e : a.edges()) {
    if (forward[e.src] && backward[e.dst] && forward[e.dst] && backward[e.src]) {
      edges.push_back({remap[e.src], e.label, remap[e.dst]});
    }
  }
  return Automaton::from_parts(a.alphabet(), kept, std::move(initials), std::move(terminals),
                               std::move(edges));
}

Automaton restrict(const Automaton& a, const Automaton& l) {
  require_same_alphabet(a, l);
  Automaton lf = eliminate_silent(l);
  if (a.num_states() == 0 || lf.num_states() == 0) return Automaton::empty(a.alphabet());

  // Product states (p, p'); a's silent edges advance the first component only.
  auto key = [&](StateId p, StateId q) { return static_cast<std::uint64_t>(p) * lf.num_states() + q; };
  std::size_t total = a.num_states() * lf.num_states();
  std::vector<bool> forward(total, false), backward(total, false);

  std::vector<std::vector<std::pair<Letter, StateId>>> ladj = adjacency(lf);

  // product edges: (pair edge, index of originating a-edge)
  struct PEdge {
    std::uint64_t src, dst;
    std::size_t a_edge;
  };
  std::vector<PEdge> pedges;
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    const Edge& e = a.edges()[i];
    for (StateId q = 0; q < lf.num_states(); ++q) {
      if (e.label == kSilent) {
        pedges.push_back({key(e.src, q), key(e.dst, q), i});
      } else {
        for (const auto& [lab, r] : ladj[q]) {
          if (lab == e.label) pedges.push_back({key(e.src, q), key(e.dst, r), i});
        }
      }
    }
  }
  for (StateId p : a.initials()) {
    for (StateId q : lf.initials()) forward[key(p, q)] = true;
  }
  for (StateId p : a.terminals()) {
    for (StateId q : lf.terminals()) backward[key(p, q)] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const PEdge& e : pedges) {
      if (forward[e.src] && !forward[e.dst]) {
        forward[e.dst] = true;
        changed = true;
      }
      if (backward[e.dst] && !backward[e.src]) {
        backward[e.src] = true;
        changed = true;
      }
    }
  }

  std::vector<bool> keep_state(a.num_states(), false);
  std::vector<bool> keep_edge(a.edges().size(), false);
  for (StateId p = 0; p < a.num_states(); ++p) {
    for (StateId q = 0; q < lf.num_states(); ++q) {
      if (forward[key(p, q)] && backward[key(p, q)]) keep_state[p] = true;
    }
  }
  for (const PEdge& e : pedges) {
    if (forward[e.src] && backward[e.dst]) keep_edge[e.a_edge] = true;
  }

  std::vector<StateId> remap(a.num_states(), 0);
  std::size_t kept = 0;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (keep_state[q]) remap[q] = static_cast<StateId>(kept++);
  }
  std::vector<StateId> initials, terminals;
  for (StateId q : a.initials()) {
    if (keep_state[q]) initials.push_back(remap[q]);
  }
  for (StateId q : a.terminals()) {
    if (keep_state[q]) terminals.push_back(remap[q]);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    if (keep_edge[i]) {
      const Edge& e = a.edges()[i];
      edges.push_back({remap[e.src], e.label, remap[e.dst]});
    }
  }
  return Automaton::from_parts(a.alphabet(), kept, std::move(initials), std::move(terminals),
                               std::move(edges));
}

Automaton eliminate_silent(const Automaton& a) {
  if (!a.has_silent_edges()) return a;
  auto silent = silent_adjacency(a);
  auto adj = adjacency(a);
  std::vector<Edge> edges;
  std::vector<StateId> terminals = a.terminals();
  std::vector<bool> term = state_set(a.num_states(), a.terminals());
  for (StateId q = 0; q < a.num_states(); ++q) {
    std::vector<bool> closure(a.num_states(), false);
    closure[q] = true;
    close_over_silent(silent, closure);
    for (StateId r = 0; r < a.num_states(); ++r) {
      if (!closure[r]) continue;
      if (term[r] && r != q) terminals.push_back(q);
      for (const auto& [lab, dst] : adj[r]) {
        if (lab != kSilent) edges.push_back({q, lab, dst});
      }
    }
  }
  return trim(Automaton::from_parts(a.alphabet(), a.num_states(), a.initials(),
                                    std::move(terminals), std::move(edges)));
}

Automaton determinize(const Automaton& a) {
  require_alphabet(a);
  if (a.num_states() == 0 || a.initials().empty()) return Automaton::empty(a.alphabet());
  auto silent = silent_adjacency(a);
  auto closure_of = [&](std::vector<bool> set) {
    close_over_silent(silent, set);
    return set;
  };

  // letter -> (src -> dsts)
  std::vector<std::vector<std::pair<StateId, StateId>>> by_letter(a.alphabet()->letter_count());
  for (const Edge& e : a.edges()) {
    if (e.label != kSilent) by_letter[e.label].emplace_back(e.src, e.dst);
  }

  std::map<std::vector<bool>, StateId> index;
  std::vector<std::vector<bool>> subsets;
  std::deque<StateId> queue;
  auto intern = [&](std::vector<bool> set) -> std::optional<StateId> {
    if (std::none_of(set.begin(), set.end(), [](bool b) { return b; })) return std::nullopt;
    auto [it, inserted] = index.try_emplace(set, static_cast<StateId>(subsets.size()));
    if (inserted) {
      subsets.push_back(std::move(set));
      queue.push_back(it->second);
    }
    return it->second;
  };

  std::vector<Edge> edges;
  auto start = intern(closure_of(state_set(a.num_states(), a.initials())));
  while (!queue.empty()) {
    StateId id = queue.front();
    queue.pop_front();
    std::vector<bool> current = subsets[id];
    for (Letter x = 0; x < a.alphabet()->letter_count(); ++x) {
      std::vector<bool> next(a.num_states(), false);
      bool any = false;
      for (const auto& [src, dst] : by_letter[x]) {
        if (current[src]) {
          next[dst] = true;
          any = true;
        }
      }
      if (!any) continue;
      auto target = intern(closure_of(std::move(next)));
      if (target) edges.push_back({id, x, *target});
    }
  }
  std::vector<StateId> terminals;
  std::vector<bool> term = state_set(a.num_states(), a.terminals());
  for (StateId id = 0; id < subsets.size(); ++id) {
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (subsets[id][q] && term[q]) {
        terminals.push_back(id);
        break;
      }
    }
  }
  std::vector<StateId> initials;
  if (start) initials.push_back(*start);
  return trim(Automaton::from_parts(a.alphabet(), subsets.size(), std::move(initials),
                                    std::move(terminals), std::move(edges)));
}

Automaton reverse(const Automaton& a) {
  std::vector<Edge> edges;
  edges.reserve(a.edges().size());
  for (const Edge& e : a.edges()) edges.push_back({e.dst, e.label, e.src});
  return Automaton::from_parts(a.alphabet(), a.num_states(), a.terminals(), a.initials(),
                               std::move(edges));
}

Automaton inverse_language(const Automaton& a) {
  std::vector<Edge> edges;
  edges.reserve(a.edges().size());
  for (const Edge& e : a.edges()) {
    edges.push_back({e.dst, e.label == kSilent ? kSilent : inverse(e.label), e.src});
  }
  return Automaton::from_parts(a.alphabet(), a.num_states(), a.terminals(), a.initials(),
                               std::move(edges));
}

namespace {

// Canonical BFS renumbering of a deterministic automaton; exploration by
// ascending letter makes equal-language minimal DFAs bit-identical.
Automaton canonical_numbering(const Automaton& a) {
  if (a.num_states() == 0 || a.initials().empty()) return a;
  auto adj = adjacency(a);
  for (auto& out : adj) std::sort(out.begin(), out.end());
  std::vector<StateId> order(a.num_states(), kSilent);
  std::deque<StateId> queue;
  StateId next = 0;
  order[a.initials()[0]] = next++;
  queue.push_back(a.initials()[0]);
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (const auto& [lab, dst] : adj[q]) {
      if (order[dst] == kSilent) {
        order[dst] = next++;
        queue.push_back(dst);
      }
    }
  }
  std::vector<StateId> initials, terminals;
  std::vector<Edge> edges;
  for (StateId q : a.initials()) initials.push_back(order[q]);
  for (StateId q : a.terminals()) {
    if (order[q] != kSilent) terminals.push_back(order[q]);
  }
  for (const Edge& e : a.edges()) {
    if (order[e.src] != kSilent && order[e.dst] != kSilent) {
      edges.push_back({order[e.src], e.label, order[e.dst]});
    }
  }
  return Automaton::from_parts(a.alphabet(), next, std::move(initials), std::move(terminals),
                               std::move(edges));
}

}  // namespace

Automaton minimize(const Automaton& a) {
  Automaton r = determinize(reverse(determinize(reverse(trim(a)))));
  return canonical_numbering(r);
}

Automaton complement(const Automaton& a) {
  require_alphabet(a);
  Automaton d = determinize(a);
  std::size_t n = d.num_states();
  std::vector<Edge> edges = d.edges();
  std::vector<StateId> initials = d.initials();
  // complete with a sink
  StateId sink = static_cast<StateId>(n);
  std::set<std::pair<StateId, Letter>> present;
  for (const Edge& e : d.edges()) present.insert({e.src, e.label});
  bool used_sink = false;
  for (StateId q = 0; q < n; ++q) {
    for (Letter x = 0; x < a.alphabet()->letter_count(); ++x) {
      if (!present.count({q, x})) {
        edges.push_back({q, x, sink});
        used_sink = true;
      }
    }
  }
  std::size_t total = n;
  if (used_sink || n == 0) {
    total = n + 1;
    for (Letter x = 0; x < a.alphabet()->letter_count(); ++x) edges.push_back({sink, x, sink});
    if (initials.empty()) initials.push_back(sink);
  }
  std::vector<StateId> terminals;
  for (StateId q = 0; q < total; ++q) {
    if (q >= n || !d.is_terminal(q)) terminals.push_back(q);
  }
  return trim(Automaton::from_parts(a.alphabet(), total, std::move(initials),
                                    std::move(terminals), std::move(edges)));
}

Automaton lang_union(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  StateId offset = static_cast<StateId>(a.num_states());
  std::vector<StateId> initials = a.initials();
  std::vector<StateId> terminals = a.terminals();
  std::vector<Edge> edges = a.edges();
  for (StateId q : b.initials()) initials.push_back(q + offset);
  for (StateId q : b.terminals()) terminals.push_back(q + offset);
  for (const Edge& e : b.edges()) edges.push_back({e.src + offset, e.label, e.dst + offset});
  return Automaton::from_parts(a.alphabet(), a.num_states() + b.num_states(), std::move(initials),
                               std::move(terminals), std::move(edges));
}

Automaton lang_concat(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  if (a.num_states() == 0 || b.num_states() == 0) return Automaton::empty(a.alphabet());
  StateId offset = static_cast<StateId>(a.num_states());
  std::vector<StateId> initials = a.initials();
  std::vector<StateId> terminals;
  std::vector<Edge> edges = a.edges();
  for (StateId q : b.terminals()) terminals.push_back(q + offset);
  for (const Edge& e : b.edges()) edges.push_back({e.src + offset, e.label, e.dst + offset});
  for (StateId t : a.terminals()) {
    for (StateId i : b.initials()) edges.push_back({t, kSilent, i + offset});
  }
  return Automaton::from_parts(a.alphabet(), a.num_states() + b.num_states(), std::move(initials),
                               std::move(terminals), std::move(edges));
}

Automaton lang_star(const Automaton& a) {
  require_alphabet(a);
  StateId hub = static_cast<StateId>(a.num_states());
  std::vector<Edge> edges = a.edges();
  for (StateId q : a.initials()) edges.push_back({hub, kSilent, q});
  for (StateId q : a.terminals()) edges.push_back({q, kSilent, hub});
  return Automaton::from_parts(a.alphabet(), a.num_states() + 1, {hub}, {hub}, std::move(edges));
}

Automaton lang_intersection(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  Automaton af = eliminate_silent(a);
  Automaton bf = eliminate_silent(b);
  if (af.num_states() == 0 || bf.num_states() == 0) return Automaton::empty(a.alphabet());
  auto key = [&](StateId p, StateId q) {
    return static_cast<std::uint64_t>(p) * bf.num_states() + q;
  };
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::deque<StateId> queue;
  auto intern = [&](StateId p, StateId q) {
    auto [it, inserted] = index.try_emplace(key(p, q), static_cast<StateId>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(p, q);
      queue.push_back(it->second);
    }
    return it->second;
  };
  std::vector<StateId> initials;
  for (StateId p : af.initials()) {
    for (StateId q : bf.initials()) initials.push_back(intern(p, q));
  }
  auto aadj = adjacency(af);
  auto badj = adjacency(bf);
  std::vector<Edge> edges;
  while (!queue.empty()) {
    StateId id = queue.front();
    queue.pop_front();
    auto [p, q] = pairs[id];
    for (const auto& [la, pa] : aadj[p]) {
      for (const auto& [lb, qb] : badj[q]) {
        if (la == lb) edges.push_back({id, la, intern(pa, qb)});
      }
    }
  }
  std::vector<StateId> terminals;
  for (StateId id = 0; id < pairs.size(); ++id) {
    if (af.is_terminal(pairs[id].first) && bf.is_terminal(pairs[id].second)) {
      terminals.push_back(id);
    }
  }
  return trim(Automaton::from_parts(a.alphabet(), pairs.size(), std::move(initials),
                                    std::move(terminals), std::move(edges)));
}

Automaton lang_difference(const Automaton& a, const Automaton& b) {
  return lang_intersection(a, complement(b));
}

Automaton prefix_closure(const Automaton& a) {
  Automaton t = trim(eliminate_silent(a));
  if (t.num_states() == 0) return t;
  std::vector<StateId> terminals(t.num_states());
  for (StateId q = 0; q < t.num_states(); ++q) terminals[q] = q;
  return Automaton::from_parts(t.alphabet(), t.num_states(), t.initials(), std::move(terminals),
                               t.edges());
}

bool is_empty_lang(const Automaton& a) {
  return trim(a).num_states() == 0;
}

bool includes(const Automaton& a, const Automaton& b) {
  return is_empty_lang(lang_intersection(a, complement(b)));
}

bool lang_equal(const Automaton& a, const Automaton& b) {
  return includes(a, b) && includes(b, a);
}

std::optional<Morphism> find_morphism(const Automaton& a, const Automaton& b) {
  if (!a.is_inverse() || !b.is_inverse()) {
    throw std::invalid_argument("find_morphism requires inverse automata");
  }
  if (a.initials().empty() || b.initials().empty()) return std::nullopt;
  auto aadj = adjacency(a);
  auto badj = adjacency(b);
  auto step = [&](const std::vector<std::pair<Letter, StateId>>& out, Letter x)
      -> std::optional<StateId> {
    for (const auto& [lab, dst] : out) {
      if (lab == x) return dst;
    }
    return std::nullopt;
  };
  std::vector<StateId> mapping(a.num_states(), kSilent);
  std::deque<StateId> queue;
  mapping[a.initials()[0]] = b.initials()[0];
  queue.push_back(a.initials()[0]);
  while (!queue.empty()) {
    StateId p = queue.front();
    queue.pop_front();
    for (const auto& [lab, dst] : aadj[p]) {
      auto image = step(badj[mapping[p]], lab);
      if (!image) return std::nullopt;  // no morphism, hence L(a) ⊄ L(b)
      if (mapping[dst] == kSilent) {
        mapping[dst] = *image;
        queue.push_back(dst);
      } else if (mapping[dst] != *image) {
        return std::nullopt;
      }
    }
  }
  // terminal condition: the unique terminal must map to b's terminal
  if (mapping[a.terminals()[0]] != b.terminals()[0]) return std::nullopt;
  Morphism m;
  m.mapping = mapping;
  std::set<StateId> image_set(mapping.begin(), mapping.end());
  m.isomorphism = a.num_states() == b.num_states() && image_set.size() == b.num_states() &&
                  a.edges().size() == b.edges().size();
  return m;
}

bool isomorphic(const Automaton& a, const Automaton& b) {
  if (!a.alphabet() || !b.alphabet() || *a.alphabet() != *b.alphabet()) return false;
  if (a.num_states() != b.num_states() || a.edges().size() != b.edges().size()) return false;
  if (a.initials().size() != b.initials().size()) return false;
  if (a.terminals().size() != b.terminals().size()) return false;
  if (!a.is_deterministic() || !b.is_deterministic()) {
    throw std::invalid_argument("isomorphic requires deterministic automata");
  }
  Automaton ca = canonical_numbering(a);
  Automaton cb = canonical_numbering(b);
  return ca.num_states() == cb.num_states() && ca.initials() == cb.initials() &&
         ca.terminals() == cb.terminals() && ca.edges() == cb.edges();
}

std::optional<Word> shortest_accepted_word(const Automaton& a) {
  Automaton f = eliminate_silent(a);
  if (f.num_states() == 0 || f.initials().empty()) return std::nullopt;
  // BFS over subset states with letters in ascending order yields the
  // lexicographically least among the shortest accepted words.
  Automaton d = determinize(f);
  if (d.num_states() == 0) return std::nullopt;
  auto adj = adjacency(d);
  for (auto& out : adj) std::sort(out.begin(), out.end());
  std::vector<bool> visited(d.num_states(), false);
  struct Item {
    StateId state;
    Word word;
  };
  std::deque<Item> queue;
  StateId q0 = d.initials()[0];
  if (d.is_terminal(q0)) return Word{};
  visited[q0] = true;
  queue.push_back({q0, {}});
  while (!queue.empty()) {
    Item item = queue.front();
    queue.pop_front();
    for (const auto& [lab, dst] : adj[item.state]) {
      if (visited[dst]) continue;
      visited[dst] = true;
      Word w = item.word;
      w.push_back(lab);
      if (d.is_terminal(dst)) return w;
      queue.push_back({dst, std::move(w)});
    }
  }
  return std::nullopt;
}

std::set<Word> enumerate_accepted(const Automaton& a, std::size_t max_len) {
  std::set<Word> out;
  Automaton f = determinize(a);
  if (f.num_states() == 0 || f.initials().empty()) return out;
  auto adj = adjacency(f);
  for (auto& o : adj) std::sort(o.begin(), o.end());
  Word word;
  auto walk = [&](auto&& self, StateId q) -> void {
    if (f.is_terminal(q)) out.insert(word);
    if (word.size() == max_len) return;
    for (const auto& [lab, dst] : adj[q]) {
      word.push_back(lab);
      self(self, dst);
      word.pop_back();
    }
  };
  walk(walk, f.initials()[0]);
  return out;
}

Automaton relabel(const Automaton& a, AlphabetPtr target, const std::vector<Letter>& map) {
  require_alphabet(a);
  if (map.size() != a.alphabet()->letter_count()) {
    throw std::invalid_argument("relabel: map size mismatch");
  }
  for (Letter x = 0; x < map.size(); ++x) {
    if (!target->contains(map[x]) || map[inverse(x)] != inverse(map[x])) {
      throw std::invalid_argument("relabel: map not involution-compatible");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(a.edges().size());
  for (const Edge& e : a.edges()) {
    edges.push_back({e.src, e.label == kSilent ? kSilent : map[e.label], e.dst});
  }
  return Automaton::from_parts(std::move(target), a.num_states(), a.initials(), a.terminals(),
                               std::move(edges));
}

// --- serialization ---

std::string to_text(const Automaton& a) {
  std::ostringstream out;
  out << "stallings-automaton v1\n";
  out << "alphabet";
  for (std::size_t i = 0; i < a.alphabet()->positive_count(); ++i) {
    out << ' ' << a.alphabet()->positive_name(i);
  }
  out << '\n';
  std::vector<bool> init = state_set(a.num_states(), a.initials());
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << "state " << q;
    if (init[q]) out << " initial";
    if (a.is_terminal(q)) out << " terminal";
    out << '\n';
  }
  for (const Edge& e : a.edges()) {
    out << "edge " << e.src << ' '
        << (e.label == kSilent ? std::string("-") : a.alphabet()->letter_name(e.label)) << ' '
        << e.dst << '\n';
  }
  return out.str();
}

Automaton from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.find("stallings-automaton") != 0) {
    throw std::invalid_argument("bad automaton header");
  }
  AlphabetPtr alphabet;
  std::size_t num_states = 0;
  std::vector<StateId> initials, terminals;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind.empty() || kind[0] == '#') continue;
    if (kind == "alphabet") {
      std::vector<std::string> names;
      std::string name;
      while (ls >> name) names.push_back(name);
      alphabet = make_alphabet(std::move(names));
    } else if (kind == "state") {
      if (!alphabet) throw std::invalid_argument("state before alphabet");
      StateId q;
      if (!(ls >> q)) throw std::invalid_argument("bad state line: " + line);
      num_states = std::max<std::size_t>(num_states, q + 1);
      std::string mark;
      while (ls >> mark) {
        if (mark == "initial") {
          initials.push_back(q);
        } else if (mark == "terminal") {
          terminals.push_back(q);
        } else {
          throw std::invalid_argument("bad state mark: " + mark);
        }
      }
    } else if (kind == "edge") {
      if (!alphabet) throw std::invalid_argument("edge before alphabet");
      StateId src, dst;
      std::string label;
      if (!(ls >> src >> label >> dst)) throw std::invalid_argument("bad edge line: " + line);
      Letter lab = kSilent;
      if (label != "-") {
        auto found = alphabet->find(label);
        if (!found) throw std::invalid_argument("unknown edge label: " + label);
        lab = *found;
      }
      num_states = std::max<std::size_t>(num_states, std::max(src, dst) + 1);
      edges.push_back({src, lab, dst});
    } else {
      throw std::invalid_argument("bad line: " + line);
    }
  }
  if (!alphabet) throw std::invalid_argument("missing alphabet line");
  return Automaton::from_parts(std::move(alphabet), num_states, std::move(initials),
                               std::move(terminals), std::move(edges));
}

std::string to_dot(const Automaton& a, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  std::vector<bool> init = state_set(a.num_states(), a.initials());
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << "  q" << q;
    if (a.is_terminal(q)) out << " [shape=doublecircle]";
    out << ";\n";
    if (init[q]) {
      out << "  start" << q << " [shape=point];\n";
      out << "  start" << q << " -> q" << q << ";\n";
    }
  }
  for (const Edge& e : a.edges()) {
    out << "  q" << e.src << " -> q" << e.dst << " [label=\""
        << (e.label == kSilent ? std::string("ε") : a.alphabet()->letter_name(e.label))
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char bytes[4] = {static_cast<unsigned char>(v & 0xff),
                            static_cast<unsigned char>((v >> 8) & 0xff),
                            static_cast<unsigned char>((v >> 16) & 0xff),
                            static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) throw std::runtime_error("truncated binary automaton");
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void put_string(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
  std::uint32_t len = get_u32(in);
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (!in) throw std::runtime_error("truncated binary string");
  return s;
}

}  // namespace

void write_alphabet(std::ostream& out, const InvolutiveAlphabet& alphabet) {
  put_u32(out, static_cast<std::uint32_t>(alphabet.positive_count()));
  for (std::size_t i = 0; i < alphabet.positive_count(); ++i) {
    put_string(out, alphabet.positive_name(i));
  }
}

AlphabetPtr read_alphabet(std::istream& in) {
  std::uint32_t n = get_u32(in);
  std::vector<std::string> names;
  names.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) names.push_back(get_string(in));
  return make_alphabet(std::move(names));
}

void write_binary(std::ostream& out, const Automaton& a) {
  write_alphabet(out, *a.alphabet());
  put_u32(out, static_cast<std::uint32_t>(a.num_states()));
  put_u32(out, static_cast<std::uint32_t>(a.initials().size()));
  for (StateId q : a.initials()) put_u32(out, q);
  put_u32(out, static_cast<std::uint32_t>(a.terminals().size()));
  for (StateId q : a.terminals()) put_u32(out, q);
  put_u32(out, static_cast<std::uint32_t>(a.edges().size()));
  for (const Edge& e : a.edges()) {
    put_u32(out, e.src);
    put_u32(out, e.label);
    put_u32(out, e.dst);
  }
}

Automaton read_binary(std::istream& in) {
  AlphabetPtr alphabet = read_alphabet(in);
  std::uint32_t n = get_u32(in);
  std::vector<StateId> initials(get_u32(in));
  for (auto& q : initials) q = get_u32(in);
  std::vector<StateId> terminals(get_u32(in));
  for (auto& q : terminals) q = get_u32(in);
  std::vector<Edge> edges(get_u32(in));
  for (auto& e : edges) {
    e.src = get_u32(in);
    e.label = get_u32(in);
    e.dst = get_u32(in);
  }
  return Automaton::from_parts(std::move(alphabet), n, std::move(initials), std::move(terminals),
                               std::move(edges));
}

}  // namespace stallings
