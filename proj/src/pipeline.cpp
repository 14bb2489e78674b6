#include "stallings/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace stallings {

SubgroupInput SubgroupInput::make(const StallingsSection& section, std::vector<Word> generators) {
  SubgroupInput input;
  input.section = &section;
  for (Word& w : generators) {
    Word r = reduce_word(w);
    for (Letter a : r) {
      if (!section.alphabet()->contains(a)) {
        throw std::invalid_argument("generator letter outside the section alphabet");
      }
    }
    if (!r.empty()) input.generators.push_back(std::move(r));
  }
  return input;
}

std::size_t SubgroupInput::size_parameter() const {
  std::size_t n = 0;
  for (const Word& w : generators) n += w.size();
  return n;
}

Automaton atomic_uniterminal(const StallingsSection& sec, Letter a) {
  if (!sec.alphabet()->contains(a)) throw std::invalid_argument("letter outside alphabet");
  if (is_positive(a)) {
    Automaton d = determinize(trim(sec.letter_section(a)));
    if (d.num_states() == 0 || d.terminals().empty()) {
      throw std::invalid_argument("empty letter section S_" + sec.alphabet()->letter_name(a) +
                                  " violates the section axioms");
    }
    if (d.terminals().size() == 1) return d;
    // identify all terminals into the least one
    StateId target = d.terminals()[0];
    std::vector<StateId> number(d.num_states());
    StateId next = 0;
    for (StateId q = 0; q < d.num_states(); ++q) {
      if (q == target || !d.is_terminal(q)) {
        number[q] = next++;
      }
    }
    for (StateId q : d.terminals()) number[q] = number[target];
    std::vector<Edge> edges;
    for (const Edge& e : d.edges()) edges.push_back({number[e.src], e.label, number[e.dst]});
    return Automaton::from_parts(d.alphabet(), next, {number[d.initials()[0]]},
                                 {number[target]}, std::move(edges));
  }
  // inverse letter: reverse the positive atom and invert its labels
  Automaton pos = atomic_uniterminal(sec, inverse(a));
  return inverse_language(pos);
}

Automaton star_product(const Automaton& x, const Automaton& y) {
  if (*x.alphabet() != *y.alphabet()) throw std::invalid_argument("alphabet mismatch");
  if (x.terminals().size() != 1 || y.terminals().size() != 1 || x.initials().size() != 1 ||
      y.initials().size() != 1) {
    throw std::invalid_argument("star_product requires uniterminal automata");
  }
  StateId glue = x.terminals()[0];
  StateId y_init = y.initials()[0];
  StateId offset = static_cast<StateId>(x.num_states());
  // y's initial becomes x's terminal; other y states shift past x
  auto map_y = [&](StateId q) -> StateId {
    if (q == y_init) return glue;
    return q < y_init ? q + offset : q + offset - 1;
  };
  std::vector<Edge> edges = x.edges();
  for (const Edge& e : y.edges()) edges.push_back({map_y(e.src), e.label, map_y(e.dst)});
  return Automaton::from_parts(x.alphabet(), x.num_states() + y.num_states() - 1, x.initials(),
                               {map_y(y.terminals()[0])}, std::move(edges));
}

PipelineTrace build_core(const SubgroupInput& input) {
  const StallingsSection& sec = *input.section;
  const AlphabetPtr& alphabet = sec.alphabet();
  PipelineTrace trace;

  // atoms are shared across generators
  std::map<Letter, Automaton> atoms;
  auto atom = [&](Letter a) -> const Automaton& {
    auto it = atoms.find(a);
    if (it == atoms.end()) it = atoms.emplace(a, atomic_uniterminal(sec, a)).first;
    return it->second;
  };

  // B0: petals A_i with all initial vertices identified into q0 = 0
  std::size_t num_states = 1;
  std::vector<Edge> edges;
  std::vector<StateId> terminals;
  for (const Word& h : input.generators) {
    Automaton petal = atom(h[0]);
    for (std::size_t i = 1; i < h.size(); ++i) petal = star_product(petal, atom(h[i]));
    StateId init = petal.initials()[0];
    auto map_state = [&](StateId q) -> StateId {
      if (q == init) return 0;
      return static_cast<StateId>(q < init ? q + num_states : q + num_states - 1);
    };
    for (const Edge& e : petal.edges()) {
      edges.push_back({map_state(e.src), e.label, map_state(e.dst)});
    }
    terminals.push_back(map_state(petal.terminals()[0]));
    num_states += petal.num_states() - 1;
  }
  if (input.generators.empty()) terminals.push_back(0);
  trace.b0 = Automaton::from_parts(alphabet, num_states, {0}, std::move(terminals),
                                   std::move(edges));
  trace.b1 = involutive_closure(trace.b0);
  trace.b2 = merge_terminals(trace.b1);
  trace.b3 = fold(trace.b2);
  return trace;
}

std::vector<Word> geodesic_words(const Automaton& a) {
  std::vector<Word> words(a.num_states());
  std::vector<bool> seen(a.num_states(), false);
  if (a.initials().empty()) return words;
  std::vector<std::vector<std::pair<Letter, StateId>>> adj(a.num_states());
  for (const Edge& e : a.edges()) adj[e.src].emplace_back(e.label, e.dst);
  for (auto& out : adj) std::sort(out.begin(), out.end());
  std::deque<StateId> queue{a.initials()[0]};
  seen[a.initials()[0]] = true;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (const auto& [lab, dst] : adj[q]) {
      if (seen[dst]) continue;
      seen[dst] = true;
      words[dst] = words[q];
      words[dst].push_back(lab);
      queue.push_back(dst);
    }
  }
  return words;
}

std::vector<std::pair<StateId, StateId>> j_pairs(const Automaton& b3,
                                                 const StallingsSection& sec) {
  std::vector<std::pair<StateId, StateId>> pairs;
  if (b3.num_states() < 2) return pairs;
  std::vector<Word> geo = geodesic_words(b3);
  for (StateId p = 0; p < b3.num_states(); ++p) {
    for (StateId q = p + 1; q < b3.num_states(); ++q) {
      Word w = geo[p];
      Word v_inv = inverse_word(geo[q]);
      w.insert(w.end(), v_inv.begin(), v_inv.end());
      Automaton s_g = sec.s_of_g(reduce_word(w));
      auto witness = shortest_accepted_word(s_g);
      if (!witness) {
        throw std::runtime_error("empty S_g while detecting J pairs: section violation");
      }
      if (b3.accepts(*witness)) pairs.emplace_back(p, q);
    }
  }
  return pairs;
}

PipelineTrace build_stallings(const SubgroupInput& input) {
  PipelineTrace trace = build_core(input);
  const StallingsSection& sec = *input.section;
  trace.j_pairs = j_pairs(trace.b3, sec);
  Automaton current = trace.b3;
  std::vector<std::pair<StateId, StateId>> pending = trace.j_pairs;
  // identification can create fresh 1-labeled paths; iterate to a fixpoint
  while (!pending.empty()) {
    current = identify(current, pending);
    pending = j_pairs(current, sec);
  }
  trace.b4 = current;
  trace.has_b4 = true;
  trace.core = restrict(trace.b4, sec.s_automaton());
  return trace;
}

bool member(const StallingsSection& sec, const Automaton& core, const Word& w) {
  if (*core.alphabet() != *sec.alphabet()) throw std::invalid_argument("alphabet mismatch");
  return !is_empty_lang(lang_intersection(sec.s_of_g(reduce_word(w)), core));
}

std::optional<std::vector<Word>> finite_index(const StallingsSection& sec,
                                              const Automaton& core) {
  if (!sec.extendable_by_construction()) {
    throw HypothesisError(
        "finite_index requires a section that is extendable by construction");
  }
  if (core.num_states() == 0) return std::nullopt;
  // language of labels of paths out of the basepoint
  std::vector<StateId> all(core.num_states());
  for (StateId q = 0; q < core.num_states(); ++q) all[q] = q;
  Automaton paths = Automaton::from_parts(core.alphabet(), core.num_states(), core.initials(),
                                          std::move(all), core.edges());
  if (!includes(sec.s_automaton(), paths)) return std::nullopt;
  return geodesic_words(core);
}

std::optional<std::vector<Word>> recognize(const StallingsSection& sec, const Automaton& a) {
  if (!a.has_basepoint()) return std::nullopt;
  Automaton restricted = restrict(a, sec.s_automaton());
  if (restricted.num_states() != a.num_states() ||
      restricted.edges().size() != a.edges().size()) {
    return std::nullopt;  // a != a ⊓ S
  }
  // spanning-tree generators: one per positive non-tree edge
  std::vector<Word> geo = geodesic_words(a);
  std::vector<std::vector<std::pair<Letter, StateId>>> adj(a.num_states());
  for (const Edge& e : a.edges()) adj[e.src].emplace_back(e.label, e.dst);
  for (auto& out : adj) std::sort(out.begin(), out.end());
  std::set<Edge> tree;
  {
    std::vector<bool> seen(a.num_states(), false);
    std::deque<StateId> queue{a.initials()[0]};
    seen[a.initials()[0]] = true;
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      for (const auto& [lab, dst] : adj[q]) {
        if (seen[dst]) continue;
        seen[dst] = true;
        tree.insert({q, lab, dst});
        tree.insert({dst, inverse(lab), q});
        queue.push_back(dst);
      }
    }
  }
  std::vector<Word> generators;
  for (const Edge& e : a.edges()) {
    if (!is_positive(e.label) || tree.count(e)) continue;
    Word w = geo[e.src];
    w.push_back(e.label);
    Word back = inverse_word(geo[e.dst]);
    w.insert(w.end(), back.begin(), back.end());
    w = reduce_word(w);
    if (!w.empty()) generators.push_back(std::move(w));
  }
  PipelineTrace rebuilt = build_stallings(SubgroupInput::make(sec, generators));
  if (!isomorphic(rebuilt.core, a)) return std::nullopt;
  return generators;
}

}  // namespace stallings
