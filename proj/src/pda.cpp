#include "stallings/pda.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace stallings {

PdaSpec emit_pda(const StallingsSection& sec) {
  if (!sec.contains_empty_word()) {
    throw std::invalid_argument("emit_pda requires 1 in S (S ∪ {1} is also a Stallings section)");
  }
  const AlphabetPtr& alphabet = sec.alphabet();
  PdaSpec pda;
  pda.alphabet = alphabet;
  pda.initial_state = 0;
  pda.accept_state = 1;
  pda.state_names = {"q0", "t"};

  std::vector<Automaton> letter_autos;
  std::vector<std::uint32_t> offset(alphabet->letter_count());
  std::uint32_t next = 2;
  for (Letter a = 0; a < alphabet->letter_count(); ++a) {
    Automaton d = determinize(trim(sec.letter_section(a)));
    if (d.num_states() == 0) {
      throw std::invalid_argument("empty letter section S_" + alphabet->letter_name(a));
    }
    offset[a] = next;
    for (StateId q = 0; q < d.num_states(); ++q) {
      pda.state_names.push_back(alphabet->letter_name(a) + "." + std::to_string(q));
    }
    next += static_cast<std::uint32_t>(d.num_states());
    letter_autos.push_back(std::move(d));
  }
  pda.num_states = next;
  std::uint32_t d0 = pda.bottom_symbol();

  // (q0, 1, d0, t, 1)
  pda.transitions.push_back({0, std::nullopt, d0, 1, {}});
  for (Letter a = 0; a < alphabet->letter_count(); ++a) {
    const Automaton& aut = letter_autos[a];
    std::uint32_t init = offset[a] + aut.initials()[0];
    // (q0, a, d0, q0^a, d0)
    pda.transitions.push_back({0, a, d0, init, {d0}});
    for (const Edge& e : aut.edges()) {
      std::uint32_t p = offset[a] + e.src;
      std::uint32_t q = offset[a] + e.dst;
      // (p^a, 1, d0, q^a, d0 b)
      pda.transitions.push_back({p, std::nullopt, d0, q, {d0, e.label}});
      // (p^a, 1, c, q^a, reduced(c b))
      for (Letter c = 0; c < alphabet->letter_count(); ++c) {
        std::vector<std::uint32_t> push;
        if (e.label != inverse(c)) push = {c, e.label};
        pda.transitions.push_back({p, std::nullopt, c, q, std::move(push)});
      }
    }
    for (StateId t : aut.terminals()) {
      std::uint32_t ta = offset[a] + t;
      // (t^a, b, d, q0^b, d)
      for (Letter b = 0; b < alphabet->letter_count(); ++b) {
        std::uint32_t binit = offset[b] + letter_autos[b].initials()[0];
        for (std::uint32_t d = 0; d <= d0; ++d) {
          pda.transitions.push_back({ta, b, d, binit, {d}});
        }
      }
      // (t^a, 1, d0, t, 1)
      pda.transitions.push_back({ta, std::nullopt, d0, 1, {}});
    }
  }
  return pda;
}

namespace {

// Interned stacks: configurations are (state, stack id) packed into 64 bits.
// Stacks recur heavily across positions and prefixes, so interning keeps the
// search allocation-free on the hot path.
class PdaSearch {
 public:
  PdaSearch(const PdaSpec& pda, std::size_t stack_cutoff)
      : pda_(pda), cutoff_(stack_cutoff) {
    if (stack_cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
    silent_by_state_.resize(pda.num_states);
    letter_by_state_.resize(pda.num_states);
    for (const PdaTransition& t : pda.transitions) {
      if (t.input) {
        letter_by_state_[t.from].push_back(&t);
      } else {
        silent_by_state_[t.from].push_back(&t);
      }
    }
    initial_stack_ = intern({pda.bottom_symbol()});
  }

  std::uint64_t initial_config() const {
    return pack(pda_.initial_state, initial_stack_);
  }

  // Expands silent moves to a fixpoint; returns false on a cutoff prune.
  bool close_silent(std::vector<std::uint64_t>& configs) {
    bool complete = true;
    std::unordered_set<std::uint64_t> seen(configs.begin(), configs.end());
    for (std::size_t i = 0; i < configs.size(); ++i) {
      auto [state, stack_id] = unpack(configs[i]);
      if (stacks_[stack_id].empty()) continue;
      std::uint32_t top = stacks_[stack_id].back();
      for (const PdaTransition* t : silent_by_state_[state]) {
        if (t->stack_top != top) continue;
        auto next = apply(stack_id, *t);
        if (!next) {
          complete = false;
          continue;
        }
        std::uint64_t config = pack(t->to, *next);
        if (seen.insert(config).second) configs.push_back(config);
      }
    }
    return complete;
  }

  // One input letter across a silent-closed set; clears `complete` on prune.
  std::vector<std::uint64_t> step(const std::vector<std::uint64_t>& closed, Letter x,
                                  bool& complete) {
    std::vector<std::uint64_t> out;
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t config : closed) {
      auto [state, stack_id] = unpack(config);
      if (stacks_[stack_id].empty()) continue;
      std::uint32_t top = stacks_[stack_id].back();
      for (const PdaTransition* t : letter_by_state_[state]) {
        if (*t->input != x || t->stack_top != top) continue;
        auto next = apply(stack_id, *t);
        if (!next) {
          complete = false;
          continue;
        }
        std::uint64_t c = pack(t->to, *next);
        if (seen.insert(c).second) out.push_back(c);
      }
    }
    return out;
  }

  bool any_accepting(const std::vector<std::uint64_t>& configs) const {
    for (std::uint64_t config : configs) {
      if (unpack(config).first == pda_.accept_state) return true;
    }
    return false;
  }

 private:
  std::uint64_t pack(std::uint32_t state, std::uint32_t stack_id) const {
    return (static_cast<std::uint64_t>(state) << 32) | stack_id;
  }
  std::pair<std::uint32_t, std::uint32_t> unpack(std::uint64_t config) const {
    return {static_cast<std::uint32_t>(config >> 32), static_cast<std::uint32_t>(config)};
  }

  std::uint32_t intern(std::vector<std::uint32_t> stack) {
    std::string key(reinterpret_cast<const char*>(stack.data()),
                    stack.size() * sizeof(std::uint32_t));
    auto [it, inserted] = ids_.try_emplace(std::move(key), static_cast<std::uint32_t>(stacks_.size()));
    if (inserted) {
      check_shape(stack);
      stacks_.push_back(std::move(stack));
    }
    return it->second;
  }

  // pop the top, append the push word; nullopt when past the cutoff
  std::optional<std::uint32_t> apply(std::uint32_t stack_id, const PdaTransition& t) {
    const auto& stack = stacks_[stack_id];
    std::vector<std::uint32_t> next(stack.begin(), stack.end() - 1);
    next.insert(next.end(), t.push.begin(), t.push.end());
    if (next.size() > cutoff_) return std::nullopt;
    return intern(std::move(next));
  }

  void check_shape(const std::vector<std::uint32_t>& stack) const {
    if (stack.empty()) return;  // accepting pops may empty the stack
    if (stack[0] != pda_.bottom_symbol()) {
      throw std::logic_error("pda stack lost its bottom marker");
    }
    for (std::size_t i = 1; i < stack.size(); ++i) {
      if (stack[i] == pda_.bottom_symbol()) throw std::logic_error("pda stack duplicated d0");
      if (i >= 2 && stack[i] == inverse(stack[i - 1])) {
        throw std::logic_error("pda stack word is not reduced");
      }
    }
  }

  const PdaSpec& pda_;
  std::size_t cutoff_;
  std::vector<std::vector<const PdaTransition*>> silent_by_state_;
  std::vector<std::vector<const PdaTransition*>> letter_by_state_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::vector<std::uint32_t>> stacks_;
  std::uint32_t initial_stack_ = 0;
};

}  // namespace

PdaOutcome pda_accepts(const PdaSpec& pda, const Word& w, std::size_t stack_cutoff) {
  PdaSearch search(pda, stack_cutoff);
  std::vector<std::uint64_t> configs{search.initial_config()};
  bool complete = search.close_silent(configs);
  for (Letter x : w) {
    configs = search.step(configs, x, complete);
    complete = search.close_silent(configs) && complete;
    if (configs.empty()) break;
  }
  if (search.any_accepting(configs)) return PdaOutcome::accept;
  return complete ? PdaOutcome::reject : PdaOutcome::cutoff;
}

void pda_sweep(const PdaSpec& pda, std::size_t max_len, std::size_t stack_cutoff,
               const std::function<void(const Word&, PdaOutcome)>& visit) {
  PdaSearch search(pda, stack_cutoff);

  // Prefixes with equal silent-closed configuration sets have identical
  // futures, so closure and stepping are memoized per distinct set.
  struct Node {
    std::vector<std::uint64_t> closed;
    bool closure_complete = true;
    bool accepting = false;
    std::unordered_map<Letter, std::pair<std::size_t, bool>> children;  // node, step-complete
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;

  auto intern_node = [&](std::vector<std::uint64_t> configs) {
    bool complete = search.close_silent(configs);
    std::sort(configs.begin(), configs.end());
    std::string key(reinterpret_cast<const char*>(configs.data()),
                    configs.size() * sizeof(std::uint64_t));
    auto [it, inserted] = index.try_emplace(std::move(key), nodes.size());
    if (inserted) {
      Node node;
      node.accepting = search.any_accepting(configs);
      node.closure_complete = complete;
      node.closed = std::move(configs);
      nodes.push_back(std::move(node));
    }
    return it->second;
  };

  Word word;
  auto walk = [&](auto&& self, std::size_t id, bool complete) -> void {
    complete = complete && nodes[id].closure_complete;
    if (nodes[id].accepting) {
      visit(word, PdaOutcome::accept);
    } else {
      visit(word, complete ? PdaOutcome::reject : PdaOutcome::cutoff);
    }
    if (word.size() == max_len) return;
    for (Letter x = 0; x < pda.alphabet->letter_count(); ++x) {
      auto it = nodes[id].children.find(x);
      if (it == nodes[id].children.end()) {
        bool step_complete = true;
        std::vector<std::uint64_t> next = search.step(nodes[id].closed, x, step_complete);
        std::size_t child = intern_node(std::move(next));
        it = nodes[id].children.emplace(x, std::make_pair(child, step_complete)).first;
      }
      auto [child, step_complete] = it->second;
      word.push_back(x);
      self(self, child, complete && step_complete);
      word.pop_back();
    }
  };
  walk(walk, intern_node({search.initial_config()}), true);
}

std::string pda_outcome_name(PdaOutcome o) {
  switch (o) {
    case PdaOutcome::accept:
      return "accept";
    case PdaOutcome::reject:
      return "reject";
    default:
      return "cutoff";
  }
}

namespace {

std::string symbol_name(const PdaSpec& pda, std::uint32_t s) {
  return s == pda.bottom_symbol() ? "d0" : pda.alphabet->letter_name(s);
}

}  // namespace

std::string pda_to_text(const PdaSpec& pda) {
  std::ostringstream out;
  out << "stallings-pda v1\n";
  out << "alphabet";
  for (std::size_t i = 0; i < pda.alphabet->positive_count(); ++i) {
    out << ' ' << pda.alphabet->positive_name(i);
  }
  out << '\n';
  out << "states";
  for (const auto& name : pda.state_names) out << ' ' << name;
  out << '\n';
  out << "initial " << pda.state_names[pda.initial_state] << '\n';
  out << "accept " << pda.state_names[pda.accept_state] << '\n';
  for (const PdaTransition& t : pda.transitions) {
    out << "trans " << pda.state_names[t.from] << ' '
        << (t.input ? pda.alphabet->letter_name(*t.input) : std::string("-")) << ' '
        << symbol_name(pda, t.stack_top) << " -> " << pda.state_names[t.to];
    if (t.push.empty()) {
      out << " -";
    } else {
      for (std::uint32_t s : t.push) out << ' ' << symbol_name(pda, s);
    }
    out << '\n';
  }
  return out.str();
}

PdaSpec pda_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.find("stallings-pda") != 0) {
    throw std::invalid_argument("bad pda header");
  }
  PdaSpec pda;
  auto state_index = [&](const std::string& name) -> std::uint32_t {
    for (std::uint32_t i = 0; i < pda.state_names.size(); ++i) {
      if (pda.state_names[i] == name) return i;
    }
    throw std::invalid_argument("unknown pda state: " + name);
  };
  auto symbol_index = [&](const std::string& name) -> std::uint32_t {
    if (name == "d0") return pda.bottom_symbol();
    auto a = pda.alphabet->find(name);
    if (!a) throw std::invalid_argument("unknown stack symbol: " + name);
    return *a;
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind.empty() || kind[0] == '#') continue;
    if (kind == "alphabet") {
      std::vector<std::string> names;
      std::string name;
      while (ls >> name) names.push_back(name);
      pda.alphabet = make_alphabet(std::move(names));
    } else if (kind == "states") {
      std::string name;
      while (ls >> name) pda.state_names.push_back(name);
      pda.num_states = static_cast<std::uint32_t>(pda.state_names.size());
    } else if (kind == "initial") {
      std::string name;
      ls >> name;
      pda.initial_state = state_index(name);
    } else if (kind == "accept") {
      std::string name;
      ls >> name;
      pda.accept_state = state_index(name);
    } else if (kind == "trans") {
      if (!pda.alphabet) throw std::invalid_argument("trans before alphabet");
      std::string from, input, top, arrow, to;
      if (!(ls >> from >> input >> top >> arrow >> to) || arrow != "->") {
        throw std::invalid_argument("bad transition line: " + line);
      }
      PdaTransition t;
      t.from = state_index(from);
      if (input != "-") {
        auto a = pda.alphabet->find(input);
        if (!a) throw std::invalid_argument("unknown input letter: " + input);
        t.input = *a;
      }
      t.stack_top = symbol_index(top);
      t.to = state_index(to);
      std::string sym;
      while (ls >> sym) {
        if (sym == "-") break;
        t.push.push_back(symbol_index(sym));
      }
      pda.transitions.push_back(std::move(t));
    } else {
      throw std::invalid_argument("bad pda line: " + line);
    }
  }
  if (!pda.alphabet) throw std::invalid_argument("missing pda alphabet");
  return pda;
}

}  // namespace stallings
