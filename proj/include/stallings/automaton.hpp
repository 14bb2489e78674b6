#ifndef STALLINGS_AUTOMATON_HPP
#define STALLINGS_AUTOMATON_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stallings/alphabet.hpp"

namespace stallings {

using StateId = std::uint32_t;

struct Edge {
  StateId src;
  Letter label;  // kSilent for epsilon edges
  StateId dst;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A finite automaton over an involutive alphabet. Immutable value type:
/// every operation returns a new automaton. Multiple initial states and
/// silent edges are permitted in the nondeterministic representation.
/// The empty language is the distinguished value with no states.
class Automaton {
 public:
  Automaton() = default;

  static Automaton empty(AlphabetPtr alphabet);
  /// One state, initial and terminal; recognizes {1}.
  static Automaton epsilon(AlphabetPtr alphabet);
  /// A simple path spelling `w`; recognizes {w}.
  static Automaton single_word(AlphabetPtr alphabet, const Word& w);
  /// One state with a loop for every letter; recognizes all words.
  static Automaton all_words(AlphabetPtr alphabet);
  static Automaton from_parts(AlphabetPtr alphabet, std::size_t num_states,
                              std::vector<StateId> initials, std::vector<StateId> terminals,
                              std::vector<Edge> edges);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return num_states_; }
  const std::vector<StateId>& initials() const { return initials_; }
  const std::vector<StateId>& terminals() const { return terminals_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool is_terminal(StateId q) const;
  bool has_silent_edges() const;
  bool is_deterministic() const;
  bool is_involutive() const;
  bool is_trim() const;
  /// Deterministic, trim, involutive, single terminal.
  bool is_inverse() const;
  /// Inverse with terminal == initial.
  bool has_basepoint() const;

  bool accepts(const Word& w) const;
  bool accepts_empty_word() const;

 private:
  AlphabetPtr alphabet_;
  std::size_t num_states_ = 0;
  std::vector<StateId> initials_;
  std::vector<StateId> terminals_;
  std::vector<Edge> edges_;
};

struct Morphism {
  std::vector<StateId> mapping;  // state of `a` -> state of `b`
  bool isomorphism = false;
};

/// Adds the reverse edge (q, a^-1, p) for every edge (p, a, q).
/// Rejects silent edges.
Automaton involutive_closure(const Automaton& a);

/// Keeps exactly the states and edges lying on some successful path.
Automaton trim(const Automaton& a);

/// The paper's A ⊓ L: the sub-automaton of `a` formed by the states and
/// edges lying on successful paths whose label belongs to L(l).
Automaton restrict(const Automaton& a, const Automaton& l);

/// Subset construction with canonical BFS state ordering.
Automaton determinize(const Automaton& a);

/// Canonical minimal DFA (Brzozowski), states numbered by BFS discovery.
Automaton minimize(const Automaton& a);

Automaton complement(const Automaton& a);
Automaton lang_union(const Automaton& a, const Automaton& b);
Automaton lang_intersection(const Automaton& a, const Automaton& b);
Automaton lang_difference(const Automaton& a, const Automaton& b);
Automaton lang_concat(const Automaton& a, const Automaton& b);
Automaton lang_star(const Automaton& a);
Automaton prefix_closure(const Automaton& a);

/// Automaton for L(a)^-1 (reverse edges, invert labels, swap ends).
Automaton inverse_language(const Automaton& a);

/// Plain reversal: labels kept, edges flipped, initials and terminals swapped.
Automaton reverse(const Automaton& a);

/// Replaces silent edges by their letter-edge closure; language preserved.
Automaton eliminate_silent(const Automaton& a);

bool is_empty_lang(const Automaton& a);
/// Whether L(a) ⊆ L(b).
bool includes(const Automaton& a, const Automaton& b);
bool lang_equal(const Automaton& a, const Automaton& b);

/// The unique morphism between inverse automata when L(a) ⊆ L(b).
/// Throws std::invalid_argument unless both inputs are inverse automata.
std::optional<Morphism> find_morphism(const Automaton& a, const Automaton& b);

/// Exact graph isomorphism for deterministic trim automata with a single
/// initial state (canonical BFS relabeling on both sides).
bool isomorphic(const Automaton& a, const Automaton& b);

/// Lexicographically least among the shortest accepted words, if any.
std::optional<Word> shortest_accepted_word(const Automaton& a);

/// All accepted words of length at most `max_len`, sorted.
std::set<Word> enumerate_accepted(const Automaton& a, std::size_t max_len);

/// Interprets every state over a larger alphabet: letter `x` of a's alphabet
/// becomes `map[x]`. The map must be involution-compatible.
Automaton relabel(const Automaton& a, AlphabetPtr target, const std::vector<Letter>& map);

// --- serialization ---

/// Text format: header `stallings-automaton v1`, an `alphabet` line, then one
/// `state` line per state (index plus optional `initial`/`terminal` marks)
/// and one `edge src label dst` line per edge. Silent label prints as `-`.
std::string to_text(const Automaton& a);
Automaton from_text(std::string_view text);

std::string to_dot(const Automaton& a, const std::string& name = "A");

void write_binary(std::ostream& out, const Automaton& a);
Automaton read_binary(std::istream& in);
void write_alphabet(std::ostream& out, const InvolutiveAlphabet& alphabet);
AlphabetPtr read_alphabet(std::istream& in);

}  // namespace stallings

#endif
