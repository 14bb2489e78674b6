#ifndef STALLINGS_PDA_HPP
#define STALLINGS_PDA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stallings/section.hpp"

namespace stallings {

/// Stack symbols are the letters of the alphabet plus the bottom marker d0
/// (index = letter_count).
struct PdaTransition {
  std::uint32_t from;
  std::optional<Letter> input;  // nullopt = silent move
  std::uint32_t stack_top;
  std::uint32_t to;
  std::vector<std::uint32_t> push;  // replaces the popped top; bottom first

  friend bool operator==(const PdaTransition&, const PdaTransition&) = default;
};

/// The pushdown automaton recognizing the word-problem language 1π^-1,
/// assembled from the determinized letter-section automata A^a. States are
/// q0, t, then one block per letter of Ã.
struct PdaSpec {
  AlphabetPtr alphabet;
  std::uint32_t num_states = 0;
  std::uint32_t initial_state = 0;
  std::uint32_t accept_state = 0;
  std::vector<PdaTransition> transitions;
  std::vector<std::string> state_names;

  std::uint32_t bottom_symbol() const { return static_cast<std::uint32_t>(alphabet->letter_count()); }
};

PdaSpec emit_pda(const StallingsSection& sec);

enum class PdaOutcome { accept, reject, cutoff };

/// Bounded configuration search over (position, state, stack) with stack
/// height capped at `stack_cutoff`. Exact decisions come from word_problem;
/// this is a semi-decision cross-check: accept when the accept state is
/// reached on the full input, reject when the frontier exhausts below the
/// cutoff, cutoff otherwise.
PdaOutcome pda_accepts(const PdaSpec& pda, const Word& w, std::size_t stack_cutoff);

/// Evaluates every word of length at most `max_len` with prefix sharing: the
/// configuration sets of a prefix are computed once for all continuations.
/// Outcomes are identical to per-word pda_accepts calls.
void pda_sweep(const PdaSpec& pda, std::size_t max_len, std::size_t stack_cutoff,
               const std::function<void(const Word&, PdaOutcome)>& visit);

std::string pda_outcome_name(PdaOutcome o);

/// Text format, one transition per line:
///   state input stack-top -> state push-word
/// with `-` for a silent input or an empty push word.
std::string pda_to_text(const PdaSpec& pda);
PdaSpec pda_from_text(std::string_view text);

}  // namespace stallings

#endif
