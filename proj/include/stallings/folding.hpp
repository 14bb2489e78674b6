#ifndef STALLINGS_FOLDING_HPP
#define STALLINGS_FOLDING_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "stallings/automaton.hpp"

namespace stallings {

/// Instrumentation for the near-linear folding bound.
struct FoldStats {
  std::uint64_t finds = 0;
  std::uint64_t unions = 0;
  std::uint64_t total() const { return finds + unions; }
};

/// Complete Stallings folding: the deterministic involutive quotient with no
/// pair q <-a- p -a-> r left. Union-find with union by rank and path
/// compression; per-class edge slots merged smaller-into-larger. Classes are
/// renumbered by their least original state, so outputs are reproducible.
/// Throws std::invalid_argument on non-involutive input.
Automaton fold(const Automaton& a, FoldStats* stats = nullptr);

/// Quotient by the equivalence generated by `pairs`, followed by complete
/// folding.
Automaton identify(const Automaton& a, const std::vector<std::pair<StateId, StateId>>& pairs,
                   FoldStats* stats = nullptr);

/// Identifies every terminal state with the initial state (no folding);
/// the result has a basepoint. Throws if the terminal set is empty.
Automaton merge_terminals(const Automaton& a);

}  // namespace stallings

#endif
