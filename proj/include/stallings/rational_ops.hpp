#ifndef STALLINGS_RATIONAL_OPS_HPP
#define STALLINGS_RATIONAL_OPS_HPP

#include <optional>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/finite_group.hpp"

namespace stallings {

/// Automaton for R_A, the reduced words: one start state plus one state per
/// last letter, |Ã|+1 states in total, all terminal.
Automaton reduced_words_automaton(AlphabetPtr alphabet);

/// Benois reduction: an automaton for the reduced forms of L(a). Saturates
/// with silent edges p -> r whenever p -a-> q ~>ε q' -a^-1-> r reaches a
/// fixpoint, then intersects with R_A.
Automaton benois_reduce(const Automaton& a);

/// Letter-to-language substitution. Images for inverse letters default to
/// the inverse language of the positive letter's image when omitted.
class RationalSubstitution {
 public:
  RationalSubstitution(AlphabetPtr source, AlphabetPtr target);

  void set_image(Letter a, Automaton image);
  const Automaton& image(Letter a) const;
  bool has_image(Letter a) const;

  const AlphabetPtr& source() const { return source_; }
  const AlphabetPtr& target() const { return target_; }

 private:
  AlphabetPtr source_;
  AlphabetPtr target_;
  mutable std::vector<std::optional<Automaton>> images_;
};

/// Automaton for ∪_{u ∈ L(a)} uφ: every letter edge is replaced by a bridged
/// copy of its image automaton. Throws if a used letter has no image.
Automaton substitute(const Automaton& a, const RationalSubstitution& s);

/// Automaton for Xφ^-1 where φ folds letters through a finite group table:
/// one state per group element, initial = identity, terminals = target.
Automaton monoid_preimage(AlphabetPtr alphabet, const FiniteGroup& group,
                          const std::vector<std::size_t>& genmap,
                          const std::vector<std::size_t>& target);

}  // namespace stallings

#endif
