#ifndef STALLINGS_TEST_ORACLES_HPP
#define STALLINGS_TEST_ORACLES_HPP

// Independent oracles for the test suites. Everything here recomputes
// expected values along a different path from the library implementation:
// naive repeated-scan folding, element-level syllable arithmetic, and plain
// word enumeration.

#include <set>
#include <utility>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/finite_group.hpp"

namespace stallings::oracles {

/// Classical Stallings automaton of <generators> in the free group: flower
/// of reduced petals, then naive quadratic repeated-scan folding.
Automaton naive_fold_stallings(AlphabetPtr alphabet, const std::vector<Word>& generators);

/// Whether the naive-fold automaton is complete (every state carries every
/// letter) — for free groups this characterizes finite index.
bool complete_automaton(const Automaton& a);

/// Free product of finite groups, evaluated at the element level.
/// letter_images maps every parent letter to (factor, element).
struct FreeProductOracle {
  std::vector<FiniteGroup> factors;
  std::vector<std::pair<std::size_t, std::size_t>> letter_images;

  /// Alternating normal form as (factor, element) syllables, identities
  /// cancelled with a confluent stack rewriting.
  std::vector<std::pair<std::size_t, std::size_t>> normal_form(const Word& w) const;
  bool is_identity(const Word& w) const { return normal_form(w).empty(); }
};

/// D-infinity = Z2 * Z2 with positive letters a (factor 0) and b (factor 1).
FreeProductOracle d_infinity_oracle();
/// Z2 * Z3 with positive letters a (order 2) and b (order 3).
FreeProductOracle z2_z3_oracle();

/// Membership of w in <ab> inside D-infinity, decided on the normal form.
bool d_infinity_in_ab(const FreeProductOracle& oracle, const Word& w);

/// HNN extension over a finite base group, evaluated by Britton pinches on
/// element-level syllables.
struct BrittonOracle {
  FiniteGroup base;
  std::vector<std::size_t> genmap;      // base letters -> elements (matched)
  std::vector<std::size_t> h_elements;  // image of incl in the base
  std::vector<std::size_t> h_phi;       // phi images aligned with h_elements
  Letter stable = 0;                    // parent letter index of the stable letter

  bool is_identity(const Word& w) const;
};

/// Z2 x Z = HNN(Z2, Z2, id) with positive letters a, t.
BrittonOracle z2_hnn_oracle();

/// All words over the alphabet with length at most max_len.
std::vector<Word> all_words(const InvolutiveAlphabet& alphabet, std::size_t max_len);

/// Brute-force reduced language: { reduce(w) : w in L(a), |w| <= enum_len },
/// filtered to length <= keep_len.
std::set<Word> brute_reduced(const Automaton& a, std::size_t enum_len, std::size_t keep_len);

/// Exact reduced language up to max_len via naive Dyck reachability: the
/// relation Z = { (p,q) : some p->q path labels a word reducing to 1 } is
/// grown with a textbook cubic fixpoint, then reduced words are walked
/// through Z-closed subsets.
std::set<Word> dyck_reduced_language(const Automaton& a, std::size_t max_len);

}  // namespace stallings::oracles

#endif
