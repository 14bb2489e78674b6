#ifndef STALLINGS_SECTION_HPP
#define STALLINGS_SECTION_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/group_spec.hpp"
#include "stallings/rational_ops.hpp"

namespace stallings {

/// Thrown when a constructed section fails one of its glue invariants.
class SectionBuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The auxiliary data of the amalgam combinator: the relator language
/// L = 1ψ^-1ξ over the fresh b_h letters, and the trimmed factor sections
/// S' = S \ ∪ S_{hφ1}, T' = T \ ∪ T_{hφ2}.
struct AmalgamGlue {
  AlphabetPtr b_alphabet;
  Automaton l_auto;
  Automaton sprime;
  Automaton tprime;
};

/// The auxiliary data of the HNN combinator: L over the fresh c_h letters,
/// the reduced-form skeleton N, and the substitution α (a -> a, b -> bL,
/// b^-1 -> L b^-1).
struct HnnGlue {
  AlphabetPtr c_alphabet;
  Automaton l_auto;
  Automaton n_auto;
  RationalSubstitution alpha;
};

struct SectionCheck {
  std::string name;
  bool passed;
  std::string witness;  // empty when passed
};

struct SectionValidationReport {
  bool ok = true;
  std::vector<SectionCheck> checks;
  std::string summary() const;
};

/// A Stallings section: the section automaton S ⊆ R_A, the per-letter
/// automata for S_{aπ}, the automaton for S_1, and construction metadata.
/// Immutable after construction; the S_g cache is internally synchronized.
class StallingsSection {
 public:
  static StallingsSection free_group(AlphabetPtr alphabet);
  static StallingsSection finite_group(AlphabetPtr alphabet, const FiniteGroup& group,
                                       const std::vector<std::size_t>& genmap);
  /// Combines factor sections over an amalgam node. `spec` carries the node
  /// and the parent alphabet; throws SectionBuildError on glue violations.
  static StallingsSection amalgam(const StallingsSection& left, const StallingsSection& right,
                                  const GroupSpec& spec);
  static StallingsSection hnn(const StallingsSection& base, const GroupSpec& spec);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Automaton& s_automaton() const { return s_auto_; }
  const Automaton& s1_automaton() const { return s1_auto_; }
  const Automaton& letter_section(Letter a) const { return letter_sections_.at(a); }

  bool contains_empty_word() const { return contains_empty_word_; }
  bool extendable_by_construction() const { return extendable_; }
  bool s1_nontrivial() const { return s1_nontrivial_; }

  const std::optional<AmalgamGlue>& amalgam_glue() const { return amalgam_glue_; }
  const std::optional<HnnGlue>& hnn_glue() const { return hnn_glue_; }
  const std::string& group_json() const { return group_json_; }
  void set_group_json(std::string json) { group_json_ = std::move(json); }

  /// Automaton for S_{wπ} = reduction(S_{a_1π} ... S_{a_nπ}) ∩ S; the empty
  /// word yields S_1. Results are minimal DFAs, cached by the canonical form
  /// of the running product, so word-equivalent prefixes share work.
  Automaton s_of_g(const Word& w) const;

  /// Automaton for S_{L(l)π} (generalized Benois).
  Automaton s_of_rational(const Automaton& l) const;

  /// Whether wπ = 1, via S_{wπ} ∩ S_1 ≠ ∅.
  bool word_problem(const Word& w) const;

  /// Section for the m-epi sending each new letter to the image of its
  /// `newgen` word. Expressions of the old generators over the new alphabet
  /// are found by breadth-first search, which terminates only if the images
  /// generate the group (the caller's stated assumption); `search_limit`
  /// bounds the number of explored words.
  StallingsSection transport(AlphabetPtr new_alphabet, const std::vector<Word>& newgen,
                             std::size_t search_limit = 200000) const;

  /// Samples the section axioms: S ⊆ R_A, S = S^-1, letter-section coherence,
  /// nonemptiness of sampled S_g, and `budget` sampled (S2) inclusions
  /// S_{(uv)π} ⊆ reduction(S_{uπ} S_{vπ}), each an exact automaton check.
  SectionValidationReport validate(std::size_t budget, std::uint64_t seed) const;

  void save(std::ostream& out) const;
  static StallingsSection load(std::istream& in);

  /// Replaces a letter section (test hook for corrupted-section scenarios).
  StallingsSection with_letter_section(Letter a, Automaton replacement) const;

 private:
  StallingsSection() = default;

  struct SgCache;
  std::string walk_key_locked(const Word& w) const;

  AlphabetPtr alphabet_;
  Automaton s_auto_;
  Automaton s1_auto_;
  std::vector<Automaton> letter_sections_;
  bool contains_empty_word_ = true;
  bool extendable_ = false;
  bool s1_nontrivial_ = false;
  std::optional<AmalgamGlue> amalgam_glue_;
  std::optional<HnnGlue> hnn_glue_;
  std::string group_json_;

  std::shared_ptr<SgCache> cache_;
};

/// Canonical byte signature of an automaton's language (minimal DFA dump).
std::string language_key(const Automaton& minimal_dfa);

}  // namespace stallings

#endif
