#ifndef STALLINGS_GROUP_SPEC_HPP
#define STALLINGS_GROUP_SPEC_HPP

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "stallings/alphabet.hpp"
#include "stallings/finite_group.hpp"

namespace stallings {

class GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

struct FreeNode {};

struct FiniteNode {
  FiniteGroup group;
  std::vector<std::size_t> genmap;  // full letter set, matched
};

/// G = left *_H right. The parent alphabet is left's followed by right's;
/// phi words are stored in parent coordinates.
struct AmalgamNode {
  GroupSpecPtr left;
  GroupSpecPtr right;
  FiniteGroup h;
  std::vector<Word> phi1;  // h -> word over left letters
  std::vector<Word> phi2;  // h -> word over right letters
};

/// G = HNN(base, H, phi) with a fresh stable letter appended after the base
/// alphabet. incl embeds H into the base group K; phi gives the image of H.
struct HnnNode {
  GroupSpecPtr base;
  FiniteGroup h;
  std::vector<Word> incl;  // h -> word over base letters
  std::vector<Word> phi;   // h -> word over base letters
  Letter stable = 0;       // positive letter index in the parent alphabet
};

/// A compositional virtually free group description together with the
/// matched epimorphism sending each alphabet letter to a generator.
class GroupSpec {
 public:
  GroupSpec(AlphabetPtr alphabet, std::variant<FreeNode, FiniteNode, AmalgamNode, HnnNode> node)
      : alphabet_(std::move(alphabet)), node_(std::move(node)) {}

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::variant<FreeNode, FiniteNode, AmalgamNode, HnnNode>& node() const { return node_; }

  bool is_free() const { return std::holds_alternative<FreeNode>(node_); }
  bool is_finite() const { return std::holds_alternative<FiniteNode>(node_); }
  bool is_amalgam() const { return std::holds_alternative<AmalgamNode>(node_); }
  bool is_hnn() const { return std::holds_alternative<HnnNode>(node_); }

 private:
  AlphabetPtr alphabet_;
  std::variant<FreeNode, FiniteNode, AmalgamNode, HnnNode> node_;
};

/// Decides w == 1 for a word over one factor's letters (parent coordinates).
using WordProblemFn = std::function<bool(const Word&)>;

struct ValidationReport {
  bool ok = true;
  std::string message;
};

/// Checks the standing hypotheses of a composite node: the edge-group table
/// satisfies the group axioms and each embedding is an injective
/// homomorphism, all decided through the factors' word-problem oracles.
ValidationReport validate_spec(const AmalgamNode& node, const WordProblemFn& left_wp,
                               const WordProblemFn& right_wp);
ValidationReport validate_spec(const HnnNode& node, const WordProblemFn& base_wp);

// --- reduced forms ---

struct AmalgamSyllable {
  int factor;  // 0 = left, 1 = right
  Word word;   // parent coordinates
};

/// Alternating-syllable reduced form g_1 ... g_n; ||g|| = syllables.size().
/// The identity is the single empty syllable (||1|| = 1 by convention).
struct AmalgamReducedForm {
  std::vector<AmalgamSyllable> syllables;
  std::size_t length() const { return syllables.size(); }
};

/// Britton-reduced form w_0 t^{e_1} w_1 ... t^{e_n} w_n;
/// base_words.size() == exponents.size() + 1 and ||g|| = exponents.size().
struct HnnReducedForm {
  std::vector<Word> base_words;  // parent coordinates, base letters only
  std::vector<int> exponents;    // each +1 or -1
  std::size_t length() const { return exponents.size(); }
};

/// Reduced form of wπ in left *_H right. `w` is over the parent alphabet;
/// the oracles decide the factors' word problems in parent coordinates.
AmalgamReducedForm amalgam_reduced_form(const Word& w, const AmalgamNode& node,
                                        const InvolutiveAlphabet& parent,
                                        const WordProblemFn& left_wp,
                                        const WordProblemFn& right_wp);

/// Britton-reduced form of wπ in HNN(base, H, phi).
HnnReducedForm hnn_reduced_form(const Word& w, const HnnNode& node,
                                const InvolutiveAlphabet& parent, const WordProblemFn& base_wp);

/// True when the left factor's letters come first in the parent alphabet.
bool is_left_letter(const AmalgamNode& node, Letter a);

}  // namespace stallings

#endif
