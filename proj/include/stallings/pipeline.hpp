#ifndef STALLINGS_PIPELINE_HPP
#define STALLINGS_PIPELINE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "stallings/folding.hpp"
#include "stallings/section.hpp"

namespace stallings {

/// A finitely generated subgroup H = <h_1, ..., h_m> presented over a
/// section. Generator words are freely reduced; words reducing to 1 drop.
struct SubgroupInput {
  const StallingsSection* section = nullptr;
  std::vector<Word> generators;

  static SubgroupInput make(const StallingsSection& section, std::vector<Word> generators);
  std::size_t size_parameter() const;  // n = sum of generator lengths
};

/// Snapshots of the construction stages. `core` is the Stallings automaton
/// Γ(G,H,π) ⊓ S; `j_pairs` records the pairs found on the first detection
/// pass over b3.
struct PipelineTrace {
  Automaton b0, b1, b2, b3, b4, core;
  std::vector<std::pair<StateId, StateId>> j_pairs;
  bool has_b4 = false;
};

/// Uniterminal atom for a letter: the determinized, trimmed S_{aπ} automaton
/// with all terminals identified. Atoms for inverse letters are obtained by
/// reversing the positive atom and inverting its labels.
Automaton atomic_uniterminal(const StallingsSection& sec, Letter a);

/// Glues x's terminal onto y's initial (disjoint union); stays uniterminal
/// and trim, size additive.
Automaton star_product(const Automaton& x, const Automaton& y);

/// Stages B0..B3: generator petals from star products of atoms, involutive
/// closure, terminal merge into the basepoint, complete folding.
PipelineTrace build_core(const SubgroupInput& input);

/// The pairs J: distinct states p < q joined by a path labeling 1 under π,
/// decided through geodesics u, v and a witness s in S_{(u v^-1)π}.
std::vector<std::pair<StateId, StateId>> j_pairs(const Automaton& b3,
                                                 const StallingsSection& sec);

/// Full construction: B0..B3, then J-identification iterated to a fixpoint
/// (B4), then the restriction to S.
PipelineTrace build_stallings(const SubgroupInput& input);

/// Whether wπ lies in H, via S_{wπ} ∩ L(core) ≠ ∅. Any inverse automaton
/// with (theeq1) works as `core`, so b3 is a valid alternative.
bool member(const StallingsSection& sec, const Automaton& core, const Word& w);

/// Geodesic label from the basepoint to every state (BFS, letters ascending).
std::vector<Word> geodesic_words(const Automaton& a);

/// Thrown when an operation's theorem hypothesis is not carried by the
/// inputs (e.g. finite_index over a section not extendable by construction).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-index test: S ⊆ Pref(paths out of the basepoint). Returns one
/// geodesic coset representative per core state when the index is finite,
/// std::nullopt otherwise. Refuses (HypothesisError) when the section is not
/// extendable by construction.
std::optional<std::vector<Word>> finite_index(const StallingsSection& sec, const Automaton& core);

/// Stallings-automaton recognition: when `a` is (isomorphic to) some
/// Γ(G,H,π) ⊓ S, returns spanning-tree generator words regenerating it.
std::optional<std::vector<Word>> recognize(const StallingsSection& sec, const Automaton& a);

}  // namespace stallings

#endif
