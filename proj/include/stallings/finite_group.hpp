#ifndef STALLINGS_FINITE_GROUP_HPP
#define STALLINGS_FINITE_GROUP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "stallings/alphabet.hpp"

namespace stallings {

/// A finite group given by its multiplication table.
struct FiniteGroup {
  std::vector<std::string> elements;
  std::size_t identity = 0;
  std::vector<std::vector<std::size_t>> table;  // table[i][j] = i * j

  std::size_t size() const { return elements.size(); }
  std::size_t mul(std::size_t i, std::size_t j) const { return table[i][j]; }
  std::size_t inv(std::size_t i) const;

  /// Checks the group axioms. Throws std::invalid_argument naming the failing
  /// axiom and witnesses (e.g. the non-associative triple).
  void validate() const;

  /// Evaluates a word through a matched generator map (one element per letter).
  std::size_t fold_word(const std::vector<std::size_t>& genmap, const Word& w) const;

  std::size_t element_index(const std::string& name) const;
};

/// A matched generator map for `alphabet` into `group`: genmap[a^-1] is
/// forced to be genmap[a]^-1. `positive_images` has one entry per positive
/// letter.
std::vector<std::size_t> matched_genmap(const InvolutiveAlphabet& alphabet,
                                        const FiniteGroup& group,
                                        const std::vector<std::size_t>& positive_images);

}  // namespace stallings

#endif
