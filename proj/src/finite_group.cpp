#include "stallings/finite_group.hpp"

#include <stdexcept>

namespace stallings {

std::size_t FiniteGroup::inv(std::size_t i) const {
  for (std::size_t j = 0; j < size(); ++j) {
    if (mul(i, j) == identity) return j;
  }
  throw std::invalid_argument("element '" + elements[i] + "' has no inverse");
}

void FiniteGroup::validate() const {
  std::size_t n = size();
  if (n == 0) throw std::invalid_argument("group table is empty");
  if (identity >= n) throw std::invalid_argument("identity index out of range");
  if (table.size() != n) throw std::invalid_argument("group table has wrong row count");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      throw std::invalid_argument("group table row '" + elements[i] + "' has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) {
        throw std::invalid_argument("group table entry out of range at (" + elements[i] + ", " +
                                    elements[j] + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (mul(identity, i) != i || mul(i, identity) != i) {
      throw std::invalid_argument("identity axiom fails at element '" + elements[i] + "'");
    }
  }
  for (std::size_t i = 0; i < n; ++i) inv(i);  // throws if missing
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (mul(mul(i, j), k) != mul(i, mul(j, k))) {
          throw std::invalid_argument("associativity fails at triple (" + elements[i] + ", " +
                                      elements[j] + ", " + elements[k] + ")");
        }
      }
    }
  }
}

std::size_t FiniteGroup::fold_word(const std::vector<std::size_t>& genmap, const Word& w) const {
  std::size_t g = identity;
  for (Letter a : w) g = mul(g, genmap[a]);
  return g;
}

std::size_t FiniteGroup::element_index(const std::string& name) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (elements[i] == name) return i;
  }
  throw std::invalid_argument("unknown group element: '" + name + "'");
}

std::vector<std::size_t> matched_genmap(const InvolutiveAlphabet& alphabet,
                                        const FiniteGroup& group,
                                        const std::vector<std::size_t>& positive_images) {
  if (positive_images.size() != alphabet.positive_count()) {
    throw std::invalid_argument("genmap must cover every positive letter");
  }
  std::vector<std::size_t> genmap(alphabet.letter_count());
  for (std::size_t i = 0; i < alphabet.positive_count(); ++i) {
    genmap[2 * i] = positive_images[i];
    genmap[2 * i + 1] = group.inv(positive_images[i]);
  }
  return genmap;
}

}  // namespace stallings
