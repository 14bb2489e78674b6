#ifndef STALLINGS_ALPHABET_HPP
#define STALLINGS_ALPHABET_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stallings {

/// A letter is an index into an involutive alphabet. Positive letters sit at
/// even indices, their formal inverses at the following odd index, so the
/// involution is `index ^ 1`.
using Letter = std::uint32_t;

/// Label used on silent (epsilon) edges; not a letter of any alphabet.
inline constexpr Letter kSilent = 0xffffffffu;

inline Letter inverse(Letter a) { return a ^ 1u; }
inline bool is_positive(Letter a) { return (a & 1u) == 0; }

/// Alphabet A together with the formal inverses A^-1. Only the positive
/// letter names are stored; `a^-1` names are derived.
class InvolutiveAlphabet {
 public:
  InvolutiveAlphabet() = default;
  explicit InvolutiveAlphabet(std::vector<std::string> positive);

  std::size_t positive_count() const { return positive_.size(); }
  std::size_t letter_count() const { return 2 * positive_.size(); }

  Letter positive_letter(std::size_t i) const { return static_cast<Letter>(2 * i); }
  const std::string& positive_name(std::size_t i) const { return positive_[i]; }

  bool contains(Letter a) const { return a < letter_count(); }
  std::string letter_name(Letter a) const;

  /// Parses a token of the form `name` or `name^-1`.
  std::optional<Letter> find(std::string_view token) const;

  bool operator==(const InvolutiveAlphabet& other) const { return positive_ == other.positive_; }
  bool operator!=(const InvolutiveAlphabet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> positive_;
};

using AlphabetPtr = std::shared_ptr<const InvolutiveAlphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> positive);

/// A word over an involutive alphabet; the empty vector is the empty word 1.
using Word = std::vector<Letter>;

/// (uv)^-1 = v^-1 u^-1.
Word inverse_word(const Word& w);

/// Free reduction: repeatedly cancels factors a a^-1.
Word reduce_word(const Word& w);

/// Renders a word as whitespace-separated tokens; the empty word prints as "1".
std::string format_word(const InvolutiveAlphabet& alphabet, const Word& w);

/// Parses whitespace-separated tokens; "1" denotes the empty word.
/// Throws std::invalid_argument on an unknown token.
Word parse_word(const InvolutiveAlphabet& alphabet, std::string_view text);

}  // namespace stallings

#endif
