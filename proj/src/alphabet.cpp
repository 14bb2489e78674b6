#include "stallings/alphabet.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace stallings {

InvolutiveAlphabet::InvolutiveAlphabet(std::vector<std::string> positive)
    : positive_(std::move(positive)) {
  std::unordered_set<std::string> seen;
  for (const auto& name : positive_) {
    if (name.empty() || name == "1") {
      throw std::invalid_argument("invalid letter name: '" + name + "'");
    }
    if (name.find_first_of(" \t\n^") != std::string::npos) {
      throw std::invalid_argument("letter name may not contain whitespace or '^': '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw std::invalid_argument("duplicate letter name: '" + name + "'");
    }
  }
}

std::string InvolutiveAlphabet::letter_name(Letter a) const {
  if (!contains(a)) throw std::invalid_argument("letter outside alphabet");
  const std::string& base = positive_[a >> 1];
  return is_positive(a) ? base : base + "^-1";
}

std::optional<Letter> InvolutiveAlphabet::find(std::string_view token) const {
  bool inv = false;
  if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
    inv = true;
    token.remove_suffix(3);
  }
  for (std::size_t i = 0; i < positive_.size(); ++i) {
    if (positive_[i] == token) {
      Letter a = static_cast<Letter>(2 * i);
      return inv ? inverse(a) : a;
    }
  }
  return std::nullopt;
}

AlphabetPtr make_alphabet(std::vector<std::string> positive) {
  return std::make_shared<const InvolutiveAlphabet>(std::move(positive));
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Word reduce_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter a : w) {
    if (!out.empty() && out.back() == inverse(a)) {
      out.pop_back();
    } else {
      out.push_back(a);
    }
  }
  return out;
}

std::string format_word(const InvolutiveAlphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.letter_name(w[i]);
  }
  return out;
}

Word parse_word(const InvolutiveAlphabet& alphabet, std::string_view text) {
  Word out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    auto a = alphabet.find(token);
    if (!a) throw std::invalid_argument("unknown letter token: '" + token + "'");
    out.push_back(*a);
  }
  return out;
}

}  // namespace stallings
