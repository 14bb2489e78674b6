#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "stallings/alphabet.hpp"

namespace stallings::oracles {

namespace {

struct RawAutomaton {
  std::size_t num_states = 1;  // state 0 is the basepoint
  std::vector<Edge> edges;
};

void dedupe(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

Automaton naive_fold_stallings(AlphabetPtr alphabet, const std::vector<Word>& generators) {
  RawAutomaton raw;
  for (const Word& g : generators) {
    Word w = reduce_word(g);
    if (w.empty()) continue;
    StateId prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      StateId next = i + 1 == w.size() ? 0 : static_cast<StateId>(raw.num_states++);
      raw.edges.push_back({prev, w[i], next});
      raw.edges.push_back({next, inverse(w[i]), prev});
      prev = next;
    }
  }
  dedupe(raw.edges);

  // repeated-scan folding: merge the two targets of any equal-labeled pair
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < raw.edges.size() && !again; ++i) {
      for (std::size_t j = i + 1; j < raw.edges.size() && !again; ++j) {
        const Edge& e = raw.edges[i];
        const Edge& f = raw.edges[j];
        if (e.src == f.src && e.label == f.label && e.dst != f.dst) {
          StateId keep = std::min(e.dst, f.dst);
          StateId drop = std::max(e.dst, f.dst);
          for (Edge& g : raw.edges) {
            if (g.src == drop) g.src = keep;
            if (g.dst == drop) g.dst = keep;
            if (g.src > drop) --g.src;
            if (g.dst > drop) --g.dst;
          }
          --raw.num_states;
          dedupe(raw.edges);
          again = true;
        }
      }
    }
  }
  return Automaton::from_parts(std::move(alphabet), raw.num_states, {0}, {0}, raw.edges);
}

bool complete_automaton(const Automaton& a) {
  std::set<std::pair<StateId, Letter>> present;
  for (const Edge& e : a.edges()) present.insert({e.src, e.label});
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (Letter x = 0; x < a.alphabet()->letter_count(); ++x) {
      if (!present.count({q, x})) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> FreeProductOracle::normal_form(
    const Word& w) const {
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (Letter a : w) {
    auto [factor, element] = letter_images.at(a);
    if (!stack.empty() && stack.back().first == factor) {
      std::size_t combined = factors[factor].mul(stack.back().second, element);
      stack.pop_back();
      if (combined != factors[factor].identity) stack.emplace_back(factor, combined);
    } else if (element != factors[factor].identity) {
      stack.emplace_back(factor, element);
    }
  }
  return stack;
}

namespace {

FiniteGroup cyclic_group(std::size_t n) {
  FiniteGroup g;
  for (std::size_t i = 0; i < n; ++i) {
    g.elements.push_back(i == 0 ? "e" : "g" + std::to_string(i));
  }
  g.identity = 0;
  g.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g.table[i][j] = (i + j) % n;
  }
  return g;
}

}  // namespace

FreeProductOracle d_infinity_oracle() {
  FreeProductOracle o;
  o.factors = {cyclic_group(2), cyclic_group(2)};
  o.letter_images = {{0, 1}, {0, 1}, {1, 1}, {1, 1}};  // a, a^-1, b, b^-1
  return o;
}

FreeProductOracle z2_z3_oracle() {
  FreeProductOracle o;
  o.factors = {cyclic_group(2), cyclic_group(3)};
  o.letter_images = {{0, 1}, {0, 1}, {1, 1}, {1, 2}};  // a, a^-1, b, b^-1
  return o;
}

bool d_infinity_in_ab(const FreeProductOracle& oracle, const Word& w) {
  auto nf = oracle.normal_form(w);
  if (nf.empty()) return true;
  if (nf.size() % 2 != 0) return false;
  std::size_t first = nf.front().first;
  for (std::size_t i = 0; i < nf.size(); ++i) {
    if (nf[i].first != (first + i) % 2) return false;
  }
  // (ab)^k starts with factor 0 and ends with factor 1; inverses swap both
  return nf.front().first != nf.back().first;
}

bool BrittonOracle::is_identity(const Word& w) const {
  std::vector<std::size_t> elements{base.identity};
  std::vector<int> exponents;
  for (Letter a : w) {
    if (a == stable) {
      exponents.push_back(1);
      elements.push_back(base.identity);
    } else if (a == inverse(stable)) {
      exponents.push_back(-1);
      elements.push_back(base.identity);
    } else {
      elements.back() = base.mul(elements.back(), genmap.at(a));
    }
  }
  auto find_in = [&](const std::vector<std::size_t>& set, std::size_t g) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] == g) return static_cast<std::ptrdiff_t>(i);
    }
    return static_cast<std::ptrdiff_t>(-1);
  };
  bool pinched = true;
  while (pinched) {
    pinched = false;
    for (std::size_t i = 0; i + 1 < exponents.size(); ++i) {
      std::size_t mid = elements[i + 1];
      std::size_t replacement = 0;
      if (exponents[i] == 1 && exponents[i + 1] == -1) {
        auto idx = find_in(h_elements, mid);
        if (idx < 0) continue;
        replacement = h_phi[static_cast<std::size_t>(idx)];
      } else if (exponents[i] == -1 && exponents[i + 1] == 1) {
        auto idx = find_in(h_phi, mid);
        if (idx < 0) continue;
        replacement = h_elements[static_cast<std::size_t>(idx)];
      } else {
        continue;
      }
      std::size_t joined = base.mul(base.mul(elements[i], replacement), elements[i + 2]);
      elements.erase(elements.begin() + i, elements.begin() + i + 3);
      elements.insert(elements.begin() + i, joined);
      exponents.erase(exponents.begin() + i, exponents.begin() + i + 2);
      pinched = true;
      break;
    }
  }
  return exponents.empty() && elements[0] == base.identity;
}

BrittonOracle z2_hnn_oracle() {
  BrittonOracle o;
  o.base = cyclic_group(2);
  o.genmap = {1, 1};        // a, a^-1
  o.h_elements = {0, 1};    // H = K = Z2
  o.h_phi = {0, 1};         // phi = identity
  o.stable = 2;             // letter t
  return o;
}

std::vector<Word> all_words(const InvolutiveAlphabet& alphabet, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i) {
      for (Letter a = 0; a < alphabet.letter_count(); ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    start = end;
  }
  return out;
}

std::set<Word> brute_reduced(const Automaton& a, std::size_t enum_len, std::size_t keep_len) {
  std::set<Word> out;
  for (const Word& w : enumerate_accepted(a, enum_len)) {
    Word r = reduce_word(w);
    if (r.size() <= keep_len) out.insert(std::move(r));
  }
  return out;
}

std::set<Word> dyck_reduced_language(const Automaton& input, std::size_t max_len) {
  Automaton a = eliminate_silent(input);
  std::set<Word> out;
  if (a.num_states() == 0) return out;
  std::size_t n = a.num_states();
  std::vector<std::vector<bool>> z(n, std::vector<bool>(n, false));
  for (std::size_t p = 0; p < n; ++p) z[p][p] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    // cancellation rule: p -x-> q, (q,q') in Z, q' -x^-1-> r  =>  (p,r) in Z
    for (const Edge& e : a.edges()) {
      for (const Edge& f : a.edges()) {
        if (f.label != inverse(e.label)) continue;
        if (z[e.dst][f.src] && !z[e.src][f.dst]) {
          z[e.src][f.dst] = true;
          grew = true;
        }
      }
    }
    // composition rule
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (!z[p][q]) continue;
        for (std::size_t r = 0; r < n; ++r) {
          if (z[q][r] && !z[p][r]) {
            z[p][r] = true;
            grew = true;
          }
        }
      }
    }
  }
  auto close = [&](std::vector<bool> set) {
    std::vector<bool> closed(n, false);
    for (std::size_t p = 0; p < n; ++p) {
      if (!set[p]) continue;
      for (std::size_t q = 0; q < n; ++q) closed[q] = closed[q] || z[p][q];
    }
    return closed;
  };
  auto accepting = [&](const std::vector<bool>& set) {
    for (StateId t : a.terminals()) {
      if (set[t]) return true;
    }
    return false;
  };
  std::vector<bool> start(n, false);
  for (StateId q : a.initials()) start[q] = true;
  start = close(start);
  // walk reduced words only
  Word word;
  auto dfs = [&](auto&& self, const std::vector<bool>& set) -> void {
    if (accepting(set)) out.insert(word);
    if (word.size() == max_len) return;
    for (Letter x = 0; x < a.alphabet()->letter_count(); ++x) {
      if (!word.empty() && x == inverse(word.back())) continue;
      std::vector<bool> next(n, false);
      bool any = false;
      for (const Edge& e : a.edges()) {
        if (e.label == x && set[e.src]) {
          next[e.dst] = true;
          any = true;
        }
      }
      if (!any) continue;
      word.push_back(x);
      self(self, close(next));
      word.pop_back();
    }
  };
  dfs(dfs, start);
  return out;
}

}  // namespace stallings::oracles
