#include "stallings/rational_ops.hpp"

#include <stdexcept>

namespace stallings {

Automaton reduced_words_automaton(AlphabetPtr alphabet) {
  // state 0 = start; state 1 + a = "last letter was a"
  std::size_t letters = alphabet->letter_count();
  std::vector<Edge> edges;
  std::vector<StateId> terminals;
  for (Letter a = 0; a < letters; ++a) {
    edges.push_back({0, a, static_cast<StateId>(1 + a)});
    for (Letter b = 0; b < letters; ++b) {
      if (b != inverse(a)) edges.push_back({static_cast<StateId>(1 + a), b, static_cast<StateId>(1 + b)});
    }
  }
  for (StateId q = 0; q < 1 + letters; ++q) terminals.push_back(q);
  return Automaton::from_parts(std::move(alphabet), 1 + letters, {0}, std::move(terminals),
                               std::move(edges));
}

namespace {

// Reflexive-transitive reachability matrix kept closed under every insertion.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * stride_, 0) {
    for (std::size_t i = 0; i < n; ++i) set(i, i);
  }

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + j / 64] >> (j % 64)) & 1u;
  }

  // Adds the edge (p, r) and restores transitive closure. A path through the
  // new edge twice contains a cycle, so one composition pass suffices.
  bool add_closed(std::size_t p, std::size_t r) {
    if (get(p, r)) return false;
    const std::vector<std::uint64_t> rrow(bits_.begin() + r * stride_,
                                          bits_.begin() + (r + 1) * stride_);
    for (std::size_t x = 0; x < n_; ++x) {
      if (!get(x, p)) continue;
      std::uint64_t* xrow = &bits_[x * stride_];
      for (std::size_t w = 0; w < stride_; ++w) xrow[w] |= rrow[w];
    }
    return true;
  }

 private:
  void set(std::size_t i, std::size_t j) { bits_[i * stride_ + j / 64] |= 1ull << (j % 64); }

  std::size_t n_;
  std::size_t stride_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

Automaton benois_reduce(const Automaton& input) {
  Automaton a = trim(input);
  if (a.num_states() == 0) return a;
  std::size_t n = a.num_states();
  BitMatrix silent(n);
  for (const Edge& e : a.edges()) {
    if (e.label == kSilent) silent.add_closed(e.src, e.dst);
  }
  // group letter edges by label
  std::vector<std::vector<std::pair<StateId, StateId>>> by_letter(a.alphabet()->letter_count());
  for (const Edge& e : a.edges()) {
    if (e.label != kSilent) by_letter[e.label].emplace_back(e.src, e.dst);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (Letter x = 0; x < a.alphabet()->letter_count(); ++x) {
      const auto& fwd = by_letter[x];
      const auto& bwd = by_letter[inverse(x)];
      for (const auto& [p, q] : fwd) {
        for (const auto& [q2, r] : bwd) {
          if (silent.get(q, q2) && silent.add_closed(p, r)) changed = true;
        }
      }
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : a.edges()) {
    if (e.label != kSilent) edges.push_back(e);
  }
  for (StateId p = 0; p < n; ++p) {
    for (StateId q = 0; q < n; ++q) {
      if (p != q && silent.get(p, q)) edges.push_back({p, kSilent, q});
    }
  }
  Automaton saturated = Automaton::from_parts(a.alphabet(), n, a.initials(), a.terminals(),
                                              std::move(edges));
  return trim(lang_intersection(saturated, reduced_words_automaton(a.alphabet())));
}

RationalSubstitution::RationalSubstitution(AlphabetPtr source, AlphabetPtr target)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(source_->letter_count()) {}

void RationalSubstitution::set_image(Letter a, Automaton image) {
  if (!source_->contains(a)) throw std::invalid_argument("substitution letter outside alphabet");
  if (*image.alphabet() != *target_) throw std::invalid_argument("substitution image alphabet mismatch");
  images_[a] = std::move(image);
}

bool RationalSubstitution::has_image(Letter a) const {
  return source_->contains(a) && (images_[a].has_value() || images_[inverse(a)].has_value());
}

const Automaton& RationalSubstitution::image(Letter a) const {
  if (!source_->contains(a)) throw std::invalid_argument("substitution letter outside alphabet");
  if (!images_[a]) {
    if (!images_[inverse(a)]) {
      throw std::invalid_argument("letter '" + source_->letter_name(a) +
                                  "' has no substitution image");
    }
    images_[a] = inverse_language(*images_[inverse(a)]);
  }
  return *images_[a];
}

Automaton substitute(const Automaton& a, const RationalSubstitution& s) {
  if (*a.alphabet() != *s.source()) throw std::invalid_argument("substitution source mismatch");
  std::vector<Edge> edges;
  std::size_t next = a.num_states();
  for (const Edge& e : a.edges()) {
    if (e.label == kSilent) {
      edges.push_back(e);
      continue;
    }
    const Automaton& img = s.image(e.label);
    // single-letter image: inline the edge
    if (img.num_states() == 2 && img.edges().size() == 1 && img.initials() == std::vector<StateId>{0} &&
        img.terminals() == std::vector<StateId>{1} && img.edges()[0].src == 0 &&
        img.edges()[0].dst == 1) {
      edges.push_back({e.src, img.edges()[0].label, e.dst});
      continue;
    }
    StateId base = static_cast<StateId>(next);
    next += img.num_states();
    for (const Edge& ie : img.edges()) {
      edges.push_back({base + ie.src, ie.label, base + ie.dst});
    }
    for (StateId q : img.initials()) edges.push_back({e.src, kSilent, base + q});
    for (StateId q : img.terminals()) edges.push_back({base + q, kSilent, e.dst});
  }
  return trim(Automaton::from_parts(s.target(), next, a.initials(), a.terminals(),
                                    std::move(edges)));
}

Automaton monoid_preimage(AlphabetPtr alphabet, const FiniteGroup& group,
                          const std::vector<std::size_t>& genmap,
                          const std::vector<std::size_t>& target) {
  group.validate();
  if (genmap.size() != alphabet->letter_count()) {
    throw std::invalid_argument("genmap must cover the full letter set");
  }
  for (Letter a = 0; a < alphabet->letter_count(); a += 2) {
    if (genmap[inverse(a)] != group.inv(genmap[a])) {
      throw std::invalid_argument("genmap not matched at letter '" + alphabet->letter_name(a) +
                                  "'");
    }
  }
  std::vector<Edge> edges;
  for (StateId g = 0; g < group.size(); ++g) {
    for (Letter a = 0; a < alphabet->letter_count(); ++a) {
      edges.push_back({g, a, static_cast<StateId>(group.mul(g, genmap[a]))});
    }
  }
  std::vector<StateId> terminals;
  for (std::size_t t : target) {
    if (t >= group.size()) throw std::invalid_argument("target element out of range");
    terminals.push_back(static_cast<StateId>(t));
  }
  return Automaton::from_parts(std::move(alphabet), group.size(),
                               {static_cast<StateId>(group.identity)}, std::move(terminals),
                               std::move(edges));
}

}  // namespace stallings
