#include "stallings/section.hpp"

#include <deque>
#include <istream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace stallings {

namespace {

constexpr char kSectionMagic[5] = {'S', 'T', 'S', 'E', 'C'};
constexpr unsigned char kSectionVersion = 1;

Automaton lift(const Automaton& a, const AlphabetPtr& parent, Letter offset) {
  std::vector<Letter> map(a.alphabet()->letter_count());
  for (Letter x = 0; x < map.size(); ++x) map[x] = x + offset;
  return relabel(a, parent, map);
}

Word shift_word(const Word& w, Letter offset) {
  Word out;
  out.reserve(w.size());
  for (Letter a : w) out.push_back(a - offset);
  return out;
}

std::vector<std::size_t> identity_genmap(const FiniteGroup& h) {
  std::vector<std::size_t> genmap(2 * h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    genmap[2 * i] = i;
    genmap[2 * i + 1] = h.inv(i);
  }
  return genmap;
}

AlphabetPtr fresh_alphabet(const FiniteGroup& h, const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(h.size());
  for (const auto& e : h.elements) names.push_back(prefix + e);
  return make_alphabet(std::move(names));
}

void check_glue(bool condition, const std::string& what) {
  if (!condition) throw SectionBuildError("glue invariant violated: " + what);
}

void check_relator_language(const Automaton& l) {
  check_glue(l.accepts_empty_word(), "1 in L");
  Automaton ll = lang_concat(l, l);
  check_glue(includes(ll, l) && includes(l, ll), "L L = L");
  check_glue(lang_equal(inverse_language(l), l), "L = L^-1");
}

Word random_reduced_word(std::mt19937_64& rng, const InvolutiveAlphabet& alphabet,
                         std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
  std::uniform_int_distribution<Letter> letter_dist(
      0, static_cast<Letter>(alphabet.letter_count() - 1));
  std::size_t len = len_dist(rng);
  Word w;
  while (w.size() < len) {
    Letter a = letter_dist(rng);
    if (!w.empty() && a == inverse(w.back())) continue;
    w.push_back(a);
  }
  return w;
}

void put_byte(std::ostream& out, unsigned char b) {
  out.write(reinterpret_cast<const char*>(&b), 1);
}

unsigned char get_byte(std::istream& in) {
  char b = 0;
  in.read(&b, 1);
  if (!in) throw std::runtime_error("truncated section file");
  return static_cast<unsigned char>(b);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) put_byte(out, static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(get_byte(in)) << (8 * i);
  return v;
}

}  // namespace

struct StallingsSection::SgCache {
  struct Entry {
    Automaton product;
    std::unordered_map<Letter, std::string> steps;
    std::optional<Automaton> s_g;
    std::optional<bool> meets_s1;
  };

  std::mutex mutex;
  std::unordered_map<std::string, Entry> map;
  std::string root;
};

std::string language_key(const Automaton& a) {
  std::ostringstream out;
  out << a.num_states() << '|';
  for (StateId q : a.initials()) out << q << ',';
  out << '|';
  for (StateId q : a.terminals()) out << q << ',';
  out << '|';
  for (const Edge& e : a.edges()) out << e.src << ':' << e.label << ':' << e.dst << ';';
  return out.str();
}

std::string SectionValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "pass" : "FAIL") << "  " << c.name;
    if (!c.passed && !c.witness.empty()) out << "  [witness: " << c.witness << "]";
    out << '\n';
  }
  out << (ok ? "section valid (sampled)" : "section INVALID") << '\n';
  return out.str();
}

// --- constructors ---

StallingsSection StallingsSection::free_group(AlphabetPtr alphabet) {
  if (alphabet->positive_count() == 0) {
    throw std::invalid_argument("free_group: empty alphabet");
  }
  StallingsSection sec;
  sec.alphabet_ = alphabet;
  sec.s_auto_ = minimize(reduced_words_automaton(alphabet));
  sec.s1_auto_ = minimize(Automaton::epsilon(alphabet));
  sec.letter_sections_.reserve(alphabet->letter_count());
  for (Letter a = 0; a < alphabet->letter_count(); ++a) {
    sec.letter_sections_.push_back(minimize(Automaton::single_word(alphabet, {a})));
  }
  sec.contains_empty_word_ = true;
  sec.extendable_ = true;
  sec.s1_nontrivial_ = false;
  sec.cache_ = std::make_shared<SgCache>();
  return sec;
}

StallingsSection StallingsSection::finite_group(AlphabetPtr alphabet, const FiniteGroup& group,
                                                const std::vector<std::size_t>& genmap) {
  group.validate();
  if (genmap.size() != alphabet->letter_count()) {
    throw std::invalid_argument("finite_group: genmap must cover the letter set");
  }
  // the m-epi must be onto: every element reachable from the identity
  {
    std::vector<bool> seen(group.size(), false);
    std::deque<std::size_t> queue{group.identity};
    seen[group.identity] = true;
    while (!queue.empty()) {
      std::size_t g = queue.front();
      queue.pop_front();
      for (Letter a = 0; a < alphabet->letter_count(); ++a) {
        std::size_t next = group.mul(g, genmap[a]);
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    }
    for (std::size_t g = 0; g < group.size(); ++g) {
      if (!seen[g]) {
        throw std::invalid_argument("finite_group: generators do not reach element '" +
                                    group.elements[g] + "'");
      }
    }
  }
  StallingsSection sec;
  sec.alphabet_ = alphabet;
  sec.s_auto_ = minimize(reduced_words_automaton(alphabet));
  sec.s1_auto_ =
      minimize(benois_reduce(monoid_preimage(alphabet, group, genmap, {group.identity})));
  sec.letter_sections_.reserve(alphabet->letter_count());
  for (Letter a = 0; a < alphabet->letter_count(); ++a) {
    sec.letter_sections_.push_back(
        minimize(benois_reduce(monoid_preimage(alphabet, group, genmap, {genmap[a]}))));
  }
  sec.contains_empty_word_ = true;
  sec.extendable_ = true;
  sec.s1_nontrivial_ = group.size() > 1;
  sec.cache_ = std::make_shared<SgCache>();
  return sec;
}

StallingsSection StallingsSection::amalgam(const StallingsSection& left,
                                           const StallingsSection& right, const GroupSpec& spec) {
  if (!spec.is_amalgam()) throw std::invalid_argument("amalgam: spec is not an amalgam");
  const AmalgamNode& node = std::get<AmalgamNode>(spec.node());
  const AlphabetPtr& parent = spec.alphabet();
  if (*node.left->alphabet() != *left.alphabet() ||
      *node.right->alphabet() != *right.alphabet()) {
    throw std::invalid_argument("amalgam: factor sections do not match the spec");
  }
  Letter offset = static_cast<Letter>(left.alphabet()->letter_count());
  if (parent->positive_count() !=
      left.alphabet()->positive_count() + right.alphabet()->positive_count()) {
    throw std::invalid_argument("amalgam: parent alphabet is not the factor union");
  }

  // per-H-element representative languages from both factors
  std::vector<Automaton> s_im, t_im;
  s_im.reserve(node.h.size());
  t_im.reserve(node.h.size());
  for (std::size_t i = 0; i < node.h.size(); ++i) {
    s_im.push_back(lift(left.s_of_g(node.phi1[i]), parent, 0));
    t_im.push_back(lift(right.s_of_g(shift_word(node.phi2[i], offset)), parent, offset));
  }

  AlphabetPtr b_alphabet = fresh_alphabet(node.h, "b_");
  RationalSubstitution xi(b_alphabet, parent);
  for (std::size_t i = 0; i < node.h.size(); ++i) {
    xi.set_image(static_cast<Letter>(2 * i), minimize(lang_union(s_im[i], t_im[i])));
  }
  Automaton l_auto = minimize(substitute(
      monoid_preimage(b_alphabet, node.h, identity_genmap(node.h), {node.h.identity}), xi));
  check_relator_language(l_auto);

  Automaton s_lift = lift(left.s_automaton(), parent, 0);
  Automaton t_lift = lift(right.s_automaton(), parent, offset);
  Automaton s_union = Automaton::empty(parent);
  Automaton t_union = Automaton::empty(parent);
  for (std::size_t i = 0; i < node.h.size(); ++i) {
    s_union = lang_union(s_union, s_im[i]);
    t_union = lang_union(t_union, t_im[i]);
  }
  Automaton sprime = minimize(lang_difference(s_lift, s_union));
  Automaton tprime = minimize(lang_difference(t_lift, t_union));
  check_glue(is_empty_lang(lang_intersection(sprime, s_union)), "S' misses the H classes");
  check_glue(is_empty_lang(lang_intersection(tprime, t_union)), "T' misses the H classes");

  auto wrap = [&](const Automaton& x) { return lang_concat(l_auto, lang_concat(x, l_auto)); };
  Automaton part1 = wrap(s_lift);
  Automaton part2 = wrap(t_lift);
  Automaton ls = lang_concat(l_auto, sprime);
  Automaton lt = lang_concat(l_auto, tprime);
  Automaton head = lang_union(Automaton::epsilon(parent), ls);
  Automaton loop = lang_star(lang_concat(lt, ls));
  Automaton tail = lang_union(l_auto, lang_concat(lt, l_auto));
  Automaton part3 = lang_concat(head, lang_concat(loop, tail));

  StallingsSection sec;
  sec.alphabet_ = parent;
  sec.s_auto_ = minimize(benois_reduce(lang_union(part1, lang_union(part2, part3))));
  sec.s1_auto_ = minimize(benois_reduce(l_auto));
  sec.letter_sections_.reserve(parent->letter_count());
  for (Letter a = 0; a < parent->letter_count(); ++a) {
    Automaton base = a < offset ? lift(left.letter_section(a), parent, 0)
                                : lift(right.letter_section(a - offset), parent, offset);
    sec.letter_sections_.push_back(minimize(benois_reduce(wrap(base))));
  }
  sec.contains_empty_word_ = sec.s_auto_.accepts_empty_word();
  sec.extendable_ = left.extendable_by_construction() && right.extendable_by_construction();
  sec.s1_nontrivial_ = node.h.size() > 1 || left.s1_nontrivial() || right.s1_nontrivial();
  sec.amalgam_glue_ = AmalgamGlue{b_alphabet, l_auto, sprime, tprime};
  sec.cache_ = std::make_shared<SgCache>();
  return sec;
}

StallingsSection StallingsSection::hnn(const StallingsSection& base, const GroupSpec& spec) {
  if (!spec.is_hnn()) throw std::invalid_argument("hnn: spec is not an HNN extension");
  const HnnNode& node = std::get<HnnNode>(spec.node());
  const AlphabetPtr& parent = spec.alphabet();
  if (*node.base->alphabet() != *base.alphabet()) {
    throw std::invalid_argument("hnn: base section does not match the spec");
  }
  if (parent->positive_count() != base.alphabet()->positive_count() + 1 ||
      node.stable != static_cast<Letter>(base.alphabet()->letter_count())) {
    throw std::invalid_argument("hnn: parent alphabet must append the stable letter");
  }
  Letter b = node.stable;
  Automaton b_pos = Automaton::single_word(parent, {b});
  Automaton b_neg = Automaton::single_word(parent, {inverse(b)});

  std::vector<Automaton> h_im, hphi_im;
  h_im.reserve(node.h.size());
  hphi_im.reserve(node.h.size());
  for (std::size_t i = 0; i < node.h.size(); ++i) {
    h_im.push_back(lift(base.s_of_g(node.incl[i]), parent, 0));
    hphi_im.push_back(lift(base.s_of_g(node.phi[i]), parent, 0));
  }
  Automaton s_h = Automaton::empty(parent);
  Automaton s_hphi = Automaton::empty(parent);
  for (std::size_t i = 0; i < node.h.size(); ++i) {
    s_h = lang_union(s_h, h_im[i]);
    s_hphi = lang_union(s_hphi, hphi_im[i]);
  }
  s_h = minimize(s_h);
  s_hphi = minimize(s_hphi);

  AlphabetPtr c_alphabet = fresh_alphabet(node.h, "c_");
  RationalSubstitution xi(c_alphabet, parent);
  for (std::size_t i = 0; i < node.h.size(); ++i) {
    xi.set_image(static_cast<Letter>(2 * i),
                 minimize(lang_union(h_im[i], lang_concat(b_neg, lang_concat(hphi_im[i], b_pos)))));
  }
  Automaton l_auto = minimize(substitute(
      monoid_preimage(c_alphabet, node.h, identity_genmap(node.h), {node.h.identity}), xi));
  check_relator_language(l_auto);

  Automaton s_lift = lift(base.s_automaton(), parent, 0);
  Automaton b_any = minimize(lang_union(b_pos, b_neg));
  Automaton skeleton = lang_concat(lang_star(lang_concat(s_lift, b_any)), s_lift);
  Automaton forbidden = lang_union(lang_concat(b_pos, lang_concat(s_h, b_neg)),
                                   lang_concat(b_neg, lang_concat(s_hphi, b_pos)));
  Automaton sigma = Automaton::all_words(parent);
  Automaton bad = lang_concat(sigma, lang_concat(forbidden, sigma));
  Automaton n_auto = minimize(lang_difference(skeleton, bad));
  check_glue(is_empty_lang(lang_intersection(n_auto, bad)), "N avoids pinch factors");

  RationalSubstitution alpha(parent, parent);
  for (Letter a = 0; a < b; a += 2) {
    alpha.set_image(a, Automaton::single_word(parent, {a}));
  }
  alpha.set_image(b, minimize(lang_concat(b_pos, l_auto)));
  alpha.set_image(inverse(b), minimize(lang_concat(l_auto, b_neg)));

  StallingsSection sec;
  sec.alphabet_ = parent;
  sec.s_auto_ = minimize(benois_reduce(substitute(n_auto, alpha)));
  Automaton s1_lift = lift(base.s1_automaton(), parent, 0);
  sec.s1_auto_ = s1_lift;
  sec.letter_sections_.reserve(parent->letter_count());
  for (Letter a = 0; a < parent->letter_count(); ++a) {
    if (a < b) {
      sec.letter_sections_.push_back(lift(base.letter_section(a), parent, 0));
    } else if (a == b) {
      sec.letter_sections_.push_back(minimize(benois_reduce(
          lang_concat(s1_lift, lang_concat(b_pos, lang_concat(l_auto, s1_lift))))));
    } else {
      sec.letter_sections_.push_back(minimize(inverse_language(sec.letter_sections_[b])));
    }
  }
  sec.contains_empty_word_ = sec.s_auto_.accepts_empty_word();
  sec.extendable_ = base.extendable_by_construction();
  sec.s1_nontrivial_ = base.s1_nontrivial();
  sec.hnn_glue_ = HnnGlue{c_alphabet, l_auto, n_auto, std::move(alpha)};
  sec.cache_ = std::make_shared<SgCache>();
  return sec;
}

// --- queries ---

// Walks the running-product cache along `w`: states are canonical signatures
// of the reduced product S_{a_1π} ... S_{a_kπ}, so word-equivalent prefixes
// share both the walk and the derived answers. Requires the cache lock.
std::string StallingsSection::walk_key_locked(const Word& w) const {
  if (cache_->root.empty()) {
    Automaton root = minimize(Automaton::epsilon(alphabet_));
    cache_->root = language_key(root);
    cache_->map.try_emplace(cache_->root, SgCache::Entry{std::move(root), {}, {}, {}});
  }
  std::string key = cache_->root;
  for (Letter a : w) {
    SgCache::Entry& entry = cache_->map.at(key);
    auto it = entry.steps.find(a);
    if (it != entry.steps.end()) {
      key = it->second;
      continue;
    }
    Automaton next = minimize(benois_reduce(lang_concat(entry.product, letter_sections_[a])));
    std::string next_key = language_key(next);
    cache_->map.try_emplace(next_key, SgCache::Entry{std::move(next), {}, {}, {}});
    cache_->map.at(key).steps.emplace(a, next_key);
    key = std::move(next_key);
  }
  return key;
}

Automaton StallingsSection::s_of_g(const Word& w) const {
  if (w.empty()) return s1_auto_;
  for (Letter a : w) {
    if (!alphabet_->contains(a)) throw std::invalid_argument("s_of_g: letter outside alphabet");
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  SgCache::Entry& entry = cache_->map.at(walk_key_locked(w));
  if (!entry.s_g) entry.s_g = minimize(lang_intersection(entry.product, s_auto_));
  return *entry.s_g;
}

bool StallingsSection::word_problem(const Word& w) const {
  if (w.empty()) return true;
  for (Letter a : w) {
    if (!alphabet_->contains(a)) throw std::invalid_argument("word_problem: letter outside alphabet");
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  SgCache::Entry& entry = cache_->map.at(walk_key_locked(w));
  if (!entry.meets_s1) {
    entry.meets_s1 = !is_empty_lang(lang_intersection(entry.product, s1_auto_));
  }
  return *entry.meets_s1;
}

Automaton StallingsSection::s_of_rational(const Automaton& l) const {
  if (*l.alphabet() != *alphabet_) throw std::invalid_argument("s_of_rational: alphabet mismatch");
  RationalSubstitution phi(alphabet_, alphabet_);
  for (Letter a = 0; a < alphabet_->letter_count(); ++a) phi.set_image(a, letter_sections_[a]);
  Automaton image = benois_reduce(substitute(l, phi));
  Automaton result = lang_intersection(image, s_auto_);
  if (l.accepts_empty_word()) result = lang_union(result, s1_auto_);
  return minimize(result);
}

StallingsSection StallingsSection::transport(AlphabetPtr new_alphabet,
                                             const std::vector<Word>& newgen,
                                             std::size_t search_limit) const {
  if (newgen.size() != new_alphabet->positive_count()) {
    throw std::invalid_argument("transport: one image word per new positive letter");
  }
  for (const Word& w : newgen) {
    for (Letter a : w) {
      if (!alphabet_->contains(a)) {
        throw std::invalid_argument("transport: image word letter outside old alphabet");
      }
    }
  }
  auto expand = [&](const Word& w) {
    Word out;
    for (Letter x : w) {
      Word piece = is_positive(x) ? newgen[x >> 1] : inverse_word(newgen[x >> 1]);
      out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
  };

  // Express each old generator over the new letters; terminates only if the
  // new images generate the group (the caller's stated assumption).
  std::vector<Word> phi_images(alphabet_->positive_count());
  for (std::size_t i = 0; i < alphabet_->positive_count(); ++i) {
    Word target = {alphabet_->positive_letter(i)};
    std::deque<Word> queue{Word{}};
    std::size_t explored = 0;
    bool found = false;
    while (!queue.empty()) {
      Word candidate = queue.front();
      queue.pop_front();
      if (++explored > search_limit) break;
      Word probe = expand(candidate);
      Word check = probe;
      Word tgt_inv = inverse_word(target);
      check.insert(check.end(), tgt_inv.begin(), tgt_inv.end());
      if (word_problem(check)) {
        phi_images[i] = candidate;
        found = true;
        break;
      }
      for (Letter x = 0; x < new_alphabet->letter_count(); ++x) {
        if (!candidate.empty() && x == inverse(candidate.back())) continue;
        Word next = candidate;
        next.push_back(x);
        queue.push_back(std::move(next));
      }
    }
    if (!found) {
      throw std::runtime_error("transport: could not express generator '" +
                               alphabet_->positive_name(i) +
                               "' over the new letters within the search limit");
    }
  }

  RationalSubstitution phi(alphabet_, new_alphabet);
  for (std::size_t i = 0; i < alphabet_->positive_count(); ++i) {
    phi.set_image(alphabet_->positive_letter(i),
                  minimize(Automaton::single_word(new_alphabet, phi_images[i])));
  }
  auto carry = [&](const Automaton& a) { return minimize(benois_reduce(substitute(a, phi))); };

  StallingsSection sec;
  sec.alphabet_ = new_alphabet;
  sec.s_auto_ = carry(s_auto_);
  sec.s1_auto_ = carry(s1_auto_);
  sec.letter_sections_.reserve(new_alphabet->letter_count());
  for (Letter x = 0; x < new_alphabet->letter_count(); ++x) {
    if (is_positive(x)) {
      sec.letter_sections_.push_back(carry(s_of_g(newgen[x >> 1])));
    } else {
      sec.letter_sections_.push_back(minimize(inverse_language(sec.letter_sections_[inverse(x)])));
    }
  }
  sec.contains_empty_word_ = sec.s_auto_.accepts_empty_word();
  // Extendability is proved for the base constructions only; a transported
  // section does not carry the flag.
  sec.extendable_ = false;
  sec.s1_nontrivial_ = !includes(sec.s1_auto_, Automaton::epsilon(new_alphabet));
  sec.cache_ = std::make_shared<SgCache>();
  return sec;
}

SectionValidationReport StallingsSection::validate(std::size_t budget, std::uint64_t seed) const {
  SectionValidationReport report;
  auto add = [&](std::string name, bool passed, std::string witness = "") {
    report.checks.push_back({std::move(name), passed, std::move(witness)});
    report.ok = report.ok && passed;
  };

  Automaton reduced = reduced_words_automaton(alphabet_);
  add("S subset of R_A", includes(s_auto_, reduced));
  add("S = S^-1", lang_equal(inverse_language(s_auto_), s_auto_));
  add("1 in S matches flag", s_auto_.accepts_empty_word() == contains_empty_word_);
  add("S_1 subset of S", includes(s1_auto_, s_auto_));
  add("s1_nontrivial matches flag",
      s1_nontrivial_ == !includes(s1_auto_, Automaton::epsilon(alphabet_)));
  for (Letter a = 0; a < alphabet_->letter_count(); ++a) {
    bool sub = includes(letter_sections_[a], s_auto_);
    add("S_" + alphabet_->letter_name(a) + " subset of S", sub);
    if (is_positive(a)) {
      bool inv_ok =
          lang_equal(letter_sections_[inverse(a)], inverse_language(letter_sections_[a]));
      add("S_" + alphabet_->letter_name(inverse(a)) + " is the inverse language", inv_ok);
    }
  }

  std::mt19937_64 rng(seed);
  bool nonempty_ok = true;
  std::string nonempty_witness;
  for (std::size_t i = 0; i < std::min<std::size_t>(budget, 50); ++i) {
    Word w = random_reduced_word(rng, *alphabet_, 5);
    if (is_empty_lang(s_of_g(w))) {
      nonempty_ok = false;
      nonempty_witness = format_word(*alphabet_, w);
      break;
    }
  }
  add("sampled S_g nonempty", nonempty_ok, nonempty_witness);

  bool s2_ok = true;
  std::string s2_witness;
  for (std::size_t i = 0; i < budget && s2_ok; ++i) {
    Word u = random_reduced_word(rng, *alphabet_, 4);
    Word v = random_reduced_word(rng, *alphabet_, 4);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    Automaton lhs = s_of_g(uv);
    Automaton rhs = benois_reduce(lang_concat(s_of_g(u), s_of_g(v)));
    if (!includes(lhs, rhs)) {
      s2_ok = false;
      auto bad = shortest_accepted_word(lang_difference(lhs, rhs));
      s2_witness = "u=" + format_word(*alphabet_, u) + " v=" + format_word(*alphabet_, v);
      if (bad) s2_witness += " missing=" + format_word(*alphabet_, *bad);
    }
  }
  add("sampled (S2) inclusions", s2_ok, s2_witness);
  return report;
}

// --- persistence ---

void StallingsSection::save(std::ostream& out) const {
  out.write(kSectionMagic, sizeof(kSectionMagic));
  put_byte(out, kSectionVersion);
  write_alphabet(out, *alphabet_);
  unsigned char flags = 0;
  if (contains_empty_word_) flags |= 1;
  if (extendable_) flags |= 2;
  if (s1_nontrivial_) flags |= 4;
  put_byte(out, flags);
  write_binary(out, s_auto_);
  write_binary(out, s1_auto_);
  put_u32(out, static_cast<std::uint32_t>(letter_sections_.size()));
  for (const Automaton& a : letter_sections_) write_binary(out, a);
  put_u32(out, static_cast<std::uint32_t>(group_json_.size()));
  out.write(group_json_.data(), static_cast<std::streamsize>(group_json_.size()));
}

StallingsSection StallingsSection::load(std::istream& in) {
  char magic[sizeof(kSectionMagic)];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(std::begin(magic), std::end(magic), std::begin(kSectionMagic))) {
    throw std::runtime_error("not a section file");
  }
  if (get_byte(in) != kSectionVersion) throw std::runtime_error("unsupported section version");
  StallingsSection sec;
  sec.alphabet_ = read_alphabet(in);
  unsigned char flags = get_byte(in);
  sec.contains_empty_word_ = flags & 1;
  sec.extendable_ = flags & 2;
  sec.s1_nontrivial_ = flags & 4;
  sec.s_auto_ = read_binary(in);
  sec.s1_auto_ = read_binary(in);
  std::uint32_t count = get_u32(in);
  sec.letter_sections_.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) sec.letter_sections_.push_back(read_binary(in));
  std::uint32_t json_len = get_u32(in);
  sec.group_json_.resize(json_len);
  in.read(sec.group_json_.data(), json_len);
  if (!in) throw std::runtime_error("truncated section file");
  if (count != sec.alphabet_->letter_count()) {
    throw std::runtime_error("section file letter count mismatch");
  }
  sec.cache_ = std::make_shared<SgCache>();
  return sec;
}

StallingsSection StallingsSection::with_letter_section(Letter a, Automaton replacement) const {
  StallingsSection sec = *this;
  sec.letter_sections_[a] = minimize(replacement);
  sec.cache_ = std::make_shared<SgCache>();
  return sec;
}

}  // namespace stallings
