#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "specs.hpp"
#include "stallings/group_document.hpp"

using namespace stallings;

namespace {

// table-driven word problem for a finite factor (independent of section-kit)
WordProblemFn table_wp(const FiniteGroup& g, std::vector<std::size_t> genmap, Letter offset) {
  return [g, genmap = std::move(genmap), offset](const Word& w) {
    std::size_t acc = g.identity;
    for (Letter a : w) acc = g.mul(acc, genmap.at(a - offset));
    return acc == g.identity;
  };
}

struct AmalgamFixture {
  GroupSpecPtr spec;
  const AmalgamNode* node;
  WordProblemFn left_wp, right_wp;
};

AmalgamFixture amalgam_fixture(const std::string& json) {
  AmalgamFixture f;
  f.spec = parse_group_document(json);
  f.node = &std::get<AmalgamNode>(f.spec->node());
  const auto& left = std::get<FiniteNode>(f.node->left->node());
  const auto& right = std::get<FiniteNode>(f.node->right->node());
  Letter offset = static_cast<Letter>(f.node->left->alphabet()->letter_count());
  f.left_wp = table_wp(left.group, left.genmap, 0);
  f.right_wp = table_wp(right.group, right.genmap, offset);
  return f;
}

}  // namespace

TEST_CASE("validate_spec accepts the standard examples") {
  auto d = amalgam_fixture(specs::d_infinity());
  CHECK(validate_spec(*d.node, d.left_wp, d.right_wp).ok);

  auto sl2 = amalgam_fixture(specs::z4_z2_z6());
  CHECK(validate_spec(*sl2.node, sl2.left_wp, sl2.right_wp).ok);

  auto hnn_spec = parse_group_document(specs::z2_hnn());
  const auto& hnn_node = std::get<HnnNode>(hnn_spec->node());
  const auto& base = std::get<FiniteNode>(hnn_node.base->node());
  CHECK(validate_spec(hnn_node, table_wp(base.group, base.genmap, 0)).ok);
}

TEST_CASE("validate_spec reports corrupted tables naming the triple") {
  auto f = amalgam_fixture(specs::d_infinity());
  AmalgamNode broken = *f.node;
  // identity and inverses hold, but q*(q*p) != (q*q)*p
  broken.h = FiniteGroup{{"e", "p", "q"}, 0, {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}};
  broken.phi1 = {Word{}, Word{}, Word{}};
  broken.phi2 = {Word{}, Word{}, Word{}};
  ValidationReport report = validate_spec(broken, f.left_wp, f.right_wp);
  CHECK_FALSE(report.ok);
  CHECK(report.message.find("associativity fails") != std::string::npos);
  CHECK(report.message.find("q") != std::string::npos);

  AmalgamNode no_inverse = *f.node;
  no_inverse.h = FiniteGroup{{"e", "h"}, 0, {{0, 1}, {1, 1}}};  // h*h = h
  no_inverse.phi1 = {Word{}, Word{}};
  no_inverse.phi2 = {Word{}, Word{}};
  report = validate_spec(no_inverse, f.left_wp, f.right_wp);
  CHECK_FALSE(report.ok);
  CHECK(report.message.find("no inverse") != std::string::npos);
}

TEST_CASE("validate_spec rejects non-homomorphic and non-injective maps") {
  auto sl2 = amalgam_fixture(specs::z4_z2_z6());
  AmalgamNode bad = *sl2.node;
  bad.phi1[1] = parse_word(*bad.left->alphabet(), "a");  // a has order 4, h order 2
  ValidationReport report = validate_spec(bad, sl2.left_wp, sl2.right_wp);
  CHECK_FALSE(report.ok);
  CHECK(report.message.find("phi1") != std::string::npos);

  AmalgamNode collapse = *sl2.node;
  collapse.phi1[1] = Word{};  // sends h to 1: not injective
  report = validate_spec(collapse, sl2.left_wp, sl2.right_wp);
  CHECK_FALSE(report.ok);
}

TEST_CASE("amalgam reduced forms") {
  auto d = amalgam_fixture(specs::d_infinity());
  const InvolutiveAlphabet& alphabet = *d.spec->alphabet();

  // the identity has the single empty syllable (||1|| = 1 convention)
  auto one = amalgam_reduced_form({}, *d.node, alphabet, d.left_wp, d.right_wp);
  REQUIRE(one.length() == 1);
  CHECK(one.syllables[0].word.empty());

  // abab stays a 4-syllable alternating form
  auto abab = amalgam_reduced_form(parse_word(alphabet, "a b a b"), *d.node, alphabet, d.left_wp,
                                   d.right_wp);
  CHECK(abab.length() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(abab.syllables[i].factor == static_cast<int>(i % 2));

  // SL2-type collapse: a^2 b^3 = phi1(h) phi2(h) is an H-product of length 1
  auto sl2 = amalgam_fixture(specs::z4_z2_z6());
  auto collapsed = amalgam_reduced_form(parse_word(*sl2.spec->alphabet(), "a a b b b"), *sl2.node,
                                        *sl2.spec->alphabet(), sl2.left_wp, sl2.right_wp);
  CHECK(collapsed.length() == 1);
}

TEST_CASE("amalgam reduced-form length is an invariant") {
  auto d = amalgam_fixture(specs::d_infinity());
  const InvolutiveAlphabet& alphabet = *d.spec->alphabet();
  auto oracle = oracles::d_infinity_oracle();
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<Letter> letter(0, 3);
  std::uniform_int_distribution<int> len(0, 6);
  for (int i = 0; i < 60; ++i) {
    Word w;
    for (int k = len(rng); k > 0; --k) w.push_back(letter(rng));
    auto base_form = amalgam_reduced_form(w, *d.node, alphabet, d.left_wp, d.right_wp);

    // padding with u u^-1 factors leaves ||g|| unchanged
    Word padded = w;
    Word pad;
    for (int k = len(rng) + 1; k > 0; --k) pad.push_back(letter(rng));
    Word pad_inv = inverse_word(pad);
    std::uniform_int_distribution<std::size_t> pos(0, padded.size());
    std::size_t at = pos(rng);
    padded.insert(padded.begin() + at, pad_inv.begin(), pad_inv.end());
    padded.insert(padded.begin() + at, pad.begin(), pad.end());
    auto padded_form = amalgam_reduced_form(padded, *d.node, alphabet, d.left_wp, d.right_wp);
    CHECK(base_form.length() == padded_form.length());

    // the normal-form oracle agrees on syllable counts for nontrivial words
    auto nf = oracle.normal_form(w);
    if (!nf.empty()) CHECK(base_form.length() == nf.size());
  }
}

TEST_CASE("equal amalgam elements via H-insertions have equal length") {
  auto sl2 = amalgam_fixture(specs::z4_z2_z6());
  const InvolutiveAlphabet& alphabet = *sl2.spec->alphabet();
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<Letter> letter(0, 3);
  std::uniform_int_distribution<int> len(0, 5);
  Word hh1 = parse_word(alphabet, "a a");                 // phi1(h)
  Word hh2_inv = parse_word(alphabet, "b^-1 b^-1 b^-1");  // phi2(h)^-1
  for (int i = 0; i < 40; ++i) {
    Word w;
    for (int k = len(rng); k > 0; --k) w.push_back(letter(rng));
    Word same = w;
    // insert phi1(h) phi2(h)^-1, a relator of the amalgam
    std::uniform_int_distribution<std::size_t> pos(0, same.size());
    std::size_t at = pos(rng);
    Word relator = hh1;
    relator.insert(relator.end(), hh2_inv.begin(), hh2_inv.end());
    same.insert(same.begin() + at, relator.begin(), relator.end());
    auto f1 = amalgam_reduced_form(w, *sl2.node, alphabet, sl2.left_wp, sl2.right_wp);
    auto f2 = amalgam_reduced_form(same, *sl2.node, alphabet, sl2.left_wp, sl2.right_wp);
    CHECK(f1.length() == f2.length());
  }
}

TEST_CASE("hnn reduced forms") {
  auto spec = parse_group_document(specs::z2_hnn());
  const auto& node = std::get<HnnNode>(spec->node());
  const auto& base = std::get<FiniteNode>(node.base->node());
  WordProblemFn wp = table_wp(base.group, base.genmap, 0);
  const InvolutiveAlphabet& alphabet = *spec->alphabet();

  // base-only words have n = 0
  auto flat = hnn_reduced_form(parse_word(alphabet, "a a a"), node, alphabet, wp);
  CHECK(flat.length() == 0);
  CHECK(flat.base_words[0] == parse_word(alphabet, "a a a"));

  // t a t^-1 pinches to a (phi is the identity on H)
  auto pinch = hnn_reduced_form(parse_word(alphabet, "t a t^-1"), node, alphabet, wp);
  CHECK(pinch.length() == 0);
  CHECK(base.group.fold_word(base.genmap, pinch.base_words[0]) == 1);

  // iterated pinches: t a t a t^-1 a t^-1 collapses to the base element a
  auto iterated =
      hnn_reduced_form(parse_word(alphabet, "t a t a t^-1 a t^-1"), node, alphabet, wp);
  CHECK(iterated.length() == 0);
  CHECK(base.group.fold_word(base.genmap, iterated.base_words[0]) == 1);

  // the Britton oracle agrees that word equals a, and adding a trailing a kills it
  auto oracle = oracles::z2_hnn_oracle();
  CHECK_FALSE(oracle.is_identity(parse_word(alphabet, "t a t a t^-1 a t^-1")));
  Word with_extra = parse_word(alphabet, "t a t a t^-1 a t^-1 a");
  CHECK(oracle.is_identity(with_extra));
  auto full = hnn_reduced_form(with_extra, node, alphabet, wp);
  CHECK(full.length() == 0);
  CHECK(base.group.fold_word(base.genmap, full.base_words[0]) == 0);
}

TEST_CASE("hnn exponent sequences are stable under padding") {
  auto spec = parse_group_document(specs::z2_hnn());
  const auto& node = std::get<HnnNode>(spec->node());
  const auto& base = std::get<FiniteNode>(node.base->node());
  WordProblemFn wp = table_wp(base.group, base.genmap, 0);
  const InvolutiveAlphabet& alphabet = *spec->alphabet();
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<Letter> letter(0, 3);
  std::uniform_int_distribution<int> len(0, 6);
  for (int i = 0; i < 60; ++i) {
    Word w;
    for (int k = len(rng); k > 0; --k) w.push_back(letter(rng));
    auto f0 = hnn_reduced_form(w, node, alphabet, wp);

    Word padded = w;
    Word pad;
    for (int k = len(rng) + 1; k > 0; --k) pad.push_back(letter(rng));
    Word pad_inv = inverse_word(pad);
    std::uniform_int_distribution<std::size_t> pos(0, padded.size());
    std::size_t at = pos(rng);
    padded.insert(padded.begin() + at, pad_inv.begin(), pad_inv.end());
    padded.insert(padded.begin() + at, pad.begin(), pad.end());
    auto f1 = hnn_reduced_form(padded, node, alphabet, wp);
    CHECK(f0.exponents == f1.exponents);
  }
}
