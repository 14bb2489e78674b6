#include "stallings/group_document.hpp"

#include <json.hpp>

#include <stdexcept>

namespace stallings {

namespace {

using nlohmann::json;

FiniteGroup parse_group_table(const json& j) {
  FiniteGroup g;
  if (!j.contains("elements") || !j.contains("identity") || !j.contains("table")) {
    throw std::invalid_argument("group table needs 'elements', 'identity' and 'table'");
  }
  for (const auto& e : j.at("elements")) g.elements.push_back(e.get<std::string>());
  g.identity = g.element_index(j.at("identity").get<std::string>());
  for (const auto& row : j.at("table")) {
    std::vector<std::size_t> r;
    for (const auto& cell : row) r.push_back(g.element_index(cell.get<std::string>()));
    g.table.push_back(std::move(r));
  }
  return g;
}

std::vector<Word> parse_h_map(const json& j, const FiniteGroup& h,
                              const InvolutiveAlphabet& alphabet, const std::string& what) {
  std::vector<Word> words(h.size());
  std::vector<bool> seen(h.size(), false);
  for (const auto& [name, value] : j.items()) {
    std::size_t i = h.element_index(name);
    words[i] = parse_word(alphabet, value.get<std::string>());
    seen[i] = true;
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!seen[i]) {
      throw std::invalid_argument(what + " is missing element '" + h.elements[i] + "'");
    }
  }
  return words;
}

std::vector<std::string> positive_names(const InvolutiveAlphabet& a) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.positive_count(); ++i) names.push_back(a.positive_name(i));
  return names;
}

GroupSpecPtr parse_document(const json& doc) {
  if (!doc.contains("alphabet") || !doc.contains("group")) {
    throw std::invalid_argument("group document needs 'alphabet' and 'group'");
  }
  std::vector<std::string> names;
  for (const auto& n : doc.at("alphabet")) names.push_back(n.get<std::string>());
  AlphabetPtr alphabet = make_alphabet(names);
  const json& group = doc.at("group");
  if (!group.is_object() || group.size() != 1) {
    throw std::invalid_argument("'group' must be a single-key tagged object");
  }

  if (group.contains("free")) {
    if (alphabet->positive_count() == 0) {
      throw std::invalid_argument("free group needs a nonempty alphabet");
    }
    return std::make_shared<GroupSpec>(alphabet, FreeNode{});
  }

  if (group.contains("finite")) {
    const json& body = group.at("finite");
    FiniteNode node;
    node.group = parse_group_table(body);
    node.group.validate();
    std::vector<std::size_t> positive;
    const json& genmap = body.at("genmap");
    for (std::size_t i = 0; i < alphabet->positive_count(); ++i) {
      const std::string& name = alphabet->positive_name(i);
      if (!genmap.contains(name)) {
        throw std::invalid_argument("genmap is missing letter '" + name + "'");
      }
      positive.push_back(node.group.element_index(genmap.at(name).get<std::string>()));
    }
    node.genmap = matched_genmap(*alphabet, node.group, positive);
    return std::make_shared<GroupSpec>(alphabet, std::move(node));
  }

  if (group.contains("amalgam")) {
    const json& body = group.at("amalgam");
    AmalgamNode node;
    node.left = parse_document(body.at("left"));
    node.right = parse_document(body.at("right"));
    node.h = parse_group_table(body.at("h"));
    node.h.validate();
    // parent alphabet = left positives then right positives
    std::vector<std::string> expected = positive_names(*node.left->alphabet());
    for (const auto& n : positive_names(*node.right->alphabet())) expected.push_back(n);
    if (names != expected) {
      throw std::invalid_argument("amalgam alphabet must be the left letters then the right letters");
    }
    Letter offset = static_cast<Letter>(node.left->alphabet()->letter_count());
    node.phi1 = parse_h_map(body.at("phi1"), node.h, *node.left->alphabet(), "phi1");
    std::vector<Word> phi2 = parse_h_map(body.at("phi2"), node.h, *node.right->alphabet(), "phi2");
    for (Word& w : phi2) {
      for (Letter& a : w) a += offset;
    }
    node.phi2 = std::move(phi2);
    return std::make_shared<GroupSpec>(alphabet, std::move(node));
  }

  if (group.contains("hnn")) {
    const json& body = group.at("hnn");
    HnnNode node;
    node.base = parse_document(body.at("base"));
    node.h = parse_group_table(body.at("h"));
    node.h.validate();
    std::string stable = body.at("stable").get<std::string>();
    std::vector<std::string> expected = positive_names(*node.base->alphabet());
    expected.push_back(stable);
    if (names != expected) {
      throw std::invalid_argument("hnn alphabet must be the base letters then the stable letter");
    }
    node.stable = static_cast<Letter>(node.base->alphabet()->letter_count());
    node.incl = parse_h_map(body.at("incl"), node.h, *node.base->alphabet(), "incl");
    node.phi = parse_h_map(body.at("phi"), node.h, *node.base->alphabet(), "phi");
    return std::make_shared<GroupSpec>(alphabet, std::move(node));
  }

  throw std::invalid_argument("unknown group tag (expected free/finite/amalgam/hnn)");
}

}  // namespace

GroupSpecPtr parse_group_document(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  return parse_document(doc);
}

StallingsSection build_section(const GroupSpecPtr& spec) {
  if (spec->is_free()) {
    return StallingsSection::free_group(spec->alphabet());
  }
  if (spec->is_finite()) {
    const auto& node = std::get<FiniteNode>(spec->node());
    return StallingsSection::finite_group(spec->alphabet(), node.group, node.genmap);
  }
  if (spec->is_amalgam()) {
    const auto& node = std::get<AmalgamNode>(spec->node());
    StallingsSection left = build_section(node.left);
    StallingsSection right = build_section(node.right);
    Letter offset = static_cast<Letter>(node.left->alphabet()->letter_count());
    auto shift_down = [offset](const Word& w) {
      Word out;
      out.reserve(w.size());
      for (Letter a : w) out.push_back(a - offset);
      return out;
    };
    ValidationReport report = validate_spec(
        node, [&](const Word& w) { return left.word_problem(w); },
        [&](const Word& w) { return right.word_problem(shift_down(w)); });
    if (!report.ok) throw std::invalid_argument("invalid amalgam spec: " + report.message);
    return StallingsSection::amalgam(left, right, *spec);
  }
  const auto& node = std::get<HnnNode>(spec->node());
  StallingsSection base = build_section(node.base);
  ValidationReport report =
      validate_spec(node, [&](const Word& w) { return base.word_problem(w); });
  if (!report.ok) throw std::invalid_argument("invalid hnn spec: " + report.message);
  return StallingsSection::hnn(base, *spec);
}

StallingsSection build_section_from_json(const std::string& json_text) {
  GroupSpecPtr spec = parse_group_document(json_text);
  StallingsSection section = build_section(spec);
  section.set_group_json(json_text);
  return section;
}

}  // namespace stallings
