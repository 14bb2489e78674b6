#ifndef STALLINGS_GROUP_DOCUMENT_HPP
#define STALLINGS_GROUP_DOCUMENT_HPP

#include <string>

#include "stallings/group_spec.hpp"
#include "stallings/section.hpp"

namespace stallings {

/// Parses a JSON group document:
///   {"alphabet": [...], "group": {"free"|"finite"|"amalgam"|"hnn": {...}}}
/// Nested factors are full documents. The parent alphabet must list the
/// left factor's positive letters, then the right's (amalgam), or the base's
/// plus the stable letter (hnn). Throws std::invalid_argument on schema or
/// consistency errors.
GroupSpecPtr parse_group_document(const std::string& json_text);

/// Builds the section bottom-up: factor sections first, then the node is
/// validated through their word-problem oracles before combining.
StallingsSection build_section(const GroupSpecPtr& spec);

/// Convenience: parse + build + remember the source document.
StallingsSection build_section_from_json(const std::string& json_text);

}  // namespace stallings

#endif
