#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specimeta/core.hpp"
#include "specimeta/ingest.hpp"

namespace specimeta::crosswalk {

struct RuleSyntax : Error {
    RuleSyntax(std::size_t line, const std::string& what)
        : Error("rule file line " + std::to_string(line) + ": " + what),
          line(line) {}
    std::size_t line;
};
struct DuplicatePattern : Error {
    explicit DuplicatePattern(const std::string& pattern)
        : Error("duplicate source pattern: " + pattern) {}
};
struct MissingClassDeclaration : Error {
    MissingClassDeclaration()
        : Error("rule file has no @class declaration row") {}
};

struct CrosswalkRule {
    std::string source_pattern;
    bool drop = false;
    std::string drop_reason;     // when drop
    Term target;                 // when !drop
    Datatype datatype = Datatype::String;
    std::string note;
};

struct RuleSet {
    std::vector<CrosswalkRule> rules;
    EntityClass target_class = EntityClass::Multimedia;
    std::map<std::string, std::size_t> by_pattern;  // normalized pattern
};

enum class IssueKind { UnmappedField, BlankValue, CoercionIssue };

const char* issue_kind_name(IssueKind k);

struct WalkIssue {
    IssueKind kind;
    std::string field_name;
    std::string detail;
};

struct WalkResult {
    std::vector<std::pair<Term, LiteralValue>> pairs;
    std::vector<WalkIssue> issues;
    std::size_t dropped = 0;
    std::size_t blank = 0;
};

/// Case-insensitive pattern normalization: trim, collapse internal
/// whitespace, fold to lowercase.
std::string normalize_pattern(std::string_view raw);

/// D4 fallback naming for unmapped fields: lowerCamelCase with
/// non-alphanumerics stripped at word boundaries.
std::string lower_camel(std::string_view raw);

/// Rule file CSV with header sourcePattern,action,target,datatype,note
/// and a leading @class declaration row.
RuleSet load_rules(std::string_view bytes, const NamespaceRegistry& reg);

WalkResult apply_rules(const RuleSet& rules, const ingest::SourceRecord& rec,
                       const NamespaceRegistry& reg);

}  // namespace specimeta::crosswalk
