#include "specimeta/crosswalk.hpp"

#include <algorithm>
#include <cctype>

namespace specimeta::crosswalk {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool valid_local_name(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_')
        return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

// "dwc:genus" -> Term, if the prefix is registered
std::optional<Term> parse_curie(std::string_view s,
                                const NamespaceRegistry& reg) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 >= s.size())
        return std::nullopt;
    std::string prefix(s.substr(0, colon));
    std::string local(s.substr(colon + 1));
    if (!reg.has_prefix(prefix) || !valid_local_name(local))
        return std::nullopt;
    return Term{std::move(prefix), std::move(local)};
}

}  // namespace

const char* issue_kind_name(IssueKind k) {
    switch (k) {
        case IssueKind::UnmappedField: return "UnmappedField";
        case IssueKind::BlankValue: return "BlankValue";
        case IssueKind::CoercionIssue: return "CoercionIssue";
    }
    return "?";
}

std::string normalize_pattern(std::string_view raw) {
    std::string out;
    bool pending_space = false;
    for (char ch : trim(raw)) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

std::string lower_camel(std::string_view raw) {
    std::string out;
    bool new_word = false;
    for (char ch : raw) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (!std::isalnum(c)) {
            new_word = !out.empty();
            continue;
        }
        if (out.empty()) {
            out += static_cast<char>(std::tolower(c));
        } else if (new_word) {
            out += static_cast<char>(std::toupper(c));
            new_word = false;
        } else {
            out += static_cast<char>(c);
        }
    }
    if (out.empty()) return "_field";
    if (std::isdigit(static_cast<unsigned char>(out.front())))
        out.insert(out.begin(), '_');
    return out;
}

RuleSet load_rules(std::string_view bytes, const NamespaceRegistry& reg) {
    auto rows = ingest::parse_csv(bytes);
    if (rows.empty()) throw RuleSyntax(1, "empty rule file");

    const std::vector<std::string> expected = {"sourcePattern", "action",
                                               "target", "datatype", "note"};
    if (rows.front() != expected)
        throw RuleSyntax(1,
                         "header must be sourcePattern,action,target,datatype,note");

    RuleSet rs;
    bool have_class = false;

    for (std::size_t r = 1; r < rows.size(); ++r) {
        std::size_t line = r + 1;
        auto row = rows[r];
        row.resize(5);
        const std::string& pattern = row[0];
        const std::string& action = row[1];
        const std::string& target = row[2];
        const std::string& datatype = row[3];
        const std::string& note = row[4];

        if (trim(pattern).empty()) throw RuleSyntax(line, "empty sourcePattern");

        if (trim(pattern) == "@class") {
            if (r != 1)
                throw RuleSyntax(line, "@class must be the first data row");
            auto cls = class_from_name(trim(target));
            if (!cls) throw RuleSyntax(line, "unknown entity class: " + target);
            rs.target_class = *cls;
            have_class = true;
            continue;
        }

        CrosswalkRule rule;
        rule.source_pattern = pattern;
        rule.note = note;
        if (action == "drop") {
            rule.drop = true;
            rule.drop_reason = note;
        } else if (action == "map") {
            auto colon = target.find(':');
            if (colon == std::string::npos || colon == 0)
                throw RuleSyntax(line, "map target must be prefix:localName");
            std::string prefix = target.substr(0, colon);
            std::string local = target.substr(colon + 1);
            if (!reg.has_prefix(prefix)) throw UnknownPrefix(prefix);
            if (!valid_local_name(local))
                throw RuleSyntax(line, "bad local name: " + local);
            rule.target = Term{prefix, local};
            auto dt = datatype_from_name(trim(datatype));
            if (!dt) throw RuleSyntax(line, "unknown datatype: " + datatype);
            rule.datatype = *dt;
        } else {
            throw RuleSyntax(line, "action must be map or drop: " + action);
        }

        std::string norm = normalize_pattern(pattern);
        if (!rs.by_pattern.emplace(norm, rs.rules.size()).second)
            throw DuplicatePattern(pattern);
        rs.rules.push_back(std::move(rule));
    }
    if (!have_class) throw MissingClassDeclaration();

    // A canonical target colliding with a source pattern would break
    // idempotence of re-application; reject at load time.
    for (const auto& rule : rs.rules) {
        if (rule.drop) continue;
        std::string canon = normalize_pattern(rule.target.curie());
        auto hit = rs.by_pattern.find(canon);
        if (hit != rs.by_pattern.end())
            throw DuplicatePattern(rule.target.curie() +
                                   " (canonical target matches a source pattern)");
    }
    return rs;
}

WalkResult apply_rules(const RuleSet& rules, const ingest::SourceRecord& rec,
                       const NamespaceRegistry& reg) {
    WalkResult out;
    for (const auto& [name, value] : rec.fields) {
        const CrosswalkRule* rule = nullptr;
        auto hit = rules.by_pattern.find(normalize_pattern(name));
        if (hit != rules.by_pattern.end()) rule = &rules.rules[hit->second];

        if (rule && rule->drop) {
            ++out.dropped;
            continue;
        }
        if (trim(value).empty()) {
            ++out.blank;
            out.issues.push_back({IssueKind::BlankValue, name, ""});
            continue;
        }

        Term term;
        Datatype dt = Datatype::String;
        bool unmapped = false;
        if (rule) {
            term = rule->target;
            dt = rule->datatype;
        } else if (auto canonical = parse_curie(name, reg)) {
            // Already-canonical field name: pass through so a second
            // application is a no-op. Reuse a mapping rule's datatype
            // when one targets this term.
            term = *canonical;
            for (const auto& r : rules.rules)
                if (!r.drop && r.target == term) {
                    dt = r.datatype;
                    break;
                }
        } else {
            term = Term{"bgnn", lower_camel(name)};
            unmapped = true;
        }

        LiteralValue lit{value, Datatype::String};
        try {
            lit = ingest::coerce_value(value, dt);
        } catch (const ingest::CoercionError& e) {
            out.issues.push_back(
                {IssueKind::CoercionIssue, name,
                 std::string("kept as string; not a valid ") +
                     datatype_name(dt)});
            lit = ingest::coerce_value(value, Datatype::String);
        }
        if (unmapped)
            out.issues.push_back(
                {IssueKind::UnmappedField, name,
                 "preserved as " + term.curie()});
        out.pairs.emplace_back(std::move(term), std::move(lit));
    }
    return out;
}

}  // namespace specimeta::crosswalk
