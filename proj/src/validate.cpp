#include "specimeta/validate.hpp"

#include <algorithm>
#include <cctype>

namespace specimeta::validate {

namespace {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string join(const std::vector<std::string>& tokens, std::size_t begin,
                 std::size_t count) {
    std::string out;
    for (std::size_t i = begin; i < begin + count; ++i) {
        if (i > begin) out += ' ';
        out += tokens[i];
    }
    return out;
}

bool value_blank(const LiteralValue& lit) {
    return std::all_of(lit.lexical.begin(), lit.lexical.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::vector<std::string> LabelText::tokens() const { return tokenize(text); }

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double best_window_similarity(const std::vector<std::string>& label_tokens,
                              const std::string& expected) {
    auto expected_tokens = tokenize(expected);
    if (expected_tokens.empty()) return 0.0;
    std::string norm_expected = join(expected_tokens, 0, expected_tokens.size());
    std::size_t w = expected_tokens.size();
    if (label_tokens.size() < w) return 0.0;

    double best = 0.0;
    for (std::size_t i = 0; i + w <= label_tokens.size(); ++i) {
        std::string window = join(label_tokens, i, w);
        std::size_t dist = levenshtein(window, norm_expected);
        std::size_t denom = std::max(window.size(), norm_expected.size());
        double sim = denom == 0 ? 1.0 : 1.0 - static_cast<double>(dist) / denom;
        best = std::max(best, sim);
    }
    return best;
}

ValidationReport validate_label(const LabelText& label,
                                const graph::EntityNode& event,
                                const std::vector<Term>& fields,
                                double sim_threshold, double pass_threshold) {
    if (event.cls != EntityClass::CollectionEvent) throw WrongClass(event.cls);
    auto tokens = label.tokens();
    if (tokens.empty()) throw EmptyLabel();

    ValidationReport report;
    for (const auto& term : fields) {
        FieldCheck check;
        check.term = term;
        for (const auto& st : event.statements) {
            if (st.predicate != term) continue;
            const auto* lit = std::get_if<LiteralValue>(&st.object);
            if (!lit || value_blank(*lit)) continue;
            double sim = best_window_similarity(tokens, lit->lexical);
            if (check.expected.empty() || sim > check.best_similarity)
                check.expected = lit->lexical;
            check.best_similarity = std::max(check.best_similarity, sim);
        }
        // tolerance keeps exact-boundary ratios like 1 - 1/5 on the
        // matched side of the >= comparison
        check.matched = check.best_similarity >= sim_threshold - 1e-9;
        report.checked.push_back(std::move(check));
    }

    std::size_t matched = std::count_if(
        report.checked.begin(), report.checked.end(),
        [](const FieldCheck& c) { return c.matched; });
    report.score = report.checked.empty()
                       ? 0.0
                       : static_cast<double>(matched) / report.checked.size();
    report.pass = report.score >= pass_threshold - 1e-9;
    return report;
}

QualityReport completeness(const graph::EntityNode& entity,
                           const std::vector<Term>& required,
                           std::vector<crosswalk::WalkIssue> issues) {
    QualityReport report;
    report.entity = entity.ark;
    report.required = required;
    report.issues = std::move(issues);
    for (const auto& term : required) {
        bool present = std::any_of(
            entity.statements.begin(), entity.statements.end(),
            [&](const Statement& st) {
                if (st.predicate != term) return false;
                const auto* lit = std::get_if<LiteralValue>(&st.object);
                return !lit || !value_blank(*lit);
            });
        if (present) report.present.push_back(term);
    }
    report.completeness =
        required.empty() ? 0.0
                         : static_cast<double>(report.present.size()) /
                               required.size();
    return report;
}

std::vector<Term> default_required_terms() {
    return {Term{"dwc", "catalogNumber"}, Term{"dwc", "genus"},
            Term{"dwc", "specificEpithet"}, Term{"dwc", "eventDate"},
            Term{"dwc", "locality"}};
}

}  // namespace specimeta::validate
