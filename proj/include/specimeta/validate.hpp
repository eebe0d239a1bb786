#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "specimeta/crosswalk.hpp"
#include "specimeta/graph.hpp"

namespace specimeta::validate {

struct EmptyLabel : Error {
    EmptyLabel() : Error("OCR label text is empty") {}
};
struct WrongClass : Error {
    explicit WrongClass(EntityClass got)
        : Error(std::string("expected a CollectionEvent entity, got ") +
                class_name(got)) {}
};

struct LabelText {
    std::string text;
    /// lowercase alphanumeric runs, split on any other character
    std::vector<std::string> tokens() const;
};

struct FieldCheck {
    Term term;
    std::string expected;
    bool matched = false;
    double best_similarity = 0.0;
};

struct ValidationReport {
    std::vector<FieldCheck> checked;
    double score = 0.0;  // matched / checked
    bool pass = false;
};

struct QualityReport {
    ark::ArkId entity;
    std::vector<Term> required;
    std::vector<Term> present;
    double completeness = 0.0;
    std::vector<crosswalk::WalkIssue> issues;
};

std::size_t levenshtein(std::string_view a, std::string_view b);

/// Best normalized similarity of expected against any contiguous token
/// window of the label (window length = expected token count).
double best_window_similarity(const std::vector<std::string>& label_tokens,
                              const std::string& expected);

inline constexpr double kDefaultSimThreshold = 0.8;
inline constexpr double kDefaultPassThreshold = 0.75;

ValidationReport validate_label(const LabelText& label,
                                const graph::EntityNode& event,
                                const std::vector<Term>& fields,
                                double sim_threshold = kDefaultSimThreshold,
                                double pass_threshold = kDefaultPassThreshold);

QualityReport completeness(const graph::EntityNode& entity,
                           const std::vector<Term>& required,
                           std::vector<crosswalk::WalkIssue> issues = {});

/// Default required checklist for CollectionEvent entities.
std::vector<Term> default_required_terms();

}  // namespace specimeta::validate
