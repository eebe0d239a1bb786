#include <doctest.h>

#include "specimeta/fixtures.hpp"
#include "specimeta/graph.hpp"
#include "specimeta/validate.hpp"

using namespace specimeta;
using namespace specimeta::fixtures;

namespace {

// Ingest + crosswalk a generated corpus into record statements.
std::vector<graph::RecordStatements> crosswalked(
    const Corpus& corpus, const NamespaceRegistry& reg) {
    const std::pair<std::string, const std::string*> sources[] = {
        {"media", &corpus.media_csv},       {"event", &corpus.event_csv},
        {"iq", &corpus.iq_csv},             {"extended", &corpus.extended_csv},
        {"admin", &corpus.admin_csv},
    };
    std::map<std::string, std::string> rule_files;
    for (auto& [name, bytes] : default_rule_files()) rule_files[name] = bytes;

    std::vector<graph::RecordStatements> records;
    for (const auto& [name, csv] : sources) {
        auto rules = crosswalk::load_rules(rule_files.at(name), reg);
        auto delivery =
            ingest::parse_record_table(*csv, "CatalogNumber", name);
        for (const auto& rec : delivery.records) {
            auto walked = crosswalk::apply_rules(rules, rec, reg);
            records.push_back({rules.target_class, rec.source_id,
                               std::move(walked.pairs)});
        }
    }
    return records;
}

}  // namespace

TEST_CASE("generation is deterministic") {
    CorpusSpec spec;
    spec.record_count = 50;
    spec.seed = 42;
    spec.missing_field_rate = 0.1;
    spec.ocr_noise_rate = 0.05;
    auto a = generate(spec);
    auto b = generate(spec);
    CHECK(a.media_csv == b.media_csv);
    CHECK(a.event_csv == b.event_csv);
    CHECK(a.iq_csv == b.iq_csv);
    CHECK(a.extended_csv == b.extended_csv);
    CHECK(a.admin_csv == b.admin_csv);
    CHECK(a.labels == b.labels);

    spec.seed = 43;
    CHECK(generate(spec).event_csv != a.event_csv);
}

TEST_CASE("zero records means header-only files") {
    CorpusSpec spec;
    spec.record_count = 0;
    auto c = generate(spec);
    for (const auto* csv : {&c.media_csv, &c.event_csv, &c.iq_csv,
                            &c.extended_csv, &c.admin_csv})
        CHECK(csv->find("\r\n") == csv->size() - 2);
    CHECK(c.labels.empty());
}

TEST_CASE("missing-field rate lands near the requested fraction") {
    CorpusSpec spec;
    spec.record_count = 1000;
    spec.seed = 7;
    spec.missing_field_rate = 0.2;
    auto c = generate(spec);

    std::size_t blanks = 0, cells = 0;
    for (const auto* csv : {&c.media_csv, &c.event_csv, &c.iq_csv,
                            &c.extended_csv}) {
        auto rows = ingest::parse_csv(*csv);
        for (std::size_t r = 1; r < rows.size(); ++r)
            for (std::size_t col = 1; col < rows[r].size(); ++col) {
                // the photographer-notes column is legitimately sparse
                if (csv == &c.media_csv && col == 6) continue;
                ++cells;
                if (rows[r][col].empty()) ++blanks;
            }
    }
    double rate = static_cast<double>(blanks) / cells;
    CHECK(rate == doctest::Approx(0.2).epsilon(0.15));
    CHECK(rate > 0.17);
    CHECK(rate < 0.23);
}

TEST_CASE("clean corpora build without orphans and validate 100%") {
    auto reg = NamespaceRegistry::standard();
    CorpusSpec spec;
    spec.record_count = 40;
    spec.seed = 3;
    auto corpus = generate(spec);

    auto records = crosswalked(corpus, reg);
    auto g = graph::build_entity_graph(records, "99999", reg);

    auto required = validate::default_required_terms();
    for (const auto& [key, text] : corpus.labels) {
        auto a = ark::mint("99999", EntityClass::CollectionEvent, key);
        auto node = graph::get_entity(g, a);
        REQUIRE(node.has_value());
        auto report = validate::validate_label({text}, *node, required);
        CHECK(report.pass);
    }
}

TEST_CASE("noisy labels eventually fail validation") {
    auto reg = NamespaceRegistry::standard();
    CorpusSpec spec;
    spec.record_count = 30;
    spec.seed = 3;
    spec.ocr_noise_rate = 0.5;
    auto corpus = generate(spec);

    auto g = graph::build_entity_graph(crosswalked(corpus, reg), "99999", reg);
    std::size_t failed = 0;
    auto required = validate::default_required_terms();
    for (const auto& [key, text] : corpus.labels) {
        auto node = graph::get_entity(
            g, ark::mint("99999", EntityClass::CollectionEvent, key));
        REQUIRE(node.has_value());
        try {
            if (!validate::validate_label({text}, *node, required).pass)
                ++failed;
        } catch (const validate::EmptyLabel&) {
            ++failed;
        }
    }
    CHECK(failed > 0);
}
