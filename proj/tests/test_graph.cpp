#include <doctest.h>

#include <algorithm>
#include <random>

#include "specimeta/graph.hpp"
#include "testutil.hpp"

using namespace specimeta;
using namespace specimeta::graph;

namespace {

RecordStatements rec(EntityClass cls, std::string key,
                     std::vector<std::pair<Term, LiteralValue>> pairs) {
    return {cls, std::move(key), std::move(pairs)};
}

LiteralValue str(std::string s) {
    return LiteralValue{std::move(s), Datatype::String};
}

}  // namespace

TEST_CASE("one Multimedia record with three pairs yields four statements") {
    auto reg = NamespaceRegistry::standard();
    std::vector<RecordStatements> records{
        rec(EntityClass::Multimedia, "M1",
            {{{"dwc", "catalogNumber"}, str("M1")},
             {{"dcterms", "format"}, str("image/jpeg")},
             {{"dcterms", "accessRights"}, str("CC-BY")}})};
    auto g = build_entity_graph(records, "99999", reg);
    CHECK(g.size() == 4);

    auto a = ark::mint("99999", EntityClass::Multimedia, "M1");
    CHECK(g.contains({a.iri(), rdf_type(),
                      Iri{reg.class_iri(EntityClass::Multimedia)}}));
}

TEST_CASE("statement count over the two-class fixture") {
    auto reg = NamespaceRegistry::standard();
    std::vector<RecordStatements> records;
    for (const char* key : {"A", "B"}) {
        records.push_back(rec(EntityClass::Multimedia, key,
                              {{{"dwc", "catalogNumber"}, str(key)},
                               {{"dcterms", "format"}, str("image/jpeg")},
                               {{"dcterms", "accessRights"}, str("CC-BY")}}));
        records.push_back(rec(EntityClass::CollectionEvent, key,
                              {{{"dwc", "genus"}, str("Carassius")},
                               {{"dwc", "locality"}, str("Havana")}}));
    }
    auto g = build_entity_graph(records, "99999", reg);
    // brute-force expectation: 4 rdf:type + (2x3 + 2x2) attributes + 2 isPartOf
    std::size_t expected = 0;
    for (const auto& r : records) expected += 1 + r.pairs.size();
    expected += 2;
    CHECK(expected == 16);
    CHECK(g.size() == 16);
}

TEST_CASE("child records require a matching Multimedia key") {
    auto reg = NamespaceRegistry::standard();
    std::vector<RecordStatements> records{
        rec(EntityClass::CollectionEvent, "X", {{{"dwc", "genus"}, str("Esox")}})};
    CHECK_THROWS_AS(build_entity_graph(records, "99999", reg), OrphanChild);
}

TEST_CASE("duplicate entities: identical merges, differing throws") {
    auto reg = NamespaceRegistry::standard();
    std::vector<RecordStatements> same{
        rec(EntityClass::Multimedia, "M", {{{"dwc", "catalogNumber"}, str("M")}}),
        rec(EntityClass::Multimedia, "M", {{{"dwc", "catalogNumber"}, str("M")}}),
    };
    CHECK(build_entity_graph(same, "99999", reg).size() == 2);

    std::vector<RecordStatements> differing{
        rec(EntityClass::Multimedia, "M", {{{"dwc", "catalogNumber"}, str("M")}}),
        rec(EntityClass::Multimedia, "M", {{{"dwc", "catalogNumber"}, str("N")}}),
    };
    CHECK_THROWS_AS(build_entity_graph(differing, "99999", reg),
                    DuplicateEntity);
}

TEST_CASE("batch records aggregate every Multimedia via hasPart") {
    auto reg = NamespaceRegistry::standard();
    std::vector<RecordStatements> records{
        rec(EntityClass::Multimedia, "A", {}),
        rec(EntityClass::Multimedia, "B", {}),
        rec(EntityClass::Batch, "BATCH1", {{{"bgnn", "batchName"}, str("b")}}),
    };
    auto g = build_entity_graph(records, "99999", reg);
    auto batch = ark::mint("99999", EntityClass::Batch, "BATCH1");
    std::size_t has_part_count = 0;
    for (const Statement* st : g.by_subject(batch.iri()))
        if (st->predicate == has_part()) ++has_part_count;
    CHECK(has_part_count == 2);
}

TEST_CASE("add has set semantics and checks prefixes") {
    auto reg = NamespaceRegistry::standard();
    Graph g(&reg);
    Statement st{"http://example.org/e", {"dwc", "genus"}, str("Esox")};
    CHECK(g.add(st));
    CHECK_FALSE(g.add(st));
    CHECK(g.size() == 1);
    CHECK_THROWS_AS(g.add({"http://example.org/e", {"zzz", "x"}, str("y")}),
                    UnknownPrefix);

    Query q;
    q.patterns.push_back({Iri{"http://example.org/e"}, Term{"dwc", "genus"},
                          Var{"o"}});
    auto hits = query(g, q);
    REQUIRE(hits.size() == 1);
    CHECK(std::get<LiteralValue>(hits[0].at("o")).lexical == "Esox");
}

TEST_CASE("attach_rights is idempotent and queryable") {
    auto reg = NamespaceRegistry::standard();
    std::vector<RecordStatements> records{rec(EntityClass::Multimedia, "M", {})};
    auto g = build_entity_graph(records, "99999", reg);
    auto a = ark::mint("99999", EntityClass::Multimedia, "M");

    std::size_t before = g.size();
    attach_rights(g, a, "Images © INHS, CC BY-NC", "https://example.org/lic");
    CHECK(g.size() == before + 2);
    attach_rights(g, a, "Images © INHS, CC BY-NC", "https://example.org/lic");
    CHECK(g.size() == before + 2);

    Query q;
    q.patterns.push_back({Iri{a.iri()}, Term{"rdfs", "comment"}, Var{"t"}});
    auto hits = query(g, q);
    REQUIRE(hits.size() == 1);
    CHECK(std::get<LiteralValue>(hits[0].at("t")).lexical ==
          "Images © INHS, CC BY-NC");

    auto absent = ark::mint("99999", EntityClass::Multimedia, "missing");
    CHECK_THROWS_AS(attach_rights(g, absent, "x", "https://example.org/l"),
                    UnknownSubject);
}

TEST_CASE("empty graph serializes to empty output") {
    auto reg = NamespaceRegistry::standard();
    Graph g(&reg);
    CHECK(serialize(g).empty());
    CHECK(parse_serialized("", reg).size() == 0);
}

TEST_CASE("single statement round-trips byte-identically") {
    auto reg = NamespaceRegistry::standard();
    Graph g(&reg);
    g.add({"http://example.org/e", {"dwc", "genus"}, str("Carassius")});
    std::string bytes = serialize(g);
    CHECK(bytes ==
          "<http://example.org/e> <http://rs.tdwg.org/dwc/terms/genus> "
          "\"Carassius\" .\n");
    CHECK(serialize(parse_serialized(bytes, reg)) == bytes);
}

TEST_CASE("serialization is canonical under insertion order") {
    auto reg = NamespaceRegistry::standard();
    testutil::GraphGen gen(7);
    auto g = gen.make(reg, 50);

    std::vector<Statement> stmts(g.statements().begin(), g.statements().end());
    std::string reference = serialize(g);

    // oracle: sort the per-statement renderings
    std::vector<std::string> lines;
    for (const auto& st : stmts) lines.push_back(render_statement(st, reg));
    std::sort(lines.begin(), lines.end());
    std::string expected;
    for (const auto& l : lines) expected += l + "\n";
    CHECK(reference == expected);

    std::mt19937_64 rng(3);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(stmts.begin(), stmts.end(), rng);
        Graph shuffled(&reg);
        for (const auto& st : stmts) shuffled.add(st);
        CHECK(serialize(shuffled) == reference);
    }
}

TEST_CASE("escapes survive the round trip") {
    auto reg = NamespaceRegistry::standard();
    Graph g(&reg);
    g.add({"http://example.org/e", {"rdfs", "comment"},
           str("line\nquote\"tab\tback\\slash bell\x01")});
    auto bytes = serialize(g);
    CHECK(bytes.find("\\n") != std::string::npos);
    CHECK(bytes.find("\\u0001") != std::string::npos);
    auto parsed = parse_serialized(bytes, reg);
    CHECK(parsed.statements() == g.statements());
    CHECK(serialize(parsed) == bytes);
}

TEST_CASE("parse_serialized error reporting") {
    auto reg = NamespaceRegistry::standard();
    auto expect_line = [&](const std::string& bytes, std::size_t line) {
        try {
            parse_serialized(bytes, reg);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_line("garbage\n", 1);
    expect_line("<http://a/b> <http://rs.tdwg.org/dwc/terms/genus> \"x\"\n", 1);
    expect_line(
        "<http://a/b> <http://rs.tdwg.org/dwc/terms/genus> \"x\" .\n"
        "<http://a/b> <http://unregistered.example/p> \"y\" .\n",
        2);
    expect_line("<http://a/b> <http://rs.tdwg.org/dwc/terms/x> \"9\"^^<http://www.w3.org/2001/XMLSchema#boolean> .\n", 1);
}

TEST_CASE("query matches the exhaustive oracle on a fixed fixture") {
    auto reg = NamespaceRegistry::standard();
    testutil::GraphGen gen(11);
    auto g = gen.make(reg, 100);

    Query q;
    q.patterns.push_back({Var{"e"}, Term{"dwc", "genus"}, Var{"g"}});
    q.patterns.push_back({Var{"e"}, Term{"dwc", "catalogNumber"}, Var{"c"}});
    CHECK(query(g, q) == testutil::oracle_query(g, q));

    Query full;
    full.patterns.push_back({Var{"s"}, Var{"p"}, Var{"o"}});
    CHECK(query(g, full).size() == g.size());
}

TEST_CASE("unbound selected variables are rejected") {
    auto reg = NamespaceRegistry::standard();
    Graph g(&reg);
    g.add({"http://example.org/e", {"dwc", "genus"}, str("Esox")});
    Query q;
    q.patterns.push_back({Var{"s"}, Term{"dwc", "genus"}, Var{"o"}});
    q.select = {"nope"};
    CHECK_THROWS_AS(query(g, q), UnboundSelect);
}

TEST_CASE("entity views reconstruct class and parent") {
    auto reg = NamespaceRegistry::standard();
    std::vector<RecordStatements> records{
        rec(EntityClass::Multimedia, "M", {{{"dwc", "catalogNumber"}, str("M")}}),
        rec(EntityClass::CollectionEvent, "M", {{{"dwc", "genus"}, str("Esox")}}),
        rec(EntityClass::Batch, "B", {}),
    };
    auto g = build_entity_graph(records, "99999", reg);

    auto mm = ark::mint("99999", EntityClass::Multimedia, "M");
    auto ce = ark::mint("99999", EntityClass::CollectionEvent, "M");
    auto batch = ark::mint("99999", EntityClass::Batch, "B");

    auto ce_node = get_entity(g, ce);
    REQUIRE(ce_node.has_value());
    CHECK(ce_node->cls == EntityClass::CollectionEvent);
    REQUIRE(ce_node->parent.has_value());
    CHECK(*ce_node->parent == mm);

    auto subtree = select_subtree(g, batch);
    CHECK(subtree.size() == 3);
    auto from_mm = select_subtree(g, mm);
    CHECK(from_mm.size() == 2);

    CHECK_THROWS_AS(
        select_subtree(g, ark::mint("99999", EntityClass::Batch, "none")),
        UnknownRoot);
}
