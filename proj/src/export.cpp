#include "specimeta/export.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "specimeta/digest.hpp"

namespace specimeta::exporter {

namespace {

std::string csv_quote(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string object_text(const Object& obj) {
    if (const auto* iri = std::get_if<Iri>(&obj)) return iri->value;
    return std::get<LiteralValue>(obj).lexical;
}

void put16(std::string& out, std::uint16_t v) {
    out += static_cast<char>(v & 0xff);
    out += static_cast<char>(v >> 8);
}

void put32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

}  // namespace

std::string render_csv(const std::vector<graph::EntityNode>& entities,
                       const NamespaceRegistry& reg) {
    (void)reg;
    std::set<std::string> columns;
    for (const auto& e : entities)
        for (const auto& st : e.statements)
            if (st.predicate != graph::rdf_type())
                columns.insert(st.predicate.curie());

    std::string out = "ark";
    for (const auto& c : columns) out += "," + csv_quote(c);
    out += "\r\n";

    std::vector<const graph::EntityNode*> ordered;
    for (const auto& e : entities) ordered.push_back(&e);
    std::sort(ordered.begin(), ordered.end(),
              [](const graph::EntityNode* a, const graph::EntityNode* b) {
                  return a->ark.render() < b->ark.render();
              });

    for (const auto* e : ordered) {
        std::map<std::string, std::set<std::string>> cells;
        for (const auto& st : e->statements)
            if (st.predicate != graph::rdf_type())
                cells[st.predicate.curie()].insert(object_text(st.object));
        out += csv_quote(e->ark.render());
        for (const auto& c : columns) {
            out += ',';
            auto it = cells.find(c);
            if (it == cells.end()) continue;
            std::string joined;
            for (const auto& v : it->second) {
                if (!joined.empty()) joined += '|';
                joined += v;
            }
            out += csv_quote(joined);
        }
        out += "\r\n";
    }
    return out;
}

std::string render_xml(const graph::EntityNode& entity,
                       const NamespaceRegistry& reg) {
    std::set<std::string> prefixes;
    for (const auto& st : entity.statements) prefixes.insert(st.predicate.prefix);

    std::vector<Statement> ordered = entity.statements;
    std::sort(ordered.begin(), ordered.end(),
              [&](const Statement& a, const Statement& b) {
                  return graph::render_statement(a, reg) <
                         graph::render_statement(b, reg);
              });

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<record ark=\"" + xml_escape(entity.ark.render()) + "\"";
    for (const auto& p : prefixes)
        out += "\n        xmlns:" + p + "=\"" +
               xml_escape(reg.resolve_prefix(p).iri) + "\"";
    out += ">\n";
    for (const auto& st : ordered) {
        std::string tag = st.predicate.prefix + ":" + st.predicate.local;
        out += "  <" + tag + ">" + xml_escape(object_text(st.object)) + "</" +
               tag + ">\n";
    }
    out += "</record>\n";
    return out;
}

std::string render_owl(const std::vector<graph::EntityNode>& entities,
                       const NamespaceRegistry& reg) {
    graph::Graph g(&reg);
    for (const auto& e : entities)
        for (const auto& st : e.statements) g.add(st);
    for (auto c : kAllEntityClasses)
        g.add({reg.class_iri(c), graph::rdf_type(),
               Iri{reg.expand(Term{"owl", "Class"})}});
    g.add({reg.ontology_iri(), graph::rdf_type(),
           Iri{reg.expand(Term{"owl", "Ontology"})}});
    return graph::serialize(g);
}

Bundle build_bundle(const graph::Graph& g, const ark::ArkId& root,
                    const std::string& citation_text) {
    const auto& reg = g.registry();
    auto entities = graph::select_subtree(g, root);  // throws UnknownRoot

    Bundle b;
    b.root = root;
    b.entries.emplace_back("metadata.csv", render_csv(entities, reg));
    for (const auto& e : entities)
        b.entries.emplace_back(e.ark.blade + ".xml", render_xml(e, reg));

    std::string citation = citation_text;
    if (!citation.empty() && citation.back() != '\n') citation += '\n';
    for (const auto& e : entities)
        citation += "ARK: " + e.ark.render() + "\n";
    b.entries.emplace_back("citation.txt", std::move(citation));
    b.entries.emplace_back("graph.owl", render_owl(entities, reg));

    std::sort(b.entries.begin(), b.entries.end());
    for (const auto& [path, bytes] : b.entries)
        b.manifest.push_back({path, bytes.size(), sha256_hex(bytes)});
    return b;
}

std::string zip_bytes(const Bundle& bundle) {
    // DOS timestamp 1980-01-01 00:00:00
    constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;
    constexpr std::uint16_t kDosTime = 0;

    std::string out;
    struct CentralRecord {
        std::string path;
        std::uint32_t crc, size, offset;
    };
    std::vector<CentralRecord> central;

    for (const auto& [path, bytes] : bundle.entries) {
        std::uint32_t crc = static_cast<std::uint32_t>(
            crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
                  static_cast<uInt>(bytes.size())));
        std::uint32_t offset = static_cast<std::uint32_t>(out.size());

        put32(out, 0x04034b50);           // local file header
        put16(out, 20);                   // version needed
        put16(out, 0);                    // flags
        put16(out, 0);                    // method: stored
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, crc);
        put32(out, static_cast<std::uint32_t>(bytes.size()));
        put32(out, static_cast<std::uint32_t>(bytes.size()));
        put16(out, static_cast<std::uint16_t>(path.size()));
        put16(out, 0);                    // extra length
        out += path;
        out += bytes;

        central.push_back(
            {path, crc, static_cast<std::uint32_t>(bytes.size()), offset});
    }

    std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
    for (const auto& rec : central) {
        put32(out, 0x02014b50);           // central directory header
        put16(out, 20);                   // version made by
        put16(out, 20);                   // version needed
        put16(out, 0);
        put16(out, 0);
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, rec.crc);
        put32(out, rec.size);
        put32(out, rec.size);
        put16(out, static_cast<std::uint16_t>(rec.path.size()));
        put16(out, 0);                    // extra
        put16(out, 0);                    // comment
        put16(out, 0);                    // disk number
        put16(out, 0);                    // internal attrs
        put32(out, 0);                    // external attrs
        put32(out, rec.offset);
        out += rec.path;
    }
    std::uint32_t cd_size = static_cast<std::uint32_t>(out.size()) - cd_offset;

    put32(out, 0x06054b50);               // end of central directory
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint16_t>(central.size()));
    put16(out, static_cast<std::uint16_t>(central.size()));
    put32(out, cd_size);
    put32(out, cd_offset);
    put16(out, 0);                        // comment length
    return out;
}

}  // namespace specimeta::exporter
