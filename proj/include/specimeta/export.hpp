#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "specimeta/graph.hpp"

namespace specimeta::exporter {

struct ManifestEntry {
    std::string path;
    std::size_t length = 0;
    std::string sha256_hex;
};

struct Bundle {
    ark::ArkId root;
    std::vector<std::pair<std::string, std::string>> entries;  // path -> bytes
    std::vector<ManifestEntry> manifest;
};

/// Cross-entity table: header "ark" plus the sorted union of compacted
/// predicate terms (rdf:type excluded), one row per entity in ARK order.
std::string render_csv(const std::vector<graph::EntityNode>& entities,
                       const NamespaceRegistry& reg);

/// <record ark="..."> with one child element per statement.
std::string render_xml(const graph::EntityNode& entity,
                       const NamespaceRegistry& reg);

/// Canonical graph restricted to the given statements, plus the OWL
/// class/ontology declaration statements.
std::string render_owl(const std::vector<graph::EntityNode>& entities,
                       const NamespaceRegistry& reg);

Bundle build_bundle(const graph::Graph& g, const ark::ArkId& root,
                    const std::string& citation_text);

/// Deterministic PKZIP bytes: stored entries in path order, fixed
/// 1980-01-01 timestamps.
std::string zip_bytes(const Bundle& bundle);

}  // namespace specimeta::exporter
