#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "specimeta/ark.hpp"
#include "specimeta/core.hpp"
#include "specimeta/crosswalk.hpp"

namespace specimeta::graph {

struct OrphanChild : Error {
    explicit OrphanChild(const std::string& key)
        : Error("child record \"" + key + "\" has no Multimedia parent"),
          key(key) {}
    std::string key;
};
struct DuplicateEntity : Error {
    DuplicateEntity(EntityClass cls, const std::string& key)
        : Error(std::string("entity (") + class_name(cls) + ", " + key +
                ") asserted twice with differing statements") {}
};
struct UnknownSubject : Error {
    explicit UnknownSubject(const std::string& subject)
        : Error("subject not in graph: " + subject) {}
};
struct ParseError : Error {
    ParseError(std::size_t line, const std::string& reason)
        : Error("graph parse error at line " + std::to_string(line) + ": " +
                reason),
          line(line) {}
    std::size_t line;
};
struct UnboundSelect : Error {
    explicit UnboundSelect(const std::string& var)
        : Error("selected variable ?" + var + " appears in no pattern") {}
};
struct UnknownRoot : Error {
    explicit UnknownRoot(const std::string& ark)
        : Error("root entity not in graph: " + ark) {}
};

/// Set-semantics statement store with subject/predicate indexes.
/// Immutable snapshots are cheap: the store is value-copyable.
class Graph {
public:
    explicit Graph(const NamespaceRegistry* reg) : reg_(reg) {}

    // Indexes hold pointers into stmts_, so copies must reindex.
    Graph(const Graph& other);
    Graph& operator=(const Graph& other);
    Graph(Graph&&) = default;
    Graph& operator=(Graph&&) = default;

    // Returns true iff the statement was newly inserted.
    bool add(Statement st);

    bool contains(const Statement& st) const { return stmts_.count(st) != 0; }
    std::size_t size() const { return stmts_.size(); }
    const std::set<Statement>& statements() const { return stmts_; }

    std::span<const Statement* const> by_subject(const std::string& s) const;
    std::span<const Statement* const> by_predicate_iri(
        const std::string& p) const;

    std::vector<std::string> subjects() const;
    const NamespaceRegistry& registry() const { return *reg_; }

private:
    const NamespaceRegistry* reg_;
    std::set<Statement> stmts_;
    std::unordered_map<std::string, std::vector<const Statement*>> subj_idx_;
    std::unordered_map<std::string, std::vector<const Statement*>> pred_idx_;
};

/// One crosswalked record heading into the graph: entity class plus the
/// Multimedia source key that names its parent (its own key for
/// Multimedia and Batch records).
struct RecordStatements {
    EntityClass cls;
    std::string source_key;
    std::vector<std::pair<Term, LiteralValue>> pairs;
};

Graph build_entity_graph(std::span<const RecordStatements> records,
                         const std::string& naan,
                         const NamespaceRegistry& reg);

void attach_rights(Graph& g, const ark::ArkId& subject,
                   const std::string& rights_text,
                   const std::string& license_iri);

/// Canonical N-Triples rendering of one statement (no newline).
std::string render_statement(const Statement& st, const NamespaceRegistry& reg);

/// Canonical serialization: one statement per line, lines byte-sorted,
/// trailing newline (empty graph -> empty output).
std::string serialize(const Graph& g);

Graph parse_serialized(std::string_view bytes, const NamespaceRegistry& reg);

// ---- basic graph pattern queries ----

struct Var {
    std::string name;  // without the "?"
    auto operator<=>(const Var&) const = default;
};

using PatternSlot = std::variant<Var, Iri, LiteralValue, Term>;

struct TriplePattern {
    PatternSlot subject, predicate, object;
};

struct Query {
    std::vector<TriplePattern> patterns;
    std::vector<std::string> select;  // empty = all variables
};

using BoundValue = std::variant<Iri, LiteralValue>;
using Binding = std::map<std::string, BoundValue>;

/// Canonical rendering of a bound value, used for result ordering.
std::string render_bound(const BoundValue& v);

/// All satisfying bindings, deduplicated, sorted by the canonical
/// rendering of bound values in variable-name order.
std::vector<Binding> query(const Graph& g, const Query& q);

// ---- entity views ----

struct EntityNode {
    ark::ArkId ark;
    EntityClass cls;
    std::vector<Statement> statements;
    std::optional<ark::ArkId> parent;
};

std::optional<EntityNode> get_entity(const Graph& g, const ark::ArkId& a);

/// Root plus all descendants via hasPart / reverse isPartOf, in
/// canonical ARK order.
std::vector<EntityNode> select_subtree(const Graph& g, const ark::ArkId& root);

inline Term rdf_type() { return Term{"rdf", "type"}; }
inline Term is_part_of() { return Term{"dcterms", "isPartOf"}; }
inline Term has_part() { return Term{"dcterms", "hasPart"}; }

}  // namespace specimeta::graph
