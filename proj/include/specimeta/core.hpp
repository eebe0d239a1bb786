#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace specimeta {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownPrefix : Error {
    explicit UnknownPrefix(const std::string& prefix)
        : Error("unknown namespace prefix: " + prefix) {}
};

struct UncompactableIri : Error {
    explicit UncompactableIri(const std::string& iri)
        : Error("no registered namespace covers IRI: " + iri) {}
};

struct InvalidLiteral : Error {
    InvalidLiteral(const std::string& lexical, const std::string& datatype)
        : Error("lexical form \"" + lexical + "\" is not a valid " + datatype) {}
};

enum class Datatype { String, Integer, Decimal, Boolean, DateTime, AnyUri };

const char* datatype_name(Datatype dt);
std::optional<Datatype> datatype_from_name(std::string_view name);

/// XSD IRI for a datatype, e.g. http://www.w3.org/2001/XMLSchema#integer
std::string datatype_iri(Datatype dt);
std::optional<Datatype> datatype_from_iri(std::string_view iri);

/// True iff lexical is a valid lexical form for dt.
bool lexical_valid(std::string_view lexical, Datatype dt);

struct LiteralValue {
    std::string lexical;
    Datatype datatype = Datatype::String;

    // Validating constructor; throws InvalidLiteral.
    static LiteralValue make(std::string lexical, Datatype dt);

    auto operator<=>(const LiteralValue&) const = default;
};

struct Term {
    std::string prefix;
    std::string local;

    auto operator<=>(const Term&) const = default;

    std::string curie() const { return prefix + ":" + local; }
};

struct Namespace {
    std::string prefix;
    std::string iri;
};

enum class EntityClass {
    Multimedia,
    CollectionEvent,
    IQMetadata,
    ExtendedImageMetadata,
    Batch,
};

inline constexpr EntityClass kAllEntityClasses[] = {
    EntityClass::Multimedia,       EntityClass::CollectionEvent,
    EntityClass::IQMetadata,       EntityClass::ExtendedImageMetadata,
    EntityClass::Batch,
};

const char* class_name(EntityClass c);

// Accepts the canonical names plus the spaced spellings
// "Collection event" and "IQ metadata".
std::optional<EntityClass> class_from_name(std::string_view name);

/// Prefix/IRI bijection. Immutable after construction.
class NamespaceRegistry {
public:
    // The standard registry: the eleven photographic/biodiversity
    // namespaces plus dcterms, rdf, rdfs, owl and the project namespace.
    static NamespaceRegistry standard(
        std::string project_iri = "https://bgnn.example.org/ns#");

    const Namespace& resolve_prefix(const std::string& prefix) const;
    bool has_prefix(const std::string& prefix) const;

    std::string expand(const Term& term) const;

    // Longest registered namespace IRI wins.
    Term compact(const std::string& iri) const;
    std::optional<Term> try_compact(const std::string& iri) const;

    const std::string& project_iri() const { return project_iri_; }
    std::string class_iri(EntityClass c) const;
    std::string ontology_iri() const;

    const std::vector<Namespace>& entries() const { return entries_; }

private:
    void add(std::string prefix, std::string iri);

    std::vector<Namespace> entries_;
    std::map<std::string, std::size_t> by_prefix_;
    std::map<std::string, std::size_t> by_iri_;
    std::string project_iri_;
};

struct Iri {
    std::string value;
    auto operator<=>(const Iri&) const = default;
};

using Object = std::variant<LiteralValue, Iri>;

/// EAV statement. subject is an absolute IRI or a blank-node
/// label of the form "_:label".
struct Statement {
    std::string subject;
    Term predicate;
    Object object;

    auto operator<=>(const Statement&) const = default;
};

inline bool is_blank_node(std::string_view subject) {
    return subject.starts_with("_:");
}

}  // namespace specimeta
