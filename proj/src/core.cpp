#include "specimeta/core.hpp"

#include <algorithm>
#include <cctype>

namespace specimeta {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

bool valid_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
        return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '+' || c == '-' || c == '.';
    });
}

bool is_absolute_iri(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    if (!valid_scheme(s.substr(0, colon))) return false;
    if (colon + 1 >= s.size()) return false;
    return std::none_of(s.begin(), s.end(), [](unsigned char c) {
        return c <= 0x20 || c == '<' || c == '>' || c == '"';
    });
}

bool valid_prefix_token(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
        return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isalnum(c); });
}

// [+-]?digits
bool parse_integer(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    return all_digits(s);
}

// [+-]?digits[.digits] | [+-]?.digits
bool parse_decimal(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return all_digits(s);
    auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return false;
    return (ip.empty() || all_digits(ip)) && (fp.empty() || all_digits(fp));
}

bool digits_at(std::string_view s, std::size_t pos, std::size_t n) {
    if (pos + n > s.size()) return false;
    return all_digits(s.substr(pos, n));
}

// YYYY-MM-DDThh:mm:ss[.frac][Z|±hh:mm]
bool parse_datetime(std::string_view s) {
    if (!digits_at(s, 0, 4) || s.size() < 19) return false;
    if (s[4] != '-' || !digits_at(s, 5, 2) || s[7] != '-' ||
        !digits_at(s, 8, 2))
        return false;
    if (s[10] != 'T') return false;
    if (!digits_at(s, 11, 2) || s[13] != ':' || !digits_at(s, 14, 2) ||
        s[16] != ':' || !digits_at(s, 17, 2))
        return false;
    auto num = [&](std::size_t pos, std::size_t n) {
        int v = 0;
        for (std::size_t i = 0; i < n; ++i) v = v * 10 + (s[pos + i] - '0');
        return v;
    };
    int month = num(5, 2), day = num(8, 2);
    if (month < 1 || month > 12 || day < 1 || day > 31) return false;
    if (num(11, 2) > 23 || num(14, 2) > 59 || num(17, 2) > 60) return false;
    std::size_t i = 19;
    if (i < s.size() && s[i] == '.') {
        ++i;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == start) return false;
    }
    if (i == s.size()) return true;
    if (s[i] == 'Z') return i + 1 == s.size();
    if (s[i] == '+' || s[i] == '-') {
        return digits_at(s, i + 1, 2) && i + 3 < s.size() && s[i + 3] == ':' &&
               digits_at(s, i + 4, 2) && i + 6 == s.size();
    }
    return false;
}

}  // namespace

const char* datatype_name(Datatype dt) {
    switch (dt) {
        case Datatype::String: return "string";
        case Datatype::Integer: return "integer";
        case Datatype::Decimal: return "decimal";
        case Datatype::Boolean: return "boolean";
        case Datatype::DateTime: return "dateTime";
        case Datatype::AnyUri: return "anyURI";
    }
    return "?";
}

std::optional<Datatype> datatype_from_name(std::string_view name) {
    for (auto dt : {Datatype::String, Datatype::Integer, Datatype::Decimal,
                    Datatype::Boolean, Datatype::DateTime, Datatype::AnyUri})
        if (name == datatype_name(dt)) return dt;
    return std::nullopt;
}

std::string datatype_iri(Datatype dt) {
    return std::string("http://www.w3.org/2001/XMLSchema#") + datatype_name(dt);
}

std::optional<Datatype> datatype_from_iri(std::string_view iri) {
    constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
    if (!iri.starts_with(xsd)) return std::nullopt;
    return datatype_from_name(iri.substr(xsd.size()));
}

bool lexical_valid(std::string_view lexical, Datatype dt) {
    switch (dt) {
        case Datatype::String: return true;
        case Datatype::Integer: return parse_integer(lexical);
        case Datatype::Decimal: return parse_decimal(lexical);
        case Datatype::Boolean: return lexical == "true" || lexical == "false";
        case Datatype::DateTime: return parse_datetime(lexical);
        case Datatype::AnyUri: return is_absolute_iri(lexical);
    }
    return false;
}

LiteralValue LiteralValue::make(std::string lexical, Datatype dt) {
    if (!lexical_valid(lexical, dt))
        throw InvalidLiteral(lexical, datatype_name(dt));
    return LiteralValue{std::move(lexical), dt};
}

const char* class_name(EntityClass c) {
    switch (c) {
        case EntityClass::Multimedia: return "Multimedia";
        case EntityClass::CollectionEvent: return "CollectionEvent";
        case EntityClass::IQMetadata: return "IQMetadata";
        case EntityClass::ExtendedImageMetadata: return "ExtendedImageMetadata";
        case EntityClass::Batch: return "Batch";
    }
    return "?";
}

std::optional<EntityClass> class_from_name(std::string_view name) {
    if (name == "Collection event") return EntityClass::CollectionEvent;
    if (name == "IQ metadata") return EntityClass::IQMetadata;
    for (auto c : kAllEntityClasses)
        if (name == class_name(c)) return c;
    return std::nullopt;
}

NamespaceRegistry NamespaceRegistry::standard(std::string project_iri) {
    NamespaceRegistry r;
    r.add("ac", "http://rs.tdwg.org/ac/terms/");
    r.add("crs", "http://ns.adobe.com/camera-raw-settings/1.0/");
    r.add("dwc", "http://rs.tdwg.org/dwc/terms/");
    r.add("dwciri", "http://rs.tdwg.org/dwc/iri/");
    r.add("exif", "http://ns.adobe.com/exif/1.0/");
    r.add("Iptc4xmpCore", "http://iptc.org/std/Iptc4xmpCore/1.0/xmlns/");
    r.add("photoshop", "http://ns.adobe.com/photoshop/1.0/");
    r.add("plus", "http://ns.useplus.org/ldf/xmp/1.0/");
    r.add("xmp", "http://ns.adobe.com/xap/1.0/");
    r.add("xmpBJ", "http://ns.adobe.com/xap/1.0/bj/");
    r.add("xmpMM", "http://ns.adobe.com/xap/1.0/mm/");
    r.add("dcterms", "http://purl.org/dc/terms/");
    r.add("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
    r.add("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
    r.add("owl", "http://www.w3.org/2002/07/owl#");
    r.add("bgnn", project_iri);
    r.project_iri_ = std::move(project_iri);
    return r;
}

void NamespaceRegistry::add(std::string prefix, std::string iri) {
    if (!valid_prefix_token(prefix))
        throw Error("bad namespace prefix: " + prefix);
    if (!is_absolute_iri(iri) || (iri.back() != '/' && iri.back() != '#'))
        throw Error("bad namespace IRI: " + iri);
    if (by_prefix_.count(prefix)) throw Error("duplicate prefix: " + prefix);
    if (by_iri_.count(iri)) throw Error("duplicate namespace IRI: " + iri);
    by_prefix_[prefix] = entries_.size();
    by_iri_[iri] = entries_.size();
    entries_.push_back(Namespace{std::move(prefix), std::move(iri)});
}

const Namespace& NamespaceRegistry::resolve_prefix(
    const std::string& prefix) const {
    auto it = by_prefix_.find(prefix);
    if (it == by_prefix_.end()) throw UnknownPrefix(prefix);
    return entries_[it->second];
}

bool NamespaceRegistry::has_prefix(const std::string& prefix) const {
    return by_prefix_.count(prefix) != 0;
}

std::string NamespaceRegistry::expand(const Term& term) const {
    return resolve_prefix(term.prefix).iri + term.local;
}

std::optional<Term> NamespaceRegistry::try_compact(
    const std::string& iri) const {
    const Namespace* best = nullptr;
    for (const auto& ns : entries_) {
        if (iri.size() > ns.iri.size() && iri.starts_with(ns.iri) &&
            (!best || ns.iri.size() > best->iri.size()))
            best = &ns;
    }
    if (!best) return std::nullopt;
    return Term{best->prefix, iri.substr(best->iri.size())};
}

Term NamespaceRegistry::compact(const std::string& iri) const {
    auto t = try_compact(iri);
    if (!t) throw UncompactableIri(iri);
    return *t;
}

std::string NamespaceRegistry::class_iri(EntityClass c) const {
    return project_iri_ + class_name(c);
}

std::string NamespaceRegistry::ontology_iri() const {
    std::string iri = project_iri_;
    if (!iri.empty() && (iri.back() == '#' || iri.back() == '/'))
        iri.pop_back();
    return iri;
}

}  // namespace specimeta
