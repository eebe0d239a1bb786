#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "specimeta/core.hpp"

namespace specimeta::ark {

// 29-symbol betanumeric alphabet used for blades, check characters
// and qualifier components.
inline constexpr std::string_view kAlphabet = "0123456789bcdfghjkmnpqrstvwxz";

struct BadNaan : Error {
    explicit BadNaan(const std::string& naan)
        : Error("NAAN must be exactly 5 digits: " + naan) {}
};
struct EmptyKey : Error {
    EmptyKey() : Error("source key must be non-empty") {}
};
struct NotAnArk : Error {
    explicit NotAnArk(const std::string& text)
        : Error("not an ARK: " + text) {}
};
struct BadCheckChar : Error {
    explicit BadCheckChar(const std::string& text)
        : Error("ARK check character does not verify: " + text) {}
};
struct BadQualifier : Error {
    explicit BadQualifier(const std::string& q)
        : Error("bad ARK qualifier component: " + q) {}
};

struct ArkId {
    std::string naan;               // 5 digits
    std::string shoulder;           // "fk4"
    std::string blade;              // 10 betanumeric chars
    char check = '0';               // NCDA check character
    std::vector<std::string> qualifiers;

    /// "ark:/<naan>/<shoulder><blade><check>[/<qualifier>...]"
    std::string render() const;

    /// Resolver-prefixed IRI form: "https://n2t.net/" + render().
    std::string iri() const;

    auto operator<=>(const ArkId&) const = default;
};

/// Position-weighted mod-29 check character over naan + "/" + shoulderBlade.
/// Characters outside the betanumeric alphabet weigh zero.
char check_char(std::string_view naan, std::string_view shoulder_blade);

/// Deterministic content-keyed mint: SHA-256 of naan|class|sourceKey,
/// first 8 digest bytes big-endian, base-29 over the betanumeric
/// alphabet, zero-padded to a 10-char blade.
ArkId mint(const std::string& naan, EntityClass cls,
           const std::string& source_key);

/// Parses canonical text and verifies the check character.
ArkId parse(const std::string& text);

/// Appends one qualifier component; the base identifier is unchanged.
ArkId child(const ArkId& parent, const std::string& component);

/// Drops all qualifier components, recovering the parent.
ArkId strip_qualifier(const ArkId& a);

/// "ark:/99999/..." embedded under the resolver prefix; inverse of
/// ArkId::iri() for well-formed input.
ArkId from_iri(const std::string& iri);

inline bool is_betanumeric(char c) {
    return kAlphabet.find(c) != std::string_view::npos;
}

}  // namespace specimeta::ark
