#include "specimeta/ark.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "specimeta/digest.hpp"

namespace specimeta::ark {

namespace {

constexpr std::string_view kShoulder = "fk4";
constexpr std::string_view kResolver = "https://n2t.net/";

bool valid_naan(std::string_view naan) {
    return naan.size() == 5 &&
           std::all_of(naan.begin(), naan.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

bool all_betanumeric(std::string_view s) {
    return std::all_of(s.begin(), s.end(), is_betanumeric);
}

int ordinal(char c) {
    auto pos = kAlphabet.find(c);
    return pos == std::string_view::npos ? 0 : static_cast<int>(pos);
}

}  // namespace

std::string ArkId::render() const {
    std::string out = "ark:/" + naan + "/" + shoulder + blade;
    out += check;
    for (const auto& q : qualifiers) {
        out += '/';
        out += q;
    }
    return out;
}

std::string ArkId::iri() const { return std::string(kResolver) + render(); }

char check_char(std::string_view naan, std::string_view shoulder_blade) {
    std::string s = std::string(naan) + "/" + std::string(shoulder_blade);
    long sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        sum += ordinal(s[i]) * static_cast<long>(i + 1);
    return kAlphabet[sum % 29];
}

ArkId mint(const std::string& naan, EntityClass cls,
           const std::string& source_key) {
    if (!valid_naan(naan)) throw BadNaan(naan);
    if (source_key.empty()) throw EmptyKey();

    auto digest =
        sha256(naan + "|" + class_name(cls) + "|" + source_key);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | digest[i];

    // 29^10 fits in 64 bits; reduce so the blade is exactly 10 chars.
    std::uint64_t cap = 1;
    for (int i = 0; i < 10; ++i) cap *= 29;
    v %= cap;

    std::string blade(10, kAlphabet[0]);
    for (int i = 9; i >= 0; --i) {
        blade[i] = kAlphabet[v % 29];
        v /= 29;
    }

    ArkId a;
    a.naan = naan;
    a.shoulder = kShoulder;
    a.blade = blade;
    a.check = check_char(naan, a.shoulder + a.blade);
    return a;
}

ArkId parse(const std::string& text) {
    constexpr std::string_view scheme = "ark:/";
    if (!text.starts_with(scheme)) throw NotAnArk(text);
    std::string_view rest{text};
    rest.remove_prefix(scheme.size());

    auto slash = rest.find('/');
    if (slash == std::string_view::npos) throw NotAnArk(text);
    std::string_view naan = rest.substr(0, slash);
    if (!valid_naan(naan)) throw NotAnArk(text);
    rest.remove_prefix(slash + 1);

    auto name_end = rest.find('/');
    std::string_view name =
        name_end == std::string_view::npos ? rest : rest.substr(0, name_end);
    // shoulder(3) + blade(10) + check(1)
    if (name.size() != 14 || !name.starts_with(kShoulder)) throw NotAnArk(text);
    std::string_view blade = name.substr(3, 10);
    char check = name.back();
    if (!all_betanumeric(blade) || !is_betanumeric(check)) throw NotAnArk(text);

    ArkId a;
    a.naan = std::string(naan);
    a.shoulder = std::string(kShoulder);
    a.blade = std::string(blade);
    a.check = check;
    if (check_char(a.naan, a.shoulder + a.blade) != check)
        throw BadCheckChar(text);

    if (name_end != std::string_view::npos) {
        rest.remove_prefix(name_end + 1);
        std::size_t start = 0;
        std::string rs{rest};
        while (start <= rs.size()) {
            auto end = rs.find('/', start);
            std::string comp =
                rs.substr(start, end == std::string::npos ? std::string::npos
                                                          : end - start);
            if (comp.empty() || !all_betanumeric(comp))
                throw BadQualifier(comp);
            a.qualifiers.push_back(std::move(comp));
            if (end == std::string::npos) break;
            start = end + 1;
        }
    }
    return a;
}

ArkId child(const ArkId& parent, const std::string& component) {
    if (component.empty() || !all_betanumeric(component))
        throw BadQualifier(component);
    ArkId c = parent;
    c.qualifiers.push_back(component);
    return c;
}

ArkId strip_qualifier(const ArkId& a) {
    ArkId base = a;
    base.qualifiers.clear();
    return base;
}

ArkId from_iri(const std::string& iri) {
    if (!iri.starts_with(kResolver)) throw NotAnArk(iri);
    return parse(iri.substr(kResolver.size()));
}

}  // namespace specimeta::ark
