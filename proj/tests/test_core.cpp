#include <doctest.h>

#include "specimeta/core.hpp"

using namespace specimeta;

namespace {
const std::pair<const char*, const char*> kSeedRows[] = {
    {"ac", "http://rs.tdwg.org/ac/terms/"},
    {"crs", "http://ns.adobe.com/camera-raw-settings/1.0/"},
    {"dwc", "http://rs.tdwg.org/dwc/terms/"},
    {"dwciri", "http://rs.tdwg.org/dwc/iri/"},
    {"exif", "http://ns.adobe.com/exif/1.0/"},
    {"Iptc4xmpCore", "http://iptc.org/std/Iptc4xmpCore/1.0/xmlns/"},
    {"photoshop", "http://ns.adobe.com/photoshop/1.0/"},
    {"plus", "http://ns.useplus.org/ldf/xmp/1.0/"},
    {"xmp", "http://ns.adobe.com/xap/1.0/"},
    {"xmpBJ", "http://ns.adobe.com/xap/1.0/bj/"},
    {"xmpMM", "http://ns.adobe.com/xap/1.0/mm/"},
};
}

TEST_CASE("registry seed resolves all standard prefixes byte for byte") {
    auto reg = NamespaceRegistry::standard();
    for (const auto& [prefix, iri] : kSeedRows)
        CHECK(reg.resolve_prefix(prefix).iri == iri);
    CHECK(reg.resolve_prefix("dcterms").iri == "http://purl.org/dc/terms/");
    CHECK(reg.resolve_prefix("bgnn").iri == "https://bgnn.example.org/ns#");
}

TEST_CASE("resolve_prefix rejects unknown prefixes") {
    auto reg = NamespaceRegistry::standard();
    CHECK_THROWS_AS(reg.resolve_prefix("zzz"), UnknownPrefix);
    // prefix lookup is case-sensitive
    CHECK_THROWS_AS(reg.resolve_prefix("DWC"), UnknownPrefix);
    CHECK_NOTHROW(reg.resolve_prefix("Iptc4xmpCore"));
}

TEST_CASE("expand and compact") {
    auto reg = NamespaceRegistry::standard();
    CHECK(reg.expand({"dwc", "genus"}) ==
          "http://rs.tdwg.org/dwc/terms/genus");
    CHECK_THROWS_AS(reg.expand({"zzz", "x"}), UnknownPrefix);
    CHECK_THROWS_AS(reg.compact("http://example.org/nothing"),
                    UncompactableIri);

    SUBCASE("longest-prefix match wins over the shorter xmp namespace") {
        auto t = reg.compact("http://ns.adobe.com/xap/1.0/mm/InstanceID");
        CHECK(t.prefix == "xmpMM");
        CHECK(t.local == "InstanceID");
    }
}

TEST_CASE("expand/compact round-trips over every registered namespace") {
    auto reg = NamespaceRegistry::standard();
    for (const auto& ns : reg.entries()) {
        for (const char* local : {"genus", "InstanceID", "x1"}) {
            Term t{ns.prefix, local};
            std::string iri = reg.expand(t);
            CHECK(reg.compact(iri) == t);
            CHECK(reg.expand(reg.compact(iri)) == iri);
        }
    }
}

TEST_CASE("entity classes form a closed enumeration") {
    CHECK(class_from_name("Multimedia") == EntityClass::Multimedia);
    CHECK(class_from_name("Collection event") == EntityClass::CollectionEvent);
    CHECK(class_from_name("IQ metadata") == EntityClass::IQMetadata);
    CHECK(class_from_name("ExtendedImageMetadata") ==
          EntityClass::ExtendedImageMetadata);
    CHECK(class_from_name("Batch") == EntityClass::Batch);
    CHECK_FALSE(class_from_name("Specimen").has_value());
    CHECK_FALSE(class_from_name("multimedia").has_value());

    auto reg = NamespaceRegistry::standard();
    CHECK(reg.class_iri(EntityClass::IQMetadata) ==
          "https://bgnn.example.org/ns#IQMetadata");
}

TEST_CASE("literal lexical validation") {
    CHECK_NOTHROW(LiteralValue::make("42", Datatype::Integer));
    CHECK_NOTHROW(LiteralValue::make("-7", Datatype::Integer));
    CHECK_THROWS_AS(LiteralValue::make("4.2", Datatype::Integer),
                    InvalidLiteral);
    CHECK_NOTHROW(LiteralValue::make("12.5", Datatype::Decimal));
    CHECK_THROWS_AS(LiteralValue::make("12,5", Datatype::Decimal),
                    InvalidLiteral);
    CHECK_NOTHROW(LiteralValue::make("true", Datatype::Boolean));
    CHECK_THROWS_AS(LiteralValue::make("True", Datatype::Boolean),
                    InvalidLiteral);
    CHECK_NOTHROW(
        LiteralValue::make("2021-07-04T00:00:00Z", Datatype::DateTime));
    CHECK_NOTHROW(
        LiteralValue::make("2021-07-04T10:30:00-05:00", Datatype::DateTime));
    CHECK_THROWS_AS(LiteralValue::make("2021-07-04", Datatype::DateTime),
                    InvalidLiteral);
    CHECK_NOTHROW(LiteralValue::make("https://n2t.net/x", Datatype::AnyUri));
    CHECK_THROWS_AS(LiteralValue::make("not a uri", Datatype::AnyUri),
                    InvalidLiteral);
    CHECK_NOTHROW(LiteralValue::make("anything at all", Datatype::String));
}
