#include "specimeta/fixtures.hpp"

#include <cstdio>
#include <random>

namespace specimeta::fixtures {

namespace {

const char* kLocalities[] = {
    "Illinois River at Havana",  "Sangamon River near Monticello",
    "Lake Michigan at Waukegan", "Kaskaskia River at Vandalia",
    "Ohio River at Metropolis",
};
const char* kCollectors[] = {
    "P. W. Smith", "L. M. Page", "B. M. Burr", "M. A. Retzer",
};

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

bool chance(std::mt19937_64& rng, double rate) {
    return (rng() >> 11) * (1.0 / 9007199254740992.0) < rate;
}

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

void row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += csv_quote(cells[i]);
    }
    out += "\r\n";
}

// Blank non-key cells (index 0 is the key) at the given rate.
void blank_some(std::mt19937_64& rng, std::vector<std::string>& cells,
                double rate) {
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (chance(rng, rate)) cells[i].clear();
}

std::string noisy(std::mt19937_64& rng, std::string text, double rate) {
    for (char& c : text)
        if (chance(rng, rate)) c = static_cast<char>('a' + pick(rng, 26));
    return text;
}

}  // namespace

std::string Corpus::labels_csv() const {
    std::string out = "CatalogNumber,LabelText\r\n";
    for (const auto& [key, text] : labels)
        row(out, {key, text});
    return out;
}

Corpus generate(const CorpusSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    Corpus c;
    c.media_csv =
        "CatalogNumber,FileName,Format,CreateDate,AccessConstraints,"
        "LegacyNotes,Photographer Notes\r\n";
    c.event_csv =
        "CatalogNumber,Genus,Species,EventDate,Locality,Collector\r\n";
    c.iq_csv = "CatalogNumber,Width,Height,BoundingBox,Blurriness\r\n";
    c.extended_csv = "CatalogNumber,MaskQuality,TraitCount\r\n";
    c.admin_csv = "CatalogNumber,BatchName,CreatedBy\r\n";

    for (std::size_t i = 0; i < spec.record_count; ++i) {
        char key[32];
        std::snprintf(key, sizeof key, "INHS_FISH_%05zu", i + 1);
        const auto& [genus, species] =
            spec.genus_pool[pick(rng, spec.genus_pool.size())];
        std::string locality = kLocalities[pick(rng, std::size(kLocalities))];
        std::string collector = kCollectors[pick(rng, std::size(kCollectors))];
        char date[16];
        std::snprintf(date, sizeof date, "%04zu-%02zu-%02zu",
                      1990 + pick(rng, 30), 1 + pick(rng, 12),
                      1 + pick(rng, 28));
        char created[32];
        std::snprintf(created, sizeof created, "%sT%02zu:%02zu:00Z", date,
                      pick(rng, 24), pick(rng, 60));

        std::vector<std::string> media = {
            key,
            std::string(key) + ".jpg",
            "image/jpeg",
            created,
            "CC BY-NC 4.0",
            "migrated from legacy system",
            pick(rng, 4) == 0 ? "ruler visible in frame" : "",
        };
        std::vector<std::string> event = {key,  genus,    species,
                                          date, locality, collector};
        std::vector<std::string> iq = {
            key,
            std::to_string(2000 + pick(rng, 2000)),
            std::to_string(1000 + pick(rng, 1000)),
            std::to_string(pick(rng, 500)) + " " + std::to_string(pick(rng, 300)) +
                " " + std::to_string(1000 + pick(rng, 800)) + " " +
                std::to_string(500 + pick(rng, 400)),
            std::to_string(pick(rng, 100)) + "." + std::to_string(pick(rng, 100)),
        };
        std::vector<std::string> extended = {
            key,
            "0." + std::to_string(50 + pick(rng, 50)),
            std::to_string(5 + pick(rng, 10)),
        };

        blank_some(rng, media, spec.missing_field_rate);
        blank_some(rng, event, spec.missing_field_rate);
        blank_some(rng, iq, spec.missing_field_rate);
        blank_some(rng, extended, spec.missing_field_rate);

        row(c.media_csv, media);
        row(c.event_csv, event);
        row(c.iq_csv, iq);
        row(c.extended_csv, extended);

        std::string label = genus + " " + species + "\n" + key + "\n" + date +
                            " " + locality + "\n" + collector;
        c.labels.emplace_back(key, noisy(rng, label, spec.ocr_noise_rate));
    }

    if (spec.record_count > 0)
        row(c.admin_csv, {"GLIN_BATCH_001", "Great Lakes Invasives imaging",
                          "TUBRI"});
    return c;
}

std::vector<std::pair<std::string, std::string>> default_rule_files() {
    auto header = "sourcePattern,action,target,datatype,note\r\n";
    std::vector<std::pair<std::string, std::string>> files;

    files.emplace_back("media", std::string(header) +
        "@class,,Multimedia,,\r\n"
        "CatalogNumber,map,dwc:catalogNumber,string,delivery key\r\n"
        "FileName,map,bgnn:fileNameAsDelivered,string,\r\n"
        "Format,map,dcterms:format,string,\r\n"
        "CreateDate,map,xmp:CreateDate,dateTime,capture timestamp\r\n"
        "AccessConstraints,map,dcterms:accessRights,string,element remap\r\n"
        "LegacyNotes,drop,,,deprecated\r\n");

    files.emplace_back("event", std::string(header) +
        "@class,,CollectionEvent,,\r\n"
        "CatalogNumber,map,dwc:catalogNumber,string,delivery key\r\n"
        "Genus,map,dwc:genus,string,\r\n"
        "Species,map,dwc:specificEpithet,string,\r\n"
        "EventDate,map,dwc:eventDate,string,date only in deliveries\r\n"
        "Locality,map,dwc:locality,string,\r\n"
        "Collector,map,dwc:recordedBy,string,\r\n");

    files.emplace_back("iq", std::string(header) +
        "@class,,IQMetadata,,\r\n"
        "CatalogNumber,map,dwc:catalogNumber,string,delivery key\r\n"
        "Width,map,exif:PixelXDimension,integer,\r\n"
        "Height,map,exif:PixelYDimension,integer,\r\n"
        "BoundingBox,map,bgnn:boundingBox,string,x y w h\r\n"
        "Blurriness,map,bgnn:blurriness,decimal,\r\n");

    files.emplace_back("extended", std::string(header) +
        "@class,,ExtendedImageMetadata,,\r\n"
        "CatalogNumber,map,dwc:catalogNumber,string,delivery key\r\n"
        "MaskQuality,map,bgnn:maskQuality,decimal,\r\n"
        "TraitCount,map,bgnn:traitCount,integer,\r\n");

    files.emplace_back("admin", std::string(header) +
        "@class,,Batch,,\r\n"
        "CatalogNumber,map,dwc:catalogNumber,string,batch key\r\n"
        "BatchName,map,bgnn:batchName,string,\r\n"
        "CreatedBy,map,dcterms:creator,string,\r\n");

    return files;
}

}  // namespace specimeta::fixtures
