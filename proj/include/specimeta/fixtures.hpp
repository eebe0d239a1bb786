#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace specimeta::fixtures {

struct CorpusSpec {
    std::size_t record_count = 100;
    std::uint64_t seed = 1;
    std::vector<std::pair<std::string, std::string>> genus_pool = {
        {"Carassius", "auratus"},     {"Notropis", "atherinoides"},
        {"Lepomis", "macrochirus"},   {"Esox", "lucius"},
        {"Micropterus", "salmoides"}, {"Perca", "flavescens"},
    };
    double missing_field_rate = 0.0;
    double ocr_noise_rate = 0.0;
};

/// One CSV per metadata source plus OCR label texts. Pure function of
/// the spec: identical specs yield identical bytes.
struct Corpus {
    std::string media_csv;      // Multimedia     (raw image)
    std::string event_csv;      // CollectionEvent (specimen)
    std::string iq_csv;         // IQMetadata     (bounding box image)
    std::string extended_csv;   // ExtendedImageMetadata (segmentation mask)
    std::string admin_csv;      // Batch          (administrative)
    std::vector<std::pair<std::string, std::string>> labels;  // key -> OCR text

    std::string labels_csv() const;
};

Corpus generate(const CorpusSpec& spec);

/// Source name -> rule file bytes for the generated corpus, one rule
/// set per metadata source.
std::vector<std::pair<std::string, std::string>> default_rule_files();

}  // namespace specimeta::fixtures
