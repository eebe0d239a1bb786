#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specimeta/core.hpp"

namespace specimeta::ingest {

struct MissingHeader : Error {
    explicit MissingHeader(const std::string& what) : Error(what) {}
};
struct DuplicateSourceId : Error {
    DuplicateSourceId(const std::string& id, std::size_t row)
        : Error("duplicate source id \"" + id + "\" at row " +
                std::to_string(row)),
          id(id), row(row) {}
    std::string id;
    std::size_t row;
};
struct MalformedCsv : Error {
    explicit MalformedCsv(std::size_t row)
        : Error("malformed CSV (unbalanced quotes) at row " +
                std::to_string(row)),
          row(row) {}
    std::size_t row;
};
struct CoercionError : Error {
    CoercionError(const std::string& raw, Datatype target)
        : Error("cannot coerce \"" + raw + "\" to " + datatype_name(target)),
          raw(raw), target(target) {}
    std::string raw;
    Datatype target;
};

struct SourceRecord {
    std::string source_id;
    // raw field name/value pairs, verbatim and in column order
    std::vector<std::pair<std::string, std::string>> fields;
};

struct RejectedRow {
    std::size_t row_number;  // 1-based, counting the header as row 1
    std::string reason;
};

struct Delivery {
    std::vector<SourceRecord> records;
    std::string source_name;
    std::chrono::system_clock::time_point received_at;
    std::vector<RejectedRow> rejected;
};

/// RFC 4180 CSV split into rows of cells. Strips a UTF-8 BOM and
/// normalizes CR/LF. Exposed for reuse by the rules loader.
std::vector<std::vector<std::string>> parse_csv(std::string_view bytes);

Delivery parse_record_table(std::string_view bytes,
                            const std::string& id_column,
                            const std::string& source_name);

/// Trims, then parses raw into a literal of the target datatype.
LiteralValue coerce_value(const std::string& raw, Datatype target);

/// rejected-row report, columns rowNumber,reason
std::string render_reject_report(const std::vector<RejectedRow>& rejected);

}  // namespace specimeta::ingest
