#include "specimeta/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace specimeta::ingest {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
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

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view bytes) {
    if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool in_quotes = false;
    bool cell_was_quoted = false;
    std::size_t i = 0;

    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
        cell_was_quoted = false;
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back(std::move(row));
        row.clear();
    };

    while (i < bytes.size()) {
        char c = bytes[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"' && cell.empty() && !cell_was_quoted) {
            in_quotes = true;
            cell_was_quoted = true;
        } else if (c == ',') {
            end_cell();
        } else if (c == '\r') {
            if (i + 1 < bytes.size() && bytes[i + 1] == '\n') ++i;
            end_row();
        } else if (c == '\n') {
            end_row();
        } else {
            cell += c;
        }
        ++i;
    }
    if (in_quotes) throw MalformedCsv(rows.size() + 1);
    // final row without trailing newline
    if (!cell.empty() || cell_was_quoted || !row.empty()) end_row();
    return rows;
}

Delivery parse_record_table(std::string_view bytes,
                            const std::string& id_column,
                            const std::string& source_name) {
    auto rows = parse_csv(bytes);
    if (rows.empty()) throw MissingHeader("input has no header row");

    const auto& header = rows.front();
    std::size_t id_idx = header.size();
    std::string wanted = lower(trim(id_column));
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (lower(trim(header[c])) == wanted) {
            id_idx = c;
            break;
        }
    }
    if (id_idx == header.size())
        throw MissingHeader("id column \"" + id_column + "\" not in header");

    Delivery d;
    d.source_name = source_name;
    d.received_at = std::chrono::system_clock::now();

    std::set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        std::size_t row_number = r + 1;
        std::string id = id_idx < cells.size() ? cells[id_idx] : "";
        if (trim(id).empty()) {
            d.rejected.push_back({row_number, "blank id column"});
            continue;
        }
        if (!seen.insert(id).second) throw DuplicateSourceId(id, row_number);

        SourceRecord rec;
        rec.source_id = id;
        for (std::size_t c = 0; c < header.size(); ++c)
            rec.fields.emplace_back(header[c],
                                    c < cells.size() ? cells[c] : "");
        d.records.push_back(std::move(rec));
    }
    return d;
}

LiteralValue coerce_value(const std::string& raw, Datatype target) {
    std::string t = trim(raw);
    if (target == Datatype::String) return LiteralValue{t, Datatype::String};
    if (!lexical_valid(t, target)) throw CoercionError(raw, target);
    return LiteralValue{t, target};
}

std::string render_reject_report(const std::vector<RejectedRow>& rejected) {
    std::ostringstream out;
    out << "rowNumber,reason\r\n";
    for (const auto& r : rejected)
        out << r.row_number << "," << csv_quote(r.reason) << "\r\n";
    return out.str();
}

}  // namespace specimeta::ingest
