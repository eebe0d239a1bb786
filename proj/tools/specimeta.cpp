#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "specimeta/export.hpp"
#include "specimeta/fixtures.hpp"
#include "specimeta/graph.hpp"
#include "specimeta/service.hpp"
#include "specimeta/validate.hpp"

namespace fs = std::filesystem;
using namespace specimeta;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Write to a temp sibling, then rename: no partial outputs.
void write_file_atomic(const fs::path& path, std::string_view bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

struct InputSpec {
    std::string name;  // rules file stem
    fs::path path;
};

InputSpec parse_input_arg(const std::string& arg) {
    auto eq = arg.find('=');
    if (eq == std::string::npos) return {"media", arg};
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

graph::Graph build_graph_from_inputs(const std::vector<std::string>& inputs,
                                     const fs::path& rules_dir,
                                     const std::string& id_column,
                                     const std::string& naan,
                                     const NamespaceRegistry& reg,
                                     std::size_t* issue_count) {
    std::vector<graph::RecordStatements> records;
    std::size_t issues = 0;
    for (const auto& arg : inputs) {
        auto in = parse_input_arg(arg);
        auto rules = crosswalk::load_rules(
            read_file(rules_dir / (in.name + ".csv")), reg);
        auto delivery = ingest::parse_record_table(read_file(in.path),
                                                   id_column, in.name);
        for (const auto& rej : delivery.rejected)
            std::cerr << in.path.string() << ": row " << rej.row_number
                      << " rejected: " << rej.reason << "\n";
        for (const auto& rec : delivery.records) {
            auto walked = crosswalk::apply_rules(rules, rec, reg);
            issues += walked.issues.size();
            records.push_back({rules.target_class, rec.source_id,
                               std::move(walked.pairs)});
        }
    }
    if (issue_count) *issue_count = issues;
    return graph::build_entity_graph(records, naan, reg);
}

// Query pattern text: whitespace-separated s p o; ?vars, <iri>,
// prefix:localName, "literal", or ark:/... identifiers.
std::vector<std::string> split_pattern_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::string tok;
        if (text[i] == '"') {
            tok += text[i++];
            while (i < text.size()) {
                if (text[i] == '\\' && i + 1 < text.size()) {
                    tok += text[i];
                    tok += text[i + 1];
                    i += 2;
                    continue;
                }
                tok += text[i];
                if (text[i++] == '"') break;
            }
        } else {
            while (i < text.size() &&
                   !std::isspace(static_cast<unsigned char>(text[i])))
                tok += text[i++];
        }
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

graph::PatternSlot parse_slot(const std::string& tok,
                              const NamespaceRegistry& reg) {
    if (tok.size() >= 2 && tok.front() == '?')
        return graph::Var{tok.substr(1)};
    if (tok.size() >= 2 && tok.front() == '<' && tok.back() == '>')
        return Iri{tok.substr(1, tok.size() - 2)};
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
        std::string lexical;
        for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
            if (tok[i] == '\\' && i + 2 < tok.size()) ++i;
            lexical += tok[i];
        }
        return LiteralValue{lexical, Datatype::String};
    }
    if (tok.starts_with("ark:/")) return Iri{ark::parse(tok).iri()};
    auto colon = tok.find(':');
    if (colon != std::string::npos && colon > 0 && colon + 1 < tok.size())
        return Term{tok.substr(0, colon), tok.substr(colon + 1)};
    throw Error("cannot parse query pattern token: " + tok);
}

graph::TriplePattern parse_pattern(const std::string& text,
                                   const NamespaceRegistry& reg) {
    auto tokens = split_pattern_tokens(text);
    if (tokens.size() != 3)
        throw Error("pattern must have exactly three terms: " + text);
    return {parse_slot(tokens[0], reg), parse_slot(tokens[1], reg),
            parse_slot(tokens[2], reg)};
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

int main(int argc, char** argv) {
    CLI::App app{"specimeta: specimen-image metadata pipeline"};
    app.require_subcommand(1);

    auto reg = NamespaceRegistry::standard();

    // ---- ingest ----
    auto* ingest_cmd = app.add_subcommand(
        "ingest", "Parse a raw metadata delivery and report its shape");
    std::string in_path, id_column = "CatalogNumber", source_name = "delivery";
    std::string rejects_path;
    ingest_cmd->add_option("--input", in_path, "delivery CSV")->required();
    ingest_cmd->add_option("--id-column", id_column, "key column name");
    ingest_cmd->add_option("--source-name", source_name, "provenance label");
    ingest_cmd->add_option("--rejects", rejects_path,
                           "write rejected-row report CSV here");

    // ---- graph ----
    auto* graph_cmd = app.add_subcommand(
        "graph", "Ingest, crosswalk and build the canonical graph");
    std::vector<std::string> inputs;
    std::string rules_dir, naan = "99999", graph_out;
    std::string rights_text, license_iri;
    graph_cmd->add_option("--input", inputs,
                          "delivery CSV, optionally as <source>=<path>")
        ->required();
    graph_cmd->add_option("--rules", rules_dir, "rules directory")->required();
    graph_cmd->add_option("--id-column", id_column, "key column name");
    graph_cmd->add_option("--naan", naan, "5-digit NAAN")
        ->envname("SPECIMETA_NAAN");
    graph_cmd->add_option("--out", graph_out, "output graph (.nt)")->required();
    graph_cmd->add_option("--rights-text", rights_text,
                          "rights statement attached to Multimedia entities");
    graph_cmd->add_option("--license-iri", license_iri, "license IRI");

    // ---- validate ----
    auto* validate_cmd = app.add_subcommand(
        "validate", "Check OCR label text against collection events");
    std::string graph_path, labels_path, report_out;
    double sim = validate::kDefaultSimThreshold;
    double pass = validate::kDefaultPassThreshold;
    validate_cmd->add_option("--graph", graph_path, "graph .nt")->required();
    validate_cmd->add_option("--labels", labels_path,
                             "CSV with columns CatalogNumber,LabelText")
        ->required();
    validate_cmd->add_option("--naan", naan, "5-digit NAAN")
        ->envname("SPECIMETA_NAAN");
    validate_cmd->add_option("--sim-threshold", sim, "similarity threshold");
    validate_cmd->add_option("--pass-threshold", pass, "pass threshold");
    validate_cmd->add_option("--out", report_out, "report CSV")->required();

    // ---- export ----
    auto* export_cmd =
        app.add_subcommand("export", "Build a distribution bundle zip");
    std::string root_ark, citation = "BGNN fish specimen image dataset.";
    std::string citation_file, bundle_out;
    export_cmd->add_option("--graph", graph_path, "graph .nt")->required();
    export_cmd->add_option("--root", root_ark, "root ARK")->required();
    export_cmd->add_option("--citation", citation, "preferred citation text");
    export_cmd->add_option("--citation-file", citation_file,
                           "read citation text from file");
    export_cmd->add_option("--out", bundle_out, "output zip")->required();

    // ---- query ----
    auto* query_cmd =
        app.add_subcommand("query", "Run a basic graph pattern query");
    std::vector<std::string> patterns;
    query_cmd->add_option("--graph", graph_path, "graph .nt")->required();
    query_cmd
        ->add_option("--pattern", patterns,
                     "triple pattern \"s p o\" (repeatable)")
        ->required();

    // ---- serve ----
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    std::string addr = "127.0.0.1:8080";
    serve_cmd->add_option("--graph", graph_path, "graph .nt")->required();
    serve_cmd->add_option("--addr", addr, "bind address host:port")
        ->envname("SPECIMETA_ADDR");
    serve_cmd->add_option("--citation", citation, "preferred citation text");
    serve_cmd->add_option("--citation-file", citation_file,
                          "read citation text from file");

    // ---- generate ----
    auto* generate_cmd = app.add_subcommand(
        "generate", "Write a synthetic corpus and default rule files");
    std::size_t records = 100;
    std::uint64_t seed = 1;
    double missing_rate = 0.0, ocr_noise = 0.0;
    std::string out_dir;
    generate_cmd->add_option("--records", records, "record count");
    generate_cmd->add_option("--seed", seed, "generator seed");
    generate_cmd->add_option("--missing-rate", missing_rate,
                             "blank-cell rate for non-key cells");
    generate_cmd->add_option("--ocr-noise", ocr_noise,
                             "single-character label edit rate");
    generate_cmd->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*ingest_cmd) {
            auto d = ingest::parse_record_table(read_file(in_path), id_column,
                                                source_name);
            if (!rejects_path.empty())
                write_file_atomic(rejects_path,
                                  ingest::render_reject_report(d.rejected));
            std::size_t fields = 0;
            for (const auto& r : d.records) fields += r.fields.size();
            std::cout << d.records.size() << " records, " << fields
                      << " fields, " << d.rejected.size() << " rejected rows\n";
        } else if (*graph_cmd) {
            std::size_t issues = 0;
            auto g = build_graph_from_inputs(inputs, rules_dir, id_column,
                                             naan, reg, &issues);
            if (!rights_text.empty() || !license_iri.empty()) {
                if (rights_text.empty() || license_iri.empty())
                    throw Error(
                        "--rights-text and --license-iri go together");
                std::string type_iri = reg.expand(graph::rdf_type());
                std::string mm_iri = reg.class_iri(EntityClass::Multimedia);
                std::vector<ark::ArkId> targets;
                for (const Statement* st : g.by_predicate_iri(type_iri))
                    if (const auto* o = std::get_if<Iri>(&st->object))
                        if (o->value == mm_iri)
                            targets.push_back(ark::from_iri(st->subject));
                for (const auto& a : targets)
                    graph::attach_rights(g, a, rights_text, license_iri);
            }
            write_file_atomic(graph_out, graph::serialize(g));
            std::cerr << g.size() << " statements, " << issues
                      << " crosswalk issues\n";
        } else if (*validate_cmd) {
            auto g = graph::parse_serialized(read_file(graph_path), reg);
            auto rows = ingest::parse_csv(read_file(labels_path));
            auto required = validate::default_required_terms();
            std::string report = "ark,score,pass,completeness,issueCount\r\n";
            std::size_t missing = 0;
            for (std::size_t i = 1; i < rows.size(); ++i) {
                if (rows[i].size() < 2) continue;
                auto a = ark::mint(naan, EntityClass::CollectionEvent,
                                   rows[i][0]);
                auto node = graph::get_entity(g, a);
                if (!node) {
                    ++missing;
                    std::cerr << "no CollectionEvent entity for key "
                              << rows[i][0] << "\n";
                    continue;
                }
                auto vr = validate::validate_label({rows[i][1]}, *node,
                                                   required, sim, pass);
                auto qr = validate::completeness(*node, required);
                std::ostringstream line;
                line << csv_quote(a.render()) << "," << vr.score << ","
                     << (vr.pass ? "true" : "false") << ","
                     << qr.completeness << ",0\r\n";
                report += line.str();
            }
            write_file_atomic(report_out, report);
            if (missing > 0) return 1;
        } else if (*export_cmd) {
            auto g = graph::parse_serialized(read_file(graph_path), reg);
            if (!citation_file.empty()) citation = read_file(citation_file);
            auto bundle =
                exporter::build_bundle(g, ark::parse(root_ark), citation);
            write_file_atomic(bundle_out, exporter::zip_bytes(bundle));
        } else if (*query_cmd) {
            auto g = graph::parse_serialized(read_file(graph_path), reg);
            graph::Query q;
            for (const auto& p : patterns)
                q.patterns.push_back(parse_pattern(p, reg));
            for (const auto& binding : graph::query(g, q)) {
                std::string line;
                for (const auto& [var, value] : binding) {
                    if (!line.empty()) line += ' ';
                    line += "?" + var + "=" + graph::render_bound(value);
                }
                std::cout << line << "\n";
            }
        } else if (*serve_cmd) {
            auto g = graph::parse_serialized(read_file(graph_path), reg);
            if (!citation_file.empty()) citation = read_file(citation_file);
            auto colon = addr.rfind(':');
            if (colon == std::string::npos)
                throw Error("--addr must be host:port");
            std::string host = addr.substr(0, colon);
            int port = std::stoi(addr.substr(colon + 1));
            service::Server server(std::move(g), citation);
            std::cerr << "serving on " << host << ":" << port << "\n";
            if (!server.listen(host, port))
                throw Error("cannot bind " + addr);
        } else if (*generate_cmd) {
            fixtures::CorpusSpec spec;
            spec.record_count = records;
            spec.seed = seed;
            spec.missing_field_rate = missing_rate;
            spec.ocr_noise_rate = ocr_noise;
            auto corpus = fixtures::generate(spec);
            fs::create_directories(fs::path(out_dir) / "rules");
            write_file_atomic(fs::path(out_dir) / "media.csv",
                              corpus.media_csv);
            write_file_atomic(fs::path(out_dir) / "event.csv",
                              corpus.event_csv);
            write_file_atomic(fs::path(out_dir) / "iq.csv", corpus.iq_csv);
            write_file_atomic(fs::path(out_dir) / "extended.csv",
                              corpus.extended_csv);
            write_file_atomic(fs::path(out_dir) / "admin.csv",
                              corpus.admin_csv);
            write_file_atomic(fs::path(out_dir) / "labels.csv",
                              corpus.labels_csv());
            for (const auto& [name, bytes] : fixtures::default_rule_files())
                write_file_atomic(
                    fs::path(out_dir) / "rules" / (name + ".csv"), bytes);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
