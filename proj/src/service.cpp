#include "specimeta/service.hpp"

#include <algorithm>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace specimeta::service {

namespace {

using nlohmann::json;

std::optional<std::string> literal_of(const graph::EntityNode& e,
                                      const Term& term) {
    for (const auto& st : e.statements)
        if (st.predicate == term)
            if (const auto* lit = std::get_if<LiteralValue>(&st.object))
                return lit->lexical;
    return std::nullopt;
}

std::optional<graph::EntityNode> collection_event_of(
    const graph::Graph& g, const graph::EntityNode& multimedia) {
    std::string part_of = g.registry().expand(graph::is_part_of());
    for (const Statement* st : g.by_predicate_iri(part_of)) {
        const auto* o = std::get_if<Iri>(&st->object);
        if (!o || o->value != multimedia.ark.iri()) continue;
        try {
            auto node = graph::get_entity(g, ark::from_iri(st->subject));
            if (node && node->cls == EntityClass::CollectionEvent) return node;
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

std::optional<std::string> scientific_name(const graph::EntityNode& event) {
    auto genus = literal_of(event, Term{"dwc", "genus"});
    if (!genus) return std::nullopt;
    auto epithet = literal_of(event, Term{"dwc", "specificEpithet"});
    return epithet ? *genus + " " + *epithet : *genus;
}

json hit_json(const SearchHit& h) {
    json j{{"ark", h.ark}, {"entityClass", h.entity_class}};
    if (h.genus) j["genus"] = *h.genus;
    if (h.scientific_name) j["scientificName"] = *h.scientific_name;
    return j;
}

json entity_json(const graph::EntityNode& e, const NamespaceRegistry& reg) {
    std::vector<Statement> ordered = e.statements;
    std::sort(ordered.begin(), ordered.end(),
              [&](const Statement& a, const Statement& b) {
                  return graph::render_statement(a, reg) <
                         graph::render_statement(b, reg);
              });
    json stmts = json::array();
    for (const auto& st : ordered) {
        json s{{"predicate", st.predicate.curie()}};
        if (const auto* iri = std::get_if<Iri>(&st.object)) {
            s["value"] = iri->value;
            s["datatype"] = "anyURI";
        } else {
            const auto& lit = std::get<LiteralValue>(st.object);
            s["value"] = lit.lexical;
            s["datatype"] = datatype_name(lit.datatype);
        }
        stmts.push_back(std::move(s));
    }
    return json{{"ark", e.ark.render()},
                {"class", class_name(e.cls)},
                {"statements", std::move(stmts)}};
}

void send_error(httplib::Response& res, int status, const std::string& error,
                const std::string& detail) {
    res.status = status;
    res.set_content(json{{"error", error}, {"detail", detail}}.dump(),
                    "application/json");
}

}  // namespace

std::vector<SearchHit> search_by_genus(const graph::Graph& g,
                                       const std::string& genus) {
    graph::Query q;
    q.patterns.push_back(
        {graph::Var{"e"}, graph::rdf_type(),
         Iri{g.registry().class_iri(EntityClass::CollectionEvent)}});
    q.patterns.push_back({graph::Var{"e"}, Term{"dwc", "genus"},
                          LiteralValue{genus, Datatype::String}});

    std::vector<SearchHit> hits;
    for (const auto& binding : graph::query(g, q)) {
        const auto& iri = std::get<Iri>(binding.at("e"));
        std::optional<graph::EntityNode> event;
        try {
            event = graph::get_entity(g, ark::from_iri(iri.value));
        } catch (const Error&) {
            continue;
        }
        if (!event || !event->parent) continue;
        auto parent = graph::get_entity(g, *event->parent);
        if (!parent) continue;

        SearchHit h;
        h.ark = parent->ark.render();
        h.entity_class = class_name(parent->cls);
        h.genus = genus;
        h.scientific_name = scientific_name(*event);
        hits.push_back(std::move(h));
    }
    std::sort(hits.begin(), hits.end(),
              [](const SearchHit& a, const SearchHit& b) { return a.ark < b.ark; });
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const SearchHit& a, const SearchHit& b) {
                               return a.ark == b.ark;
                           }),
               hits.end());
    return hits;
}

std::optional<SearchHit> search_by_ark(const graph::Graph& g,
                                       const ark::ArkId& a) {
    auto node = graph::get_entity(g, a);
    if (!node) return std::nullopt;

    SearchHit h;
    h.ark = node->ark.render();
    h.entity_class = class_name(node->cls);

    std::optional<graph::EntityNode> event;
    if (node->cls == EntityClass::CollectionEvent)
        event = node;
    else if (node->cls == EntityClass::Multimedia)
        event = collection_event_of(g, *node);
    if (event) {
        h.genus = literal_of(*event, Term{"dwc", "genus"});
        h.scientific_name = scientific_name(*event);
    }
    return h;
}

Server::Server(graph::Graph snapshot, std::string citation_text)
    : graph_(std::move(snapshot)),
      citation_(std::move(citation_text)),
      http_(std::make_unique<httplib::Server>()) {
    wire_routes();
}

Server::~Server() { stop(); }

void Server::wire_routes() {
    http_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });

    http_->Get("/api/v1/search", [this](const httplib::Request& req,
                                        httplib::Response& res) {
        bool has_genus = req.has_param("genus");
        bool has_ark = req.has_param("ark");
        if (has_genus == has_ark) {
            send_error(res, 400, "BothOrNeitherParams",
                       "exactly one of genus or ark is required");
            return;
        }
        json out = json::array();
        if (has_genus) {
            for (const auto& h :
                 search_by_genus(graph_, req.get_param_value("genus")))
                out.push_back(hit_json(h));
        } else {
            ark::ArkId a;
            try {
                a = ark::parse(req.get_param_value("ark"));
            } catch (const Error& e) {
                send_error(res, 422, "NotAnArk", e.what());
                return;
            }
            auto hit = search_by_ark(graph_, a);
            if (!hit) {
                send_error(res, 404, "NotFound", "no entity with that ARK");
                return;
            }
            out.push_back(hit_json(*hit));
        }
        res.set_content(out.dump(), "application/json");
    });

    http_->Get(R"(/api/v1/entities/(.+))", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
        ark::ArkId a;
        try {
            a = ark::parse(req.matches[1]);
        } catch (const Error& e) {
            send_error(res, 422, "NotAnArk", e.what());
            return;
        }
        auto node = graph::get_entity(graph_, a);
        if (!node) {
            send_error(res, 404, "NotFound", "no entity with that ARK");
            return;
        }
        res.set_content(entity_json(*node, graph_.registry()).dump(),
                        "application/json");
    });

    http_->Get(R"(/api/v1/bundles/(.+)\.zip)", [this](const httplib::Request& req,
                                                      httplib::Response& res) {
        ark::ArkId a;
        try {
            a = ark::parse(req.matches[1]);
        } catch (const Error& e) {
            send_error(res, 422, "NotAnArk", e.what());
            return;
        }
        std::string bytes;
        try {
            bytes = exporter::zip_bytes(
                exporter::build_bundle(graph_, a, citation_));
        } catch (const graph::UnknownRoot& e) {
            send_error(res, 404, "UnknownRoot", e.what());
            return;
        }
        res.set_header("Content-Disposition",
                       "attachment; filename=\"" + a.blade + ".zip\"");
        res.set_content(std::move(bytes), "application/zip");
    });
}

bool Server::listen(const std::string& host, int port) {
    return http_->listen(host, port);
}

int Server::listen_on_any_port(const std::string& host) {
    int port = http_->bind_to_any_port(host);
    if (port < 0) return port;
    listener_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return port;
}

void Server::stop() {
    if (http_) http_->stop();
    if (listener_.joinable()) listener_.join();
}

}  // namespace specimeta::service
