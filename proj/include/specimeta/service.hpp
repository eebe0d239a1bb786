#pragma once

#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "specimeta/export.hpp"
#include "specimeta/graph.hpp"

namespace httplib {
class Server;
}

namespace specimeta::service {

struct SearchHit {
    std::string ark;
    std::string entity_class;
    std::optional<std::string> genus;
    std::optional<std::string> scientific_name;
};

/// Collection events with the exact stored genus, mapped to their
/// parent Multimedia entities, in ARK order.
std::vector<SearchHit> search_by_genus(const graph::Graph& g,
                                       const std::string& genus);

std::optional<SearchHit> search_by_ark(const graph::Graph& g,
                                       const ark::ArkId& a);

/// Read-only HTTP facade over an immutable graph snapshot.
///   GET /api/v1/search?genus=...|ark=...
///   GET /api/v1/entities/{ark}
///   GET /api/v1/bundles/{ark}.zip
///   GET /healthz
class Server {
public:
    Server(graph::Graph snapshot, std::string citation_text);
    ~Server();

    /// Blocks serving requests. Returns false if the address can't be bound.
    bool listen(const std::string& host, int port);

    /// For tests: bind an ephemeral port, serve on a background thread.
    int listen_on_any_port(const std::string& host);
    void stop();

    const graph::Graph& snapshot() const { return graph_; }

private:
    void wire_routes();

    graph::Graph graph_;
    std::string citation_;
    std::unique_ptr<httplib::Server> http_;
    std::thread listener_;
};

}  // namespace specimeta::service
