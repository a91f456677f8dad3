#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "etext/pipeline.hpp"
#include "json.hpp"

namespace etext::gateway {

// Thrown for a request the client got wrong; maps to HTTP 400.
class BadRequest : public Error {
 public:
  using Error::Error;
};

// Read-only JSON views over loaded artifacts. Every member is const and the
// artifacts are never modified, so one Service may answer concurrent
// requests.
class Service {
 public:
  explicit Service(Artifacts artifacts) : artifacts_(std::move(artifacts)) {}

  const Artifacts& artifacts() const { return artifacts_; }

  // Topic forest from authored subClassOf edges, children in book order.
  nlohmann::json toc() const;
  // Topics, descriptions and questions in book order.
  nlohmann::json book() const;
  // nullopt for a well-formed id that is not in the graph; BadRequest for a
  // malformed one.
  std::optional<nlohmann::json> node(std::string_view id) const;
  // Parses a QueryRequest body and runs it. Throws BadRequest.
  nlohmann::json query(const nlohmann::json& body) const;

  static QueryRequest parse_query_request(const nlohmann::json& body);

 private:
  nlohmann::json topic_json(const NodeRef& topic, int depth) const;

  Artifacts artifacts_;
};

// JSON rendering of a query response; shared with tests for parity checks.
nlohmann::json query_response_json(const QueryResponse& response, const QueryRequest& request,
                                   const ContentBundle& bundle);

// HTTP front end: GET /api/toc, GET /api/book, GET /api/node/{id},
// POST /api/query, and static files (or a placeholder page) at /.
class HttpServer {
 public:
  HttpServer(const Service& service, std::optional<std::filesystem::path> static_dir);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without serving. Port 0 picks a free port. Returns the bound port
  // or throws Error.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace etext::gateway
