#include "etext/service.hpp"

#include <algorithm>
#include <vector>

#include "httplib.h"

namespace etext::gateway {

namespace {

using nlohmann::json;

constexpr int kMaxTocDepth = 64;

constexpr const char kPlaceholderPage[] = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>e-textbook</title></head>
<body>
<h1>e-textbook service</h1>
<p>The reader UI assets are not installed. Start the server with
<code>--static &lt;dir&gt;</code> to serve them. The JSON API is available at
<code>/api/toc</code>, <code>/api/book</code>, <code>/api/node/{id}</code> and
<code>POST /api/query</code>.</p>
</body></html>
)";

std::vector<NodeRef> authored_sources(const KnowledgeGraph& g, const NodeRef& object,
                                      EdgeLabel label) {
  std::vector<NodeRef> out;
  for (const auto& s : g.in_neighbors(object, label)) {
    if (g.provenance(s, label, object) == Provenance::kAuthored) out.push_back(s);
  }
  return out;
}

std::vector<NodeRef> authored_targets(const KnowledgeGraph& g, const NodeRef& subject,
                                      EdgeLabel label) {
  std::vector<NodeRef> out;
  for (const auto& o : g.neighbors(subject, label)) {
    if (g.provenance(subject, label, o) == Provenance::kAuthored) out.push_back(o);
  }
  return out;
}

json ids(const std::vector<NodeRef>& nodes) {
  json out = json::array();
  for (const auto& n : nodes) out.push_back(n.str());
  return out;
}

void json_reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

}  // namespace

json Service::topic_json(const NodeRef& topic, int depth) const {
  const auto& g = artifacts_.graph;
  const auto& bundle = artifacts_.bundle;
  const auto* record = bundle.find(topic);

  auto by_book_order = [&](const NodeRef& a, const NodeRef& b) {
    const auto pa = bundle.position(a);
    const auto pb = bundle.position(b);
    return pa != pb ? pa < pb : a < b;
  };

  json node = {{"id", topic.str()},
               {"title", record ? record->value : std::string(topic.local_id())},
               {"anchor", record ? json(record->anchor) : json(nullptr)}};

  auto members = authored_sources(g, topic, EdgeLabel::kTypeOf);
  std::erase_if(members, [](const NodeRef& n) { return n.ns() != Namespace::kDescription; });
  std::sort(members.begin(), members.end(), by_book_order);
  node["first_description"] = members.empty() ? json(nullptr) : json(members.front().str());

  json children = json::array();
  if (depth < kMaxTocDepth) {
    auto subtopics = authored_sources(g, topic, EdgeLabel::kSubClassOf);
    std::sort(subtopics.begin(), subtopics.end(), by_book_order);
    for (const auto& child : subtopics) children.push_back(topic_json(child, depth + 1));
  }
  node["children"] = std::move(children);
  return node;
}

json Service::toc() const {
  const auto& g = artifacts_.graph;
  std::vector<NodeRef> roots;
  for (const auto& n : g.nodes()) {
    if (n.ns() != Namespace::kTopic) continue;
    if (authored_targets(g, n, EdgeLabel::kSubClassOf).empty()) roots.push_back(n);
  }
  const auto& bundle = artifacts_.bundle;
  std::sort(roots.begin(), roots.end(), [&](const NodeRef& a, const NodeRef& b) {
    const auto pa = bundle.position(a);
    const auto pb = bundle.position(b);
    return pa != pb ? pa < pb : a < b;
  });
  json topics = json::array();
  for (const auto& root : roots) topics.push_back(topic_json(root, 0));
  return {{"topics", std::move(topics)}};
}

json Service::book() const {
  const auto& g = artifacts_.graph;
  json items = json::array();
  for (const auto& record : artifacts_.bundle.records()) {
    const auto ns = record.node.ns();
    if (ns != Namespace::kTopic && ns != Namespace::kDescription && ns != Namespace::kQuestion) {
      continue;
    }
    json item = {{"id", record.node.str()},
                 {"namespace", std::string(namespace_prefix(ns))},
                 {"anchor", record.anchor},
                 {"html", record.value}};
    if (ns == Namespace::kDescription) {
      item["topics"] = ids(authored_targets(g, record.node, EdgeLabel::kTypeOf));
    } else if (ns == Namespace::kQuestion) {
      item["targets"] = ids(authored_targets(g, record.node, EdgeLabel::kIsQuestionOf));
    }
    items.push_back(std::move(item));
  }
  return {{"items", std::move(items)}};
}

std::optional<json> Service::node(std::string_view id) const {
  auto ref = NodeRef::try_parse(id);
  if (!ref) throw BadRequest("malformed node id '" + std::string(id) + "'");
  const auto& g = artifacts_.graph;
  if (!g.has_node(*ref)) return std::nullopt;
  const auto* record = artifacts_.bundle.find(*ref);
  json edges = json::object();
  for (const auto& [label, targets] : g.out_edges(*ref)) {
    edges[std::string(label_name(label))] =
        ids(std::vector<NodeRef>(targets.begin(), targets.end()));
  }
  return json{{"id", ref->str()},
              {"namespace", std::string(namespace_prefix(ref->ns()))},
              {"kind", std::string(container_name(ref->kind()))},
              {"value", record ? json(record->value) : json(nullptr)},
              {"anchor", record ? json(record->anchor) : json(nullptr)},
              {"edges", std::move(edges)}};
}

QueryRequest Service::parse_query_request(const json& body) {
  if (!body.is_object()) throw BadRequest("query body must be a JSON object");
  QueryRequest request;
  const auto seeds = body.find("seeds");
  if (seeds == body.end() || !seeds->is_array() || seeds->empty()) {
    throw BadRequest("'seeds' must be a non-empty array of node ids");
  }
  for (const auto& s : *seeds) {
    if (!s.is_string()) throw BadRequest("'seeds' entries must be strings");
    request.seeds.push_back(s.get<std::string>());
  }
  const auto target = body.find("target");
  if (target == body.end() || !target->is_string()) {
    throw BadRequest("'target' must name a container kind");
  }
  auto kind = container_from_name(target->get<std::string>());
  if (!kind) throw BadRequest("unknown target kind '" + target->get<std::string>() + "'");
  request.target = *kind;
  if (auto k = body.find("k"); k != body.end()) {
    if (!k->is_number_integer() || k->get<long long>() < 1) {
      throw BadRequest("'k' must be a positive integer");
    }
    request.k = k->get<std::size_t>();
  }
  if (auto gamma = body.find("gamma"); gamma != body.end() && !gamma->is_null()) {
    if (!gamma->is_number()) throw BadRequest("'gamma' must be a number");
    request.params.gamma = gamma->get<double>();
  }
  if (auto d = body.find("d_max"); d != body.end() && !d->is_null()) {
    if (!d->is_number_integer()) throw BadRequest("'d_max' must be an integer");
    request.params.d_max = d->get<int>();
  }
  return request;
}

json Service::query(const json& body) const {
  const auto request = parse_query_request(body);
  try {
    return query_response_json(run_query(artifacts_, request), request, artifacts_.bundle);
  } catch (const QueryError& e) {
    throw BadRequest(e.what());
  }
}

json query_response_json(const QueryResponse& response, const QueryRequest& request,
                         const ContentBundle& bundle) {
  json entries = json::array();
  std::size_t rank = 0;
  for (const auto& e : response.result.entries) {
    const auto* record = bundle.find(e.node);
    entries.push_back({{"rank", ++rank},
                       {"id", e.node.str()},
                       {"kind", std::string(container_name(e.node.kind()))},
                       {"score", e.score},
                       {"score_text", format_score(e.score)},
                       {"anchor", record ? json(record->anchor) : json(nullptr)},
                       {"preview", value_preview(bundle, e.node)}});
  }
  return {{"target", std::string(container_name(response.result.target_kind))},
          {"k", request.k},
          {"gamma", request.params.gamma},
          {"d_max", request.params.d_max},
          {"unknown_seeds", response.unknown_seeds},
          {"entries", std::move(entries)}};
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>()) {
  auto& server = impl_->server;
  // httplib's default adds SO_REUSEPORT, which would let a second server
  // share a busy port instead of failing.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        json_reply(res, 500, {{"error", what}});
      });

  server.Get("/api/toc", [&service](const httplib::Request&, httplib::Response& res) {
    json_reply(res, 200, service.toc());
  });
  server.Get("/api/book", [&service](const httplib::Request&, httplib::Response& res) {
    json_reply(res, 200, service.book());
  });
  server.Get(R"(/api/node/(.+))",
             [&service](const httplib::Request& req, httplib::Response& res) {
               try {
                 auto node = service.node(req.matches[1].str());
                 if (!node) {
                   json_reply(res, 404, {{"error", "unknown node " + req.matches[1].str()}});
                   return;
                 }
                 json_reply(res, 200, *node);
               } catch (const BadRequest& e) {
                 json_reply(res, 400, {{"error", e.what()}});
               }
             });
  server.Post("/api/query", [&service](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      json_reply(res, 400, {{"error", "request body is not valid JSON"}});
      return;
    }
    try {
      json_reply(res, 200, service.query(body));
    } catch (const BadRequest& e) {
      json_reply(res, 400, {{"error", e.what()}});
    }
  });

  const bool have_static = static_dir && std::filesystem::is_directory(*static_dir);
  if (have_static) {
    server.set_mount_point("/", static_dir->string());
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
    });
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& server = impl_->server;
  if (port == 0) {
    const int bound = server.bind_to_any_port(host);
    if (bound <= 0) throw Error("cannot bind to " + host);
    return bound;
  }
  if (!server.bind_to_port(host, port)) {
    throw Error("cannot bind to " + host + ":" + std::to_string(port) +
                " (port busy or not permitted)");
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace etext::gateway
