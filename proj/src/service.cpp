#include "anc/service.hpp"

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "anc/diagram.hpp"
#include "anc/render.hpp"

namespace anc {

using nlohmann::json;

namespace {

struct Slot {
  std::mutex writer;  // one logical writer per workspace
  std::shared_ptr<const Workspace> current;
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return 400;
    case ErrorCode::UnknownDiagram: return 404;
    default: return 422;
  }
}

json error_body(const Error& e) {
  return {{"reason", to_string(e.code())},
          {"detail", e.reason()},
          {"step", e.step() ? json(*e.step()) : json(nullptr)},
          {"height", e.height() ? json(*e.height()) : json(nullptr)}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) { send_json(res, status_for(e.code()), error_body(e)); }

std::string quoted(const std::string& hash) { return "\"" + hash + "\""; }

std::string unquote(std::string s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::size_t natural(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(ErrorCode::ParseError, std::string(what) + " must be a natural number");
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> naturals(const json& v, const char* what) {
  if (!v.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& x : v) out.push_back(natural(x, what));
  return out;
}

const json& member(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return *it;
}

Path path_of(const json& body) {
  auto it = body.find("path");
  if (it == body.end()) return {};
  if (!it->is_string()) throw Error(ErrorCode::ParseError, "path must be a string like \"s1,r0\"");
  return parse_path(it->get<std::string>());
}

json parse_body(const std::string& text) {
  try {
    json body = json::parse(text);
    if (!body.is_object()) throw Error(ErrorCode::ParseError, "request body must be a JSON object");
    return body;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("request body: ") + e.what());
  }
}

// {"path": "s0", "window": [a, b], "bias": "none" | "lower" | "higher"}
ContractionDirective contraction_of(const json& body) {
  ContractionDirective dir;
  dir.path = path_of(body);
  const auto window = naturals(member(body, "window"), "window");
  if (window.size() != 2) throw Error(ErrorCode::ParseError, "window must be [a, b]");
  dir.a = window[0];
  dir.b = window[1];
  if (auto it = body.find("bias"); it != body.end() && !it->is_null()) {
    const std::string b = it->is_string() ? it->get<std::string>() : "";
    if (b == "lower") dir.bias = Bias::Lower;
    else if (b == "higher") dir.bias = Bias::Higher;
    else if (b != "none") throw Error(ErrorCode::ParseError, "bias must be none, lower or higher");
  }
  return dir;
}

// {"path": "", "height": i, "first": [..], "second": [..], "order": "lower" | "higher"}
ExpansionDirective expansion_of(const json& body) {
  ExpansionDirective dir;
  dir.path = path_of(body);
  dir.height = natural(member(body, "height"), "height");
  dir.first = naturals(member(body, "first"), "first");
  dir.second = naturals(member(body, "second"), "second");
  if (auto it = body.find("order"); it != body.end() && !it->is_null()) {
    const std::string o = it->is_string() ? it->get<std::string>() : "";
    if (o == "lower") dir.order = SplitOrder::Lower;
    else if (o == "higher") dir.order = SplitOrder::Higher;
    else throw Error(ErrorCode::ParseError, "order must be lower or higher");
  }
  return dir;
}

}  // namespace

struct Service::Impl {
  ServiceOptions options;
  httplib::Server server;
  mutable std::shared_mutex store_mutex;
  std::map<std::string, std::shared_ptr<Slot>> store;
  std::size_t next_id = 1;

  explicit Impl(ServiceOptions o) : options(std::move(o)) {
    restore();
    routes();
  }

  void restore() {
    if (options.data_dir.empty()) return;
    std::filesystem::create_directories(options.data_dir);
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(options.data_dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream bytes;
      bytes << in.rdbuf();
      auto slot = std::make_shared<Slot>();
      slot->current = std::make_shared<const Workspace>(load(bytes.str(), {options.policy.permissive}));
      const std::string id = p.stem().string();
      store[id] = slot;
      if (id.size() > 1 && id[0] == 'w') {
        try {
          next_id = std::max(next_id, std::stoul(id.substr(1)) + 1);
        } catch (const std::exception&) {
        }
      }
    }
  }

  void persist(const std::string& id, const Workspace& w) const {
    if (options.data_dir.empty()) return;
    const auto dir = std::filesystem::path(options.data_dir);
    const auto tmp = dir / (id + ".json.tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << save(w);
      if (!out) throw Error(ErrorCode::AssertionFailed, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, dir / (id + ".json"));
  }

  std::shared_ptr<Slot> find(const std::string& id) const {
    std::shared_lock lock(store_mutex);
    auto it = store.find(id);
    return it == store.end() ? nullptr : it->second;
  }

  std::shared_ptr<const Workspace> read(const std::string& id) const {
    auto slot = find(id);
    if (!slot) return nullptr;
    std::lock_guard lock(slot->writer);
    return slot->current;
  }

  static void not_found(httplib::Response& res, const std::string& id) {
    send_json(res, 404, error_body(Error(ErrorCode::UnknownDiagram, "no workspace '" + id + "'")));
  }

  static void ok(httplib::Response& res, const Workspace& w, json body) {
    res.set_header("ETag", quoted(w.hash()));
    body["hash"] = w.hash();
    send_json(res, 200, body);
  }

  // Runs `step` as the single writer of workspace `id`.
  void mutate(const httplib::Request& req, httplib::Response& res, const std::string& id,
              const std::function<std::pair<Workspace, json>(const Workspace&)>& step) {
    auto slot = find(id);
    if (!slot) return not_found(res, id);
    std::lock_guard lock(slot->writer);
    const Workspace& before = *slot->current;
    if (req.has_header("If-Match")) {
      const std::string expected = unquote(req.get_header_value("If-Match"));
      if (expected != "*" && expected != before.hash()) {
        res.set_header("ETag", quoted(before.hash()));
        send_json(res, 409, error_body(Error(ErrorCode::AssertionFailed, "workspace changed; current hash " + before.hash())));
        return;
      }
    }
    try {
      auto [after, body] = step(before);
      persist(id, after);
      slot->current = std::make_shared<const Workspace>(std::move(after));
      ok(res, *slot->current, std::move(body));
    } catch (const Error& e) {
      send_error(res, e);
    }
  }

  std::string add(Workspace w) {
    std::string id;
    auto slot = std::make_shared<Slot>();
    slot->current = std::make_shared<const Workspace>(std::move(w));
    {
      std::unique_lock lock(store_mutex);
      id = "w" + std::to_string(next_id++);
      store[id] = slot;
    }
    persist(id, *slot->current);
    return id;
  }

  void routes() {
    server.Post("/workspaces", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        Workspace w = req.body.empty() ? Workspace() : load(req.body, {options.policy.permissive});
        const std::string hash = w.hash();
        const std::string id = add(std::move(w));
        res.set_header("ETag", quoted(hash));
        send_json(res, 201, {{"id", id}, {"hash", hash}});
      } catch (const Error& e) {
        send_error(res, e);
      }
    });

    server.Get(R"(/workspaces/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto w = read(req.matches[1]);
      if (!w) return not_found(res, req.matches[1]);
      res.set_header("ETag", quoted(w->hash()));
      res.set_content(save(*w), "application/json");
    });

    server.Get(R"(/workspaces/([^/]+)/diagrams/([^/]+)/slice)", [this](const httplib::Request& req,
                                                                       httplib::Response& res) {
      auto w = read(req.matches[1]);
      if (!w) return not_found(res, req.matches[1]);
      try {
        const Diagram s = slice(w->diagram(req.matches[2]), parse_path(req.get_param_value("path")));
        const LayerGraph g = project(w->signature(), s);
        const std::string format = req.has_param("format") ? req.get_param_value("format") : "svg";
        res.set_header("ETag", quoted(w->hash()));
        if (format == "svg") {
          res.set_content(emit_svg(w->signature(), g), "image/svg+xml");
        } else if (format == "graph") {
          res.set_content(graph_to_json(w->signature(), g).dump(), "application/json");
        } else if (format == "text") {
          res.set_content(emit_text(w->signature(), g), "text/plain");
        } else {
          throw Error(ErrorCode::ParseError, "format must be svg, graph or text");
        }
      } catch (const Error& e) {
        send_error(res, e);
      }
    });

    server.Post(R"(/workspaces/([^/]+)/diagrams/([^/]+)/contract)", [this](const httplib::Request& req,
                                                                           httplib::Response& res) {
      const std::string name = req.matches[2];
      mutate(req, res, req.matches[1], [&](const Workspace& w) {
        const ContractionDirective dir = contraction_of(parse_body(req.body));
        const auto r = contract_at(w.context(options.policy), w.diagram(name), dir);
        const std::string command = command_text(name, dir);
        Workspace after = w.with_diagram(name, r.result, command, false);
        json body = {{"command", command},
                     {"length", r.result.length()},
                     {"notes", r.notes},
                     {"diagram", encode_diagram(w.signature(), r.result)}};
        return std::pair{std::move(after), std::move(body)};
      });
    });

    server.Post(R"(/workspaces/([^/]+)/diagrams/([^/]+)/expand)", [this](const httplib::Request& req,
                                                                         httplib::Response& res) {
      const std::string name = req.matches[2];
      mutate(req, res, req.matches[1], [&](const Workspace& w) {
        const ExpansionDirective dir = expansion_of(parse_body(req.body));
        const auto r = expand_at(w.context(options.policy), w.diagram(name), dir);
        const std::string command = command_text(name, dir);
        Workspace after = w.with_diagram(name, r.result, command, false);
        json body = {{"command", command},
                     {"length", r.result.length()},
                     {"notes", r.notes},
                     {"diagram", encode_diagram(w.signature(), r.result)}};
        return std::pair{std::move(after), std::move(body)};
      });
    });

    server.Post(R"(/workspaces/([^/]+)/undo)", [this](const httplib::Request& req, httplib::Response& res) {
      mutate(req, res, req.matches[1], [](const Workspace& w) { return std::pair{undo(w), json::object()}; });
    });

    server.Get(R"(/workspaces/([^/]+)/log)", [this](const httplib::Request& req, httplib::Response& res) {
      auto w = read(req.matches[1]);
      if (!w) return not_found(res, req.matches[1]);
      res.set_header("ETag", quoted(w->hash()));
      if (req.get_param_value("format") == "script") {
        std::string script;
        for (const auto& e : w->log()) script += e.command + "\n";
        res.set_content(script, "text/plain");
        return;
      }
      json log = json::array();
      for (const auto& e : w->log()) {
        log.push_back({{"command", e.command},
                       {"target", e.target},
                       {"before_hash", e.before_hash},
                       {"after_hash", e.after_hash}});
      }
      res.set_content(log.dump(), "application/json");
    });
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
Service::~Service() { stop(); }

int Service::bind_any(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool Service::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }
bool Service::run() { return impl_->server.listen_after_bind(); }
void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}
void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

std::string Service::add(Workspace w) { return impl_->add(std::move(w)); }

std::optional<Workspace> Service::snapshot(const std::string& id) const {
  auto w = impl_->read(id);
  if (!w) return std::nullopt;
  return *w;
}

}  // namespace anc
