#pragma once

#include <memory>
#include <optional>
#include <string>

#include "anc/workspace.hpp"

namespace anc {

struct ServiceOptions {
  // Workspaces are written through to <data_dir>/<id>.json after every
  // mutation and reloaded at startup. Empty keeps them in memory only.
  std::string data_dir;
  MovePolicy policy{};
};

// HTTP/JSON front end over workspaces and moves.
//
//   POST /workspaces                              body: workspace file or empty
//   GET  /workspaces/{id}
//   GET  /workspaces/{id}/diagrams/{name}/slice   ?path=&format=svg|graph|text
//   POST /workspaces/{id}/diagrams/{name}/contract
//   POST /workspaces/{id}/diagrams/{name}/expand
//   POST /workspaces/{id}/undo
//   GET  /workspaces/{id}/log                      ?format=json|script
//
// Responses carry the workspace content hash as ETag. A mutation with an
// If-Match header that differs from the current hash is refused with 409.
// Library errors map to 400 (parse), 404 (unknown id or diagram) and 422,
// with body {reason, detail, step, height}.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds to a free port on `host` and returns it, or -1.
  int bind_any(const std::string& host);
  bool bind(const std::string& host, int port);
  // Serves until stop(). Blocks.
  bool run();
  void stop();
  void wait_until_ready() const;

  // Registers `w` under a fresh id, as POST /workspaces does.
  std::string add(Workspace w);
  std::optional<Workspace> snapshot(const std::string& id) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace anc
