// anc: command-line front end over workspaces, moves, rendering, the oracle
// sweeps and the HTTP service.
//
// Exit codes: 0 success, 1 command failure, 2 parse or validation failure.

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anc/render.hpp"
#include "anc/service.hpp"
#include "anc/sweep.hpp"
#include "anc/workspace.hpp"

namespace fs = std::filesystem;
using namespace anc;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;

// Failures of the input itself, as opposed to a move or assertion that was
// well-formed but rejected.
bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::VersionUnsupported:
    case ErrorCode::ValidationFailed:
      return true;
    default:
      return false;
  }
}

int report(const Error& e, const std::string& context = {}) {
  std::cerr << "error: " << (context.empty() ? "" : context + ": ") << to_string(e.code()) << ": " << e.reason();
  if (e.step()) std::cerr << " (step " << *e.step() << ")";
  if (e.height()) std::cerr << " (height " << *e.height() << ")";
  std::cerr << "\n";
  return is_input_error(e.code()) ? kInvalid : kFailed;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return bytes.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw Error(ErrorCode::AssertionFailed, "cannot write " + path.string());
  }
  fs::rename(tmp, path);
}

struct Common {
  std::string workspace;
  bool permissive = false;
};

// A missing workspace file is an empty workspace, so scripts can start one.
Workspace open_workspace(const Common& c, bool must_exist) {
  if (c.workspace.empty() || (!must_exist && !fs::exists(c.workspace))) {
    if (must_exist) throw Error(ErrorCode::ParseError, "--workspace is required");
    return Workspace();
  }
  return load(read_file(c.workspace), {c.permissive});
}

ReplayOptions replay_options(const Common& c, const std::string& base_dir) {
  ReplayOptions o;
  o.policy.permissive = c.permissive;
  o.base_dir = base_dir;
  return o;
}

void add_common(CLI::App* sub, Common& c, bool required) {
  auto* opt = sub->add_option("--workspace,-w", c.workspace, "Workspace file");
  if (required) opt->required();
  sub->add_flag("--permissive", c.permissive, "Accept dimension violations and rigid-label fusion");
}

// Applies one script command to the workspace file and writes it back.
int apply_command(const Common& c, const std::string& text) {
  Workspace w = open_workspace(c, true);
  const ScriptCommand cmd = parse_command(text);
  const Workspace next = execute(w, cmd, replay_options(c, fs::path(c.workspace).parent_path().string()));
  write_file(c.workspace, save(next));
  const auto& entry = next.log().back();
  std::cout << entry.command << "\n";
  if (!entry.target.empty() && next.diagrams().count(entry.target)) {
    const Diagram& d = next.diagram(entry.target);
    std::cout << "dimension " << d.dimension() << ", length " << d.length() << "\n";
  }
  std::cout << "hash " << next.hash() << "\n";
  return kOk;
}

std::string slice_text(const Workspace& w, const std::string& name, const std::string& path, const std::string& format) {
  const Diagram s = slice(w.diagram(name), parse_path(path));
  const LayerGraph g = project(w.signature(), s);
  if (format == "svg") return emit_svg(w.signature(), g);
  if (format == "graph") return graph_to_json(w.signature(), g).dump(2) + "\n";
  return emit_text(w.signature(), g);
}

std::atomic<Service*> g_service{nullptr};

extern "C" void on_signal(int) {
  if (Service* s = g_service.load()) s->stop();
}

bool split_addr(const std::string& addr, std::string& host, int& port) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos) return false;
  host = addr.substr(0, colon);
  try {
    port = std::stoi(addr.substr(colon + 1));
  } catch (const std::exception&) {
    return false;
  }
  return !host.empty() && port >= 0 && port < 65536;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Associative n-category diagram engine"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  int status = kOk;
  auto guarded = [&status](const std::function<int()>& body) {
    return [&status, body] {
      try {
        status = body();
      } catch (const Error& e) {
        status = report(e);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = kFailed;
      }
    };
  };

  // validate
  Common validate_c;
  auto* validate = app.add_subcommand("validate", "Load a workspace and recheck every log entry");
  add_common(validate, validate_c, true);
  validate->callback(guarded([&] {
    const Workspace w = open_workspace(validate_c, true);
    const auto problems = verify_log(w);
    for (const auto& p : problems) std::cerr << "log: " << p << "\n";
    if (!problems.empty()) return kInvalid;
    for (const auto& [name, d] : w.diagrams()) {
      std::cout << name << ": dimension " << d.dimension() << ", length " << d.length() << "\n";
    }
    std::cout << w.log().size() << " log entries, hash " << w.hash() << "\n";
    return kOk;
  }));

  // replay
  Common replay_c;
  std::string script_path, out_path, outputs_dir, expect_hash, base_dir;
  auto* replay_cmd = app.add_subcommand("replay", "Run a proof script against a workspace");
  add_common(replay_cmd, replay_c, false);
  replay_cmd->add_option("script", script_path, "Script file")->required();
  replay_cmd->add_option("--out,-o", out_path, "Write the resulting workspace here (default: --workspace)");
  replay_cmd->add_option("--outputs-dir", outputs_dir, "Directory for render outputs (default: the script's)");
  replay_cmd->add_option("--base-dir", base_dir, "Resolve literal files here (default: the script's directory)");
  replay_cmd->add_option("--expect-hash", expect_hash, "Fail unless the final state has this hash");
  replay_cmd->callback(guarded([&] {
    const Workspace start = open_workspace(replay_c, false);
    std::vector<ScriptCommand> script;
    try {
      script = parse_script(read_file(script_path));
    } catch (const Error& e) {
      return report(e, script_path);
    }
    const std::string base = fs::path(script_path).parent_path().string();
    const std::string literals = !base_dir.empty() ? base_dir : base.empty() ? "." : base;
    const ReplayResult r = replay(start, script, replay_options(replay_c, literals));

    const std::string dest = out_path.empty() ? replay_c.workspace : out_path;
    if (!dest.empty()) write_file(dest, save(r.workspace));
    const fs::path dir = outputs_dir.empty() ? fs::path(base) : fs::path(outputs_dir);
    for (const auto& o : r.outputs) write_file(dir / o.path, o.bytes);

    std::cout << (r.failure ? r.failure->index : script.size()) << "/" << script.size() << " commands applied, hash "
              << r.workspace.hash() << "\n";
    if (r.failure) {
      std::ostringstream where;
      where << script_path << ":" << r.failure->line << ": command " << r.failure->index << " '" << r.failure->command
            << "'";
      return report(r.failure->error, where.str());
    }
    if (!expect_hash.empty() && expect_hash != r.workspace.hash()) {
      std::cerr << "error: final hash " << r.workspace.hash() << " differs from expected " << expect_hash << "\n";
      return kFailed;
    }
    return kOk;
  }));

  // contract
  Common contract_c;
  std::string contract_name, contract_path, contract_window, contract_bias;
  auto* contract = app.add_subcommand("contract", "Contract a window of a diagram in place");
  add_common(contract, contract_c, true);
  contract->add_option("name", contract_name, "Diagram")->required();
  contract->add_option("--path", contract_path, "Slice path, e.g. s0,r1");
  contract->add_option("--window", contract_window, "Regular heights a..b")->required();
  contract->add_option("--bias", contract_bias, "lower or higher")->check(CLI::IsMember({"lower", "higher"}));
  contract->callback(guarded([&] {
    std::string text = "contract \"" + contract_name + "\" --window " + contract_window;
    if (!contract_path.empty()) text += " --path " + contract_path;
    if (!contract_bias.empty()) text += " --bias " + contract_bias;
    return apply_command(contract_c, text);
  }));

  // expand
  Common expand_c;
  std::string expand_name, expand_path, expand_split, expand_first;
  std::size_t expand_height = 0;
  auto* expand = app.add_subcommand("expand", "Expand a singular height of a diagram in place");
  add_common(expand, expand_c, true);
  expand->add_option("name", expand_name, "Diagram")->required();
  expand->add_option("--path", expand_path, "Slice path, e.g. s0,r1");
  expand->add_option("--height", expand_height, "Singular height")->required();
  expand->add_option("--split", expand_split, "Inner singular heights, e.g. 0,2/1")->required();
  expand->add_option("--first", expand_first, "lower or higher")->check(CLI::IsMember({"lower", "higher"}));
  expand->callback(guarded([&] {
    std::string text = "expand \"" + expand_name + "\" --height " + std::to_string(expand_height) + " --split " +
                       expand_split;
    if (!expand_path.empty()) text += " --path " + expand_path;
    if (!expand_first.empty()) text += " --first " + expand_first;
    return apply_command(expand_c, text);
  }));

  // undo
  Common undo_c;
  auto* undo_cmd = app.add_subcommand("undo", "Revert the last logged command");
  add_common(undo_cmd, undo_c, true);
  undo_cmd->callback(guarded([&] {
    const Workspace w = open_workspace(undo_c, true);
    const Workspace prev = undo(w);
    write_file(undo_c.workspace, save(prev));
    std::cout << "undid " << w.log().back().command << "\nhash " << prev.hash() << "\n";
    return kOk;
  }));

  // slice
  Common slice_c;
  std::string slice_name, slice_path, slice_format = "text";
  auto* slice_cmd = app.add_subcommand("slice", "Print the projection of a slice");
  add_common(slice_cmd, slice_c, true);
  slice_cmd->add_option("name", slice_name, "Diagram")->required();
  slice_cmd->add_option("--path", slice_path, "Slice path, e.g. s0,r1");
  slice_cmd->add_option("--format", slice_format, "text, svg or graph")
      ->check(CLI::IsMember({"text", "svg", "graph"}));
  slice_cmd->callback(guarded([&] {
    std::cout << slice_text(open_workspace(slice_c, true), slice_name, slice_path, slice_format);
    return kOk;
  }));

  // render
  Common render_c;
  std::string render_name, render_slice, render_out, render_format;
  auto* render = app.add_subcommand("render", "Write the projection of a slice to a file");
  add_common(render, render_c, true);
  render->add_option("name", render_name, "Diagram")->required();
  render->add_option("--slice", render_slice, "Slice path, e.g. s0,r1");
  render->add_option("--out,-o", render_out, "Output file (default: <name>.svg)");
  render->add_option("--format", render_format, "svg or text (default: from the extension)")
      ->check(CLI::IsMember({"svg", "text"}));
  render->callback(guarded([&] {
    const Workspace w = open_workspace(render_c, true);
    std::string text = "render \"" + render_name + "\"";
    if (!render_slice.empty()) text += " --slice " + render_slice;
    if (!render_out.empty()) text += " --out \"" + render_out + "\"";
    if (!render_format.empty()) text += " --format " + render_format;
    std::vector<ScriptOutput> outputs;
    execute(w, parse_command(text), replay_options(render_c, "."), &outputs);
    for (const auto& o : outputs) {
      write_file(o.path, o.bytes);
      std::cout << "wrote " << o.path << "\n";
    }
    return kOk;
  }));

  // oracle-check
  Common oracle_c;
  std::string which = "all";
  bool serial = false, compare = false;
  sweep::DeltaSweep delta;
  sweep::ZigzagSweep zigzag;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the colimit procedures with brute-force oracles");
  add_common(oracle, oracle_c, false);
  oracle->add_option("--sweep", which, "delta, zigzag or all")->check(CLI::IsMember({"delta", "zigzag", "all"}));
  oracle->add_flag("--serial", serial, "Run without OpenMP");
  oracle->add_flag("--compare", compare, "Run serially and in parallel and require equal statistics");
  oracle->add_option("--delta-nodes", delta.max_nodes, "Shape nodes")->capture_default_str();
  oracle->add_option("--delta-arrows", delta.max_arrows, "Shape arrows")->capture_default_str();
  oracle->add_option("--delta-size", delta.max_size, "Largest ordinal")->capture_default_str();
  oracle->add_option("--zigzag-poset", zigzag.max_poset, "Largest base poset")->capture_default_str();
  oracle->add_option("--zigzag-nodes", zigzag.max_nodes, "Shape nodes")->capture_default_str();
  oracle->add_option("--zigzag-arrows", zigzag.max_arrows, "Shape arrows")->capture_default_str();
  oracle->add_option("--zigzag-length", zigzag.max_length, "Longest zigzag")->capture_default_str();
  oracle->add_option("--zigzag-apex", zigzag.max_apex, "Oracle apex bound")->capture_default_str();
  oracle->add_flag("--zigzag-loops", zigzag.loops, "Include endomorphism arrows in zigzag shapes");
  oracle->callback(guarded([&] {
    int result = kOk;
    auto run = [&](const std::string& label, auto&& go) {
      const sweep::Stats s = go(!serial);
      std::cout << label << (serial ? " (serial)" : " (parallel)") << ": " << sweep::summary(s) << "\n";
      if (s.mismatches != 0) result = kFailed;
      if (compare) {
        const sweep::Stats t = go(serial);
        std::cout << label << (serial ? " (parallel)" : " (serial)") << ": " << sweep::summary(t) << "\n";
        if (!(s == t)) {
          std::cerr << "error: " << label << ": serial and parallel statistics differ\n";
          result = kFailed;
        }
      }
    };
    if (which != "zigzag") run("delta", [&](bool p) { return sweep::run_delta_sweep(delta, p); });
    if (which != "delta") run("zigzag", [&](bool p) { return sweep::run_zigzag_sweep(zigzag, p); });
    return result;
  }));

  // serve
  Common serve_c;
  std::string serve_addr = "127.0.0.1:8080", data_dir;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  add_common(serve, serve_c, false);
  serve->add_option("--serve-addr", serve_addr, "host:port (port 0 picks a free one)")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "Persist workspaces here");
  serve->callback(guarded([&] {
    std::string host;
    int port = 0;
    if (!split_addr(serve_addr, host, port)) {
      std::cerr << "error: --serve-addr must be host:port\n";
      return kInvalid;
    }
    Service service({data_dir, {serve_c.permissive}});
    if (!serve_c.workspace.empty()) {
      std::cout << "loaded " << serve_c.workspace << " as " << service.add(open_workspace(serve_c, true)) << "\n";
    }
    if (port == 0) {
      port = service.bind_any(host);
    } else if (!service.bind(host, port)) {
      port = -1;
    }
    if (port < 0) {
      std::cerr << "error: cannot bind " << serve_addr << "\n";
      return kFailed;
    }
    std::cout << "listening on http://" << host << ":" << port << std::endl;
    g_service = &service;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    const bool clean = service.run();
    g_service = nullptr;
    return clean ? kOk : kFailed;
  }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  return status;
}
