#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "anc/category.hpp"
#include "anc/colimit.hpp"
#include "anc/error.hpp"
#include "anc/homotopy.hpp"

namespace anc {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kHashAlgorithm = "sha256";

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

// 0-diagrams are label ids; higher ones spell out the zigzag with every
// dimension-0 morphism left implicit.
nlohmann::json encode_diagram(const LabelSignature& signature, const Diagram& d);
nlohmann::json encode_morphism(const Morphism& m);
// Throws ParseError for malformed input and UnknownLabel for foreign ids.
Diagram decode_diagram(const LabelSignature& signature, const nlohmann::json& j);
Morphism decode_morphism(const nlohmann::json& j, const Diagram& source, const Diagram& target);

// One applied command. `before` and `signature_size` are the pre-state of
// what the command touched, enough to undo it.
struct LogEntry {
  std::string command;
  std::string target;  // diagram name or label id
  std::string before_hash;
  std::string after_hash;
  std::size_t signature_size = 0;
  std::optional<Diagram> before;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

// An immutable value. Every mutator returns a new workspace with one more
// log entry.
class Workspace {
 public:
  Workspace();

  const LabelSignature& signature() const { return state_->signature; }
  const Tower& tower() const { return *state_->tower; }
  const std::map<std::string, Diagram>& diagrams() const { return diagrams_; }
  const std::vector<LogEntry>& log() const { return log_; }
  // Throws UnknownDiagram.
  const Diagram& diagram(const std::string& name) const;
  MoveContext context(MovePolicy policy = {}) const { return {tower(), &signature(), policy}; }

  // Content hash of the signature and diagrams, without the log.
  std::string hash() const;

  Workspace with_label(Label label, const std::string& command) const;
  // Creating commands throw DuplicateName for a taken name; moves replace.
  Workspace with_diagram(const std::string& name, Diagram d, const std::string& command, bool create) const;
  // Assembles a value as stored, without adding a log entry.
  static Workspace from_parts(LabelSignature signature, std::map<std::string, Diagram> diagrams,
                              std::vector<LogEntry> log);

  friend bool operator==(const Workspace& a, const Workspace& b);

 private:
  struct SignatureState {
    LabelSignature signature;
    std::shared_ptr<Tower> tower;
  };
  static std::shared_ptr<const SignatureState> make_state(LabelSignature signature);

  std::shared_ptr<const SignatureState> state_;
  std::map<std::string, Diagram> diagrams_;
  std::vector<LogEntry> log_;
};

struct LoadOptions {
  // Accept stored diagrams that fail validate_dimensions.
  bool permissive = false;
};

nlohmann::json to_json(const Workspace& w);
Workspace from_json(const nlohmann::json& j, const LoadOptions& options = {});

// Canonical bytes: sorted keys, no insignificant whitespace.
std::string save(const Workspace& w);
// Throws ParseError (with byte offset), VersionUnsupported, ValidationFailed.
Workspace load(std::string_view bytes, const LoadOptions& options = {});

// Reverts the last log entry from its stored before-state. Throws
// NothingToUndo.
Workspace undo(const Workspace& w);

// Walks the log backwards through undo and reports every entry whose stored
// hashes disagree with recomputation. Empty when the log is intact.
std::vector<std::string> verify_log(const Workspace& w);

// (n+1)-diagram recording the moves applied to `name` since it was created:
// a contraction c: D -> C contributes D -> C <- C, an expansion e: E -> D
// contributes D -> D <- E.
Diagram proof_of(const Workspace& w, const std::string& name);

struct ScriptCommand {
  std::size_t line = 0;  // 1-based
  std::vector<std::string> args;
  std::string text;  // normalized
};

// One command per line; '#' starts a comment; double quotes group words.
// Throws ParseError naming the line for unknown commands or bad arity.
std::vector<ScriptCommand> parse_script(std::string_view text);
ScriptCommand parse_command(std::string_view line, std::size_t line_number = 1);

std::string command_text(const std::string& name, const ContractionDirective& dir);
std::string command_text(const std::string& name, const ExpansionDirective& dir);

struct ScriptOutput {
  std::string path;
  std::string bytes;
};

struct ReplayOptions {
  MovePolicy policy{};
  // Resolves `diagram literal` files. Defaults to reading from disk relative
  // to base_dir.
  std::function<std::string(const std::string&)> read_file;
  std::string base_dir = ".";
};

struct ReplayFailure {
  std::size_t index = 0;  // 0-based command index
  std::size_t line = 0;
  std::string command;
  Error error;
};

struct ReplayResult {
  Workspace workspace;  // state after the last successful command
  std::vector<ScriptOutput> outputs;  // from render commands
  std::optional<ReplayFailure> failure;
};

// Applies one command. Throws the command's error.
Workspace execute(const Workspace& w, const ScriptCommand& command, const ReplayOptions& options,
                  std::vector<ScriptOutput>* outputs = nullptr);

ReplayResult replay(const Workspace& w, const std::vector<ScriptCommand>& script, const ReplayOptions& options = {});

}  // namespace anc
