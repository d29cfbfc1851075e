#include "anc/workspace.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "anc/diagram.hpp"
#include "anc/render.hpp"
#include "anc/zigzag.hpp"

namespace anc {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::AssertionFailed, "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Encoding

json encode_morphism(const Morphism& m) {
  if (m.is_arrow()) return nullptr;
  const auto& mm = m.map();
  json out = json::object();
  out["sing"] = mm.sing.values();
  if (m.dimension() > 1) {
    json slices = json::array();
    for (const auto& s : mm.slices) slices.push_back(encode_morphism(s));
    out["slices"] = std::move(slices);
  }
  return out;
}

json encode_diagram(const LabelSignature& signature, const Diagram& d) {
  if (d.is_atom()) return signature[d.atom()].id;
  const auto& z = d.zigzag();
  json out = json::object();
  out["dimension"] = d.dimension();
  json regular = json::array(), singular = json::array(), forward = json::array(), backward = json::array();
  for (const auto& r : z.regular) regular.push_back(encode_diagram(signature, r));
  for (const auto& s : z.singular) singular.push_back(encode_diagram(signature, s));
  for (const auto& f : z.forward) forward.push_back(encode_morphism(f));
  for (const auto& b : z.backward) backward.push_back(encode_morphism(b));
  out["regular"] = std::move(regular);
  out["singular"] = std::move(singular);
  out["forward"] = std::move(forward);
  out["backward"] = std::move(backward);
  return out;
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object with '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

const json& array_field(const json& j, const char* key, std::size_t size) {
  const json& a = field(j, key);
  if (!a.is_array()) malformed(std::string("field '") + key + "' must be an array");
  if (a.size() != size) {
    throw Error(ErrorCode::ValidationFailed, std::string("field '") + key + "' has " + std::to_string(a.size()) +
                                                 " entries, expected " + std::to_string(size));
  }
  return a;
}

std::size_t natural(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) malformed(std::string(what) + " must be a natural number");
  return j.get<std::size_t>();
}

}  // namespace

Morphism decode_morphism(const json& j, const Diagram& source, const Diagram& target) {
  if (source.dimension() != target.dimension()) {
    throw Error(ErrorCode::ValidationFailed, "morphism endpoints differ in dimension");
  }
  if (source.is_atom()) {
    if (!j.is_null()) malformed("dimension-0 morphisms are implicit and must be null");
    return Morphism::arrow(source.atom(), target.atom());
  }
  const auto& s = source.zigzag();
  const auto& t = target.zigzag();
  const json& sing = array_field(j, "sing", s.length());
  std::vector<std::size_t> values;
  for (const auto& v : sing) values.push_back(natural(v, "sing value"));
  Monotone f(std::move(values), t.length());
  std::vector<Morphism> slices;
  slices.reserve(s.length());
  if (source.dimension() == 1) {
    if (j.contains("slices")) malformed("maps of 1-diagrams carry no slices");
    for (std::size_t i = 0; i < s.length(); ++i) {
      slices.push_back(Morphism::arrow(s.singular[i].atom(), t.singular[f(i)].atom()));
    }
  } else {
    const json& sl = array_field(j, "slices", s.length());
    for (std::size_t i = 0; i < s.length(); ++i) {
      slices.push_back(decode_morphism(sl[i], s.singular[i], t.singular[f(i)]));
    }
  }
  return Morphism(ZigzagMap{source, target, std::move(f), std::move(slices)});
}

Diagram decode_diagram(const LabelSignature& signature, const json& j) {
  if (j.is_string()) return Diagram(signature.at(j.get<std::string>()));
  const std::size_t dim = natural(field(j, "dimension"), "dimension");
  if (dim == 0) malformed("a 0-diagram is written as its label id");
  const json& singular = field(j, "singular");
  if (!singular.is_array()) malformed("field 'singular' must be an array");
  const std::size_t n = singular.size();
  const json& regular = array_field(j, "regular", n + 1);
  const json& forward = array_field(j, "forward", n);
  const json& backward = array_field(j, "backward", n);
  Zigzag z;
  for (const auto& r : regular) z.regular.push_back(decode_diagram(signature, r));
  for (const auto& s : singular) z.singular.push_back(decode_diagram(signature, s));
  for (const auto& x : z.regular) {
    if (x.dimension() + 1 != dim) throw Error(ErrorCode::ValidationFailed, "declared dimension disagrees with contents");
  }
  for (const auto& x : z.singular) {
    if (x.dimension() + 1 != dim) throw Error(ErrorCode::ValidationFailed, "declared dimension disagrees with contents");
  }
  for (std::size_t i = 0; i < n; ++i) {
    z.forward.push_back(decode_morphism(forward[i], z.regular[i], z.singular[i]));
    z.backward.push_back(decode_morphism(backward[i], z.regular[i + 1], z.singular[i]));
  }
  return Diagram(std::move(z));
}

// ---------------------------------------------------------------------------
// Workspace values

namespace {

json encode_signature(const LabelSignature& sig) {
  json out = json::array();
  for (const auto& l : sig.labels()) {
    out.push_back({{"id", l.id}, {"name", l.name}, {"dimension", l.dimension}, {"color", l.color}, {"rigid", l.rigid}});
  }
  return out;
}

json encode_diagrams(const LabelSignature& sig, const std::map<std::string, Diagram>& diagrams) {
  json out = json::object();
  for (const auto& [name, d] : diagrams) out[name] = encode_diagram(sig, d);
  return out;
}

std::string state_hash(const LabelSignature& sig, const std::map<std::string, Diagram>& diagrams) {
  json state = {{"format_version", kFormatVersion},
                {"hash_algorithm", kHashAlgorithm},
                {"signature", encode_signature(sig)},
                {"diagrams", encode_diagrams(sig, diagrams)}};
  return sha256_hex(state.dump());
}

LabelSignature prefix(const LabelSignature& sig, std::size_t size) {
  LabelSignature out;
  for (std::size_t i = 0; i < size; ++i) out.add(sig.labels()[i]);
  return out;
}

}  // namespace

std::shared_ptr<const Workspace::SignatureState> Workspace::make_state(LabelSignature signature) {
  auto poset = std::make_shared<const LabelPoset>(signature);
  auto tower = std::make_shared<Tower>(poset);
  return std::make_shared<const SignatureState>(SignatureState{std::move(signature), std::move(tower)});
}

Workspace::Workspace() : state_(make_state({})) {}

const Diagram& Workspace::diagram(const std::string& name) const {
  auto it = diagrams_.find(name);
  if (it == diagrams_.end()) throw Error(ErrorCode::UnknownDiagram, "no diagram named '" + name + "'");
  return it->second;
}

std::string Workspace::hash() const { return state_hash(signature(), diagrams_); }

Workspace Workspace::with_label(Label label, const std::string& command) const {
  Workspace out = *this;
  LabelSignature sig = signature();
  const std::string id = label.id;
  sig.add(std::move(label));
  out.state_ = make_state(std::move(sig));
  out.log_.push_back({command, id, hash(), out.hash(), signature().size(), std::nullopt});
  return out;
}

Workspace Workspace::with_diagram(const std::string& name, Diagram d, const std::string& command, bool create) const {
  auto it = diagrams_.find(name);
  if (create && it != diagrams_.end()) throw Error(ErrorCode::DuplicateName, "diagram '" + name + "' already exists");
  if (!create && it == diagrams_.end()) throw Error(ErrorCode::UnknownDiagram, "no diagram named '" + name + "'");
  Workspace out = *this;
  std::optional<Diagram> before;
  if (it != diagrams_.end()) before = it->second;
  out.diagrams_[name] = std::move(d);
  out.log_.push_back({command, name, hash(), out.hash(), signature().size(), std::move(before)});
  return out;
}

Workspace Workspace::from_parts(LabelSignature signature, std::map<std::string, Diagram> diagrams,
                                std::vector<LogEntry> log) {
  Workspace out;
  out.state_ = make_state(std::move(signature));
  out.diagrams_ = std::move(diagrams);
  out.log_ = std::move(log);
  return out;
}

bool operator==(const Workspace& a, const Workspace& b) {
  return a.signature() == b.signature() && a.diagrams_ == b.diagrams_ && a.log_ == b.log_;
}

json to_json(const Workspace& w) {
  const auto& sig = w.signature();
  json log = json::array();
  for (const auto& e : w.log()) {
    log.push_back({{"command", e.command},
                   {"target", e.target},
                   {"before_hash", e.before_hash},
                   {"after_hash", e.after_hash},
                   {"signature_size", e.signature_size},
                   {"before", e.before ? encode_diagram(sig, *e.before) : json(nullptr)}});
  }
  return {{"format_version", kFormatVersion},
          {"hash_algorithm", kHashAlgorithm},
          {"signature", encode_signature(sig)},
          {"diagrams", encode_diagrams(sig, w.diagrams())},
          {"log", std::move(log)}};
}

namespace {

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

void validate_diagram(const Workspace& w, const std::string& where, const Diagram& d, bool permissive) {
  std::vector<std::string> problems;
  if (!d.is_atom()) {
    for (const auto& v : validate_zigzag(w.tower().level(d.dimension() - 1), d)) {
      problems.push_back("height " + std::to_string(v.height) + ": " + v.what);
    }
  }
  if (!permissive) {
    for (const auto& v : validate_dimensions(w.signature(), d)) {
      problems.push_back("label '" + w.signature()[v.label].id + "' too high at " + format_path(v.path));
    }
  }
  if (problems.empty()) return;
  std::string reason = where + " fails validation:";
  for (const auto& p : problems) reason += "\n  " + p;
  throw Error(ErrorCode::ValidationFailed, reason);
}

Workspace from_json_unchecked(const json& j, const LoadOptions& options) {
  const json& version = field(j, "format_version");
  if (!version.is_number_integer()) malformed("format_version must be an integer");
  if (version.get<long long>() != kFormatVersion) {
    throw Error(ErrorCode::VersionUnsupported, "format_version " + version.dump() + " is not supported");
  }
  if (string_field(j, "hash_algorithm") != kHashAlgorithm) {
    throw Error(ErrorCode::VersionUnsupported, "hash algorithm must be " + std::string(kHashAlgorithm));
  }
  LabelSignature signature;
  const json& sig = field(j, "signature");
  if (!sig.is_array()) malformed("signature must be an array");
  for (const auto& l : sig) {
    const json& dim = field(l, "dimension");
    const json& rigid = field(l, "rigid");
    if (!rigid.is_boolean()) malformed("bad label entry " + l.dump());
    signature.add({string_field(l, "id"), string_field(l, "name"), static_cast<unsigned>(natural(dim, "label dimension")), string_field(l, "color"),
                   rigid.get<bool>()});
  }
  const Workspace w = Workspace::from_parts(std::move(signature), {}, {});
  std::map<std::string, Diagram> stored;
  const json& diagrams = field(j, "diagrams");
  if (!diagrams.is_object()) malformed("diagrams must be an object");
  for (const auto& [name, enc] : diagrams.items()) {
    Diagram d = decode_diagram(w.signature(), enc);
    validate_diagram(w, "diagram '" + name + "'", d, options.permissive);
    stored.emplace(name, std::move(d));
  }
  const json& log = field(j, "log");
  if (!log.is_array()) malformed("log must be an array");
  std::vector<LogEntry> entries;
  for (const auto& e : log) {
    LogEntry entry;
    entry.command = string_field(e, "command");
    entry.target = string_field(e, "target");
    entry.before_hash = string_field(e, "before_hash");
    entry.after_hash = string_field(e, "after_hash");
    entry.signature_size = natural(field(e, "signature_size"), "signature_size");
    if (entry.signature_size > w.signature().size()) {
      throw Error(ErrorCode::ValidationFailed, "log entry refers to a longer signature than stored");
    }
    const json& before = field(e, "before");
    if (!before.is_null()) entry.before = decode_diagram(w.signature(), before);
    entries.push_back(std::move(entry));
  }
  return Workspace::from_parts(w.signature(), std::move(stored), std::move(entries));
}

}  // namespace

Workspace from_json(const json& j, const LoadOptions& options) {
  try {
    return from_json_unchecked(j, options);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::VersionUnsupported:
      case ErrorCode::ValidationFailed:
        throw;
      default:
        throw Error(ErrorCode::ValidationFailed, std::string(to_string(e.code())) + ": " + e.reason());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string save(const Workspace& w) { return to_json(w).dump(); }

Workspace load(std::string_view bytes, const LoadOptions& options) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return from_json(j, options);
}

// ---------------------------------------------------------------------------
// History

namespace {

std::string verb(const std::string& command) {
  const auto space = command.find(' ');
  return command.substr(0, space);
}

}  // namespace

Workspace undo(const Workspace& w) {
  if (w.log().empty()) throw Error(ErrorCode::NothingToUndo, "the log is empty");
  const LogEntry& last = w.log().back();
  std::vector<LogEntry> log(w.log().begin(), w.log().end() - 1);
  auto diagrams = w.diagrams();
  if (verb(last.command) != "signature") {
    if (last.before) {
      diagrams[last.target] = *last.before;
    } else {
      diagrams.erase(last.target);
    }
  }
  return Workspace::from_parts(prefix(w.signature(), last.signature_size), std::move(diagrams), std::move(log));
}

std::vector<std::string> verify_log(const Workspace& w) {
  std::vector<std::string> problems;
  Workspace cur = w;
  for (std::size_t i = w.log().size(); i-- > 0;) {
    const LogEntry& e = w.log()[i];
    if (cur.hash() != e.after_hash) problems.push_back("entry " + std::to_string(i) + ": after-hash mismatch");
    cur = undo(cur);
    if (cur.hash() != e.before_hash) problems.push_back("entry " + std::to_string(i) + ": before-hash mismatch");
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Script commands

namespace {

bool needs_quotes(const std::string& s) {
  if (s.empty()) return true;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '#' || c == '\\') return true;
  }
  return false;
}

std::string join(const std::vector<std::string>& args, std::size_t from = 0) {
  std::ostringstream out;
  for (std::size_t i = from; i < args.size(); ++i) {
    if (i > from) out << ' ';
    if (needs_quotes(args[i])) {
      out << std::quoted(args[i]);
    } else {
      out << args[i];
    }
  }
  return out.str();
}

[[noreturn]] void bad_command(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

void check_shape(const std::vector<std::string>& a, std::size_t line) {
  const auto need = [&](std::size_t lo, std::size_t hi, const char* usage) {
    if (a.size() < lo || a.size() > hi) bad_command(line, std::string("usage: ") + usage);
  };
  const std::string& v = a[0];
  const std::string sub = a.size() > 1 ? a[1] : "";
  if (v == "signature") {
    if (sub != "add") bad_command(line, "unknown signature command '" + sub + "'");
    need(4, 7, "signature add <id> <dim> [name] [color] [--rigid]");
  } else if (v == "diagram") {
    if (sub == "literal") need(4, 4, "diagram literal <name> <file>");
    else if (sub == "cone") need(6, 6, "diagram cone <name> <label> <src> <tgt>");
    else if (sub == "concat") need(5, 5, "diagram concat <name> <a> <b>");
    else if (sub == "suspend") need(4, 4, "diagram suspend <name> <a>");
    else if (sub == "proof") need(4, 4, "diagram proof <name> <source>");
    else bad_command(line, "unknown diagram command '" + sub + "'");
  } else if (v == "contract") {
    need(4, 8, "contract <name> --path <p> --window a..b [--bias lower|higher]");
  } else if (v == "expand") {
    need(6, 10,
         "expand <name> --path <p> --height i --split <csv>/<csv> [--first lower|higher] | "
         "expand <name> --into <source> --path <p> --window a..b [--bias lower|higher]");
  } else if (v == "assert") {
    if (sub == "length") need(4, 4, "assert length <name> <k>");
    else if (sub == "equal") need(4, 4, "assert equal <a> <b>");
    else if (sub == "fails") {
      need(3, std::size_t(-1), "assert fails [--code <error>] <command...>");
      std::size_t from = 2;
      if (a[2] == "--code") {
        if (a.size() < 5) bad_command(line, "usage: assert fails --code <error> <command...>");
        from = 4;
      }
      check_shape(std::vector<std::string>(a.begin() + static_cast<std::ptrdiff_t>(from), a.end()), line);
    } else bad_command(line, "unknown assert command '" + sub + "'");
  } else if (v == "render") {
    need(2, 8, "render <name> [--slice <p>] [--out <file>] [--format svg|text]");
  } else {
    bad_command(line, "unknown command '" + v + "'");
  }
}

std::vector<std::string> tokenize(std::string_view text, std::size_t line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == '"') {
      std::istringstream in{std::string(text.substr(i))};
      std::string tok;
      in >> std::quoted(tok);
      const auto used = in.eof() ? text.size() - i : static_cast<std::size_t>(in.tellg());
      if (used < 2 || text[i + used - 1] != '"') bad_command(line, "unterminated quote");
      out.push_back(std::move(tok));
      i += used;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

using Flags = std::map<std::string, std::string>;

Flags parse_flags(const std::vector<std::string>& a, std::size_t from, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> switches = {}) {
  Flags out;
  for (std::size_t i = from; i < a.size(); ++i) {
    const std::string& f = a[i];
    bool is_switch = false;
    for (auto s : switches) is_switch = is_switch || f == s;
    if (is_switch) {
      out[f] = "";
      continue;
    }
    bool ok = false;
    for (auto s : allowed) ok = ok || f == s;
    if (!ok) throw Error(ErrorCode::ParseError, "unexpected argument '" + f + "'");
    if (i + 1 >= a.size()) throw Error(ErrorCode::ParseError, "flag " + f + " needs a value");
    if (out.count(f)) throw Error(ErrorCode::ParseError, "flag " + f + " given twice");
    out[f] = a[++i];
  }
  return out;
}

std::size_t parse_natural(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, std::string(what) + " must be a natural number, got '" + s + "'");
  }
  return v;
}

std::vector<std::size_t> parse_csv(const std::string& s) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_natural(item, "split entry"));
  return out;
}

const std::string& required(const Flags& f, const char* key) {
  auto it = f.find(key);
  if (it == f.end()) throw Error(ErrorCode::ParseError, std::string("missing ") + key);
  return it->second;
}

ContractionDirective contraction_of(const std::vector<std::string>& a) {
  const Flags f = parse_flags(a, 2, {"--path", "--window", "--bias"});
  ContractionDirective dir;
  dir.path = parse_path(f.count("--path") ? f.at("--path") : "");
  const std::string& w = required(f, "--window");
  const auto dots = w.find("..");
  if (dots == std::string::npos) throw Error(ErrorCode::ParseError, "window must read a..b, got '" + w + "'");
  dir.a = parse_natural(w.substr(0, dots), "window start");
  dir.b = parse_natural(w.substr(dots + 2), "window end");
  if (auto it = f.find("--bias"); it != f.end()) {
    if (it->second == "lower") dir.bias = Bias::Lower;
    else if (it->second == "higher") dir.bias = Bias::Higher;
    else if (it->second != "none") throw Error(ErrorCode::ParseError, "bias must be lower, higher or none");
  }
  return dir;
}

ExpansionDirective expansion_of(const std::vector<std::string>& a) {
  const Flags f = parse_flags(a, 2, {"--path", "--height", "--split", "--first"});
  ExpansionDirective dir;
  dir.path = parse_path(f.count("--path") ? f.at("--path") : "");
  dir.height = parse_natural(required(f, "--height"), "height");
  const std::string& split = required(f, "--split");
  const auto slash = split.find('/');
  if (slash == std::string::npos) throw Error(ErrorCode::ParseError, "split must read <csv>/<csv>");
  dir.first = parse_csv(split.substr(0, slash));
  dir.second = parse_csv(split.substr(slash + 1));
  if (auto it = f.find("--first"); it != f.end()) {
    if (it->second == "lower") dir.order = SplitOrder::Lower;
    else if (it->second == "higher") dir.order = SplitOrder::Higher;
    else throw Error(ErrorCode::ParseError, "--first must be lower or higher");
  }
  return dir;
}

// `expand <name> --into <source> ...` names the diagram to expand into.
std::optional<std::string> into_of(const std::vector<std::string>& a) {
  for (std::size_t i = 2; i + 1 < a.size(); ++i) {
    if (a[i] == "--into") return a[i + 1];
  }
  return std::nullopt;
}

// The expansion source -> current that undoes contracting `source` over the
// given window. Throws ExpansionUnsupported unless that contraction gives
// exactly `current`.
MoveResult reverse_expansion(const MoveContext& ctx, const Diagram& current, const Diagram& source,
                             const std::vector<std::string>& a) {
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i >= 2 && a[i] == "--into") {
      ++i;
      continue;
    }
    rest.push_back(a[i]);
  }
  auto r = contract_at(ctx, source, contraction_of(rest));
  if (!(r.result == current)) {
    throw Error(ErrorCode::ExpansionUnsupported, "'" + *into_of(a) + "' does not contract to '" + a[1] + "'");
  }
  return {source, std::move(r.map), std::move(r.notes)};
}

std::string csv(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

Diagram operand(const Workspace& w, const std::string& token) {
  if (!token.empty() && token[0] == '@') return Diagram(w.signature().at(token.substr(1)));
  return w.diagram(token);
}

std::string default_read(const ReplayOptions& options, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) p = std::filesystem::path(options.base_dir) / p;
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + p.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

ScriptCommand parse_command(std::string_view line, std::size_t line_number) {
  auto args = tokenize(line, line_number);
  if (args.empty()) bad_command(line_number, "empty command");
  check_shape(args, line_number);
  ScriptCommand c{line_number, std::move(args), ""};
  c.text = join(c.args);
  return c;
}

std::vector<ScriptCommand> parse_script(std::string_view text) {
  std::vector<ScriptCommand> out;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    const auto row = text.substr(start, end - start);
    if (!tokenize(row, line).empty()) out.push_back(parse_command(row, line));
    start = end + 1;
  }
  return out;
}

std::string command_text(const std::string& name, const ContractionDirective& dir) {
  std::vector<std::string> a{"contract", name, "--path", format_path(dir.path), "--window",
                             std::to_string(dir.a) + ".." + std::to_string(dir.b)};
  if (dir.bias != Bias::None) {
    a.push_back("--bias");
    a.push_back(dir.bias == Bias::Lower ? "lower" : "higher");
  }
  return join(a);
}

std::string command_text(const std::string& name, const ExpansionDirective& dir) {
  return join({"expand", name, "--path", format_path(dir.path), "--height", std::to_string(dir.height), "--split",
               csv(dir.first) + "/" + csv(dir.second), "--first",
               dir.order == SplitOrder::Lower ? "lower" : "higher"});
}

Diagram proof_of(const Workspace& w, const std::string& name) {
  const Diagram current = w.diagram(name);
  std::vector<const LogEntry*> moves;
  for (const auto& e : w.log()) {
    if (e.target != name) continue;
    const std::string v = verb(e.command);
    if (v == "diagram") moves.clear();
    if (v == "contract" || v == "expand") moves.push_back(&e);
  }
  if (moves.empty()) return suspend(current);
  Zigzag z;
  // Moves are re-derived from their stored before-states; the checks that
  // accepted them originally cannot reject them now.
  const MoveContext ctx = w.context({true});
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const LogEntry* e = moves[i];
    const ScriptCommand c = parse_command(e->command);
    const Diagram& before = *e->before;
    if (!z.regular.empty() && !(z.regular.back() == before)) {
      throw Error(ErrorCode::ValidationFailed, "log history of '" + name + "' is not a chain");
    }
    if (z.regular.empty()) z.regular.push_back(before);
    if (c.args[0] == "contract") {
      const auto r = contract_at(ctx, before, contraction_of(c.args));
      z.singular.push_back(r.result);
      z.forward.push_back(r.map);
      z.backward.push_back(identity(r.result));
      z.regular.push_back(r.result);
    } else {
      // An expansion into a named diagram ends where the next move starts.
      const Diagram& after = i + 1 < moves.size() ? *moves[i + 1]->before : current;
      const auto r = into_of(c.args) ? reverse_expansion(ctx, before, after, c.args)
                                     : expand_at(ctx, before, expansion_of(c.args));
      z.singular.push_back(before);
      z.forward.push_back(identity(before));
      z.backward.push_back(r.map);
      z.regular.push_back(r.result);
    }
  }
  return Diagram(std::move(z));
}

Workspace execute(const Workspace& w, const ScriptCommand& command, const ReplayOptions& options,
                  std::vector<ScriptOutput>* outputs) {
  const auto& a = command.args;
  const std::string& v = a[0];
  if (v == "signature") {
    std::vector<std::string> positional;
    bool rigid = false;
    for (std::size_t i = 2; i < a.size(); ++i) {
      if (a[i] == "--rigid") rigid = true;
      else positional.push_back(a[i]);
    }
    if (positional.size() < 2 || positional.size() > 4) throw Error(ErrorCode::ParseError, "bad signature add");
    Label l;
    l.id = positional[0];
    l.dimension = static_cast<unsigned>(parse_natural(positional[1], "dimension"));
    l.name = positional.size() > 2 ? positional[2] : positional[0];
    l.color = positional.size() > 3 ? positional[3] : "";
    l.rigid = rigid;
    return w.with_label(std::move(l), command.text);
  }
  if (v == "diagram") {
    const std::string& sub = a[1];
    const std::string& name = a[2];
    Diagram d;
    if (sub == "literal") {
      const std::string bytes = options.read_file ? options.read_file(a[3]) : default_read(options, a[3]);
      json j;
      try {
        j = json::parse(bytes);
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, a[3] + " at byte " + std::to_string(e.byte) + ": " + e.what());
      }
      d = decode_diagram(w.signature(), j);
      validate_diagram(w, "literal '" + a[3] + "'", d, options.policy.permissive);
    } else if (sub == "cone") {
      d = cone_generator(w.signature(), w.signature().at(a[3]), operand(w, a[4]), operand(w, a[5]));
    } else if (sub == "concat") {
      d = concatenate(operand(w, a[3]), operand(w, a[4]));
    } else if (sub == "suspend") {
      d = identity_suspend(operand(w, a[3]));
    } else {
      d = proof_of(w, a[3]);
    }
    return w.with_diagram(name, std::move(d), command.text, true);
  }
  if (v == "contract") {
    const auto r = contract_at(w.context(options.policy), w.diagram(a[1]), contraction_of(a));
    return w.with_diagram(a[1], r.result, command.text, false);
  }
  if (v == "expand") {
    const auto into = into_of(a);
    const auto r = into ? reverse_expansion(w.context(options.policy), w.diagram(a[1]), w.diagram(*into), a)
                        : expand_at(w.context(options.policy), w.diagram(a[1]), expansion_of(a));
    return w.with_diagram(a[1], r.result, command.text, false);
  }
  if (v == "assert") {
    const std::string& sub = a[1];
    if (sub == "length") {
      const std::size_t want = parse_natural(a[3], "length");
      const std::size_t got = w.diagram(a[2]).length();
      if (got != want) {
        throw Error(ErrorCode::AssertionFailed,
                    "'" + a[2] + "' has length " + std::to_string(got) + ", expected " + std::to_string(want));
      }
      return w;
    }
    if (sub == "equal") {
      if (!(operand(w, a[2]) == operand(w, a[3]))) {
        throw Error(ErrorCode::AssertionFailed, "'" + a[2] + "' and '" + a[3] + "' differ");
      }
      return w;
    }
    std::size_t from = 2;
    std::optional<std::string> code;
    if (a[2] == "--code") {
      code = a[3];
      from = 4;
    }
    ScriptCommand inner{command.line, std::vector<std::string>(a.begin() + static_cast<std::ptrdiff_t>(from), a.end()),
                        ""};
    inner.text = join(inner.args);
    try {
      execute(w, inner, options, nullptr);
    } catch (const Error& e) {
      if (code && *code != to_string(e.code())) {
        throw Error(ErrorCode::AssertionFailed, "'" + inner.text + "' failed with " + to_string(e.code()) +
                                                    ", expected " + *code);
      }
      return w;
    }
    throw Error(ErrorCode::AssertionFailed, "'" + inner.text + "' succeeded");
  }
  // render
  const Flags f = parse_flags(a, 2, {"--slice", "--out", "--format"});
  const Diagram s = slice(w.diagram(a[1]), parse_path(f.count("--slice") ? f.at("--slice") : ""));
  const std::string out = f.count("--out") ? f.at("--out") : a[1] + ".svg";
  std::string format = f.count("--format") ? f.at("--format") : "";
  if (format.empty()) format = out.ends_with(".txt") ? "text" : "svg";
  if (format != "svg" && format != "text") throw Error(ErrorCode::ParseError, "format must be svg or text");
  const LayerGraph g = project(w.signature(), s);
  if (outputs) outputs->push_back({out, format == "svg" ? emit_svg(w.signature(), g) : emit_text(w.signature(), g)});
  return w;
}

ReplayResult replay(const Workspace& w, const std::vector<ScriptCommand>& script, const ReplayOptions& options) {
  ReplayResult r{w, {}, std::nullopt};
  for (std::size_t i = 0; i < script.size(); ++i) {
    try {
      r.workspace = execute(r.workspace, script[i], options, &r.outputs);
    } catch (const Error& e) {
      r.failure = ReplayFailure{i, script[i].line, script[i].text, e};
      break;
    }
  }
  return r;
}

}  // namespace anc
