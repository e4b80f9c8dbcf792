#include "vformation/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "vformation/errors.hpp"
#include "vformation/io.hpp"

namespace vform {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view text, const std::string& what) {
  text = trim(text);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(what + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

Side parse_side(std::string_view text, const std::string& what) {
  if (text == "left") return Side::Left;
  if (text == "right") return Side::Right;
  if (text == "center") return Side::Center;
  throw ConfigError(what + ": side must be left, right or center, got '" + std::string(text) + "'");
}

bool set_wing_key(WingSpec& w, std::string_view key, std::string_view value, const std::string& where) {
  const std::string what = where + ": " + std::string(key);
  if (key == "span") w.span = parse_number(value, what);
  else if (key == "root_chord") w.root_chord = parse_number(value, what);
  else if (key == "taper") w.taper_ratio = parse_number(value, what);
  else if (key == "sweep") w.sweep_deg = parse_number(value, what);
  else if (key == "dihedral") w.dihedral_deg = parse_number(value, what);
  else if (key == "incidence") w.incidence_deg = parse_number(value, what);
  else if (key == "camber_m") w.camber.max_camber = parse_number(value, what);
  else if (key == "camber_p") w.camber.position = parse_number(value, what);
  else if (key == "n_span") w.n_span = parse_int(value, what);
  else if (key == "n_chord") w.n_chord = parse_int(value, what);
  else return false;
  return true;
}

bool set_offset_key(FormationMember& m, std::string_view key, std::string_view value, const std::string& where) {
  const std::string what = where + ": " + std::string(key);
  if (key == "reference") {
    if (value.empty()) throw ConfigError(what + ": empty reference");
    m.reference = std::string(value);
  } else if (key == "side") {
    m.side = parse_side(value, what);
  } else if (key == "streamwise") {
    m.offset.streamwise = parse_number(value, what);
  } else if (key == "spanwise") {
    m.offset.spanwise = parse_number(value, what);
  } else if (key == "vertical") {
    m.offset.vertical = parse_number(value, what);
  } else {
    return false;
  }
  return true;
}

bool set_flight_key(FlightCondition& f, std::string_view key, std::string_view value, const std::string& where) {
  const std::string what = where + ": " + std::string(key);
  if (key == "speed") f.speed = parse_number(value, what);
  else if (key == "density") f.density = parse_number(value, what);
  else if (key == "alpha") f.alpha_deg = parse_number(value, what);
  else return false;
  return true;
}

bool set_solver_key(StudyConfig& c, std::string_view key, std::string_view value, const std::string& where) {
  const std::string what = where + ": " + std::string(key);
  if (key == "core") c.solver.core_fraction = parse_number(value, what);
  else if (key == "interference_core") c.solver.interference_core_fraction = parse_number(value, what);
  else if (key == "upwash_locus") {
    try {
      c.locus = parse_upwash_locus(value);
    } catch (const ConfigError& e) {
      throw ConfigError(what + ": " + e.what());
    }
  } else {
    return false;
  }
  return true;
}

bool valid_id(std::string_view id) {
  if (id.empty() || id == "flight" || id == "solver") return false;
  for (char c : id) {
    if (c == ' ' || c == '\t' || c == '.' || c == '=' || c == ',' || c == '[' || c == ']' || c == '#') return false;
  }
  return true;
}

}  // namespace

void StudyConfig::validate() const {
  flight.validate();
  solver.validate();
  layout.validate();
}

StudyConfig parse_config(std::string_view text, std::string_view source) {
  StudyConfig config;
  std::map<std::string, FormationMember> offsets;
  std::vector<std::string> wing_order;
  std::map<std::string, WingSpec> wings;
  std::set<std::string> sections;

  enum class Kind { None, Flight, Solver, Wing, Offset } kind = Kind::None;
  std::string current;
  std::set<std::string> keys;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto where = [&] { return std::string(source) + ":" + std::to_string(line_no); };

  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where() + ": malformed section header");
      std::string_view body = trim(line.substr(1, line.size() - 2));
      const auto space = body.find_first_of(" \t");
      const std::string_view name = body.substr(0, space);
      const std::string_view arg = space == std::string_view::npos ? std::string_view{} : trim(body.substr(space));
      keys.clear();
      if (name == "flight" || name == "solver") {
        if (!arg.empty()) throw ConfigError(where() + ": [" + std::string(name) + "] takes no argument");
        kind = name == "flight" ? Kind::Flight : Kind::Solver;
        current.clear();
      } else if (name == "wing" || name == "offset") {
        if (!valid_id(arg)) {
          throw ConfigError(where() + ": invalid wing id '" + std::string(arg) +
                            "' (no whitespace, '.', '=', ',', and not 'flight' or 'solver')");
        }
        kind = name == "wing" ? Kind::Wing : Kind::Offset;
        current = std::string(arg);
        if (kind == Kind::Wing) {
          wing_order.push_back(current);
          wings[current] = WingSpec{};
        } else {
          FormationMember m;
          m.id = current;
          offsets[current] = m;
        }
      } else {
        throw ConfigError(where() + ": unknown section [" + std::string(name) + "]");
      }
      const std::string tag = std::string(body);
      if (!sections.insert(std::string(name) + " " + std::string(arg)).second) {
        throw ConfigError(where() + ": section [" + tag + "] repeated");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where() + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where() + ": missing key");
    if (value.empty()) throw ConfigError(where() + ": missing value for '" + std::string(key) + "'");
    if (kind == Kind::None) throw ConfigError(where() + ": key '" + std::string(key) + "' outside any section");
    if (!keys.insert(std::string(key)).second) {
      throw ConfigError(where() + ": key '" + std::string(key) + "' repeated");
    }
    bool known = false;
    switch (kind) {
      case Kind::Flight: known = set_flight_key(config.flight, key, value, where()); break;
      case Kind::Solver: known = set_solver_key(config, key, value, where()); break;
      case Kind::Wing: known = set_wing_key(wings[current], key, value, where()); break;
      case Kind::Offset: known = set_offset_key(offsets[current], key, value, where()); break;
      case Kind::None: break;
    }
    if (!known) throw ConfigError(where() + ": unknown key '" + std::string(key) + "'");
  }

  for (const auto& [id, m] : offsets) {
    if (!wings.count(id)) throw ConfigError(std::string(source) + ": [offset " + id + "] has no matching [wing " + id + "]");
    if (m.reference.empty()) throw ConfigError(std::string(source) + ": [offset " + id + "] needs a reference");
  }
  if (wing_order.empty()) throw ConfigError(std::string(source) + ": no [wing ...] sections");
  for (const auto& id : wing_order) {
    FormationMember m;
    if (auto it = offsets.find(id); it != offsets.end()) m = it->second;
    m.id = id;
    m.wing = wings[id];
    config.layout.members.push_back(std::move(m));
  }
  return config;
}

StudyConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

void apply_override(StudyConfig& config, std::string_view assignment) {
  const std::string where = "override '" + std::string(assignment) + "'";
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError(where + ": expected <section>.<key>=<value>");
  const std::string_view lhs = trim(assignment.substr(0, eq));
  const std::string_view value = trim(assignment.substr(eq + 1));
  const auto dot = lhs.find('.');
  if (dot == std::string_view::npos || value.empty()) {
    throw ConfigError(where + ": expected <section>.<key>=<value>");
  }
  const std::string_view section = lhs.substr(0, dot);
  const std::string_view key = lhs.substr(dot + 1);
  bool known = false;
  if (section == "flight") {
    known = set_flight_key(config.flight, key, value, where);
  } else if (section == "solver") {
    known = set_solver_key(config, key, value, where);
  } else {
    FormationMember* m = config.layout.find(section);
    if (!m) throw ConfigError(where + ": no wing named '" + std::string(section) + "'");
    known = set_wing_key(m->wing, key, value, where);
    if (!known) {
      const bool was_trailing = m->role() == Role::Trailing;
      known = set_offset_key(*m, key, value, where);
      if (known && !was_trailing) {
        throw ConfigError(where + ": wing '" + m->id + "' is the leader and has no offset");
      }
    }
  }
  if (!known) throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
}

std::string render_config(const StudyConfig& config) {
  std::ostringstream os;
  auto kv = [&](std::string_view k, const std::string& v) { os << k << " = " << v << "\n"; };
  os << "[flight]\n";
  kv("speed", format_number(config.flight.speed));
  kv("density", format_number(config.flight.density));
  kv("alpha", format_number(config.flight.alpha_deg));
  os << "\n[solver]\n";
  kv("core", format_number(config.solver.core_fraction));
  kv("interference_core", format_number(config.solver.interference_core_fraction));
  kv("upwash_locus", std::string(to_string(config.locus)));
  for (const auto& m : config.layout.members) {
    const WingSpec& w = m.wing;
    os << "\n[wing " << m.id << "]\n";
    kv("span", format_number(w.span));
    kv("root_chord", format_number(w.root_chord));
    kv("taper", format_number(w.taper_ratio));
    kv("sweep", format_number(w.sweep_deg));
    kv("dihedral", format_number(w.dihedral_deg));
    kv("incidence", format_number(w.incidence_deg));
    kv("camber_m", format_number(w.camber.max_camber));
    kv("camber_p", format_number(w.camber.position));
    kv("n_span", std::to_string(w.n_span));
    kv("n_chord", std::to_string(w.n_chord));
    if (m.role() == Role::Trailing) {
      os << "\n[offset " << m.id << "]\n";
      kv("reference", m.reference);
      kv("side", std::string(to_string(m.side)));
      kv("streamwise", format_number(m.offset.streamwise));
      kv("spanwise", format_number(m.offset.spanwise));
      kv("vertical", format_number(m.offset.vertical));
    }
  }
  return os.str();
}

}  // namespace vform
