#include "holoconf/specfile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "holoconf/errors.hpp"

namespace holoconf {

int GeometrySpec::coordinate_index(const std::string& name) const {
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (coordinates[i] == name) return static_cast<int>(i);
  }
  throw SpecError("unknown coordinate '" + name + "'");
}

const PatchSpec* GeometrySpec::find_patch(PatchSpec::Role role) const {
  for (const auto& p : patches) {
    if (p.role == role) return &p;
  }
  return nullptr;
}

namespace {

struct Value {
  enum class Kind { Number, String, Bool, List };
  Kind kind = Kind::Number;
  double number = 0.0;
  bool boolean = false;
  std::string str;
  std::vector<Value> list;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Value parse_value(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  if (s.empty()) throw SpecError("empty value for key '" + key + "'");
  Value v;
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') throw SpecError("unterminated string for key '" + key + "'");
    v.kind = Value::Kind::String;
    v.str = s.substr(1, s.size() - 2);
    return v;
  }
  if (s.front() == '[') {
    if (s.back() != ']') throw SpecError("unterminated list for key '" + key + "'");
    v.kind = Value::Kind::List;
    std::string inner = s.substr(1, s.size() - 2);
    std::size_t pos = 0;
    bool in_quotes = false;
    std::size_t start = 0;
    std::vector<std::string> items;
    for (pos = 0; pos <= inner.size(); ++pos) {
      if (pos == inner.size() || (inner[pos] == ',' && !in_quotes)) {
        std::string item = trim(inner.substr(start, pos - start));
        if (!item.empty()) items.push_back(item);
        start = pos + 1;
      } else if (inner[pos] == '"') {
        in_quotes = !in_quotes;
      }
    }
    for (const auto& item : items) v.list.push_back(parse_value(item, key));
    return v;
  }
  if (s == "true" || s == "false") {
    v.kind = Value::Kind::Bool;
    v.boolean = (s == "true");
    return v;
  }
  char* end = nullptr;
  v.number = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw SpecError("cannot parse value '" + s + "' for key '" + key + "'");
  }
  v.kind = Value::Kind::Number;
  return v;
}

struct RawTable {
  std::map<std::string, Value> entries;
  bool has(const std::string& k) const { return entries.count(k) != 0; }
};

struct RawDocument {
  RawTable top;
  std::map<std::string, RawTable> tables;       // [name]
  std::vector<RawTable> patches;                // [[patches]]
};

RawDocument parse_raw(const std::string& text) {
  RawDocument doc;
  RawTable* current = &doc.top;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments outside quotes
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      else if (line[i] == '#' && !quoted) { line = line.substr(0, i); break; }
    }
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s.rfind("[[", 0) == 0) {
      if (s.substr(s.size() - 2) != "]]") throw SpecError("malformed table header: " + s);
      const std::string name = trim(s.substr(2, s.size() - 4));
      if (name != "patches") throw SpecError("unknown table array '" + name + "'");
      doc.patches.emplace_back();
      current = &doc.patches.back();
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']') throw SpecError("malformed section header: " + s);
      const std::string name = trim(s.substr(1, s.size() - 2));
      current = &doc.tables[name];
      continue;
    }
    std::size_t eq = std::string::npos;
    quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') quoted = !quoted;
      else if (s[i] == '=' && !quoted) { eq = i; break; }
    }
    if (eq == std::string::npos) {
      throw SpecError("expected 'key = value' on line " + std::to_string(lineno));
    }
    std::string key = trim(s.substr(0, eq));
    if (!key.empty() && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
    if (key.empty()) throw SpecError("empty key on line " + std::to_string(lineno));
    current->entries[key] = parse_value(s.substr(eq + 1), key);
  }
  return doc;
}

double need_number(const RawTable& t, const std::string& key) {
  auto it = t.entries.find(key);
  if (it == t.entries.end() || it->second.kind != Value::Kind::Number) {
    throw SpecError("missing numeric key '" + key + "'");
  }
  return it->second.number;
}

std::string need_string(const RawTable& t, const std::string& key) {
  auto it = t.entries.find(key);
  if (it == t.entries.end() || it->second.kind != Value::Kind::String) {
    throw SpecError("missing string key '" + key + "'");
  }
  return it->second.str;
}

PatchSpec::Param parse_patch_param(const std::string& s) {
  // "name: lo, hi, nodes"
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos) throw SpecError("patch param needs 'name: lo, hi, nodes': " + s);
  PatchSpec::Param p;
  p.name = trim(s.substr(0, colon));
  std::istringstream rest(s.substr(colon + 1));
  std::string item;
  std::vector<double> vals;
  while (std::getline(rest, item, ',')) {
    const std::string v = trim(item);
    if (v.empty()) continue;
    char* end = nullptr;
    vals.push_back(std::strtod(v.c_str(), &end));
    if (*end != '\0') throw SpecError("bad number in patch param: " + s);
  }
  if (vals.size() != 3) throw SpecError("patch param needs exactly lo, hi, nodes: " + s);
  p.lo = vals[0];
  p.hi = vals[1];
  p.nodes = static_cast<int>(vals[2]);
  if (p.nodes < 1 || p.hi <= p.lo) throw SpecError("bad patch param range: " + s);
  return p;
}

PatchSpec::Role parse_role(const std::string& s) {
  if (s == "sigma_tilde") return PatchSpec::Role::SigmaTilde;
  if (s == "lambda") return PatchSpec::Role::Lambda;
  if (s == "xi") return PatchSpec::Role::Xi;
  if (s == "region") return PatchSpec::Role::Region;
  throw SpecError("unknown patch role '" + s + "' (want sigma_tilde|lambda|xi|region)");
}

} // namespace

GeometrySpec parse_geometry_spec(const std::string& text) {
  const RawDocument doc = parse_raw(text);
  GeometrySpec spec;

  spec.dimension = static_cast<int>(need_number(doc.top, "dimension"));
  if (spec.dimension < 3 || spec.dimension > kMaxDim) {
    throw SpecError("dimension must be an integer in [3, " + std::to_string(kMaxDim) + "]");
  }
  auto coords_it = doc.top.entries.find("coordinates");
  if (coords_it == doc.top.entries.end() || coords_it->second.kind != Value::Kind::List) {
    throw SpecError("missing 'coordinates' list");
  }
  for (const auto& item : coords_it->second.list) {
    if (item.kind != Value::Kind::String) throw SpecError("coordinates must be strings");
    spec.coordinates.push_back(item.str);
  }
  if (static_cast<int>(spec.coordinates.size()) != spec.dimension) {
    throw SpecError("coordinates list must have 'dimension' entries");
  }

  if (auto it = doc.tables.find("parameters"); it != doc.tables.end()) {
    for (const auto& [k, v] : it->second.entries) {
      if (v.kind != Value::Kind::Number) throw SpecError("parameter '" + k + "' must be a number");
      spec.parameters[k] = v.number;
    }
  }

  std::vector<std::string> param_names;
  for (const auto& [k, _] : spec.parameters) param_names.push_back(k);

  auto parse_validated = [&](const std::string& text2, const std::string& what) {
    try {
      return validate_expression(parse_expression(text2), spec.coordinates, param_names);
    } catch (const Error& e) {
      throw SpecError(what + ": " + e.what());
    }
  };

  auto metric_it = doc.tables.find("metric");
  if (metric_it == doc.tables.end()) throw SpecError("missing [metric] table");
  for (const auto& [k, v] : metric_it->second.entries) {
    int i = -1, j = -1;
    if (std::sscanf(k.c_str(), "%d,%d", &i, &j) != 2) {
      throw SpecError("metric key '" + k + "' must look like \"i,j\"");
    }
    if (i < 0 || i >= spec.dimension || j < 0 || j > i) {
      throw SpecError("metric key '" + k + "' out of range (want j <= i < dimension)");
    }
    if (v.kind != Value::Kind::String) throw SpecError("metric '" + k + "' must be an expression string");
    spec.metric[{i, j}] = parse_validated(v.str, "metric " + k);
  }
  for (int i = 0; i < spec.dimension; ++i) {
    if (spec.metric.find({i, i}) == spec.metric.end()) {
      throw SpecError("metric diagonal entry \"" + std::to_string(i) + "," + std::to_string(i) +
                      "\" missing");
    }
  }

  spec.sigma = parse_validated(need_string(doc.top, "sigma"), "sigma");
  if (doc.top.has("mu")) {
    spec.mu = parse_validated(need_string(doc.top, "mu"), "mu");
  }
  if (doc.top.has("tau")) {
    spec.tau = parse_validated(need_string(doc.top, "tau"), "tau");
  } else {
    spec.tau = parse_validated("1", "tau");
  }
  spec.normal_coordinate = need_string(doc.top, "normal_coordinate");
  spec.coordinate_index(spec.normal_coordinate);
  if (doc.top.has("lambda_coordinate")) {
    spec.lambda_coordinate = need_string(doc.top, "lambda_coordinate");
    spec.coordinate_index(spec.lambda_coordinate);
  }
  if (spec.mu && spec.lambda_coordinate.empty()) {
    throw SpecError("'lambda_coordinate' is required when 'mu' is given");
  }

  if (auto it = doc.tables.find("options"); it != doc.tables.end()) {
    for (const auto& [k, v] : it->second.entries) {
      if (v.kind != Value::Kind::Number) throw SpecError("option '" + k + "' must be a number");
      spec.options[k] = v.number;
    }
  }

  for (const auto& raw : doc.patches) {
    PatchSpec patch;
    patch.role = parse_role(need_string(raw, "role"));
    if (raw.has("euler")) patch.euler = static_cast<int>(need_number(raw, "euler"));
    if (raw.has("outward")) {
      auto v = raw.entries.at("outward");
      if (v.kind != Value::Kind::Bool) throw SpecError("patch 'outward' must be true/false");
      patch.outward = v.boolean;
    }
    auto pit = raw.entries.find("params");
    if (pit == raw.entries.end() || pit->second.kind != Value::Kind::List) {
      throw SpecError("patch needs a 'params' list");
    }
    std::vector<std::string> local_names;
    for (const auto& item : pit->second.list) {
      if (item.kind != Value::Kind::String) throw SpecError("patch params must be strings");
      patch.params.push_back(parse_patch_param(item.str));
      local_names.push_back(patch.params.back().name);
    }
    for (const auto& [k, v] : raw.entries) {
      if (k.rfind("embed.", 0) != 0) continue;
      const std::string coord = k.substr(6);
      spec.coordinate_index(coord);
      if (v.kind != Value::Kind::String) throw SpecError("embed expressions must be strings");
      try {
        patch.embed[coord] = validate_expression(parse_expression(v.str), local_names, param_names);
      } catch (const Error& e) {
        throw SpecError("patch embed." + coord + ": " + std::string(e.what()));
      }
    }
    for (const auto& c : spec.coordinates) {
      if (patch.embed.find(c) == patch.embed.end()) {
        throw SpecError("patch embed is missing coordinate '" + c + "'");
      }
    }
    spec.patches.push_back(std::move(patch));
  }

  return spec;
}

GeometrySpec load_geometry_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("spec not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  GeometrySpec spec = parse_geometry_spec(ss.str());
  validate_geometry_spec(spec);
  return spec;
}

} // namespace holoconf
