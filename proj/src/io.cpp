#include "avo/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace avo {

using nlohmann::json;

namespace {

std::string path_at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

int symbol_index(const std::vector<std::string>& alphabet, const json& j, const std::string& where) {
  std::string name;
  if (j.is_string())
    name = j.get<std::string>();
  else if (j.is_number_integer())
    name = std::to_string(j.get<long long>());
  else
    throw ParseError(where, "symbol must be a name or an integer");
  auto it = std::find(alphabet.begin(), alphabet.end(), name);
  if (it == alphabet.end()) throw ParseError(where, "undeclared symbol '" + name + "'");
  return static_cast<int>(it - alphabet.begin());
}

std::vector<int> coords_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "coordinates must be an array");
  std::vector<int> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw ParseError(path_at(where, i), "coordinate must be an integer");
    c.push_back(j[i].get<int>());
  }
  return c;
}

Point point_from_json(const SftSpec& spec, const json& coords, int level, const std::string& where) {
  Point p(coords_from_json(coords, where), level);
  try {
    spec.group.validate(Point(p.c));
  } catch (const std::exception& e) {
    throw ParseError(where, e.what());
  }
  return p;
}

std::vector<std::string> alphabet_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where, "alphabet must be a non-empty array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_string())
      out.push_back(j[i].get<std::string>());
    else if (j[i].is_number_integer())
      out.push_back(std::to_string(j[i].get<long long>()));
    else
      throw ParseError(path_at(where, i), "symbol must be a string or an integer");
    if (std::count(out.begin(), out.end(), out.back()) > 1) throw ParseError(path_at(where, i), "duplicate symbol");
  }
  return out;
}

LocalMap map_from_json(const SftSpec& spec, const json& j) {
  const std::string where = "local_map";
  if (!j.is_object()) throw ParseError(where, "must be an object");
  LocalMap m;
  m.source_alphabet = static_cast<int>(spec.alphabet.size());
  if (!j.contains("neighborhood")) throw ParseError(where, "missing neighborhood");
  const auto& nb = j["neighborhood"];
  for (std::size_t i = 0; i < nb.size(); ++i)
    m.neighborhood.push_back(point_from_json(spec, nb[i], 0, path_at(where + ".neighborhood", i)));
  if (!j.contains("target_alphabet")) throw ParseError(where, "missing target_alphabet");
  m.target_alphabet = alphabet_from_json(j["target_alphabet"], where + ".target_alphabet");
  if (!j.contains("rule") || !j["rule"].is_array()) throw ParseError(where, "missing rule table");
  const auto& rule = j["rule"];
  for (std::size_t i = 0; i < rule.size(); ++i)
    m.rule.push_back(symbol_index(m.target_alphabet, rule[i], path_at(where + ".rule", i)));
  try {
    m.validate();
  } catch (const std::exception& e) {
    throw ParseError(where, e.what());
  }
  return m;
}

SftSpec spec_from_json(const json& j, std::vector<std::string>* warnings) {
  if (!j.is_object()) throw ParseError("$", "spec must be an object");
  SftSpec s;
  if (!j.contains("group") || !j["group"].is_string()) throw ParseError("group", "missing group key");
  try {
    s.group = Group::from_key(j["group"].get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError("group", e.what());
  }
  if (j.contains("name")) s.name = j["name"].get<std::string>();
  if (!j.contains("alphabet")) throw ParseError("alphabet", "missing alphabet");
  s.alphabet = alphabet_from_json(j["alphabet"], "alphabet");
  if (j.contains("levels")) s.levels = j["levels"].get<int>();
  if (s.levels != 1 && s.levels != 2) throw ParseError("levels", "must be 1 or 2");
  if (j.contains("upper_alphabet")) s.upper_alphabet = alphabet_from_json(j["upper_alphabet"], "upper_alphabet");
  if (s.levels == 2 && s.upper_alphabet.empty()) throw ParseError("upper_alphabet", "required for two levels");
  const json forb = j.value("forbidden", json::array());
  if (!forb.is_array()) throw ParseError("forbidden", "must be an array");
  std::set<Pattern> seen;
  for (std::size_t i = 0; i < forb.size(); ++i) {
    const std::string where = path_at("forbidden", i);
    Pattern p = pattern_from_json(s, forb[i], where);
    const Pattern canon = canonical_translate(s.group, p);
    if (!seen.insert(canon).second) {
      if (warnings) warnings->push_back(where + ": duplicate forbidden pattern (dropped)");
      continue;
    }
    s.forbidden.push_back(std::move(p));
  }
  try {
    s.validate();
  } catch (const std::exception& e) {
    throw ParseError("forbidden", e.what());
  }
  return s;
}

}  // namespace

Pattern pattern_from_json(const SftSpec& spec, const json& j, const std::string& where) {
  const json& cells = j.is_object() ? j.value("cells", json::array()) : j;
  const std::string base = j.is_object() ? where + ".cells" : where;
  if (!cells.is_array()) throw ParseError(base, "cells must be an array");
  std::vector<std::pair<Point, int>> out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const std::string w = path_at(base, k);
    const json& c = cells[k];
    if (!c.is_array() || c.size() < 2 || c.size() > 3) throw ParseError(w, "cell must be [coords, symbol] or [coords, symbol, level]");
    int level = spec.levels == 2 ? 1 : 0;
    if (c.size() == 3) {
      if (!c[2].is_number_integer()) throw ParseError(w, "level must be an integer");
      level = c[2].get<int>();
      if (spec.levels == 1 ? level != 0 : (level < 1 || level > 2)) throw ParseError(w, "level out of range");
    }
    Point p = point_from_json(spec, c[0], level, w);
    const int sym = symbol_index(level == 2 ? spec.upper_alphabet : spec.alphabet, c[1], w);
    for (const auto& [q, t] : out)
      if (q == p) throw ParseError(w, "cell repeated within a pattern");
    out.emplace_back(std::move(p), sym);
  }
  return Pattern::from_cells(std::move(out));
}

json point_to_json(const Point& p) { return json(p.c); }

json pattern_to_json(const SftSpec& spec, const Pattern& p) {
  json cells = json::array();
  for (const auto& [pt, sym] : p.cells) {
    const auto& alpha = pt.level == 2 ? spec.upper_alphabet : spec.alphabet;
    json c = json::array({point_to_json(pt), alpha[static_cast<std::size_t>(sym)]});
    if (spec.levels == 2) c.push_back(pt.level);
    cells.push_back(std::move(c));
  }
  return json{{"cells", cells}};
}

json spec_to_json(const SftSpec& spec, const std::optional<LocalMap>& map) {
  json j;
  if (!spec.name.empty()) j["name"] = spec.name;
  j["group"] = spec.group.key();
  j["alphabet"] = spec.alphabet;
  if (spec.levels == 2) {
    j["levels"] = 2;
    j["upper_alphabet"] = spec.upper_alphabet;
  }
  j["forbidden"] = json::array();
  for (const auto& f : spec.forbidden) j["forbidden"].push_back(pattern_to_json(spec, f));
  if (map) {
    json m;
    m["neighborhood"] = json::array();
    for (const auto& p : map->neighborhood) m["neighborhood"].push_back(point_to_json(p));
    m["target_alphabet"] = map->target_alphabet;
    json rule = json::array();
    for (int r : map->rule) rule.push_back(map->target_alphabet[static_cast<std::size_t>(r)]);
    m["rule"] = rule;
    j["local_map"] = m;
  }
  return j;
}

std::string serialize_spec(const SftSpec& spec, const std::optional<LocalMap>& map) {
  return spec_to_json(spec, map).dump(2) + "\n";
}

ParsedSpec parse_sft_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  ParsedSpec out;
  try {
    out.spec = spec_from_json(j, &out.warnings);
    if (j.contains("local_map")) out.map = map_from_json(out.spec, j["local_map"]);
  } catch (const json::exception& e) {
    throw ParseError("$", e.what());
  }
  return out;
}

std::string serialize_certificate(const Certificate& c) {
  json j;
  j["format"] = kCertificateFormat;
  j["family"] = family_name(c.family);
  j["radius"] = c.radius;
  j["forward_radius"] = c.forward_radius;
  j["backward_radius"] = c.backward_radius;
  j["original"] = spec_to_json(c.original);
  j["q"] = spec_to_json(c.q);
  j["transcript"] = json::array();
  for (const auto& t : c.transcript) {
    json shape = json::array();
    for (const auto& p : t.shape) shape.push_back(json::array({point_to_json(p), p.level}));
    j["transcript"].push_back(json{{"shape", shape},
                                   {"corner", json::array({point_to_json(t.corner), t.corner.level})},
                                   {"patterns", t.patterns}});
  }
  j["digest"] = certificate_digest(c);
  return j.dump(2) + "\n";
}

Certificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  try {
    if (j.value("format", "") != kCertificateFormat) throw ParseError("format", "expected " + std::string(kCertificateFormat));
    Certificate c;
    try {
      c.family = parse_family(j.at("family").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError("family", e.what());
    }
    c.radius = j.at("radius").get<int>();
    c.forward_radius = j.value("forward_radius", 0);
    c.backward_radius = j.value("backward_radius", 0);
    c.original = spec_from_json(j.at("original"), nullptr);
    c.q = spec_from_json(j.at("q"), nullptr);
    const auto& tr = j.at("transcript");
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const std::string w = path_at("transcript", i);
      TranscriptEntry t;
      for (const auto& cell : tr[i].at("shape"))
        t.shape.push_back(point_from_json(c.q, cell.at(0), cell.at(1).get<int>(), w + ".shape"));
      t.corner = point_from_json(c.q, tr[i].at("corner").at(0), tr[i].at("corner").at(1).get<int>(), w + ".corner");
      t.patterns = tr[i].at("patterns").get<std::size_t>();
      c.transcript.push_back(std::move(t));
    }
    if (j.value("digest", "") != certificate_digest(c)) throw ParseError("digest", "does not match the certificate contents");
    return c;
  } catch (const json::exception& e) {
    throw ParseError("$", e.what());
  }
}

LoadedCertificate load_certificate(const std::string& text, const Budget& budget) {
  LoadedCertificate out{parse_certificate(text), {}};
  out.check = reverify(out.certificate, budget);
  return out;
}

std::string Report::text() const {
  std::string s;
  for (const auto& [k, v] : fields_) s += k + ": " + v + "\n";
  return s;
}

std::string Report::json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fields_) j[k] = v;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace avo
