#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "avo/avofactors.hpp"
#include "avo/certificates.hpp"

namespace avo {

/// Parse failure with a location: a byte offset for syntax errors, a JSON
/// path such as "forbidden[2].cells[1]" otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct ParsedSpec {
  SftSpec spec;
  std::optional<LocalMap> map;
  std::vector<std::string> warnings;  // e.g. duplicate forbidden patterns (deduped)
};

ParsedSpec parse_sft_spec(const std::string& text);
nlohmann::json spec_to_json(const SftSpec& spec, const std::optional<LocalMap>& map = std::nullopt);
std::string serialize_spec(const SftSpec& spec, const std::optional<LocalMap>& map = std::nullopt);

nlohmann::json pattern_to_json(const SftSpec& spec, const Pattern& p);
/// Symbols by name; `where` prefixes error locations.
Pattern pattern_from_json(const SftSpec& spec, const nlohmann::json& j, const std::string& where);
nlohmann::json point_to_json(const Point& p);

inline constexpr const char* kCertificateFormat = "avoshift-certificate/1";

std::string serialize_certificate(const Certificate& c);
/// Structural parse; a digest mismatch is a ParseError.
Certificate parse_certificate(const std::string& text);

struct LoadedCertificate {
  Certificate certificate;
  RecheckResult check;  // from-scratch re-verification
};
LoadedCertificate load_certificate(const std::string& text, const Budget& budget);

/// Line-oriented key: value report; the JSON form carries the same keys.
class Report {
 public:
  void add(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }
  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }
  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }
  std::string text() const;
  std::string json() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string read_file(const std::string& path);

}  // namespace avo
