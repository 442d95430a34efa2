#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avo/avofactors.hpp"
#include "avo/patterns.hpp"

namespace avo {

struct CorpusEntry {
  std::string name;
  std::string description;
  SftSpec spec;
  std::optional<LocalMap> map;
};

std::vector<std::string> corpus_names();
/// Throws std::invalid_argument listing the known names on a miss.
CorpusEntry builtin_example(const std::string& name);

// Building blocks shared with the tests.
Pattern pattern_of(std::initializer_list<std::pair<std::vector<int>, int>> cells, int level = 0);
SftSpec make_spec(const std::string& group, std::vector<std::string> alphabet, std::vector<Pattern> forbidden,
                  std::string name = {});

}  // namespace avo
