#pragma once

#include <functional>
#include <string>
#include <vector>

#include "avo/certificates.hpp"
#include "avo/patterns.hpp"

namespace avo {

/// Sliding block code: the image symbol at g is rule(x|gN).
struct LocalMap {
  Shape neighborhood;  // level-0 points; the rule index reads them in this order
  int source_alphabet = 0;
  std::vector<std::string> target_alphabet;
  std::vector<int> rule;  // indexed by sum_i x_i * source_alphabet^i

  std::size_t index_of(const std::vector<int>& local) const;
  int apply(const std::vector<int>& local) const { return rule[index_of(local)]; }
  /// Throws std::invalid_argument unless the rule is total and in range.
  void validate() const;

  static LocalMap from_function(Shape neighborhood, int source_alphabet, std::vector<std::string> target_alphabet,
                                const std::function<int(const std::vector<int>&)>& f);
};

/// Relation spec on G x {1,2}: X's patterns on level 1, plus every
/// neighborhood pattern on level 1 joined with a wrong image symbol at (e,2).
SftSpec build_graph_sft(const SftSpec& x, const LocalMap& map);

/// Certificate search over the cornered two-level family.
FindResult factor_certificate(const SftSpec& relation, const Budget& budget);

/// Q patterns lying inside G x {2}, with the level dropped: forbidden
/// patterns of the image subshift.
SftSpec image_forbidden(const Certificate& cert);

/// Image of x on `target`; requires x to cover target·N.
Pattern apply_map(const Group& G, const LocalMap& map, const Pattern& x, const Shape& target);

}  // namespace avo
