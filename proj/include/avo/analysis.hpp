#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avo/certificates.hpp"
#include "avo/oracles.hpp"

namespace avo {

/// Two C-patterns agreeing on C ∩ B_r whose follower sets at e differ.
struct AvoWitness {
  int r = 0;
  Pattern x, y;
  std::vector<int> follow_x, follow_y;
  /// A symbol in exactly one of the two follower sets, and its verdicts
  /// (x ⊔ a@e, y ⊔ a@e).
  int separating_symbol = -1;
  ValidityVerdict verdict_x, verdict_y;
};

struct AvoFinding {
  enum class Status { Established, BudgetedEvidence };
  Status status = Status::BudgetedEvidence;
  Shape shape;
  std::optional<int> radius;  // least r <= r_max making C ∩ B_r determining
  int r_max = 0;
  std::string backing;        // oracle name; caveat for budgeted evidence
  std::vector<AvoWitness> failures;  // one per failing r below the radius
};

/// Avoradius of C (e ∉ C) over the patterns the oracle reports on C ∪ {e}.
AvoFinding avoradius_for_shape(const SftSpec& spec, const Shape& C, int r_max, const LanguageOracle& oracle);

struct ExtensionCount {
  Shape shape;
  bool exact = false;               // verdict withheld when false
  std::optional<std::size_t> constant;
  Pattern witness_a, witness_b;     // different counts when not constant
  std::size_t count_a = 0, count_b = 0;
};

std::vector<ExtensionCount> equal_extension_counts(const SftSpec& spec, const std::vector<Shape>& shapes,
                                                   const LanguageOracle& oracle);

/// Replacing any cells of a locally valid pattern on a forbidden domain by
/// `symbol` keeps it locally valid.
bool safe_symbol_check(const SftSpec& spec, int symbol);

/// Corners of S ⊂ Z^d: points outside the convex hull of the others (exact
/// rational arithmetic).
std::vector<Point> hull_corners(const Shape& S);

/// Every assignment on S ∖ {s}, s a corner, has exactly k extensions in `patterns`.
bool ktep_check(const Group& G, const std::vector<Pattern>& patterns, int alphabet_size, int k);

struct TssmResult {
  enum class Status { HoldsOnWindow, Fails, Unknown };
  Status status = Status::Unknown;
  Pattern u, s, v;
  std::size_t combinations = 0;
  std::string reason;
};

/// Gluing check over disjoint U, S, V ⊆ B_W with d(U, V) >= n.
TssmResult tssm_gap_check(const SftSpec& spec, int n, int W, const LanguageOracle& oracle,
                          std::size_t combination_cap = 5'000'000);

/// Gap implied by an all-subsets certificate at radius R: R + 1.
int tssm_gap_from_certificate(const Certificate& cert);

}  // namespace avo
