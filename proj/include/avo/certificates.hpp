#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avo/oracles.hpp"
#include "avo/patterns.hpp"
#include "avo/shapes.hpp"

namespace avo {

enum class Family { InductiveIntervals, AllSubsets, TreeConvexExtensions, Cornered2Level };

/// "ii", "all-subsets", "tree-convex", "cornered".
std::string family_name(Family f);
Family parse_family(const std::string& name);

/// A family member truncated to B_R, with the cell to be extended.
struct FamilyPrefix {
  Shape shape;
  Point corner;
};

/// Prefixes of the family within B_R in canonical (sorted) order.
std::vector<FamilyPrefix> family_prefixes(const SftSpec& spec, Family f, int R, int max_cells = 16);

struct TranscriptEntry {
  Shape shape;
  Point corner;
  std::size_t patterns = 0;  // Q-locally-valid patterns on the shape
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct UniformResult {
  enum class Status { Verified, FailsAt, Unknown };
  Status status = Status::Unknown;
  std::vector<TranscriptEntry> transcript;
  std::optional<FamilyPrefix> failing_prefix;
  Pattern failing_pattern;
  std::string reason;
};

/// Every Q-locally-valid pattern on every family prefix within B_R has a
/// Q-locally-valid extension at the prefix corner.
UniformResult verify_uniform(const SftSpec& q, Family f, int R, const Budget& budget);

struct EquivalenceResult {
  enum class Status { Equivalent, NotEquivalent, Unknown };
  Status status = Status::Unknown;
  int forward_radius = 0;   // largest radius refuting a Q-forbidden pattern in P
  int backward_radius = 0;  // largest radius refuting a P-forbidden pattern in Q
  Pattern witness;          // globally valid on one side, forbidden on the other
  bool witness_valid_in_p = false;
  std::string reason;
};

/// Semidecides X(P) = X(Q) by refuting each side's forbidden patterns in the
/// other. NotEquivalent needs an exact language for one side: the optional
/// oracles, or the transfer graph over Z.
EquivalenceResult verify_equivalence(const SftSpec& p, const SftSpec& q, const Budget& budget,
                                     const LanguageOracle* exact_p = nullptr, const LanguageOracle* exact_q = nullptr);

struct Certificate {
  SftSpec original;
  SftSpec q;
  Family family = Family::InductiveIntervals;
  int radius = 0;
  std::vector<TranscriptEntry> transcript;
  int forward_radius = 0;
  int backward_radius = 0;
};

/// Digest binding family, radius, Q and transcript.
std::string certificate_digest(const Certificate& c);

/// Deterministic candidate forbidden sets: `injected` first, then the input
/// spec, then Q_r for r = 1 .. candidate_radius_cap.
std::vector<SftSpec> enumerate_candidates(const SftSpec& spec, const Budget& budget,
                                          const std::vector<SftSpec>& injected = {});

struct FindResult {
  std::optional<Certificate> certificate;
  std::vector<std::string> log;
  std::string reason;
};

FindResult find_certificate(const SftSpec& spec, Family f, const Budget& budget,
                            const std::vector<SftSpec>& injected = {});

struct RecheckResult {
  bool ok = false;
  std::string reason;
};

/// Re-runs uniform verification and equivalence from scratch and compares
/// the transcript entry by entry.
RecheckResult reverify(const Certificate& c, const Budget& budget);

}  // namespace avo
