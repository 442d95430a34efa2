#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "avo/certificates.hpp"
#include "avo/oracles.hpp"

namespace avo {

/// Exact pattern sets derived from a verified certificate.
///
/// A pattern on D is globally valid iff it extends to a Q-locally-valid
/// pattern on the closure of D: the least superset F of D containing every
/// point t within the forbidden diameter of some s in F with t earlier than
/// s in the family's construction order. Cells outside F can then be filled
/// one at a time along that order, since their views are family prefixes.
class ExactLanguage {
 public:
  /// `working_radius` W bounds the shapes served (up to translation);
  /// requests beyond it escalate by doubling up to `radius_cap`.
  ExactLanguage(Certificate cert, int working_radius = 2, int radius_cap = 16,
                std::uint64_t node_cap = 5'000'000, std::size_t closure_cap = 4000);

  const Certificate& certificate() const { return cert_; }
  const SftSpec& spec() const { return cert_.q; }

  /// Order key of the construction order used for the closure.
  OrderKey order_key(const Point& p) const;
  /// The closure F of D described above; empty optional when it exceeds the cap.
  std::optional<Shape> closure(const Shape& D) const;

  /// Exact membership; nullopt when a cap was hit.
  std::optional<bool> contains(const Pattern& p) const;
  /// Exact language on D (sorted); nullopt is NotDerived.
  std::optional<std::vector<Pattern>> language_on(const Shape& D) const;

  int working_radius() const { return working_radius_; }

 private:
  Certificate cert_;
  int working_radius_;
  int radius_cap_;
  std::uint64_t node_cap_;
  std::size_t closure_cap_;
  Shape diameter_ball_;
  mutable std::mutex mutex_;
  mutable std::map<Shape, std::vector<Pattern>> cache_;
};

/// Shapes with derived exact languages, keyed by canonical translate.
struct LanguageTable {
  int working_radius = 0;
  std::map<Shape, std::vector<Pattern>> entries;
  std::map<Shape, std::string> provenance;
};

/// Table for B_W and the empty shape; every subshape's language is the
/// restriction of the B_W entry.
LanguageTable saturate_language(const Certificate& cert, int W);

/// CertificateOracle answers LanguageOracle queries exactly.
class CertificateOracle : public LanguageOracle {
 public:
  explicit CertificateOracle(Certificate cert, int working_radius = 2);
  LanguageResult language(const Shape& D) const override;
  std::string name() const override { return "certificate"; }
  const ExactLanguage& engine() const { return engine_; }

 private:
  ExactLanguage engine_;
};

struct InclusionResult {
  enum class Status { Subset, NotSubset, Unknown };
  Status status = Status::Unknown;
  Pattern witness;       // in the language of X, forbidden in Y
  std::string evidence;  // how the verdict was reached
};

/// Safe inclusion X ⊆ Y. Uses `x_cert` when given, else searches for one.
InclusionResult decide_inclusion(const SftSpec& x, const SftSpec& y, const Budget& budget,
                                 const Certificate* x_cert = nullptr);

struct EmptinessResult {
  enum class Status { Empty, Nonempty, Unknown };
  Status status = Status::Unknown;
  std::string evidence;
};

EmptinessResult decide_emptiness(const SftSpec& spec, const Budget& budget);

/// Default certificate family for the spec's group.
Family natural_family(const SftSpec& spec);

/// Extends p to `target` choosing the least globally valid symbol cell by
/// cell along the construction order. Throws std::runtime_error when p is not
/// globally valid or a cap is hit.
Pattern complete_pattern(const ExactLanguage& lang, const Pattern& p, const Shape& target);

/// Forbidden patterns of the restriction to H_i (first `axes` axes), over
/// the catalog group of H_i.
SftSpec project_to_subgroup(const Certificate& cert, int axes);

}  // namespace avo
