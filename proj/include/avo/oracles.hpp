#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "avo/patterns.hpp"
#include "avo/search.hpp"

namespace avo {

/// Caps for the semi-decision procedures. Each field bounds one loop; the
/// named presets are what the CLI `--budget` flag selects.
struct Budget {
  int radius_cap = 4;                // padding radius for refutation
  std::uint64_t node_cap = 200'000;  // search nodes per backtracking run
  int candidate_radius_cap = 2;      // r of the candidate sets Q_r
  int candidate_max_cells = 3;       // largest refuted pattern added to Q_r
  int verify_radius_cap = 3;         // largest R tried in uniform verification
  std::size_t pattern_cap = 200'000; // patterns enumerated per shape

  static Budget small();
  static Budget defaults();
  static Budget large();
  /// "small", "default" or "large"; throws std::invalid_argument otherwise.
  static Budget named(const std::string& name);
  std::string describe() const;
};

struct ValidityVerdict {
  enum class Kind { Refuted, NotRefuted, Exact };
  Kind kind = Kind::NotRefuted;
  int radius = 0;              // refutation radius, or largest radius searched
  bool valid = false;          // meaningful for Exact
  bool budget_exhausted = false;
  std::string basis;           // what backs an Exact verdict

  bool refuted() const { return kind == Kind::Refuted || (kind == Kind::Exact && !valid); }
  static ValidityVerdict refuted_at(int r) { return {Kind::Refuted, r, false, false, {}}; }
};

std::string to_string(const ValidityVerdict& v);

/// Refuted(R) when p has no locally valid extension to its R-padding for some
/// R <= radius_cap; NotRefuted otherwise.
ValidityVerdict refute_global_validity(const SftSpec& spec, const Pattern& p, const Budget& budget);

/// Exact language of a Z-SFT on an arbitrary finite D ⊂ Z, computed from the
/// overlap graph of locally valid words trimmed to its bi-infinite core.
std::vector<Pattern> z_interval_language(const SftSpec& spec, const Shape& D);
std::vector<Pattern> z_interval_language(const SftSpec& spec, int a, int b);
/// Whether the Z-SFT is nonempty (its trimmed overlap graph has a vertex).
bool z_nonempty(const SftSpec& spec);

struct LanguageResult {
  std::vector<Pattern> patterns;  // sorted
  bool exact = false;             // otherwise an upper approximation
  bool complete = true;           // false when a cap truncated the computation
};

/// Source of D-pattern sets. Implementations state whether their answers are
/// exact languages or budgeted upper approximations.
class LanguageOracle {
 public:
  virtual ~LanguageOracle() = default;
  virtual LanguageResult language(const Shape& D) const = 0;
  virtual std::string name() const = 0;
};

/// Transfer-graph oracle; Z only.
class TransferOracle : public LanguageOracle {
 public:
  explicit TransferOracle(SftSpec spec);
  LanguageResult language(const Shape& D) const override;
  std::string name() const override { return "transfer-graph"; }

 private:
  SftSpec spec_;
};

/// Locally valid patterns on D that survive refutation at the budget.
class BudgetedOracle : public LanguageOracle {
 public:
  BudgetedOracle(SftSpec spec, Budget budget);
  LanguageResult language(const Shape& D) const override;
  std::string name() const override { return "budgeted-refutation"; }

 private:
  SftSpec spec_;
  Budget budget_;
};

/// All locally valid patterns on D (sorted); complete=false when pattern_cap
/// or node_cap stopped the enumeration.
LanguageResult locally_valid_patterns(const SftSpec& spec, const Shape& D, std::size_t pattern_cap,
                                      std::uint64_t node_cap);

/// M-SFT approximation: forbids every pattern on M absent from the oracle's set.
struct Approximation {
  SftSpec spec;
  bool exact = false;
};
Approximation m_sft_approximation(const SftSpec& spec, const Shape& M, const LanguageOracle& oracle);

struct FollowerResult {
  std::vector<int> symbols;  // symbols a with P ⊔ a@at not excluded
  bool exact = false;
  std::vector<ValidityVerdict> verdicts;  // per alphabet symbol
};

FollowerResult follower_symbols(const SftSpec& spec, const Pattern& p, const Point& at, const LanguageOracle& oracle);
FollowerResult follower_symbols(const SftSpec& spec, const Pattern& p, const Point& at, const Budget& budget);

}  // namespace avo
