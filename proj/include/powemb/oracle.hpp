#pragma once

// Exact decision procedures for continuous embeddings between power-weighted
// smoothness spaces. Every comparison is carried out on exact rationals.

#include "powemb/params.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace powemb {

class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Outcome { Embeds, DoesNotEmbed, Unknown };

enum class Rule {
  TRIVIAL_13,
  SUBCRITICAL_14,
  SHARP_15,
  F_SUFFICIENT_17,
  H_CHAR_110,
  PQ_SWAP_114,
  NEC_42,
  NEC_STRICT_45,
  SANDWICH_BF,
  SANDWICH_HW,
  JAWERTH_FRANKE_62,
  JAWERTH_FRANKE_63,
  LP_TARGET_71,
  LP_TARGET_72,
  HOLDER_73,
  Q_NECESSITY,
  F_SHARP_NEC_55,
  OPEN_REGIME,
};

inline constexpr int kRuleCount = 18;

std::string_view rule_name(Rule r);
Rule rule_from_name(std::string_view name);

/// Which inequality a necessity citation found violated. Used to pick a witness.
enum class Violation {
  None,
  Shifted,     // s0 - (d+g0)/p0 < s1 - (d+g1)/p1
  DimIndex,    // (d+g1)/p1 > (d+g0)/p0
  WeightIndex, // g1/p1 > g0/p0
  DimEqual,    // p1 < p0 and (d+g1)/p1 = (d+g0)/p0
  Microscopic, // sharp line (or trivial line) with q0 > q1
  SharpSwap,   // p1 < p0, strict dim index, shifted equality
};

struct RuleCitation {
  Rule rule;
  std::string note;
  Violation violation = Violation::None;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::vector<RuleCitation> trace;

  bool embeds() const { return outcome == Outcome::Embeds; }
  bool fails() const { return outcome == Outcome::DoesNotEmbed; }
  /// First citation carrying a violation, if any.
  const RuleCitation* first_violation() const;
};

std::string_view outcome_name(Outcome o);  // "embeds", "no", "unknown"

Verdict decide_besov(const SpaceSpec& src, const SpaceSpec& tgt);
Verdict decide_triebel(const SpaceSpec& src, const SpaceSpec& tgt);
Verdict decide_bessel(const SpaceSpec& src, const SpaceSpec& tgt);
Verdict decide_sobolev(const SpaceSpec& src, const SpaceSpec& tgt);
Verdict decide_cross(const SpaceSpec& src, const SpaceSpec& tgt);

struct HolderVerdict {
  Verdict verdict;
  Rational target_smoothness;  // s0 - (d+g0)/p0
};

HolderVerdict holder_embedding(const SpaceSpec& src);

Verdict lp_target(const SpaceSpec& src, const Extended& p1, const Rational& gamma1);

/// Validates both specs and dispatches on the family pair. Holder targets go
/// through holder_embedding, Lebesgue targets through lp_target.
Verdict decide(const SpaceSpec& src, const SpaceSpec& tgt);

struct MatrixCell {
  std::optional<Verdict> verdict;
  std::string diagnostic;  // non-empty when the cell could not be decided
};

struct TransitivityViolation {
  std::size_t a, b, c;  // a->b and b->c embed, but a->c was decided negatively
};

struct EmbeddingMatrix {
  std::vector<SpaceSpec> specs;
  std::vector<std::vector<MatrixCell>> cells;  // cells[i][j]: specs[i] -> specs[j]
  std::vector<TransitivityViolation> violations;
};

EmbeddingMatrix embedding_matrix(const std::vector<SpaceSpec>& specs);

}  // namespace powemb
