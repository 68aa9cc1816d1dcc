#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "herbrand/syntax.hpp"
#include "herbrand/transform.hpp"

namespace herbrand {

enum class RuleTag {
  SententialTautologyAxiom,
  ModusPonens,
  GenGammaQuant,
  GenDeltaQuant,
  GammaQuant,
  DeltaQuant,
  GenSimplification,
  GenGammaSimplification,
  Simplification,
  Passage,
  MonotoneReplace,
};

struct Rule {
  RuleTag tag = RuleTag::SententialTautologyAxiom;
  int passage_rule = 0;
  Direction direction = Direction::Prenex;
  bool operator==(const Rule&) const = default;
};

std::string to_string(const Rule& r);
Rule parse_rule(const std::string& text);

struct StepData {
  Path at;
  /// Quantification rules: the bound variable of the introduced quantifier.
  std::string var;
  /// Gamma rules: the instance term. Delta rules: the eigenvariable (absent means `var`).
  std::optional<Term> term;
  /// Simplification rules: bound-variable renamings taking each copy to the conclusion.
  std::map<std::string, std::string> rename_left;
  std::map<std::string, std::string> rename_right;
};

struct Step {
  Formula formula;
  Rule rule;
  std::vector<std::size_t> premises;
  StepData data;
};

struct Derivation {
  std::vector<Step> steps;
  /// Free variables of the formulas, needed to read the text form back.
  std::set<std::string> free_vars;

  const Formula& conclusion() const { return steps.back().formula; }
  std::size_t count(RuleTag tag) const;
};

struct Violation {
  std::size_t step = 0;
  std::string message;
};

std::optional<Violation> check_step(const Derivation& d, std::size_t i);
/// First violation in step order, if any.
std::optional<Violation> check(const Derivation& d);

/// Derivation of `rectify(f)` from a sentential tautology by generalized quantification
/// and generalized gamma-simplification only; the witness must satisfy `check_instances`.
Derivation mp_eliminate(const Formula& f, const std::vector<Substitution>& witness);

/// Extends a derivation of B -> C by A[B] -> A[C]; `hole` must be a positive position of `context`.
Derivation monotone_replace(const Derivation& d, const Formula& context, const Path& hole);

/// `<idx> | <rule> | premises=<i,j> | at=<path> | data=<...> | <formula>`, one step per line.
std::string serialize(const Derivation& d);
Derivation parse_derivation(const std::string& text);

struct MembershipReport {
  bool ok = false;
  std::size_t conjuncts = 0;
  /// Printed conjuncts with no matching instance conjunct.
  std::vector<std::string> unmatched;
};

/// Each conjunct of the DNF of the first step (boxes dropped) must equal, up to
/// literal order, a conjunct of the DNF of some E-instance over T_n.
MembershipReport check_first_step_membership(const Formula& f, const Derivation& d, std::size_t n);

}  // namespace herbrand
