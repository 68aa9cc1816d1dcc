#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "herbrand/syntax.hpp"

namespace herbrand {

enum class UniformClass { Alpha, Beta, Gamma, Delta };
std::string to_string(UniformClass c);

/// Position must address a negation, binary connective or quantifier.
UniformClass classify(const Formula& f, const Path& p);

/// Quantifier class from kind and polarity alone.
UniformClass quantifier_class(Kind quantifier, Polarity pol);

enum class Direction { Prenex, AntiPrenex };
std::string to_string(Direction d);

struct PassageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rules 1..6:
///   1  ~!x.A      <=> ?x.~A
///   2  ~?x.A      <=> !x.~A
///   3  (!x.A) o B <=> !x.(A o B)
///   4  B o !x.A   <=> !x.(B o A)
///   5  (?x.A) o B <=> ?x.(A o B)
///   6  B o ?x.A   <=> ?x.(B o A)
/// with o in {|, &}. Prenex direction reads left to right and renames x when it
/// occurs free in B; the anti-prenex direction requires x not free in B.
Formula passage(const Formula& f, const Path& p, int rule, Direction dir);

/// The local rewrite used by `passage`, without the Skolem check.
Formula passage_step(const Formula& f, const Path& p, int rule, Direction dir);

/// True when `passage(f, p, rule, dir)` would succeed.
bool passage_applies(const Formula& f, const Path& p, int rule, Direction dir);

/// Replaces `->` by `~A | B`, leaving other connectives alone.
Formula expand_implications(const Formula& f);

bool is_prenex(const Formula& f);

/// Leftmost-outermost application of rules in the prenex direction.
Formula to_prenex(const Formula& f);
Formula to_antiprenex(const Formula& f);

struct SkolemForm {
  Formula formula;
  /// Remaining (gamma) quantified variables, in preorder.
  std::vector<std::string> gamma_vars;
  /// Each removed delta variable and the Skolem term that replaced it.
  std::map<std::string, Term> delta_terms;
  /// Delta variables in preorder.
  std::vector<std::string> delta_order;
};

/// Validity-side Skolemization; the input is rectified first.
SkolemForm skolemize_outer_form(const Formula& f);
SkolemForm skolemize_inner_form(const Formula& f);
Formula skolemize_outer(const Formula& f);
Formula skolemize_inner(const Formula& f);

/// Quantifier-free matrix of a Skolemized formula (gamma quantifiers stripped).
Formula matrix(const Formula& skolemized);

/// Guards every quantifier with the unary predicate `guard`.
Formula relativize(const Formula& f, const std::string& guard);

}  // namespace herbrand
