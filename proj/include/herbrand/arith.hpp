#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "herbrand/syntax.hpp"

// Zero, successor and equality: terms are S^k(0) or S^k(x).
namespace herbrand::arith {

struct NotArithmetic : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class AxiomTag { SchemeInstance, Nat1, Nat2, Nat3, Nat4Plus };
std::string to_string(AxiomTag tag, std::size_t i = 0);

/// Universal closure of the axiom; `i` selects S^{i+1}(x) != x for Nat4Plus.
Formula axiom(AxiomTag tag, std::size_t i = 0);

/// P(0) & !y.(P(y) -> P(S(y))) -> !x.P(x) for `p` with free variable `var`.
Formula induction_instance(const Formula& p, const std::string& var);

/// Throws NotArithmetic unless `f` uses only 0, S and =.
void validate(const Formula& f);

/// Equivalent quantifier-free formula with no new free variables.
Formula eliminate_quantifiers(const Formula& f);

/// DNF over cancelled literals S^a(u) = S^b(v) and their negations;
/// `0 != 0` when unsatisfiable, `0 = 0` when valid.
Formula qf_normal_form(const Formula& f);

bool is_truth(const Formula& f);
bool is_falsity(const Formula& f);

enum class Verdict { Derivable, Refutable };
std::string to_string(Verdict v);

/// Throws std::invalid_argument when the sentence has free variables.
Verdict decide(const Formula& sentence);

/// S^k(base) with `base` a variable name or empty for 0.
Term successor_term(const std::string& base, std::size_t k);

}  // namespace herbrand::arith
