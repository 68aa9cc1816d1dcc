#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "herbrand/expansion.hpp"
#include "herbrand/syntax.hpp"

namespace herbrand {

enum class UnifyFailure { None, Clash, Occurs };
std::string to_string(UnifyFailure f);

struct UnifyResult {
  std::optional<Substitution> mgu;
  UnifyFailure failure = UnifyFailure::None;
  explicit operator bool() const { return mgu.has_value(); }
};

/// Equation-transformation unification; variables named in `rigid` behave as constants.
UnifyResult unify(const Term& a, const Term& b, const std::set<std::string>* rigid = nullptr);
UnifyResult unify(const std::vector<std::pair<Term, Term>>& equations,
                  const std::set<std::string>* rigid = nullptr);
/// Atoms unify when predicates agree and argument lists unify.
UnifyResult unify_atoms(const Formula& a, const Formula& b, const std::set<std::string>* rigid = nullptr);

/// A disjunction of literals on the refutation side.
struct Clause {
  std::vector<Literal> lits;
  bool empty() const { return lits.empty(); }
};
std::string print(const Clause& c);
Clause normalize(Clause c);
std::set<std::string> vars_of(const Clause& c);
Clause apply(const Substitution& s, const Clause& c);
/// Renames every variable `v` to `v~tag`.
Substitution renaming_apart(const Clause& c, const std::string& tag);

struct Resolvent {
  Clause clause;
  Substitution mgu;
  std::size_t left_literal = 0;
  std::size_t right_literal = 0;
};

/// Binary resolvents on complementary literal pairs; the clauses must not share variables.
std::vector<Resolvent> resolve(const Clause& a, const Clause& b);
/// Merges two literals of equal sign when they unify.
std::vector<Resolvent> factors(const Clause& c);

enum class ProofStatus { ProofFound, GaveUp };
std::string to_string(ProofStatus s);

struct ProverOptions {
  std::uint64_t step_budget = 10'000;
  std::size_t n_max = 4;
  SearchOptions search;
  /// Resolution traces print the validity-side reading of clauses.
  bool dual = false;
  std::function<void(const std::string&)> trace;
};

struct ProverResult {
  ProofStatus status = ProofStatus::GaveUp;
  std::string method;
  /// Order of the Herbrand witness; for the instance provers the first order with Property C.
  std::size_t order = 0;
  std::uint64_t steps = 0;
  /// Substitutions Y -> T_order whose E-instances form a tautology.
  std::vector<Substitution> witness;
  std::string note;
};

/// Input clauses of the negated Skolemized goal, with variables renamed apart per clause.
std::vector<Clause> refutation_clauses(const Formula& f);

ProverResult prove_resolution(const Formula& f, const ProverOptions& opts = {});
ProverResult prove_gilmore(const Formula& f, const ProverOptions& opts = {});
ProverResult prove_dp(const Formula& f, const ProverOptions& opts = {});

}  // namespace herbrand
