#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "herbrand/budget.hpp"
#include "herbrand/syntax.hpp"

namespace herbrand::sat {

/// Canonical text of an atom; Skolem-headed terms are part of the text, so they act as atomic names.
std::string atom_key(const Formula& atom);

/// Atom keys of a quantifier-free formula; throws std::invalid_argument on quantifiers.
std::vector<std::string> abstract(const Formula& f);

/// +k / -k for atom index k-1.
using Lit = int;

enum class Form { Cnf, Dnf };

struct ClauseSet {
  Form form = Form::Cnf;
  std::vector<std::string> atoms;
  std::vector<std::vector<Lit>> clauses;

  int intern(const std::string& key);
  Lit lit(const std::string& key, bool positive) {
    int v = intern(key) + 1;
    return positive ? v : -v;
  }
  std::size_t size() const { return clauses.size(); }

 private:
  std::map<std::string, int> index_;
};

struct PruneOptions {
  /// Drop clauses containing a complementary pair (tautologous CNF clauses,
  /// contradictory DNF conjuncts).
  bool complementary = true;
  bool subsumption = true;
};

/// Sorts literals, removes duplicate literals and clauses, then applies `opts`.
void prune(ClauseSet& cs, const PruneOptions& opts = {});

/// Naive distribution over the negation normal form; no auxiliary atoms.
ClauseSet to_dnf(const Formula& f, const PruneOptions& opts = {}, std::uint64_t budget = kDefaultBudget);
ClauseSet to_cnf(const Formula& f, const PruneOptions& opts = {}, std::uint64_t budget = kDefaultBudget);

/// Literal sets of `to_dnf`, keyed by atom text, for comparisons across clause sets.
std::vector<std::vector<std::string>> keyed(const ClauseSet& cs);
std::string literal_text(const ClauseSet& cs, Lit l);

using Assignment = std::map<std::string, bool>;

enum class Engine { Multiplication, Dpll };

struct TautologyResult {
  bool tautology = false;
  /// Present when not a tautology; unlisted atoms are false.
  std::optional<Assignment> falsifying;
};

/// Validity reading: true iff every clause of the multiplied-out CNF holds a complementary pair.
/// `falsifying` receives an assignment making the disjunction false when the answer is no.
bool gilmore_check(const ClauseSet& dnf, std::uint64_t budget = kDefaultBudget,
                   Assignment* falsifying = nullptr);

struct DpllResult {
  bool satisfiable = false;
  Assignment model;
};

/// Unit propagation, pure literals, and splitting on the lowest atom key, positive first.
DpllResult dpll(const ClauseSet& cnf, const std::atomic<bool>* stop = nullptr);

/// CNF of the negation of a DNF: each conjunct becomes the clause of its complements.
ClauseSet negate(const ClauseSet& cs);

TautologyResult is_tautology(const Formula& f, Engine engine, std::uint64_t budget = kDefaultBudget);
TautologyResult is_tautology_dnf(const ClauseSet& dnf, Engine engine,
                                 std::uint64_t budget = kDefaultBudget,
                                 const std::atomic<bool>* stop = nullptr);

/// Truth value of a quantifier-free formula; unlisted atoms are false.
bool evaluate(const Formula& f, const Assignment& a);

std::string to_dimacs(const ClauseSet& cs);

}  // namespace herbrand::sat
