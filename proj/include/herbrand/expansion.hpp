#pragma once

#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "herbrand/budget.hpp"
#include "herbrand/sat.hpp"
#include "herbrand/syntax.hpp"

namespace herbrand {

enum class LexiconPolicy {
  Auto,    // add `l` only when the champ fini would otherwise be empty
  Always,  // add `l` unconditionally
  Never,
};

struct Signature {
  std::set<Symbol> functions;
  std::set<std::string> free_vars;
};

Signature signature_of(const Formula& f);

struct ChampFini {
  std::size_t order = 0;
  /// Sorted by height, then by printed form.
  std::vector<Term> terms;
  bool lexicon = false;

  std::size_t size() const { return terms.size(); }
  bool contains(const Term& t) const;
};

/// Terms of height < n over the signature's function symbols and free variables.
ChampFini champ_fini(const Signature& sig, std::size_t n, LexiconPolicy policy = LexiconPolicy::Auto);

/// Quantifier expansion over a nonempty term list: forall -> conjunction, exists -> disjunction.
Formula expand(const Formula& f, const std::vector<Term>& domain);

struct SearchOptions {
  sat::Engine engine = sat::Engine::Dpll;
  std::uint64_t budget = kDefaultBudget;
  LexiconPolicy lexicon = LexiconPolicy::Auto;
  const std::atomic<bool>* stop = nullptr;
};

/// E, Y and T_n for a formula; substitutions are produced lazily.
struct HerbrandDisjunction {
  Formula skolemized;
  Formula matrix;
  std::vector<std::string> gamma_vars;
  ChampFini domain;

  /// |T_n|^|Y|, saturating at UINT64_MAX.
  std::uint64_t instance_count() const;
  /// Calls `fn` on every total substitution Y -> T_n in odometer order until it returns false.
  void for_each_substitution(const std::function<bool(const Substitution&)>& fn) const;
};

HerbrandDisjunction herbrand_disjunction(const Formula& f, std::size_t n,
                                         LexiconPolicy policy = LexiconPolicy::Auto);

/// Literal-level DNF of a quantifier-free formula, keeping atoms as formulas.
struct Literal {
  bool positive;
  Formula atom;
  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};
using Conjunct = std::vector<Literal>;
std::vector<Conjunct> literal_dnf(const Formula& qf);

struct PropertyC {
  bool holds = false;
  std::size_t order = 0;
  std::uint64_t instances = 0;
  /// Assignment falsifying the Herbrand disjunction when `holds` is false.
  std::optional<sat::Assignment> falsifying;
};

/// Throws BudgetError when |T_n|^|Y| exceeds the budget.
PropertyC property_c(const Formula& f, std::size_t n, const SearchOptions& opts = {});

/// Property C of the anti-prenex form.
PropertyC property_b(const Formula& f, std::size_t n, const SearchOptions& opts = {});

/// DNF of the disjunction of E-instances; throws std::invalid_argument when a
/// substitution is not total on Y.
sat::ClauseSet instance_dnf(const Formula& f, const std::vector<Substitution>& sigmas);

/// True iff the disjunction of the given E-instances is a sentential tautology; false for none.
bool check_instances(const Formula& f, const std::vector<Substitution>& sigmas,
                     sat::Engine engine = sat::Engine::Dpll);

struct Complexity {
  std::size_t k = 0;
  std::vector<Substitution> substitutions;
};

/// Least k <= k_max with k instances over T_n forming a tautology.
std::optional<Complexity> herbrand_complexity(const Formula& f, std::size_t n, std::size_t k_max,
                                              const SearchOptions& opts = {});

using BigInt = boost::multiprecision::cpp_int;

/// n * (N^r + 1)^n.
BigInt godel_dreben_order(std::uint64_t n, std::uint64_t r, std::uint64_t N);

// ---- finite structures ------------------------------------------------------

struct UninterpretedSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FiniteStructure {
  std::size_t domain_size = 0;
  std::vector<std::string> names;
  struct Table {
    std::size_t arity = 0;
    std::vector<int> values;
  };
  std::map<std::string, Table> functions;
  /// Values 0/1; `=` is the identity unless listed here.
  std::map<std::string, Table> predicates;
  std::map<std::string, int> var_env;
  /// Element descriptions written as comments by `serialize`.
  std::vector<std::string> notes;

  std::string name(int e) const;
  void set_function(const std::string& f, const std::vector<int>& args, int value);
  void set_predicate(const std::string& p, const std::vector<int>& args, bool value);
  void declare_function(const std::string& f, std::size_t arity, int fill = 0);
  void declare_predicate(const std::string& p, std::size_t arity, bool fill = false);
};

int eval_term(const FiniteStructure& s, const Term& t, const std::map<std::string, int>& env);
bool eval_in_structure(const FiniteStructure& s, const Formula& f);
bool eval_in_structure(const FiniteStructure& s, const Formula& f, std::map<std::string, int> env);

std::string serialize(const FiniteStructure& s);
FiniteStructure parse_structure(const std::string& text);

/// Term structure over T_{p+m}; empty when Property C holds at order p.
std::optional<FiniteStructure> falsifying_structure(const Formula& f, std::size_t p,
                                                    const SearchOptions& opts = {});

/// Model of the axioms on {0..H+1} with capped successor, H the maximal height in T_n.
FiniteStructure arith_substructure_witness(const std::vector<Formula>& axioms, std::size_t n);

}  // namespace herbrand
