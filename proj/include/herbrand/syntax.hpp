#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace herbrand {

/// Name of the reserved lexicon variable.
inline constexpr std::string_view kLexicon = "l";

/// Identifiers ending in this suffix (optionally followed by `#k`) are Skolem symbols.
inline constexpr std::string_view kSkolemSuffix = "_star";

enum class SymbolKind { PlainFunction, SkolemFunction, SkolemConstant, Predicate };

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::PlainFunction;

  auto operator<=>(const Symbol&) const = default;
};

bool is_skolem_name(std::string_view name);

/// Variable named by the printed form of a term; its structure is opaque to substitution.
bool is_box_name(std::string_view name);
std::string box_name(std::string_view printed_term);

struct SyntaxError : std::runtime_error {
  SyntaxError(std::size_t line, std::size_t col, const std::string& what);
  std::size_t line;
  std::size_t col;
};

struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CaptureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Term {
 public:
  Term();  // the lexicon variable
  static Term var(std::string name);
  static Term app(std::string fn, std::vector<Term> args = {});
  static Term lexicon();

  bool is_var() const { return node_->is_var; }
  bool is_skolem() const { return !node_->is_var && is_skolem_name(node_->name); }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  std::size_t hash() const { return node_->hash; }
  /// Var = 0, App = 1 + max child height.
  std::size_t height() const { return node_->height; }
  bool is_ground() const { return node_->ground; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var;
    bool ground;
    std::string name;
    std::vector<Term> args;
    std::size_t hash;
    std::size_t height;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

enum class Kind { Atom, Not, And, Or, Implies, Forall, Exists };

class Formula {
 public:
  Formula();  // placeholder atom `?`, never produced by the parser
  static Formula atom(std::string pred, std::vector<Term> args = {});
  static Formula eq(Term lhs, Term rhs);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula quant(Kind k, std::string var, Formula body);
  static Formula binary(Kind k, Formula a, Formula b);
  /// Left-nested chains; `conj_all({})` is not allowed.
  static Formula conj_all(std::span<const Formula> fs);
  static Formula disj_all(std::span<const Formula> fs);

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
  bool is_binary() const {
    return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies;
  }
  /// Predicate name for atoms, bound variable for quantifiers.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }
  const Formula& body() const { return node_->children.at(0); }
  const Formula& lhs() const { return node_->children.at(0); }
  const Formula& rhs() const { return node_->children.at(1); }
  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::vector<Formula> children;
    std::size_t hash;
    std::size_t size;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, std::string name, std::vector<Term> args,
                      std::vector<Formula> children);
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

enum class Polarity { Positive, Negative };
Polarity flip(Polarity p);

/// Child indices from the root: Not/quantifier body = 0, binary lhs = 0, rhs = 1.
using Path = std::vector<int>;

struct Position {
  Path path;
  Polarity polarity = Polarity::Positive;
};

std::string path_to_string(const Path& p);
Path path_from_string(std::string_view s);

class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> init) : map_(init) {}

  void bind(const std::string& var, Term t);
  const Term* find(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.count(var) != 0; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }
  std::set<std::string> domain() const;

  Term apply(const Term& t) const;
  /// Free occurrences only; throws CaptureError when an image variable would be bound.
  Formula apply(const Formula& f) const;

  /// `restrict` keeps only bindings for the given variables.
  Substitution restrict(const std::set<std::string>& vars) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend auto operator<=>(const Substitution& a, const Substitution& b) {
    return a.map_ <=> b.map_;
  }

 private:
  std::map<std::string, Term> map_;
};

/// Applying the result equals applying `first` and then `second`.
Substitution compose(const Substitution& first, const Substitution& second);

// ---- parsing and printing --------------------------------------------------

struct ParseOptions {
  /// Identifiers treated as free variables rather than constants.
  std::set<std::string> free_vars;
};

Formula parse_formula(std::string_view text, const ParseOptions& opts = {});
Term parse_term(std::string_view text, const ParseOptions& opts = {});

std::string print(const Term& t);
std::string print(const Formula& f);
std::string print(const Substitution& s);

// ---- queries ----------------------------------------------------------------

std::size_t height(const Term& t);
std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> bound_vars(const Formula& f);
/// Every variable name occurring in `f`, bound or free, including binders.
std::set<std::string> all_vars(const Formula& f);
/// Function symbols (including Skolem symbols) of terms in `f`.
std::set<Symbol> function_symbols(const Formula& f);
std::set<Symbol> predicate_symbols(const Formula& f);
std::set<Symbol> function_symbols(const Term& t);
bool is_closed(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool has_skolem_symbols(const Formula& f);
/// No variable bound twice and no variable both free and bound.
bool is_rectified(const Formula& f);

const Formula& subformula_at(const Formula& f, const Path& p);
Polarity polarity_at(const Formula& f, const Path& p);
Formula replace_at(const Formula& f, const Path& p, const Formula& replacement);
/// True when some quantifier lies strictly above `p`.
bool in_quantifier_scope(const Formula& f, const Path& p);
/// Positions of every node in preorder (root first, children left to right).
std::vector<Path> all_paths(const Formula& f);

/// Smallest `base#k` not in `used`; `base` keeps any existing `#k` suffix stripped.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);
std::string strip_index(const std::string& name);

/// Renames bound variables so that each is bound once and none is also free.
/// The first binder of a name keeps it when that is already legal.
Formula rectify(const Formula& f);

/// Renames binders (and their bound occurrences) by name, ignoring free occurrences.
Formula rename_bound(const Formula& f, const std::map<std::string, std::string>& renaming);

bool alpha_equivalent(const Formula& a, const Formula& b);

/// Rewrites `->` and `&` into `~` and `|`.
Formula to_primitive(const Formula& f);

/// Replaces box variables by the terms they name.
Term unbox(const Term& t);
Formula unbox(const Formula& f);
/// Replaces outermost Skolem-headed subterms by box variables.
Term boxed(const Term& t);

}  // namespace herbrand
