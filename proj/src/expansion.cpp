#include "herbrand/expansion.hpp"

#include <algorithm>
#include <limits>

#include "herbrand/engine.hpp"
#include "herbrand/transform.hpp"

namespace herbrand {

Signature signature_of(const Formula& f) { return {function_symbols(f), free_vars(f)}; }

bool ChampFini::contains(const Term& t) const {
  return std::find(terms.begin(), terms.end(), t) != terms.end();
}

namespace {

constexpr std::size_t kMaxChampTerms = 5'000'000;

std::vector<Term> build_champ(const Signature& sig, std::size_t n, bool lexicon) {
  std::vector<std::vector<Term>> levels;
  if (n == 0) return {};
  std::vector<Term> base;
  for (const auto& v : sig.free_vars) base.push_back(Term::var(v));
  if (lexicon && !sig.free_vars.count(std::string(kLexicon))) base.push_back(Term::lexicon());
  levels.push_back(base);
  std::vector<Term> pool = base;  // all terms of height <= h-1
  std::size_t total = base.size();
  for (std::size_t h = 1; h < n; ++h) {
    std::vector<Term> level;
    for (const auto& sym : sig.functions) {
      if (sym.arity == 0) {
        if (h == 1) level.push_back(Term::app(sym.name));
        continue;
      }
      if (pool.empty()) continue;
      std::vector<std::size_t> idx(sym.arity, 0);
      for (;;) {
        bool reaches = false;
        std::vector<Term> args;
        for (auto i : idx) {
          args.push_back(pool[i]);
          reaches = reaches || pool[i].height() == h - 1;
        }
        if (reaches) {
          level.push_back(Term::app(sym.name, std::move(args)));
          if (total + level.size() > kMaxChampTerms) throw BudgetError("champ fini too large");
        }
        std::size_t k = sym.arity;
        while (k > 0 && ++idx[k - 1] == pool.size()) idx[--k] = 0;
        if (k == 0) break;
      }
    }
    total += level.size();
    pool.insert(pool.end(), level.begin(), level.end());
    levels.push_back(std::move(level));
  }
  std::vector<Term> out;
  for (auto& level : levels) {
    std::vector<std::pair<std::string, Term>> keyed;
    for (auto& t : level) keyed.emplace_back(print(t), t);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, t] : keyed) out.push_back(t);
  }
  return out;
}

}  // namespace

ChampFini champ_fini(const Signature& sig, std::size_t n, LexiconPolicy policy) {
  if (n == 0) throw std::invalid_argument("champ fini order must be at least 1");
  ChampFini c;
  c.order = n;
  c.lexicon = policy == LexiconPolicy::Always;
  c.terms = build_champ(sig, n, c.lexicon);
  if (c.terms.empty() && policy == LexiconPolicy::Auto) {
    c.lexicon = true;
    c.terms = build_champ(sig, n, true);
  }
  return c;
}

Formula expand(const Formula& f, const std::vector<Term>& domain) {
  if (domain.empty()) throw std::invalid_argument("expansion over an empty term set");
  switch (f.kind()) {
    case Kind::Atom: return f;
    case Kind::Not: return Formula::neg(expand(f.body(), domain));
    case Kind::Forall:
    case Kind::Exists: {
      std::vector<Formula> parts;
      for (const auto& t : domain)
        parts.push_back(expand(Substitution{{f.name(), t}}.apply(f.body()), domain));
      return f.kind() == Kind::Forall ? Formula::conj_all(parts) : Formula::disj_all(parts);
    }
    default:
      return Formula::binary(f.kind(), expand(f.lhs(), domain), expand(f.rhs(), domain));
  }
}

std::uint64_t HerbrandDisjunction::instance_count() const {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < gamma_vars.size(); ++i) {
    if (domain.size() != 0 && c > std::numeric_limits<std::uint64_t>::max() / domain.size())
      return std::numeric_limits<std::uint64_t>::max();
    c *= domain.size();
  }
  return c;
}

void HerbrandDisjunction::for_each_substitution(
    const std::function<bool(const Substitution&)>& fn) const {
  if (domain.size() == 0 && !gamma_vars.empty()) return;
  std::vector<std::size_t> idx(gamma_vars.size(), 0);
  for (;;) {
    Substitution s;
    for (std::size_t i = 0; i < gamma_vars.size(); ++i) s.bind(gamma_vars[i], domain.terms[idx[i]]);
    if (!fn(s)) return;
    std::size_t k = idx.size();
    while (k > 0 && ++idx[k - 1] == domain.size()) idx[--k] = 0;
    if (k == 0) return;
  }
}

HerbrandDisjunction herbrand_disjunction(const Formula& f, std::size_t n, LexiconPolicy policy) {
  HerbrandDisjunction hd;
  auto sk = skolemize_outer_form(f);
  hd.skolemized = sk.formula;
  hd.matrix = matrix(sk.formula);
  hd.gamma_vars = sk.gamma_vars;
  hd.domain = champ_fini(signature_of(sk.formula), n, policy);
  return hd;
}

std::vector<Conjunct> literal_dnf(const Formula& qf) {
  std::map<std::string, Formula> atoms;
  std::vector<const Formula*> stack{&qf};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->is_atom())
      atoms.emplace(sat::atom_key(*g), *g);
    else
      for (const auto& c : g->children()) stack.push_back(&c);
  }
  auto cs = sat::to_dnf(qf, {true, false});
  std::vector<Conjunct> out;
  for (const auto& c : cs.clauses) {
    Conjunct k;
    for (sat::Lit l : c) k.push_back({l > 0, atoms.at(cs.atoms[std::abs(l) - 1])});
    out.push_back(std::move(k));
  }
  return out;
}

namespace {

void add_instance(sat::ClauseSet& cs, const std::vector<Conjunct>& dnf, const Substitution& s) {
  for (const auto& k : dnf) {
    std::vector<sat::Lit> c;
    c.reserve(k.size());
    for (const auto& l : k) c.push_back(cs.lit(sat::atom_key(s.apply(l.atom)), l.positive));
    cs.clauses.push_back(std::move(c));
  }
}

}  // namespace

PropertyC property_c(const Formula& f, std::size_t n, const SearchOptions& opts) {
  auto hd = herbrand_disjunction(f, n, opts.lexicon);
  PropertyC r;
  r.order = n;
  r.instances = hd.instance_count();
  if (r.instances > opts.budget)
    throw BudgetError("Herbrand disjunction of order " + std::to_string(n) + " has " +
                      (r.instances == std::numeric_limits<std::uint64_t>::max()
                           ? std::string("too many")
                           : std::to_string(r.instances)) +
                      " instances, budget " + std::to_string(opts.budget));
  auto dnf = literal_dnf(hd.matrix);
  sat::ClauseSet cs;
  cs.form = sat::Form::Dnf;
  std::uint64_t seen = 0;
  hd.for_each_substitution([&](const Substitution& s) {
    if (++seen % 1024 == 0) check_stop(opts.stop);
    add_instance(cs, dnf, s);
    return true;
  });
  sat::prune(cs, {true, false});
  auto t = sat::is_tautology_dnf(cs, opts.engine, opts.budget, opts.stop);
  r.holds = t.tautology;
  r.falsifying = std::move(t.falsifying);
  return r;
}

PropertyC property_b(const Formula& f, std::size_t n, const SearchOptions& opts) {
  return property_c(to_antiprenex(f), n, opts);
}

sat::ClauseSet instance_dnf(const Formula& f, const std::vector<Substitution>& sigmas) {
  auto sk = skolemize_outer_form(f);
  auto dnf = literal_dnf(matrix(sk.formula));
  std::set<std::string> ys(sk.gamma_vars.begin(), sk.gamma_vars.end());
  sat::ClauseSet cs;
  cs.form = sat::Form::Dnf;
  for (const auto& s : sigmas) {
    for (const auto& y : ys)
      if (!s.contains(y))
        throw std::invalid_argument("substitution " + print(s) + " is not total on Y: missing " + y);
    add_instance(cs, dnf, s.restrict(ys));
  }
  sat::prune(cs, {false, false});
  return cs;
}

bool check_instances(const Formula& f, const std::vector<Substitution>& sigmas, sat::Engine engine) {
  if (sigmas.empty()) return false;
  auto cs = instance_dnf(f, sigmas);
  return sat::is_tautology_dnf(cs, engine, kDefaultBudget).tautology;
}

// ---- Herbrand complexity ----------------------------------------------------

namespace {

class ConnectionSearch {
 public:
  ConnectionSearch(std::vector<Conjunct> matrix, std::set<std::string> rigid,
                   std::vector<std::string> copy_vars, std::size_t order, std::size_t min_height,
                   const SearchOptions& opts)
      : m_(std::move(matrix)),
        rigid_(std::move(rigid)),
        copy_vars_(std::move(copy_vars)),
        order_(order),
        min_height_(min_height),
        opts_(opts) {}

  std::optional<Substitution> run() {
    std::optional<Substitution> found;
    close(0, {}, Substitution{}, [&](const Substitution& th) {
      found = th;
      return true;
    });
    return found;
  }

 private:
  using Path = std::vector<const Literal*>;
  using Cont = std::function<bool(const Substitution&)>;

  std::size_t est_height(const Term& t) const {
    if (t.is_var()) return rigid_.count(t.name()) ? 0 : min_height_;
    std::size_t h = 0;
    for (const auto& a : t.args()) h = std::max(h, est_height(a));
    return h + 1;
  }

  bool height_ok(const Substitution& th) const {
    for (const auto& v : copy_vars_)
      if (const Term* t = th.find(v); t && est_height(*t) >= order_) return false;
    return true;
  }

  static bool closed(const Path& path, const Substitution& th) {
    for (std::size_t i = 0; i < path.size(); ++i)
      for (std::size_t j = i + 1; j < path.size(); ++j)
        if (path[i]->positive != path[j]->positive &&
            th.apply(path[i]->atom) == th.apply(path[j]->atom))
          return true;
    return false;
  }

  bool close(std::size_t i, const Path& path, const Substitution& th, const Cont& k) {
    if (closed(path, th)) return k(th);
    if (i == m_.size()) return false;
    return children(i, 0, path, th, k);
  }

  // Every extension of `path` through literals j.. of conjunct i must close.
  bool children(std::size_t i, std::size_t j, const Path& path, const Substitution& th,
                const Cont& k) {
    if (++nodes_ > opts_.budget) throw BudgetError("connection search exceeds budget");
    if (nodes_ % 256 == 0) check_stop(opts_.stop);
    if (j == m_[i].size()) return k(th);
    const Literal& lit = m_[i][j];
    auto inst = th.apply(lit.atom);
    for (const Literal* p : path) {
      if (p->positive == lit.positive) continue;
      auto u = unify_atoms(inst, th.apply(p->atom), &rigid_);
      if (!u) continue;
      auto next = compose(th, *u.mgu);
      if (!height_ok(next)) continue;
      if (children(i, j + 1, path, next, k)) return true;
    }
    Path extended = path;
    extended.push_back(&lit);
    return close(i + 1, extended, th,
                 [&](const Substitution& th2) { return children(i, j + 1, path, th2, k); });
  }

  std::vector<Conjunct> m_;
  std::set<std::string> rigid_;
  std::vector<std::string> copy_vars_;
  std::size_t order_;
  std::size_t min_height_;
  const SearchOptions& opts_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<Complexity> herbrand_complexity(const Formula& f, std::size_t n, std::size_t k_max,
                                              const SearchOptions& opts) {
  auto hd = herbrand_disjunction(f, n, opts.lexicon);
  auto dnf = literal_dnf(hd.matrix);
  std::set<std::string> rigid = free_vars(hd.skolemized);
  rigid.insert(std::string(kLexicon));
  const Term filler = hd.domain.terms.front();
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<Conjunct> m;
    std::vector<std::string> copy_vars;
    std::vector<Substitution> renamings(k);
    for (std::size_t c = 0; c < k; ++c) {
      for (const auto& y : hd.gamma_vars) {
        auto v = y + "~" + std::to_string(c);
        renamings[c].bind(y, Term::var(v));
        copy_vars.push_back(v);
      }
      for (const auto& conj : dnf) {
        Conjunct copy;
        for (const auto& l : conj) copy.push_back({l.positive, renamings[c].apply(l.atom)});
        m.push_back(std::move(copy));
      }
    }
    ConnectionSearch search(m, rigid, copy_vars, n, hd.domain.terms.front().height(), opts);
    auto theta = search.run();
    if (!theta) continue;
    Substitution fill;
    for (const auto& v : copy_vars) fill.bind(v, filler);
    Complexity out;
    out.k = k;
    for (std::size_t c = 0; c < k; ++c) {
      Substitution s;
      for (const auto& y : hd.gamma_vars)
        s.bind(y, fill.apply(theta->apply(renamings[c].apply(Term::var(y)))));
      if (std::find(out.substitutions.begin(), out.substitutions.end(), s) == out.substitutions.end())
        out.substitutions.push_back(std::move(s));
    }
    if (!check_instances(f, out.substitutions, opts.engine))
      throw std::logic_error("connection search produced a non-tautologous instance set");
    return out;
  }
  return std::nullopt;
}

BigInt godel_dreben_order(std::uint64_t n, std::uint64_t r, std::uint64_t N) {
  BigInt base = boost::multiprecision::pow(BigInt(N), static_cast<unsigned>(r)) + 1;
  return BigInt(n) * boost::multiprecision::pow(base, static_cast<unsigned>(n));
}

// ---- finite structures ------------------------------------------------------

namespace {

std::size_t table_size(std::size_t d, std::size_t arity) {
  std::size_t s = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (d != 0 && s > 50'000'000 / d) throw BudgetError("structure table too large");
    s *= d;
  }
  return s;
}

std::size_t table_index(std::size_t d, const std::vector<int>& args) {
  std::size_t i = 0;
  for (int a : args) i = i * d + static_cast<std::size_t>(a);
  return i;
}

}  // namespace

std::string FiniteStructure::name(int e) const {
  if (e >= 0 && static_cast<std::size_t>(e) < names.size()) return names[e];
  return "e" + std::to_string(e);
}

void FiniteStructure::declare_function(const std::string& f, std::size_t arity, int fill) {
  functions[f] = Table{arity, std::vector<int>(table_size(domain_size, arity), fill)};
}

void FiniteStructure::declare_predicate(const std::string& p, std::size_t arity, bool fill) {
  predicates[p] = Table{arity, std::vector<int>(table_size(domain_size, arity), fill ? 1 : 0)};
}

void FiniteStructure::set_function(const std::string& f, const std::vector<int>& args, int value) {
  auto it = functions.find(f);
  if (it == functions.end()) {
    declare_function(f, args.size());
    it = functions.find(f);
  }
  it->second.values.at(table_index(domain_size, args)) = value;
}

void FiniteStructure::set_predicate(const std::string& p, const std::vector<int>& args, bool value) {
  auto it = predicates.find(p);
  if (it == predicates.end()) {
    declare_predicate(p, args.size());
    it = predicates.find(p);
  }
  it->second.values.at(table_index(domain_size, args)) = value ? 1 : 0;
}

int eval_term(const FiniteStructure& s, const Term& t, const std::map<std::string, int>& env) {
  if (t.is_var()) {
    if (auto it = env.find(t.name()); it != env.end()) return it->second;
    if (auto it = s.var_env.find(t.name()); it != s.var_env.end()) return it->second;
    throw UninterpretedSymbol("variable '" + t.name() + "' has no value");
  }
  auto it = s.functions.find(t.name());
  if (it == s.functions.end() || it->second.arity != t.arity())
    throw UninterpretedSymbol("function '" + t.name() + "/" + std::to_string(t.arity()) +
                              "' is not interpreted");
  std::vector<int> args;
  for (const auto& a : t.args()) args.push_back(eval_term(s, a, env));
  return it->second.values.at(table_index(s.domain_size, args));
}

bool eval_in_structure(const FiniteStructure& s, const Formula& f, std::map<std::string, int> env) {
  switch (f.kind()) {
    case Kind::Atom: {
      std::vector<int> args;
      for (const auto& a : f.args()) args.push_back(eval_term(s, a, env));
      auto it = s.predicates.find(f.name());
      if (it == s.predicates.end()) {
        if (f.name() == "=" && args.size() == 2) return args[0] == args[1];
        throw UninterpretedSymbol("predicate '" + f.name() + "' is not interpreted");
      }
      if (it->second.arity != args.size())
        throw UninterpretedSymbol("predicate '" + f.name() + "' has arity " +
                                  std::to_string(it->second.arity));
      return it->second.values.at(table_index(s.domain_size, args)) != 0;
    }
    case Kind::Not: return !eval_in_structure(s, f.body(), env);
    case Kind::And: return eval_in_structure(s, f.lhs(), env) && eval_in_structure(s, f.rhs(), env);
    case Kind::Or: return eval_in_structure(s, f.lhs(), env) || eval_in_structure(s, f.rhs(), env);
    case Kind::Implies:
      return !eval_in_structure(s, f.lhs(), env) || eval_in_structure(s, f.rhs(), env);
    case Kind::Forall:
    case Kind::Exists: {
      bool want = f.kind() == Kind::Exists;
      for (std::size_t e = 0; e < s.domain_size; ++e) {
        env[f.name()] = static_cast<int>(e);
        if (eval_in_structure(s, f.body(), env) == want) return want;
      }
      return !want;
    }
  }
  return false;
}

bool eval_in_structure(const FiniteStructure& s, const Formula& f) {
  return eval_in_structure(s, f, {});
}

namespace {

std::string tuple_text(const FiniteStructure& s, std::size_t index, std::size_t arity) {
  std::vector<int> digits(arity);
  for (std::size_t i = arity; i-- > 0;) {
    digits[i] = static_cast<int>(index % s.domain_size);
    index /= s.domain_size;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < arity; ++i) {
    if (i) out += ',';
    out += s.name(digits[i]);
  }
  return out + ")";
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string serialize(const FiniteStructure& s) {
  std::string out;
  for (const auto& n : s.notes) out += "% " + n + "\n";
  out += "domain:";
  for (std::size_t e = 0; e < s.domain_size; ++e) out += " " + s.name(static_cast<int>(e));
  out += "\n";
  for (const auto& [f, t] : s.functions)
    for (std::size_t i = 0; i < t.values.size(); ++i)
      out += "fn " + f + ": " + tuple_text(s, i, t.arity) + "->" + s.name(t.values[i]) + "\n";
  for (const auto& [p, t] : s.predicates)
    for (std::size_t i = 0; i < t.values.size(); ++i)
      out += "pred " + p + ": " + tuple_text(s, i, t.arity) + "->" + (t.values[i] ? "T" : "F") + "\n";
  for (const auto& [v, e] : s.var_env) out += "var " + v + ": " + s.name(e) + "\n";
  return out;
}

FiniteStructure parse_structure(const std::string& text) {
  FiniteStructure s;
  std::map<std::string, int> ids;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("structure line " + std::to_string(lineno) + ": " + why);
  };
  auto element = [&](const std::string& n) {
    auto it = ids.find(n);
    if (it == ids.end()) fail("unknown element '" + n + "'");
    return it->second;
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto line = trim(text.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
    start = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    if (line.rfind("domain:", 0) == 0) {
      s.names = split_ws(line.substr(7));
      s.domain_size = s.names.size();
      for (std::size_t i = 0; i < s.names.size(); ++i) ids[s.names[i]] = static_cast<int>(i);
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected ':'");
    auto head = split_ws(line.substr(0, colon));
    auto rest = trim(line.substr(colon + 1));
    if (head.size() != 2) fail("expected 'fn NAME', 'pred NAME' or 'var NAME'");
    if (head[0] == "var") {
      s.var_env[head[1]] = element(rest);
      continue;
    }
    auto open = rest.find('(');
    auto close = rest.find(')');
    auto arrow = rest.find("->");
    if (open != 0 || close == std::string::npos || arrow != close + 1) fail("expected '(args)->value'");
    std::vector<int> args;
    auto inner = rest.substr(1, close - 1);
    std::size_t p = 0;
    while (!trim(inner).empty() && p <= inner.size()) {
      auto comma = inner.find(',', p);
      args.push_back(element(trim(inner.substr(p, comma == std::string::npos ? std::string::npos : comma - p))));
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    auto value = trim(rest.substr(arrow + 2));
    if (head[0] == "fn") {
      s.set_function(head[1], args, element(value));
    } else if (head[0] == "pred") {
      if (value != "T" && value != "F") fail("predicate value must be T or F");
      s.set_predicate(head[1], args, value == "T");
    } else {
      fail("unknown entry '" + head[0] + "'");
    }
  }
  return s;
}

namespace {

std::size_t max_term_height(const Formula& f) {
  std::size_t h = 0;
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    for (const auto& a : g->args()) h = std::max(h, a.height());
    for (const auto& c : g->children()) stack.push_back(&c);
  }
  return h;
}

}  // namespace

std::optional<FiniteStructure> falsifying_structure(const Formula& f, std::size_t p,
                                                    const SearchOptions& opts) {
  auto search = opts;
  search.engine = sat::Engine::Dpll;
  auto pc = property_c(f, p, search);
  if (pc.holds) return std::nullopt;
  auto hd = herbrand_disjunction(f, p, opts.lexicon);
  auto sig = signature_of(hd.skolemized);
  std::size_t top = p + max_term_height(hd.matrix);
  auto dom = champ_fini(sig, top, hd.domain.lexicon ? LexiconPolicy::Always : LexiconPolicy::Never);
  FiniteStructure s;
  s.domain_size = dom.size();
  std::map<std::string, int> id;
  for (std::size_t i = 0; i < dom.terms.size(); ++i) {
    auto text = print(dom.terms[i]);
    id[text] = static_cast<int>(i);
    s.notes.push_back("e" + std::to_string(i) + " = " + text);
  }
  const int sink = static_cast<int>(dom.size()) - 1;
  for (const auto& sym : sig.functions) {
    s.declare_function(sym.name, sym.arity, sink);
    std::size_t cells = s.functions[sym.name].values.size();
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::vector<Term> args;
      std::size_t rest = cell;
      std::vector<int> digits(sym.arity);
      for (std::size_t i = sym.arity; i-- > 0;) {
        digits[i] = static_cast<int>(rest % s.domain_size);
        rest /= s.domain_size;
      }
      for (int d : digits) args.push_back(dom.terms[d]);
      auto t = Term::app(sym.name, std::move(args));
      if (t.height() < top) s.functions[sym.name].values[cell] = id.at(print(t));
    }
  }
  for (const auto& pred : predicate_symbols(hd.matrix)) {
    s.declare_predicate(pred.name, pred.arity, false);
    std::size_t cells = s.predicates[pred.name].values.size();
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::vector<Term> args;
      std::size_t rest = cell;
      std::vector<int> digits(pred.arity);
      for (std::size_t i = pred.arity; i-- > 0;) {
        digits[i] = static_cast<int>(rest % s.domain_size);
        rest /= s.domain_size;
      }
      for (int d : digits) args.push_back(dom.terms[d]);
      auto key = sat::atom_key(Formula::atom(pred.name, std::move(args)));
      if (auto it = pc.falsifying->find(key); it != pc.falsifying->end() && it->second)
        s.predicates[pred.name].values[cell] = 1;
    }
  }
  for (std::size_t i = 0; i < dom.terms.size(); ++i)
    if (dom.terms[i].is_var()) s.var_env[dom.terms[i].name()] = static_cast<int>(i);
  return s;
}

FiniteStructure arith_substructure_witness(const std::vector<Formula>& axioms, std::size_t n) {
  if (axioms.empty()) {
    FiniteStructure one;
    one.domain_size = 1;
    one.names = {"0"};
    one.set_function("0", {}, 0);
    one.set_function("S", {0}, 0);
    return one;
  }
  Signature sig;
  sig.functions = {Symbol{"0", 0, SymbolKind::PlainFunction}, Symbol{"S", 1, SymbolKind::PlainFunction}};
  for (const auto& a : axioms) {
    if (!is_closed(a)) throw std::invalid_argument("axiom is not closed: " + print(a));
    for (const auto& sym : function_symbols(a))
      if (!sig.functions.count(sym)) throw std::invalid_argument("axiom outside {0, S, =}: " + print(a));
  }
  auto negated = Formula::neg(Formula::conj_all(axioms));
  auto hd = herbrand_disjunction(negated, n);
  auto dom = champ_fini(sig, n, hd.domain.lexicon ? LexiconPolicy::Always : LexiconPolicy::Never);
  std::size_t h = 0;
  for (const auto& t : dom.terms) h = std::max(h, t.height());
  FiniteStructure s;
  s.domain_size = h + 2;
  for (std::size_t i = 0; i < s.domain_size; ++i) s.names.push_back(std::to_string(i));
  s.set_function("0", {}, 0);
  for (std::size_t i = 0; i < s.domain_size; ++i)
    s.set_function("S", {static_cast<int>(i)}, static_cast<int>(std::min(i + 1, h + 1)));
  if (dom.lexicon) s.var_env[std::string(kLexicon)] = 0;
  // Every instance of every axiom over T_n must hold.
  for (const auto& a : axioms) {
    std::vector<std::string> vars;
    const Formula* body = &a;
    while (body->kind() == Kind::Forall) {
      vars.push_back(body->name());
      body = &body->body();
    }
    if (!is_quantifier_free(*body)) throw std::invalid_argument("axiom is not universal: " + print(a));
    HerbrandDisjunction inst;
    inst.gamma_vars = vars;
    inst.domain = dom;
    bool ok = true;
    inst.for_each_substitution([&](const Substitution& sub) {
      ok = eval_in_structure(s, sub.apply(*body));
      return ok;
    });
    if (!ok) throw std::invalid_argument("axiom fails in the capped successor structure: " + print(a));
  }
  return s;
}

}  // namespace herbrand
