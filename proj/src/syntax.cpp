#include "herbrand/syntax.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace herbrand {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_skolem_name(std::string_view name) {
  auto hash = name.find('#');
  auto stem = name.substr(0, hash);
  return stem.size() > kSkolemSuffix.size() &&
         stem.substr(stem.size() - kSkolemSuffix.size()) == kSkolemSuffix;
}

bool is_box_name(std::string_view name) {
  return name.size() >= 2 && name.front() == '[' && name.back() == ']';
}

std::string box_name(std::string_view printed_term) {
  return "[" + std::string(printed_term) + "]";
}

SyntaxError::SyntaxError(std::size_t l, std::size_t c, const std::string& what)
    : std::runtime_error("syntax error at line " + std::to_string(l) + ", column " +
                         std::to_string(c) + ": " + what),
      line(l),
      col(c) {}

Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

// ---- Term -------------------------------------------------------------------

Term::Term() : Term(lexicon()) {}

Term Term::var(std::string name) {
  auto h = mix(std::hash<std::string>{}(name), 1);
  return Term(std::make_shared<const Node>(Node{true, false, std::move(name), {}, h, 0}));
}

Term Term::app(std::string fn, std::vector<Term> args) {
  std::size_t h = mix(std::hash<std::string>{}(fn), 2);
  std::size_t height = 0;
  bool ground = true;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    height = std::max(height, a.height());
    ground = ground && a.is_ground();
  }
  return Term(std::make_shared<const Node>(
      Node{false, ground, std::move(fn), std::move(args), h, height + 1}));
}

Term Term::lexicon() {
  static const Term l = var(std::string(kLexicon));
  return l;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.is_var() != b.is_var() || a.name() != b.name() ||
      a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_var() != b.is_var())
    return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---- Formula ----------------------------------------------------------------

Formula::Formula() : Formula(atom("?")) {}

Formula Formula::make(Kind k, std::string name, std::vector<Term> args,
                      std::vector<Formula> children) {
  std::size_t h = mix(std::hash<std::string>{}(name), static_cast<std::size_t>(k) + 7);
  std::size_t size = 1;
  for (const auto& a : args) h = mix(h, a.hash());
  for (const auto& c : children) {
    h = mix(h, c.hash());
    size += c.size();
  }
  return Formula(std::make_shared<const Node>(
      Node{k, std::move(name), std::move(args), std::move(children), h, size}));
}

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  return make(Kind::Atom, std::move(pred), std::move(args), {});
}
Formula Formula::eq(Term lhs, Term rhs) { return atom("=", {std::move(lhs), std::move(rhs)}); }
Formula Formula::neg(Formula f) { return make(Kind::Not, "", {}, {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) {
  return make(Kind::And, "", {}, {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return make(Kind::Or, "", {}, {std::move(a), std::move(b)});
}
Formula Formula::implies(Formula a, Formula b) {
  return make(Kind::Implies, "", {}, {std::move(a), std::move(b)});
}
Formula Formula::forall(std::string var, Formula body) {
  return make(Kind::Forall, std::move(var), {}, {std::move(body)});
}
Formula Formula::exists(std::string var, Formula body) {
  return make(Kind::Exists, std::move(var), {}, {std::move(body)});
}
Formula Formula::quant(Kind k, std::string var, Formula body) {
  return make(k, std::move(var), {}, {std::move(body)});
}
Formula Formula::binary(Kind k, Formula a, Formula b) {
  return make(k, "", {}, {std::move(a), std::move(b)});
}

Formula Formula::conj_all(std::span<const Formula> fs) {
  if (fs.empty()) throw std::invalid_argument("empty conjunction");
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}

Formula Formula::disj_all(std::span<const Formula> fs) {
  if (fs.empty()) throw std::invalid_argument("empty disjunction");
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = disj(out, fs[i]);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.name() != b.name() ||
      a.args().size() != b.args().size() || a.children().size() != b.children().size())
    return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!(a.children()[i] == b.children()[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (auto c = a.children()[i] <=> b.children()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---- positions --------------------------------------------------------------

std::string path_to_string(const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

Path path_from_string(std::string_view s) {
  Path p;
  if (s.empty() || s == "-") return p;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto dot = s.find('.', start);
    auto piece = s.substr(start, dot == std::string_view::npos ? s.size() - start : dot - start);
    if (piece.empty()) throw PositionError("malformed path '" + std::string(s) + "'");
    int v = 0;
    for (char c : piece) {
      if (c < '0' || c > '9') throw PositionError("malformed path '" + std::string(s) + "'");
      v = v * 10 + (c - '0');
    }
    p.push_back(v);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return p;
}

const Formula& subformula_at(const Formula& f, const Path& p) {
  const Formula* cur = &f;
  for (int i : p) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->children().size())
      throw PositionError("position " + path_to_string(p) + " does not exist");
    cur = &cur->children()[i];
  }
  return *cur;
}

Polarity polarity_at(const Formula& f, const Path& p) {
  const Formula* cur = &f;
  Polarity pol = Polarity::Positive;
  for (int i : p) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->children().size())
      throw PositionError("position " + path_to_string(p) + " does not exist");
    if (cur->kind() == Kind::Not || (cur->kind() == Kind::Implies && i == 0)) pol = flip(pol);
    cur = &cur->children()[i];
  }
  return pol;
}

bool in_quantifier_scope(const Formula& f, const Path& p) {
  const Formula* cur = &f;
  for (int i : p) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->children().size())
      throw PositionError("position " + path_to_string(p) + " does not exist");
    if (cur->is_quantifier()) return true;
    cur = &cur->children()[i];
  }
  return false;
}

namespace {

Formula with_children(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case Kind::Atom: return f;
    case Kind::Not: return Formula::neg(std::move(kids[0]));
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: return Formula::binary(f.kind(), std::move(kids[0]), std::move(kids[1]));
    case Kind::Forall:
    case Kind::Exists: return Formula::quant(f.kind(), f.name(), std::move(kids[0]));
  }
  return f;
}

Formula replace_rec(const Formula& f, const Path& p, std::size_t depth, const Formula& r) {
  if (depth == p.size()) return r;
  int i = p[depth];
  if (i < 0 || static_cast<std::size_t>(i) >= f.children().size())
    throw PositionError("position " + path_to_string(p) + " does not exist");
  auto kids = f.children();
  kids[i] = replace_rec(kids[i], p, depth + 1, r);
  return with_children(f, std::move(kids));
}

void paths_rec(const Formula& f, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    cur.push_back(static_cast<int>(i));
    paths_rec(f.children()[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

Formula replace_at(const Formula& f, const Path& p, const Formula& replacement) {
  return replace_rec(f, p, 0, replacement);
}

std::vector<Path> all_paths(const Formula& f) {
  std::vector<Path> out;
  Path cur;
  paths_rec(f, cur, out);
  return out;
}

// ---- Substitution -----------------------------------------------------------

void Substitution::bind(const std::string& var, Term t) { map_.insert_or_assign(var, std::move(t)); }

const Term* Substitution::find(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

std::set<std::string> Substitution::domain() const {
  std::set<std::string> out;
  for (const auto& [k, v] : map_) out.insert(k);
  return out;
}

Term Substitution::apply(const Term& t) const {
  if (map_.empty()) return t;
  if (t.is_var()) {
    auto it = map_.find(t.name());
    return it == map_.end() ? t : it->second;
  }
  if (t.is_ground()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::app(t.name(), std::move(args)) : t;
}

namespace {

bool term_has_var(const Term& t, const std::string& v) {
  if (t.is_var()) return t.name() == v;
  for (const auto& a : t.args())
    if (term_has_var(a, v)) return true;
  return false;
}

bool formula_has_free(const Formula& f, const std::string& v) {
  switch (f.kind()) {
    case Kind::Atom:
      for (const auto& a : f.args())
        if (term_has_var(a, v)) return true;
      return false;
    case Kind::Forall:
    case Kind::Exists:
      return f.name() != v && formula_has_free(f.body(), v);
    default:
      for (const auto& c : f.children())
        if (formula_has_free(c, v)) return true;
      return false;
  }
}

Formula apply_rec(const Formula& f, const std::map<std::string, Term>& m) {
  if (m.empty()) return f;
  switch (f.kind()) {
    case Kind::Atom: {
      Substitution s;
      for (const auto& [k, v] : m) s.bind(k, v);
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(s.apply(a));
      return Formula::atom(f.name(), std::move(args));
    }
    case Kind::Forall:
    case Kind::Exists: {
      auto inner = m;
      inner.erase(f.name());
      for (const auto& [k, v] : inner) {
        if (term_has_var(v, f.name()) && formula_has_free(f.body(), k))
          throw CaptureError("substituting " + print(v) + " for " + k +
                             " would capture variable " + f.name());
      }
      return Formula::quant(f.kind(), f.name(), apply_rec(f.body(), inner));
    }
    default: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(apply_rec(c, m));
      return with_children(f, std::move(kids));
    }
  }
}

}  // namespace

Formula Substitution::apply(const Formula& f) const { return apply_rec(f, map_); }

Substitution Substitution::restrict(const std::set<std::string>& vars) const {
  Substitution out;
  for (const auto& [k, v] : map_)
    if (vars.count(k)) out.bind(k, v);
  return out;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [k, v] : first.bindings()) {
    auto img = second.apply(v);
    if (!(img.is_var() && img.name() == k)) out.bind(k, img);
  }
  for (const auto& [k, v] : second.bindings())
    if (!first.contains(k)) out.bind(k, v);
  return out;
}

// ---- queries ----------------------------------------------------------------

std::size_t height(const Term& t) { return t.height(); }

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) term_vars(a, out);
}

void free_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Atom: {
      std::set<std::string> vs;
      for (const auto& a : f.args()) term_vars(a, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Kind::Forall:
    case Kind::Exists: {
      bool fresh = bound.insert(f.name()).second;
      free_rec(f.body(), bound, out);
      if (fresh) bound.erase(f.name());
      return;
    }
    default:
      for (const auto& c : f.children()) free_rec(c, bound, out);
  }
}

void fn_symbols(const Term& t, std::set<Symbol>& out) {
  if (t.is_var()) return;
  SymbolKind k = SymbolKind::PlainFunction;
  if (t.is_skolem()) k = t.arity() == 0 ? SymbolKind::SkolemConstant : SymbolKind::SkolemFunction;
  out.insert(Symbol{t.name(), t.arity(), k});
  for (const auto& a : t.args()) fn_symbols(a, out);
}

template <typename Fn>
void visit(const Formula& f, Fn&& fn) {
  fn(f);
  for (const auto& c : f.children()) visit(c, fn);
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  term_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_rec(f, bound, out);
  return out;
}

std::set<std::string> bound_vars(const Formula& f) {
  std::set<std::string> out;
  visit(f, [&](const Formula& g) {
    if (g.is_quantifier()) out.insert(g.name());
  });
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  visit(f, [&](const Formula& g) {
    if (g.is_quantifier()) out.insert(g.name());
    for (const auto& a : g.args()) term_vars(a, out);
  });
  return out;
}

std::set<Symbol> function_symbols(const Term& t) {
  std::set<Symbol> out;
  fn_symbols(t, out);
  return out;
}

std::set<Symbol> function_symbols(const Formula& f) {
  std::set<Symbol> out;
  visit(f, [&](const Formula& g) {
    for (const auto& a : g.args()) fn_symbols(a, out);
  });
  return out;
}

std::set<Symbol> predicate_symbols(const Formula& f) {
  std::set<Symbol> out;
  visit(f, [&](const Formula& g) {
    if (g.is_atom()) out.insert(Symbol{g.name(), g.args().size(), SymbolKind::Predicate});
  });
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

bool is_quantifier_free(const Formula& f) {
  bool qf = true;
  visit(f, [&](const Formula& g) { qf = qf && !g.is_quantifier(); });
  return qf;
}

bool has_skolem_symbols(const Formula& f) {
  for (const auto& s : function_symbols(f))
    if (s.kind == SymbolKind::SkolemFunction || s.kind == SymbolKind::SkolemConstant) return true;
  return false;
}

bool is_rectified(const Formula& f) {
  auto fv = free_vars(f);
  std::set<std::string> seen;
  bool ok = true;
  visit(f, [&](const Formula& g) {
    if (!g.is_quantifier()) return;
    if (fv.count(g.name()) || !seen.insert(g.name()).second) ok = false;
  });
  return ok;
}

std::string strip_index(const std::string& name) {
  auto h = name.find('#');
  return h == std::string::npos ? name : name.substr(0, h);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  auto stem = strip_index(base);
  if (!used.count(stem)) return stem;
  for (std::size_t k = 1;; ++k) {
    auto cand = stem + "#" + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& env) {
  if (t.is_var()) {
    auto it = env.find(t.name());
    return it == env.end() ? t : Term::var(it->second);
  }
  if (t.is_ground()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename_term(a, env));
  return Term::app(t.name(), std::move(args));
}

Formula rectify_rec(const Formula& f, std::map<std::string, std::string>& env,
                    std::set<std::string>& used, std::set<std::string>& taken) {
  switch (f.kind()) {
    case Kind::Atom: {
      if (env.empty()) return f;
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(rename_term(a, env));
      return Formula::atom(f.name(), std::move(args));
    }
    case Kind::Forall:
    case Kind::Exists: {
      std::string name = f.name();
      if (used.count(name)) {
        name = fresh_name(name, taken);
        taken.insert(name);
      }
      used.insert(name);
      auto saved = env.find(f.name()) == env.end()
                       ? std::optional<std::string>{}
                       : std::optional<std::string>{env[f.name()]};
      env[f.name()] = name;
      auto body = rectify_rec(f.body(), env, used, taken);
      if (saved)
        env[f.name()] = *saved;
      else
        env.erase(f.name());
      return Formula::quant(f.kind(), name, body);
    }
    default: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(rectify_rec(c, env, used, taken));
      return with_children(f, std::move(kids));
    }
  }
}

Formula rename_bound_rec(const Formula& f, const std::map<std::string, std::string>& renaming,
                         std::map<std::string, std::string>& env) {
  switch (f.kind()) {
    case Kind::Atom: {
      if (env.empty()) return f;
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(rename_term(a, env));
      return Formula::atom(f.name(), std::move(args));
    }
    case Kind::Forall:
    case Kind::Exists: {
      auto it = renaming.find(f.name());
      std::string name = it == renaming.end() ? f.name() : it->second;
      auto saved = env.find(f.name()) == env.end()
                       ? std::optional<std::string>{}
                       : std::optional<std::string>{env[f.name()]};
      if (name != f.name())
        env[f.name()] = name;
      else
        env.erase(f.name());
      auto body = rename_bound_rec(f.body(), renaming, env);
      if (saved)
        env[f.name()] = *saved;
      else
        env.erase(f.name());
      return Formula::quant(f.kind(), name, body);
    }
    default: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(rename_bound_rec(c, renaming, env));
      return with_children(f, std::move(kids));
    }
  }
}

bool alpha_term(const Term& a, const Term& b, const std::map<std::string, int>& ea,
                const std::map<std::string, int>& eb) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto ia = ea.find(a.name());
    auto ib = eb.find(b.name());
    if ((ia == ea.end()) != (ib == eb.end())) return false;
    if (ia == ea.end()) return a.name() == b.name();
    return ia->second == ib->second;
  }
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!alpha_term(a.args()[i], b.args()[i], ea, eb)) return false;
  return true;
}

bool alpha_rec(const Formula& a, const Formula& b, std::map<std::string, int>& ea,
               std::map<std::string, int>& eb, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Atom:
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_term(a.args()[i], b.args()[i], ea, eb)) return false;
      return true;
    case Kind::Forall:
    case Kind::Exists: {
      auto sa = ea.find(a.name()) == ea.end() ? std::optional<int>{} : std::optional<int>{ea[a.name()]};
      auto sb = eb.find(b.name()) == eb.end() ? std::optional<int>{} : std::optional<int>{eb[b.name()]};
      ea[a.name()] = depth;
      eb[b.name()] = depth;
      bool ok = alpha_rec(a.body(), b.body(), ea, eb, depth + 1);
      if (sa) ea[a.name()] = *sa; else ea.erase(a.name());
      if (sb) eb[b.name()] = *sb; else eb.erase(b.name());
      return ok;
    }
    default:
      for (std::size_t i = 0; i < a.children().size(); ++i)
        if (!alpha_rec(a.children()[i], b.children()[i], ea, eb, depth)) return false;
      return true;
  }
}

}  // namespace

Formula rectify(const Formula& f) {
  auto used = free_vars(f);
  auto taken = all_vars(f);
  std::map<std::string, std::string> env;
  return rectify_rec(f, env, used, taken);
}

Formula rename_bound(const Formula& f, const std::map<std::string, std::string>& renaming) {
  std::map<std::string, std::string> env;
  return rename_bound_rec(f, renaming, env);
}

bool alpha_equivalent(const Formula& a, const Formula& b) {
  std::map<std::string, int> ea, eb;
  return alpha_rec(a, b, ea, eb, 0);
}

Formula to_primitive(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return f;
    case Kind::Not: return Formula::neg(to_primitive(f.body()));
    case Kind::Or: return Formula::disj(to_primitive(f.lhs()), to_primitive(f.rhs()));
    case Kind::And:
      return Formula::neg(Formula::disj(Formula::neg(to_primitive(f.lhs())),
                                        Formula::neg(to_primitive(f.rhs()))));
    case Kind::Implies:
      return Formula::disj(Formula::neg(to_primitive(f.lhs())), to_primitive(f.rhs()));
    case Kind::Forall:
    case Kind::Exists: return Formula::quant(f.kind(), f.name(), to_primitive(f.body()));
  }
  return f;
}

Term unbox(const Term& t) {
  if (t.is_var()) {
    if (!is_box_name(t.name())) return t;
    return unbox(parse_term(std::string_view(t.name()).substr(1, t.name().size() - 2)));
  }
  if (t.is_ground()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(unbox(a));
  return Term::app(t.name(), std::move(args));
}

Formula unbox(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(unbox(a));
      return Formula::atom(f.name(), std::move(args));
    }
    default: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(unbox(c));
      return with_children(f, std::move(kids));
    }
  }
}

Term boxed(const Term& t) {
  if (t.is_var()) return t;
  if (t.is_skolem()) return Term::var(box_name(print(t)));
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(boxed(a));
  return Term::app(t.name(), std::move(args));
}

}  // namespace herbrand
