#include "herbrand/transform.hpp"

#include <functional>
#include <optional>

namespace herbrand {

std::string to_string(UniformClass c) {
  switch (c) {
    case UniformClass::Alpha: return "alpha";
    case UniformClass::Beta: return "beta";
    case UniformClass::Gamma: return "gamma";
    case UniformClass::Delta: return "delta";
  }
  return "?";
}

std::string to_string(Direction d) { return d == Direction::Prenex ? "prenex" : "antiprenex"; }

UniformClass quantifier_class(Kind quantifier, Polarity pol) {
  bool ex = quantifier == Kind::Exists;
  return (ex == (pol == Polarity::Positive)) ? UniformClass::Gamma : UniformClass::Delta;
}

UniformClass classify(const Formula& f, const Path& p) {
  const auto& sub = subformula_at(f, p);
  auto pol = polarity_at(f, p);
  bool pos = pol == Polarity::Positive;
  switch (sub.kind()) {
    case Kind::Atom: throw PositionError("an atom has no uniform class");
    case Kind::Not: return UniformClass::Alpha;
    case Kind::Or:
    case Kind::Implies: return pos ? UniformClass::Alpha : UniformClass::Beta;
    case Kind::And: return pos ? UniformClass::Beta : UniformClass::Alpha;
    case Kind::Forall:
    case Kind::Exists: return quantifier_class(sub.kind(), pol);
  }
  return UniformClass::Alpha;
}

namespace {

bool is_connective(const Formula& f) { return f.kind() == Kind::Or || f.kind() == Kind::And; }

std::optional<Formula> rewrite(const Formula& sub, int rule, Direction dir,
                               const std::set<std::string>& taken) {
  if (dir == Direction::Prenex) {
    switch (rule) {
      case 1:
      case 2: {
        Kind inner = rule == 1 ? Kind::Forall : Kind::Exists;
        Kind outer = rule == 1 ? Kind::Exists : Kind::Forall;
        if (sub.kind() != Kind::Not || sub.body().kind() != inner) return std::nullopt;
        return Formula::quant(outer, sub.body().name(), Formula::neg(sub.body().body()));
      }
      case 3:
      case 4:
      case 5:
      case 6: {
        if (!is_connective(sub)) return std::nullopt;
        Kind q = rule <= 4 ? Kind::Forall : Kind::Exists;
        bool quant_left = rule == 3 || rule == 5;
        const Formula& qf = quant_left ? sub.lhs() : sub.rhs();
        const Formula& other = quant_left ? sub.rhs() : sub.lhs();
        if (qf.kind() != q) return std::nullopt;
        std::string x = qf.name();
        Formula body = qf.body();
        if (free_vars(other).count(x)) {
          auto y = fresh_name(x, taken);
          body = Substitution{{x, Term::var(y)}}.apply(body);
          x = y;
        }
        auto joined = quant_left ? Formula::binary(sub.kind(), body, other)
                                 : Formula::binary(sub.kind(), other, body);
        return Formula::quant(q, x, joined);
      }
      default: throw PassageError("no Passage rule " + std::to_string(rule));
    }
  }
  switch (rule) {
    case 1:
    case 2: {
      Kind outer = rule == 1 ? Kind::Exists : Kind::Forall;
      Kind inner = rule == 1 ? Kind::Forall : Kind::Exists;
      if (sub.kind() != outer || sub.body().kind() != Kind::Not) return std::nullopt;
      return Formula::neg(Formula::quant(inner, sub.name(), sub.body().body()));
    }
    case 3:
    case 4:
    case 5:
    case 6: {
      Kind q = rule <= 4 ? Kind::Forall : Kind::Exists;
      if (sub.kind() != q || !is_connective(sub.body())) return std::nullopt;
      bool quant_left = rule == 3 || rule == 5;
      const auto& conn = sub.body();
      const Formula& a = quant_left ? conn.lhs() : conn.rhs();
      const Formula& other = quant_left ? conn.rhs() : conn.lhs();
      if (free_vars(other).count(sub.name())) return std::nullopt;
      auto qa = Formula::quant(q, sub.name(), a);
      return quant_left ? Formula::binary(conn.kind(), qa, other)
                        : Formula::binary(conn.kind(), other, qa);
    }
    default: throw PassageError("no Passage rule " + std::to_string(rule));
  }
}

}  // namespace

Formula passage_step(const Formula& f, const Path& p, int rule, Direction dir) {
  const auto& sub = subformula_at(f, p);
  auto out = rewrite(sub, rule, dir, all_vars(f));
  if (!out)
    throw PassageError("Passage rule " + std::to_string(rule) + " (" + to_string(dir) +
                       ") does not match at position " + path_to_string(p));
  return replace_at(f, p, *out);
}

Formula passage(const Formula& f, const Path& p, int rule, Direction dir) {
  if (has_skolem_symbols(f))
    throw PassageError("Rules of Passage may not be applied to Skolemized formulas");
  return passage_step(f, p, rule, dir);
}

bool passage_applies(const Formula& f, const Path& p, int rule, Direction dir) {
  if (has_skolem_symbols(f)) return false;
  return rewrite(subformula_at(f, p), rule, dir, all_vars(f)).has_value();
}

Formula expand_implications(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return f;
    case Kind::Not: return Formula::neg(expand_implications(f.body()));
    case Kind::Implies:
      return Formula::disj(Formula::neg(expand_implications(f.lhs())), expand_implications(f.rhs()));
    case Kind::And:
    case Kind::Or:
      return Formula::binary(f.kind(), expand_implications(f.lhs()), expand_implications(f.rhs()));
    case Kind::Forall:
    case Kind::Exists: return Formula::quant(f.kind(), f.name(), expand_implications(f.body()));
  }
  return f;
}

bool is_prenex(const Formula& f) {
  const Formula* cur = &f;
  while (cur->is_quantifier()) cur = &cur->body();
  return is_quantifier_free(*cur);
}

namespace {

Formula normalize(const Formula& f, Direction dir) {
  if (has_skolem_symbols(f))
    throw PassageError("Rules of Passage may not be applied to Skolemized formulas");
  Formula cur = rectify(expand_implications(f));
  for (;;) {
    bool applied = false;
    auto taken = all_vars(cur);
    for (const auto& p : all_paths(cur)) {
      const auto& sub = subformula_at(cur, p);
      for (int rule = 1; rule <= 6 && !applied; ++rule) {
        if (auto r = rewrite(sub, rule, dir, taken)) {
          cur = replace_at(cur, p, *r);
          applied = true;
        }
      }
      if (applied) break;
    }
    if (!applied) return cur;
  }
}

}  // namespace

Formula to_prenex(const Formula& f) { return normalize(f, Direction::Prenex); }
Formula to_antiprenex(const Formula& f) { return normalize(f, Direction::AntiPrenex); }

namespace {

struct Skolemizer {
  bool inner;
  std::set<std::string> names;
  SkolemForm out;

  Formula run(const Formula& f, Polarity pol, std::vector<std::string>& gammas) {
    switch (f.kind()) {
      case Kind::Atom: return f;
      case Kind::Not: return Formula::neg(run(f.body(), flip(pol), gammas));
      case Kind::Implies:
      case Kind::And:
      case Kind::Or: {
        auto lhs = run(f.lhs(), f.kind() == Kind::Implies ? flip(pol) : pol, gammas);
        auto rhs = run(f.rhs(), pol, gammas);
        return Formula::binary(f.kind(), lhs, rhs);
      }
      case Kind::Forall:
      case Kind::Exists: {
        if (quantifier_class(f.kind(), pol) == UniformClass::Gamma) {
          out.gamma_vars.push_back(f.name());
          gammas.push_back(f.name());
          auto body = run(f.body(), pol, gammas);
          gammas.pop_back();
          return Formula::quant(f.kind(), f.name(), body);
        }
        std::vector<Term> args;
        auto in_scope = free_vars(f.body());
        for (const auto& g : gammas)
          if (!inner || in_scope.count(g)) args.push_back(Term::var(g));
        auto name = fresh_name(strip_index(f.name()) + std::string(kSkolemSuffix), names);
        names.insert(name);
        auto sk = Term::app(name, std::move(args));
        out.delta_terms.emplace(f.name(), sk);
        out.delta_order.push_back(f.name());
        return run(Substitution{{f.name(), sk}}.apply(f.body()), pol, gammas);
      }
    }
    return f;
  }
};

SkolemForm skolemize(const Formula& f, bool inner) {
  Skolemizer s{inner, {}, {}};
  auto r = rectify(f);
  for (const auto& sym : function_symbols(r)) s.names.insert(sym.name);
  for (const auto& v : all_vars(r)) s.names.insert(v);
  std::vector<std::string> gammas;
  s.out.formula = s.run(r, Polarity::Positive, gammas);
  return s.out;
}

}  // namespace

SkolemForm skolemize_outer_form(const Formula& f) { return skolemize(f, false); }
SkolemForm skolemize_inner_form(const Formula& f) { return skolemize(f, true); }
Formula skolemize_outer(const Formula& f) { return skolemize(f, false).formula; }
Formula skolemize_inner(const Formula& f) { return skolemize(f, true).formula; }

Formula matrix(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return f;
    case Kind::Forall:
    case Kind::Exists: return matrix(f.body());
    case Kind::Not: return Formula::neg(matrix(f.body()));
    default: return Formula::binary(f.kind(), matrix(f.lhs()), matrix(f.rhs()));
  }
}

Formula relativize(const Formula& f, const std::string& guard) {
  for (const auto& p : predicate_symbols(f))
    if (p.name == guard)
      throw std::invalid_argument("guard predicate '" + guard + "' already occurs in the formula");
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    switch (g.kind()) {
      case Kind::Atom: return g;
      case Kind::Not: return Formula::neg(go(g.body()));
      case Kind::Forall:
        return Formula::forall(g.name(), Formula::implies(Formula::atom(guard, {Term::var(g.name())}),
                                                          go(g.body())));
      case Kind::Exists:
        return Formula::exists(g.name(), Formula::conj(Formula::atom(guard, {Term::var(g.name())}),
                                                       go(g.body())));
      default: return Formula::binary(g.kind(), go(g.lhs()), go(g.rhs()));
    }
  };
  return go(f);
}

}  // namespace herbrand
