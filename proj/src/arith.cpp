#include "herbrand/arith.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "herbrand/budget.hpp"

namespace herbrand::arith {

namespace {

// S^k(base); base "" stands for 0.
struct STerm {
  std::string base;
  std::size_t k = 0;
  auto operator<=>(const STerm&) const = default;
};

struct Lit {
  STerm lhs, rhs;
  bool eq = true;
  auto operator<=>(const Lit&) const = default;
};

using Conj = std::vector<Lit>;
using Dnf = std::vector<Conj>;

STerm to_sterm(const Term& t) {
  STerm s;
  const Term* cur = &t;
  while (!cur->is_var() && cur->name() == "S" && cur->arity() == 1) {
    ++s.k;
    cur = &cur->args()[0];
  }
  if (cur->is_var()) {
    s.base = cur->name();
    return s;
  }
  if (cur->name() == "0" && cur->arity() == 0) return s;
  throw NotArithmetic("term outside {0, S}: " + print(t));
}

Term to_term(const STerm& s) { return successor_term(s.base, s.k); }

Lit normalize(Lit l) {
  auto m = std::min(l.lhs.k, l.rhs.k);
  l.lhs.k -= m;
  l.rhs.k -= m;
  // variables before 0
  auto key = [](const STerm& s) { return std::tuple(s.base.empty(), s.base, s.k); };
  if (key(l.rhs) < key(l.lhs)) std::swap(l.lhs, l.rhs);
  return l;
}

// Decided without context: same base on both sides.
std::optional<bool> trivial(const Lit& l) {
  if (l.lhs.base != l.rhs.base) return std::nullopt;
  bool same = l.lhs.k == l.rhs.k;
  return l.eq ? same : !same;
}

Lit lit_of(const Formula& atom, bool positive) {
  if (atom.name() != "=" || atom.args().size() != 2)
    throw NotArithmetic("predicate outside {=}: " + print(atom));
  return normalize({to_sterm(atom.args()[0]), to_sterm(atom.args()[1]), positive});
}

Formula lit_formula(const Lit& l) {
  auto e = Formula::eq(to_term(l.lhs), to_term(l.rhs));
  return l.eq ? e : Formula::neg(e);
}

const Lit kTrue{{}, {}, true};
const Lit kFalse{{}, {}, false};

Dnf dnf_product(const Dnf& a, const Dnf& b) {
  Dnf out;
  if (a.size() * b.size() > kDefaultBudget) throw BudgetError("arithmetic DNF exceeds budget");
  for (const auto& x : a)
    for (const auto& y : b) {
      Conj c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  return out;
}

// Quantifier-free input only.
Dnf dnf(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Kind::Atom: return {{lit_of(f, positive)}};
    case Kind::Not: return dnf(f.body(), !positive);
    case Kind::And:
    case Kind::Or: {
      bool join = (f.kind() == Kind::Or) == positive;
      auto l = dnf(f.lhs(), positive);
      auto r = dnf(f.rhs(), positive);
      if (join) {
        l.insert(l.end(), r.begin(), r.end());
        return l;
      }
      return dnf_product(l, r);
    }
    case Kind::Implies: {
      auto l = dnf(f.lhs(), !positive);
      auto r = dnf(f.rhs(), positive);
      if (positive) {
        l.insert(l.end(), r.begin(), r.end());
        return l;
      }
      return dnf_product(l, r);
    }
    default: throw std::invalid_argument("quantifier in quantifier-free position: " + print(f));
  }
}

Formula from_dnf(const Dnf& d) {
  if (d.empty()) return lit_formula(kFalse);
  std::vector<Formula> disj;
  for (const auto& c : d) {
    if (c.empty()) return lit_formula(kTrue);
    std::vector<Formula> conj;
    for (const auto& l : c) conj.push_back(lit_formula(l));
    disj.push_back(Formula::conj_all(conj));
  }
  return Formula::disj_all(disj);
}

// Drops decided literals; nullopt when the conjunct contains a false one.
std::optional<Conj> simplify(const Conj& c) {
  Conj out;
  for (auto l : c) {
    l = normalize(l);
    if (auto t = trivial(l)) {
      if (!*t) return std::nullopt;
      continue;
    }
    out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Lit shift_subst(const Lit& l, const std::string& y, const STerm& t) {
  Lit r = l;
  for (auto* side : {&r.lhs, &r.rhs})
    if (side->base == y) *side = STerm{t.base, side->k + t.k};
  return normalize(r);
}

// Exists y over one conjunct.
Dnf eliminate_in_conjunct(const std::string& y, const Conj& c) {
  auto simp = simplify(c);
  if (!simp) return {};
  Conj rest;
  std::vector<Lit> with_y;
  for (const auto& l : *simp) {
    if (l.lhs.base == y || l.rhs.base == y)
      with_y.push_back(l);
    else
      rest.push_back(l);
  }
  auto eq = std::find_if(with_y.begin(), with_y.end(), [](const Lit& l) { return l.eq; });
  if (eq == with_y.end()) return {rest};  // finitely many exclusions on an infinite domain
  Lit e = *eq;
  if (e.rhs.base == y) std::swap(e.lhs, e.rhs);
  // S^a(y) = S^b(t), one of a, b zero
  std::size_t a = e.lhs.k, b = e.rhs.k;
  STerm t{e.rhs.base, 0};
  Conj out = rest;
  if (a == 0) {
    for (const auto& l : with_y)
      if (&l != &*eq) out.push_back(shift_subst(l, y, {t.base, b}));
    return {out};
  }
  // y = t - a: exists iff t is none of 0..a-1; raise every y-literal by a.
  for (std::size_t j = 0; j < a; ++j) out.push_back(normalize({t, STerm{"", j}, false}));
  for (const auto& l : with_y) {
    if (&l == &*eq) continue;
    Lit raised = l;
    raised.lhs.k += a;
    raised.rhs.k += a;
    for (auto* side : {&raised.lhs, &raised.rhs})
      if (side->base == y) *side = STerm{t.base, side->k - a};
    out.push_back(normalize(raised));
  }
  return {out};
}

Formula eliminate_exists(const std::string& y, const Formula& qf) {
  Dnf out;
  for (const auto& c : dnf(qf, true)) {
    auto part = eliminate_in_conjunct(y, c);
    out.insert(out.end(), part.begin(), part.end());
  }
  return from_dnf(out);
}

Formula qe(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: lit_of(f, true); return f;
    case Kind::Not: return Formula::neg(qe(f.body()));
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: return Formula::binary(f.kind(), qe(f.lhs()), qe(f.rhs()));
    case Kind::Exists: return eliminate_exists(f.name(), qe(f.body()));
    case Kind::Forall: return Formula::neg(eliminate_exists(f.name(), Formula::neg(qe(f.body()))));
  }
  return f;
}

// Union-find with offsets: value(node) = value(root) + offset.
class Offsets {
 public:
  std::pair<std::string, long> find(const std::string& x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) return {x, 0};
    auto [root, off] = find(it->second.first);
    it->second = {root, it->second.second + off};
    return it->second;
  }
  // value(u) + du = value(v) + dv
  bool unite(const std::string& u, long du, const std::string& v, long dv) {
    auto [ru, ou] = find(u);
    auto [rv, ov] = find(v);
    long diff = (ov + dv) - (ou + du);  // value(ru) - value(rv) = diff
    if (ru == rv) return diff == 0;
    if (ru == kZero) {
      parent_[rv] = {ru, -diff};
    } else {
      parent_[ru] = {rv, diff};
    }
    return true;
  }
  static inline const std::string kZero = "";

 private:
  std::map<std::string, std::pair<std::string, long>> parent_;
};

bool satisfiable(const Conj& c) {
  Offsets uf;
  for (const auto& l : c)
    if (l.eq && !uf.unite(l.lhs.base, static_cast<long>(l.lhs.k), l.rhs.base, static_cast<long>(l.rhs.k)))
      return false;
  // Members of the zero class have fixed values, which must be natural numbers.
  for (const auto& l : c)
    for (const auto* side : {&l.lhs, &l.rhs}) {
      auto [root, off] = uf.find(side->base);
      if (root == Offsets::kZero && off < 0) return false;
    }
  for (const auto& l : c) {
    if (l.eq) continue;
    auto [ru, ou] = uf.find(l.lhs.base);
    auto [rv, ov] = uf.find(l.rhs.base);
    if (ru == rv && ou + static_cast<long>(l.lhs.k) == ov + static_cast<long>(l.rhs.k)) return false;
  }
  return true;
}

Dnf satisfiable_part(const Formula& f) {
  Dnf out;
  for (const auto& c : dnf(f, true)) {
    auto s = simplify(c);
    if (s && satisfiable(*s)) out.push_back(*s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void validate_terms(const Formula& f) {
  if (f.is_atom()) {
    lit_of(f, true);
    return;
  }
  for (const auto& c : f.children()) validate_terms(c);
}

}  // namespace

Term successor_term(const std::string& base, std::size_t k) {
  Term t = base.empty() ? Term::app("0") : Term::var(base);
  for (std::size_t i = 0; i < k; ++i) t = Term::app("S", {t});
  return t;
}

std::string to_string(AxiomTag tag, std::size_t i) {
  switch (tag) {
    case AxiomTag::SchemeInstance: return "S";
    case AxiomTag::Nat1: return "nat1";
    case AxiomTag::Nat2: return "nat2";
    case AxiomTag::Nat3: return "nat3";
    case AxiomTag::Nat4Plus: return "nat" + std::to_string(4 + i);
  }
  return "?";
}

Formula axiom(AxiomTag tag, std::size_t i) {
  auto x = Term::var("x");
  auto y = Term::var("y");
  auto zero = Term::app("0");
  auto s = [](Term t) { return Term::app("S", {std::move(t)}); };
  switch (tag) {
    case AxiomTag::Nat1:
      return Formula::forall(
          "x", Formula::disj(Formula::eq(x, zero), Formula::exists("y", Formula::eq(x, s(y)))));
    case AxiomTag::Nat2: return Formula::forall("x", Formula::neg(Formula::eq(s(x), zero)));
    case AxiomTag::Nat3:
      return Formula::forall(
          "x", Formula::forall("y", Formula::implies(Formula::eq(s(x), s(y)), Formula::eq(x, y))));
    case AxiomTag::Nat4Plus:
      return Formula::forall("x", Formula::neg(Formula::eq(successor_term("x", i + 1), x)));
    case AxiomTag::SchemeInstance: break;
  }
  throw std::invalid_argument("scheme instances need a formula; use induction_instance");
}

Formula induction_instance(const Formula& p, const std::string& var) {
  auto at = [&](Term t) { return Substitution{{var, std::move(t)}}.apply(p); };
  auto y = fresh_name("y", all_vars(p));
  auto step = Formula::forall(y, Formula::implies(at(Term::var(y)), at(successor_term(y, 1))));
  auto x = fresh_name("x", all_vars(p));
  return Formula::implies(Formula::conj(at(successor_term("", 0)), step), Formula::forall(x, at(Term::var(x))));
}

void validate(const Formula& f) { validate_terms(f); }

Formula eliminate_quantifiers(const Formula& f) {
  validate(f);
  return qe(f);
}

Formula qf_normal_form(const Formula& f) {
  if (!is_quantifier_free(f)) throw std::invalid_argument("quantifier in " + print(f));
  validate(f);
  auto pos = satisfiable_part(f);
  if (pos.empty()) return lit_formula(kFalse);
  if (satisfiable_part(Formula::neg(f)).empty()) return lit_formula(kTrue);
  return from_dnf(pos);
}

bool is_truth(const Formula& f) { return f == lit_formula(kTrue); }
bool is_falsity(const Formula& f) { return f == lit_formula(kFalse); }

std::string to_string(Verdict v) { return v == Verdict::Derivable ? "derivable" : "refutable"; }

Verdict decide(const Formula& sentence) {
  if (!is_closed(sentence))
    throw std::invalid_argument("sentence has free variables: " + print(sentence));
  auto q = eliminate_quantifiers(sentence);
  if (is_falsity(qf_normal_form(Formula::neg(q)))) return Verdict::Derivable;
  if (is_falsity(qf_normal_form(q))) return Verdict::Refutable;
  throw std::logic_error("no verdict for " + print(sentence));
}

}  // namespace herbrand::arith
