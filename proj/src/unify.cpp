#include "herbrand/engine.hpp"

#include <deque>

namespace herbrand {

std::string to_string(UnifyFailure f) {
  switch (f) {
    case UnifyFailure::None: return "none";
    case UnifyFailure::Clash: return "clash";
    case UnifyFailure::Occurs: return "occurs-check";
  }
  return "?";
}

namespace {

bool occurs(const std::string& v, const Term& t) {
  if (t.is_var()) return t.name() == v;
  if (t.is_ground()) return false;
  for (const auto& a : t.args())
    if (occurs(v, a)) return true;
  return false;
}

}  // namespace

UnifyResult unify(const std::vector<std::pair<Term, Term>>& equations,
                  const std::set<std::string>* rigid) {
  auto flexible = [&](const Term& t) {
    return t.is_var() && !(rigid && rigid->count(t.name()));
  };
  std::deque<std::pair<Term, Term>> work(equations.begin(), equations.end());
  Substitution solved;
  UnifyResult r;
  while (!work.empty()) {
    auto [s, t] = work.front();
    work.pop_front();
    if (s == t) continue;  // delete
    if (!flexible(s) && flexible(t)) std::swap(s, t);  // orient
    if (flexible(s)) {
      if (occurs(s.name(), t)) {
        r.failure = UnifyFailure::Occurs;
        return r;
      }
      // eliminate
      Substitution one{{s.name(), t}};
      for (auto& [a, b] : work) {
        a = one.apply(a);
        b = one.apply(b);
      }
      solved = compose(solved, one);
      solved.bind(s.name(), t);
      continue;
    }
    if (s.is_var() || t.is_var() || s.name() != t.name() || s.arity() != t.arity()) {
      r.failure = UnifyFailure::Clash;
      return r;
    }
    // decompose, keeping argument order at the front
    for (std::size_t i = s.arity(); i-- > 0;) work.emplace_front(s.args()[i], t.args()[i]);
  }
  r.mgu = std::move(solved);
  return r;
}

UnifyResult unify(const Term& a, const Term& b, const std::set<std::string>* rigid) {
  return unify(std::vector<std::pair<Term, Term>>{{a, b}}, rigid);
}

UnifyResult unify_atoms(const Formula& a, const Formula& b, const std::set<std::string>* rigid) {
  if (!a.is_atom() || !b.is_atom() || a.name() != b.name() || a.args().size() != b.args().size())
    return UnifyResult{std::nullopt, UnifyFailure::Clash};
  std::vector<std::pair<Term, Term>> eqs;
  for (std::size_t i = 0; i < a.args().size(); ++i) eqs.emplace_back(a.args()[i], b.args()[i]);
  return unify(eqs, rigid);
}

}  // namespace herbrand
