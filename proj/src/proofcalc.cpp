#include "herbrand/proofcalc.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "herbrand/expansion.hpp"
#include "herbrand/sat.hpp"

namespace herbrand {

namespace {

const std::vector<std::pair<RuleTag, std::string>>& tag_names() {
  static const std::vector<std::pair<RuleTag, std::string>> names = {
      {RuleTag::SententialTautologyAxiom, "SententialTautologyAxiom"},
      {RuleTag::ModusPonens, "ModusPonens"},
      {RuleTag::GenGammaQuant, "GenGammaQuant"},
      {RuleTag::GenDeltaQuant, "GenDeltaQuant"},
      {RuleTag::GammaQuant, "GammaQuant"},
      {RuleTag::DeltaQuant, "DeltaQuant"},
      {RuleTag::GenSimplification, "GenSimplification"},
      {RuleTag::GenGammaSimplification, "GenGammaSimplification"},
      {RuleTag::Simplification, "Simplification"},
      {RuleTag::Passage, "Passage"},
      {RuleTag::MonotoneReplace, "MonotoneReplace"},
  };
  return names;
}

bool is_quant_rule(RuleTag t) {
  return t == RuleTag::GenGammaQuant || t == RuleTag::GenDeltaQuant || t == RuleTag::GammaQuant ||
         t == RuleTag::DeltaQuant;
}

bool is_simp_rule(RuleTag t) {
  return t == RuleTag::GenSimplification || t == RuleTag::GenGammaSimplification ||
         t == RuleTag::Simplification;
}

}  // namespace

std::string to_string(const Rule& r) {
  for (const auto& [t, n] : tag_names())
    if (t == r.tag) {
      if (t == RuleTag::Passage)
        return n + "(" + std::to_string(r.passage_rule) + "," + to_string(r.direction) + ")";
      return n;
    }
  return "?";
}

Rule parse_rule(const std::string& text) {
  Rule r;
  auto paren = text.find('(');
  auto head = text.substr(0, paren);
  bool found = false;
  for (const auto& [t, n] : tag_names())
    if (n == head) {
      r.tag = t;
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown rule '" + text + "'");
  if (r.tag == RuleTag::Passage) {
    auto comma = text.find(',');
    auto close = text.find(')');
    if (paren == std::string::npos || comma == std::string::npos || close == std::string::npos)
      throw std::invalid_argument("Passage needs (rule,direction): '" + text + "'");
    r.passage_rule = std::stoi(text.substr(paren + 1, comma - paren - 1));
    auto dir = text.substr(comma + 1, close - comma - 1);
    if (dir == "prenex")
      r.direction = Direction::Prenex;
    else if (dir == "antiprenex")
      r.direction = Direction::AntiPrenex;
    else
      throw std::invalid_argument("unknown direction '" + dir + "'");
  }
  return r;
}

std::size_t Derivation::count(RuleTag tag) const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [&](const Step& s) { return s.rule.tag == tag; }));
}

// ---- checking -----------------------------------------------------------------

namespace {

struct Fail {
  std::string message;
};

const Formula& premise(const Derivation& d, std::size_t i, std::size_t k) {
  const auto& s = d.steps[i];
  if (s.premises.size() <= k) throw Fail{"missing premise"};
  auto p = s.premises[k];
  if (p >= i) throw Fail{"premise " + std::to_string(p) + " does not precede the step"};
  return d.steps[p].formula;
}

void expect_premises(const Step& s, std::size_t n) {
  if (s.premises.size() != n)
    throw Fail{"expected " + std::to_string(n) + " premise(s), found " +
               std::to_string(s.premises.size())};
}

const Formula& at(const Formula& f, const Path& p) {
  try {
    return subformula_at(f, p);
  } catch (const PositionError& e) {
    throw Fail{e.what()};
  }
}

const Formula kHole = Formula::atom("$hole");

void check_quant(const Derivation& d, std::size_t i) {
  const auto& s = d.steps[i];
  expect_premises(s, 1);
  const Formula& prem = premise(d, i, 0);
  const Formula& concl = s.formula;
  bool root_only = s.rule.tag == RuleTag::GammaQuant || s.rule.tag == RuleTag::DeltaQuant;
  bool gamma = s.rule.tag == RuleTag::GammaQuant || s.rule.tag == RuleTag::GenGammaQuant;
  const auto& path = s.data.at;
  if (root_only && !path.empty()) throw Fail{"rule applies at the root only"};
  const Formula& q = at(concl, path);
  if (!q.is_quantifier()) throw Fail{"no quantifier at position " + path_to_string(path)};
  if (q.name() != s.data.var)
    throw Fail{"quantifier binds " + q.name() + ", step data names " + s.data.var};
  if (in_quantifier_scope(concl, path))
    throw Fail{"position " + path_to_string(path) + " lies in the scope of a quantifier"};
  auto cls = quantifier_class(q.kind(), polarity_at(concl, path));
  if (gamma && cls != UniformClass::Gamma) throw Fail{"quantifier is not a gamma-quantifier"};
  if (!gamma && cls != UniformClass::Delta) throw Fail{"quantifier is not a delta-quantifier"};
  Term t = s.data.term ? *s.data.term : Term::var(q.name());
  if (gamma) {
    if (!s.data.term) throw Fail{"gamma step without an instance term"};
    auto bound = bound_vars(q.body());
    for (const auto& v : free_vars(t))
      if (bound.count(v))
        throw Fail{"free variable " + v + " of " + print(t) + " is bound by a quantifier in B"};
  } else {
    if (!t.is_var()) throw Fail{"delta step needs a variable, found " + print(t)};
    if (free_vars(replace_at(concl, path, kHole)).count(t.name()))
      throw Fail{"variable " + t.name() + " must not occur in the context"};
    if (t.name() != q.name() && free_vars(q).count(t.name()))
      throw Fail{"variable " + t.name() + " occurs free in the quantified formula"};
  }
  Formula expected;
  try {
    expected = replace_at(concl, path, Substitution{{q.name(), t}}.apply(q.body()));
  } catch (const CaptureError& e) {
    throw Fail{e.what()};
  }
  if (!(expected == prem))
    throw Fail{"premise does not match: expected " + print(expected)};
}

void check_simp(const Derivation& d, std::size_t i) {
  const auto& s = d.steps[i];
  expect_premises(s, 1);
  const Formula& prem = premise(d, i, 0);
  const Formula& concl = s.formula;
  const auto& path = s.data.at;
  if (s.rule.tag == RuleTag::Simplification && !path.empty()) throw Fail{"rule applies at the root only"};
  if (s.rule.tag != RuleTag::Simplification && in_quantifier_scope(concl, path))
    throw Fail{"position " + path_to_string(path) + " lies in the scope of a quantifier"};
  const Formula& b = at(concl, path);
  auto pol = polarity_at(concl, path);
  Kind op = pol == Polarity::Positive ? Kind::Or : Kind::And;
  const Formula& both = at(prem, path);
  if (both.kind() != op)
    throw Fail{std::string("expected ") + (op == Kind::Or ? "a disjunction" : "a conjunction") +
               " at position " + path_to_string(path) + " of the premise"};
  if (s.rule.tag == RuleTag::GenGammaSimplification &&
      !(b.is_quantifier() && quantifier_class(b.kind(), pol) == UniformClass::Gamma))
    throw Fail{"simplified subformula is not a gamma-formula"};
  if (!(replace_at(prem, path, b) == concl)) throw Fail{"contexts differ"};
  if (!(rename_bound(both.lhs(), s.data.rename_left) == b))
    throw Fail{"left copy does not match after the recorded renaming"};
  if (!(rename_bound(both.rhs(), s.data.rename_right) == b))
    throw Fail{"right copy does not match after the recorded renaming"};
}

void check_one(const Derivation& d, std::size_t i) {
  const auto& s = d.steps[i];
  switch (s.rule.tag) {
    case RuleTag::SententialTautologyAxiom:
      expect_premises(s, 0);
      if (!is_quantifier_free(s.formula)) throw Fail{"axiom is not quantifier-free"};
      if (!sat::is_tautology(s.formula, sat::Engine::Dpll).tautology)
        throw Fail{"axiom is not a sentential tautology"};
      return;
    case RuleTag::ModusPonens: {
      expect_premises(s, 2);
      const Formula& a = premise(d, i, 0);
      const Formula& ab = premise(d, i, 1);
      if (!(ab == Formula::implies(a, s.formula))) throw Fail{"second premise is not A -> B"};
      return;
    }
    case RuleTag::Passage: {
      expect_premises(s, 1);
      const Formula& prem = premise(d, i, 0);
      try {
        auto expected = passage(prem, s.data.at, s.rule.passage_rule, s.rule.direction);
        if (!(expected == s.formula)) throw Fail{"Passage result differs: expected " + print(expected)};
      } catch (const PassageError& e) {
        throw Fail{e.what()};
      } catch (const PositionError& e) {
        throw Fail{e.what()};
      }
      return;
    }
    case RuleTag::MonotoneReplace: {
      expect_premises(s, 1);
      const Formula& prem = premise(d, i, 0);
      if (prem.kind() != Kind::Implies) throw Fail{"premise is not an implication"};
      if (s.formula.kind() != Kind::Implies) throw Fail{"conclusion is not an implication"};
      const auto& lhs = s.formula.lhs();
      const auto& rhs = s.formula.rhs();
      if (!(at(lhs, s.data.at) == prem.lhs())) throw Fail{"left side does not contain B at the hole"};
      if (!(replace_at(lhs, s.data.at, prem.rhs()) == rhs)) throw Fail{"right side is not A[C]"};
      if (polarity_at(lhs, s.data.at) != Polarity::Positive)
        throw Fail{"monotone replacement at a negative position"};
      return;
    }
    default: break;
  }
  if (is_quant_rule(s.rule.tag)) return check_quant(d, i);
  if (is_simp_rule(s.rule.tag)) return check_simp(d, i);
}

}  // namespace

std::optional<Violation> check_step(const Derivation& d, std::size_t i) {
  if (i >= d.steps.size()) return Violation{i, "no such step"};
  try {
    check_one(d, i);
  } catch (const Fail& f) {
    return Violation{i, f.message};
  }
  return std::nullopt;
}

std::optional<Violation> check(const Derivation& d) {
  if (d.steps.empty()) return Violation{0, "empty derivation"};
  for (std::size_t i = 0; i < d.steps.size(); ++i)
    if (auto v = check_step(d, i)) return v;
  return std::nullopt;
}

Derivation monotone_replace(const Derivation& d, const Formula& context, const Path& hole) {
  if (d.steps.empty() || d.conclusion().kind() != Kind::Implies)
    throw std::invalid_argument("monotone replacement needs a derivation of B -> C");
  if (polarity_at(context, hole) != Polarity::Positive)
    throw std::invalid_argument(
        "monotone replacement requires a positive position: with A[..] = !x.[..], B a tautology "
        "and C = P(x), the premise B -> C holds while A[B] -> A[C] fails in a two-element structure");
  if (auto v = check(d))
    throw std::invalid_argument("premise derivation fails at step " + std::to_string(v->step) + ": " + v->message);
  Derivation out = d;
  Step s;
  s.formula = Formula::implies(replace_at(context, hole, d.conclusion().lhs()),
                               replace_at(context, hole, d.conclusion().rhs()));
  s.rule.tag = RuleTag::MonotoneReplace;
  s.premises = {d.steps.size() - 1};
  s.data.at = hole;
  out.steps.push_back(std::move(s));
  return out;
}

// ---- text form --------------------------------------------------------------

namespace {

std::string renaming_text(const std::map<std::string, std::string>& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!first) out += ",";
    first = false;
    out += k + "->" + v;
  }
  return out + "}";
}

std::map<std::string, std::string> parse_renaming(const std::string& s) {
  std::map<std::string, std::string> out;
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw std::invalid_argument("malformed renaming '" + s + "'");
  auto body = s.substr(1, s.size() - 2);
  // Box names contain commas, so only top-level commas separate entries.
  std::vector<std::string> items(1);
  int depth = 0;
  for (char c : body) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0)
      items.emplace_back();
    else
      items.back() += c;
  }
  for (const auto& item : items) {
    if (item.empty() && items.size() == 1) break;
    auto arrow = item.rfind("->");
    if (arrow == std::string::npos) throw std::invalid_argument("malformed renaming '" + s + "'");
    out[item.substr(0, arrow)] = item.substr(arrow + 2);
  }
  return out;
}

std::string data_text(const Step& s) {
  if (is_quant_rule(s.rule.tag)) {
    std::string out = s.data.var;
    if (s.data.term) out += ":=" + print(*s.data.term);
    return out;
  }
  if (is_simp_rule(s.rule.tag) && (!s.data.rename_left.empty() || !s.data.rename_right.empty()))
    return "left" + renaming_text(s.data.rename_left) + ";right" + renaming_text(s.data.rename_right);
  return "-";
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string serialize(const Derivation& d) {
  std::ostringstream os;
  if (!d.free_vars.empty()) {
    os << "vars:";
    for (const auto& v : d.free_vars) os << ' ' << v;
    os << '\n';
  }
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    os << i << " | " << to_string(s.rule) << " | premises=";
    for (std::size_t k = 0; k < s.premises.size(); ++k) os << (k ? "," : "") << s.premises[k];
    os << " | at=" << path_to_string(s.data.at) << " | data=" << data_text(s) << " | "
       << print(s.formula) << '\n';
  }
  return os.str();
}

Derivation parse_derivation(const std::string& text) {
  Derivation d;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  ParseOptions opts;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("derivation line " + std::to_string(lineno) + ": " + why);
    };
    if (t.rfind("vars:", 0) == 0) {
      std::istringstream vs(t.substr(5));
      std::string v;
      while (vs >> v) {
        d.free_vars.insert(v);
        opts.free_vars.insert(v);
      }
      continue;
    }
    std::vector<std::string> fields;
    std::size_t p = 0;
    for (int k = 0; k < 5; ++k) {
      auto bar = t.find(" | ", p);
      if (bar == std::string::npos) fail("expected six fields separated by ' | '");
      fields.push_back(trim(t.substr(p, bar - p)));
      p = bar + 3;
    }
    fields.push_back(trim(t.substr(p)));
    if (std::stoul(fields[0]) != d.steps.size()) fail("step index out of sequence");
    Step s;
    s.rule = parse_rule(fields[1]);
    auto prem = fields[2];
    if (prem.rfind("premises=", 0) != 0) fail("expected premises=");
    prem = prem.substr(9);
    std::size_t q = 0;
    while (q < prem.size()) {
      auto comma = prem.find(',', q);
      s.premises.push_back(std::stoul(prem.substr(q, comma == std::string::npos ? std::string::npos : comma - q)));
      if (comma == std::string::npos) break;
      q = comma + 1;
    }
    if (fields[3].rfind("at=", 0) != 0) fail("expected at=");
    s.data.at = path_from_string(fields[3].substr(3));
    if (fields[4].rfind("data=", 0) != 0) fail("expected data=");
    auto data = fields[4].substr(5);
    if (is_quant_rule(s.rule.tag)) {
      auto assign = data.find(":=");
      s.data.var = data.substr(0, assign);
      if (assign != std::string::npos) s.data.term = parse_term(data.substr(assign + 2), opts);
    } else if (is_simp_rule(s.rule.tag) && data != "-") {
      auto semi = data.find(";right");
      if (data.rfind("left", 0) != 0 || semi == std::string::npos) fail("malformed renaming data");
      s.data.rename_left = parse_renaming(data.substr(4, semi - 4));
      s.data.rename_right = parse_renaming(data.substr(semi + 6));
    }
    s.formula = parse_formula(fields[5], opts);
    d.steps.push_back(std::move(s));
  }
  return d;
}

// ---- first-step membership --------------------------------------------------

namespace {

bool match_term(const Term& pat, const Term& t, const std::set<std::string>& flex, Substitution& s) {
  if (pat.is_var() && flex.count(pat.name())) {
    if (const Term* b = s.find(pat.name())) return *b == t;
    s.bind(pat.name(), t);
    return true;
  }
  if (pat.is_var() || t.is_var()) return pat == t;
  if (pat.name() != t.name() || pat.arity() != t.arity()) return false;
  for (std::size_t i = 0; i < pat.arity(); ++i)
    if (!match_term(pat.args()[i], t.args()[i], flex, s)) return false;
  return true;
}

bool match_literal(const Literal& pat, const Literal& lit, const std::set<std::string>& flex,
                   Substitution& s) {
  if (pat.positive != lit.positive || pat.atom.name() != lit.atom.name() ||
      pat.atom.args().size() != lit.atom.args().size())
    return false;
  for (std::size_t i = 0; i < pat.atom.args().size(); ++i)
    if (!match_term(pat.atom.args()[i], lit.atom.args()[i], flex, s)) return false;
  return true;
}

bool match_conjunct(const Conjunct& pat, const std::vector<Literal>& target,
                    const std::set<std::string>& flex, std::size_t order) {
  std::function<bool(std::size_t, Substitution&, std::vector<bool>&)> go =
      [&](std::size_t i, Substitution& s, std::vector<bool>& hit) -> bool {
    if (i == pat.size()) {
      if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return false;
      for (const auto& [y, t] : s.bindings())
        if (t.height() >= order) return false;
      return true;
    }
    for (std::size_t j = 0; j < target.size(); ++j) {
      Substitution trial = s;
      if (!match_literal(pat[i], target[j], flex, trial)) continue;
      bool before = hit[j];
      hit[j] = true;
      if (go(i + 1, trial, hit)) return true;
      hit[j] = before;
    }
    return false;
  };
  Substitution s;
  std::vector<bool> hit(target.size(), false);
  return go(0, s, hit);
}

}  // namespace

MembershipReport check_first_step_membership(const Formula& f, const Derivation& d, std::size_t n) {
  MembershipReport r;
  auto sk = skolemize_outer_form(rectify(f));
  auto inst = literal_dnf(matrix(sk.formula));
  std::set<std::string> flex(sk.gamma_vars.begin(), sk.gamma_vars.end());
  auto start = unbox(d.steps.front().formula);
  auto cs = sat::to_dnf(start, {false, false});
  std::map<std::string, Formula> atoms;
  for (const auto& p : all_paths(start)) {
    const auto& g = subformula_at(start, p);
    if (g.is_atom()) atoms.emplace(sat::atom_key(g), g);
  }
  r.ok = true;
  for (const auto& c : cs.clauses) {
    std::vector<Literal> target;
    for (sat::Lit l : c) target.push_back({l > 0, atoms.at(cs.atoms[std::abs(l) - 1])});
    ++r.conjuncts;
    bool found = std::any_of(inst.begin(), inst.end(),
                             [&](const Conjunct& k) { return match_conjunct(k, target, flex, n); });
    if (!found) {
      r.ok = false;
      std::string text;
      for (sat::Lit l : c) text += (text.empty() ? "" : " & ") + sat::literal_text(cs, l);
      r.unmatched.push_back(text);
    }
  }
  return r;
}

}  // namespace herbrand
