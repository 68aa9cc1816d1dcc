#include <algorithm>
#include <map>
#include <unordered_set>

#include "herbrand/engine.hpp"
#include "herbrand/transform.hpp"

namespace herbrand {

std::string to_string(ProofStatus s) { return s == ProofStatus::ProofFound ? "proof-found" : "gave-up"; }

namespace {

std::string literal_text(const Literal& l) {
  return l.positive ? print(l.atom) : print(Formula::neg(l.atom));
}

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) term_vars(a, out);
}

void ordered_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) ordered_vars(a, out);
}

}  // namespace

std::string print(const Clause& c) {
  if (c.lits.empty()) return "[]";
  std::string out;
  for (std::size_t i = 0; i < c.lits.size(); ++i) {
    if (i) out += " | ";
    out += literal_text(c.lits[i]);
  }
  return out;
}

Clause normalize(Clause c) {
  std::sort(c.lits.begin(), c.lits.end());
  c.lits.erase(std::unique(c.lits.begin(), c.lits.end()), c.lits.end());
  return c;
}

std::set<std::string> vars_of(const Clause& c) {
  std::set<std::string> out;
  for (const auto& l : c.lits)
    for (const auto& a : l.atom.args()) term_vars(a, out);
  return out;
}

Clause apply(const Substitution& s, const Clause& c) {
  Clause out;
  for (const auto& l : c.lits) out.lits.push_back({l.positive, s.apply(l.atom)});
  return normalize(std::move(out));
}

Substitution renaming_apart(const Clause& c, const std::string& tag) {
  Substitution s;
  for (const auto& v : vars_of(c)) s.bind(v, Term::var(v + "~" + tag));
  return s;
}

std::vector<Resolvent> resolve(const Clause& a, const Clause& b) {
  std::vector<Resolvent> out;
  for (std::size_t i = 0; i < a.lits.size(); ++i)
    for (std::size_t j = 0; j < b.lits.size(); ++j) {
      if (a.lits[i].positive == b.lits[j].positive) continue;
      auto u = unify_atoms(a.lits[i].atom, b.lits[j].atom);
      if (!u) continue;
      Clause c;
      for (std::size_t k = 0; k < a.lits.size(); ++k)
        if (k != i) c.lits.push_back({a.lits[k].positive, u.mgu->apply(a.lits[k].atom)});
      for (std::size_t k = 0; k < b.lits.size(); ++k)
        if (k != j) c.lits.push_back({b.lits[k].positive, u.mgu->apply(b.lits[k].atom)});
      out.push_back({normalize(std::move(c)), *u.mgu, i, j});
    }
  return out;
}

std::vector<Resolvent> factors(const Clause& c) {
  std::vector<Resolvent> out;
  for (std::size_t i = 0; i < c.lits.size(); ++i)
    for (std::size_t j = i + 1; j < c.lits.size(); ++j) {
      if (c.lits[i].positive != c.lits[j].positive) continue;
      auto u = unify_atoms(c.lits[i].atom, c.lits[j].atom);
      if (!u || u.mgu->empty()) continue;
      out.push_back({apply(*u.mgu, c), *u.mgu, i, j});
    }
  return out;
}

std::vector<Clause> refutation_clauses(const Formula& f) {
  auto sk = skolemize_outer_form(f);
  std::vector<Clause> out;
  auto dnf = literal_dnf(matrix(sk.formula));
  for (std::size_t i = 0; i < dnf.size(); ++i) {
    Clause c;
    for (const auto& l : dnf[i]) c.lits.push_back({!l.positive, l.atom});
    c = normalize(std::move(c));
    out.push_back(apply(renaming_apart(c, std::to_string(i)), c));
  }
  return out;
}

namespace {

// Instance of an input clause, expressed in the variables of a derived clause.
struct Origin {
  std::size_t input;
  Substitution binding;  // Y variable -> term
};

struct Entry {
  std::size_t id;
  Clause clause;
  std::vector<Origin> origins;
  std::string parents;
};

std::string canonical_key(const Clause& c) {
  std::vector<std::string> order;
  for (const auto& l : c.lits)
    for (const auto& a : l.atom.args()) ordered_vars(a, order);
  Substitution s;
  for (std::size_t i = 0; i < order.size(); ++i) s.bind(order[i], Term::var("V" + std::to_string(i)));
  return print(apply(s, c));
}

std::string dual_text(const Clause& c) {
  if (c.lits.empty()) return "(empty disjunction)";
  std::string out;
  for (std::size_t i = 0; i < c.lits.size(); ++i) {
    if (i) out += " & ";
    out += literal_text({!c.lits[i].positive, c.lits[i].atom});
  }
  return out;
}

std::vector<Origin> transport(const std::vector<Origin>& os, const Substitution& s) {
  std::vector<Origin> out;
  for (const auto& o : os) {
    Origin n{o.input, {}};
    for (const auto& [y, t] : o.binding.bindings()) n.binding.bind(y, s.apply(t));
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<Substitution> extract_witness(const std::vector<Origin>& origins,
                                          const std::vector<std::string>& ys) {
  // Partial instances agreeing on shared variables describe one instance of E.
  std::vector<Substitution> groups;
  for (const auto& o : origins) {
    std::set<std::string> residual;
    for (const auto& [y, t] : o.binding.bindings()) term_vars(t, residual);
    Substitution fill;
    for (const auto& v : residual) fill.bind(v, Term::lexicon());
    Substitution part;
    for (const auto& [y, t] : o.binding.bindings()) part.bind(y, fill.apply(t));
    auto fits = [&](const Substitution& g) {
      for (const auto& [y, t] : part.bindings())
        if (const Term* u = g.find(y); u && !(*u == t)) return false;
      return true;
    };
    auto it = std::find_if(groups.begin(), groups.end(), fits);
    if (it == groups.end()) {
      groups.push_back(part);
    } else {
      for (const auto& [y, t] : part.bindings()) it->bind(y, t);
    }
  }
  std::vector<Substitution> out;
  for (const auto& g : groups) {
    Substitution s;
    for (const auto& y : ys) {
      const Term* t = g.find(y);
      s.bind(y, t ? *t : Term::lexicon());
    }
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  if (out.empty()) {
    Substitution s;
    for (const auto& y : ys) s.bind(y, Term::lexicon());
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t witness_order(const std::vector<Substitution>& w) {
  std::size_t h = 0;
  for (const auto& s : w)
    for (const auto& [y, t] : s.bindings()) h = std::max(h, t.height());
  return h + 1;
}

}  // namespace

ProverResult prove_resolution(const Formula& f, const ProverOptions& opts) {
  ProverResult r;
  r.method = "resolution";
  auto goal = rectify(f);
  auto sk = skolemize_outer_form(goal);
  auto inputs = refutation_clauses(goal);
  auto say = [&](const std::string& s) {
    if (opts.trace) opts.trace(s);
  };
  auto show = [&](const Clause& c) { return opts.dual ? dual_text(c) : print(c); };

  std::vector<Entry> passive, active;
  std::unordered_set<std::string> seen;
  std::size_t next_id = 0, fresh = 0;

  auto finish = [&](const std::vector<Origin>& origins) {
    r.status = ProofStatus::ProofFound;
    r.witness = extract_witness(origins, sk.gamma_vars);
    if (!check_instances(goal, r.witness))
      throw std::logic_error("resolution witness is not a tautologous instance set");
    // drop instances the tautology does not need, first to last
    for (std::size_t i = 0; i < r.witness.size() && r.witness.size() > 1;) {
      auto fewer = r.witness;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      if (check_instances(goal, fewer))
        r.witness = std::move(fewer);
      else
        ++i;
    }
    r.order = witness_order(r.witness);
    return r;
  };

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Origin o{i, {}};
    for (const auto& y : sk.gamma_vars) {
      auto v = y + "~" + std::to_string(i);
      if (vars_of(inputs[i]).count(v)) o.binding.bind(y, Term::var(v));
    }
    Entry e{next_id++, inputs[i], {o}, "input"};
    say("input #" + std::to_string(e.id) + ": " + show(e.clause));
    if (seen.insert(canonical_key(e.clause)).second) passive.push_back(std::move(e));
  }

  // Ground input clauses need no unification.
  sat::ClauseSet ground;
  ground.form = sat::Form::Cnf;
  std::vector<Origin> ground_origins;
  for (const auto& e : passive) {
    if (!vars_of(e.clause).empty()) continue;
    std::vector<sat::Lit> c;
    for (const auto& l : e.clause.lits) c.push_back(ground.lit(sat::atom_key(l.atom), l.positive));
    ground.clauses.push_back(std::move(c));
    ground_origins.insert(ground_origins.end(), e.origins.begin(), e.origins.end());
  }
  if (!ground.clauses.empty() && !sat::dpll(ground, opts.search.stop).satisfiable) {
    say("ground input clauses are unsatisfiable");
    return finish(ground_origins);
  }
  for (const auto& e : passive)
    if (e.clause.empty()) return finish(e.origins);

  std::uint64_t picks = 0;
  while (!passive.empty()) {
    check_stop(opts.search.stop);
    std::size_t pick = 0;
    if (++picks % 5 != 0) {
      for (std::size_t i = 1; i < passive.size(); ++i)
        if (passive[i].clause.lits.size() < passive[pick].clause.lits.size()) pick = i;
    }
    Entry given = std::move(passive[pick]);
    passive.erase(passive.begin() + static_cast<std::ptrdiff_t>(pick));
    say("given #" + std::to_string(given.id) + ": " + show(given.clause));

    std::vector<Entry> fresh_entries;
    auto add = [&](Clause c, std::vector<Origin> origins, std::string parents) -> const Entry* {
      if (!seen.insert(canonical_key(c)).second) return nullptr;
      Substitution rn;
      for (const auto& v : vars_of(c)) rn.bind(v, Term::var("_" + std::to_string(fresh++)));
      Entry e{next_id++, apply(rn, c), transport(origins, rn), std::move(parents)};
      fresh_entries.push_back(std::move(e));
      return &fresh_entries.back();
    };
    for (auto& fct : factors(given.clause)) {
      ++r.steps;
      add(fct.clause, transport(given.origins, fct.mgu), "factor of #" + std::to_string(given.id));
    }
    active.push_back(given);
    for (const auto& a : active) {
      auto rn = renaming_apart(given.clause, "g" + std::to_string(fresh++));
      auto g = apply(rn, given.clause);
      auto g_origins = transport(given.origins, rn);
      for (auto& res : resolve(g, a.clause)) {
        ++r.steps;
        auto origins = transport(g_origins, res.mgu);
        auto more = transport(a.origins, res.mgu);
        origins.insert(origins.end(), more.begin(), more.end());
        if (res.clause.empty()) {
          say("resolvent of #" + std::to_string(given.id) + ", #" + std::to_string(a.id) + ": []");
          return finish(origins);
        }
        add(res.clause, std::move(origins),
            "#" + std::to_string(given.id) + ", #" + std::to_string(a.id));
      }
      if (r.steps > opts.step_budget) break;
    }
    for (auto& e : fresh_entries) {
      say("derived #" + std::to_string(e.id) + " from " + e.parents + ": " + show(e.clause));
      passive.push_back(std::move(e));
    }
    if (r.steps > opts.step_budget) {
      r.note = "step budget exhausted";
      return r;
    }
  }
  r.note = "saturated without refutation";
  return r;
}

namespace {

constexpr std::size_t kInstanceSetBound = 4;

ProverResult instance_loop(const Formula& f, const ProverOptions& opts, sat::Engine engine,
                           const char* name) {
  ProverResult r;
  r.method = name;
  auto search = opts.search;
  search.engine = engine;
  for (std::size_t n = 1; n <= opts.n_max; ++n) {
    check_stop(search.stop);
    PropertyC pc;
    try {
      pc = property_c(f, n, search);
    } catch (const BudgetError& e) {
      // Too many instances to expand; look for a small tautologous subset instead.
      if (opts.trace) opts.trace("order " + std::to_string(n) + ": " + e.what() + ", searching instance sets");
      std::optional<Complexity> c;
      auto bounded = search;
      bounded.budget = std::max<std::uint64_t>(1, search.budget / 20);
      try {
        c = herbrand_complexity(f, n, kInstanceSetBound, bounded);
      } catch (const BudgetError& inner) {
        r.note = std::string("order ") + std::to_string(n) + ": " + inner.what();
        if (opts.trace) opts.trace(r.note);
        continue;
      }
      if (!c) {
        r.note = "order " + std::to_string(n) + ": no tautologous set of at most " +
                 std::to_string(kInstanceSetBound) + " instances";
        continue;
      }
      r.status = ProofStatus::ProofFound;
      r.order = n;
      r.steps += c->k;
      r.witness = c->substitutions;
      r.note = "instance-set search";
      if (opts.trace) opts.trace("order " + std::to_string(n) + ": " + std::to_string(c->k) + " instances suffice");
      return r;
    }
    r.steps += pc.instances;
    if (opts.trace)
      opts.trace("order " + std::to_string(n) + ": " + std::to_string(pc.instances) +
                 " instances, Property C " + (pc.holds ? "holds" : "fails"));
    if (pc.holds) {
      r.status = ProofStatus::ProofFound;
      r.order = n;
      if (pc.instances <= 10'000) {
        auto hd = herbrand_disjunction(f, n, search.lexicon);
        hd.for_each_substitution([&](const Substitution& s) {
          r.witness.push_back(s);
          return true;
        });
      }
      return r;
    }
  }
  if (r.note.empty()) r.note = "no Property C up to order " + std::to_string(opts.n_max);
  return r;
}

}  // namespace

ProverResult prove_gilmore(const Formula& f, const ProverOptions& opts) {
  return instance_loop(f, opts, sat::Engine::Multiplication, "gilmore");
}

ProverResult prove_dp(const Formula& f, const ProverOptions& opts) {
  return instance_loop(f, opts, sat::Engine::Dpll, "dp");
}

}  // namespace herbrand
