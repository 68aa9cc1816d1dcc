#include "herbrand/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace herbrand {

std::uint64_t budget_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("HERBRAND_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

}  // namespace herbrand

namespace herbrand::sat {

std::string atom_key(const Formula& atom) { return print(atom); }

std::vector<std::string> abstract(const Formula& f) {
  std::set<std::string> keys;
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->is_quantifier())
      throw std::invalid_argument("propositional abstraction of a quantified formula: " + print(f));
    if (g->is_atom())
      keys.insert(atom_key(*g));
    else
      for (const auto& c : g->children()) stack.push_back(&c);
  }
  return {keys.begin(), keys.end()};
}

int ClauseSet::intern(const std::string& key) {
  auto [it, fresh] = index_.emplace(key, static_cast<int>(atoms.size()));
  if (fresh) atoms.push_back(key);
  return it->second;
}

namespace {

bool lit_less(Lit a, Lit b) {
  int aa = std::abs(a), bb = std::abs(b);
  return aa != bb ? aa < bb : a < b;
}

void normalize_clause(std::vector<Lit>& c) {
  std::sort(c.begin(), c.end(), lit_less);
  c.erase(std::unique(c.begin(), c.end()), c.end());
}

bool has_complementary(const std::vector<Lit>& c) {
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] == -c[i - 1]) return true;
  return false;
}

bool subset_of(const std::vector<Lit>& a, const std::vector<Lit>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end(), lit_less);
}

using Clauses = std::vector<std::vector<Lit>>;

void dedupe(Clauses& cs) {
  std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), lit_less);
  });
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

void remove_subsumed(Clauses& cs) {
  std::stable_sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  Clauses kept;
  for (auto& c : cs) {
    bool subsumed = false;
    for (const auto& k : kept)
      if (k.size() <= c.size() && subset_of(k, c)) {
        subsumed = true;
        break;
      }
    if (!subsumed) kept.push_back(std::move(c));
  }
  cs = std::move(kept);
}

struct Builder {
  ClauseSet& cs;
  PruneOptions opts;
  std::uint64_t budget;

  // DNF when `dnf`, otherwise CNF; `pos` is the current polarity.
  Clauses build(const Formula& f, bool pos, bool dnf) {
    switch (f.kind()) {
      case Kind::Atom: return {{cs.lit(atom_key(f), pos)}};
      case Kind::Not: return build(f.body(), !pos, dnf);
      case Kind::Forall:
      case Kind::Exists:
        throw std::invalid_argument("normal form of a quantified formula");
      default: break;
    }
    bool disjunctive = (f.kind() == Kind::Or || f.kind() == Kind::Implies) == pos;
    bool lhs_pos = f.kind() == Kind::Implies ? !pos : pos;
    auto a = build(f.lhs(), lhs_pos, dnf);
    auto b = build(f.rhs(), pos, dnf);
    if (disjunctive == dnf) {
      a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
      if (a.size() > budget) throw BudgetError("normal form exceeds budget");
      return a;
    }
    Clauses out;
    for (const auto& x : a)
      for (const auto& y : b) {
        std::vector<Lit> m = x;
        m.insert(m.end(), y.begin(), y.end());
        normalize_clause(m);
        if (opts.complementary && has_complementary(m)) continue;
        out.push_back(std::move(m));
        if (out.size() > budget) throw BudgetError("normal form exceeds budget");
      }
    dedupe(out);
    return out;
  }
};

ClauseSet normal_form(const Formula& f, bool dnf, const PruneOptions& opts, std::uint64_t budget) {
  ClauseSet cs;
  cs.form = dnf ? Form::Dnf : Form::Cnf;
  Builder b{cs, opts, budget};
  cs.clauses = b.build(f, true, dnf);
  prune(cs, opts);
  return cs;
}

}  // namespace

void prune(ClauseSet& cs, const PruneOptions& opts) {
  for (auto& c : cs.clauses) normalize_clause(c);
  if (opts.complementary)
    std::erase_if(cs.clauses, [](const auto& c) { return has_complementary(c); });
  dedupe(cs.clauses);
  if (opts.subsumption) remove_subsumed(cs.clauses);
}

ClauseSet to_dnf(const Formula& f, const PruneOptions& opts, std::uint64_t budget) {
  return normal_form(f, true, opts, budget);
}

ClauseSet to_cnf(const Formula& f, const PruneOptions& opts, std::uint64_t budget) {
  return normal_form(f, false, opts, budget);
}

std::string literal_text(const ClauseSet& cs, Lit l) {
  const auto& a = cs.atoms.at(static_cast<std::size_t>(std::abs(l) - 1));
  return l > 0 ? a : "~" + a;
}

std::vector<std::vector<std::string>> keyed(const ClauseSet& cs) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : cs.clauses) {
    std::vector<std::string> k;
    for (Lit l : c) k.push_back(literal_text(cs, l));
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClauseSet negate(const ClauseSet& cs) {
  ClauseSet out = cs;
  out.form = cs.form == Form::Dnf ? Form::Cnf : Form::Dnf;
  for (auto& c : out.clauses) {
    for (auto& l : c) l = -l;
    normalize_clause(c);
  }
  return out;
}

bool gilmore_check(const ClauseSet& dnf, std::uint64_t budget, Assignment* falsifying) {
  std::vector<std::vector<Lit>> conjuncts = dnf.clauses;
  for (auto& c : conjuncts) normalize_clause(c);
  std::stable_sort(conjuncts.begin(), conjuncts.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  // Partial clauses of the multiplied-out CNF; complementary ones are dropped as they appear.
  Clauses partial{{}};
  for (const auto& k : conjuncts) {
    Clauses next;
    for (const auto& p : partial) {
      bool hit = std::any_of(k.begin(), k.end(), [&](Lit l) {
        return std::binary_search(p.begin(), p.end(), l, lit_less);
      });
      if (hit) {
        next.push_back(p);
        continue;
      }
      for (Lit l : k) {
        if (std::binary_search(p.begin(), p.end(), -l, lit_less)) continue;
        auto q = p;
        q.insert(std::upper_bound(q.begin(), q.end(), l, lit_less), l);
        next.push_back(std::move(q));
        if (next.size() > budget) throw BudgetError("multiplication exceeds budget");
      }
    }
    dedupe(next);
    remove_subsumed(next);
    partial = std::move(next);
    if (partial.empty()) return true;
  }
  if (partial.empty()) return true;
  if (falsifying) {
    falsifying->clear();
    for (Lit l : partial.front()) (*falsifying)[dnf.atoms[std::abs(l) - 1]] = l < 0;
  }
  return false;
}

namespace {

class Dpll {
 public:
  Dpll(const ClauseSet& cs, const std::atomic<bool>* stop) : cs_(cs), stop_(stop) {
    n_ = static_cast<int>(cs.atoms.size());
    val_.assign(n_ + 1, 0);
    occ_.assign(2 * (n_ + 1), {});
    for (std::size_t i = 0; i < cs.clauses.size(); ++i) {
      auto c = cs.clauses[i];
      normalize_clause(c);
      if (c.empty()) empty_clause_ = true;
      for (Lit l : c) occ_[idx(l)].push_back(static_cast<int>(i));
      clauses_.push_back(std::move(c));
    }
    sat_.assign(clauses_.size(), 0);
    false_.assign(clauses_.size(), 0);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 1);
    std::sort(order_.begin(), order_.end(),
              [&](int a, int b) { return cs.atoms[a - 1] < cs.atoms[b - 1]; });
  }

  DpllResult run() {
    DpllResult r;
    if (empty_clause_) return r;
    for (std::size_t i = 0; i < clauses_.size(); ++i)
      if (clauses_[i].size() == 1) pending_.push_back(clauses_[i][0]);
    r.satisfiable = solve();
    if (r.satisfiable)
      for (int v = 1; v <= n_; ++v)
        if (val_[v] != 0) r.model[cs_.atoms[v - 1]] = val_[v] > 0;
    return r;
  }

 private:
  std::size_t idx(Lit l) const { return 2 * static_cast<std::size_t>(std::abs(l)) + (l < 0); }
  int value(Lit l) const { return l > 0 ? val_[l] : -val_[-l]; }

  // Returns false on conflict; counters are always fully updated.
  bool assign(Lit l) {
    val_[std::abs(l)] = l > 0 ? 1 : -1;
    trail_.push_back(l);
    for (int c : occ_[idx(l)]) ++sat_[c];
    bool ok = true;
    for (int c : occ_[idx(-l)]) {
      ++false_[c];
      if (sat_[c] > 0) continue;
      auto size = static_cast<int>(clauses_[c].size());
      if (false_[c] == size) {
        ok = false;
      } else if (false_[c] == size - 1) {
        for (Lit u : clauses_[c])
          if (value(u) == 0) {
            pending_.push_back(u);
            break;
          }
      }
    }
    return ok;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      Lit l = trail_.back();
      trail_.pop_back();
      for (int c : occ_[idx(l)]) --sat_[c];
      for (int c : occ_[idx(-l)]) --false_[c];
      val_[std::abs(l)] = 0;
    }
  }

  bool propagate() {
    while (!pending_.empty()) {
      Lit l = pending_.back();
      pending_.pop_back();
      int v = value(l);
      if (v > 0) continue;
      if (v < 0 || !assign(l)) {
        pending_.clear();
        return false;
      }
    }
    return true;
  }

  void assign_pure() {
    for (int v : order_) {
      if (val_[v] != 0) continue;
      bool pos = false, neg = false;
      for (int c : occ_[idx(v)])
        if (sat_[c] == 0) {
          pos = true;
          break;
        }
      for (int c : occ_[idx(-v)])
        if (sat_[c] == 0) {
          neg = true;
          break;
        }
      if (pos != neg) assign(pos ? v : -v);
    }
  }

  bool all_satisfied() const {
    for (std::size_t c = 0; c < clauses_.size(); ++c)
      if (sat_[c] == 0) return false;
    return true;
  }

  bool solve() {
    if (++nodes_ % 256 == 0) check_stop(stop_);
    if (!propagate()) return false;
    assign_pure();
    if (all_satisfied()) return true;
    int pick = 0;
    for (int v : order_)
      if (val_[v] == 0) {
        pick = v;
        break;
      }
    if (pick == 0) return false;
    auto mark = trail_.size();
    for (Lit l : {pick, -pick}) {
      pending_.clear();
      pending_.push_back(l);
      if (solve()) return true;
      undo_to(mark);
    }
    return false;
  }

  const ClauseSet& cs_;
  const std::atomic<bool>* stop_;
  int n_ = 0;
  bool empty_clause_ = false;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> occ_;
  std::vector<int> val_, sat_, false_, order_;
  std::vector<Lit> trail_, pending_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

DpllResult dpll(const ClauseSet& cnf, const std::atomic<bool>* stop) { return Dpll(cnf, stop).run(); }

TautologyResult is_tautology_dnf(const ClauseSet& dnf, Engine engine, std::uint64_t budget,
                                 const std::atomic<bool>* stop) {
  TautologyResult r;
  if (engine == Engine::Multiplication) {
    Assignment a;
    r.tautology = gilmore_check(dnf, budget, &a);
    if (!r.tautology) r.falsifying = std::move(a);
    return r;
  }
  auto d = dpll(negate(dnf), stop);
  r.tautology = !d.satisfiable;
  if (d.satisfiable) r.falsifying = std::move(d.model);
  return r;
}

TautologyResult is_tautology(const Formula& f, Engine engine, std::uint64_t budget) {
  abstract(f);
  auto dnf = to_dnf(f, {true, false}, budget);
  return is_tautology_dnf(dnf, engine, budget);
}

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto it = a.find(atom_key(f));
      return it != a.end() && it->second;
    }
    case Kind::Not: return !evaluate(f.body(), a);
    case Kind::And: return evaluate(f.lhs(), a) && evaluate(f.rhs(), a);
    case Kind::Or: return evaluate(f.lhs(), a) || evaluate(f.rhs(), a);
    case Kind::Implies: return !evaluate(f.lhs(), a) || evaluate(f.rhs(), a);
    default: throw std::invalid_argument("evaluate: quantified formula");
  }
}

std::string to_dimacs(const ClauseSet& cs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cs.atoms.size(); ++i) os << "c " << i + 1 << ' ' << cs.atoms[i] << '\n';
  os << "p " << (cs.form == Form::Cnf ? "cnf" : "dnf") << ' ' << cs.atoms.size() << ' '
     << cs.clauses.size() << '\n';
  for (const auto& c : cs.clauses) {
    for (Lit l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace herbrand::sat
