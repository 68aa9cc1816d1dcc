#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>

#include "herbrand/expansion.hpp"
#include "herbrand/proofcalc.hpp"

namespace herbrand {

namespace {

// Raised form of the goal: every gamma-quantifier carries one copy per value
// its bound variable takes among the witness instances along the branch.
struct Node;

struct Copy {
  Term value;
  Term boxed;
  bool removed = false;
  std::unique_ptr<Node> body;
};

struct Node {
  Formula orig;
  Substitution sub;
  Polarity pol = Polarity::Positive;
  std::vector<std::unique_ptr<Node>> kids;
  bool gamma = false;
  bool removed = false;
  std::string box;
  std::vector<Copy> copies;
  std::size_t shown = 1;
};

class Raiser {
 public:
  Raiser(const SkolemForm& sk) : sk_(sk) {}

  std::unique_ptr<Node> raise(const Formula& f, const Substitution& sub, const Substitution& vals,
                              Polarity pol, const std::vector<const Substitution*>& inst) {
    auto n = std::make_unique<Node>();
    n->orig = f;
    n->sub = sub;
    n->pol = pol;
    switch (f.kind()) {
      case Kind::Atom: break;
      case Kind::Not: n->kids.push_back(raise(f.body(), sub, vals, flip(pol), inst)); break;
      case Kind::Implies:
        n->kids.push_back(raise(f.lhs(), sub, vals, flip(pol), inst));
        n->kids.push_back(raise(f.rhs(), sub, vals, pol, inst));
        break;
      case Kind::And:
      case Kind::Or:
        n->kids.push_back(raise(f.lhs(), sub, vals, pol, inst));
        n->kids.push_back(raise(f.rhs(), sub, vals, pol, inst));
        break;
      case Kind::Forall:
      case Kind::Exists: {
        const auto& x = f.name();
        if (quantifier_class(f.kind(), pol) == UniformClass::Delta) {
          n->box = box_name(print(vals.apply(sk_.delta_terms.at(x))));
          boxes.insert(n->box);
          Substitution inner = sub;
          inner.bind(x, Term::var(n->box));
          n->kids.push_back(raise(f.body(), inner, vals, pol, inst));
          break;
        }
        n->gamma = true;
        std::vector<Term> seen;
        for (const auto* s : inst) {
          const Term* v = s->find(x);
          if (!v) throw std::invalid_argument("witness does not bind " + x);
          if (std::find(seen.begin(), seen.end(), *v) == seen.end()) seen.push_back(*v);
        }
        for (const auto& v : seen) {
          std::vector<const Substitution*> part;
          for (const auto* s : inst)
            if (*s->find(x) == v) part.push_back(s);
          Copy c;
          c.value = v;
          c.boxed = herbrand::boxed(v);
          Substitution inner = sub, inner_vals = vals;
          inner.bind(x, c.boxed);
          inner_vals.bind(x, v);
          c.body = raise(f.body(), inner, inner_vals, pol, part);
          n->copies.push_back(std::move(c));
        }
        break;
      }
    }
    return n;
  }

  std::set<std::string> boxes;

 private:
  const SkolemForm& sk_;
};

Formula render(const Node& n) {
  switch (n.orig.kind()) {
    case Kind::Atom: return n.sub.apply(n.orig);
    case Kind::Not: return Formula::neg(render(*n.kids[0]));
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: return Formula::binary(n.orig.kind(), render(*n.kids[0]), render(*n.kids[1]));
    default: break;
  }
  if (!n.gamma) return n.removed ? render(*n.kids[0]) : n.sub.apply(n.orig);
  Kind op = n.pol == Polarity::Positive ? Kind::Or : Kind::And;
  auto element = [&](std::size_t j) {
    return n.copies[j].removed ? render(*n.copies[j].body) : n.sub.apply(n.orig);
  };
  Formula out = element(n.shown - 1);
  for (std::size_t j = n.shown - 1; j-- > 0;) out = Formula::binary(op, element(j), out);
  return out;
}

struct Item {
  enum { Delta, Split, Gamma } what;
  Node* node;
  std::size_t copy = 0;
  Path path;
};

// Quantifier occurrences outside every quantifier scope, in preorder.
void collect(Node& n, Path path, std::vector<Item>& out) {
  switch (n.orig.kind()) {
    case Kind::Atom: return;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect(*n.kids[i], path, out);
        path.pop_back();
      }
      return;
    default: break;
  }
  if (!n.gamma) {
    if (n.removed)
      collect(*n.kids[0], path, out);
    else
      out.push_back({Item::Delta, &n, 0, path});
    return;
  }
  if (n.shown < n.copies.size()) {
    out.push_back({Item::Split, &n, 0, path});
    return;
  }
  for (std::size_t j = 0; j < n.shown; ++j) {
    Path p = path;
    for (std::size_t k = 0; k < j; ++k) p.push_back(1);
    if (j + 1 < n.shown) p.push_back(0);
    if (n.copies[j].removed)
      collect(*n.copies[j].body, p, out);
    else
      out.push_back({Item::Gamma, &n, j, p});
  }
}

struct Reduction {
  Formula conclusion;
  Rule rule;
  StepData data;
};

}  // namespace

Derivation mp_eliminate(const Formula& f, const std::vector<Substitution>& witness) {
  if (!check_instances(f, witness)) throw std::invalid_argument("witness fails verification");
  Formula a = rectify(f);
  auto sk = skolemize_outer_form(a);

  std::vector<const Substitution*> inst;
  for (const auto& s : witness) inst.push_back(&s);
  Raiser raiser(sk);
  auto root = raiser.raise(a, {}, {}, Polarity::Positive, inst);
  std::set<std::string> pending = raiser.boxes;

  std::vector<Reduction> trail;
  auto record = [&](RuleTag tag, Path at, std::string var, std::optional<Term> term) {
    Reduction r;
    r.conclusion = render(*root);
    r.rule.tag = tag;
    r.data.at = std::move(at);
    r.data.var = std::move(var);
    r.data.term = std::move(term);
    trail.push_back(std::move(r));
  };

  for (;;) {
    std::vector<Item> items;
    collect(*root, {}, items);
    if (items.empty()) break;
    auto pick = std::find_if(items.begin(), items.end(), [](const Item& i) { return i.what == Item::Delta; });
    if (pick == items.end())
      pick = std::find_if(items.begin(), items.end(), [](const Item& i) { return i.what == Item::Split; });
    if (pick == items.end())
      pick = std::find_if(items.begin(), items.end(), [&](const Item& i) {
        for (const auto& v : free_vars(i.node->copies[i.copy].boxed))
          if (pending.count(v)) return false;
        return true;
      });
    if (pick == items.end()) throw std::logic_error("no admissible quantifier step");
    Node& n = *pick->node;
    switch (pick->what) {
      case Item::Delta:
        record(RuleTag::GenDeltaQuant, pick->path, n.orig.name(), Term::var(n.box));
        n.removed = true;
        pending.erase(n.box);
        break;
      case Item::Split: {
        Path p = pick->path;
        while (n.shown < n.copies.size()) {
          record(RuleTag::GenGammaSimplification, p, "", std::nullopt);
          ++n.shown;
          p.push_back(1);
        }
        break;
      }
      case Item::Gamma:
        record(RuleTag::GenGammaQuant, pick->path, n.orig.name(), n.copies[pick->copy].boxed);
        n.copies[pick->copy].removed = true;
        break;
    }
  }

  Derivation d;
  d.free_vars = free_vars(a);
  Step axiom;
  axiom.formula = render(*root);
  axiom.rule.tag = RuleTag::SententialTautologyAxiom;
  d.steps.push_back(std::move(axiom));
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
    Step s;
    s.formula = it->conclusion;
    s.rule = it->rule;
    s.premises = {d.steps.size() - 1};
    s.data = it->data;
    d.steps.push_back(std::move(s));
  }
  if (!(d.conclusion() == a)) throw std::logic_error("derivation does not end in the goal");
  if (auto v = check(d))
    throw std::logic_error("constructed derivation fails at step " + std::to_string(v->step) + ": " +
                           v->message);
  return d;
}

}  // namespace herbrand
