#include <gmpxx.h>

#include <random>

#include "doctest.h"
#include "herbrand/arith.hpp"
#include "herbrand/expansion.hpp"
#include "herbrand/transform.hpp"
#include "oracle.hpp"

using namespace herbrand;

namespace {

const char* kRunning =
    "(!a,b,c.(R(a,b) & R(b,c) -> R(a,c))) & (!x,y.?m.(R(x,m) & R(y,m))) -> "
    "!u,v,w.?n.(R(u,n) & R(v,n) & R(w,n))";

std::vector<std::string> printed(const ChampFini& t) {
  std::vector<std::string> out;
  for (const auto& x : t.terms) out.push_back(print(x));
  std::sort(out.begin(), out.end());
  return out;
}

FiniteStructure from_model(const oracle::Model& m) {
  FiniteStructure s;
  s.domain_size = static_cast<std::size_t>(m.size);
  for (const auto& [f, table] : m.fns)
    for (const auto& [args, v] : table) s.set_function(f, args, v);
  for (const auto& [p, table] : m.preds)
    for (const auto& [args, v] : table) s.set_predicate(p, args, v);
  return s;
}

// Closed formulas that are valid, invalid, or undecided in roughly equal measure.
std::vector<Formula> corpus(std::mt19937& rng, std::size_t count) {
  std::vector<Formula> out;
  while (out.size() < count) {
    auto g = oracle::random_formula(rng, 4);
    if (out.size() % 2 == 0) g = Formula::disj(g, Formula::neg(g));
    if (print(g).size() > 80) continue;
    out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("champ fini examples") {
  Signature sig;
  sig.functions = {{"a", 0}, {"f", 1}};
  CHECK(printed(champ_fini(sig, 2)) == std::vector<std::string>{"a"});
  CHECK(printed(champ_fini(sig, 3)) == std::vector<std::string>{"a", "f(a)"});

  auto empty = champ_fini(Signature{}, 1);
  CHECK(printed(empty) == std::vector<std::string>{"l"});
  CHECK(empty.lexicon);

  Signature stars;
  stars.functions = {{"u_star", 0, SymbolKind::SkolemConstant},
                     {"v_star", 0, SymbolKind::SkolemConstant},
                     {"w_star", 0, SymbolKind::SkolemConstant},
                     {"m_star", 2, SymbolKind::SkolemFunction}};
  auto t4 = champ_fini(stars, 4);
  CHECK(t4.size() == 147);
  CHECK(t4.size() == oracle::terms_below({{"u_star", 0}, {"v_star", 0}, {"w_star", 0}, {"m_star", 2}}, {}, 4).size());
  for (const auto& t : t4.terms) CHECK(t.height() < 4);
  CHECK_FALSE(t4.lexicon);

  CHECK(printed(champ_fini(sig, 2, LexiconPolicy::Always)) == std::vector<std::string>{"a", "f(l)", "l"});
}

TEST_CASE("champ fini agrees with closure enumeration") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> small(0, 2);
  for (int i = 0; i < 50; ++i) {
    std::vector<oracle::Sym> fns;
    Signature sig;
    int constants = small(rng), unary = small(rng) % 2, binary = small(rng) % 2;
    for (int k = 0; k < constants; ++k) fns.push_back({"c" + std::to_string(k), 0});
    for (int k = 0; k < unary; ++k) fns.push_back({"g" + std::to_string(k), 1});
    for (int k = 0; k < binary; ++k) fns.push_back({"h" + std::to_string(k), 2});
    std::vector<std::string> vars;
    if (small(rng) == 0) vars.push_back("z");
    for (const auto& f : fns) sig.functions.insert({f.name, f.arity});
    sig.free_vars.insert(vars.begin(), vars.end());
    std::size_t n = 1 + static_cast<std::size_t>(i % 4);

    auto expected = oracle::terms_below(fns, vars, n);
    if (expected.empty()) expected = oracle::terms_below(fns, {"l"}, n);
    std::sort(expected.begin(), expected.end());
    auto got = champ_fini(sig, n);
    CHECK(printed(got) == expected);
    for (std::size_t k = 1; k < got.terms.size(); ++k)
      CHECK(got.terms[k - 1].height() <= got.terms[k].height());
  }
}

TEST_CASE("expansion") {
  auto zero = Term::app("0"), one = Term::app("1"), two = Term::app("2"), three = Term::app("3");
  auto plus = [](Term a, Term b) { return Term::app("+", {std::move(a), std::move(b)}); };
  auto x = Term::var("x"), y = Term::var("y"), z = Term::var("z");
  auto a = Formula::forall(
      "x", Formula::disj(Formula::eq(x, zero), Formula::exists("y", Formula::eq(x, plus(y, one)))));
  std::vector<Term> domain{three, plus(z, two)};

  auto row = [&](const Term& t) {
    std::vector<Formula> parts{Formula::eq(t, zero), Formula::eq(t, plus(three, one)),
                               Formula::eq(t, plus(plus(z, two), one))};
    return parts;
  };
  auto e = expand(a, domain);
  CHECK(is_quantifier_free(e));
  REQUIRE(e.kind() == Kind::And);
  auto flatten = [](const Formula& f) {
    std::vector<Formula> out;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
      if (g.kind() == Kind::Or) {
        go(g.lhs());
        go(g.rhs());
      } else {
        out.push_back(g);
      }
    };
    go(f);
    return out;
  };
  CHECK(flatten(e.lhs()) == row(three));
  CHECK(flatten(e.rhs()) == row(plus(z, two)));

  auto qf = parse_formula("P(a) | ~Q(b)");
  CHECK(expand(qf, domain) == qf);
  CHECK(print(expand(parse_formula("?x. P(x)"), {Term::app("a")})) == "P(a)");
  CHECK_THROWS_AS(expand(parse_formula("?x. P(x)"), {}), std::invalid_argument);

  std::mt19937 rng(8);
  auto terms = oracle::ground_terms({{"a", 0}, {"b", 0}, {"f", 1}}, 1);
  for (int i = 0; i < 100; ++i) {
    auto f = oracle::random_formula(rng, 5);
    auto g = expand(f, terms);
    CHECK(is_quantifier_free(g));
    for (const auto& sym : function_symbols(g)) CHECK((sym.name == "a" || sym.name == "b" || sym.name == "f"));
    CHECK(free_vars(g).empty());
  }
}

TEST_CASE("Herbrand disjunction") {
  auto hd = herbrand_disjunction(parse_formula("P(a)"), 1);
  CHECK(hd.gamma_vars.empty());
  CHECK(hd.instance_count() == 1);
  int calls = 0;
  hd.for_each_substitution([&](const Substitution& s) {
    CHECK(s.empty());
    ++calls;
    return true;
  });
  CHECK(calls == 1);

  auto run = herbrand_disjunction(parse_formula(kRunning), 4);
  CHECK(run.gamma_vars.size() == 6);
  CHECK(run.domain.size() == 147);
  CHECK(print(run.matrix) ==
        "(R(a,b) & R(b,c) -> R(a,c)) & (R(x,m_star(x,y)) & R(y,m_star(x,y))) -> "
        "R(u_star,n) & R(v_star,n) & R(w_star,n)");

  auto fl = herbrand_disjunction(parse_formula("(?x. P(x)) | ~?y. P(y)"), 2);
  CHECK(print(fl.matrix) == "P(x) | ~P(y_star)");
  CHECK(printed(fl.domain) == std::vector<std::string>{"y_star"});
  auto fl_l = herbrand_disjunction(parse_formula("(?x. P(x)) | ~?y. P(y)"), 2, LexiconPolicy::Always);
  CHECK(printed(fl_l.domain) == std::vector<std::string>{"l", "y_star"});
}

TEST_CASE("Property C, B and complexity examples") {
  CHECK(property_c(parse_formula("P(a) | ~P(a)"), 1).holds);
  for (std::size_t n = 1; n <= 3; ++n) CHECK_FALSE(property_c(parse_formula("P(a)"), n).holds);
  auto fl = parse_formula("(?x. P(x)) | ~?y. P(y)");
  CHECK(property_c(fl, 2).holds);
  CHECK_FALSE(property_c(fl, 1).holds);

  CHECK(property_b(parse_formula("P(a) | ~P(a)"), 1).holds);
  CHECK(property_b(fl, 2).holds);
  CHECK(to_antiprenex(fl) == fl);
  CHECK_FALSE(property_b(parse_formula("P(a)"), 2).holds);

  auto one = herbrand_complexity(parse_formula("P(a) | ~P(a)"), 1, 3);
  REQUIRE(one);
  CHECK(one->k == 1);
  auto c = herbrand_complexity(fl, 2, 3);
  REQUIRE(c);
  CHECK(c->k == 1);
  CHECK(print(c->substitutions.at(0)) == "{x->y_star}");

  auto run = herbrand_complexity(parse_formula(kRunning), 4, 2);
  REQUIRE(run);
  CHECK(run->k == 2);
  CHECK(check_instances(parse_formula(kRunning), run->substitutions));
  CHECK_FALSE(herbrand_complexity(parse_formula(kRunning), 4, 1));

  SearchOptions tight;
  tight.budget = 100;
  CHECK_THROWS_AS(property_c(parse_formula(kRunning), 4, tight), BudgetError);
}

TEST_CASE("check_instances") {
  auto f = parse_formula(kRunning);
  auto t1 = parse_term("m_star(v_star,w_star)");
  auto t2 = Term::app("m_star", {parse_term("u_star"), t1});
  Substitution s1{{"a", parse_term("v_star")}, {"b", t1}, {"c", t2},
                  {"x", parse_term("v_star")}, {"y", parse_term("w_star")}, {"n", t2}};
  Substitution s2{{"a", parse_term("w_star")}, {"b", t1}, {"c", t2},
                  {"x", parse_term("u_star")}, {"y", t1}, {"n", t2}};
  CHECK(check_instances(f, {s1, s2}));
  CHECK(check_instances(f, {s1, s2}, sat::Engine::Multiplication));
  CHECK_FALSE(check_instances(f, {s1}));
  CHECK_FALSE(check_instances(f, {s2}));
  CHECK_FALSE(check_instances(f, {}));
  Substitution partial{{"a", t1}};
  CHECK_THROWS_AS(check_instances(f, {partial}), std::invalid_argument);
}

TEST_CASE("full instance lists agree with Property C") {
  std::mt19937 rng(23);
  int compared = 0;
  for (const auto& f : corpus(rng, 120)) {
    for (std::size_t n = 1; n <= 2; ++n) {
      auto hd = herbrand_disjunction(f, n);
      if (hd.instance_count() > 2000) continue;
      std::vector<Substitution> all;
      hd.for_each_substitution([&](const Substitution& s) {
        all.push_back(s);
        return true;
      });
      CHECK(check_instances(f, all) == property_c(f, n).holds);
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("Property C is sound and monotone") {
  std::mt19937 rng(101);
  std::mt19937 models(202);
  SearchOptions opts;
  opts.budget = 20000;
  int sound_checked = 0, mono_checked = 0;
  for (const auto& f : corpus(rng, 160)) {
    bool held = false;
    for (std::size_t n = 1; n <= 2 && !held; ++n) {
      try {
        auto pc = property_c(f, n, opts);
        if (!pc.holds) continue;
        held = true;
        ++mono_checked;
        CHECK_MESSAGE(property_c(f, n + 1, opts).holds, print(f));
      } catch (const BudgetError&) {
        break;
      }
    }
    if (!held) continue;
    ++sound_checked;
    for (int k = 0; k < 1000; ++k) {
      auto m = oracle::random_model(models, f, 1 + k % 4);
      REQUIRE_MESSAGE(oracle::holds(m, f, {}), print(f));
    }
  }
  CHECK(sound_checked >= 40);
  CHECK(mono_checked >= 40);
}

TEST_CASE("evaluation in finite structures") {
  FiniteStructure one;
  one.domain_size = 1;
  one.set_predicate("P", {0}, true);
  CHECK(eval_in_structure(one, parse_formula("!x. P(x)")));

  FiniteStructure two;
  two.domain_size = 2;
  two.set_predicate("P", {0}, true);
  two.set_predicate("P", {1}, false);
  CHECK_FALSE(eval_in_structure(two, parse_formula("!x. P(x)")));
  CHECK(eval_in_structure(two, parse_formula("?x. P(x)")));
  CHECK_THROWS_AS(eval_in_structure(two, parse_formula("Q(a)")), UninterpretedSymbol);

  FiniteStructure order;
  order.domain_size = 2;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) order.set_predicate("R", {i, j}, i < j);
  CHECK(eval_in_structure(order, parse_formula(kRunning)));

  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto f = oracle::random_formula(rng, 5);
    auto m = oracle::random_model(rng, f, 1 + i % 3);
    CHECK(eval_in_structure(from_model(m), f) == oracle::holds(m, f, {}));
  }

  auto back = parse_structure(serialize(two));
  CHECK(serialize(back) == serialize(two));
  CHECK_FALSE(eval_in_structure(back, parse_formula("!x. P(x)")));
}

TEST_CASE("falsifying structures") {
  auto s = falsifying_structure(parse_formula("P(a)"), 1);
  REQUIRE(s);
  CHECK_FALSE(eval_in_structure(*s, parse_formula("P(a)")));

  auto t = falsifying_structure(parse_formula("(!x. P(x)) | !y. ~P(y)"), 1);
  REQUIRE(t);
  CHECK_FALSE(eval_in_structure(*t, parse_formula("P(x_star)")));
  CHECK(eval_in_structure(*t, parse_formula("P(y_star)")));

  CHECK_FALSE(falsifying_structure(parse_formula("P(a) | ~P(a)"), 1));
  CHECK_FALSE(falsifying_structure(parse_formula("P(a) | ~P(a)"), 3));

  std::mt19937 rng(77);
  SearchOptions opts;
  opts.budget = 5000;
  int checked = 0;
  for (const auto& f : corpus(rng, 120)) {
    for (std::size_t p = 1; p <= 2; ++p) {
      std::optional<FiniteStructure> fs;
      try {
        fs = falsifying_structure(f, p, opts);
      } catch (const BudgetError&) {
        break;
      }
      if (!fs) continue;
      auto hd = herbrand_disjunction(f, p);
      CHECK_FALSE_MESSAGE(eval_in_structure(*fs, expand(hd.skolemized, hd.domain.terms)), print(f));
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("Goedel-Dreben order") {
  CHECK(godel_dreben_order(1, 0, 5) == 2);
  CHECK(godel_dreben_order(2, 1, 3) == 32);
  CHECK(godel_dreben_order(2, 2, 4) == 578);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> n(1, 12), r(0, 6), N(1, 500);
  for (int i = 0; i < 100; ++i) {
    auto a = n(rng), b = r(rng), c = N(rng);
    mpz_class base;
    mpz_pow_ui(base.get_mpz_t(), mpz_class(static_cast<unsigned long>(c)).get_mpz_t(), b);
    base += 1;
    mpz_class total;
    mpz_pow_ui(total.get_mpz_t(), base.get_mpz_t(), a);
    total *= static_cast<unsigned long>(a);
    CHECK(godel_dreben_order(a, b, c).str() == total.get_str());
  }
}

TEST_CASE("finite substructures of arithmetic") {
  auto s = arith_substructure_witness({arith::axiom(arith::AxiomTag::Nat2)}, 1);
  CHECK(s.domain_size == 2);
  CHECK(eval_term(s, parse_term("S(0)"), {}) == 1);
  CHECK(eval_term(s, parse_term("S(S(0))"), {}) == 1);

  auto t = arith_substructure_witness({arith::axiom(arith::AxiomTag::Nat2), arith::axiom(arith::AxiomTag::Nat3)}, 2);
  CHECK(t.domain_size == 3);
  for (auto text : {"S(0) != 0", "S(S(0)) != 0", "S(0) = S(S(0)) -> 0 = S(0)", "S(0) = S(0) -> 0 = 0"})
    CHECK(eval_in_structure(t, parse_formula(text)));
  CHECK_FALSE(property_c(Formula::neg(Formula::conj(arith::axiom(arith::AxiomTag::Nat2),
                                                    arith::axiom(arith::AxiomTag::Nat3))),
                         2)
                  .holds);

  auto empty = arith_substructure_witness({}, 1);
  CHECK(empty.domain_size == 1);

  CHECK_THROWS_AS(arith_substructure_witness({arith::axiom(arith::AxiomTag::Nat1)}, 1), std::invalid_argument);
}
