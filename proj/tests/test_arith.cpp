#include <random>

#include "doctest.h"
#include "herbrand/arith.hpp"
#include "oracle.hpp"

using namespace herbrand;
using arith::Verdict;

namespace {

ParseOptions vars(std::set<std::string> v) {
  ParseOptions o;
  o.free_vars = std::move(v);
  return o;
}

bool quantifier_free(const Formula& f) {
  for (const auto& p : all_paths(f))
    if (subformula_at(f, p).is_quantifier()) return false;
  return true;
}

Verdict expected(const Formula& s) { return oracle::arith_truth(s) ? Verdict::Derivable : Verdict::Refutable; }

}  // namespace

TEST_CASE("quantifier elimination examples") {
  auto e = arith::eliminate_quantifiers(parse_formula("?y. x = S(y)", vars({"x"})));
  CHECK(quantifier_free(e));
  CHECK(print(arith::qf_normal_form(e)) == "x != 0");

  CHECK(arith::is_truth(arith::qf_normal_form(arith::eliminate_quantifiers(parse_formula("?x. x = 0")))));
  CHECK(arith::is_truth(arith::qf_normal_form(arith::eliminate_quantifiers(arith::axiom(arith::AxiomTag::Nat1)))));

  auto open = arith::eliminate_quantifiers(parse_formula("!y. (x = S(y) -> z != y)", vars({"x", "z"})));
  CHECK(quantifier_free(open));
  CHECK(free_vars(open) == std::set<std::string>{"x", "z"});
  CHECK(print(arith::qf_normal_form(open)) == "x = 0 | x != S(z)");
  auto same = parse_formula("!x. !z. (x = 0 | x != S(z)) & x != S(z) | ~(x = 0 | x != S(z)) & x = S(z)");
  CHECK(arith::decide(same) == Verdict::Derivable);

  CHECK_THROWS_AS(arith::eliminate_quantifiers(parse_formula("?x. P(x)")), arith::NotArithmetic);
  CHECK_THROWS_AS(arith::validate(parse_formula("f(0) = 0")), arith::NotArithmetic);
}

TEST_CASE("normal form examples") {
  CHECK(print(arith::qf_normal_form(parse_formula("~(0 = 0)"))) == "0 != 0");
  CHECK(arith::is_falsity(arith::qf_normal_form(parse_formula("S(S(0)) = S(0)"))));
  CHECK(print(arith::qf_normal_form(parse_formula("S(x) = S(y)", vars({"x", "y"})))) == "x = y");
  CHECK(arith::is_falsity(arith::qf_normal_form(parse_formula("S(S(x)) = x", vars({"x"})))));
  CHECK(arith::is_truth(arith::qf_normal_form(parse_formula("x = x | S(0) = 0", vars({"x"})))));
  CHECK_THROWS_AS(arith::qf_normal_form(parse_formula("!x. x = x")), std::invalid_argument);
}

TEST_CASE("decision examples") {
  CHECK(arith::decide(parse_formula("!x. S(x) != 0")) == Verdict::Derivable);
  CHECK(arith::decide(parse_formula("?x. S(x) = x")) == Verdict::Refutable);
  CHECK(arith::decide(parse_formula("0 = 0")) == Verdict::Derivable);
  CHECK(arith::decide(parse_formula("0 != 0")) == Verdict::Refutable);
  CHECK(arith::decide(arith::axiom(arith::AxiomTag::Nat1)) == Verdict::Derivable);
  CHECK(arith::decide(arith::axiom(arith::AxiomTag::Nat2)) == Verdict::Derivable);
  CHECK(arith::decide(arith::axiom(arith::AxiomTag::Nat3)) == Verdict::Derivable);
  for (std::size_t i = 0; i < 4; ++i) CHECK(arith::decide(arith::axiom(arith::AxiomTag::Nat4Plus, i)) == Verdict::Derivable);
  CHECK(arith::decide(parse_formula("!x. ?y. y = S(S(x))")) == Verdict::Derivable);
  CHECK(arith::decide(parse_formula("!x. ?y. x = S(S(y))")) == Verdict::Refutable);
  CHECK(arith::decide(parse_formula("!x. !y. ?z. z != x & z != y")) == Verdict::Derivable);
  CHECK_THROWS_AS(arith::decide(parse_formula("x = 0", vars({"x"}))), std::invalid_argument);
  CHECK(arith::to_string(Verdict::Derivable) != arith::to_string(Verdict::Refutable));
}

TEST_CASE("induction instances are derivable") {
  auto p = parse_formula("x = 0 | ?y. x = S(y)", vars({"x"}));
  auto inst = arith::induction_instance(p, "x");
  CHECK(free_vars(inst).empty());
  CHECK(arith::decide(inst) == Verdict::Derivable);
  CHECK(print(arith::successor_term("x", 2)) == "S(S(x))");
  CHECK(print(arith::successor_term("", 1)) == "S(0)");
}

TEST_CASE("exhaustive corpus agrees with the standard model") {
  auto corpus = oracle::all_arith_sentences(7);
  CHECK(corpus.size() > 1000);
  int derivable = 0;
  for (const auto& s : corpus) {
    auto v = arith::decide(s);
    REQUIRE_MESSAGE(v == expected(s), print(s));
    derivable += v == Verdict::Derivable;
    CHECK(arith::decide(Formula::neg(s)) != v);
  }
  CHECK(derivable > 0);
  CHECK(derivable < static_cast<int>(corpus.size()));
}

TEST_CASE("random sentences agree with the standard model") {
  std::mt19937 rng(15);
  for (int i = 0; i < 500; ++i) {
    auto s = oracle::random_arith_sentence(rng, 4);
    CHECK(free_vars(s).empty());
    auto qe = arith::eliminate_quantifiers(s);
    CHECK(quantifier_free(qe));
    CHECK(free_vars(qe).empty());
    auto nf = arith::qf_normal_form(qe);
    CHECK(arith::is_truth(nf) != arith::is_falsity(nf));
    REQUIRE_MESSAGE(arith::decide(s) == expected(s), print(s));
  }
}

TEST_CASE("no new free variables and no spurious refutation") {
  std::mt19937 rng(16);
  int open_checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto s = oracle::random_arith_sentence(rng, 4);
    if (!s.is_quantifier()) continue;
    // Drop the outermost binder to get an open formula.
    auto body = s.body();
    auto qe = arith::eliminate_quantifiers(body);
    auto before = free_vars(body);
    for (const auto& v : free_vars(qe)) CHECK(before.count(v) == 1);
    auto nf = arith::qf_normal_form(qe);
    auto closed = Formula::exists(s.name(), body);
    if (oracle::arith_truth(closed)) CHECK_FALSE(arith::is_falsity(nf));
    auto universal = Formula::forall(s.name(), body);
    if (!oracle::arith_truth(universal)) CHECK_FALSE(arith::is_truth(nf));
    ++open_checked;
  }
  CHECK(open_checked > 50);
}

TEST_CASE("bounded oracle is stable") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    auto s = oracle::random_arith_sentence(rng, 3);
    long b = oracle::arith_scale(s);
    CHECK(oracle::arith_bounded(s, b) == oracle::arith_bounded(s, b + 3));
  }
}
