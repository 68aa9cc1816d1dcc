#include <functional>
#include <random>

#include "doctest.h"
#include "herbrand/expansion.hpp"
#include "herbrand/transform.hpp"
#include "oracle.hpp"

using namespace herbrand;

namespace {

const char* kRunning =
    "(!a,b,c.(R(a,b) & R(b,c) -> R(a,c))) & (!x,y.?m.(R(x,m) & R(y,m))) -> "
    "!u,v,w.?n.(R(u,n) & R(v,n) & R(w,n))";

// Every interpretation of P/1, Q/1 and the constant a over domains of size 1..3.
std::vector<oracle::Model> all_small_models() {
  std::vector<oracle::Model> out;
  for (int size = 1; size <= 3; ++size)
    for (int p = 0; p < (1 << size); ++p)
      for (int q = 0; q < (1 << size); ++q)
        for (int a = 0; a < size; ++a) {
          oracle::Model m;
          m.size = size;
          m.fns["a"][{}] = a;
          for (int e = 0; e < size; ++e) {
            m.preds["P"][{e}] = (p >> e) & 1;
            m.preds["Q"][{e}] = (q >> e) & 1;
          }
          out.push_back(std::move(m));
        }
  return out;
}

Formula small_formula(std::mt19937& rng, std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  int r = depth <= 0 ? 0 : pick(rng);
  if (r <= 2) {
    Term t = Term::app("a");
    if (!vars.empty() && pick(rng) < 8) t = Term::var(vars[static_cast<std::size_t>(pick(rng)) % vars.size()]);
    return Formula::atom(pick(rng) % 2 ? "P" : "Q", {t});
  }
  if (r == 3) return Formula::neg(small_formula(rng, vars, depth - 1));
  if (r <= 6) {
    Kind k = r == 4 ? Kind::And : r == 5 ? Kind::Or : Kind::Implies;
    auto a = small_formula(rng, vars, depth - 1);
    auto b = small_formula(rng, vars, depth - 1);
    return Formula::binary(k, a, b);
  }
  std::string v = pick(rng) % 2 ? "x" : "y";
  vars.push_back(v);
  auto body = small_formula(rng, vars, depth - 1);
  vars.pop_back();
  return Formula::quant(r == 7 ? Kind::Forall : Kind::Exists, v, body);
}

bool equivalent_on_small_models(const Formula& a, const Formula& b) {
  static const auto models = all_small_models();
  for (const auto& m : models)
    if (oracle::holds(m, a, {}) != oracle::holds(m, b, {})) return false;
  return true;
}

bool quantifier_below_connective(const Formula& f, bool under) {
  if (f.is_atom()) return false;
  if (f.is_quantifier()) return under || quantifier_below_connective(f.body(), false);
  for (const auto& c : f.children())
    if (quantifier_below_connective(c, true)) return true;
  return false;
}

std::map<std::string, std::size_t> skolem_arities(const Formula& f) {
  std::map<std::string, std::size_t> out;
  for (const auto& s : function_symbols(f))
    if (is_skolem_name(s.name)) out[s.name] = s.arity;
  return out;
}

}  // namespace

TEST_CASE("classify") {
  CHECK(classify(parse_formula("?y. P(y)"), {}) == UniformClass::Gamma);
  CHECK(classify(parse_formula("~!y. P(y)"), {0}) == UniformClass::Gamma);
  CHECK(classify(parse_formula("!x. P(x)"), {}) == UniformClass::Delta);
  CHECK(classify(parse_formula("~?x. P(x)"), {0}) == UniformClass::Delta);
  CHECK(classify(parse_formula("P | Q"), {}) == UniformClass::Alpha);
  CHECK(classify(parse_formula("P -> Q"), {}) == UniformClass::Alpha);
  CHECK(classify(parse_formula("P & Q"), {}) == UniformClass::Beta);
  CHECK(classify(parse_formula("~(P & Q)"), {0}) == UniformClass::Alpha);
  CHECK(classify(parse_formula("~(P | Q)"), {0}) == UniformClass::Beta);
  CHECK(classify(parse_formula("(!x. P(x)) -> Q"), {0}) == UniformClass::Gamma);
  CHECK_THROWS_AS(classify(parse_formula("P & Q"), {0}), PositionError);
  CHECK(to_string(UniformClass::Gamma) == "gamma");
}

TEST_CASE("passage examples") {
  CHECK(print(passage(parse_formula("~!x. P(x)"), {}, 1, Direction::Prenex)) == "?x. ~P(x)");
  CHECK(print(passage(parse_formula("(?x. P(x)) | Q"), {}, 5, Direction::Prenex)) == "?x. P(x) | Q");
  CHECK(print(passage(parse_formula("?x. P(x) | Q"), {}, 5, Direction::AntiPrenex)) == "(?x. P(x)) | Q");
  CHECK(print(passage(parse_formula("~?x. P(x)"), {}, 2, Direction::Prenex)) == "!x. ~P(x)");
  CHECK(print(passage(parse_formula("Q & !x. P(x)"), {}, 4, Direction::Prenex)) == "!x. Q & P(x)");
  CHECK(print(passage(parse_formula("Q | ?x. P(x)"), {}, 6, Direction::Prenex)) == "?x. Q | P(x)");

  auto clash = parse_formula("(!x. P(x)) | Q(x)", [] {
    ParseOptions o;
    o.free_vars = {"x"};
    return o;
  }());
  auto moved = passage(clash, {}, 3, Direction::Prenex);
  CHECK(print(moved) == "!x#1. P(x#1) | Q(x)");

  CHECK_THROWS_AS(passage(parse_formula("P | Q"), {}, 3, Direction::Prenex), PassageError);
  CHECK_THROWS_AS(passage(parse_formula("~!x. P(x)"), {}, 7, Direction::Prenex), PassageError);
  CHECK_THROWS_AS(passage(parse_formula("P(x_star) | !y. Q(y)"), {}, 4, Direction::Prenex), PassageError);
}

TEST_CASE("anti-prenex passage refuses to extract a subformula that mentions the variable") {
  auto f = parse_formula("!x. P(x) | Q(x)");
  CHECK_FALSE(passage_applies(f, {}, 4, Direction::AntiPrenex));
  CHECK_THROWS_AS(passage(f, {}, 4, Direction::AntiPrenex), PassageError);
  CHECK(equivalent_on_small_models(to_antiprenex(f), f));
}

TEST_CASE("passage preserves truth in every structure of size at most 3") {
  std::mt19937 rng(2024);
  int formulas = 0;
  long applications = 0;
  while (formulas < 200) {
    std::vector<std::string> vars;
    auto f = rectify(small_formula(rng, vars, 4));
    if (!is_closed(f)) continue;
    ++formulas;
    for (const auto& p : all_paths(f))
      for (int rule = 1; rule <= 6; ++rule)
        for (auto dir : {Direction::Prenex, Direction::AntiPrenex}) {
          if (!passage_applies(f, p, rule, dir)) continue;
          auto g = passage(f, p, rule, dir);
          ++applications;
          CHECK_MESSAGE(equivalent_on_small_models(f, g), print(f), " rule ", rule, " at ",
                        path_to_string(p));
          CHECK(is_rectified(g));
        }
  }
  CHECK(applications > 100);
}

TEST_CASE("prenex and anti-prenex forms") {
  auto qf = parse_formula("P(a) & ~Q(a)");
  CHECK(to_prenex(qf) == qf);
  CHECK(to_antiprenex(qf) == qf);

  auto f = parse_formula("(?x. P(x)) | ~?y. P(y)");
  CHECK(print(to_prenex(f)) == "?x. !y. P(x) | ~P(y)");
  CHECK(print(to_antiprenex(parse_formula("?x. P(x) | Q"))) == "(?x. P(x)) | Q");

  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> vars;
    auto g = rectify(small_formula(rng, vars, 5));
    if (!is_closed(g)) continue;
    auto p = to_prenex(g);
    CHECK(is_prenex(p));
    CHECK_FALSE(quantifier_below_connective(p, false));
    CHECK(equivalent_on_small_models(g, p));
    auto a = to_antiprenex(g);
    CHECK(equivalent_on_small_models(g, a));
    for (const auto& q : all_paths(a))
      for (int rule = 1; rule <= 6; ++rule) CHECK_FALSE(passage_applies(a, q, rule, Direction::AntiPrenex));
  }
}

TEST_CASE("outer Skolemization") {
  CHECK(print(skolemize_outer(parse_formula("(?x. P(x)) | ~?y. P(y)"))) == "(?x. P(x)) | ~P(y_star)");
  CHECK(print(skolemize_outer(parse_formula("?x. P(x) | ~?y. P(y)"))) == "?x. P(x) | ~P(y_star(x))");

  auto sk = skolemize_outer_form(parse_formula(kRunning));
  CHECK(print(sk.formula) ==
        "(!a. !b. !c. R(a,b) & R(b,c) -> R(a,c)) & (!x. !y. R(x,m_star(x,y)) & R(y,m_star(x,y))) -> "
        "?n. R(u_star,n) & R(v_star,n) & R(w_star,n)");
  CHECK(sk.gamma_vars == std::vector<std::string>{"a", "b", "c", "x", "y", "n"});
  CHECK(print(sk.delta_terms.at("m")) == "m_star(x,y)");
  CHECK(print(sk.delta_terms.at("u")) == "u_star");
  CHECK(sk.delta_order == std::vector<std::string>{"m", "u", "v", "w"});
  CHECK(print(matrix(sk.formula)) ==
        "(R(a,b) & R(b,c) -> R(a,c)) & (R(x,m_star(x,y)) & R(y,m_star(x,y))) -> "
        "R(u_star,n) & R(v_star,n) & R(w_star,n)");
}

TEST_CASE("inner Skolemization") {
  auto f = parse_formula("(?y1. !z1. Q(y1,z1)) | ?y2. !z2. Q(y2,z2)");
  CHECK(print(skolemize_inner(f)) == "(?y1. Q(y1,z1_star(y1))) | ?y2. Q(y2,z2_star(y2))");
  CHECK(print(skolemize_inner(parse_formula("?y. !x. P(x)"))) == "?y. P(x_star)");
  CHECK(print(skolemize_outer(parse_formula("?y. !x. P(x)"))) == "?y. P(x_star(y))");
  auto closed = parse_formula("?x. P(x) | ~P(a)");
  CHECK(skolemize_inner(closed) == closed);
  CHECK(skolemize_outer(closed) == closed);
}

TEST_CASE("inner and outer Skolem forms compared") {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    auto f = rectify(oracle::random_formula(rng, 5));
    auto outer = skolem_arities(skolemize_outer(f));
    auto inner = skolem_arities(skolemize_inner(f));
    REQUIRE(outer.size() == inner.size());
    for (const auto& [name, arity] : inner) CHECK(arity <= outer.at(name));
    CHECK(is_rectified(skolemize_outer(f)));

    auto p = to_prenex(f);
    bool all_occur = true;
    std::vector<std::string> prefix;
    Formula cur = p;
    while (cur.is_quantifier()) {
      prefix.push_back(cur.name());
      cur = cur.body();
    }
    auto used = free_vars(cur);
    for (const auto& v : prefix) all_occur = all_occur && used.count(v);
    if (all_occur) CHECK(skolemize_inner(p) == skolemize_outer(p));
  }
}

TEST_CASE("relativization") {
  CHECK(print(relativize(parse_formula("!x. Q(x)"), "P")) == "!x. P(x) -> Q(x)");
  CHECK(print(relativize(parse_formula("?x. Q(x)"), "P")) == "?x. P(x) & Q(x)");
  auto qf = parse_formula("Q(a) | ~Q(b)");
  CHECK(relativize(qf, "P") == qf);
  CHECK_THROWS_AS(relativize(parse_formula("!x. P(x)"), "P"), std::invalid_argument);
}

TEST_CASE("a single passage step changes the order of Property C") {
  auto g = parse_formula("((?x. P(x)) & !y. Q(y)) | ~(?x. P(x)) | ~!y. Q(y)");
  CHECK(property_c(g, 2).holds);
  Path at;
  for (const auto& p : all_paths(rectify(g)))
    if (subformula_at(rectify(g), p).kind() == Kind::And) {
      at = p;
      break;
    }
  auto moved = passage(rectify(g), at, 5, Direction::Prenex);
  CHECK(print(moved) == "(?x. P(x) & !y. Q(y)) | ~(?x#1. P(x#1)) | ~!y#1. Q(y#1)");
  CHECK_FALSE(property_c(moved, 2).holds);
  CHECK(property_c(moved, 3).holds);
}
