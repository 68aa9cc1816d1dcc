#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "herbrand/arith.hpp"
#include "herbrand/budget.hpp"
#include "herbrand/engine.hpp"
#include "herbrand/expansion.hpp"
#include "herbrand/proofcalc.hpp"
#include "herbrand/transform.hpp"
#include "json.hpp"

using namespace herbrand;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kGaveUp = 1, kError = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A problem file holds one formula, optionally preceded by `vars:` and `expect:` lines.
struct Problem {
  std::string source;
  std::set<std::string> vars;
  std::string expect;
  Formula formula;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> split_vars(const std::string& text) {
  std::set<std::string> out;
  std::string cur;
  for (char c : text + " ") {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.insert(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

Problem parse_problem(const std::string& text, std::set<std::string> vars) {
  Problem p;
  p.vars = std::move(vars);
  std::istringstream in(text);
  std::string line, body;
  while (std::getline(in, line)) {
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '%') {
      body += '\n';
      continue;
    }
    auto rest = line.substr(start);
    if (rest.rfind("vars:", 0) == 0) {
      auto more = split_vars(rest.substr(5));
      p.vars.insert(more.begin(), more.end());
      body += '\n';
    } else if (rest.rfind("expect:", 0) == 0) {
      std::istringstream w(rest.substr(7));
      w >> p.expect;
      body += '\n';
    } else {
      body += line + '\n';
    }
  }
  ParseOptions o;
  o.free_vars = p.vars;
  p.formula = parse_formula(body, o);
  p.source = text;
  return p;
}

struct Input {
  std::string file;
  std::string expr;
  std::string vars;

  void add_to(CLI::App* cmd) {
    cmd->add_option("file", file, "Problem file");
    cmd->add_option("-e,--expr", expr, "Formula text instead of a file");
    cmd->add_option("--vars", vars, "Free variables, comma separated");
  }

  Problem load() const {
    if (file.empty() == expr.empty()) throw UsageError("give exactly one of FILE or --expr");
    return parse_problem(expr.empty() ? read_file(file) : expr, split_vars(vars));
  }
};

struct Common {
  std::size_t max_order = 4;
  std::uint64_t budget = 0;
  bool trace = false;
  bool always_lexicon = false;
  bool dual = false;
  bool as_json = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--budget", budget, "Instance budget (default HERBRAND_BUDGET or 1000000)");
    cmd->add_flag("--trace", trace, "Trace to stderr");
    cmd->add_flag("--always-lexicon", always_lexicon, "Add the lexicon to every champ fini");
    cmd->add_flag("--json", as_json, "One JSON record on stdout");
  }

  SearchOptions search() const {
    SearchOptions s;
    s.budget = budget ? budget : budget_from_env();
    if (always_lexicon) s.lexicon = LexiconPolicy::Always;
    return s;
  }

  ProverOptions prover() const {
    ProverOptions o;
    o.search = search();
    o.n_max = max_order;
    o.step_budget = std::max<std::uint64_t>(1, o.search.budget / 100);
    o.dual = dual;
    if (trace) o.trace = [](const std::string& s) { std::cerr << s << '\n'; };
    return o;
  }
};

std::string print_subst_list(const std::vector<Substitution>& w, const std::string& indent) {
  std::string out;
  for (const auto& s : w) out += indent + print(s) + '\n';
  return out;
}

json subst_json(const std::vector<Substitution>& w) {
  json a = json::array();
  for (const auto& s : w) a.push_back(print(s));
  return a;
}

// ---- prove --------------------------------------------------------------------

ProverResult run_race(const Formula& f, const ProverOptions& base) {
  std::atomic<bool> stop{false};
  std::mutex m;
  std::optional<ProverResult> winner;
  auto launch = [&](ProverResult (*prove)(const Formula&, const ProverOptions&), const char* name) {
    return std::thread([&, prove, name] {
      auto o = base;
      o.search.stop = &stop;
      ProverResult r;
      try {
        r = prove(f, o);
      } catch (const Cancelled&) {
        r.method = name;
        r.note = "cancelled";
      }
      std::lock_guard<std::mutex> lock(m);
      if (r.status == ProofStatus::ProofFound && !winner && check_instances(f, r.witness)) {
        winner = r;
        stop = true;
      }
    });
  };
  std::vector<std::thread> ts;
  ts.push_back(launch(prove_gilmore, "gilmore"));
  ts.push_back(launch(prove_dp, "dp"));
  ts.push_back(launch(prove_resolution, "resolution"));
  for (auto& t : ts) t.join();
  if (winner) return *winner;
  ProverResult r;
  r.method = "race";
  r.note = "no prover succeeded";
  return r;
}

std::vector<Substitution> proof_witness(const Formula& f, const ProverResult& r, const SearchOptions& s) {
  if (r.witness.size() > 0 && r.witness.size() <= 16) return r.witness;
  if (auto c = herbrand_complexity(f, std::max<std::size_t>(r.order, 1), 8, s)) return c->substitutions;
  if (!r.witness.empty()) return r.witness;
  if (herbrand_disjunction(f, 1).gamma_vars.empty()) return {Substitution{}};
  throw std::runtime_error("no instance set available for the derivation");
}

int cmd_prove(const Problem& p, const std::string& method, const Common& c, const std::string& proof_out) {
  auto opts = c.prover();
  auto t0 = std::chrono::steady_clock::now();
  ProverResult r;
  if (method == "gilmore") r = prove_gilmore(p.formula, opts);
  else if (method == "dp") r = prove_dp(p.formula, opts);
  else if (method == "resolution") r = prove_resolution(p.formula, opts);
  else if (method == "race") r = run_race(p.formula, opts);
  else throw UsageError("unknown method " + method);
  std::cerr << "time: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";

  bool found = r.status == ProofStatus::ProofFound;
  bool race = method == "race";
  json rec;
  rec["command"] = "prove";
  rec["method"] = method;
  rec["formula"] = print(p.formula);
  rec["status"] = to_string(r.status);
  std::ostringstream out;
  out << "formula: " << print(p.formula) << '\n';
  out << "method: " << method << '\n';
  out << "status: " << to_string(r.status) << '\n';

  if (found && race) {
    // Which prover wins is timing dependent; stdout keeps only the verdict.
    std::cerr << "winner: " << r.method << '\n' << print_subst_list(r.witness, "  ");
    out << "witness: verified\n";
    rec["witness_verified"] = true;
  } else if (found) {
    out << "order: " << r.order << '\n';
    out << "steps: " << r.steps << '\n';
    out << "witness (" << r.witness.size() << "):\n" << print_subst_list(r.witness, "  ");
    rec["order"] = r.order;
    rec["steps"] = r.steps;
    rec["witness"] = subst_json(r.witness);
  } else {
    out << "note: " << r.note << '\n';
    rec["note"] = r.note;
    try {
      if (auto s = falsifying_structure(p.formula, c.max_order, c.search())) {
        out << "falsifying structure (order " << c.max_order << "):\n" << serialize(*s);
        rec["falsifying_structure"] = serialize(*s);
      }
    } catch (const BudgetError& e) {
      out << "falsifying structure: " << e.what() << '\n';
    }
  }

  if (found && !proof_out.empty()) {
    auto d = mp_eliminate(p.formula, proof_witness(p.formula, r, c.search()));
    if (auto v = check(d)) throw std::logic_error("derivation fails at step " + std::to_string(v->step) + ": " + v->message);
    std::ofstream file(proof_out);
    if (!file) throw UsageError("cannot write " + proof_out);
    file << serialize(d);
    out << "derivation: " << d.steps.size() << " steps, checked, written to " << proof_out << '\n';
    rec["derivation_steps"] = d.steps.size();
  }
  std::cout << (c.as_json ? rec.dump() + "\n" : out.str());
  return found ? kOk : kGaveUp;
}

// ---- transform, expand, complexity ---------------------------------------------

int cmd_transform(const Problem& p, const std::string& pass, const std::string& guard, bool as_json) {
  Formula out;
  if (pass == "prenex") out = to_prenex(p.formula);
  else if (pass == "antiprenex") out = to_antiprenex(p.formula);
  else if (pass == "skolem-outer") out = skolemize_outer(p.formula);
  else if (pass == "skolem-inner") out = skolemize_inner(p.formula);
  else if (pass == "rectify") out = rectify(p.formula);
  else if (pass == "relativize") {
    if (guard.empty()) throw UsageError("relativize needs --guard PRED");
    out = relativize(p.formula, guard);
  } else {
    throw UsageError("unknown pass " + pass);
  }
  if (as_json)
    std::cout << json{{"command", "transform"}, {"pass", pass}, {"input", print(p.formula)}, {"output", print(out)}}.dump()
              << '\n';
  else
    std::cout << print(out) << '\n';
  return kOk;
}

std::string join_terms(const std::vector<Term>& ts) {
  std::string out;
  for (const auto& t : ts) out += (out.empty() ? "" : ", ") + print(t);
  return out;
}

int cmd_expand(const Problem& p, std::size_t n, const Common& c) {
  auto s = c.search();
  auto hd = herbrand_disjunction(p.formula, n, s.lexicon);
  std::string gamma;
  for (const auto& y : hd.gamma_vars) gamma += (gamma.empty() ? "" : " ") + y;
  json rec{{"command", "expand"}, {"order", n}, {"skolemized", print(hd.skolemized)}, {"matrix", print(hd.matrix)}};
  std::ostringstream out;
  out << "skolemized: " << print(hd.skolemized) << '\n';
  out << "matrix: " << print(hd.matrix) << '\n';
  out << "gamma variables: " << gamma << '\n';
  out << "champ fini (order " << n << ", " << hd.domain.size() << " terms" << (hd.domain.lexicon ? ", lexicon" : "")
      << "): " << join_terms(hd.domain.terms) << '\n';
  out << "instances: " << hd.instance_count() << '\n';
  rec["domain"] = join_terms(hd.domain.terms);
  rec["instances"] = hd.instance_count();
  if (hd.instance_count() <= std::min<std::uint64_t>(s.budget, 4096)) {
    auto e = expand(hd.skolemized, hd.domain.terms);
    out << "expansion: " << print(e) << '\n';
    rec["expansion"] = print(e);
  } else {
    out << "expansion: omitted\n";
  }
  try {
    auto pc = property_c(p.formula, n, s);
    out << "property C: " << (pc.holds ? "holds" : "fails") << '\n';
    rec["property_c"] = pc.holds;
  } catch (const BudgetError& e) {
    out << "property C: " << e.what() << '\n';
  }
  std::cout << (c.as_json ? rec.dump() + "\n" : out.str());
  return kOk;
}

int cmd_complexity(const Problem& p, std::size_t n, std::size_t k_max, const Common& c) {
  auto r = herbrand_complexity(p.formula, n, k_max, c.search());
  if (c.as_json) {
    json rec{{"command", "complexity"}, {"order", n}, {"found", r.has_value()}};
    if (r) {
      rec["k"] = r->k;
      rec["substitutions"] = subst_json(r->substitutions);
    }
    std::cout << rec.dump() << '\n';
  } else if (r) {
    std::cout << "complexity: " << r->k << '\n' << print_subst_list(r->substitutions, "  ");
  } else {
    std::cout << "complexity: none up to " << k_max << " at order " << n << '\n';
  }
  return r ? kOk : kGaveUp;
}

// ---- unify, check, arith --------------------------------------------------------

int cmd_unify(const std::string& a, const std::string& b, const std::string& vars, bool as_json) {
  ParseOptions o;
  o.free_vars = split_vars(vars);
  auto r = unify(parse_term(a, o), parse_term(b, o));
  if (as_json) {
    json rec{{"command", "unify"}, {"left", a}, {"right", b}, {"unifiable", bool(r)}};
    if (r) rec["mgu"] = print(*r.mgu);
    else rec["failure"] = to_string(r.failure);
    std::cout << rec.dump() << '\n';
  } else if (r) {
    std::cout << "mgu: " << print(*r.mgu) << '\n';
  } else {
    std::cout << "not unifiable: " << to_string(r.failure) << '\n';
  }
  return r ? kOk : kGaveUp;
}

int cmd_check(const std::string& path, bool as_json) {
  auto d = parse_derivation(read_file(path));
  auto v = check(d);
  if (as_json) {
    json rec{{"command", "check"}, {"steps", d.steps.size()}, {"ok", !v}};
    if (v) {
      rec["step"] = v->step;
      rec["message"] = v->message;
    }
    std::cout << rec.dump() << '\n';
  } else if (v) {
    std::cout << "violation at step " << v->step << ": " << v->message << '\n';
  } else {
    std::cout << "ok: " << d.steps.size() << " steps\n";
  }
  return v ? kGaveUp : kOk;
}

int cmd_arith(const std::string& sentence, bool as_json) {
  std::string text = std::filesystem::exists(sentence) ? read_file(sentence) : sentence;
  auto p = parse_problem(text, {});
  auto v = arith::decide(p.formula);
  if (as_json)
    std::cout << json{{"command", "arith decide"}, {"sentence", print(p.formula)}, {"verdict", arith::to_string(v)}}.dump()
              << '\n';
  else
    std::cout << arith::to_string(v) << '\n';
  return kOk;
}

// ---- selftest -------------------------------------------------------------------

const char* kRunning =
    "(!a,b,c.(R(a,b) & R(b,c) -> R(a,c))) & (!x,y.?m.(R(x,m) & R(y,m))) -> "
    "!u,v,w.?n.(R(u,n) & R(v,n) & R(w,n))";

int cmd_selftest() {
  int failures = 0;
  auto expect = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    failures += !ok;
  };
  auto guarded = [&](const std::string& name, const std::function<bool()>& fn) {
    try {
      expect(name, fn());
    } catch (const std::exception& e) {
      std::cout << "FAIL " << name << ": " << e.what() << '\n';
      ++failures;
    }
  };

  guarded("unification example", [] {
    ParseOptions o;
    o.free_vars = {"x", "y", "z"};
    auto r = unify_atoms(parse_formula("P(x, f(a,y))", o), parse_formula("P(a, f(z,b))", o));
    return r && print(*r.mgu) == "{x->a, y->b, z->a}";
  });
  guarded("running example: outer Skolem form", [] {
    return print(skolemize_outer(parse_formula(kRunning))) ==
           "(!a. !b. !c. R(a,b) & R(b,c) -> R(a,c)) & (!x. !y. R(x,m_star(x,y)) & R(y,m_star(x,y))) -> "
           "?n. R(u_star,n) & R(v_star,n) & R(w_star,n)";
  });
  auto t1 = parse_term("m_star(v_star,w_star)");
  auto t2 = parse_term("m_star(u_star,m_star(v_star,w_star))");
  std::vector<Substitution> witness{
      {{"a", parse_term("v_star")}, {"b", t1}, {"c", t2}, {"x", parse_term("v_star")}, {"y", parse_term("w_star")}, {"n", t2}},
      {{"a", parse_term("w_star")}, {"b", t1}, {"c", t2}, {"x", parse_term("u_star")}, {"y", t1}, {"n", t2}}};
  guarded("running example: two instances form a tautology", [&] {
    auto f = parse_formula(kRunning);
    return check_instances(f, witness) && instance_dnf(f, witness).size() == 7;
  });
  guarded("running example: complexity 2 at order 4", [] {
    auto c = herbrand_complexity(parse_formula(kRunning), 4, 3);
    return c && c->k == 2;
  });
  guarded("running example: derivation without modus ponens", [&] {
    auto d = mp_eliminate(parse_formula(kRunning), witness);
    return !check(d) && d.count(RuleTag::ModusPonens) == 0 &&
           check_first_step_membership(parse_formula(kRunning), d, 4).ok;
  });
  guarded("champ fini of order 4 has 147 terms", [] {
    Signature sig;
    sig.functions = {{"u_star", 0}, {"v_star", 0}, {"w_star", 0}, {"m_star", 2}};
    return champ_fini(sig, 4).size() == 147;
  });
  guarded("order 2 witness {x->y_star}", [] {
    auto f = parse_formula("(?x. P(x)) | ~?y. P(y)");
    auto c = herbrand_complexity(f, 2, 1);
    return print(skolemize_outer(f)) == "(?x. P(x)) | ~P(y_star)" && !property_c(f, 1).holds &&
           property_c(f, 2).holds && c && print(c->substitutions.at(0)) == "{x->y_star}";
  });
  guarded("one Passage step raises the order of Property C", [] {
    auto g = rectify(parse_formula("((?x. P(x)) & !y. Q(y)) | ~(?x. P(x)) | ~!y. Q(y)"));
    Path at;
    for (const auto& p : all_paths(g))
      if (subformula_at(g, p).kind() == Kind::And) {
        at = p;
        break;
      }
    auto moved = passage(g, at, 5, Direction::Prenex);
    return property_c(g, 2).holds && !property_c(moved, 2).holds && property_c(moved, 3).holds;
  });
  guarded("monotone replacement refuses a negative position", [] {
    Derivation d;
    Step s;
    s.formula = parse_formula("P(a) -> P(a)");
    d.steps.push_back(s);
    try {
      monotone_replace(d, parse_formula("~T"), {0});
    } catch (const std::invalid_argument&) {
      return true;
    }
    return false;
  });
  guarded("arithmetic axioms", [] {
    return arith::decide(parse_formula("!x. S(x) != 0")) == arith::Verdict::Derivable &&
           arith::decide(parse_formula("?x. S(x) = x")) == arith::Verdict::Refutable &&
           arith::decide(arith::axiom(arith::AxiomTag::Nat1)) == arith::Verdict::Derivable &&
           arith::decide(parse_formula("0 != 0")) == arith::Verdict::Refutable;
  });
  guarded("Goedel-Dreben order", [] { return godel_dreben_order(2, 2, 4) == 578; });
  std::cout << (failures ? "selftest failed: " + std::to_string(failures) : std::string("selftest ok")) << '\n';
  return failures ? kGaveUp : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Herbrand workbench"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Input in;
  Common common;
  std::string method = "resolution", proof_out, pass, guard, t1, t2, vars, path, sentence;
  std::size_t order = 2, k_max = 4;

  auto* prove = app.add_subcommand("prove", "Search for a proof");
  in.add_to(prove);
  common.add_to(prove);
  prove->add_option("--method", method, "gilmore | dp | resolution | race")
      ->check(CLI::IsMember({"gilmore", "dp", "resolution", "race"}));
  prove->add_option("--max-order", common.max_order, "Largest order tried");
  prove->add_option("--proof-out", proof_out, "Write the derivation without modus ponens");
  prove->add_flag("--dual", common.dual, "Validity-side reading of resolution traces");

  auto* transform = app.add_subcommand("transform", "Apply a formula transformation");
  in.add_to(transform);
  transform->add_option("--pass", pass, "prenex | antiprenex | skolem-outer | skolem-inner | relativize | rectify")
      ->required();
  transform->add_option("--guard", guard, "Guard predicate for relativize");
  transform->add_flag("--json", common.as_json);

  auto* expand_cmd = app.add_subcommand("expand", "Dump the order-n expansion");
  in.add_to(expand_cmd);
  common.add_to(expand_cmd);
  expand_cmd->add_option("-n,--order", order, "Order")->required();

  auto* complexity = app.add_subcommand("complexity", "Least number of instances at order n");
  in.add_to(complexity);
  common.add_to(complexity);
  complexity->add_option("-n,--order", order, "Order")->required();
  complexity->add_option("--max-k", k_max, "Largest instance count tried");

  auto* unify_cmd = app.add_subcommand("unify", "Most general unifier of two terms");
  unify_cmd->add_option("left", t1)->required();
  unify_cmd->add_option("right", t2)->required();
  unify_cmd->add_option("--vars", vars, "Variables, comma separated")->default_str("x,y,z,u,v,w");
  unify_cmd->add_flag("--json", common.as_json);
  vars = "x,y,z,u,v,w";

  auto* check_cmd = app.add_subcommand("check", "Check a derivation file");
  check_cmd->add_option("file", path)->required();
  check_cmd->add_flag("--json", common.as_json);

  auto* arith_cmd = app.add_subcommand("arith", "Successor arithmetic");
  arith_cmd->require_subcommand(1);
  auto* decide = arith_cmd->add_subcommand("decide", "Decide a closed sentence");
  decide->add_option("sentence", sentence, "Sentence or file")->required();
  decide->add_flag("--json", common.as_json);

  auto* selftest = app.add_subcommand("selftest", "Run the built-in example suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kError;
  }

  try {
    if (*prove) return cmd_prove(in.load(), method, common, proof_out);
    if (*transform) return cmd_transform(in.load(), pass, guard, common.as_json);
    if (*expand_cmd) return cmd_expand(in.load(), order, common);
    if (*complexity) return cmd_complexity(in.load(), order, k_max, common);
    if (*unify_cmd) return cmd_unify(t1, t2, vars, common.as_json);
    if (*check_cmd) return cmd_check(path, common.as_json);
    if (*decide) return cmd_arith(sentence, common.as_json);
    if (*selftest) return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kError;
}
