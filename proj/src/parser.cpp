#include <cctype>
#include <map>

#include "herbrand/syntax.hpp"

namespace herbrand {

namespace {

enum class Tok {
  Ident, LParen, RParen, Comma, Dot, Not, And, Or, Implies, Iff, Forall, Exists, Eq, Neq, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::string describe(const Token& t) {
  return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      std::size_t l = line_, c = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      char ch = src_[pos_];
      auto two = src_.substr(pos_, 2);
      auto three = src_.substr(pos_, 3);
      if (three == "<->") {
        advance(3);
        out.push_back({Tok::Iff, "<->", l, c});
      } else if (two == "->") {
        advance(2);
        out.push_back({Tok::Implies, "->", l, c});
      } else if (two == "!=") {
        advance(2);
        out.push_back({Tok::Neq, "!=", l, c});
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '0') {
        std::size_t start = pos_;
        if (ch == '0') {
          advance(1);
        } else {
          while (pos_ < src_.size() &&
                 (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                  src_[pos_] == '#'))
            advance(1);
        }
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), l, c});
      } else if (ch == '[') {
        std::size_t start = pos_;
        int depth = 0;
        do {
          if (pos_ >= src_.size()) throw SyntaxError(l, c, "unterminated box variable");
          if (src_[pos_] == '[') ++depth;
          if (src_[pos_] == ']') --depth;
          advance(1);
        } while (depth > 0);
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), l, c});
      } else {
        Tok k;
        switch (ch) {
          case '(': k = Tok::LParen; break;
          case ')': k = Tok::RParen; break;
          case ',': k = Tok::Comma; break;
          case '.': k = Tok::Dot; break;
          case '~': k = Tok::Not; break;
          case '&': k = Tok::And; break;
          case '|': k = Tok::Or; break;
          case '!': k = Tok::Forall; break;
          case '?': k = Tok::Exists; break;
          case '=': k = Tok::Eq; break;
          default: throw SyntaxError(l, c, std::string("unexpected character '") + ch + "'");
        }
        advance(1);
        out.push_back({k, std::string(1, ch), l, c});
      }
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {
    if (opts_.free_vars.count(std::string(kLexicon)))
      throw SyntaxError(1, 1, "the lexicon variable 'l' may not be declared");
  }

  Formula formula() {
    auto f = iff();
    return f;
  }

  Term term() {
    const Token& t = expect(Tok::Ident, "a term");
    if (peek().kind == Tok::LParen) {
      next();
      std::vector<Term> args;
      args.push_back(term());
      while (peek().kind == Tok::Comma) {
        next();
        args.push_back(term());
      }
      expect(Tok::RParen, "')'");
      note_arity(fn_arity_, t, args.size(), "function");
      return Term::app(t.text, std::move(args));
    }
    if (t.text == kLexicon || is_box_name(t.text) || bound_.count(t.text) ||
        opts_.free_vars.count(t.text))
      return Term::var(t.text);
    note_arity(fn_arity_, t, 0, "function");
    return Term::app(t.text);
  }

  void finish() {
    if (peek().kind != Tok::End)
      throw SyntaxError(peek().line, peek().col, "unexpected " + describe(peek()));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw SyntaxError(peek().line, peek().col,
                        "expected " + what + " but found " + describe(peek()));
    return next();
  }

  void note_arity(std::map<std::string, std::size_t>& table, const Token& t, std::size_t n,
                  const char* role) {
    auto [it, fresh] = table.emplace(t.text, n);
    if (!fresh && it->second != n)
      throw ArityError(std::string(role) + " '" + t.text + "' used with arity " +
                       std::to_string(n) + " at line " + std::to_string(t.line) + ", column " +
                       std::to_string(t.col) + " but earlier with arity " +
                       std::to_string(it->second));
  }

  Formula iff() {
    auto lhs = implies();
    while (peek().kind == Tok::Iff) {
      next();
      auto rhs = implies();
      lhs = Formula::conj(Formula::implies(lhs, rhs), Formula::implies(rhs, lhs));
    }
    return lhs;
  }

  Formula implies() {
    auto lhs = disj();
    if (peek().kind == Tok::Implies) {
      next();
      return Formula::implies(lhs, implies());
    }
    return lhs;
  }

  Formula disj() {
    auto lhs = conj();
    while (peek().kind == Tok::Or) {
      next();
      lhs = Formula::disj(lhs, conj());
    }
    return lhs;
  }

  Formula conj() {
    auto lhs = unary();
    while (peek().kind == Tok::And) {
      next();
      lhs = Formula::conj(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not:
        next();
        return Formula::neg(unary());
      case Tok::Forall:
      case Tok::Exists: {
        Kind k = next().kind == Tok::Forall ? Kind::Forall : Kind::Exists;
        std::vector<std::string> vars;
        for (;;) {
          const Token& v = expect(Tok::Ident, "a variable");
          if (v.text == kLexicon)
            throw SyntaxError(v.line, v.col, "the lexicon variable 'l' may not be bound");
          if (v.text == "0") throw SyntaxError(v.line, v.col, "'0' cannot be bound");
          vars.push_back(v.text);
          if (peek().kind != Tok::Comma) break;
          next();
        }
        expect(Tok::Dot, "'.'");
        for (const auto& v : vars) bound_.insert(v);
        auto body = formula();
        for (const auto& v : vars) bound_.erase(bound_.find(v));
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::quant(k, *it, body);
        return body;
      }
      case Tok::LParen: {
        next();
        auto f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      default: return atom();
    }
  }

  Formula atom() {
    const Token& start = peek();
    if (start.kind != Tok::Ident)
      throw SyntaxError(start.line, start.col, "expected a formula but found " + describe(start));
    std::size_t save = pos_;
    auto saved_fn = fn_arity_;
    // An identifier is a predicate unless an (in)equation follows.
    auto lhs = term();
    if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
      bool negated = next().kind == Tok::Neq;
      auto rhs = term();
      note_arity(pred_arity_, start, 2, "predicate");
      auto f = Formula::eq(lhs, rhs);
      return negated ? Formula::neg(f) : f;
    }
    pos_ = save;
    fn_arity_ = std::move(saved_fn);
    const Token& name = next();
    if (is_box_name(name.text) || name.text == "0")
      throw SyntaxError(name.line, name.col, "expected a predicate but found " + describe(name));
    std::vector<Term> args;
    if (peek().kind == Tok::LParen) {
      next();
      args.push_back(term());
      while (peek().kind == Tok::Comma) {
        next();
        args.push_back(term());
      }
      expect(Tok::RParen, "')'");
    }
    note_arity(pred_arity_, name, args.size(), "predicate");
    return Formula::atom(name.text, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  std::multiset<std::string> bound_;
  std::map<std::string, std::size_t> fn_arity_;
  std::map<std::string, std::size_t> pred_arity_;
};

// ---- printer ----------------------------------------------------------------

int level(const Formula& f) {
  switch (f.kind()) {
    case Kind::Implies: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    default: return 4;
  }
}

bool is_eq(const Formula& f) { return f.is_atom() && f.name() == "=" && f.args().size() == 2; }

void print_rec(const Formula& f, bool rightmost, std::string& out);

void print_child(const Formula& c, bool parens, bool rightmost, std::string& out) {
  if (parens || (c.is_quantifier() && !rightmost)) {
    out += '(';
    print_rec(c, true, out);
    out += ')';
  } else {
    print_rec(c, rightmost, out);
  }
}

void print_rec(const Formula& f, bool rightmost, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom:
      if (is_eq(f)) {
        out += print(f.args()[0]) + " = " + print(f.args()[1]);
      } else {
        out += f.name();
        if (!f.args().empty()) {
          out += '(';
          for (std::size_t i = 0; i < f.args().size(); ++i) {
            if (i) out += ',';
            out += print(f.args()[i]);
          }
          out += ')';
        }
      }
      return;
    case Kind::Not:
      if (is_eq(f.body())) {
        out += print(f.body().args()[0]) + " != " + print(f.body().args()[1]);
        return;
      }
      out += '~';
      print_child(f.body(), level(f.body()) < 4, rightmost, out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: {
      int l = level(f);
      bool right_assoc = f.kind() == Kind::Implies;
      print_child(f.lhs(), right_assoc ? level(f.lhs()) <= l : level(f.lhs()) < l, false, out);
      out += f.kind() == Kind::And ? " & " : f.kind() == Kind::Or ? " | " : " -> ";
      print_child(f.rhs(), right_assoc ? level(f.rhs()) < l : level(f.rhs()) <= l, rightmost, out);
      return;
    }
    case Kind::Forall:
    case Kind::Exists:
      out += f.kind() == Kind::Forall ? '!' : '?';
      out += f.name();
      out += ". ";
      print_rec(f.body(), true, out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const ParseOptions& opts) {
  Parser p(Lexer(text).run(), opts);
  auto f = p.formula();
  p.finish();
  return f;
}

Term parse_term(std::string_view text, const ParseOptions& opts) {
  Parser p(Lexer(text).run(), opts);
  auto t = p.term();
  p.finish();
  return t;
}

std::string print(const Term& t) {
  if (t.is_var() || t.arity() == 0) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    out += print(t.args()[i]);
  }
  return out + ")";
}

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, true, out);
  return out;
}

std::string print(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += k + "->" + print(v);
  }
  return out + "}";
}

}  // namespace herbrand
