#include "pps/syntax.hpp"

#include "pps/errors.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

namespace pps {

std::string lit_to_string(const Lit &l) {
  return std::visit(
      overloaded{
          [](long long n) { return std::to_string(n); },
          [](bool b) { return std::string(b ? "true" : "false"); },
          [](const std::vector<long long> &xs) {
            std::string s = "[";
            for (std::size_t i = 0; i < xs.size(); ++i) {
              if (i) s += "; ";
              s += std::to_string(xs[i]);
            }
            return s + "]";
          }},
      l.v);
}

bool Obs::operator==(const Obs &o) const { return v == o.v; }

std::string Obs::str(bool compact) const {
  return std::visit(
      overloaded{
          [](long long n) { return std::to_string(n); },
          [](bool b) { return std::string(b ? "true" : "false"); },
          [&](const std::vector<Obs> &xs) {
            std::string s = "[";
            for (std::size_t i = 0; i < xs.size(); ++i) {
              if (i) s += compact ? ";" : "; ";
              s += xs[i].str(compact);
            }
            return s + "]";
          }},
      v);
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

namespace src {

TermPtr make(Node n) { return std::make_shared<const Term>(Term{std::move(n)}); }
TermPtr var(std::string name) { return make(Var{std::move(name)}); }
TermPtr constant(Lit v) { return make(Const{std::move(v)}); }
TermPtr integer(long long n) { return constant(Lit{n}); }
TermPtr boolean(bool b) { return constant(Lit{b}); }
TermPtr intlist(std::vector<long long> xs) {
  return constant(Lit{std::move(xs)});
}
TermPtr lam(std::string x, TermPtr body) {
  return make(Lam{std::move(x), std::move(body)});
}
TermPtr app(TermPtr fn, TermPtr arg) {
  return make(App{std::move(fn), std::move(arg)});
}
TermPtr let_(std::string x, TermPtr v, TermPtr body) {
  return make(Let{std::move(x), std::move(v), std::move(body)});
}
TermPtr shift(std::string k, TermPtr body) {
  return make(Shift{std::move(k), std::move(body)});
}
TermPtr throw_(std::string k, TermPtr arg) {
  return make(Throw{std::move(k), std::move(arg)});
}
TermPtr reset(TermPtr body) { return make(Reset{std::move(body)}); }
TermPtr add(TermPtr l, TermPtr r) {
  return make(Add{std::move(l), std::move(r)});
}
TermPtr if_(TermPtr c, TermPtr t, TermPtr e) {
  return make(If{std::move(c), std::move(t), std::move(e)});
}
TermPtr fix(std::string f, std::string x, TermPtr body) {
  return make(Fix{std::move(f), std::move(x), std::move(body)});
}
TermPtr nil() { return make(Nil{}); }
TermPtr cons(TermPtr h, TermPtr t) {
  return make(Cons{std::move(h), std::move(t)});
}
TermPtr head(TermPtr a) { return make(Head{std::move(a)}); }
TermPtr tail(TermPtr a) { return make(Tail{std::move(a)}); }
TermPtr isnil(TermPtr a) { return make(IsNil{std::move(a)}); }

bool is_value(const TermPtr &t) {
  return std::visit(overloaded{[](const Var &) { return true; },
                               [](const Const &) { return true; },
                               [](const Lam &) { return true; },
                               [](const Fix &) { return true; },
                               [](const Nil &) { return true; },
                               [](const Cons &c) {
                                 return is_value(c.head) && is_value(c.tail);
                               },
                               [](const auto &) { return false; }},
                    t->node);
}

bool is_let_value(const TermPtr &t) {
  return std::visit(overloaded{[](const Var &) { return true; },
                               [](const Const &) { return true; },
                               [](const Lam &) { return true; },
                               [](const Fix &) { return true; },
                               [](const Nil &) { return true; },
                               [](const auto &) { return false; }},
                    t->node);
}

Purity classify_purity(const TermPtr &t) {
  auto pure = [](const TermPtr &s) {
    return classify_purity(s) == Purity::Pure;
  };
  return std::visit(
      overloaded{
          [](const Var &) { return Purity::Pure; },
          [](const Const &) { return Purity::Pure; },
          [](const Lam &) { return Purity::Pure; },
          [](const Fix &) { return Purity::Pure; },
          [](const Reset &) { return Purity::Pure; },
          [](const Throw &) { return Purity::Pure; },
          [](const Nil &) { return Purity::Pure; },
          [&](const Cons &c) {
            return pure(c.head) && pure(c.tail) ? Purity::Pure
                                                : Purity::Effectful;
          },
          [&](const Head &h) {
            return pure(h.arg) ? Purity::Pure : Purity::Effectful;
          },
          [&](const Tail &h) {
            return pure(h.arg) ? Purity::Pure : Purity::Effectful;
          },
          [&](const IsNil &h) {
            return pure(h.arg) ? Purity::Pure : Purity::Effectful;
          },
          [](const Let &l) {
            Purity b = classify_purity(l.body);
            return b == Purity::Effectful ? Purity::Effectful : Purity::QPure;
          },
          [](const auto &) { return Purity::Effectful; }},
      t->node);
}

} // namespace src

namespace tgt {

TermPtr make(Node n) { return std::make_shared<const Term>(Term{std::move(n)}); }
TermPtr var(std::string name) { return make(Var{std::move(name)}); }
TermPtr constant(Lit v) { return make(Const{std::move(v)}); }
TermPtr integer(long long n) { return constant(Lit{n}); }
TermPtr boolean(bool b) { return constant(Lit{b}); }
TermPtr intlist(std::vector<long long> xs) {
  return constant(Lit{std::move(xs)});
}
TermPtr lam(std::string x, TermPtr body) {
  return make(Lam{std::move(x), std::move(body)});
}
TermPtr app(TermPtr fn, TermPtr arg) {
  return make(App{std::move(fn), std::move(arg)});
}
TermPtr let_(std::string x, TermPtr v, TermPtr body) {
  return make(Let{std::move(x), std::move(v), std::move(body)});
}
TermPtr shiftp(TermPtr prompt, std::string k, TermPtr body) {
  return make(ShiftP{std::move(prompt), std::move(k), std::move(body)});
}
TermPtr resetp(TermPtr prompt, TermPtr body) {
  return make(ResetP{std::move(prompt), std::move(body)});
}
TermPtr newprompt(std::string p, TermPtr body) {
  return make(NewPrompt{std::move(p), std::move(body)});
}
TermPtr omega() { return make(Omega{}); }
TermPtr prompt_const(long long id) { return make(PromptConst{id}); }
TermPtr add(TermPtr l, TermPtr r) {
  return make(Add{std::move(l), std::move(r)});
}
TermPtr if_(TermPtr c, TermPtr t, TermPtr e) {
  return make(If{std::move(c), std::move(t), std::move(e)});
}
TermPtr fix(std::string f, std::string x, TermPtr body) {
  return make(Fix{std::move(f), std::move(x), std::move(body)});
}
TermPtr nil() { return make(Nil{}); }
TermPtr cons(TermPtr h, TermPtr t) {
  return make(Cons{std::move(h), std::move(t)});
}
TermPtr head(TermPtr a) { return make(Head{std::move(a)}); }
TermPtr tail(TermPtr a) { return make(Tail{std::move(a)}); }
TermPtr isnil(TermPtr a) { return make(IsNil{std::move(a)}); }

bool is_value(const TermPtr &t) {
  return std::visit(overloaded{[](const Var &) { return true; },
                               [](const Const &) { return true; },
                               [](const Lam &) { return true; },
                               [](const Fix &) { return true; },
                               [](const Nil &) { return true; },
                               [](const PromptConst &) { return true; },
                               [](const Cons &c) {
                                 return is_value(c.head) && is_value(c.tail);
                               },
                               [](const auto &) { return false; }},
                    t->node);
}

bool is_let_value(const TermPtr &t) {
  return std::visit(overloaded{[](const Var &) { return true; },
                               [](const Const &) { return true; },
                               [](const Lam &) { return true; },
                               [](const Fix &) { return true; },
                               [](const Nil &) { return true; },
                               [](const PromptConst &) { return true; },
                               [](const auto &) { return false; }},
                    t->node);
}

} // namespace tgt

// ---------------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Kind { Int, Ident, Sym, End } kind = End;
  std::string text;
  long long ival = 0;
  int line = 1;
  int col = 1;
};

struct Lexer {
  explicit Lexer(const std::string &text) : src(text) { advance(); }

  const Token &peek() const { return tok; }

  Token next() {
    Token t = tok;
    advance();
    return t;
  }

private:
  void advance() {
    skip_space_and_comments();
    tok = Token{};
    tok.line = line;
    tok.col = col;
    if (pos >= src.size()) {
      tok.kind = Token::End;
      return;
    }
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos])))
        digits += get();
      tok.kind = Token::Int;
      tok.text = digits;
      tok.ival = std::stoll(digits);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) ||
              src[pos] == '_' || src[pos] == '\''))
        id += get();
      tok.kind = Token::Ident;
      tok.text = id;
      return;
    }
    // multi-char symbols first
    if (c == ':' && pos + 1 < src.size() && src[pos + 1] == ':') {
      get();
      get();
      tok.kind = Token::Sym;
      tok.text = "::";
      return;
    }
    if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
      get();
      get();
      tok.kind = Token::Sym;
      tok.text = "->";
      return;
    }
    if (std::string("()[];+=#").find(c) != std::string::npos) {
      tok.kind = Token::Sym;
      tok.text = std::string(1, get());
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line,
                      col);
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos < src.size() &&
             std::isspace(static_cast<unsigned char>(src[pos])))
        get();
      if (pos + 1 < src.size() && src[pos] == '(' && src[pos + 1] == '*') {
        int start_line = line, start_col = col;
        get();
        get();
        int depth = 1;
        while (depth > 0) {
          if (pos >= src.size())
            throw SyntaxError("unterminated comment", start_line, start_col);
          if (pos + 1 < src.size() && src[pos] == '(' && src[pos + 1] == '*') {
            get();
            get();
            ++depth;
          } else if (pos + 1 < src.size() && src[pos] == '*' &&
                     src[pos + 1] == ')') {
            get();
            get();
            --depth;
          } else {
            get();
          }
        }
        continue;
      }
      break;
    }
  }

  char get() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  const std::string &src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;
  Token tok;
};

const std::set<std::string> kSourceKeywords = {
    "fun",  "let",  "in",   "shift", "throw", "reset", "fix",  "if",
    "then", "else", "true", "false", "head",  "tail",  "isnil"};

const std::set<std::string> kTargetKeywords = {
    "fun",  "let",  "in",    "shift", "reset", "fix",   "if",    "then",
    "else", "true", "false", "head",  "tail",  "isnil", "omega", "newp"};

// ---------------------------------------------------------------------------
// parsers
// ---------------------------------------------------------------------------

template <bool IsTarget> struct Parser {
  using T = std::conditional_t<IsTarget, tgt::TermPtr, src::TermPtr>;

  explicit Parser(const std::string &text) : lex(text) {}

  T parse_program() {
    T t = parse_expr();
    if (lex.peek().kind != Token::End)
      fail("trailing input after expression");
    return t;
  }

  T parse_expr() {
    const Token &t = lex.peek();
    if (is_kw(t, "fun")) {
      lex.next();
      std::string x = expect_ident();
      expect_sym("->");
      return mk_lam(x, parse_expr());
    }
    if (is_kw(t, "fix")) {
      lex.next();
      std::string f = expect_ident();
      std::string x = expect_ident();
      expect_sym("->");
      return mk_fix(f, x, parse_expr());
    }
    if (is_kw(t, "shift")) {
      lex.next();
      return parse_shift_rest();
    }
    if constexpr (IsTarget) {
      if (is_kw(t, "newp")) {
        lex.next();
        std::string p = expect_ident();
        expect_kw("in");
        return tgt::newprompt(p, parse_expr());
      }
    }
    if (is_kw(t, "let")) {
      Token let_tok = lex.next();
      std::string x = expect_ident();
      expect_sym("=");
      T v = parse_expr();
      if (!value_ok(v))
        throw SyntaxError("let binds a syntactic value (variable, constant, "
                          "or function)",
                          let_tok.line, let_tok.col);
      expect_kw("in");
      return mk_let(x, v, parse_expr());
    }
    if (is_kw(t, "if")) {
      lex.next();
      T c = parse_expr();
      expect_kw("then");
      T th = parse_expr();
      expect_kw("else");
      return mk_if(c, th, parse_expr());
    }
    return parse_cons();
  }

  // binder forms may appear bare to the right of an operator, swallowing
  // the rest of the expression: `5 + shift k -> e` parses as 5 + (shift ...)
  bool starts_binder(const Token &t) const {
    if (t.kind != Token::Ident) return false;
    return t.text == "fun" || t.text == "fix" || t.text == "shift" ||
           t.text == "let" || t.text == "if" || (IsTarget && t.text == "newp");
  }

  T parse_cons() {
    T l = parse_add();
    if (lex.peek().kind == Token::Sym && lex.peek().text == "::") {
      lex.next();
      if (starts_binder(lex.peek())) return mk_cons(l, parse_expr());
      return mk_cons(l, parse_cons());
    }
    return l;
  }

  T parse_add() {
    T acc = parse_app();
    while (lex.peek().kind == Token::Sym && lex.peek().text == "+") {
      lex.next();
      if (starts_binder(lex.peek())) return mk_add(acc, parse_expr());
      acc = mk_add(acc, parse_app());
    }
    return acc;
  }

  T parse_app() {
    T acc = parse_item();
    while (starts_item(lex.peek()))
      acc = mk_app(acc, parse_item());
    return acc;
  }

  T parse_item() {
    const Token &t = lex.peek();
    if (is_kw(t, "reset")) {
      lex.next();
      if constexpr (IsTarget) {
        expect_sym("[");
        T p = parse_atom();
        expect_sym("]");
        return tgt::resetp(p, parse_atom());
      } else {
        return src::reset(parse_atom());
      }
    }
    if (is_kw(t, "head")) {
      lex.next();
      return mk_head(parse_atom());
    }
    if (is_kw(t, "tail")) {
      lex.next();
      return mk_tail(parse_atom());
    }
    if (is_kw(t, "isnil")) {
      lex.next();
      return mk_isnil(parse_atom());
    }
    if constexpr (!IsTarget) {
      if (is_kw(t, "throw")) {
        lex.next();
        std::string k = expect_ident();
        return src::throw_(k, parse_atom());
      }
    }
    return parse_atom();
  }

  T parse_atom() {
    Token t = lex.peek();
    if (t.kind == Token::Int) {
      lex.next();
      return mk_int(t.ival);
    }
    if (t.kind == Token::Sym && t.text == "(") {
      lex.next();
      T e = parse_expr();
      expect_sym(")");
      return e;
    }
    if (t.kind == Token::Sym && t.text == "[")
      return parse_list_literal();
    if constexpr (IsTarget) {
      if (t.kind == Token::Sym && t.text == "#") {
        lex.next();
        Token n = lex.next();
        if (n.kind != Token::Int)
          throw SyntaxError("expected prompt id after '#'", n.line, n.col);
        return tgt::prompt_const(n.ival);
      }
      if (is_kw(t, "omega")) {
        lex.next();
        return tgt::omega();
      }
    }
    if (is_kw(t, "true")) {
      lex.next();
      return mk_bool(true);
    }
    if (is_kw(t, "false")) {
      lex.next();
      return mk_bool(false);
    }
    if (t.kind == Token::Ident && !keyword(t.text)) {
      lex.next();
      return mk_var(t.text);
    }
    throw SyntaxError("expected an expression, found '" +
                          (t.kind == Token::End ? "end of input" : t.text) +
                          "'",
                      t.line, t.col);
  }

  T parse_list_literal() {
    Token open = lex.next(); // '['
    std::vector<long long> xs;
    if (lex.peek().kind == Token::Sym && lex.peek().text == "]") {
      lex.next();
      return mk_nil();
    }
    for (;;) {
      Token n = lex.next();
      if (n.kind != Token::Int)
        throw SyntaxError("list literals hold integers only", n.line, n.col);
      xs.push_back(n.ival);
      Token s = lex.next();
      if (s.kind == Token::Sym && s.text == "]") break;
      if (!(s.kind == Token::Sym && s.text == ";"))
        throw SyntaxError("expected ';' or ']' in list literal", s.line,
                          s.col);
    }
    (void)open;
    return mk_list(xs);
  }

  T parse_shift_rest() {
    if constexpr (IsTarget) {
      expect_sym("[");
      T p = parse_atom();
      expect_sym("]");
      std::string k = expect_ident();
      expect_sym("->");
      return tgt::shiftp(p, k, parse_expr());
    } else {
      std::string k = expect_ident();
      expect_sym("->");
      return src::shift(k, parse_expr());
    }
  }

  // -- helpers ---------------------------------------------------------------

  bool keyword(const std::string &s) const {
    return IsTarget ? kTargetKeywords.count(s) > 0
                    : kSourceKeywords.count(s) > 0;
  }

  bool is_kw(const Token &t, const char *kw) const {
    return t.kind == Token::Ident && t.text == kw;
  }

  bool starts_item(const Token &t) const {
    if (t.kind == Token::Int) return true;
    if (t.kind == Token::Sym)
      return t.text == "(" || t.text == "[" || (IsTarget && t.text == "#");
    if (t.kind != Token::Ident) return false;
    if (!keyword(t.text)) return true;
    if (t.text == "reset" || t.text == "head" || t.text == "tail" ||
        t.text == "isnil" || t.text == "true" || t.text == "false")
      return true;
    if (!IsTarget && t.text == "throw") return true;
    if (IsTarget && t.text == "omega") return true;
    return false;
  }

  std::string expect_ident() {
    Token t = lex.next();
    if (t.kind != Token::Ident || keyword(t.text))
      throw SyntaxError("expected identifier, found '" + t.text + "'", t.line,
                        t.col);
    return t.text;
  }

  void expect_sym(const char *s) {
    Token t = lex.next();
    if (t.kind != Token::Sym || t.text != s)
      throw SyntaxError(std::string("expected '") + s + "', found '" + t.text +
                            "'",
                        t.line, t.col);
  }

  void expect_kw(const char *kw) {
    Token t = lex.next();
    if (t.kind != Token::Ident || t.text != kw)
      throw SyntaxError(std::string("expected '") + kw + "', found '" +
                            t.text + "'",
                        t.line, t.col);
  }

  [[noreturn]] void fail(const std::string &msg) {
    throw SyntaxError(msg, lex.peek().line, lex.peek().col);
  }

  // node constructors dispatched by language
  T mk_var(const std::string &n) {
    if constexpr (IsTarget) return tgt::var(n);
    else return src::var(n);
  }
  T mk_int(long long n) {
    if constexpr (IsTarget) return tgt::integer(n);
    else return src::integer(n);
  }
  T mk_bool(bool b) {
    if constexpr (IsTarget) return tgt::boolean(b);
    else return src::boolean(b);
  }
  T mk_list(std::vector<long long> xs) {
    if constexpr (IsTarget) return tgt::intlist(std::move(xs));
    else return src::intlist(std::move(xs));
  }
  T mk_nil() {
    if constexpr (IsTarget) return tgt::nil();
    else return src::nil();
  }
  T mk_lam(const std::string &x, T b) {
    if constexpr (IsTarget) return tgt::lam(x, b);
    else return src::lam(x, b);
  }
  T mk_fix(const std::string &f, const std::string &x, T b) {
    if constexpr (IsTarget) return tgt::fix(f, x, b);
    else return src::fix(f, x, b);
  }
  T mk_let(const std::string &x, T v, T b) {
    if constexpr (IsTarget) return tgt::let_(x, v, b);
    else return src::let_(x, v, b);
  }
  T mk_if(T c, T t, T e) {
    if constexpr (IsTarget) return tgt::if_(c, t, e);
    else return src::if_(c, t, e);
  }
  T mk_app(T f, T a) {
    if constexpr (IsTarget) return tgt::app(f, a);
    else return src::app(f, a);
  }
  T mk_add(T l, T r) {
    if constexpr (IsTarget) return tgt::add(l, r);
    else return src::add(l, r);
  }
  T mk_cons(T h, T t) {
    if constexpr (IsTarget) return tgt::cons(h, t);
    else return src::cons(h, t);
  }
  T mk_head(T a) {
    if constexpr (IsTarget) return tgt::head(a);
    else return src::head(a);
  }
  T mk_tail(T a) {
    if constexpr (IsTarget) return tgt::tail(a);
    else return src::tail(a);
  }
  T mk_isnil(T a) {
    if constexpr (IsTarget) return tgt::isnil(a);
    else return src::isnil(a);
  }

  bool value_ok(const T &v) const {
    if constexpr (IsTarget) return tgt::is_let_value(v);
    else return src::is_let_value(v);
  }

  Lexer lex;
};

// Continuation-variable discipline: throw's k must be bound by an enclosing
// shift, and a shift-bound name cannot be used as an ordinary variable.
void resolve_conts(const src::TermPtr &t, std::set<std::string> vars,
                   std::set<std::string> conts) {
  using namespace src;
  std::visit(
      overloaded{
          [&](const Var &v) {
            if (conts.count(v.name))
              throw ScopeError("continuation '" + v.name +
                               "' used as an ordinary value; write 'fun x -> "
                               "throw " +
                               v.name + " x'");
          },
          [&](const Const &) {},
          [&](const Nil &) {},
          [&](const Lam &l) {
            auto vs = vars;
            auto cs = conts;
            vs.insert(l.param);
            cs.erase(l.param);
            resolve_conts(l.body, vs, cs);
          },
          [&](const Fix &f) {
            auto vs = vars;
            auto cs = conts;
            vs.insert(f.self);
            vs.insert(f.param);
            cs.erase(f.self);
            cs.erase(f.param);
            resolve_conts(f.body, vs, cs);
          },
          [&](const Let &l) {
            resolve_conts(l.value, vars, conts);
            auto vs = vars;
            auto cs = conts;
            vs.insert(l.name);
            cs.erase(l.name);
            resolve_conts(l.body, vs, cs);
          },
          [&](const Shift &s) {
            auto vs = vars;
            auto cs = conts;
            cs.insert(s.k);
            vs.erase(s.k);
            resolve_conts(s.body, vs, cs);
          },
          [&](const Throw &th) {
            if (!conts.count(th.k))
              throw ScopeError("throw refers to '" + th.k +
                               "', which is not a continuation bound by an "
                               "enclosing shift");
            resolve_conts(th.arg, vars, conts);
          },
          [&](const App &a) {
            resolve_conts(a.fn, vars, conts);
            resolve_conts(a.arg, vars, conts);
          },
          [&](const Add &a) {
            resolve_conts(a.lhs, vars, conts);
            resolve_conts(a.rhs, vars, conts);
          },
          [&](const Cons &c) {
            resolve_conts(c.head, vars, conts);
            resolve_conts(c.tail, vars, conts);
          },
          [&](const Reset &r) { resolve_conts(r.body, vars, conts); },
          [&](const Head &h) { resolve_conts(h.arg, vars, conts); },
          [&](const Tail &h) { resolve_conts(h.arg, vars, conts); },
          [&](const IsNil &h) { resolve_conts(h.arg, vars, conts); },
          [&](const If &i) {
            resolve_conts(i.cond, vars, conts);
            resolve_conts(i.then_branch, vars, conts);
            resolve_conts(i.else_branch, vars, conts);
          }},
      t->node);
}

} // namespace

src::TermPtr parse_source(const std::string &text) {
  Parser<false> p(text);
  src::TermPtr t = p.parse_program();
  resolve_conts(t, {}, {});
  return t;
}

tgt::TermPtr parse_target(const std::string &text) {
  Parser<true> p(text);
  return p.parse_program();
}

// ---------------------------------------------------------------------------
// pretty printers
// ---------------------------------------------------------------------------

namespace {

// precedence: 0 binder bodies, 1 cons, 2 add, 3 application, 4 atoms
constexpr int kExpr = 0, kConsP = 1, kAddP = 2, kAppP = 3, kAtomP = 4;

void print_src(const src::TermPtr &t, int need, std::string &out);
void print_tgt(const tgt::TermPtr &t, int need, std::string &out);

void wrap(int prec, int need, const std::string &s, std::string &out) {
  if (prec < need)
    out += "(" + s + ")";
  else
    out += s;
}

void print_src(const src::TermPtr &t, int need, std::string &out) {
  using namespace src;
  std::string s;
  int prec = kAtomP;
  std::visit(
      overloaded{
          [&](const Var &v) { s = v.name; },
          [&](const Const &c) { s = lit_to_string(c.value); },
          [&](const Nil &) { s = "[]"; },
          [&](const Lam &l) {
            prec = kExpr;
            s = "fun " + l.param + " -> ";
            print_src(l.body, kExpr, s);
          },
          [&](const Fix &f) {
            prec = kExpr;
            s = "fix " + f.self + " " + f.param + " -> ";
            print_src(f.body, kExpr, s);
          },
          [&](const Shift &sh) {
            prec = kExpr;
            s = "shift " + sh.k + " -> ";
            print_src(sh.body, kExpr, s);
          },
          [&](const Let &l) {
            prec = kExpr;
            s = "let " + l.name + " = ";
            print_src(l.value, kExpr, s);
            s += " in ";
            print_src(l.body, kExpr, s);
          },
          [&](const If &i) {
            prec = kExpr;
            s = "if ";
            print_src(i.cond, kExpr, s);
            s += " then ";
            print_src(i.then_branch, kExpr, s);
            s += " else ";
            print_src(i.else_branch, kExpr, s);
          },
          [&](const Cons &c) {
            prec = kConsP;
            print_src(c.head, kAddP, s);
            s += " :: ";
            print_src(c.tail, kConsP, s);
          },
          [&](const Add &a) {
            prec = kAddP;
            print_src(a.lhs, kAddP, s);
            s += " + ";
            print_src(a.rhs, kAppP, s);
          },
          [&](const App &a) {
            prec = kAppP;
            print_src(a.fn, kAppP, s);
            s += " ";
            print_src(a.arg, kAtomP, s);
          },
          [&](const Reset &r) {
            prec = kAppP;
            s = "reset ";
            print_src(r.body, kAtomP, s);
          },
          [&](const Throw &th) {
            prec = kAppP;
            s = "throw " + th.k + " ";
            print_src(th.arg, kAtomP, s);
          },
          [&](const Head &h) {
            prec = kAppP;
            s = "head ";
            print_src(h.arg, kAtomP, s);
          },
          [&](const Tail &h) {
            prec = kAppP;
            s = "tail ";
            print_src(h.arg, kAtomP, s);
          },
          [&](const IsNil &h) {
            prec = kAppP;
            s = "isnil ";
            print_src(h.arg, kAtomP, s);
          }},
      t->node);
  wrap(prec, need, s, out);
}

void print_tgt(const tgt::TermPtr &t, int need, std::string &out) {
  using namespace tgt;
  std::string s;
  int prec = kAtomP;
  std::visit(
      overloaded{
          [&](const Var &v) { s = v.name; },
          [&](const Const &c) { s = lit_to_string(c.value); },
          [&](const Nil &) { s = "[]"; },
          [&](const Omega &) { s = "omega"; },
          [&](const PromptConst &p) { s = "#" + std::to_string(p.id); },
          [&](const Lam &l) {
            prec = kExpr;
            s = "fun " + l.param + " -> ";
            print_tgt(l.body, kExpr, s);
          },
          [&](const Fix &f) {
            prec = kExpr;
            s = "fix " + f.self + " " + f.param + " -> ";
            print_tgt(f.body, kExpr, s);
          },
          [&](const ShiftP &sh) {
            prec = kExpr;
            s = "shift[";
            print_tgt(sh.prompt, kExpr, s);
            s += "] " + sh.k + " -> ";
            print_tgt(sh.body, kExpr, s);
          },
          [&](const NewPrompt &n) {
            prec = kExpr;
            s = "newp " + n.name + " in ";
            print_tgt(n.body, kExpr, s);
          },
          [&](const Let &l) {
            prec = kExpr;
            s = "let " + l.name + " = ";
            print_tgt(l.value, kExpr, s);
            s += " in ";
            print_tgt(l.body, kExpr, s);
          },
          [&](const If &i) {
            prec = kExpr;
            s = "if ";
            print_tgt(i.cond, kExpr, s);
            s += " then ";
            print_tgt(i.then_branch, kExpr, s);
            s += " else ";
            print_tgt(i.else_branch, kExpr, s);
          },
          [&](const Cons &c) {
            prec = kConsP;
            print_tgt(c.head, kAddP, s);
            s += " :: ";
            print_tgt(c.tail, kConsP, s);
          },
          [&](const Add &a) {
            prec = kAddP;
            print_tgt(a.lhs, kAddP, s);
            s += " + ";
            print_tgt(a.rhs, kAppP, s);
          },
          [&](const App &a) {
            prec = kAppP;
            print_tgt(a.fn, kAppP, s);
            s += " ";
            print_tgt(a.arg, kAtomP, s);
          },
          [&](const ResetP &r) {
            prec = kAppP;
            s = "reset[";
            print_tgt(r.prompt, kExpr, s);
            s += "] ";
            print_tgt(r.body, kAtomP, s);
          },
          [&](const Head &h) {
            prec = kAppP;
            s = "head ";
            print_tgt(h.arg, kAtomP, s);
          },
          [&](const Tail &h) {
            prec = kAppP;
            s = "tail ";
            print_tgt(h.arg, kAtomP, s);
          },
          [&](const IsNil &h) {
            prec = kAppP;
            s = "isnil ";
            print_tgt(h.arg, kAtomP, s);
          }},
      t->node);
  wrap(prec, need, s, out);
}

} // namespace

std::string pretty(const src::TermPtr &t) {
  std::string out;
  print_src(t, kExpr, out);
  return out;
}

std::string pretty(const tgt::TermPtr &t) {
  std::string out;
  print_tgt(t, kExpr, out);
  return out;
}

// ---------------------------------------------------------------------------
// alpha equivalence
// ---------------------------------------------------------------------------

namespace {

struct Binders {
  std::vector<std::pair<std::string, std::string>> stack;

  bool same_ref(const std::string &a, const std::string &b) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      bool la = it->first == a, rb = it->second == b;
      if (la || rb) return la && rb;
    }
    return a == b; // both free
  }
};

bool aeq(const src::TermPtr &a, const src::TermPtr &b, Binders &env) {
  using namespace src;
  if (a->node.index() != b->node.index()) return false;
  const auto &bn = b->node;
  return std::visit(
      overloaded{
          [&](const Var &x) { return env.same_ref(x.name, std::get<Var>(bn).name); },
          [&](const Const &c) { return c.value == std::get<Const>(bn).value; },
          [&](const Nil &) { return true; },
          [&](const Lam &l) {
            const auto &r = std::get<Lam>(bn);
            env.stack.push_back({l.param, r.param});
            bool ok = aeq(l.body, r.body, env);
            env.stack.pop_back();
            return ok;
          },
          [&](const Fix &f) {
            const auto &r = std::get<Fix>(bn);
            env.stack.push_back({f.self, r.self});
            env.stack.push_back({f.param, r.param});
            bool ok = aeq(f.body, r.body, env);
            env.stack.pop_back();
            env.stack.pop_back();
            return ok;
          },
          [&](const Shift &s) {
            const auto &r = std::get<Shift>(bn);
            env.stack.push_back({s.k, r.k});
            bool ok = aeq(s.body, r.body, env);
            env.stack.pop_back();
            return ok;
          },
          [&](const Throw &t) {
            const auto &r = std::get<Throw>(bn);
            return env.same_ref(t.k, r.k) && aeq(t.arg, r.arg, env);
          },
          [&](const Let &l) {
            const auto &r = std::get<Let>(bn);
            if (!aeq(l.value, r.value, env)) return false;
            env.stack.push_back({l.name, r.name});
            bool ok = aeq(l.body, r.body, env);
            env.stack.pop_back();
            return ok;
          },
          [&](const App &x) {
            const auto &r = std::get<App>(bn);
            return aeq(x.fn, r.fn, env) && aeq(x.arg, r.arg, env);
          },
          [&](const Add &x) {
            const auto &r = std::get<Add>(bn);
            return aeq(x.lhs, r.lhs, env) && aeq(x.rhs, r.rhs, env);
          },
          [&](const Cons &x) {
            const auto &r = std::get<Cons>(bn);
            return aeq(x.head, r.head, env) && aeq(x.tail, r.tail, env);
          },
          [&](const Reset &x) { return aeq(x.body, std::get<Reset>(bn).body, env); },
          [&](const Head &x) { return aeq(x.arg, std::get<Head>(bn).arg, env); },
          [&](const Tail &x) { return aeq(x.arg, std::get<Tail>(bn).arg, env); },
          [&](const IsNil &x) { return aeq(x.arg, std::get<IsNil>(bn).arg, env); },
          [&](const If &x) {
            const auto &r = std::get<If>(bn);
            return aeq(x.cond, r.cond, env) &&
                   aeq(x.then_branch, r.then_branch, env) &&
                   aeq(x.else_branch, r.else_branch, env);
          }},
      a->node);
}

bool aeq(const tgt::TermPtr &a, const tgt::TermPtr &b, Binders &env) {
  using namespace tgt;
  if (a->node.index() != b->node.index()) return false;
  const auto &bn = b->node;
  return std::visit(
      overloaded{
          [&](const Var &x) { return env.same_ref(x.name, std::get<Var>(bn).name); },
          [&](const Const &c) { return c.value == std::get<Const>(bn).value; },
          [&](const Nil &) { return true; },
          [&](const Omega &) { return true; },
          [&](const PromptConst &p) {
            return p.id == std::get<PromptConst>(bn).id;
          },
          [&](const Lam &l) {
            const auto &r = std::get<Lam>(bn);
            env.stack.push_back({l.param, r.param});
            bool ok = aeq(l.body, r.body, env);
            env.stack.pop_back();
            return ok;
          },
          [&](const Fix &f) {
            const auto &r = std::get<Fix>(bn);
            env.stack.push_back({f.self, r.self});
            env.stack.push_back({f.param, r.param});
            bool ok = aeq(f.body, r.body, env);
            env.stack.pop_back();
            env.stack.pop_back();
            return ok;
          },
          [&](const ShiftP &s) {
            const auto &r = std::get<ShiftP>(bn);
            if (!aeq(s.prompt, r.prompt, env)) return false;
            env.stack.push_back({s.k, r.k});
            bool ok = aeq(s.body, r.body, env);
            env.stack.pop_back();
            return ok;
          },
          [&](const ResetP &x) {
            const auto &r = std::get<ResetP>(bn);
            return aeq(x.prompt, r.prompt, env) && aeq(x.body, r.body, env);
          },
          [&](const NewPrompt &n) {
            const auto &r = std::get<NewPrompt>(bn);
            env.stack.push_back({n.name, r.name});
            bool ok = aeq(n.body, r.body, env);
            env.stack.pop_back();
            return ok;
          },
          [&](const Let &l) {
            const auto &r = std::get<Let>(bn);
            if (!aeq(l.value, r.value, env)) return false;
            env.stack.push_back({l.name, r.name});
            bool ok = aeq(l.body, r.body, env);
            env.stack.pop_back();
            return ok;
          },
          [&](const App &x) {
            const auto &r = std::get<App>(bn);
            return aeq(x.fn, r.fn, env) && aeq(x.arg, r.arg, env);
          },
          [&](const Add &x) {
            const auto &r = std::get<Add>(bn);
            return aeq(x.lhs, r.lhs, env) && aeq(x.rhs, r.rhs, env);
          },
          [&](const Cons &x) {
            const auto &r = std::get<Cons>(bn);
            return aeq(x.head, r.head, env) && aeq(x.tail, r.tail, env);
          },
          [&](const Head &x) { return aeq(x.arg, std::get<Head>(bn).arg, env); },
          [&](const Tail &x) { return aeq(x.arg, std::get<Tail>(bn).arg, env); },
          [&](const IsNil &x) { return aeq(x.arg, std::get<IsNil>(bn).arg, env); },
          [&](const If &x) {
            const auto &r = std::get<If>(bn);
            return aeq(x.cond, r.cond, env) &&
                   aeq(x.then_branch, r.then_branch, env) &&
                   aeq(x.else_branch, r.else_branch, env);
          }},
      a->node);
}

} // namespace

bool alpha_eq(const src::TermPtr &a, const src::TermPtr &b) {
  Binders env;
  return aeq(a, b, env);
}

bool alpha_eq(const tgt::TermPtr &a, const tgt::TermPtr &b) {
  Binders env;
  return aeq(a, b, env);
}

// ---------------------------------------------------------------------------
// sizes and name collection
// ---------------------------------------------------------------------------

std::size_t term_size(const src::TermPtr &t) {
  using namespace src;
  return 1 + std::visit(
                 overloaded{
                     [](const Var &) -> std::size_t { return 0; },
                     [](const Const &) -> std::size_t { return 0; },
                     [](const Nil &) -> std::size_t { return 0; },
                     [](const Lam &l) { return term_size(l.body); },
                     [](const Fix &f) { return term_size(f.body); },
                     [](const Shift &s) { return term_size(s.body); },
                     [](const Reset &r) { return term_size(r.body); },
                     [](const Throw &th) { return term_size(th.arg); },
                     [](const Head &h) { return term_size(h.arg); },
                     [](const Tail &h) { return term_size(h.arg); },
                     [](const IsNil &h) { return term_size(h.arg); },
                     [](const Let &l) {
                       return term_size(l.value) + term_size(l.body);
                     },
                     [](const App &a) {
                       return term_size(a.fn) + term_size(a.arg);
                     },
                     [](const Add &a) {
                       return term_size(a.lhs) + term_size(a.rhs);
                     },
                     [](const Cons &c) {
                       return term_size(c.head) + term_size(c.tail);
                     },
                     [](const If &i) {
                       return term_size(i.cond) + term_size(i.then_branch) +
                              term_size(i.else_branch);
                     }},
                 t->node);
}

std::size_t term_size(const tgt::TermPtr &t) {
  using namespace tgt;
  return 1 + std::visit(
                 overloaded{
                     [](const Var &) -> std::size_t { return 0; },
                     [](const Const &) -> std::size_t { return 0; },
                     [](const Nil &) -> std::size_t { return 0; },
                     [](const Omega &) -> std::size_t { return 0; },
                     [](const PromptConst &) -> std::size_t { return 0; },
                     [](const Lam &l) { return term_size(l.body); },
                     [](const Fix &f) { return term_size(f.body); },
                     [](const NewPrompt &n) { return term_size(n.body); },
                     [](const ShiftP &s) {
                       return term_size(s.prompt) + term_size(s.body);
                     },
                     [](const ResetP &r) {
                       return term_size(r.prompt) + term_size(r.body);
                     },
                     [](const Head &h) { return term_size(h.arg); },
                     [](const Tail &h) { return term_size(h.arg); },
                     [](const IsNil &h) { return term_size(h.arg); },
                     [](const Let &l) {
                       return term_size(l.value) + term_size(l.body);
                     },
                     [](const App &a) {
                       return term_size(a.fn) + term_size(a.arg);
                     },
                     [](const Add &a) {
                       return term_size(a.lhs) + term_size(a.rhs);
                     },
                     [](const Cons &c) {
                       return term_size(c.head) + term_size(c.tail);
                     },
                     [](const If &i) {
                       return term_size(i.cond) + term_size(i.then_branch) +
                              term_size(i.else_branch);
                     }},
                 t->node);
}

namespace {

void names_src(const src::TermPtr &t, std::set<std::string> &out) {
  using namespace src;
  std::visit(overloaded{[&](const Var &v) { out.insert(v.name); },
                        [&](const Const &) {},
                        [&](const Nil &) {},
                        [&](const Lam &l) {
                          out.insert(l.param);
                          names_src(l.body, out);
                        },
                        [&](const Fix &f) {
                          out.insert(f.self);
                          out.insert(f.param);
                          names_src(f.body, out);
                        },
                        [&](const Shift &s) {
                          out.insert(s.k);
                          names_src(s.body, out);
                        },
                        [&](const Throw &th) {
                          out.insert(th.k);
                          names_src(th.arg, out);
                        },
                        [&](const Let &l) {
                          out.insert(l.name);
                          names_src(l.value, out);
                          names_src(l.body, out);
                        },
                        [&](const Reset &r) { names_src(r.body, out); },
                        [&](const App &a) {
                          names_src(a.fn, out);
                          names_src(a.arg, out);
                        },
                        [&](const Add &a) {
                          names_src(a.lhs, out);
                          names_src(a.rhs, out);
                        },
                        [&](const Cons &c) {
                          names_src(c.head, out);
                          names_src(c.tail, out);
                        },
                        [&](const Head &h) { names_src(h.arg, out); },
                        [&](const Tail &h) { names_src(h.arg, out); },
                        [&](const IsNil &h) { names_src(h.arg, out); },
                        [&](const If &i) {
                          names_src(i.cond, out);
                          names_src(i.then_branch, out);
                          names_src(i.else_branch, out);
                        }},
             t->node);
}

void names_tgt(const tgt::TermPtr &t, std::set<std::string> &out) {
  using namespace tgt;
  std::visit(overloaded{[&](const Var &v) { out.insert(v.name); },
                        [&](const Const &) {},
                        [&](const Nil &) {},
                        [&](const Omega &) {},
                        [&](const PromptConst &) {},
                        [&](const Lam &l) {
                          out.insert(l.param);
                          names_tgt(l.body, out);
                        },
                        [&](const Fix &f) {
                          out.insert(f.self);
                          out.insert(f.param);
                          names_tgt(f.body, out);
                        },
                        [&](const ShiftP &s) {
                          out.insert(s.k);
                          names_tgt(s.prompt, out);
                          names_tgt(s.body, out);
                        },
                        [&](const ResetP &r) {
                          names_tgt(r.prompt, out);
                          names_tgt(r.body, out);
                        },
                        [&](const NewPrompt &n) {
                          out.insert(n.name);
                          names_tgt(n.body, out);
                        },
                        [&](const Let &l) {
                          out.insert(l.name);
                          names_tgt(l.value, out);
                          names_tgt(l.body, out);
                        },
                        [&](const App &a) {
                          names_tgt(a.fn, out);
                          names_tgt(a.arg, out);
                        },
                        [&](const Add &a) {
                          names_tgt(a.lhs, out);
                          names_tgt(a.rhs, out);
                        },
                        [&](const Cons &c) {
                          names_tgt(c.head, out);
                          names_tgt(c.tail, out);
                        },
                        [&](const Head &h) { names_tgt(h.arg, out); },
                        [&](const Tail &h) { names_tgt(h.arg, out); },
                        [&](const IsNil &h) { names_tgt(h.arg, out); },
                        [&](const If &i) {
                          names_tgt(i.cond, out);
                          names_tgt(i.then_branch, out);
                          names_tgt(i.else_branch, out);
                        }},
             t->node);
}

} // namespace

std::set<std::string> collect_names(const src::TermPtr &t) {
  std::set<std::string> out;
  names_src(t, out);
  return out;
}

std::set<std::string> collect_names(const tgt::TermPtr &t) {
  std::set<std::string> out;
  names_tgt(t, out);
  return out;
}

} // namespace pps
