#include "sessc/syntax.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace sessc {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum Kind { Ident, Number, Sym, End } kind;
  std::string text;
  int line;
  int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < s.size(); ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (starts("//")) {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      while (j + 1 < s.size() && s[j] == '#' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Token::Ident, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    std::string sym;
    if (starts("<->")) sym = "<->";
    else if (starts("->")) sym = "->";
    else if (starts("-o") && (i + 2 >= s.size() || !ident_char(s[i + 2]))) sym = "-o";
    else if (starts("(+)")) sym = "(+)";
    else if (starts("(&)")) sym = "(&)";
    else if (std::string_view("!?~#@*|.,:;(){}[]=+&").find(c) != std::string_view::npos) sym = std::string(1, c);
    else throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    out.push_back({Token::Sym, sym, l, cl});
    advance(sym.size());
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

const std::set<std::string> kTermKeywords = {
    "fn",     "let",  "in",    "with",   "connect", "to",      "fork",    "serve",
    "recvty", "case", "send",  "receive", "select", "link",    "sendty",  "request"};

bool is_upper(const std::string &s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

// ---------------------------------------------------------------------------
// Recursive-descent parser over a token vector.

class Reader {
 public:
  Reader(std::vector<Token> toks, Parser *outer) : toks_(std::move(toks)), outer_(outer) {}

  const Token &peek(std::size_t k = 0) const {
    std::size_t j = std::min(pos_ + k, toks_.size() - 1);
    return toks_[j];
  }
  bool at_sym(const char *s, std::size_t k = 0) const {
    return peek(k).kind == Token::Sym && peek(k).text == s;
  }
  bool at_ident(const char *s, std::size_t k = 0) const {
    return peek(k).kind == Token::Ident && peek(k).text == s;
  }
  bool at_end() const { return peek().kind == Token::End; }
  [[noreturn]] void fail(const std::string &msg) const {
    const Token &t = peek();
    std::string got = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
  }
  void expect(const char *s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "'");
    ++pos_;
  }
  void expect_kw(const char *s) {
    if (!at_ident(s)) fail(std::string("expected '") + s + "'");
    ++pos_;
  }
  std::string ident(const char *what) {
    if (peek().kind != Token::Ident) fail(std::string("expected ") + what);
    return toks_[pos_++].text;
  }
  std::string binder_ident(const char *what) {
    std::string s = ident(what);
    if (kTermKeywords.count(s)) {
      --pos_;
      fail(std::string("expected ") + what);
    }
    return s;
  }
  SourceLoc loc() const { return {peek().line, peek().col}; }
  std::size_t pos() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }

  // ---- scopes
  Name bind(const std::string &base) {
    Name n = outer_->supply().fresh(base);
    scope_.emplace_back(base, n);
    return n;
  }
  void unbind(std::size_t n = 1) { scope_.resize(scope_.size() - n); }
  Name lookup(const std::string &base) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == base) return it->second;
    return outer_->free_name(base);
  }

  // ---- HGV types
  TypePtr type0() {
    TypePtr l = type1();
    if (at_sym("-o")) {
      ++pos_;
      return ty::lin_fun(l, type0());
    }
    if (at_sym("->")) {
      ++pos_;
      return ty::un_fun(l, type0());
    }
    return l;
  }
  TypePtr type1() {
    TypePtr l = type2();
    if (at_sym("*")) {
      ++pos_;
      return ty::tensor(l, type1());
    }
    return l;
  }
  TypeBranches type_branches() {
    expect("{");
    TypeBranches bs;
    std::set<std::string> seen;
    do {
      if (at_sym("}")) break;
      std::string l = ident("label");
      if (!seen.insert(l).second) fail("duplicate label " + l);
      expect(":");
      bs.emplace_back(Label{l}, type0());
    } while (at_sym(",") && (++pos_, true));
    expect("}");
    if (bs.empty()) fail("empty branch set");
    return bs;
  }
  TypePtr type2() {
    if (at_sym("!") || at_sym("?")) {
      bool out = peek().text == "!";
      ++pos_;
      if (at_sym(out ? "!" : "?")) {
        ++pos_;
        std::string x = ident("type variable");
        expect(".");
        TypePtr s = type2();
        return out ? ty::output_type(TypeVar{x}, s) : ty::input_type(TypeVar{x}, s);
      }
      TypePtr t = type2();
      expect(".");
      TypePtr s = type2();
      return out ? ty::output(t, s) : ty::input(t, s);
    }
    if (at_sym("(+)")) {
      ++pos_;
      return ty::select(type_branches());
    }
    if (at_sym("(&)")) {
      ++pos_;
      return ty::choice(type_branches());
    }
    if (at_sym("#")) {
      ++pos_;
      return ty::server(type2());
    }
    if (at_sym("@")) {
      ++pos_;
      return ty::service(type2());
    }
    if (at_sym("~")) {
      ++pos_;
      return ty::var(ident("type variable"), true);
    }
    if (at_sym("(")) {
      ++pos_;
      TypePtr t = type0();
      expect(")");
      return t;
    }
    if (at_ident("end") && (at_sym("!", 1) || at_sym("?", 1))) {
      bool out = peek(1).text == "!";
      pos_ += 2;
      return out ? ty::end_out() : ty::end_in();
    }
    if (peek().kind == Token::Ident) return ty::var(ident("type"));
    fail("expected a type");
  }

  // ---- CP propositions
  PropPtr prop0() {
    PropPtr l = prop1();
    if (at_sym("|")) {
      ++pos_;
      return pr::par(l, prop0());
    }
    return l;
  }
  PropPtr prop1() {
    PropPtr l = prop2();
    if (at_sym("*")) {
      ++pos_;
      return pr::tensor(l, prop1());
    }
    return l;
  }
  PropBranches prop_branches() {
    expect("{");
    PropBranches bs;
    std::set<std::string> seen;
    do {
      if (at_sym("}")) break;
      std::string l = ident("label");
      if (!seen.insert(l).second) fail("duplicate label " + l);
      expect(":");
      bs.emplace_back(Label{l}, prop0());
    } while (at_sym(",") && (++pos_, true));
    expect("}");
    if (bs.empty()) fail("empty branch set");
    return bs;
  }
  bool prop_start() const {
    if (peek().kind == Token::Number) return true;
    if (peek().kind == Token::Ident) return true;
    return at_sym("!") || at_sym("?") || at_sym("+") || at_sym("&") || at_sym("~") || at_sym("(");
  }
  PropPtr prop2() {
    if (at_sym("!")) {
      ++pos_;
      return pr::of_course(prop2());
    }
    if (at_sym("?")) {
      ++pos_;
      return pr::why_not(prop2());
    }
    if (at_sym("+")) {
      ++pos_;
      return pr::plus(prop_branches());
    }
    if (at_sym("&")) {
      ++pos_;
      return pr::with(prop_branches());
    }
    if (at_sym("~")) {
      ++pos_;
      return pr::var(ident("type variable"), true);
    }
    if (at_sym("(")) {
      ++pos_;
      PropPtr a = prop0();
      expect(")");
      return a;
    }
    if (peek().kind == Token::Number) {
      if (peek().text != "1") fail("expected a proposition");
      ++pos_;
      return pr::one();
    }
    if (at_ident("bot")) {
      ++pos_;
      return pr::bottom();
    }
    if (at_ident("ex") || at_ident("all")) {
      bool ex = peek().text == "ex";
      ++pos_;
      std::string x = ident("type variable");
      expect(".");
      PropPtr body = prop0();
      return ex ? pr::exists(TypeVar{x}, body) : pr::forall(TypeVar{x}, body);
    }
    if (peek().kind == Token::Ident) return pr::var(ident("proposition"));
    fail("expected a proposition");
  }

  // ---- context header: ctx x: A, y: B.
  bool at_header() const {
    if (!at_ident("ctx")) return false;
    if (at_sym(".", 1)) return true;
    return peek(1).kind == Token::Ident && at_sym(":", 2);
  }
  template <class T, class F>
  Context<T> header(F parse_one) {
    Context<T> ctx;
    if (!at_header()) return ctx;
    ++pos_;
    if (!at_sym(".")) {
      while (true) {
        std::string x = ident("name");
        expect(":");
        Name n = outer_->free_name(x);
        if (ctx.contains(n)) fail("duplicate context entry " + x);
        ctx.add(n, parse_one());
        if (at_sym(",")) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(".");
    return ctx;
  }

  // ---- HGV terms
  HgvMode mode = HgvMode::Full;

  bool atom_start() const {
    if (at_sym("(")) return true;
    return peek().kind == Token::Ident && !kTermKeywords.count(peek().text);
  }

  TermPtr term() {
    SourceLoc lc = loc();
    if (at_ident("fn")) {
      ++pos_;
      std::string x = binder_ident("binder");
      TypePtr annot;
      if (at_sym(":")) {
        ++pos_;
        annot = type0();
      }
      expect(".");
      Name n = bind(x);
      TermPtr body = term();
      unbind();
      return tm::lam(n, annot, body, lc);
    }
    if (at_ident("let")) {
      ++pos_;
      if (at_sym("(")) {
        ++pos_;
        std::string x = binder_ident("binder");
        expect(",");
        std::string y = binder_ident("binder");
        expect(")");
        expect("=");
        TermPtr m = term();
        expect_kw("in");
        Name nx = bind(x);
        Name ny = bind(y);
        TermPtr n = term();
        unbind(2);
        return tm::let_pair(nx, ny, m, n, lc);
      }
      std::string x = binder_ident("binder");
      expect("=");
      TermPtr m = term();
      expect_kw("in");
      Name nx = bind(x);
      TermPtr n = term();
      unbind();
      return desugar_let(nx, m, n, mode, outer_->supply());
    }
    if (at_ident("with")) {
      ++pos_;
      std::string x = binder_ident("binder");
      expect_kw("connect");
      Name xm = bind(x);
      TermPtr m = term();
      unbind();
      expect_kw("to");
      Name xn = bind(x);
      TermPtr n = term();
      unbind();
      return desugar_with(xm, m, xn, n, mode, outer_->supply());
    }
    if (at_ident("fork") || at_ident("serve")) {
      bool fork = peek().text == "fork";
      ++pos_;
      std::string x = binder_ident("binder");
      TypePtr annot;
      if (at_sym(":")) {
        ++pos_;
        annot = type0();
      }
      expect(".");
      Name n = bind(x);
      TermPtr body = term();
      unbind();
      return fork ? tm::fork(n, annot, body, lc) : tm::serve(n, annot, body, lc);
    }
    if (at_ident("recvty")) {
      ++pos_;
      std::string x = ident("type variable");
      expect(".");
      return tm::receive_type(TypeVar{x}, term(), lc);
    }
    if (at_ident("case")) {
      ++pos_;
      TermPtr m = app();
      expect("{");
      std::vector<CaseArm> arms;
      std::set<std::string> seen;
      while (!at_sym("}")) {
        std::string l = ident("label");
        if (!seen.insert(l).second) fail("duplicate label " + l);
        expect("(");
        std::string x = binder_ident("binder");
        expect(")");
        expect(".");
        Name n = bind(x);
        TermPtr body = term();
        unbind();
        arms.push_back({Label{l}, n, body});
        if (!at_sym(";")) break;
        ++pos_;
      }
      expect("}");
      if (arms.empty()) fail("case needs at least one branch");
      return tm::case_(m, std::move(arms), lc);
    }
    return app();
  }

  TermPtr app() {
    SourceLoc lc = loc();
    TermPtr head = prefix();
    while (atom_start()) head = tm::app(head, atom(), lc);
    return head;
  }

  TermPtr prefix() {
    SourceLoc lc = loc();
    if (at_ident("send")) {
      ++pos_;
      TermPtr a = atom();
      return tm::send(a, atom(), lc);
    }
    if (at_ident("receive")) {
      ++pos_;
      return tm::receive(atom(), lc);
    }
    if (at_ident("select")) {
      ++pos_;
      std::string l = ident("label");
      return tm::select(Label{l}, atom(), lc);
    }
    if (at_ident("link")) {
      ++pos_;
      TermPtr a = atom();
      return tm::link(a, atom(), lc);
    }
    if (at_ident("sendty")) {
      ++pos_;
      TypePtr s = type2();
      return tm::send_type(s, atom(), lc);
    }
    if (at_ident("request")) {
      ++pos_;
      return tm::request(atom(), lc);
    }
    return atom();
  }

  TermPtr atom() {
    SourceLoc lc = loc();
    if (at_sym("(")) {
      ++pos_;
      TermPtr m = term();
      if (at_sym(",")) {
        ++pos_;
        TermPtr n = term();
        expect(")");
        return tm::pair(m, n, lc);
      }
      if (at_sym(":")) {
        ++pos_;
        TypePtr t = type0();
        expect(")");
        if (t->kind == TypeKind::UnFun) return tm::coerce_un(m, t, lc);
        if (t->kind == TypeKind::LinFun) return tm::coerce_lin(m, t, lc);
        throw ParseError("coercion target must be a function type", lc.line, lc.column);
      }
      expect(")");
      return m;
    }
    if (!atom_start()) fail("expected a term");
    return tm::var(lookup(ident("name")), lc);
  }

  // ---- CP processes
  ProcPtr proc() {
    if (at_ident("new")) {
      ++pos_;
      std::string x = ident("name");
      PropPtr annot;
      if (at_sym(":")) {
        ++pos_;
        annot = prop0();
      }
      expect("(");
      Name n = bind(x);
      ProcPtr p = proc();
      expect("|");
      ProcPtr q = proc();
      unbind();
      expect(")");
      return proc::cut(n, annot, p, q);
    }
    if (at_ident("case") && peek(1).kind == Token::Ident && at_sym("{", 2)) {
      ++pos_;
      Name x = lookup(ident("name"));
      expect("{");
      ProcBranches bs;
      std::set<std::string> seen;
      while (!at_sym("}")) {
        std::string l = ident("label");
        if (!seen.insert(l).second) fail("duplicate label " + l);
        expect(".");
        bs.emplace_back(Label{l}, proc());
        if (!at_sym(";")) break;
        ++pos_;
      }
      expect("}");
      if (bs.empty()) fail("case needs at least one branch");
      return proc::case_(x, std::move(bs));
    }
    if (at_sym("!") || at_sym("?")) {
      bool bang = peek().text == "!";
      ++pos_;
      Name x = lookup(ident("name"));
      expect(bang ? "(" : "[");
      std::string y = ident("name");
      expect(bang ? ")" : "]");
      expect(".");
      Name ny = bind(y);
      ProcPtr p = proc();
      unbind();
      return bang ? proc::bang(x, ny, p) : proc::query(x, ny, p);
    }
    if (at_sym("(")) {
      ++pos_;
      ProcPtr p = proc();
      expect(")");
      return p;
    }
    Name x = lookup(ident("process"));
    if (at_sym("<->")) {
      ++pos_;
      return proc::link(x, lookup(ident("name")));
    }
    if (at_sym("[")) {
      ++pos_;
      if (at_sym("]")) {
        ++pos_;
        return proc::empty_out(x);
      }
      bool plain = peek().kind == Token::Ident && at_sym("]", 1) && !at_ident("bot") &&
                   !is_upper(peek().text);
      if (!plain) {
        PropPtr a = prop0();
        expect("]");
        expect(".");
        return proc::out_type(x, a, proc());
      }
      std::string y = ident("name");
      expect("]");
      expect(".");
      if (at_sym("(")) {
        std::size_t save = pos_;
        ++pos_;
        Name ny = bind(y);
        ProcPtr p = proc();
        if (at_sym("|")) {
          ++pos_;
          unbind();
          ProcPtr q = proc();
          expect(")");
          return proc::out(x, ny, p, q);
        }
        unbind();
        reset(save);
      }
      return proc::inject(x, Label{y}, proc());
    }
    if (at_sym("(")) {
      ++pos_;
      if (at_sym(")")) {
        ++pos_;
        expect(".");
        return proc::empty_in(x, proc());
      }
      std::string y = ident("name");
      expect(")");
      expect(".");
      if (is_upper(y)) return proc::in_type(x, TypeVar{y}, proc());
      Name ny = bind(y);
      ProcPtr p = proc();
      unbind();
      return proc::in(x, ny, p);
    }
    fail("expected a process");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Parser *outer_;
  std::vector<std::pair<std::string, Name>> scope_;
};

TypePtr footer_type(std::string_view text) {
  TypePtr found;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto p = line.find("//");
    if (p == std::string::npos) continue;
    std::string rest = line.substr(p + 2);
    auto q = rest.find_first_not_of(" \t");
    if (q == std::string::npos || rest.compare(q, 5, "type:") != 0) continue;
    try {
      found = parse_type(rest.substr(q + 5));
    } catch (const ParseError &e) {
      throw ParseError(std::string("in type footer: ") + e.what(), lineno, e.column());
    }
  }
  return found;
}

}  // namespace

Name Parser::free_name(const std::string &base) {
  auto it = free_.find(base);
  if (it != free_.end()) return it->second;
  Name n = names_.fresh(base);
  free_.emplace(base, n);
  return n;
}

HgvSource Parser::hgv(std::string_view text, HgvMode mode) {
  Reader r(lex(text), this);
  r.mode = mode;
  HgvSource s;
  s.ctx = r.header<TypePtr>([&] { return r.type0(); });
  s.term = r.term();
  if (!r.at_end()) r.fail("trailing input");
  s.expected = footer_type(text);
  return s;
}

CpSource Parser::cp(std::string_view text) {
  Reader r(lex(text), this);
  CpSource s;
  s.ctx = r.header<PropPtr>([&] { return r.prop0(); });
  s.proc = r.proc();
  if (!r.at_end()) r.fail("trailing input");
  s.expected = footer_type(text);
  return s;
}

TermPtr Parser::term(std::string_view text, HgvMode mode) {
  Reader r(lex(text), this);
  r.mode = mode;
  TermPtr m = r.term();
  if (!r.at_end()) r.fail("trailing input");
  return m;
}

ProcPtr Parser::process(std::string_view text) {
  Reader r(lex(text), this);
  ProcPtr p = r.proc();
  if (!r.at_end()) r.fail("trailing input");
  return p;
}

TypePtr parse_type(std::string_view text) {
  Reader r(lex(text), nullptr);
  TypePtr t = r.type0();
  if (!r.at_end()) r.fail("trailing input");
  return t;
}

PropPtr parse_prop(std::string_view text) {
  Reader r(lex(text), nullptr);
  PropPtr a = r.prop0();
  if (!r.at_end()) r.fail("trailing input");
  return a;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

class NamePrinter {
 public:
  void add(const Name &n) { seen_[n.base].insert(n.uid); }
  std::string operator()(const Name &n) const {
    auto it = seen_.find(n.base);
    if (it != seen_.end() && it->second.size() > 1) return n.base + "#" + std::to_string(n.uid);
    return n.base;
  }
  void collect(const TermPtr &m) {
    switch (m->kind) {
      case TermKind::Var:
      case TermKind::Lam:
      case TermKind::Fork:
      case TermKind::Serve:
        add(m->x);
        break;
      case TermKind::LetPair:
        add(m->x);
        add(m->y);
        break;
      default:
        break;
    }
    if (m->a) collect(m->a);
    if (m->b) collect(m->b);
    for (const auto &arm : m->arms) {
      add(arm.binder);
      collect(arm.body);
    }
  }
  void collect(const ProcPtr &p) {
    switch (p->kind) {
      case ProcKind::Link:
      case ProcKind::Out:
      case ProcKind::In:
      case ProcKind::Bang:
      case ProcKind::Query:
        add(p->chan);
        add(p->fresh);
        break;
      case ProcKind::Cut: add(p->fresh); break;
      default: add(p->chan);
    }
    if (p->p) collect(p->p);
    if (p->q) collect(p->q);
    for (const auto &[l, b] : p->branches) collect(b);
  }
  template <class T>
  void collect(const Context<T> &ctx) {
    for (const auto &[n, t] : ctx.entries) add(n);
  }

 private:
  std::map<std::string, std::set<std::uint64_t>> seen_;
};

std::string type_at_prefix(const TypePtr &t) {
  bool wrap = !is_session(*t);
  return wrap ? "(" + to_string(t) + ")" : to_string(t);
}

void print_term_into(const TermPtr &m, int prec, const NamePrinter &nm, std::string &out) {
  auto open = [&](int level) {
    if (prec > level) out += "(";
  };
  auto close = [&](int level) {
    if (prec > level) out += ")";
  };
  switch (m->kind) {
    case TermKind::Var: out += nm(m->x); return;
    case TermKind::Lam:
    case TermKind::Fork:
    case TermKind::Serve:
      open(0);
      out += m->kind == TermKind::Lam ? "fn " : m->kind == TermKind::Fork ? "fork " : "serve ";
      out += nm(m->x);
      if (m->annot) out += ": " + to_string(m->annot);
      out += ". ";
      print_term_into(m->a, 0, nm, out);
      close(0);
      return;
    case TermKind::App:
      open(1);
      print_term_into(m->a, 1, nm, out);
      out += " ";
      print_term_into(m->b, 2, nm, out);
      close(1);
      return;
    case TermKind::Pair:
      out += "(";
      print_term_into(m->a, 0, nm, out);
      out += ", ";
      print_term_into(m->b, 0, nm, out);
      out += ")";
      return;
    case TermKind::LetPair:
      open(0);
      out += "let (" + nm(m->x) + ", " + nm(m->y) + ") = ";
      print_term_into(m->a, 0, nm, out);
      out += " in ";
      print_term_into(m->b, 0, nm, out);
      close(0);
      return;
    case TermKind::Send:
    case TermKind::Link:
      open(1);
      out += m->kind == TermKind::Send ? "send " : "link ";
      print_term_into(m->a, 2, nm, out);
      out += " ";
      print_term_into(m->b, 2, nm, out);
      close(1);
      return;
    case TermKind::Receive:
    case TermKind::Request:
      open(1);
      out += m->kind == TermKind::Receive ? "receive " : "request ";
      print_term_into(m->a, 2, nm, out);
      close(1);
      return;
    case TermKind::Select:
      open(1);
      out += "select " + m->label.text + " ";
      print_term_into(m->a, 2, nm, out);
      close(1);
      return;
    case TermKind::SendType:
      open(1);
      out += "sendty " + type_at_prefix(m->annot) + " ";
      print_term_into(m->a, 2, nm, out);
      close(1);
      return;
    case TermKind::Case: {
      open(0);
      out += "case ";
      print_term_into(m->a, 1, nm, out);
      out += " { ";
      bool first = true;
      for (const auto &arm : m->arms) {
        if (!first) out += "; ";
        first = false;
        out += arm.label.text + "(" + nm(arm.binder) + "). ";
        print_term_into(arm.body, 0, nm, out);
      }
      out += " }";
      close(0);
      return;
    }
    case TermKind::ReceiveType:
      open(0);
      out += "recvty " + m->tyvar.ident + ". ";
      print_term_into(m->a, 0, nm, out);
      close(0);
      return;
    case TermKind::CoerceUn:
    case TermKind::CoerceLin:
      out += "(";
      print_term_into(m->a, 0, nm, out);
      out += " : " + to_string(m->annot) + ")";
      return;
  }
}

void print_proc_into(const ProcPtr &p, const NamePrinter &nm, std::string &out) {
  switch (p->kind) {
    case ProcKind::Link: out += nm(p->chan) + " <-> " + nm(p->fresh); return;
    case ProcKind::Cut:
      out += "new " + nm(p->fresh);
      if (p->prop) out += ": " + to_string(p->prop);
      out += " (";
      print_proc_into(p->p, nm, out);
      out += " | ";
      print_proc_into(p->q, nm, out);
      out += ")";
      return;
    case ProcKind::Out:
      out += nm(p->chan) + "[" + nm(p->fresh) + "].(";
      print_proc_into(p->p, nm, out);
      out += " | ";
      print_proc_into(p->q, nm, out);
      out += ")";
      return;
    case ProcKind::In:
      out += nm(p->chan) + "(" + nm(p->fresh) + "). ";
      print_proc_into(p->p, nm, out);
      return;
    case ProcKind::Inject:
      out += nm(p->chan) + "[" + p->label.text + "]. ";
      print_proc_into(p->p, nm, out);
      return;
    case ProcKind::Case: {
      out += "case " + nm(p->chan) + " { ";
      bool first = true;
      for (const auto &[l, b] : p->branches) {
        if (!first) out += "; ";
        first = false;
        out += l.text + ". ";
        print_proc_into(b, nm, out);
      }
      out += " }";
      return;
    }
    case ProcKind::Bang:
      out += "!" + nm(p->chan) + "(" + nm(p->fresh) + "). ";
      print_proc_into(p->p, nm, out);
      return;
    case ProcKind::Query:
      out += "?" + nm(p->chan) + "[" + nm(p->fresh) + "]. ";
      print_proc_into(p->p, nm, out);
      return;
    case ProcKind::OutType: {
      std::string a = to_string(p->prop);
      bool bare = p->prop->kind == PropKind::Var && !p->prop->var.dual && !is_upper(a);
      bool word = p->prop->kind == PropKind::Bottom;
      out += nm(p->chan) + "[" + (bare ? "(" + a + ")" : a) + "]. ";
      (void)word;
      print_proc_into(p->p, nm, out);
      return;
    }
    case ProcKind::InType:
      out += nm(p->chan) + "(" + p->tyvar.ident + "). ";
      print_proc_into(p->p, nm, out);
      return;
    case ProcKind::EmptyOut: out += nm(p->chan) + "[]"; return;
    case ProcKind::EmptyIn:
      out += nm(p->chan) + "(). ";
      print_proc_into(p->p, nm, out);
      return;
  }
}

template <class T, class F>
std::string context_text(const Context<T> &ctx, const NamePrinter &nm, F show) {
  std::string out = "ctx";
  bool first = true;
  for (const auto &[n, t] : ctx.entries) {
    out += first ? " " : ", ";
    first = false;
    out += nm(n) + ": " + show(t);
  }
  return out + ".";
}

}  // namespace

std::string print_term(const TermPtr &m) {
  NamePrinter nm;
  nm.collect(m);
  std::string out;
  print_term_into(m, 0, nm, out);
  return out;
}

std::string print_process(const ProcPtr &p) {
  NamePrinter nm;
  nm.collect(p);
  std::string out;
  print_proc_into(p, nm, out);
  return out;
}

std::string print_context(const HgvContext &ctx) {
  NamePrinter nm;
  nm.collect(ctx);
  return context_text(ctx, nm, [](const TypePtr &t) { return to_string(t); });
}

std::string print_context(const CpContext &ctx) {
  NamePrinter nm;
  nm.collect(ctx);
  return context_text(ctx, nm, [](const PropPtr &a) { return to_string(a); });
}

std::string print_source(const HgvSource &s) {
  NamePrinter nm;
  nm.collect(s.ctx);
  nm.collect(s.term);
  std::string out = context_text(s.ctx, nm, [](const TypePtr &t) { return to_string(t); });
  out += "\n";
  print_term_into(s.term, 0, nm, out);
  out += "\n";
  if (s.expected) out += "// type: " + to_string(s.expected) + "\n";
  return out;
}

std::string print_source(const CpSource &s) {
  NamePrinter nm;
  nm.collect(s.ctx);
  nm.collect(s.proc);
  std::string out = context_text(s.ctx, nm, [](const PropPtr &a) { return to_string(a); });
  out += "\n";
  print_proc_into(s.proc, nm, out);
  out += "\n";
  if (s.expected) out += "// type: " + to_string(s.expected) + "\n";
  return out;
}

}  // namespace sessc
