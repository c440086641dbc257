#include "phoml/parser.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "phoml/printer.hpp"

namespace phoml {

ParseError::ParseError(SourceSpan span, const std::string& message)
    : std::runtime_error(span.file + ":" + std::to_string(span.line) + ":" +
                         std::to_string(span.column) + ": " + message),
      span_(std::move(span)) {}

namespace {

enum class Tok {
  Ident,
  KwOmega,
  KwBot,
  KwRef,
  KwUniv,
  KwLll,
  KwAssume,
  KwDef,
  KwCheck,
  KwNormalize,
  LParen,
  RParen,
  Backslash,
  Colon,
  ColonEq,
  Dot,
  Comma,
  Arrow,      // ->
  Imp,        // =>
  ImpStar,    // =>*
  EqBracket,  // =[
  RBracket,   // ]
  AtBracket,  // @[
  CaretPlus,
  CaretMinus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const std::map<std::string, Tok> kKeywords = {
    {"Omega", Tok::KwOmega},   {"bot", Tok::KwBot},
    {"ref", Tok::KwRef},       {"univ", Tok::KwUniv},
    {"lll", Tok::KwLll},       {"assume", Tok::KwAssume},
    {"def", Tok::KwDef},       {"check", Tok::KwCheck},
    {"normalize", Tok::KwNormalize},
};

std::vector<Token> lex(const std::string& text, const std::string& filename) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto span = [&](int length) { return SourceSpan{filename, line, column, length}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    i += n;
  };
  auto push = [&](Tok kind, std::size_t length) {
    out.push_back({kind, text.substr(i, length), span(static_cast<int>(length))});
    advance(length);
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
              text[j] == '\''))
        ++j;
      std::string word = text.substr(i, j - i);
      auto kw = kKeywords.find(word);
      push(kw == kKeywords.end() ? Tok::Ident : kw->second, j - i);
      continue;
    }
    auto starts_with = [&](const char* s) {
      return text.compare(i, std::char_traits<char>::length(s), s) == 0;
    };
    if (starts_with("=>*")) {
      push(Tok::ImpStar, 3);
    } else if (starts_with("=>")) {
      push(Tok::Imp, 2);
    } else if (starts_with("=[")) {
      push(Tok::EqBracket, 2);
    } else if (starts_with("->")) {
      push(Tok::Arrow, 2);
    } else if (starts_with(":=")) {
      push(Tok::ColonEq, 2);
    } else if (starts_with("@[")) {
      push(Tok::AtBracket, 2);
    } else if (starts_with("^+")) {
      push(Tok::CaretPlus, 2);
    } else if (starts_with("^-")) {
      push(Tok::CaretMinus, 2);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == '\\') {
      push(Tok::Backslash, 1);
    } else if (c == ':') {
      push(Tok::Colon, 1);
    } else if (c == '.') {
      push(Tok::Dot, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == ']') {
      push(Tok::RBracket, 1);
    } else {
      throw ParseError(span(1), std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", span(0)});
  return out;
}

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::KwOmega: return "'Omega'";
    case Tok::KwBot: return "'bot'";
    case Tok::KwRef: return "'ref'";
    case Tok::KwUniv: return "'univ'";
    case Tok::KwLll: return "'lll'";
    case Tok::KwAssume: return "'assume'";
    case Tok::KwDef: return "'def'";
    case Tok::KwCheck: return "'check'";
    case Tok::KwNormalize: return "'normalize'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Backslash: return "'\\'";
    case Tok::Colon: return "':'";
    case Tok::ColonEq: return "':='";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'->'";
    case Tok::Imp: return "'=>'";
    case Tok::ImpStar: return "'=>*'";
    case Tok::EqBracket: return "'=['";
    case Tok::RBracket: return "']'";
    case Tok::AtBracket: return "'@['";
    case Tok::CaretPlus: return "'^+'";
    case Tok::CaretMinus: return "'^-'";
    case Tok::End: return "end of input";
  }
  return "token";
}

const char* sort_name(ExprClass sort) {
  switch (sort) {
    case ExprClass::Term: return "term";
    case ExprClass::Proof: return "proof";
    case ExprClass::Path: return "path";
  }
  return "expression";
}

// Either a variable of a given sort, or a transparent definition.
struct Binding {
  ExprClass sort;
  std::optional<Expr> definition;
};

struct Parser {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::map<std::string, Binding> env;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t index = pos + ahead;
    return index < tokens.size() ? tokens[index] : tokens.back();
  }
  const Token& next() {
    const Token& token = peek();
    if (token.kind != Tok::End) ++pos;
    return token;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind, const char* context) {
    if (peek().kind != kind)
      throw ParseError(peek().span, std::string("expected ") + describe(kind) + " " +
                                        context + ", found " + describe(peek().kind));
    return next();
  }
  [[noreturn]] void error(const std::string& message) const {
    throw ParseError(peek().span, message);
  }

  std::string identifier(const char* context) {
    const Token& token = peek();
    if (token.kind != Tok::Ident) {
      if (kKeywords.count(token.text))
        error("reserved word '" + token.text + "' cannot be used as " + context);
      error(std::string("expected identifier as ") + context + ", found " +
            describe(token.kind));
    }
    next();
    return token.text;
  }

  // ---- types ----

  Type type_atom() {
    if (accept(Tok::KwOmega)) return Type::omega();
    if (accept(Tok::LParen)) {
      Type inner = type();
      expect(Tok::RParen, "closing a type");
      return inner;
    }
    error("expected a type");
  }

  Type type() {
    Type lhs = type_atom();
    if (accept(Tok::Arrow)) return Type::arrow(lhs, type());
    return lhs;
  }

  std::optional<Type> try_type() {
    std::size_t saved = pos;
    try {
      return type();
    } catch (const ParseError&) {
      pos = saved;
      return std::nullopt;
    }
  }

  // ---- expressions ----

  ExprClass sort_of(const Expr& e) const { return class_of(e); }

  Term want_term(Expr e, const SourceSpan& span, const std::string& context) {
    if (const auto* t = std::get_if<Term>(&e)) return *t;
    throw ParseError(span, context + " must be a term, found a " +
                               sort_name(class_of(e)));
  }
  Proof want_proof(Expr e, const SourceSpan& span, const std::string& context) {
    if (const auto* p = std::get_if<Proof>(&e)) return *p;
    throw ParseError(span, context + " must be a proof, found a " +
                               sort_name(class_of(e)));
  }
  Path want_path(Expr e, const SourceSpan& span, const std::string& context) {
    if (const auto* p = std::get_if<Path>(&e)) return *p;
    throw ParseError(span, context + " must be a path, found a " +
                               sort_name(class_of(e)));
  }

  Expr expression() {
    if (peek().kind == Tok::Backslash) return lambda();
    if (peek().kind == Tok::KwLll) return tri_lambda();
    return imp_level();
  }

  Expr lambda() {
    expect(Tok::Backslash, "starting a lambda");
    const SourceSpan binder_span = peek().span;
    std::string name = identifier("a binder");
    expect(Tok::Colon, "after the binder");

    // A type annotation makes a term lambda, a term annotation a proof lambda.
    {
      std::size_t saved = pos;
      if (std::optional<Type> ann = try_type()) {
        if (peek().kind == Tok::Dot) {
          next();
          auto shadowed = set_binding(name, Binding{ExprClass::Term, std::nullopt});
          Expr body = expression();
          restore_binding(name, shadowed);
          Term term_body = want_term(std::move(body), binder_span, "the body of \\" + name);
          return Expr{Term::lam(name, *ann, std::move(term_body))};
        }
        pos = saved;
      }
    }
    const SourceSpan ann_span = peek().span;
    Term ann = want_term(expression(), ann_span, "the annotation of \\" + name);
    expect(Tok::Dot, "after the binder annotation");
    auto shadowed = set_binding(name, Binding{ExprClass::Proof, std::nullopt});
    Expr body = expression();
    restore_binding(name, shadowed);
    Proof proof_body = want_proof(std::move(body), binder_span, "the body of \\" + name);
    return Expr{Proof::lam(name, std::move(ann), std::move(proof_body))};
  }

  Expr tri_lambda() {
    expect(Tok::KwLll, "starting a triple lambda");
    const SourceSpan span = peek().span;
    std::string e = identifier("the path binder of lll");
    expect(Tok::Colon, "after the path binder");
    std::string x = identifier("the left endpoint variable");
    expect(Tok::EqBracket, "in the binder equation");
    Type ann = type();
    expect(Tok::RBracket, "closing the binder equation type");
    std::string y = identifier("the right endpoint variable");
    if (x == y)
      throw ParseError(span, "the endpoint variables of lll must be distinct");
    expect(Tok::Dot, "after the lll binder");
    auto shadowed_e = set_binding(e, Binding{ExprClass::Path, std::nullopt});
    auto shadowed_x = set_binding(x, Binding{ExprClass::Term, std::nullopt});
    auto shadowed_y = set_binding(y, Binding{ExprClass::Term, std::nullopt});
    Expr body = expression();
    restore_binding(y, shadowed_y);
    restore_binding(x, shadowed_x);
    restore_binding(e, shadowed_e);
    Path path_body = want_path(std::move(body), span, "the body of lll");
    return Expr{Path::tri_lam(e, x, y, std::move(ann), std::move(path_body))};
  }

  Expr imp_level() {
    const SourceSpan span = peek().span;
    Expr lhs = app_level();
    if (peek().kind == Tok::Imp) {
      next();
      Expr rhs = expression();  // right associative; lambdas allowed
      return Expr{Term::imp(want_term(std::move(lhs), span, "the left operand of =>"),
                            want_term(std::move(rhs), span, "the right operand of =>"))};
    }
    if (peek().kind == Tok::ImpStar) {
      next();
      Expr rhs = expression();
      return Expr{
          Path::imp_star(want_path(std::move(lhs), span, "the left operand of =>*"),
                         want_path(std::move(rhs), span, "the right operand of =>*"))};
    }
    return lhs;
  }

  bool starts_atom(Tok kind) const {
    switch (kind) {
      case Tok::Ident:
      case Tok::KwBot:
      case Tok::KwRef:
      case Tok::KwUniv:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  Expr app_level() {
    const SourceSpan span = peek().span;
    Expr head = postfix_level();
    while (true) {
      if (peek().kind == Tok::AtBracket) {
        next();
        const SourceSpan left_span = peek().span;
        Term left = want_term(expression(), left_span, "the left endpoint annotation");
        expect(Tok::Comma, "between the endpoint annotations");
        const SourceSpan right_span = peek().span;
        Term right = want_term(expression(), right_span, "the right endpoint annotation");
        expect(Tok::RBracket, "closing the endpoint annotations");
        const SourceSpan arg_span = peek().span;
        Path arg = want_path(postfix_level(), arg_span, "the argument of @[..]");
        Path fun = want_path(std::move(head), span, "the head of @[..]");
        head = Expr{Path::app(std::move(fun), std::move(left), std::move(right),
                              std::move(arg))};
        continue;
      }
      if (!starts_atom(peek().kind)) break;
      const SourceSpan arg_span = peek().span;
      Expr arg = postfix_level();
      if (std::holds_alternative<Term>(head)) {
        head = Expr{Term::app(std::get<Term>(head),
                              want_term(std::move(arg), arg_span, "an argument"))};
      } else if (std::holds_alternative<Proof>(head)) {
        head = Expr{Proof::app(std::get<Proof>(head),
                               want_proof(std::move(arg), arg_span, "an argument"))};
      } else {
        throw ParseError(arg_span,
                         "paths are applied with @[M, N], not by juxtaposition");
      }
    }
    return head;
  }

  Expr postfix_level() {
    const SourceSpan span = peek().span;
    Expr e = atom();
    while (peek().kind == Tok::CaretPlus || peek().kind == Tok::CaretMinus) {
      bool plus = next().kind == Tok::CaretPlus;
      Path path = want_path(std::move(e), span, plus ? "the operand of ^+"
                                                     : "the operand of ^-");
      e = Expr{plus ? Proof::plus(std::move(path)) : Proof::minus(std::move(path))};
    }
    return e;
  }

  Expr atom() {
    const Token& token = peek();
    switch (token.kind) {
      case Tok::KwBot:
        next();
        return Expr{Term::bottom()};
      case Tok::KwRef: {
        next();
        expect(Tok::LParen, "after ref");
        const SourceSpan span = peek().span;
        Term inner = want_term(expression(), span, "the content of ref");
        expect(Tok::RParen, "closing ref");
        return Expr{Path::ref(std::move(inner))};
      }
      case Tok::KwUniv: {
        next();
        expect(Tok::LParen, "after univ");
        const SourceSpan span = peek().span;
        Term src = want_term(expression(), span, "the first component of univ");
        expect(Tok::Comma, "between univ components");
        Term tgt = want_term(expression(), span, "the second component of univ");
        expect(Tok::Comma, "between univ components");
        Proof fwd = want_proof(expression(), span, "the third component of univ");
        expect(Tok::Comma, "between univ components");
        Proof bwd = want_proof(expression(), span, "the fourth component of univ");
        expect(Tok::RParen, "closing univ");
        return Expr{Path::univ(std::move(src), std::move(tgt), std::move(fwd),
                               std::move(bwd))};
      }
      case Tok::LParen: {
        next();
        Expr inner = expression();
        expect(Tok::RParen, "closing a parenthesized expression");
        return inner;
      }
      case Tok::Ident: {
        next();
        auto it = env.find(token.text);
        if (it == env.end())
          throw ParseError(token.span, "unbound identifier '" + token.text + "'");
        if (it->second.definition) return *it->second.definition;
        switch (it->second.sort) {
          case ExprClass::Term: return Expr{Term::var(token.text)};
          case ExprClass::Proof: return Expr{Proof::var(token.text)};
          case ExprClass::Path: return Expr{Path::var(token.text)};
        }
        throw ParseError(token.span, "unbound identifier '" + token.text + "'");
      }
      default:
        error(std::string("expected an expression, found ") + describe(token.kind));
    }
  }

  // ---- binder scoping ----

  std::optional<Binding> set_binding(const std::string& name, Binding binding) {
    auto it = env.find(name);
    std::optional<Binding> shadowed;
    if (it != env.end()) shadowed = it->second;
    env.insert_or_assign(name, std::move(binding));
    return shadowed;
  }

  void restore_binding(const std::string& name, const std::optional<Binding>& shadowed) {
    if (shadowed)
      env.insert_or_assign(name, *shadowed);
    else
      env.erase(name);
  }

  // ---- classifiers and scripts ----

  bool at_declaration_boundary() const {
    switch (peek().kind) {
      case Tok::KwAssume:
      case Tok::KwDef:
      case Tok::KwCheck:
      case Tok::KwNormalize:
      case Tok::End:
        return true;
      default:
        return false;
    }
  }

  Classifier classifier() {
    {
      std::size_t saved = pos;
      if (std::optional<Type> t = try_type()) {
        if (at_declaration_boundary()) return *t;
        pos = saved;
      }
    }
    const SourceSpan span = peek().span;
    Expr e = expression();
    if (peek().kind == Tok::EqBracket) {
      next();
      Term lhs = want_term(std::move(e), span, "the left side of an equation");
      Type eq_type = type();
      expect(Tok::RBracket, "closing the equation type");
      const SourceSpan rhs_span = peek().span;
      Term rhs = want_term(expression(), rhs_span, "the right side of an equation");
      return Equation{std::move(lhs), std::move(eq_type), std::move(rhs)};
    }
    return want_term(std::move(e), span, "a proposition classifier");
  }

  Script script() {
    Script result;
    std::set<std::string> declared;
    while (peek().kind != Tok::End) {
      const Token& token = peek();
      switch (token.kind) {
        case Tok::KwAssume: {
          next();
          SourceSpan span = peek().span;
          std::string name = identifier("an assumption name");
          if (!declared.insert(name).second)
            throw ParseError(span, "duplicate declaration of '" + name + "'");
          expect(Tok::Colon, "after the assumption name");
          Classifier cls = classifier();
          ExprClass sort = std::holds_alternative<Type>(cls)  ? ExprClass::Term
                           : std::holds_alternative<Term>(cls) ? ExprClass::Proof
                                                               : ExprClass::Path;
          env.insert_or_assign(name, Binding{sort, std::nullopt});
          result.decls.push_back(AssumeDecl{name, std::move(cls), span});
          break;
        }
        case Tok::KwDef: {
          next();
          SourceSpan span = peek().span;
          std::string name = identifier("a definition name");
          if (!declared.insert(name).second)
            throw ParseError(span, "duplicate declaration of '" + name + "'");
          expect(Tok::Colon, "after the definition name");
          const Token& sort_token = peek();
          std::string sort_word = identifier("a sort (term, proof or path)");
          ExprClass sort;
          if (sort_word == "term")
            sort = ExprClass::Term;
          else if (sort_word == "proof")
            sort = ExprClass::Proof;
          else if (sort_word == "path")
            sort = ExprClass::Path;
          else
            throw ParseError(sort_token.span,
                             "expected 'term', 'proof' or 'path', found '" +
                                 sort_word + "'");
          expect(Tok::ColonEq, "before the definition body");
          const SourceSpan body_span = peek().span;
          Expr body = expression();
          if (class_of(body) != sort)
            throw ParseError(body_span, "definition '" + name + "' is declared as a " +
                                            std::string(sort_name(sort)) +
                                            " but its body is a " +
                                            sort_name(class_of(body)));
          env.insert_or_assign(name, Binding{sort, body});
          result.decls.push_back(DefDecl{name, sort, std::move(body), span});
          break;
        }
        case Tok::KwCheck: {
          next();
          SourceSpan span = token.span;
          Expr subject = expression();
          expect(Tok::Colon, "before the stated classifier");
          Classifier cls = classifier();
          result.decls.push_back(CheckDirective{std::move(subject), std::move(cls), span});
          break;
        }
        case Tok::KwNormalize: {
          next();
          SourceSpan span = token.span;
          Expr subject = expression();
          result.decls.push_back(NormalizeDirective{std::move(subject), span});
          break;
        }
        default:
          error(std::string("expected a declaration, found ") + describe(token.kind));
      }
    }
    return result;
  }
};

Parser make_parser(const std::string& text, const std::string& filename,
                   const Context& ctx) {
  Parser parser{lex(text, filename)};
  for (const ContextEntry& entry : ctx.entries()) {
    if (const auto* d = std::get_if<TermDecl>(&entry))
      parser.env.insert_or_assign(d->name, Binding{ExprClass::Term, std::nullopt});
    else if (const auto* d = std::get_if<ProofDecl>(&entry))
      parser.env.insert_or_assign(d->name, Binding{ExprClass::Proof, std::nullopt});
    else if (const auto* d = std::get_if<PathDecl>(&entry))
      parser.env.insert_or_assign(d->name, Binding{ExprClass::Path, std::nullopt});
  }
  return parser;
}

}  // namespace

Script parse_script(const std::string& text, const std::string& filename) {
  Parser parser{lex(text, filename)};
  return parser.script();
}

Expr parse_expression(const std::string& text, const Context& ctx) {
  Parser parser = make_parser(text, "<expr>", ctx);
  Expr result = parser.expression();
  parser.expect(Tok::End, "after the expression");
  return result;
}

Term parse_term(const std::string& text, const Context& ctx) {
  Expr e = parse_expression(text, ctx);
  if (const auto* t = std::get_if<Term>(&e)) return *t;
  throw ParseError(SourceSpan{"<expr>", 1, 1, 0}, "expected a term");
}

Proof parse_proof(const std::string& text, const Context& ctx) {
  Expr e = parse_expression(text, ctx);
  if (const auto* p = std::get_if<Proof>(&e)) return *p;
  throw ParseError(SourceSpan{"<expr>", 1, 1, 0}, "expected a proof");
}

Path parse_path(const std::string& text, const Context& ctx) {
  Expr e = parse_expression(text, ctx);
  if (const auto* p = std::get_if<Path>(&e)) return *p;
  throw ParseError(SourceSpan{"<expr>", 1, 1, 0}, "expected a path");
}

Equation parse_equation(const std::string& text, const Context& ctx) {
  Parser parser = make_parser(text, "<expr>", ctx);
  const SourceSpan span = parser.peek().span;
  Expr lhs = parser.expression();
  parser.expect(Tok::EqBracket, "in an equation");
  Type type = parser.type();
  parser.expect(Tok::RBracket, "closing the equation type");
  Expr rhs = parser.expression();
  parser.expect(Tok::End, "after the equation");
  return Equation{parser.want_term(std::move(lhs), span, "the left side of an equation"),
                  std::move(type),
                  parser.want_term(std::move(rhs), span, "the right side of an equation")};
}

Type parse_type(const std::string& text) {
  Parser parser{lex(text, "<type>")};
  Type result = parser.type();
  parser.expect(Tok::End, "after the type");
  return result;
}

}  // namespace phoml
