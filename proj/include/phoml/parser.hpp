#pragma once

// Concrete syntax.
//
//   types        Omega, A -> B (right assoc)
//   terms        bot, M => N (right assoc, looser than application),
//                \x:A. M, application by juxtaposition
//   proofs       \p:phi. d, juxtaposition, P^+, P^-
//   paths        ref(M), P =>* Q, univ(phi, psi, d, e),
//                lll e : x =[A] y . P, P @[M, N] Q
//   equations    M =[A] N
//   scripts      assume x : <classifier>, def n : term|proof|path := <expr>,
//                check <expr> : <classifier>, normalize <expr>
//   comments     -- to end of line
//
// The parser elaborates directly to kernel expressions: the sort of every
// construct is syntax-directed once variable sorts are known, and definitions
// are transparently inlined at use sites.

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "phoml/syntax.hpp"

namespace phoml {

struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;
  int length = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, const std::string& message);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

// A stated classification: a type (term judgement), a proposition (proof
// judgement) or an equation (path judgement).
using Classifier = std::variant<Type, Term, Equation>;

struct AssumeDecl {
  std::string name;
  Classifier classifier;
  SourceSpan span;
};
struct DefDecl {
  std::string name;
  ExprClass sort;
  Expr body;  // elaborated, with earlier definitions inlined
  SourceSpan span;
};
struct CheckDirective {
  Expr subject;
  Classifier classifier;
  SourceSpan span;
};
struct NormalizeDirective {
  Expr subject;
  SourceSpan span;
};

using Declaration =
    std::variant<AssumeDecl, DefDecl, CheckDirective, NormalizeDirective>;

struct Script {
  std::vector<Declaration> decls;
};

Script parse_script(const std::string& text, const std::string& filename = "<input>");

// Bare-expression parsing; the context supplies the sorts of free variables.
Expr parse_expression(const std::string& text, const Context& ctx = {});
Term parse_term(const std::string& text, const Context& ctx = {});
Proof parse_proof(const std::string& text, const Context& ctx = {});
Path parse_path(const std::string& text, const Context& ctx = {});
Equation parse_equation(const std::string& text, const Context& ctx = {});
Type parse_type(const std::string& text);

}  // namespace phoml
