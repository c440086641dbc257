#pragma once

// Abstract syntax of PHOML: simple types over Omega, terms, proofs, paths,
// equations, contexts and judgements.
//
// Binding is locally nameless: bound variables are de Bruijn indices counted
// separately for each of the three variable kinds (term / proof / path), free
// variables are names.  Binder nodes keep the user-facing name only as a
// display hint, so alpha-equivalence is plain structural equality.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace phoml {

class Term;
class Proof;
class Path;
struct TypeNode;
struct TermNode;
struct ProofNode;
struct PathNode;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

// A,B,C ::= Omega | A -> B.  No variable can occur in a type, so structural
// equality is the only equality.
class Type {
 public:
  static Type omega();
  static Type arrow(Type domain, Type codomain);

  bool is_omega() const;
  bool is_arrow() const;
  const Type& domain() const;
  const Type& codomain() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  explicit Type(std::shared_ptr<const TypeNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TypeNode> node_;
};

struct TypeNode {
  std::optional<std::pair<Type, Type>> arrow;  // nullopt = Omega
};

inline bool Type::is_omega() const { return !node_->arrow.has_value(); }
inline bool Type::is_arrow() const { return node_->arrow.has_value(); }
inline const Type& Type::domain() const { return node_->arrow->first; }
inline const Type& Type::codomain() const { return node_->arrow->second; }

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

class Term {
 public:
  // Free variable.
  static Term var(const std::string& name);
  static Term bottom();
  static Term imp(Term lhs, Term rhs);
  // Binds every free occurrence of `x` in `body`.
  static Term lam(const std::string& x, Type ann, Term body);
  static Term app(Term fun, Term arg);

  const TermNode& node() const { return *node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  static Term from_node(TermNode node);  // internal

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermBound {
  int index;  // de Bruijn index over term binders
};
struct TermFree {
  std::string name;
};
struct TermBottom {};
struct TermImp {
  Term lhs, rhs;
};
struct TermLam {
  std::string hint;  // display only
  Type ann;
  Term body;  // binds term index 0
};
struct TermApp {
  Term fun, arg;
};

struct TermNode {
  std::variant<TermBound, TermFree, TermBottom, TermImp, TermLam, TermApp> v;
};

// Equation M =_A N.
struct Equation {
  Term lhs;
  Type type;
  Term rhs;
};

// ---------------------------------------------------------------------------
// Proofs
// ---------------------------------------------------------------------------

class Proof {
 public:
  static Proof var(const std::string& name);
  // Binds every free occurrence of `p` in `body`.
  static Proof lam(const std::string& p, Term ann, Proof body);
  static Proof app(Proof fun, Proof arg);
  static Proof plus(Path path);
  static Proof minus(Path path);

  const ProofNode& node() const { return *node_; }

  friend bool operator==(const Proof& a, const Proof& b);
  friend bool operator!=(const Proof& a, const Proof& b) { return !(a == b); }

  static Proof from_node(ProofNode node);  // internal

 private:
  explicit Proof(std::shared_ptr<const ProofNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ProofNode> node_;
};

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

class Path {
 public:
  static Path var(const std::string& name);
  static Path ref(Term term);
  static Path imp_star(Path lhs, Path rhs);
  static Path univ(Term src, Term tgt, Proof fwd, Proof bwd);
  // lll e : x =[ann] y . body -- binds e (path kind) and x, y (term kind).
  // x and y must be distinct names.
  static Path tri_lam(const std::string& e, const std::string& x,
                      const std::string& y, Type ann, Path body);
  // fun @[left, right] arg, the subscripted application P_{MN} Q.
  static Path app(Path fun, Term left, Term right, Path arg);

  const PathNode& node() const { return *node_; }

  friend bool operator==(const Path& a, const Path& b);
  friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }

  static Path from_node(PathNode node);  // internal

 private:
  explicit Path(std::shared_ptr<const PathNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const PathNode> node_;
};

struct ProofBound {
  int index;
};
struct ProofFree {
  std::string name;
};
struct ProofLam {
  std::string hint;
  Term ann;
  Proof body;  // binds proof index 0
};
struct ProofApp {
  Proof fun, arg;
};
struct ProofPlus {
  Path path;
};
struct ProofMinus {
  Path path;
};

struct PathBound {
  int index;
};
struct PathFree {
  std::string name;
};
struct PathRef {
  Term term;
};
struct PathImpStar {
  Path lhs, rhs;
};
struct PathUniv {
  Term src, tgt;
  Proof fwd, bwd;
};
struct PathTriLam {
  std::string hint_e, hint_x, hint_y;  // display only
  Type ann;
  Path body;  // binds path index 0 (e) and term indices 0 (x), 1 (y)
};
struct PathAppNode {
  Path fun;
  Term left, right;  // endpoint annotations, part of the syntax
  Path arg;
};

struct ProofNode {
  std::variant<ProofBound, ProofFree, ProofLam, ProofApp, ProofPlus, ProofMinus> v;
};
struct PathNode {
  std::variant<PathBound, PathFree, PathRef, PathImpStar, PathUniv, PathTriLam,
               PathAppNode>
      v;
};

// Convenience accessors; nullptr when the node is a different alternative.
const TermBound* as_bound(const Term&);
const TermFree* as_free(const Term&);
const TermBottom* as_bottom(const Term&);
const TermImp* as_imp(const Term&);
const TermLam* as_lam(const Term&);
const TermApp* as_app(const Term&);

const ProofBound* as_bound(const Proof&);
const ProofFree* as_free(const Proof&);
const ProofLam* as_lam(const Proof&);
const ProofApp* as_app(const Proof&);
const ProofPlus* as_plus(const Proof&);
const ProofMinus* as_minus(const Proof&);

const PathBound* as_bound(const Path&);
const PathFree* as_free(const Path&);
const PathRef* as_ref(const Path&);
const PathImpStar* as_imp_star(const Path&);
const PathUniv* as_univ(const Path&);
const PathTriLam* as_tri_lam(const Path&);
const PathAppNode* as_path_app(const Path&);

// ---------------------------------------------------------------------------
// Expressions: the reducible classes
// ---------------------------------------------------------------------------

using Expr = std::variant<Term, Proof, Path>;

enum class ExprClass { Term, Proof, Path };

ExprClass class_of(const Expr& e);

// ---------------------------------------------------------------------------
// Binder opening
// ---------------------------------------------------------------------------

// Instantiates the bound variable(s) of a binder body with the given images.
// Images must be locally closed (no dangling indices), which every Term/Proof/
// Path built through the public factories is.
Term open_body(const TermLam& lam, const Term& image);
Proof open_body(const ProofLam& lam, const Proof& image);
Path open_body(const PathTriLam& tri, const Path& e_image, const Term& x_image,
               const Term& y_image);

// ---------------------------------------------------------------------------
// Alpha equivalence and free variables
// ---------------------------------------------------------------------------

// Structural comparison that ignores display hints.  operator== on the
// expression classes is exactly this relation.
bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const Proof& a, const Proof& b);
bool alpha_equal(const Path& a, const Path& b);
bool alpha_equal(const Equation& a, const Equation& b);
bool alpha_equal(const Expr& a, const Expr& b);

// Canonical serialization: equal iff alpha_equal.  Used as a set/map key.
std::string alpha_key(const Type& t);
std::string alpha_key(const Term& t);
std::string alpha_key(const Proof& p);
std::string alpha_key(const Path& p);
std::string alpha_key(const Expr& e);

struct FreeVars {
  std::set<std::string> term_vars;
  std::set<std::string> proof_vars;
  std::set<std::string> path_vars;

  bool empty() const {
    return term_vars.empty() && proof_vars.empty() && path_vars.empty();
  }
  void merge(const FreeVars& other);
};

FreeVars free_vars(const Term& t);
FreeVars free_vars(const Proof& p);
FreeVars free_vars(const Path& p);
FreeVars free_vars(const Equation& eq);
FreeVars free_vars(const Expr& e);

// Number of syntax nodes, annotations included.
int node_count(const Type& t);
int node_count(const Term& t);
int node_count(const Proof& p);
int node_count(const Path& p);
int node_count(const Expr& e);

// A name based on `base` that is not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// ---------------------------------------------------------------------------
// Canonical and neutral classifiers
// ---------------------------------------------------------------------------

enum class CanonicalClass { CanonicalProp, CanonicalProof, CanonicalPath, NotCanonical };

// Canonical propositions are the closed theta ::= bot | theta => theta;
// canonical proofs the proof lambdas; canonical paths ref, univ and lll.
CanonicalClass classify_canonical(const Term& t);
CanonicalClass classify_canonical(const Proof& p);
CanonicalClass classify_canonical(const Path& p);
CanonicalClass classify_canonical(const Expr& e);

// Neutral expressions: variable-headed stuck forms.
bool classify_neutral(const Term& t);
bool classify_neutral(const Proof& p);
bool classify_neutral(const Path& p);
bool classify_neutral(const Expr& e);

// ---------------------------------------------------------------------------
// Contexts and judgements
// ---------------------------------------------------------------------------

struct TermDecl {
  std::string name;
  Type type;
};
struct ProofDecl {
  std::string name;
  Term prop;
};
struct PathDecl {
  std::string name;
  Equation eq;
};
using ContextEntry = std::variant<TermDecl, ProofDecl, PathDecl>;

// Ordered list of declarations.  Names are pairwise distinct within their
// kind; later entries may mention earlier variables.
class Context {
 public:
  Context() = default;

  // Throws std::invalid_argument if the name is already declared in the same
  // variable kind.
  Context extended(ContextEntry entry) const;

  const std::vector<ContextEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  const Type* lookup_term(const std::string& name) const;
  const Term* lookup_proof(const std::string& name) const;
  const Equation* lookup_path(const std::string& name) const;

  bool has_term_vars() const;
  std::set<std::string> all_names() const;

 private:
  std::vector<ContextEntry> entries_;
};

struct JudgementValid {};
struct JudgementTerm {
  Term subject;
  Type classifier;
};
struct JudgementProof {
  Proof subject;
  Term classifier;
};
struct JudgementPath {
  Path subject;
  Equation classifier;
};

struct Judgement {
  Context context;
  std::variant<JudgementValid, JudgementTerm, JudgementProof, JudgementPath> body;
};

}  // namespace phoml
