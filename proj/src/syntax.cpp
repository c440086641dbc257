#include "phoml/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace phoml {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

Type Type::omega() {
  static const Type instance{std::make_shared<const TypeNode>(TypeNode{std::nullopt})};
  return instance;
}

Type Type::arrow(Type domain, Type codomain) {
  return Type{std::make_shared<const TypeNode>(
      TypeNode{std::make_pair(std::move(domain), std::move(codomain))})};
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_omega() != b.is_omega()) return false;
  if (a.is_omega()) return true;
  return a.domain() == b.domain() && a.codomain() == b.codomain();
}

// ---------------------------------------------------------------------------
// Closing: replace named free variables by indices pointing at a new binder
// ---------------------------------------------------------------------------

namespace {

// The variables being captured by the binder under construction.  Depths are
// the number of binders of each kind passed on the way down.
struct Closer {
  const std::string* term_x = nullptr;  // becomes term index depth+0
  const std::string* term_y = nullptr;  // becomes term index depth+1
  const std::string* proof_p = nullptr;
  const std::string* path_e = nullptr;

  Term run(const Term& t, int td, int pd, int ed) const {
    const TermNode& n = t.node();
    if (const auto* f = std::get_if<TermFree>(&n.v)) {
      if (term_x && f->name == *term_x) return Term::from_node({TermBound{td}});
      if (term_y && f->name == *term_y) return Term::from_node({TermBound{td + 1}});
      return t;
    }
    if (const auto* i = std::get_if<TermImp>(&n.v))
      return Term::from_node({TermImp{run(i->lhs, td, pd, ed), run(i->rhs, td, pd, ed)}});
    if (const auto* l = std::get_if<TermLam>(&n.v))
      return Term::from_node({TermLam{l->hint, l->ann, run(l->body, td + 1, pd, ed)}});
    if (const auto* a = std::get_if<TermApp>(&n.v))
      return Term::from_node({TermApp{run(a->fun, td, pd, ed), run(a->arg, td, pd, ed)}});
    return t;  // bound, bottom
  }

  Proof run(const Proof& p, int td, int pd, int ed) const {
    const ProofNode& n = p.node();
    if (const auto* f = std::get_if<ProofFree>(&n.v)) {
      if (proof_p && f->name == *proof_p) return Proof::from_node({ProofBound{pd}});
      return p;
    }
    if (const auto* l = std::get_if<ProofLam>(&n.v))
      return Proof::from_node(
          {ProofLam{l->hint, run(l->ann, td, pd, ed), run(l->body, td, pd + 1, ed)}});
    if (const auto* a = std::get_if<ProofApp>(&n.v))
      return Proof::from_node({ProofApp{run(a->fun, td, pd, ed), run(a->arg, td, pd, ed)}});
    if (const auto* pl = std::get_if<ProofPlus>(&n.v))
      return Proof::from_node({ProofPlus{run(pl->path, td, pd, ed)}});
    if (const auto* mi = std::get_if<ProofMinus>(&n.v))
      return Proof::from_node({ProofMinus{run(mi->path, td, pd, ed)}});
    return p;  // bound
  }

  Path run(const Path& p, int td, int pd, int ed) const {
    const PathNode& n = p.node();
    if (const auto* f = std::get_if<PathFree>(&n.v)) {
      if (path_e && f->name == *path_e) return Path::from_node({PathBound{ed}});
      return p;
    }
    if (const auto* r = std::get_if<PathRef>(&n.v))
      return Path::from_node({PathRef{run(r->term, td, pd, ed)}});
    if (const auto* s = std::get_if<PathImpStar>(&n.v))
      return Path::from_node({PathImpStar{run(s->lhs, td, pd, ed), run(s->rhs, td, pd, ed)}});
    if (const auto* u = std::get_if<PathUniv>(&n.v))
      return Path::from_node({PathUniv{run(u->src, td, pd, ed), run(u->tgt, td, pd, ed),
                                       run(u->fwd, td, pd, ed), run(u->bwd, td, pd, ed)}});
    if (const auto* t = std::get_if<PathTriLam>(&n.v))
      return Path::from_node({PathTriLam{t->hint_e, t->hint_x, t->hint_y, t->ann,
                                         run(t->body, td + 2, pd, ed + 1)}});
    if (const auto* a = std::get_if<PathAppNode>(&n.v))
      return Path::from_node({PathAppNode{run(a->fun, td, pd, ed), run(a->left, td, pd, ed),
                                          run(a->right, td, pd, ed), run(a->arg, td, pd, ed)}});
    return p;  // bound
  }
};

// Opening: substitute locally closed images for the indices of one binder.
struct Opener {
  const Term* term0 = nullptr;  // image for term index depth+0
  const Term* term1 = nullptr;  // image for term index depth+1
  const Proof* proof0 = nullptr;
  const Path* path0 = nullptr;

  Term run(const Term& t, int td, int pd, int ed) const {
    const TermNode& n = t.node();
    if (const auto* b = std::get_if<TermBound>(&n.v)) {
      if (term0 && b->index == td) return *term0;
      if (term1 && b->index == td + 1) return *term1;
      return t;
    }
    if (const auto* i = std::get_if<TermImp>(&n.v))
      return Term::from_node({TermImp{run(i->lhs, td, pd, ed), run(i->rhs, td, pd, ed)}});
    if (const auto* l = std::get_if<TermLam>(&n.v))
      return Term::from_node({TermLam{l->hint, l->ann, run(l->body, td + 1, pd, ed)}});
    if (const auto* a = std::get_if<TermApp>(&n.v))
      return Term::from_node({TermApp{run(a->fun, td, pd, ed), run(a->arg, td, pd, ed)}});
    return t;
  }

  Proof run(const Proof& p, int td, int pd, int ed) const {
    const ProofNode& n = p.node();
    if (const auto* b = std::get_if<ProofBound>(&n.v)) {
      if (proof0 && b->index == pd) return *proof0;
      return p;
    }
    if (const auto* l = std::get_if<ProofLam>(&n.v))
      return Proof::from_node(
          {ProofLam{l->hint, run(l->ann, td, pd, ed), run(l->body, td, pd + 1, ed)}});
    if (const auto* a = std::get_if<ProofApp>(&n.v))
      return Proof::from_node({ProofApp{run(a->fun, td, pd, ed), run(a->arg, td, pd, ed)}});
    if (const auto* pl = std::get_if<ProofPlus>(&n.v))
      return Proof::from_node({ProofPlus{run(pl->path, td, pd, ed)}});
    if (const auto* mi = std::get_if<ProofMinus>(&n.v))
      return Proof::from_node({ProofMinus{run(mi->path, td, pd, ed)}});
    return p;
  }

  Path run(const Path& p, int td, int pd, int ed) const {
    const PathNode& n = p.node();
    if (const auto* b = std::get_if<PathBound>(&n.v)) {
      if (path0 && b->index == ed) return *path0;
      return p;
    }
    if (const auto* r = std::get_if<PathRef>(&n.v))
      return Path::from_node({PathRef{run(r->term, td, pd, ed)}});
    if (const auto* s = std::get_if<PathImpStar>(&n.v))
      return Path::from_node({PathImpStar{run(s->lhs, td, pd, ed), run(s->rhs, td, pd, ed)}});
    if (const auto* u = std::get_if<PathUniv>(&n.v))
      return Path::from_node({PathUniv{run(u->src, td, pd, ed), run(u->tgt, td, pd, ed),
                                       run(u->fwd, td, pd, ed), run(u->bwd, td, pd, ed)}});
    if (const auto* t = std::get_if<PathTriLam>(&n.v))
      return Path::from_node({PathTriLam{t->hint_e, t->hint_x, t->hint_y, t->ann,
                                         run(t->body, td + 2, pd, ed + 1)}});
    if (const auto* a = std::get_if<PathAppNode>(&n.v))
      return Path::from_node({PathAppNode{run(a->fun, td, pd, ed), run(a->left, td, pd, ed),
                                          run(a->right, td, pd, ed), run(a->arg, td, pd, ed)}});
    return p;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

Term Term::from_node(TermNode node) {
  return Term{std::make_shared<const TermNode>(std::move(node))};
}
Proof Proof::from_node(ProofNode node) {
  return Proof{std::make_shared<const ProofNode>(std::move(node))};
}
Path Path::from_node(PathNode node) {
  return Path{std::make_shared<const PathNode>(std::move(node))};
}

Term Term::var(const std::string& name) { return from_node({TermFree{name}}); }
Term Term::bottom() { return from_node({TermBottom{}}); }
Term Term::imp(Term lhs, Term rhs) {
  return from_node({TermImp{std::move(lhs), std::move(rhs)}});
}
Term Term::lam(const std::string& x, Type ann, Term body) {
  Closer closer;
  closer.term_x = &x;
  return from_node({TermLam{x, std::move(ann), closer.run(body, 0, 0, 0)}});
}
Term Term::app(Term fun, Term arg) {
  return from_node({TermApp{std::move(fun), std::move(arg)}});
}

Proof Proof::var(const std::string& name) { return from_node({ProofFree{name}}); }
Proof Proof::lam(const std::string& p, Term ann, Proof body) {
  Closer closer;
  closer.proof_p = &p;
  return from_node({ProofLam{p, std::move(ann), closer.run(body, 0, 0, 0)}});
}
Proof Proof::app(Proof fun, Proof arg) {
  return from_node({ProofApp{std::move(fun), std::move(arg)}});
}
Proof Proof::plus(Path path) { return from_node({ProofPlus{std::move(path)}}); }
Proof Proof::minus(Path path) { return from_node({ProofMinus{std::move(path)}}); }

Path Path::var(const std::string& name) { return from_node({PathFree{name}}); }
Path Path::ref(Term term) { return from_node({PathRef{std::move(term)}}); }
Path Path::imp_star(Path lhs, Path rhs) {
  return from_node({PathImpStar{std::move(lhs), std::move(rhs)}});
}
Path Path::univ(Term src, Term tgt, Proof fwd, Proof bwd) {
  return from_node(
      {PathUniv{std::move(src), std::move(tgt), std::move(fwd), std::move(bwd)}});
}
Path Path::tri_lam(const std::string& e, const std::string& x, const std::string& y,
                   Type ann, Path body) {
  if (x == y) throw std::invalid_argument("tri_lam: term variables must be distinct");
  Closer closer;
  closer.path_e = &e;
  closer.term_x = &x;
  closer.term_y = &y;
  return from_node({PathTriLam{e, x, y, std::move(ann), closer.run(body, 0, 0, 0)}});
}
Path Path::app(Path fun, Term left, Term right, Path arg) {
  return from_node(
      {PathAppNode{std::move(fun), std::move(left), std::move(right), std::move(arg)}});
}

// ---------------------------------------------------------------------------
// Accessors
// ---------------------------------------------------------------------------

const TermBound* as_bound(const Term& t) { return std::get_if<TermBound>(&t.node().v); }
const TermFree* as_free(const Term& t) { return std::get_if<TermFree>(&t.node().v); }
const TermBottom* as_bottom(const Term& t) { return std::get_if<TermBottom>(&t.node().v); }
const TermImp* as_imp(const Term& t) { return std::get_if<TermImp>(&t.node().v); }
const TermLam* as_lam(const Term& t) { return std::get_if<TermLam>(&t.node().v); }
const TermApp* as_app(const Term& t) { return std::get_if<TermApp>(&t.node().v); }

const ProofBound* as_bound(const Proof& p) { return std::get_if<ProofBound>(&p.node().v); }
const ProofFree* as_free(const Proof& p) { return std::get_if<ProofFree>(&p.node().v); }
const ProofLam* as_lam(const Proof& p) { return std::get_if<ProofLam>(&p.node().v); }
const ProofApp* as_app(const Proof& p) { return std::get_if<ProofApp>(&p.node().v); }
const ProofPlus* as_plus(const Proof& p) { return std::get_if<ProofPlus>(&p.node().v); }
const ProofMinus* as_minus(const Proof& p) { return std::get_if<ProofMinus>(&p.node().v); }

const PathBound* as_bound(const Path& p) { return std::get_if<PathBound>(&p.node().v); }
const PathFree* as_free(const Path& p) { return std::get_if<PathFree>(&p.node().v); }
const PathRef* as_ref(const Path& p) { return std::get_if<PathRef>(&p.node().v); }
const PathImpStar* as_imp_star(const Path& p) { return std::get_if<PathImpStar>(&p.node().v); }
const PathUniv* as_univ(const Path& p) { return std::get_if<PathUniv>(&p.node().v); }
const PathTriLam* as_tri_lam(const Path& p) { return std::get_if<PathTriLam>(&p.node().v); }
const PathAppNode* as_path_app(const Path& p) { return std::get_if<PathAppNode>(&p.node().v); }

ExprClass class_of(const Expr& e) {
  if (std::holds_alternative<Term>(e)) return ExprClass::Term;
  if (std::holds_alternative<Proof>(e)) return ExprClass::Proof;
  return ExprClass::Path;
}

// ---------------------------------------------------------------------------
// Opening
// ---------------------------------------------------------------------------

Term open_body(const TermLam& lam, const Term& image) {
  Opener opener;
  opener.term0 = &image;
  return opener.run(lam.body, 0, 0, 0);
}

Proof open_body(const ProofLam& lam, const Proof& image) {
  Opener opener;
  opener.proof0 = &image;
  return opener.run(lam.body, 0, 0, 0);
}

Path open_body(const PathTriLam& tri, const Path& e_image, const Term& x_image,
               const Term& y_image) {
  Opener opener;
  opener.path0 = &e_image;
  opener.term0 = &x_image;
  opener.term1 = &y_image;
  return opener.run(tri.body, 0, 0, 0);
}

// ---------------------------------------------------------------------------
// Alpha equivalence
// ---------------------------------------------------------------------------

bool alpha_equal(const Term& a, const Term& b) {
  const TermNode& na = a.node();
  const TermNode& nb = b.node();
  if (na.v.index() != nb.v.index()) return false;
  if (const auto* x = std::get_if<TermBound>(&na.v))
    return x->index == std::get<TermBound>(nb.v).index;
  if (const auto* x = std::get_if<TermFree>(&na.v))
    return x->name == std::get<TermFree>(nb.v).name;
  if (std::get_if<TermBottom>(&na.v)) return true;
  if (const auto* x = std::get_if<TermImp>(&na.v)) {
    const auto& y = std::get<TermImp>(nb.v);
    return alpha_equal(x->lhs, y.lhs) && alpha_equal(x->rhs, y.rhs);
  }
  if (const auto* x = std::get_if<TermLam>(&na.v)) {
    const auto& y = std::get<TermLam>(nb.v);
    return x->ann == y.ann && alpha_equal(x->body, y.body);
  }
  const auto& x = std::get<TermApp>(na.v);
  const auto& y = std::get<TermApp>(nb.v);
  return alpha_equal(x.fun, y.fun) && alpha_equal(x.arg, y.arg);
}

bool alpha_equal(const Proof& a, const Proof& b) {
  const ProofNode& na = a.node();
  const ProofNode& nb = b.node();
  if (na.v.index() != nb.v.index()) return false;
  if (const auto* x = std::get_if<ProofBound>(&na.v))
    return x->index == std::get<ProofBound>(nb.v).index;
  if (const auto* x = std::get_if<ProofFree>(&na.v))
    return x->name == std::get<ProofFree>(nb.v).name;
  if (const auto* x = std::get_if<ProofLam>(&na.v)) {
    const auto& y = std::get<ProofLam>(nb.v);
    return alpha_equal(x->ann, y.ann) && alpha_equal(x->body, y.body);
  }
  if (const auto* x = std::get_if<ProofApp>(&na.v)) {
    const auto& y = std::get<ProofApp>(nb.v);
    return alpha_equal(x->fun, y.fun) && alpha_equal(x->arg, y.arg);
  }
  if (const auto* x = std::get_if<ProofPlus>(&na.v))
    return alpha_equal(x->path, std::get<ProofPlus>(nb.v).path);
  return alpha_equal(std::get<ProofMinus>(na.v).path, std::get<ProofMinus>(nb.v).path);
}

bool alpha_equal(const Path& a, const Path& b) {
  const PathNode& na = a.node();
  const PathNode& nb = b.node();
  if (na.v.index() != nb.v.index()) return false;
  if (const auto* x = std::get_if<PathBound>(&na.v))
    return x->index == std::get<PathBound>(nb.v).index;
  if (const auto* x = std::get_if<PathFree>(&na.v))
    return x->name == std::get<PathFree>(nb.v).name;
  if (const auto* x = std::get_if<PathRef>(&na.v))
    return alpha_equal(x->term, std::get<PathRef>(nb.v).term);
  if (const auto* x = std::get_if<PathImpStar>(&na.v)) {
    const auto& y = std::get<PathImpStar>(nb.v);
    return alpha_equal(x->lhs, y.lhs) && alpha_equal(x->rhs, y.rhs);
  }
  if (const auto* x = std::get_if<PathUniv>(&na.v)) {
    const auto& y = std::get<PathUniv>(nb.v);
    return alpha_equal(x->src, y.src) && alpha_equal(x->tgt, y.tgt) &&
           alpha_equal(x->fwd, y.fwd) && alpha_equal(x->bwd, y.bwd);
  }
  if (const auto* x = std::get_if<PathTriLam>(&na.v)) {
    const auto& y = std::get<PathTriLam>(nb.v);
    return x->ann == y.ann && alpha_equal(x->body, y.body);
  }
  const auto& x = std::get<PathAppNode>(na.v);
  const auto& y = std::get<PathAppNode>(nb.v);
  return alpha_equal(x.fun, y.fun) && alpha_equal(x.left, y.left) &&
         alpha_equal(x.right, y.right) && alpha_equal(x.arg, y.arg);
}

bool alpha_equal(const Equation& a, const Equation& b) {
  return a.type == b.type && alpha_equal(a.lhs, b.lhs) && alpha_equal(a.rhs, b.rhs);
}

bool alpha_equal(const Expr& a, const Expr& b) {
  if (a.index() != b.index()) return false;
  if (const auto* t = std::get_if<Term>(&a)) return alpha_equal(*t, std::get<Term>(b));
  if (const auto* p = std::get_if<Proof>(&a)) return alpha_equal(*p, std::get<Proof>(b));
  return alpha_equal(std::get<Path>(a), std::get<Path>(b));
}

bool operator==(const Term& a, const Term& b) { return alpha_equal(a, b); }
bool operator==(const Proof& a, const Proof& b) { return alpha_equal(a, b); }
bool operator==(const Path& a, const Path& b) { return alpha_equal(a, b); }

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

namespace {

void key(const Type& t, std::string& out) {
  if (t.is_omega()) {
    out += 'O';
    return;
  }
  out += '>';
  key(t.domain(), out);
  key(t.codomain(), out);
}

void key(const Term& t, std::string& out);
void key(const Proof& p, std::string& out);
void key(const Path& p, std::string& out);

void key(const Term& t, std::string& out) {
  const TermNode& n = t.node();
  if (const auto* b = std::get_if<TermBound>(&n.v)) {
    out += 'v';
    out += std::to_string(b->index);
    out += ';';
  } else if (const auto* f = std::get_if<TermFree>(&n.v)) {
    out += 'f';
    out += f->name;
    out += ';';
  } else if (std::get_if<TermBottom>(&n.v)) {
    out += 'o';
  } else if (const auto* i = std::get_if<TermImp>(&n.v)) {
    out += 'i';
    key(i->lhs, out);
    key(i->rhs, out);
  } else if (const auto* l = std::get_if<TermLam>(&n.v)) {
    out += 'l';
    key(l->ann, out);
    key(l->body, out);
  } else {
    const auto& a = std::get<TermApp>(n.v);
    out += 'a';
    key(a.fun, out);
    key(a.arg, out);
  }
}

void key(const Proof& p, std::string& out) {
  const ProofNode& n = p.node();
  if (const auto* b = std::get_if<ProofBound>(&n.v)) {
    out += 'V';
    out += std::to_string(b->index);
    out += ';';
  } else if (const auto* f = std::get_if<ProofFree>(&n.v)) {
    out += 'F';
    out += f->name;
    out += ';';
  } else if (const auto* l = std::get_if<ProofLam>(&n.v)) {
    out += 'L';
    key(l->ann, out);
    key(l->body, out);
  } else if (const auto* a = std::get_if<ProofApp>(&n.v)) {
    out += 'A';
    key(a->fun, out);
    key(a->arg, out);
  } else if (const auto* pl = std::get_if<ProofPlus>(&n.v)) {
    out += '+';
    key(pl->path, out);
  } else {
    out += '-';
    key(std::get<ProofMinus>(n.v).path, out);
  }
}

void key(const Path& p, std::string& out) {
  const PathNode& n = p.node();
  if (const auto* b = std::get_if<PathBound>(&n.v)) {
    out += 'w';
    out += std::to_string(b->index);
    out += ';';
  } else if (const auto* f = std::get_if<PathFree>(&n.v)) {
    out += 'g';
    out += f->name;
    out += ';';
  } else if (const auto* r = std::get_if<PathRef>(&n.v)) {
    out += 'r';
    key(r->term, out);
  } else if (const auto* s = std::get_if<PathImpStar>(&n.v)) {
    out += 's';
    key(s->lhs, out);
    key(s->rhs, out);
  } else if (const auto* u = std::get_if<PathUniv>(&n.v)) {
    out += 'u';
    key(u->src, out);
    key(u->tgt, out);
    key(u->fwd, out);
    key(u->bwd, out);
  } else if (const auto* t = std::get_if<PathTriLam>(&n.v)) {
    out += 't';
    key(t->ann, out);
    key(t->body, out);
  } else {
    const auto& a = std::get<PathAppNode>(n.v);
    out += 'q';
    key(a.fun, out);
    key(a.left, out);
    key(a.right, out);
    key(a.arg, out);
  }
}

}  // namespace

std::string alpha_key(const Type& t) {
  std::string out;
  key(t, out);
  return out;
}
std::string alpha_key(const Term& t) {
  std::string out;
  key(t, out);
  return out;
}
std::string alpha_key(const Proof& p) {
  std::string out;
  key(p, out);
  return out;
}
std::string alpha_key(const Path& p) {
  std::string out;
  key(p, out);
  return out;
}
std::string alpha_key(const Expr& e) {
  return std::visit([](const auto& x) { return alpha_key(x); }, e);
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

void FreeVars::merge(const FreeVars& other) {
  term_vars.insert(other.term_vars.begin(), other.term_vars.end());
  proof_vars.insert(other.proof_vars.begin(), other.proof_vars.end());
  path_vars.insert(other.path_vars.begin(), other.path_vars.end());
}

namespace {

void collect(const Term& t, FreeVars& acc);
void collect(const Proof& p, FreeVars& acc);
void collect(const Path& p, FreeVars& acc);

void collect(const Term& t, FreeVars& acc) {
  const TermNode& n = t.node();
  if (const auto* f = std::get_if<TermFree>(&n.v)) {
    acc.term_vars.insert(f->name);
  } else if (const auto* i = std::get_if<TermImp>(&n.v)) {
    collect(i->lhs, acc);
    collect(i->rhs, acc);
  } else if (const auto* l = std::get_if<TermLam>(&n.v)) {
    collect(l->body, acc);
  } else if (const auto* a = std::get_if<TermApp>(&n.v)) {
    collect(a->fun, acc);
    collect(a->arg, acc);
  }
}

void collect(const Proof& p, FreeVars& acc) {
  const ProofNode& n = p.node();
  if (const auto* f = std::get_if<ProofFree>(&n.v)) {
    acc.proof_vars.insert(f->name);
  } else if (const auto* l = std::get_if<ProofLam>(&n.v)) {
    collect(l->ann, acc);
    collect(l->body, acc);
  } else if (const auto* a = std::get_if<ProofApp>(&n.v)) {
    collect(a->fun, acc);
    collect(a->arg, acc);
  } else if (const auto* pl = std::get_if<ProofPlus>(&n.v)) {
    collect(pl->path, acc);
  } else if (const auto* mi = std::get_if<ProofMinus>(&n.v)) {
    collect(mi->path, acc);
  }
}

void collect(const Path& p, FreeVars& acc) {
  const PathNode& n = p.node();
  if (const auto* f = std::get_if<PathFree>(&n.v)) {
    acc.path_vars.insert(f->name);
  } else if (const auto* r = std::get_if<PathRef>(&n.v)) {
    collect(r->term, acc);
  } else if (const auto* s = std::get_if<PathImpStar>(&n.v)) {
    collect(s->lhs, acc);
    collect(s->rhs, acc);
  } else if (const auto* u = std::get_if<PathUniv>(&n.v)) {
    collect(u->src, acc);
    collect(u->tgt, acc);
    collect(u->fwd, acc);
    collect(u->bwd, acc);
  } else if (const auto* t = std::get_if<PathTriLam>(&n.v)) {
    collect(t->body, acc);
  } else if (const auto* a = std::get_if<PathAppNode>(&n.v)) {
    collect(a->fun, acc);
    collect(a->left, acc);
    collect(a->right, acc);
    collect(a->arg, acc);
  }
}

}  // namespace

FreeVars free_vars(const Term& t) {
  FreeVars acc;
  collect(t, acc);
  return acc;
}
FreeVars free_vars(const Proof& p) {
  FreeVars acc;
  collect(p, acc);
  return acc;
}
FreeVars free_vars(const Path& p) {
  FreeVars acc;
  collect(p, acc);
  return acc;
}
FreeVars free_vars(const Equation& eq) {
  FreeVars acc;
  collect(eq.lhs, acc);
  collect(eq.rhs, acc);
  return acc;
}

FreeVars free_vars(const Expr& e) {
  return std::visit([](const auto& x) { return free_vars(x); }, e);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base.empty() ? "x" : base;
  while (avoid.count(candidate)) candidate += '\'';
  return candidate;
}

// ---------------------------------------------------------------------------
// Node counts
// ---------------------------------------------------------------------------

int node_count(const Type& t) {
  if (t.is_omega()) return 1;
  return 1 + node_count(t.domain()) + node_count(t.codomain());
}

int node_count(const Term& t) {
  const TermNode& n = t.node();
  if (const auto* i = std::get_if<TermImp>(&n.v))
    return 1 + node_count(i->lhs) + node_count(i->rhs);
  if (const auto* l = std::get_if<TermLam>(&n.v))
    return 1 + node_count(l->ann) + node_count(l->body);
  if (const auto* a = std::get_if<TermApp>(&n.v))
    return 1 + node_count(a->fun) + node_count(a->arg);
  return 1;
}

int node_count(const Proof& p) {
  const ProofNode& n = p.node();
  if (const auto* l = std::get_if<ProofLam>(&n.v))
    return 1 + node_count(l->ann) + node_count(l->body);
  if (const auto* a = std::get_if<ProofApp>(&n.v))
    return 1 + node_count(a->fun) + node_count(a->arg);
  if (const auto* pl = std::get_if<ProofPlus>(&n.v)) return 1 + node_count(pl->path);
  if (const auto* mi = std::get_if<ProofMinus>(&n.v)) return 1 + node_count(mi->path);
  return 1;
}

int node_count(const Path& p) {
  const PathNode& n = p.node();
  if (const auto* r = std::get_if<PathRef>(&n.v)) return 1 + node_count(r->term);
  if (const auto* s = std::get_if<PathImpStar>(&n.v))
    return 1 + node_count(s->lhs) + node_count(s->rhs);
  if (const auto* u = std::get_if<PathUniv>(&n.v))
    return 1 + node_count(u->src) + node_count(u->tgt) + node_count(u->fwd) +
           node_count(u->bwd);
  if (const auto* t = std::get_if<PathTriLam>(&n.v))
    return 1 + node_count(t->ann) + node_count(t->body);
  if (const auto* a = std::get_if<PathAppNode>(&n.v))
    return 1 + node_count(a->fun) + node_count(a->left) + node_count(a->right) +
           node_count(a->arg);
  return 1;
}

int node_count(const Expr& e) {
  return std::visit([](const auto& x) { return node_count(x); }, e);
}

// ---------------------------------------------------------------------------
// Classifiers
// ---------------------------------------------------------------------------

namespace {

// theta ::= bot | theta => theta.  Closed by construction.
bool is_canonical_prop(const Term& t) {
  if (as_bottom(t)) return true;
  if (const auto* i = as_imp(t))
    return is_canonical_prop(i->lhs) && is_canonical_prop(i->rhs);
  return false;
}

}  // namespace

CanonicalClass classify_canonical(const Term& t) {
  return is_canonical_prop(t) ? CanonicalClass::CanonicalProp
                              : CanonicalClass::NotCanonical;
}

CanonicalClass classify_canonical(const Proof& p) {
  return as_lam(p) ? CanonicalClass::CanonicalProof : CanonicalClass::NotCanonical;
}

CanonicalClass classify_canonical(const Path& p) {
  if (as_ref(p) || as_univ(p) || as_tri_lam(p)) return CanonicalClass::CanonicalPath;
  return CanonicalClass::NotCanonical;
}

CanonicalClass classify_canonical(const Expr& e) {
  return std::visit([](const auto& x) { return classify_canonical(x); }, e);
}

bool classify_neutral(const Term& t) {
  if (as_free(t) || as_bound(t)) return true;
  if (const auto* a = as_app(t)) return classify_neutral(a->fun);
  return false;
}

bool classify_neutral(const Proof& p) {
  if (as_free(p) || as_bound(p)) return true;
  if (const auto* pl = as_plus(p)) return classify_neutral(pl->path);
  if (const auto* mi = as_minus(p)) return classify_neutral(mi->path);
  if (const auto* a = as_app(p)) return classify_neutral(a->fun);
  return false;
}

bool classify_neutral(const Path& p) {
  if (as_free(p) || as_bound(p)) return true;
  if (const auto* s = as_imp_star(p))
    return classify_neutral(s->lhs) || classify_neutral(s->rhs);
  if (const auto* a = as_path_app(p)) return classify_neutral(a->fun);
  return false;
}

bool classify_neutral(const Expr& e) {
  return std::visit([](const auto& x) { return classify_neutral(x); }, e);
}

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

namespace {

const std::string& entry_name(const ContextEntry& entry) {
  return std::visit([](const auto& d) -> const std::string& { return d.name; }, entry);
}

}  // namespace

Context Context::extended(ContextEntry entry) const {
  for (const auto& existing : entries_) {
    if (existing.index() == entry.index() &&
        entry_name(existing) == entry_name(entry))
      throw std::invalid_argument("context already declares " + entry_name(entry));
  }
  Context result = *this;
  result.entries_.push_back(std::move(entry));
  return result;
}

const Type* Context::lookup_term(const std::string& name) const {
  for (const auto& entry : entries_)
    if (const auto* d = std::get_if<TermDecl>(&entry))
      if (d->name == name) return &d->type;
  return nullptr;
}

const Term* Context::lookup_proof(const std::string& name) const {
  for (const auto& entry : entries_)
    if (const auto* d = std::get_if<ProofDecl>(&entry))
      if (d->name == name) return &d->prop;
  return nullptr;
}

const Equation* Context::lookup_path(const std::string& name) const {
  for (const auto& entry : entries_)
    if (const auto* d = std::get_if<PathDecl>(&entry))
      if (d->name == name) return &d->eq;
  return nullptr;
}

bool Context::has_term_vars() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const ContextEntry& e) {
    return std::holds_alternative<TermDecl>(e);
  });
}

std::set<std::string> Context::all_names() const {
  std::set<std::string> names;
  for (const auto& entry : entries_) names.insert(entry_name(entry));
  return names;
}

}  // namespace phoml
