#include "phoml/parallel_reduction.hpp"

#include <deque>
#include <map>
#include <set>

#include "phoml/reduction.hpp"

namespace phoml {

namespace {

// Enumerates the parallel reducts of every subexpression, memoized per
// alpha-class.  The top-level redex rules contract on the original components;
// the congruence rules combine independent choices in each head position.
class ParallelEngine {
 public:
  explicit ParallelEngine(std::size_t cap) : cap_(cap) {}

  bool overflow() const { return overflow_; }

  std::vector<Term> reducts(const Term& t) {
    std::string k = alpha_key(t);
    if (auto it = term_memo_.find(k); it != term_memo_.end()) return it->second;
    std::vector<Term> out;
    std::set<std::string> seen;
    add(out, seen, t);
    if (const auto* a = as_app(t)) {
      if (const auto* l = as_lam(a->fun)) add(out, seen, open_body(*l, a->arg));
      for (const Term& fun : reducts(a->fun)) add(out, seen, Term::app(fun, a->arg));
    } else if (const auto* i = as_imp(t)) {
      for (const Term& lhs : reducts(i->lhs))
        for (const Term& rhs : reducts(i->rhs)) add(out, seen, Term::imp(lhs, rhs));
    }
    term_memo_.emplace(std::move(k), out);
    return out;
  }

  std::vector<Proof> reducts(const Proof& p) {
    std::string k = alpha_key(p);
    if (auto it = proof_memo_.find(k); it != proof_memo_.end()) return it->second;
    std::vector<Proof> out;
    std::set<std::string> seen;
    add(out, seen, p);
    if (const auto* a = as_app(p)) {
      if (const auto* l = as_lam(a->fun)) add(out, seen, open_body(*l, a->arg));
      for (const Proof& fun : reducts(a->fun)) add(out, seen, Proof::app(fun, a->arg));
    } else if (const auto* pl = as_plus(p)) {
      if (const auto* r = as_ref(pl->path)) add(out, seen, rules::identity_proof(r->term));
      if (const auto* u = as_univ(pl->path)) add(out, seen, u->fwd);
      for (const Path& path : reducts(pl->path)) add(out, seen, Proof::plus(path));
    } else if (const auto* mi = as_minus(p)) {
      if (const auto* r = as_ref(mi->path)) add(out, seen, rules::identity_proof(r->term));
      if (const auto* u = as_univ(mi->path)) add(out, seen, u->bwd);
      for (const Path& path : reducts(mi->path)) add(out, seen, Proof::minus(path));
    }
    proof_memo_.emplace(std::move(k), out);
    return out;
  }

  std::vector<Path> reducts(const Path& p) {
    std::string k = alpha_key(p);
    if (auto it = path_memo_.find(k); it != path_memo_.end()) return it->second;
    std::vector<Path> out;
    std::set<std::string> seen;
    add(out, seen, p);
    if (const auto* s = as_imp_star(p)) {
      const auto* lr = as_ref(s->lhs);
      const auto* lu = as_univ(s->lhs);
      const auto* rr = as_ref(s->rhs);
      const auto* ru = as_univ(s->rhs);
      if (lr && rr) add(out, seen, Path::ref(Term::imp(lr->term, rr->term)));
      if (lr && ru) add(out, seen, rules::impstar_ref_univ(lr->term, *ru));
      if (lu && rr) add(out, seen, rules::impstar_univ_ref(*lu, rr->term));
      if (lu && ru) add(out, seen, rules::impstar_univ_univ(*lu, *ru));
      for (const Path& lhs : reducts(s->lhs))
        for (const Path& rhs : reducts(s->rhs))
          add(out, seen, Path::imp_star(lhs, rhs));
    } else if (const auto* a = as_path_app(p)) {
      if (const auto* tri = as_tri_lam(a->fun))
        add(out, seen, open_body(*tri, a->arg, a->left, a->right));
      if (const auto* r = as_ref(a->fun)) {
        if (const auto* l = as_lam(r->term))
          add(out, seen, rules::ref_lam_app(*l, a->left, a->right, a->arg));
        for (const Term& inner : reducts(r->term))
          add(out, seen, Path::app(Path::ref(inner), a->left, a->right, a->arg));
      }
      for (const Path& fun : reducts(a->fun))
        add(out, seen, Path::app(fun, a->left, a->right, a->arg));
    }
    path_memo_.emplace(std::move(k), out);
    return out;
  }

  std::vector<Expr> reducts(const Expr& e) {
    std::vector<Expr> out;
    std::visit(
        [&](const auto& x) {
          for (auto& r : reducts(x)) out.push_back(std::move(r));
        },
        e);
    return out;
  }

 private:
  template <class T>
  void add(std::vector<T>& out, std::set<std::string>& seen, T value) {
    if (out.size() >= cap_) {
      overflow_ = true;
      return;
    }
    if (seen.insert(alpha_key(value)).second) out.push_back(std::move(value));
  }

  std::size_t cap_;
  bool overflow_ = false;
  std::map<std::string, std::vector<Term>> term_memo_;
  std::map<std::string, std::vector<Proof>> proof_memo_;
  std::map<std::string, std::vector<Path>> path_memo_;
};

}  // namespace

ParallelSet parallel_reducts(const Expr& e, std::size_t cap) {
  ParallelEngine engine(cap);
  ParallelSet result;
  result.elements = engine.reducts(e);
  result.overflow = engine.overflow();
  return result;
}

DiamondCheck check_diamond(const Expr& e, std::size_t cap) {
  DiamondCheck check;
  ParallelEngine engine(cap);
  std::vector<Expr> reducts = engine.reducts(e);
  if (engine.overflow()) {
    check.overflow = true;
    return check;
  }

  // Parallel reducts (with their key sets) of each branch, computed on demand.
  std::vector<std::optional<std::pair<std::vector<Expr>, std::set<std::string>>>>
      branch_reducts(reducts.size());
  auto branch = [&](std::size_t i)
      -> const std::pair<std::vector<Expr>, std::set<std::string>>& {
    if (!branch_reducts[i]) {
      std::vector<Expr> rs = engine.reducts(reducts[i]);
      std::set<std::string> keys;
      for (const Expr& r : rs) keys.insert(alpha_key(r));
      branch_reducts[i] = std::make_pair(std::move(rs), std::move(keys));
    }
    return *branch_reducts[i];
  };

  for (std::size_t i = 0; i < reducts.size(); ++i) {
    for (std::size_t j = i + 1; j < reducts.size(); ++j) {
      DiamondReport report{e, reducts[i], reducts[j], std::nullopt,
                           DiamondReport::Verdict::Joined};
      const auto& [rs_i, keys_i] = branch(i);
      (void)rs_i;
      std::optional<Expr> join;
      for (const Expr& candidate : branch(j).first) {
        if (keys_i.count(alpha_key(candidate))) {
          join = candidate;
          break;
        }
      }
      if (engine.overflow()) {
        check.overflow = true;
        return check;
      }
      if (join) {
        report.join = join;
        report.verdict = DiamondReport::Verdict::Joined;
      } else {
        report.verdict = DiamondReport::Verdict::CounterexampleCandidate;
      }
      check.reports.push_back(std::move(report));
    }
  }
  return check;
}

RelateVerdict relate_relations(const Expr& e, std::size_t cap) {
  RelateVerdict verdict;
  ParallelSet pr = parallel_reducts(e, cap);
  if (pr.overflow) {
    verdict.overflow = true;
    return verdict;
  }
  std::set<std::string> parallel_keys;
  for (const Expr& r : pr.elements) parallel_keys.insert(alpha_key(r));

  for (const Expr& s : step_all(e)) {
    if (!parallel_keys.count(alpha_key(s))) {
      verdict.step_all_contained = false;
      verdict.missing.push_back(s);
    }
  }

  // Bounded breadth-first ->* search from e until every parallel reduct is seen.
  std::set<std::string> reached;
  std::deque<Expr> frontier;
  frontier.push_back(e);
  reached.insert(alpha_key(e));
  std::size_t expanded = 0;
  std::set<std::string> remaining = parallel_keys;
  remaining.erase(alpha_key(e));
  while (!frontier.empty() && !remaining.empty() && expanded < cap) {
    Expr current = frontier.front();
    frontier.pop_front();
    ++expanded;
    for (const Expr& next : step_all(current)) {
      std::string k = alpha_key(next);
      if (reached.insert(k).second) frontier.push_back(next);
      remaining.erase(k);
    }
  }
  if (!remaining.empty()) {
    verdict.parallel_reachable = false;
    for (const Expr& r : pr.elements)
      if (remaining.count(alpha_key(r))) verdict.unreachable.push_back(r);
  }
  return verdict;
}

std::string render_diamond_line(const DiamondReport& report, std::uint64_t seed) {
  const char* verdict =
      report.verdict == DiamondReport::Verdict::Joined ? "joined" : "counterexample";
  return std::string("DIAMOND ") + verdict + " " +
         std::to_string(node_count(report.source)) + " " + std::to_string(seed);
}

bool joinable(const Expr& a, const Expr& b, int depth, std::size_t max_nodes) {
  if (alpha_equal(a, b)) return true;

  std::set<std::string> seen_a;
  std::vector<Expr> layer_a{a};
  seen_a.insert(alpha_key(a));
  std::size_t nodes = 0;
  for (int d = 0; d < depth && !layer_a.empty(); ++d) {
    std::vector<Expr> next;
    for (const Expr& current : layer_a) {
      if (++nodes > max_nodes) break;
      for (const Expr& r : step_all(current))
        if (seen_a.insert(alpha_key(r)).second) next.push_back(r);
    }
    layer_a = std::move(next);
  }

  std::set<std::string> seen_b;
  std::vector<Expr> layer_b{b};
  if (seen_a.count(alpha_key(b))) return true;
  seen_b.insert(alpha_key(b));
  for (int d = 0; d < depth && !layer_b.empty(); ++d) {
    std::vector<Expr> next;
    for (const Expr& current : layer_b) {
      if (++nodes > max_nodes) return false;
      for (const Expr& r : step_all(current)) {
        std::string k = alpha_key(r);
        if (seen_a.count(k)) return true;
        if (seen_b.insert(k).second) next.push_back(r);
      }
    }
    layer_b = std::move(next);
  }
  return false;
}

}  // namespace phoml
