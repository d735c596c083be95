#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "rdfsupd/entailment.hpp"
#include "rdfsupd/pattern.hpp"
#include "rdfsupd/rewrite.hpp"

namespace rdfsupd {

// Set-semantics answers. Rows of a UNION whose disjuncts mention different
// variables may leave some of `vars` unbound.
struct AnswerSet {
  std::vector<Var> vars;
  std::set<Substitution> rows;

  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }

  // Values of `v` across all rows.
  std::set<Iri> column(const Var& v) const {
    std::set<Iri> out;
    for (const auto& row : rows) {
      auto it = row.find(v);
      if (it != row.end()) out.insert(it->second);
    }
    return out;
  }
};

inline AnswerSet project(const AnswerSet& in, const std::vector<Var>& vars) {
  AnswerSet out;
  out.vars = vars;
  for (const auto& row : in.rows) out.rows.insert(project(row, vars));
  return out;
}

// Read-only triple index over one store snapshot.
class TripleIndex {
 public:
  explicit TripleIndex(const TripleStore& store) : triples_(store.triples()) {
    for (std::size_t i = 0; i < triples_.size(); ++i) {
      const auto& t = triples_[i];
      by_predicate_[t.predicate].push_back(i);
      by_subject_[t.subject].push_back(i);
      by_object_[t.object].push_back(i);
      terms_.insert(t.subject);
      terms_.insert(t.predicate);
      terms_.insert(t.object);
    }
  }

  const std::set<Iri>& terms() const noexcept { return terms_; }

  template <class F>
  void for_each_match(const TriplePattern& p, F&& f) const {
    const std::vector<std::size_t>* candidates = nullptr;
    auto narrow = [&](const Term& t, const std::map<Iri, std::vector<std::size_t>>& idx) {
      if (!is_iri(t)) return true;
      auto it = idx.find(as_iri(t));
      if (it == idx.end()) return false;
      if (!candidates || it->second.size() < candidates->size()) candidates = &it->second;
      return true;
    };
    if (!narrow(p.subject, by_subject_) || !narrow(p.predicate, by_predicate_) || !narrow(p.object, by_object_)) {
      return;
    }
    auto visit = [&](const Triple& t) {
      if (matches(p.subject, t.subject) && matches(p.predicate, t.predicate) && matches(p.object, t.object)) f(t);
    };
    if (candidates) {
      for (std::size_t i : *candidates) visit(triples_[i]);
    } else {
      for (const auto& t : triples_) visit(t);
    }
  }

  // Nodes reachable from `start` by zero or more `pred` edges (forward) or
  // against them (backward). The empty path only counts for store terms.
  std::set<Iri> reachable(const Iri& start, const Iri& pred, bool forward) const {
    std::set<Iri> seen;
    if (terms_.contains(start)) seen.insert(start);
    std::vector<Iri> stack{start};
    auto it = by_predicate_.find(pred);
    if (it == by_predicate_.end()) return seen;
    std::map<Iri, std::vector<Iri>>& adj = forward ? forward_[pred] : backward_[pred];
    if (adj.empty()) {
      for (std::size_t i : it->second) {
        const auto& t = triples_[i];
        if (forward) {
          adj[t.subject].push_back(t.object);
        } else {
          adj[t.object].push_back(t.subject);
        }
      }
    }
    while (!stack.empty()) {
      Iri n = std::move(stack.back());
      stack.pop_back();
      auto a = adj.find(n);
      if (a == adj.end()) continue;
      for (const auto& m : a->second) {
        if (seen.insert(m).second) stack.push_back(m);
      }
    }
    return seen;
  }

 private:
  static bool matches(const Term& pattern, const Iri& value) {
    return is_var(pattern) || as_iri(pattern) == value;
  }

  std::vector<Triple> triples_;
  std::map<Iri, std::vector<std::size_t>> by_predicate_;
  std::map<Iri, std::vector<std::size_t>> by_subject_;
  std::map<Iri, std::vector<std::size_t>> by_object_;
  std::set<Iri> terms_;
  // Lazily built path adjacency; the index is not shared across threads.
  mutable std::map<Iri, std::map<Iri, std::vector<Iri>>> forward_;
  mutable std::map<Iri, std::map<Iri, std::vector<Iri>>> backward_;
};

namespace detail {

inline bool bind(Substitution& theta, const Term& pattern, const Iri& value) {
  if (!is_var(pattern)) return as_iri(pattern) == value;
  auto [it, inserted] = theta.emplace(as_var(pattern), value);
  return inserted || it->second == value;
}

inline std::size_t unbound_count(const Atom& atom, const Substitution& theta) {
  std::vector<Var> vs;
  collect_vars(atom, vs);
  std::size_t n = 0;
  for (const auto& v : vs) n += theta.contains(v) ? 0 : 1;
  // Binders and unanchored paths enumerate the whole term table.
  if (n > 0 && std::holds_alternative<AnyTerm>(atom)) return 100;
  if (n == 2 && std::holds_alternative<PathPattern>(atom)) return 200;
  return n;
}

class Matcher {
 public:
  Matcher(const TripleIndex& index, std::set<Substitution>& out) : index_(index), out_(out) {}

  void solve(std::vector<Atom> pending, Substitution theta) {
    if (pending.empty()) {
      out_.insert(std::move(theta));
      return;
    }
    std::size_t best = 0;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      std::size_t c = unbound_count(pending[i], theta);
      if (c < best_cost) {
        best_cost = c;
        best = i;
      }
    }
    Atom atom = std::move(pending[best]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));

    std::visit(
        [&](const auto& a) {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, TriplePattern>) {
            const TriplePattern bound = substitute(a, theta);
            index_.for_each_match(bound, [&](const Triple& t) {
              Substitution next = theta;
              if (bind(next, bound.subject, t.subject) && bind(next, bound.predicate, t.predicate) &&
                  bind(next, bound.object, t.object)) {
                solve(pending, std::move(next));
              }
            });
          } else if constexpr (std::is_same_v<A, AnyTerm>) {
            auto it = theta.find(a.var);
            if (it != theta.end()) {
              if (index_.terms().contains(it->second)) solve(pending, theta);
              return;
            }
            for (const auto& term : index_.terms()) {
              Substitution next = theta;
              next.emplace(a.var, term);
              solve(pending, std::move(next));
            }
          } else {
            solve_path(a, pending, theta);
          }
        },
        atom);
  }

 private:
  void solve_path(const PathPattern& p, const std::vector<Atom>& pending, const Substitution& theta) {
    const Term s = substitute(p.subject, theta);
    const Term o = substitute(p.object, theta);
    auto emit = [&](const Iri& from, const Iri& to) {
      Substitution next = theta;
      if (bind(next, s, from) && bind(next, o, to)) solve(pending, std::move(next));
    };
    if (is_iri(s)) {
      for (const auto& to : index_.reachable(as_iri(s), p.predicate, true)) emit(as_iri(s), to);
    } else if (is_iri(o)) {
      for (const auto& from : index_.reachable(as_iri(o), p.predicate, false)) emit(from, as_iri(o));
    } else {
      for (const auto& from : index_.terms()) {
        for (const auto& to : index_.reachable(from, p.predicate, true)) emit(from, to);
      }
    }
  }

  const TripleIndex& index_;
  std::set<Substitution>& out_;
};

}  // namespace detail

// All substitutions (over the disjunct's variables) under which `bgp` maps
// into the indexed triples.
inline std::set<Substitution> match_bgp(const Bgp& bgp, const TripleIndex& index) {
  std::set<Substitution> rows;
  detail::Matcher(index, rows).solve(bgp.atoms(), {});
  return rows;
}

// Simple (homomorphism) matching of each disjunct against every triple of
// the store, TBox included.
inline AnswerSet eval_simple(const UnionPattern& pattern, const TripleStore& store) {
  const TripleIndex index(store);
  AnswerSet out;
  out.vars = vars_of(pattern);
  for (const auto& d : pattern.disjuncts()) {
    auto rows = match_bgp(d, index);
    out.rows.insert(rows.begin(), rows.end());
  }
  return out;
}

inline AnswerSet eval_simple(const Bgp& pattern, const TripleStore& store) {
  return eval_simple(UnionPattern{pattern}, store);
}

// RDFS answers by UCQ rewriting over the stored triples, projected to the
// variables of `q`.
inline AnswerSet ans_rdfs_rewriting(const UnionPattern& q, const TripleStore& store) {
  if (q.general()) throw GeneralOnlyPattern("rewriting-based answering needs a non-general query");
  FreshVars fresh;
  AnswerSet raw = eval_simple(rewrite_union(q, store.tbox, fresh), store);
  return project(raw, vars_of(q));
}

// RDFS answers by simple matching over the closure. A store already tagged
// materialised is used as is, except that general queries still see the
// transitively closed TBox.
inline AnswerSet ans_rdfs_materialization(const UnionPattern& q, const TripleStore& store) {
  if (store.mode != StoreMode::Materialised) return project(eval_simple(q, mat(store)), vars_of(q));
  if (!q.general()) return project(eval_simple(q, store), vars_of(q));
  TripleStore closed = store;
  closed.tbox = tbox_closure(store.tbox);
  return project(eval_simple(q, closed), vars_of(q));
}

enum class Regime { Simple, Rdfs };
enum class Strategy { Rewriting, Materialization };

inline AnswerSet answer(const Query& q, const TripleStore& store, Regime regime = Regime::Rdfs,
                        Strategy via = Strategy::Rewriting) {
  AnswerSet raw;
  if (regime == Regime::Simple) {
    raw = eval_simple(q.where, store);
  } else if (via == Strategy::Rewriting) {
    raw = ans_rdfs_rewriting(q.where, store);
  } else {
    raw = ans_rdfs_materialization(q.where, store);
  }
  return project(raw, q.select);
}

}  // namespace rdfsupd
