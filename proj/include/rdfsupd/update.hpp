#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rdfsupd/entailment.hpp"
#include "rdfsupd/query.hpp"
#include "rdfsupd/rewrite.hpp"

namespace rdfsupd {

enum class Semantics { Naive, Mat0, Mat1a, Mat1b, Mat2, Red0, Red1, OutCut, InCut };

inline constexpr Semantics kAllSemantics[] = {Semantics::Naive, Semantics::Mat0,   Semantics::Mat1a,
                                              Semantics::Mat1b, Semantics::Mat2,   Semantics::Red0,
                                              Semantics::Red1,  Semantics::OutCut, Semantics::InCut};

inline std::string_view to_string(Semantics s) {
  switch (s) {
    case Semantics::Naive: return "naive";
    case Semantics::Mat0: return "mat0";
    case Semantics::Mat1a: return "mat1a";
    case Semantics::Mat1b: return "mat1b";
    case Semantics::Mat2: return "mat2";
    case Semantics::Red0: return "red0";
    case Semantics::Red1: return "red1";
    case Semantics::OutCut: return "outcut";
    case Semantics::InCut: return "incut";
  }
  return "naive";
}

inline Semantics parse_semantics(std::string_view name) {
  for (Semantics s : kAllSemantics) {
    if (to_string(s) == name) return s;
  }
  if (name == "mat3") {
    throw UnsupportedFeature(
        "mat3 is not implemented; candidate constructions combine mat1a with mat2 or mat1b with mat2");
  }
  throw Error("unknown semantics '" + std::string(name) + "'");
}

inline bool requires_materialised(Semantics s) {
  return s == Semantics::Mat0 || s == Semantics::Mat1a || s == Semantics::Mat1b || s == Semantics::Mat2 ||
         s == Semantics::OutCut || s == Semantics::InCut;
}

inline bool requires_reduced(Semantics s) { return s == Semantics::Red0 || s == Semantics::Red1; }

// How the WHERE clause is answered. Default picks the per-semantics regime:
// simple matching for naive and mat0/mat1a/mat1b, entailed answers for the
// rest.
enum class WhereRegime { Default, Simple, Rdfs };

struct RunOptions {
  WhereRegime where = WhereRegime::Default;
};

struct InstantiationResult {
  std::set<Assertion> abox_del;
  std::set<Assertion> abox_ins;
  std::set<TBoxAxiom> tbox_del;
  std::set<TBoxAxiom> tbox_ins;

  friend bool operator==(const InstantiationResult&, const InstantiationResult&) = default;
};

namespace detail {

// Ground, in-fragment instantiations only; anything else is dropped.
inline void add_ground(const TriplePattern& p, std::set<Assertion>& abox, std::set<TBoxAxiom>& tbox) {
  auto t = ground(p);
  if (!t) return;
  Statement s;
  try {
    s = classify_triple(*t);
  } catch (const Error&) {
    return;
  }
  if (const auto* ax = std::get_if<TBoxAxiom>(&s)) {
    tbox.insert(*ax);
  } else {
    abox.insert(std::get<Assertion>(s));
  }
}

// Binder variables that appear in exactly one delete-template atom and
// nowhere else. Their bindings only matter where they produce a stored
// triple, so they are resolved by matching that atom against the store
// instead of enumerating every term.
inline std::set<Var> free_binder_vars(const UpdateOperation& u) {
  std::set<Var> binders;
  for (const auto& d : u.where.disjuncts())
    for (const auto& a : d.atoms())
      if (const auto* b = std::get_if<AnyTerm>(&a)) binders.insert(b->var);

  std::set<Var> out;
  const auto insert_vars = vars_of(u.insert_template);
  for (const auto& v : binders) {
    if (std::find(insert_vars.begin(), insert_vars.end(), v) != insert_vars.end()) continue;
    std::size_t uses = 0;
    for (const auto& a : u.delete_template.atoms()) {
      std::vector<Var> vs;
      collect_vars(a, vs);
      uses += std::count(vs.begin(), vs.end(), v);
    }
    if (uses != 1) continue;
    bool elsewhere = false;
    for (const auto& d : u.where.disjuncts()) {
      for (const auto& a : d.atoms()) {
        if (std::holds_alternative<AnyTerm>(a)) continue;
        std::vector<Var> vs;
        collect_vars(a, vs);
        if (std::find(vs.begin(), vs.end(), v) != vs.end()) elsewhere = true;
      }
    }
    if (!elsewhere) out.insert(v);
  }
  return out;
}

inline UnionPattern strip_binders(const UnionPattern& where, const std::set<Var>& vars) {
  UnionPattern out;
  for (const auto& d : where.disjuncts()) {
    Bgp kept;
    for (const auto& a : d.atoms()) {
      const auto* b = std::get_if<AnyTerm>(&a);
      if (!b || !vars.contains(b->var)) kept.add(a);
    }
    out.add(kept);
  }
  return out;
}

}  // namespace detail

// Instantiates both templates with every binding; A_d and A_i come from the
// same binding set.
inline InstantiationResult instantiate(const UpdateOperation& u, const std::set<Substitution>& bindings) {
  InstantiationResult r;
  for (const auto& theta : bindings) {
    for (const auto& a : u.delete_template.atoms()) {
      if (const auto* tp = std::get_if<TriplePattern>(&a)) detail::add_ground(substitute(*tp, theta), r.abox_del, r.tbox_del);
    }
    for (const auto& a : u.insert_template.atoms()) {
      if (const auto* tp = std::get_if<TriplePattern>(&a)) detail::add_ground(substitute(*tp, theta), r.abox_ins, r.tbox_ins);
    }
  }
  return r;
}

namespace detail {

// Evaluates the WHERE clause of `u` on `store` by simple matching and
// instantiates the templates, resolving free binder variables against the
// stored triples. Bindings are projected to `keep` (plus free binders).
inline InstantiationResult execute_simple(const UpdateOperation& u, const TripleStore& eval_store,
                                          const TripleStore& target, const std::vector<Var>* keep) {
  const std::set<Var> free = free_binder_vars(u);
  const UnionPattern where = strip_binders(u.where, free);
  const TripleIndex eval_index(eval_store);
  std::set<Substitution> bindings;
  if (free.empty() || !eval_index.terms().empty()) {
    for (const auto& d : where.disjuncts()) {
      for (auto& row : match_bgp(d, eval_index)) bindings.insert(keep ? project(row, *keep) : row);
    }
  }
  UpdateOperation bound_part = u;
  bound_part.delete_template = Bgp{};
  for (const auto& a : u.delete_template.atoms()) {
    std::vector<Var> vs;
    collect_vars(a, vs);
    if (std::none_of(vs.begin(), vs.end(), [&](const Var& v) { return free.contains(v); })) {
      bound_part.delete_template.add(a);
    }
  }
  InstantiationResult r = instantiate(bound_part, bindings);

  if (free.empty()) return r;
  const TripleIndex target_index(target);
  for (const auto& theta : bindings) {
    for (const auto& a : u.delete_template.atoms()) {
      const auto* tp = std::get_if<TriplePattern>(&a);
      if (!tp) continue;
      std::vector<Var> vs;
      collect_vars(a, vs);
      if (std::none_of(vs.begin(), vs.end(), [&](const Var& v) { return free.contains(v); })) continue;
      const TriplePattern p = substitute(*tp, theta);
      std::vector<Var> remaining;
      collect_vars(Atom{p}, remaining);
      if (!std::all_of(remaining.begin(), remaining.end(), [&](const Var& v) { return free.contains(v); })) {
        continue;
      }
      target_index.for_each_match(p, [&](const Triple& t) { add_ground(pattern_of(t), r.abox_del, r.tbox_del); });
    }
  }
  return r;
}

// `keep` plus every any-term binder variable of the WHERE clause; binders
// feed the delete template and must survive projection.
inline std::vector<Var> with_binders(std::vector<Var> keep, const UpdateOperation& u) {
  for (const auto& d : u.where.disjuncts())
    for (const auto& a : d.atoms())
      if (const auto* b = std::get_if<AnyTerm>(&a); b && std::find(keep.begin(), keep.end(), b->var) == keep.end())
        keep.push_back(b->var);
  return keep;
}

// (G \ A_d) ∪ A_i, keeping the explicit/implicit split: inserted assertions
// become explicit. The mode tag is left to the caller.
inline TripleStore apply_instantiation(const TripleStore& store, const InstantiationResult& r) {
  TripleStore out = store;
  for (const auto& ax : r.tbox_del) out.tbox.erase(ax);
  for (const auto& a : r.abox_del) {
    out.abox_explicit.erase(a);
    out.abox_implicit.erase(a);
  }
  for (const auto& ax : r.tbox_ins) out.tbox.insert(ax);
  for (const auto& a : r.abox_ins) {
    out.abox_implicit.erase(a);
    out.abox_explicit.insert(a);
  }
  return out;
}

inline void require_mode(const TripleStore& store, StoreMode mode, Semantics sem) {
  if (store.mode == mode) return;
  std::string hint = mode == StoreMode::Materialised ? "run mat first" : "run red first";
  throw ModeError("semantics " + std::string(to_string(sem)) + " needs a " + std::string(to_string(mode)) +
                  " store, got " + std::string(to_string(store.mode)) + " (" + hint + ")");
}

inline void require_non_general(const UpdateOperation& u, Semantics sem) {
  if (u.general()) {
    throw GeneralOnlyPattern("semantics " + std::string(to_string(sem)) +
                             " handles ABox updates only; use naive, mat0, mat1a, mat1b, outcut or incut");
  }
}

// Bindings of the user's WHERE clause under `regime`.
inline std::set<Substitution> where_bindings(const UpdateOperation& u, const TripleStore& store, WhereRegime regime) {
  AnswerSet ans;
  if (regime == WhereRegime::Simple) {
    ans = eval_simple(u.where, store);
  } else if (!u.where.general()) {
    ans = ans_rdfs_rewriting(u.where, store);
  } else {
    ans = ans_rdfs_materialization(u.where, store);
  }
  return std::move(ans.rows);
}

inline WhereRegime resolve(WhereRegime requested, WhereRegime fallback) {
  return requested == WhereRegime::Default ? fallback : requested;
}

inline InstantiationResult instantiate_user(const UpdateOperation& u, const TripleStore& store, WhereRegime regime) {
  return instantiate(u, where_bindings(u, store, regime));
}

// Delete-and-rederive maintenance of the closure when the explicit ABox
// moves from `old_explicit` to `new_explicit` under a fixed TBox. `closure`
// must be the closure of `old_explicit`.
inline std::set<Assertion> dred(const std::set<TBoxAxiom>& tbox, const std::set<Assertion>& closure,
                                const std::set<Assertion>& old_explicit, const std::set<Assertion>& new_explicit) {
  const TBoxIndex index(tbox);

  // Over-delete: every consequence of a retracted explicit fact.
  std::set<Assertion> over;
  std::vector<Assertion> frontier;
  for (const auto& a : old_explicit) {
    if (!new_explicit.contains(a) && over.insert(a).second) frontier.push_back(a);
  }
  while (!frontier.empty()) {
    std::vector<Assertion> next;
    for (const auto& f : frontier) {
      index.for_each_consequence(f, [&](const Assertion& g) {
        if (closure.contains(g) && over.insert(g).second) next.push_back(g);
      });
    }
    frontier = std::move(next);
  }

  std::set<Assertion> result;
  std::set_difference(closure.begin(), closure.end(), over.begin(), over.end(),
                      std::inserter(result, result.end()));

  // Re-derive: over-deleted facts that are still explicit or have a
  // surviving one-step cause, then everything newly inserted.
  std::vector<Assertion> delta;
  for (const auto& f : over) {
    if (new_explicit.contains(f)) delta.push_back(f);
  }
  for (const auto& g : result) {
    index.for_each_consequence(g, [&](const Assertion& f) {
      if (over.contains(f)) delta.push_back(f);
    });
  }
  for (const auto& a : new_explicit) {
    if (!closure.contains(a)) delta.push_back(a);
  }
  std::vector<Assertion> work;
  for (auto& f : delta) {
    if (result.insert(f).second) work.push_back(std::move(f));
  }
  while (!work.empty()) {
    std::vector<Assertion> next;
    for (const auto& f : work) {
      index.for_each_consequence(f, [&](Assertion g) {
        if (result.insert(g).second) next.push_back(std::move(g));
      });
    }
    work = std::move(next);
  }
  return result;
}

}  // namespace detail

// Plain (G \ A_d) ∪ A_i with WHERE answered by simple matching.
inline TripleStore apply_naive(const TripleStore& store, const UpdateOperation& u, RunOptions opts = {}) {
  const auto r = detail::instantiate_user(u, store, detail::resolve(opts.where, WhereRegime::Simple));
  return detail::apply_instantiation(store, r).as_plain();
}

inline TripleStore apply_mat0(const TripleStore& store, const UpdateOperation& u, RunOptions opts = {}) {
  detail::require_mode(store, StoreMode::Materialised, Semantics::Mat0);
  const auto r = detail::instantiate_user(u, store, detail::resolve(opts.where, WhereRegime::Simple));
  return mat(detail::apply_instantiation(store, r));
}

// Removes A_d together with every ABox consequence of A_d, inserts A_i and
// re-materialises.
inline TripleStore apply_mat1a(const TripleStore& store, const UpdateOperation& u, RunOptions opts = {}) {
  detail::require_mode(store, StoreMode::Materialised, Semantics::Mat1a);
  auto r = detail::instantiate_user(u, store, detail::resolve(opts.where, WhereRegime::Simple));
  const auto effects = abox_closure(store.tbox, r.abox_del);
  r.abox_del.insert(effects.begin(), effects.end());
  return mat(detail::apply_instantiation(store, r));
}

// Explicit/implicit bookkeeping: the explicit ABox absorbs the update and the
// implicit ABox is maintained by delete-and-rederive.
inline TripleStore apply_mat1b(const TripleStore& store, const UpdateOperation& u, RunOptions opts = {}) {
  detail::require_mode(store, StoreMode::Materialised, Semantics::Mat1b);
  TripleStore base = store;
  if (!base.partitioned) {
    // No history: the reduced core is taken as the explicit part.
    const auto abox = store.abox();
    base.abox_explicit = red(store).abox_explicit;
    base.abox_implicit.clear();
    for (const auto& a : abox) {
      if (!base.abox_explicit.contains(a)) base.abox_implicit.insert(a);
    }
    base.partitioned = true;
  }
  const auto r = detail::instantiate_user(u, base, detail::resolve(opts.where, WhereRegime::Simple));

  std::set<Assertion> new_explicit;
  std::set_difference(base.abox_explicit.begin(), base.abox_explicit.end(), r.abox_del.begin(), r.abox_del.end(),
                      std::inserter(new_explicit, new_explicit.end()));
  new_explicit.insert(r.abox_ins.begin(), r.abox_ins.end());

  TripleStore out;
  out.tbox = base.tbox;
  for (const auto& ax : r.tbox_del) out.tbox.erase(ax);
  out.tbox.insert(r.tbox_ins.begin(), r.tbox_ins.end());

  std::set<Assertion> closure;
  if (out.tbox == base.tbox) {
    closure = detail::dred(base.tbox, base.abox(), base.abox_explicit, new_explicit);
  } else {
    closure = abox_closure(out.tbox, new_explicit);
  }
  out.abox_explicit = new_explicit;
  for (auto& a : closure) {
    if (!new_explicit.contains(a)) out.abox_implicit.insert(std::move(a));
  }
  out.mode = StoreMode::Materialised;
  out.partitioned = true;
  return out;
}

namespace detail {

inline TripleStore apply_cause_semantics(const TripleStore& store, const UpdateOperation& u, bool insert_effects,
                                         WhereRegime regime) {
  const UpdateOperation built = build_cause_update(u, store.tbox, insert_effects, regime != WhereRegime::Simple);
  // Fresh variables of the rewritten WHERE are existential.
  const auto keep = with_binders(vars_of(u.where), built);
  return apply_instantiation(store, execute_simple(built, store, store, &keep));
}

}  // namespace detail

// Deletes all causes of the deleted instantiations and inserts all effects
// of the inserted ones.
inline TripleStore apply_mat2(const TripleStore& store, const UpdateOperation& u, RunOptions opts = {}) {
  detail::require_mode(store, StoreMode::Materialised, Semantics::Mat2);
  detail::require_non_general(u, Semantics::Mat2);
  TripleStore out = detail::apply_cause_semantics(store, u, true, detail::resolve(opts.where, WhereRegime::Rdfs));
  out.mode = StoreMode::Materialised;
  return out;
}

inline TripleStore apply_red0(const TripleStore& store, const UpdateOperation& u, RunOptions opts = {}) {
  detail::require_mode(store, StoreMode::Reduced, Semantics::Red0);
  const auto r = detail::instantiate_user(u, store, detail::resolve(opts.where, WhereRegime::Rdfs));
  return red(detail::apply_instantiation(store, r));
}

inline TripleStore apply_red1(const TripleStore& store, const UpdateOperation& u, RunOptions opts = {}) {
  detail::require_mode(store, StoreMode::Reduced, Semantics::Red1);
  detail::require_non_general(u, Semantics::Red1);
  return red(detail::apply_cause_semantics(store, u, false, detail::resolve(opts.where, WhereRegime::Rdfs)));
}

// Subsumption deletions become canonical outgoing/incoming cuts; everything
// else is applied as written, followed by materialisation. The TBox is
// closed first so the cut sees every path.
inline TripleStore apply_tbox_cut(const TripleStore& store, const UpdateOperation& u, CutDirection direction,
                                  RunOptions opts = {}) {
  detail::require_mode(store, StoreMode::Materialised,
                       direction == CutDirection::Out ? Semantics::OutCut : Semantics::InCut);
  TripleStore base = store;
  base.tbox = tbox_closure(store.tbox);
  const UpdateOperation built = build_tbox_cut_update(u, direction);
  const TripleStore& eval_store = opts.where == WhereRegime::Simple ? store : base;
  const auto r = instantiate(built, eval_simple(built.where, eval_store).rows);
  return mat(detail::apply_instantiation(base, r));
}

// Runs one update under `sem`. Plain stores are first normalised (mat or
// red as the semantics requires); a store tagged with the opposite mode is
// rejected.
inline TripleStore run(const TripleStore& store, const UpdateOperation& u, Semantics sem, RunOptions opts = {}) {
  TripleStore input = store;
  if (store.mode == StoreMode::Plain) {
    if (requires_materialised(sem)) input = mat(store);
    if (requires_reduced(sem)) input = red(store);
  }
  switch (sem) {
    case Semantics::Naive: return apply_naive(input, u, opts);
    case Semantics::Mat0: return apply_mat0(input, u, opts);
    case Semantics::Mat1a: return apply_mat1a(input, u, opts);
    case Semantics::Mat1b: return apply_mat1b(input, u, opts);
    case Semantics::Mat2: return apply_mat2(input, u, opts);
    case Semantics::Red0: return apply_red0(input, u, opts);
    case Semantics::Red1: return apply_red1(input, u, opts);
    case Semantics::OutCut: return apply_tbox_cut(input, u, CutDirection::Out, opts);
    case Semantics::InCut: return apply_tbox_cut(input, u, CutDirection::In, opts);
  }
  return input;
}

inline TripleStore run_sequence(const TripleStore& store, const std::vector<UpdateOperation>& ops, Semantics sem,
                                RunOptions opts = {}) {
  TripleStore current = store;
  for (const auto& op : ops) current = run(current, op, sem, opts);
  return current;
}

}  // namespace rdfsupd
