#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdfsupd/pattern.hpp"

namespace rdfsupd {

// Source of rewriter variables ?x#1, ?x#2, ... One generator is shared by
// everything built for a single operation so names never collide.
class FreshVars {
 public:
  Var make() { return Var{"x#" + std::to_string(next_++)}; }

 private:
  int next_ = 1;
};

struct RewriteResult {
  UnionPattern ucq;
  std::vector<Var> fresh_vars;
};

namespace detail {

inline const Iri* class_of(const TriplePattern& g) {
  if (shape_of(g) != AtomShape::Class || !is_iri(g.object)) return nullptr;
  return &as_iri(g.object);
}

inline const Iri* property_of(const TriplePattern& g) {
  if (shape_of(g) != AtomShape::Role) return nullptr;
  return &as_iri(g.predicate);
}

}  // namespace detail

// True for the four (atom, axiom) combinations that have a rewriting.
inline bool applicable(const TriplePattern& g, const TBoxAxiom& ax) {
  if (const Iri* cls = detail::class_of(g)) {
    return ax.kind != AxiomKind::SubProp && ax.object == *cls;
  }
  if (const Iri* prop = detail::property_of(g)) {
    return ax.kind == AxiomKind::SubProp && ax.object == *prop;
  }
  return false;
}

// One backward step: replaces `g` by the atom that derives it through `ax`.
inline TriplePattern gr_rewrite(const TriplePattern& g, const TBoxAxiom& ax, FreshVars& fresh) {
  if (!applicable(g, ax)) throw NotApplicable("axiom does not apply to atom");
  switch (ax.kind) {
    case AxiomKind::SubClass: return {g.subject, g.predicate, ax.subject};
    case AxiomKind::Domain: return {g.subject, ax.subject, fresh.make()};
    case AxiomKind::Range: return {fresh.make(), ax.subject, g.subject};
    case AxiomKind::SubProp: return {g.subject, ax.subject, g.object};
  }
  throw NotApplicable("unknown axiom kind");
}

namespace detail {

inline Term mask_fresh(const Term& t) {
  if (is_var(t) && as_var(t).is_fresh()) return Var{"x#"};
  return t;
}

inline Atom mask_fresh(const Atom& a) {
  if (const auto* tp = std::get_if<TriplePattern>(&a)) {
    return TriplePattern{mask_fresh(tp->subject), mask_fresh(tp->predicate), mask_fresh(tp->object)};
  }
  return a;
}

// Canonical form of a CQ modulo renaming of fresh variables. Fresh variables
// are renumbered in the order their (masked) atoms sort; this is exact when
// each fresh variable occurs once, which is all the rewriting ever creates.
inline std::vector<Atom> canonical_key(const Bgp& q) {
  std::vector<std::pair<Atom, Atom>> keyed;
  for (const auto& a : q.atoms()) keyed.emplace_back(mask_fresh(a), a);
  std::sort(keyed.begin(), keyed.end());
  std::map<Var, Var> renaming;
  auto rename = [&](const Term& t) -> Term {
    if (!is_var(t) || !as_var(t).is_fresh()) return t;
    auto [it, inserted] = renaming.emplace(as_var(t), Var{});
    if (inserted) it->second = Var{"x#c" + std::to_string(renaming.size())};
    return it->second;
  };
  std::vector<Atom> out;
  for (const auto& [masked, atom] : keyed) {
    if (const auto* tp = std::get_if<TriplePattern>(&atom)) {
      out.push_back(TriplePattern{rename(tp->subject), rename(tp->predicate), rename(tp->object)});
    } else {
      out.push_back(atom);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Bgp replace_atom(const Bgp& q, const Atom& from, const Atom& to) {
  Bgp out;
  for (const auto& a : q.atoms()) out.add(a == from ? to : a);
  return out;
}

inline void collect_fresh(const Bgp& b, std::vector<Var>& out) {
  for (const auto& v : vars_of(b)) {
    if (v.is_fresh() && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
}

}  // namespace detail

// UCQ rewriting of a CQ: repeatedly replaces any ABox atom by its backward
// step through any applicable axiom until no new CQ (modulo renaming of
// fresh variables) appears. Binder atoms are carried along unchanged.
inline RewriteResult rewrite(const Bgp& q, const std::set<TBoxAxiom>& tbox, FreshVars& fresh) {
  if (q.general()) throw GeneralOnlyPattern("rewriting is defined for non-general BGPs only");
  std::vector<Bgp> cqs{q};
  std::set<std::vector<Atom>> seen{detail::canonical_key(q)};
  for (std::size_t i = 0; i < cqs.size(); ++i) {
    const Bgp current = cqs[i];
    for (const auto& atom : current.sorted()) {
      const auto* g = std::get_if<TriplePattern>(&atom);
      if (!g) continue;
      for (const auto& ax : tbox) {
        if (!applicable(*g, ax)) continue;
        Bgp next = detail::replace_atom(current, atom, gr_rewrite(*g, ax, fresh));
        if (seen.insert(detail::canonical_key(next)).second) cqs.push_back(std::move(next));
      }
    }
  }
  RewriteResult result;
  for (const auto& cq : cqs) {
    result.ucq.add(cq);
    detail::collect_fresh(cq, result.fresh_vars);
  }
  return result;
}

inline RewriteResult rewrite(const Bgp& q, const std::set<TBoxAxiom>& tbox) {
  FreshVars fresh;
  return rewrite(q, tbox, fresh);
}

// Disjunct-wise rewriting of a UNION pattern.
inline UnionPattern rewrite_union(const UnionPattern& u, const std::set<TBoxAxiom>& tbox, FreshVars& fresh) {
  UnionPattern out;
  for (const auto& d : u.disjuncts()) {
    const RewriteResult r = rewrite(d, tbox, fresh);
    for (const auto& cq : r.ucq.disjuncts()) out.add(cq);
  }
  return out;
}

// Every atom from which some atom of `p` can be derived: the flattened
// rewriting. Atoms are rewritten one at a time, which yields the same atoms
// as flattening the rewriting of the whole conjunction.
inline Bgp all_causes(const Bgp& p, const std::set<TBoxAxiom>& tbox, FreshVars& fresh) {
  Bgp out;
  for (const auto& atom : p.sorted()) {
    const RewriteResult r = rewrite(Bgp{atom}, tbox, fresh);
    for (const auto& cq : r.ucq.disjuncts()) out.add_all(cq);
  }
  return out;
}

inline Bgp all_causes(const Bgp& p, const std::set<TBoxAxiom>& tbox) {
  FreshVars fresh;
  return all_causes(p, tbox, fresh);
}

// Closure of `p` under the four ABox rules with variables treated as
// constants.
inline Bgp all_effects(const Bgp& p, const std::set<TBoxAxiom>& tbox) {
  if (p.general()) throw GeneralOnlyPattern("effect rewriting is defined for non-general BGPs only");
  std::map<Iri, std::vector<const TBoxAxiom*>> by_subject;
  for (const auto& ax : tbox) by_subject[ax.subject].push_back(&ax);
  const Term type{Iri{vocab::kType}};

  Bgp out;
  std::vector<TriplePattern> queue;
  auto push = [&](TriplePattern tp) {
    const std::size_t before = out.size();
    out.add(tp);
    if (out.size() != before) queue.push_back(std::move(tp));
  };
  for (const auto& atom : p.atoms()) {
    if (const auto* tp = std::get_if<TriplePattern>(&atom)) {
      push(*tp);
    } else {
      out.add(atom);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const TriplePattern g = queue[i];
    const Iri* key = detail::class_of(g);
    const bool is_class = key != nullptr;
    if (!key) key = detail::property_of(g);
    if (!key) continue;
    auto it = by_subject.find(*key);
    if (it == by_subject.end()) continue;
    for (const TBoxAxiom* ax : it->second) {
      if (is_class) {
        if (ax->kind == AxiomKind::SubClass) push({g.subject, type, ax->object});
        continue;
      }
      switch (ax->kind) {
        case AxiomKind::SubProp: push({g.subject, ax->object, g.object}); break;
        case AxiomKind::Domain: push({g.subject, type, ax->object}); break;
        case AxiomKind::Range: push({g.object, type, ax->object}); break;
        case AxiomKind::SubClass: break;
      }
    }
  }
  return out;
}

// Any-term binders for the variables of `causes` that `original` lacks.
inline Bgp fvars_pattern(const Bgp& causes, const Bgp& original) {
  const auto keep = vars_of(original);
  Bgp out;
  for (const auto& v : vars_of(causes)) {
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) out.add(AnyTerm{v});
  }
  return out;
}

// Expands an update so that deleting removes all causes of the deleted
// instantiations; with `insert_effects`, inserting also adds all effects.
// With `rewrite_where` false the WHERE clause is kept as written (apart
// from the binders).
inline UpdateOperation build_cause_update(const UpdateOperation& u, const std::set<TBoxAxiom>& tbox,
                                          bool insert_effects, bool rewrite_where = true) {
  if (u.general()) throw GeneralOnlyPattern("cause/effect rewriting needs a non-general update");
  FreshVars fresh;
  UpdateOperation out;
  out.delete_template = all_causes(u.delete_template, tbox, fresh);
  out.insert_template = insert_effects ? all_effects(u.insert_template, tbox) : u.insert_template;
  const UnionPattern where = rewrite_where ? rewrite_union(u.where, tbox, fresh) : u.where;
  out.where = join(where, UnionPattern{fvars_pattern(out.delete_template, u.delete_template)});
  return out;
}

inline UpdateOperation build_sem2_update(const UpdateOperation& u, const std::set<TBoxAxiom>& tbox) {
  return build_cause_update(u, tbox, true);
}

enum class CutDirection { Out, In };

// Replaces each subsumption triple `A sc B` of the delete template by the
// outgoing (`A sc ?c` with `A sc ?c. ?c sc* B`) or incoming
// (`?c sc B` with `A sc* ?c. ?c sc B`) edges on paths from A to B.
inline UpdateOperation build_tbox_cut_update(const UpdateOperation& u, CutDirection direction) {
  FreshVars fresh;
  UpdateOperation out;
  out.insert_template = u.insert_template;
  Bgp extra_where;
  for (const auto& atom : u.delete_template.atoms()) {
    const auto* tp = std::get_if<TriplePattern>(&atom);
    const bool subsumption = tp && is_iri(tp->predicate) &&
                             (as_iri(tp->predicate).value == vocab::kSubClassOf ||
                              as_iri(tp->predicate).value == vocab::kSubPropertyOf);
    if (!subsumption) {
      out.delete_template.add(atom);
      continue;
    }
    const Iri& sc = as_iri(tp->predicate);
    const Term cut = fresh.make();
    if (direction == CutDirection::Out) {
      out.delete_template.add(TriplePattern{tp->subject, sc, cut});
      extra_where.add(TriplePattern{tp->subject, sc, cut});
      extra_where.add(PathPattern{cut, sc, tp->object});
    } else {
      out.delete_template.add(TriplePattern{cut, sc, tp->object});
      extra_where.add(PathPattern{tp->subject, sc, cut});
      extra_where.add(TriplePattern{cut, sc, tp->object});
    }
  }
  out.where = extra_where.empty() ? u.where : join(u.where, UnionPattern{extra_where});
  return out;
}

}  // namespace rdfsupd
