#pragma once

#include <cassert>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdfsupd/model.hpp"

namespace rdfsupd {

// The six minimal RDFS rules. The first four derive ABox assertions; the
// two transitivity rules only close the TBox.
enum class RuleId { SpInherit, Range, ScInherit, SpTrans, Domain, ScTrans };

inline bool is_abox_rule(RuleId r) { return r != RuleId::SpTrans && r != RuleId::ScTrans; }

// Direct-successor index over a TBox, used by the four ABox rules.
class TBoxIndex {
 public:
  explicit TBoxIndex(const std::set<TBoxAxiom>& tbox) {
    for (const auto& ax : tbox) {
      switch (ax.kind) {
        case AxiomKind::SubClass: super_classes_[ax.subject].push_back(ax.object); break;
        case AxiomKind::SubProp: super_props_[ax.subject].push_back(ax.object); break;
        case AxiomKind::Domain: domains_[ax.subject].push_back(ax.object); break;
        case AxiomKind::Range: ranges_[ax.subject].push_back(ax.object); break;
      }
    }
  }

  // Calls `emit` for every assertion derivable from `a` in one rule step.
  template <class Emit>
  void for_each_consequence(const Assertion& a, Emit&& emit) const {
    if (a.is_class()) {
      for (const auto& sup : lookup(super_classes_, a.name)) emit(Assertion::of_class(a.subject, sup));
      return;
    }
    for (const auto& sup : lookup(super_props_, a.name)) emit(Assertion::of_role(a.subject, sup, a.object));
    for (const auto& cls : lookup(domains_, a.name)) emit(Assertion::of_class(a.subject, cls));
    for (const auto& cls : lookup(ranges_, a.name)) emit(Assertion::of_class(a.object, cls));
  }

 private:
  using Edges = std::map<Iri, std::vector<Iri>>;
  static const std::vector<Iri>& lookup(const Edges& edges, const Iri& key) {
    static const std::vector<Iri> kNone;
    auto it = edges.find(key);
    return it == edges.end() ? kNone : it->second;
  }

  Edges super_classes_;
  Edges super_props_;
  Edges domains_;
  Edges ranges_;
};

// Upper bound on the number of assertions the ABox rules can derive over
// the vocabulary of `tbox` and `abox`.
inline std::size_t closure_bound(const std::set<TBoxAxiom>& tbox, const std::set<Assertion>& abox) {
  std::set<Iri> classes, props, individuals;
  for (const auto& ax : tbox) {
    switch (ax.kind) {
      case AxiomKind::SubClass: classes.insert(ax.subject); classes.insert(ax.object); break;
      case AxiomKind::SubProp: props.insert(ax.subject); props.insert(ax.object); break;
      case AxiomKind::Domain:
      case AxiomKind::Range: props.insert(ax.subject); classes.insert(ax.object); break;
    }
  }
  for (const auto& a : abox) {
    individuals.insert(a.subject);
    if (a.is_class()) {
      classes.insert(a.name);
    } else {
      props.insert(a.name);
      individuals.insert(a.object);
    }
  }
  const std::size_t n = individuals.size();
  return classes.size() * n + props.size() * n * n;
}

// Semi-naive fixpoint of the four ABox rules starting from `seed`. Every
// rule has exactly one ABox premise, so each new fact is expanded once.
inline std::set<Assertion> abox_closure(const TBoxIndex& index, const std::set<Assertion>& seed) {
  std::set<Assertion> result = seed;
  std::vector<Assertion> delta(seed.begin(), seed.end());
  while (!delta.empty()) {
    std::vector<Assertion> next;
    for (const auto& fact : delta) {
      index.for_each_consequence(fact, [&](Assertion derived) {
        if (result.insert(derived).second) next.push_back(std::move(derived));
      });
    }
    delta = std::move(next);
  }
  return result;
}

inline std::set<Assertion> abox_closure(const std::set<TBoxAxiom>& tbox, const std::set<Assertion>& seed) {
  std::set<Assertion> result = abox_closure(TBoxIndex(tbox), seed);
  assert(result.size() - seed.size() <= closure_bound(tbox, seed));
  return result;
}

// Fixpoint of the two transitivity rules.
inline std::set<TBoxAxiom> tbox_closure(const std::set<TBoxAxiom>& tbox) {
  std::set<TBoxAxiom> out = tbox;
  for (AxiomKind kind : {AxiomKind::SubClass, AxiomKind::SubProp}) {
    std::map<Iri, std::vector<Iri>> succ;
    for (const auto& ax : tbox) {
      if (ax.kind == kind) succ[ax.subject].push_back(ax.object);
    }
    for (const auto& [start, direct] : succ) {
      std::set<Iri> seen;
      std::vector<Iri> stack(direct.begin(), direct.end());
      while (!stack.empty()) {
        Iri node = std::move(stack.back());
        stack.pop_back();
        if (!seen.insert(node).second) continue;
        auto it = succ.find(node);
        if (it != succ.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
      }
      for (const auto& reached : seen) out.insert(TBoxAxiom{kind, start, reached});
    }
  }
  return out;
}

inline bool tbox_is_closed(const std::set<TBoxAxiom>& tbox) { return tbox_closure(tbox) == tbox; }

namespace detail {
inline TripleStore with_closed_abox(const TripleStore& store, std::set<TBoxAxiom> tbox) {
  TripleStore out;
  auto closed = abox_closure(store.tbox, store.abox());
  out.tbox = std::move(tbox);
  out.abox_explicit = store.abox_explicit;
  for (auto& a : closed) {
    if (!out.abox_explicit.contains(a)) out.abox_implicit.insert(std::move(a));
  }
  out.mode = StoreMode::Materialised;
  out.partitioned = true;
  return out;
}
}  // namespace detail

// Closure under all six rules. The explicit ABox is carried over; every
// derived assertion lands in the implicit part.
inline TripleStore mat(const TripleStore& store) {
  return detail::with_closed_abox(store, tbox_closure(store.tbox));
}

// Closure under the four ABox rules only; the TBox is returned unchanged.
inline TripleStore mat_abox(const TripleStore& store) {
  return detail::with_closed_abox(store, store.tbox);
}

// Reduced core of the ABox. An assertion is dropped when it follows from an
// assertion outside its implication-equivalence class; within a class whose
// members all survive that test, only the lexicographically smallest is kept.
inline TripleStore red(const TripleStore& store) {
  const TBoxIndex index(tbox_closure(store.tbox));
  const std::set<Assertion> abox = store.abox();

  std::map<Assertion, std::set<Assertion>> effects;
  for (const auto& a : abox) effects.emplace(a, abox_closure(index, {a}));
  auto derives = [&](const Assertion& from, const Assertion& to) { return effects.at(from).contains(to); };

  std::set<Assertion> marked;
  for (const auto& beta : abox) {
    for (const auto& alpha : effects.at(beta)) {
      if (alpha == beta || !abox.contains(alpha) || marked.contains(alpha)) continue;
      if (!derives(alpha, beta)) marked.insert(alpha);
    }
  }

  TripleStore out;
  out.tbox = store.tbox;
  for (const auto& a : abox) {
    if (marked.contains(a)) continue;
    bool has_smaller_equivalent = false;
    for (const auto& kept : out.abox_explicit) {
      if (derives(a, kept) && derives(kept, a)) {
        has_smaller_equivalent = true;
        break;
      }
    }
    if (!has_smaller_equivalent) out.abox_explicit.insert(a);
  }
  out.mode = StoreMode::Reduced;
  return out;
}

inline bool is_materialised(const TripleStore& store) {
  auto abox = store.abox();
  return abox_closure(store.tbox, abox) == abox;
}

inline bool is_reduced(const TripleStore& store) { return red(store).abox_explicit == store.abox(); }

// Empty when the store satisfies the invariants its mode tag promises.
inline std::string invariant_violation(const TripleStore& store) {
  if (auto p = partition_violation(store); !p.empty()) return p;
  if (store.mode == StoreMode::Materialised && !is_materialised(store)) return "tagged materialised but ABox not closed";
  if (store.mode == StoreMode::Reduced && !is_reduced(store)) return "tagged reduced but ABox has redundancy";
  return {};
}

}  // namespace rdfsupd
