#pragma once

#include <algorithm>
#include <compare>
#include <iterator>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rdfsupd/errors.hpp"

namespace rdfsupd {

namespace vocab {
inline constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwlNs = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kDefaultNs = "http://example.org/";

inline const std::string kType = std::string(kRdfNs) + "type";
inline const std::string kSubClassOf = std::string(kRdfsNs) + "subClassOf";
inline const std::string kSubPropertyOf = std::string(kRdfsNs) + "subPropertyOf";
inline const std::string kDomain = std::string(kRdfsNs) + "domain";
inline const std::string kRange = std::string(kRdfsNs) + "range";
inline const std::string kResource = std::string(kRdfsNs) + "Resource";

// Anything in the RDF, RDFS or OWL namespaces. Such IRIs may only appear
// in the predicate position of one of the six supported statement forms.
inline bool is_reserved(std::string_view iri) {
  return iri.starts_with(kRdfNs) || iri.starts_with(kRdfsNs) ||
         iri.starts_with(kOwlNs);
}
}  // namespace vocab

struct Iri {
  std::string value;

  Iri() = default;
  explicit Iri(std::string v) : value(std::move(v)) {}

  bool empty() const noexcept { return value.empty(); }
  friend auto operator<=>(const Iri&, const Iri&) = default;
};

struct Var {
  std::string name;  // without the leading '?'

  Var() = default;
  explicit Var(std::string n) : name(std::move(n)) {}

  // Rewriter-generated variables live in the "x#" namespace, which the
  // parser cannot produce.
  bool is_fresh() const noexcept { return name.starts_with("x#"); }
  friend auto operator<=>(const Var&, const Var&) = default;
};

using Term = std::variant<Iri, Var>;

inline bool is_var(const Term& t) { return std::holds_alternative<Var>(t); }
inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }
inline const Var& as_var(const Term& t) { return std::get<Var>(t); }

struct Triple {
  Iri subject;
  Iri predicate;
  Iri object;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

enum class AxiomKind { SubClass, Domain, Range, SubProp };

// One of the four terminological forms; `subject` and `object` are the
// subject and object of the encoding triple (e.g. A' rdfs:subClassOf A).
struct TBoxAxiom {
  AxiomKind kind;
  Iri subject;
  Iri object;

  static TBoxAxiom sub_class(Iri sub, Iri sup) {
    return {AxiomKind::SubClass, std::move(sub), std::move(sup)};
  }
  static TBoxAxiom domain(Iri prop, Iri cls) {
    return {AxiomKind::Domain, std::move(prop), std::move(cls)};
  }
  static TBoxAxiom range(Iri prop, Iri cls) {
    return {AxiomKind::Range, std::move(prop), std::move(cls)};
  }
  static TBoxAxiom sub_prop(Iri sub, Iri sup) {
    return {AxiomKind::SubProp, std::move(sub), std::move(sup)};
  }

  friend auto operator<=>(const TBoxAxiom&, const TBoxAxiom&) = default;
};

enum class AssertionKind { Class, Role };

// A(x) is {Class, x, A, ""}; P(x, y) is {Role, x, P, y}.
struct Assertion {
  AssertionKind kind;
  Iri subject;
  Iri name;
  Iri object;

  static Assertion of_class(Iri x, Iri cls) {
    return {AssertionKind::Class, std::move(x), std::move(cls), Iri{}};
  }
  static Assertion of_role(Iri x, Iri prop, Iri y) {
    return {AssertionKind::Role, std::move(x), std::move(prop), std::move(y)};
  }

  bool is_class() const noexcept { return kind == AssertionKind::Class; }
  bool is_role() const noexcept { return kind == AssertionKind::Role; }

  friend auto operator<=>(const Assertion&, const Assertion&) = default;
};

using Statement = std::variant<TBoxAxiom, Assertion>;

inline const std::string& predicate_of(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::SubClass: return vocab::kSubClassOf;
    case AxiomKind::Domain: return vocab::kDomain;
    case AxiomKind::Range: return vocab::kRange;
    case AxiomKind::SubProp: return vocab::kSubPropertyOf;
  }
  return vocab::kSubClassOf;
}

inline Triple to_triple(const TBoxAxiom& ax) {
  return {ax.subject, Iri{predicate_of(ax.kind)}, ax.object};
}

inline Triple to_triple(const Assertion& a) {
  if (a.is_class()) return {a.subject, Iri{vocab::kType}, a.name};
  return {a.subject, a.name, a.object};
}

inline Triple to_triple(const Statement& s) {
  return std::visit([](const auto& v) { return to_triple(v); }, s);
}

// Maps a TBox predicate IRI to its axiom kind; false for anything else.
inline bool axiom_kind_of(std::string_view predicate, AxiomKind& out) {
  if (predicate == vocab::kSubClassOf) { out = AxiomKind::SubClass; return true; }
  if (predicate == vocab::kDomain) { out = AxiomKind::Domain; return true; }
  if (predicate == vocab::kRange) { out = AxiomKind::Range; return true; }
  if (predicate == vocab::kSubPropertyOf) { out = AxiomKind::SubProp; return true; }
  return false;
}

namespace detail {
inline void require_standard(const Iri& iri, std::string_view role) {
  if (iri.empty()) throw Error("empty IRI in " + std::string(role) + " position");
  if (vocab::is_reserved(iri.value)) {
    throw NonStandardUse("reserved vocabulary <" + iri.value + "> used as " +
                         std::string(role));
  }
}
}  // namespace detail

// Classifies a ground triple as one of the six supported statement forms.
inline Statement classify_triple(const Triple& t) {
  detail::require_standard(t.subject, "subject");
  AxiomKind kind;
  if (axiom_kind_of(t.predicate.value, kind)) {
    detail::require_standard(t.object, "object");
    return TBoxAxiom{kind, t.subject, t.object};
  }
  if (t.predicate.value == vocab::kType) {
    detail::require_standard(t.object, "class");
    return Assertion::of_class(t.subject, t.object);
  }
  detail::require_standard(t.predicate, "property");
  detail::require_standard(t.object, "object");
  return Assertion::of_role(t.subject, t.predicate, t.object);
}

enum class StoreMode { Plain, Materialised, Reduced };

inline std::string_view to_string(StoreMode m) {
  switch (m) {
    case StoreMode::Plain: return "plain";
    case StoreMode::Materialised: return "materialised";
    case StoreMode::Reduced: return "reduced";
  }
  return "plain";
}

// TBox plus an ABox split into explicit and implicit parts. Only the
// Materialised mode carries a non-empty implicit part; `partitioned` records
// whether that split reflects actual update history.
struct TripleStore {
  std::set<TBoxAxiom> tbox;
  std::set<Assertion> abox_explicit;
  std::set<Assertion> abox_implicit;
  StoreMode mode = StoreMode::Plain;
  bool partitioned = false;

  std::set<Assertion> abox() const {
    std::set<Assertion> all = abox_explicit;
    all.insert(abox_implicit.begin(), abox_implicit.end());
    return all;
  }

  std::size_t abox_size() const { return abox_explicit.size() + abox_implicit.size(); }

  bool contains(const Assertion& a) const {
    return abox_explicit.contains(a) || abox_implicit.contains(a);
  }

  void insert(const Statement& s) {
    if (const auto* ax = std::get_if<TBoxAxiom>(&s)) {
      tbox.insert(*ax);
    } else {
      const auto& a = std::get<Assertion>(s);
      abox_implicit.erase(a);
      abox_explicit.insert(a);
    }
  }

  void erase(const Statement& s) {
    if (const auto* ax = std::get_if<TBoxAxiom>(&s)) {
      tbox.erase(*ax);
    } else {
      const auto& a = std::get<Assertion>(s);
      abox_explicit.erase(a);
      abox_implicit.erase(a);
    }
  }

  // Drops the explicit/implicit split and the mode tag.
  TripleStore as_plain() const {
    TripleStore out;
    out.tbox = tbox;
    out.abox_explicit = abox();
    return out;
  }

  std::vector<Triple> triples() const {
    std::vector<Triple> out;
    out.reserve(tbox.size() + abox_size());
    for (const auto& ax : tbox) out.push_back(to_triple(ax));
    for (const auto& a : abox_explicit) out.push_back(to_triple(a));
    for (const auto& a : abox_implicit) out.push_back(to_triple(a));
    return out;
  }

  // Equality ignores the explicit/implicit split and the mode tag.
  friend bool operator==(const TripleStore& a, const TripleStore& b) {
    return a.tbox == b.tbox && a.abox() == b.abox();
  }
};

inline TripleStore make_store(std::set<TBoxAxiom> tbox, std::set<Assertion> abox = {}) {
  TripleStore s;
  s.tbox = std::move(tbox);
  s.abox_explicit = std::move(abox);
  return s;
}

// Returns a description of the first violated partition invariant, or an
// empty string. Mode-content checks live in entailment.hpp.
inline std::string partition_violation(const TripleStore& s) {
  for (const auto& a : s.abox_implicit) {
    if (s.abox_explicit.contains(a)) return "explicit and implicit ABox overlap";
  }
  if (s.mode != StoreMode::Materialised && !s.abox_implicit.empty()) {
    return "implicit ABox outside materialised mode";
  }
  return {};
}

struct StoreDiff {
  std::set<TBoxAxiom> added_tbox;
  std::set<Assertion> added_abox;
  std::set<TBoxAxiom> removed_tbox;
  std::set<Assertion> removed_abox;

  bool empty() const {
    return added_tbox.empty() && added_abox.empty() && removed_tbox.empty() &&
           removed_abox.empty();
  }
  friend bool operator==(const StoreDiff&, const StoreDiff&) = default;
};

inline StoreDiff store_diff(const TripleStore& before, const TripleStore& after) {
  StoreDiff d;
  auto b_abox = before.abox();
  auto a_abox = after.abox();
  std::ranges::set_difference(after.tbox, before.tbox,
                              std::inserter(d.added_tbox, d.added_tbox.end()));
  std::ranges::set_difference(before.tbox, after.tbox,
                              std::inserter(d.removed_tbox, d.removed_tbox.end()));
  std::ranges::set_difference(a_abox, b_abox,
                              std::inserter(d.added_abox, d.added_abox.end()));
  std::ranges::set_difference(b_abox, a_abox,
                              std::inserter(d.removed_abox, d.removed_abox.end()));
  return d;
}

}  // namespace rdfsupd
