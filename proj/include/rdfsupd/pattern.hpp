#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rdfsupd/model.hpp"

namespace rdfsupd {

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;
  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

// `subject predicate* object`: zero-or-more steps over a single IRI.
struct PathPattern {
  Term subject;
  Iri predicate;
  Term object;
  friend auto operator<=>(const PathPattern&, const PathPattern&) = default;
};

// Binds `var` to every term occurring anywhere in the store; the surface
// form is `?v a rdfs:Resource`.
struct AnyTerm {
  Var var;
  friend auto operator<=>(const AnyTerm&, const AnyTerm&) = default;
};

using Atom = std::variant<TriplePattern, PathPattern, AnyTerm>;

inline TriplePattern pattern_of(const Triple& t) {
  return {t.subject, t.predicate, t.object};
}

inline TriplePattern pattern_of(const Statement& s) { return pattern_of(to_triple(s)); }

inline bool needs_general(const Atom& a);

// Set of atoms kept in first-insertion order (for SELECT * and stable
// rendering); comparison is set comparison.
class Bgp {
 public:
  Bgp() = default;
  explicit Bgp(bool general) : general_(general) {}
  Bgp(std::initializer_list<Atom> atoms, bool general = false) : general_(general) {
    for (const auto& a : atoms) add(a);
  }

  // A BGP becomes general as soon as it holds an atom outside the ABox forms.
  void add(const Atom& a) {
    if (std::find(atoms_.begin(), atoms_.end(), a) == atoms_.end()) {
      atoms_.push_back(a);
      if (needs_general(a)) general_ = true;
    }
  }
  void add_all(const Bgp& other) {
    for (const auto& a : other.atoms_) add(a);
  }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  bool general() const noexcept { return general_; }
  void set_general(bool g) noexcept { general_ = g; }

  std::vector<Atom> sorted() const {
    auto v = atoms_;
    std::sort(v.begin(), v.end());
    return v;
  }

  friend bool operator==(const Bgp& a, const Bgp& b) { return a.sorted() == b.sorted(); }
  friend bool operator<(const Bgp& a, const Bgp& b) { return a.sorted() < b.sorted(); }

 private:
  std::vector<Atom> atoms_;
  bool general_ = false;
};

inline Bgp join(const Bgp& a, const Bgp& b) {
  Bgp out(a.general() || b.general());
  out.add_all(a);
  out.add_all(b);
  return out;
}

class UnionPattern {
 public:
  UnionPattern() = default;
  UnionPattern(std::initializer_list<Bgp> ds) {
    for (const auto& d : ds) add(d);
  }

  // The pattern `{}`: one empty BGP, answered by the empty substitution.
  static UnionPattern unit() { return UnionPattern{Bgp{}}; }

  void add(const Bgp& d) {
    if (std::find(disjuncts_.begin(), disjuncts_.end(), d) == disjuncts_.end()) {
      disjuncts_.push_back(d);
    }
  }

  const std::vector<Bgp>& disjuncts() const noexcept { return disjuncts_; }
  std::size_t size() const noexcept { return disjuncts_.size(); }
  bool empty() const noexcept { return disjuncts_.empty(); }

  bool general() const {
    return std::any_of(disjuncts_.begin(), disjuncts_.end(),
                       [](const Bgp& b) { return b.general(); });
  }

  friend bool operator==(const UnionPattern& a, const UnionPattern& b) {
    auto sa = a.disjuncts_, sb = b.disjuncts_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  }

 private:
  std::vector<Bgp> disjuncts_;
};

// Join distributes over union: every pair of disjuncts is conjoined.
inline UnionPattern join(const UnionPattern& a, const UnionPattern& b) {
  UnionPattern out;
  for (const auto& da : a.disjuncts())
    for (const auto& db : b.disjuncts()) out.add(join(da, db));
  return out;
}

struct Query {
  std::vector<Var> select;
  UnionPattern where;
};

struct UpdateOperation {
  Bgp delete_template;
  Bgp insert_template;
  UnionPattern where = UnionPattern::unit();

  bool general() const {
    return delete_template.general() || insert_template.general() || where.general();
  }

  friend bool operator==(const UpdateOperation&, const UpdateOperation&) = default;
};

using Substitution = std::map<Var, Iri>;

// ---------------------------------------------------------------------------
// Variables

namespace detail {
inline void push_var(std::vector<Var>& out, const Term& t) {
  if (is_var(t) && std::find(out.begin(), out.end(), as_var(t)) == out.end()) {
    out.push_back(as_var(t));
  }
}
}  // namespace detail

inline void collect_vars(const Atom& atom, std::vector<Var>& out) {
  std::visit(
      [&](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, TriplePattern>) {
          detail::push_var(out, a.subject);
          detail::push_var(out, a.predicate);
          detail::push_var(out, a.object);
        } else if constexpr (std::is_same_v<A, PathPattern>) {
          detail::push_var(out, a.subject);
          detail::push_var(out, a.object);
        } else {
          detail::push_var(out, Term{a.var});
        }
      },
      atom);
}

// Variables in first-occurrence order.
inline std::vector<Var> vars_of(const Bgp& b) {
  std::vector<Var> out;
  for (const auto& a : b.atoms()) collect_vars(a, out);
  return out;
}

inline std::vector<Var> vars_of(const UnionPattern& u) {
  std::vector<Var> out;
  for (const auto& d : u.disjuncts())
    for (const auto& a : d.atoms()) collect_vars(a, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

inline Term substitute(const Term& t, const Substitution& theta) {
  if (is_var(t)) {
    auto it = theta.find(as_var(t));
    if (it != theta.end()) return it->second;
  }
  return t;
}

inline TriplePattern substitute(const TriplePattern& p, const Substitution& theta) {
  return {substitute(p.subject, theta), substitute(p.predicate, theta), substitute(p.object, theta)};
}

inline std::optional<Triple> ground(const TriplePattern& p) {
  if (!is_iri(p.subject) || !is_iri(p.predicate) || !is_iri(p.object)) return std::nullopt;
  return Triple{as_iri(p.subject), as_iri(p.predicate), as_iri(p.object)};
}

inline Substitution project(const Substitution& theta, const std::vector<Var>& keep) {
  Substitution out;
  for (const auto& v : keep) {
    auto it = theta.find(v);
    if (it != theta.end()) out.emplace(v, it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Atom shapes

enum class AtomShape { Class, Role, SubClass, Domain, Range, SubProp, Generic };

// Which statement form a triple pattern has. `Generic` means a variable in
// predicate position (only legal in general BGPs).
inline AtomShape shape_of(const TriplePattern& p) {
  if (is_var(p.predicate)) return AtomShape::Generic;
  const auto& pred = as_iri(p.predicate).value;
  AxiomKind kind;
  if (axiom_kind_of(pred, kind)) {
    switch (kind) {
      case AxiomKind::SubClass: return AtomShape::SubClass;
      case AxiomKind::Domain: return AtomShape::Domain;
      case AxiomKind::Range: return AtomShape::Range;
      case AxiomKind::SubProp: return AtomShape::SubProp;
    }
  }
  if (pred == vocab::kType) return AtomShape::Class;
  return AtomShape::Role;
}

inline bool is_abox_shape(AtomShape s) {
  return s == AtomShape::Class || s == AtomShape::Role;
}

inline bool needs_general(const Atom& a) {
  if (std::holds_alternative<PathPattern>(a)) return true;
  if (std::holds_alternative<AnyTerm>(a)) return false;
  const auto& p = std::get<TriplePattern>(a);
  auto s = shape_of(p);
  if (s == AtomShape::Class) return is_var(p.object);
  return s != AtomShape::Role;
}

namespace detail {
inline void require_standard_term(const Term& t, std::string_view role) {
  if (is_iri(t)) require_standard(as_iri(t), role);
}
}  // namespace detail

// Checks one triple pattern against the fragment. Non-general patterns
// admit only the two ABox forms with IRIs in class/property position.
inline void validate_pattern(const TriplePattern& p, bool general) {
  detail::require_standard_term(p.subject, "subject");
  switch (shape_of(p)) {
    case AtomShape::Generic:
      if (!general) throw VarInPredicate("variable in predicate position requires a general BGP");
      detail::require_standard_term(p.object, "object");
      return;
    case AtomShape::Class:
      if (!general && is_var(p.object)) {
        throw VarInPredicate("variable in class position requires a general BGP");
      }
      detail::require_standard_term(p.object, "class");
      return;
    case AtomShape::Role:
      detail::require_standard_term(p.predicate, "property");
      detail::require_standard_term(p.object, "object");
      return;
    default:
      if (!general) {
        throw TerminologicalPattern("terminological pattern requires a general BGP");
      }
      detail::require_standard_term(p.object, "object");
      return;
  }
}

}  // namespace rdfsupd
