#pragma once

// Brute-force reference implementations for the test suites. Nothing here
// calls into the library's closure, reduction or rewriting code; the only
// shared pieces are the value types and triple classification.

#include <array>
#include <bit>
#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdfsupd/model.hpp"
#include "rdfsupd/pattern.hpp"

namespace oracle {

using rdfsupd::Assertion;
using rdfsupd::Iri;
using rdfsupd::TBoxAxiom;
using rdfsupd::TripleStore;

class SizeLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Fact = std::array<std::string, 3>;

inline const std::string kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline const std::string kSc = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline const std::string kSp = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline const std::string kDom = "http://www.w3.org/2000/01/rdf-schema#domain";
inline const std::string kRng = "http://www.w3.org/2000/01/rdf-schema#range";

inline std::set<Fact> facts_of(const TripleStore& g) {
  std::set<Fact> out;
  for (const auto& t : g.triples()) out.insert({t.subject.value, t.predicate.value, t.object.value});
  return out;
}

inline TripleStore store_of(const std::set<Fact>& facts) {
  TripleStore g;
  for (const auto& f : facts) g.insert(rdfsupd::classify_triple({Iri{f[0]}, Iri{f[1]}, Iri{f[2]}}));
  return g;
}

// Applies the six rules to every ordered pair of facts until nothing new
// appears.
inline std::set<Fact> naive_closure(std::set<Fact> facts) {
  for (;;) {
    std::set<Fact> fresh;
    for (const auto& x : facts) {
      for (const auto& y : facts) {
        const std::string& p = x[1];
        if (p == kSp && y[1] == x[0]) fresh.insert({y[0], x[2], y[2]});
        if (p == kRng && y[1] == x[0]) fresh.insert({y[2], kType, x[2]});
        if (p == kDom && y[1] == x[0]) fresh.insert({y[0], kType, x[2]});
        if (p == kSc && y[1] == kType && y[2] == x[0]) fresh.insert({y[0], kType, x[2]});
        if (p == kSp && y[1] == kSp && y[0] == x[2]) fresh.insert({x[0], kSp, y[2]});
        if (p == kSc && y[1] == kSc && y[0] == x[2]) fresh.insert({x[0], kSc, y[2]});
      }
    }
    const std::size_t before = facts.size();
    facts.insert(fresh.begin(), fresh.end());
    if (facts.size() == before) return facts;
  }
}

inline TripleStore oracle_mat(const TripleStore& g) { return store_of(naive_closure(facts_of(g))); }

inline std::set<Assertion> closed_abox(const std::set<TBoxAxiom>& tbox, const std::set<Assertion>& abox) {
  TripleStore g;
  g.tbox = tbox;
  g.abox_explicit = abox;
  return oracle_mat(g).abox();
}

// Smallest ABox subset with the same closure; among subsets of that size the
// one whose sorted assertion list is lexicographically least.
inline TripleStore oracle_red(const TripleStore& g, std::size_t limit = 12) {
  const std::vector<Assertion> abox = [&] {
    auto a = g.abox();
    return std::vector<Assertion>(a.begin(), a.end());
  }();
  if (abox.size() > limit) throw SizeLimit("oracle_red: ABox too large for subset search");
  const std::set<Assertion> target = closed_abox(g.tbox, g.abox());
  std::vector<std::set<Assertion>> single;
  for (const auto& a : abox) single.push_back(closed_abox(g.tbox, {a}));

  const std::size_t n = abox.size();
  std::vector<Assertion> best;
  bool found = false;
  for (std::size_t size = 0; size <= n && !found; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      std::set<Assertion> covered;
      std::vector<Assertion> chosen;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          covered.insert(single[i].begin(), single[i].end());
          chosen.push_back(abox[i]);
        }
      }
      if (covered != target) continue;
      if (!found || chosen < best) best = chosen;
      found = true;
    }
  }
  TripleStore out;
  out.tbox = g.tbox;
  out.abox_explicit.insert(best.begin(), best.end());
  out.mode = rdfsupd::StoreMode::Reduced;
  return out;
}

// True when `fact` follows from `from` together with the TBox.
inline bool derivable(const std::set<TBoxAxiom>& tbox, const Assertion& from, const Assertion& fact) {
  return closed_abox(tbox, {from}).contains(fact);
}

using EdgeSet = std::set<TBoxAxiom>;

namespace detail {

struct Graph {
  std::vector<Iri> nodes;
  std::vector<TBoxAxiom> edges;
  std::vector<std::pair<int, int>> ends;

  int index(const Iri& n) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == n) return static_cast<int>(i);
    return -1;
  }

  // Reachability from `a` using the edges not in `removed`.
  std::uint32_t reach(int a, std::uint64_t removed) const {
    std::uint32_t seen = 1u << a;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (removed & (std::uint64_t{1} << e)) continue;
        auto [u, v] = ends[e];
        if ((seen & (1u << u)) && !(seen & (1u << v))) {
          seen |= 1u << v;
          grew = true;
        }
      }
    }
    return seen;
  }
};

inline Graph build_graph(const std::set<TBoxAxiom>& tbox, rdfsupd::AxiomKind kind) {
  Graph g;
  std::set<Iri> nodes;
  for (const auto& ax : tbox) {
    if (ax.kind != kind) continue;
    nodes.insert(ax.subject);
    nodes.insert(ax.object);
  }
  if (nodes.size() > 10) throw SizeLimit("cut enumeration supports at most 10 nodes");
  g.nodes.assign(nodes.begin(), nodes.end());
  for (const auto& ax : tbox) {
    if (ax.kind != kind) continue;
    g.edges.push_back(ax);
    g.ends.emplace_back(g.index(ax.subject), g.index(ax.object));
  }
  if (g.edges.size() > 63) throw SizeLimit("too many edges");
  return g;
}

inline bool connected(const Graph& g, const std::vector<std::pair<Iri, Iri>>& pairs, std::uint64_t removed) {
  for (const auto& [a, b] : pairs) {
    const int ia = g.index(a);
    const int ib = g.index(b);
    if (ia < 0 || ib < 0) continue;
    if (g.reach(ia, removed) & (1u << ib)) return true;
  }
  return false;
}

}  // namespace detail

// All sets of at most `max_size` relevant edges (edges lying on some path
// between a pair) whose removal disconnects every pair.
inline std::set<EdgeSet> enumerate_multicuts(const std::set<TBoxAxiom>& tbox, rdfsupd::AxiomKind kind,
                                             const std::vector<std::pair<Iri, Iri>>& pairs, std::size_t max_size) {
  const detail::Graph g = detail::build_graph(tbox, kind);
  std::vector<std::size_t> relevant;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.ends[e];
    for (const auto& [a, b] : pairs) {
      const int ia = g.index(a);
      const int ib = g.index(b);
      if (ia < 0 || ib < 0) continue;
      if ((g.reach(ia, 0) & (1u << u)) && (g.reach(v, 0) & (1u << ib))) {
        relevant.push_back(e);
        break;
      }
    }
  }
  // Subsets are visited by increasing size, so the cost is bounded by
  // sum C(relevant, k) for k <= max_size rather than 2^relevant.
  std::set<EdgeSet> cuts;
  std::vector<std::size_t> chosen;
  auto visit = [&](auto&& self, std::size_t from) -> void {
    std::uint64_t removed = 0;
    for (std::size_t i : chosen) removed |= std::uint64_t{1} << relevant[i];
    if (!detail::connected(g, pairs, removed)) {
      EdgeSet cut;
      for (std::size_t i : chosen) cut.insert(g.edges[relevant[i]]);
      cuts.insert(std::move(cut));
    }
    if (chosen.size() == max_size) return;
    for (std::size_t i = from; i < relevant.size(); ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  visit(visit, 0);
  return cuts;
}

inline std::set<EdgeSet> enumerate_cuts(const std::set<TBoxAxiom>& tbox, rdfsupd::AxiomKind kind, const Iri& a,
                                        const Iri& b, std::size_t max_size) {
  return enumerate_multicuts(tbox, kind, {{a, b}}, max_size);
}

inline std::set<EdgeSet> minimal_only(const std::set<EdgeSet>& cuts) {
  std::set<EdgeSet> out;
  for (const auto& c : cuts) {
    bool minimal = true;
    for (const auto& d : cuts) {
      if (d.size() < c.size() && std::includes(c.begin(), c.end(), d.begin(), d.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(c);
  }
  return out;
}

// ---- random instances ------------------------------------------------------

struct GenConfig {
  int max_classes = 5;
  int max_props = 4;
  int max_individuals = 4;
  int max_axioms = 8;
  int max_assertions = 10;
  bool allow_cycles = false;
  std::uint64_t seed = 0;
};

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    classes_ = cfg.max_classes;
    props_ = cfg.max_props;
    individuals_ = cfg.max_individuals;
  }

  std::mt19937_64& rng() { return rng_; }

  static Iri cls(int i) { return Iri{"http://example.org/C" + std::to_string(i)}; }
  static Iri prop(int i) { return Iri{"http://example.org/p" + std::to_string(i)}; }
  static Iri ind(int i) { return Iri{"http://example.org/i" + std::to_string(i)}; }

  TripleStore store() {
    TripleStore g;
    const int axioms = pick(cfg_.max_axioms);
    for (int k = 0; k < axioms; ++k) {
      if (auto ax = axiom()) g.tbox.insert(*ax);
    }
    const int assertions = pick(cfg_.max_assertions);
    for (int k = 0; k < assertions; ++k) {
      if (auto a = assertion()) g.abox_explicit.insert(*a);
    }
    return g;
  }

  // Conjunctive query of 1..max_atoms ABox atoms over variables ?v0..?v2.
  rdfsupd::Bgp cq(int max_atoms = 3) {
    rdfsupd::Bgp q;
    const int n = 1 + pick(max_atoms - 1);
    for (int k = 0; k < n; ++k) {
      if (auto a = atom(0.6)) q.add(*a);
    }
    return q;
  }

  // Non-general update: WHERE is a small CQ, templates reuse its variables
  // or constants from the vocabulary.
  rdfsupd::UpdateOperation update() {
    rdfsupd::UpdateOperation u;
    u.where = rdfsupd::UnionPattern{cq(2)};
    if (chance(0.2)) u.where = rdfsupd::UnionPattern::unit();
    if (chance(0.2) && u.where.disjuncts().front().size() > 0) u.where.add(cq(2));
    const int dels = pick(2);
    const int ins = pick(2);
    for (int k = 0; k < dels; ++k)
      if (auto a = atom(0.5)) u.delete_template.add(*a);
    for (int k = 0; k < ins; ++k)
      if (auto a = atom(0.5)) u.insert_template.add(*a);
    return u;
  }

  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  int pick(int max_inclusive) {
    if (max_inclusive <= 0) return 0;
    return std::uniform_int_distribution<int>(0, max_inclusive)(rng_);
  }

 private:
  std::optional<TBoxAxiom> axiom() {
    const int kind = pick(3);
    if ((kind == 0 && classes_ < 2) || (kind == 3 && props_ < 2) || ((kind == 1 || kind == 2) && (props_ < 1 || classes_ < 1))) {
      return std::nullopt;
    }
    auto ordered = [&](int n) -> std::pair<int, int> {
      int a = pick(n - 1);
      int b = pick(n - 1);
      if (!cfg_.allow_cycles) {
        if (a == b) b = (a + 1) % n;
        if (a > b) std::swap(a, b);
      }
      return {a, b};
    };
    switch (kind) {
      case 0: {
        auto [a, b] = ordered(classes_);
        if (a == b) return std::nullopt;
        return TBoxAxiom::sub_class(cls(a), cls(b));
      }
      case 1: return TBoxAxiom::domain(prop(pick(props_ - 1)), cls(pick(classes_ - 1)));
      case 2: return TBoxAxiom::range(prop(pick(props_ - 1)), cls(pick(classes_ - 1)));
      default: {
        auto [a, b] = ordered(props_);
        if (a == b) return std::nullopt;
        return TBoxAxiom::sub_prop(prop(a), prop(b));
      }
    }
  }

  std::optional<Assertion> assertion() {
    if (individuals_ < 1) return std::nullopt;
    const bool role = props_ > 0 && (classes_ == 0 || chance(0.5));
    if (role) return Assertion::of_role(ind(pick(individuals_ - 1)), prop(pick(props_ - 1)), ind(pick(individuals_ - 1)));
    if (classes_ == 0) return std::nullopt;
    return Assertion::of_class(ind(pick(individuals_ - 1)), cls(pick(classes_ - 1)));
  }

  rdfsupd::Term individual_or_var(double var_p) {
    if (individuals_ < 1 || chance(var_p)) return rdfsupd::Var{"v" + std::to_string(pick(2))};
    return ind(pick(individuals_ - 1));
  }

  std::optional<rdfsupd::TriplePattern> atom(double var_p) {
    const Iri type{rdfsupd::vocab::kType};
    const bool role = props_ > 0 && (classes_ == 0 || chance(0.5));
    if (role) return rdfsupd::TriplePattern{individual_or_var(var_p), prop(pick(props_ - 1)), individual_or_var(var_p)};
    if (classes_ == 0) return std::nullopt;
    return rdfsupd::TriplePattern{individual_or_var(var_p), type, cls(pick(classes_ - 1))};
  }

  GenConfig cfg_;
  std::mt19937_64 rng_;
  int classes_ = 0;
  int props_ = 0;
  int individuals_ = 0;
};

inline TripleStore gen_store(const GenConfig& cfg) { return Generator(cfg).store(); }

inline rdfsupd::UpdateOperation gen_update(const GenConfig& cfg, const TripleStore&) {
  Generator gen(cfg);
  gen.store();
  return gen.update();
}

// Random DAG over `nodes` classes (edges only from lower to higher index),
// transitively closed by brute force.
inline std::set<TBoxAxiom> gen_closed_dag(std::mt19937_64& rng, int nodes, double density) {
  std::bernoulli_distribution edge(density);
  std::set<Fact> facts;
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j)
      if (edge(rng)) facts.insert({Generator::cls(i).value, kSc, Generator::cls(j).value});
  return store_of(naive_closure(facts)).tbox;
}

}  // namespace oracle
