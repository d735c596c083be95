#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "rdfsupd/rdfsupd.hpp"

namespace fx {

using namespace rdfsupd;

inline Iri ex(const std::string& local) { return Iri{std::string(vocab::kDefaultNs) + local}; }
inline Assertion cls(const std::string& x, const std::string& a) { return Assertion::of_class(ex(x), ex(a)); }
inline Assertion role(const std::string& x, const std::string& p, const std::string& y) {
  return Assertion::of_role(ex(x), ex(p), ex(y));
}
inline TBoxAxiom sc(const std::string& a, const std::string& b) { return TBoxAxiom::sub_class(ex(a), ex(b)); }
inline TBoxAxiom sp(const std::string& a, const std::string& b) { return TBoxAxiom::sub_prop(ex(a), ex(b)); }
inline Var var(const std::string& n) { return Var{n}; }

inline const std::string kOntology = R"(
:hasFather rdfs:subPropertyOf :hasParent.
:hasMother rdfs:subPropertyOf :hasParent.
:Father rdfs:subClassOf :Parent.
:Mother rdfs:subClassOf :Parent.
:hasFather rdfs:range :Father; rdfs:domain :Child.
:hasMother rdfs:range :Mother; rdfs:domain :Child.
:hasParent rdfs:range :Parent; rdfs:domain :Child.
)";

inline const std::string kFamilyData = ":joe :hasParent :jack. :joe :hasMother :jane.\n";

inline const std::string kFamilyImplied = R"(
:joe a :Child; :hasParent :jack;
      :hasMother :jane; :hasParent :jane.
:jack a :Parent. :jane a :Mother, :Parent.
)";

inline const std::string kParentsQuery = "SELECT ?Y WHERE { :joe :hasParent ?Y. }";

inline const std::string kParentsUnion = R"(SELECT ?Y WHERE { { :joe :hasParent ?Y. }
                  UNION { :joe :hasFather ?Y. }
                  UNION { :joe :hasMother ?Y. } })";

inline const std::string kChildToMother = R"(DELETE { ?X a :Child. }
INSERT { ?Y a :Mother. }
WHERE { ?X :hasMother ?Y. })";

inline const std::string kTrace = R"(DELETE {} INSERT { :joe :hasMother :jane; :hasFather :jack } WHERE {};
DELETE { :joe :hasMother :jane; :hasFather :jack } INSERT {} WHERE {})";

inline const std::string kMale = R"(DELETE {} INSERT { :x a :Father. } WHERE {};
DELETE { :x a :Male. } INSERT {} WHERE {};)";

inline const std::string kChain = "{ :C rdfs:subclassOf :D . :D rdfs:subclassOf :E }";

inline const std::string kDiamond = R"(
:A rdfs:subClassOf :B . :B rdfs:subClassOf :C .
:B rdfs:subClassOf :D . :C rdfs:subClassOf :E .
:D rdfs:subClassOf :E . :E rdfs:subClassOf :F .
)";

inline const std::string kFan = ":A rdfs:subClassOf :B, :C, :D. :B rdfs:subClassOf :C, :D.";

// Family store with only the two explicit facts (reduced).
inline TripleStore family() { return parse_turtle(kOntology + kFamilyData); }
// Family store with every implied ABox triple spelled out (materialised).
inline TripleStore family_mat() { return parse_turtle(kOntology + kFamilyData + kFamilyImplied); }
inline TripleStore ontology() { return parse_turtle(kOntology); }

inline TripleStore tagged(TripleStore g, StoreMode m) {
  g.mode = m;
  return g;
}

// The chain example writes its TBox in set-brace notation; turn the braces
// into a plain Turtle document.
inline TripleStore chain() {
  std::string t = kChain;
  t.erase(std::remove(t.begin(), t.end(), '{'), t.end());
  std::replace(t.begin(), t.end(), '}', '.');
  return parse_turtle(t);
}

inline std::set<Assertion> abox(std::initializer_list<Assertion> items) { return {items}; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fx
