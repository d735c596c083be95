#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace rdfsupd;
using namespace fx;

namespace {

Triple t3(const Iri& s, const std::string& p, const Iri& o) { return {s, Iri{p}, o}; }

}  // namespace

TEST(ClassifyTriple, SubPropertyBecomesTBoxAxiom) {
  auto s = classify_triple(t3(ex("hasFather"), vocab::kSubPropertyOf, ex("hasParent")));
  ASSERT_TRUE(std::holds_alternative<TBoxAxiom>(s));
  EXPECT_EQ(std::get<TBoxAxiom>(s), sp("hasFather", "hasParent"));
}

TEST(ClassifyTriple, TypeBecomesClassAssertion) {
  auto s = classify_triple(t3(ex("joe"), vocab::kType, ex("Child")));
  EXPECT_EQ(std::get<Assertion>(s), cls("joe", "Child"));
}

TEST(ClassifyTriple, OtherPredicatesBecomeRoles) {
  auto s = classify_triple({ex("joe"), ex("hasParent"), ex("jack")});
  EXPECT_EQ(std::get<Assertion>(s), role("joe", "hasParent", "jack"));
}

TEST(ClassifyTriple, DomainAndRange) {
  EXPECT_EQ(std::get<TBoxAxiom>(classify_triple(t3(ex("p"), vocab::kDomain, ex("A")))), TBoxAxiom::domain(ex("p"), ex("A")));
  EXPECT_EQ(std::get<TBoxAxiom>(classify_triple(t3(ex("p"), vocab::kRange, ex("A")))), TBoxAxiom::range(ex("p"), ex("A")));
}

TEST(ClassifyTriple, ReservedClassIsNonStandard) {
  EXPECT_THROW(classify_triple(t3(ex("x"), vocab::kType, Iri{vocab::kResource})), NonStandardUse);
}

TEST(ClassifyTriple, ReservedObjectOfRoleIsNonStandard) {
  EXPECT_THROW(classify_triple({ex("x"), ex("p"), Iri{vocab::kSubClassOf}}), NonStandardUse);
  EXPECT_THROW(classify_triple({Iri{vocab::kType}, ex("p"), ex("y")}), NonStandardUse);
}

TEST(ClassifyTriple, ReservedRolePredicateIsNonStandard) {
  EXPECT_THROW(classify_triple({ex("x"), Iri{std::string(vocab::kOwlNs) + "sameAs"}, ex("y")}), NonStandardUse);
}

TEST(ClassifyTriple, TerminologicalPatternRejectedWhenNotGeneral) {
  TriplePattern p{var("x"), Iri{vocab::kSubClassOf}, ex("B")};
  EXPECT_THROW(validate_pattern(p, false), TerminologicalPattern);
  EXPECT_NO_THROW(validate_pattern(p, true));
}

TEST(ClassifyTriple, VariablePredicateRejectedWhenNotGeneral) {
  TriplePattern p{ex("x"), var("p"), ex("y")};
  EXPECT_THROW(validate_pattern(p, false), VarInPredicate);
  EXPECT_NO_THROW(validate_pattern(p, true));
}

TEST(ClassifyTriple, RoundTripThroughTriples) {
  std::vector<Statement> all = {sc("A", "B"), sp("p", "q"), TBoxAxiom::domain(ex("p"), ex("A")),
                                TBoxAxiom::range(ex("p"), ex("B")), cls("x", "A"), role("x", "p", "y")};
  for (const auto& s : all) EXPECT_EQ(classify_triple(to_triple(s)), s);
}

TEST(TripleStore, SetSemanticsOnInsert) {
  TripleStore once;
  once.insert(cls("x", "A"));
  TripleStore twice = once;
  twice.insert(cls("x", "A"));
  EXPECT_EQ(once, twice);
  EXPECT_EQ(twice.abox_size(), 1u);
}

TEST(TripleStore, PunningIsAllowed) {
  TripleStore g = parse_turtle(":A a :A. :A :A :A. :A rdfs:subClassOf :A.");
  EXPECT_EQ(g.abox_size(), 2u);
  EXPECT_EQ(g.tbox.size(), 1u);
}

TEST(TripleStore, EqualityIgnoresPartition) {
  TripleStore a;
  a.abox_explicit = {cls("x", "A")};
  TripleStore b;
  b.abox_implicit = {cls("x", "A")};
  b.mode = StoreMode::Materialised;
  EXPECT_EQ(a, b);
}

TEST(TripleStore, InsertingImplicitMakesItExplicit) {
  TripleStore g;
  g.mode = StoreMode::Materialised;
  g.abox_implicit = {cls("x", "A")};
  g.insert(cls("x", "A"));
  EXPECT_TRUE(g.abox_implicit.empty());
  EXPECT_TRUE(g.abox_explicit.contains(cls("x", "A")));
}

TEST(TripleStore, PartitionViolationDetected) {
  TripleStore g;
  g.abox_explicit = {cls("x", "A")};
  g.abox_implicit = {cls("x", "A")};
  g.mode = StoreMode::Materialised;
  EXPECT_FALSE(partition_violation(g).empty());
  g.abox_implicit.clear();
  EXPECT_TRUE(partition_violation(g).empty());
  g.mode = StoreMode::Reduced;
  g.abox_implicit = {cls("y", "A")};
  EXPECT_FALSE(partition_violation(g).empty());
}

TEST(StoreDiff, IdentityIsEmpty) {
  auto g = family();
  EXPECT_TRUE(store_diff(g, g).empty());
}

TEST(StoreDiff, MaterialisationAddsTheFiveImpliedAssertions) {
  auto d = store_diff(family(), family_mat());
  EXPECT_EQ(d.added_abox, abox({cls("joe", "Child"), role("joe", "hasParent", "jane"), cls("jack", "Parent"),
                                cls("jane", "Mother"), cls("jane", "Parent")}));
  EXPECT_TRUE(d.removed_abox.empty());
  EXPECT_TRUE(d.added_tbox.empty());
  EXPECT_TRUE(d.removed_tbox.empty());
}

TEST(StoreDiff, FromEmpty) {
  TripleStore empty;
  TripleStore one;
  one.insert(cls("x", "A"));
  auto d = store_diff(empty, one);
  EXPECT_EQ(d.added_abox, abox({cls("x", "A")}));
  EXPECT_TRUE(d.removed_abox.empty());
  auto back = store_diff(one, empty);
  EXPECT_EQ(back.removed_abox, abox({cls("x", "A")}));
}

TEST(StoreDiff, TBoxChangesArePartitioned) {
  auto before = make_store({sc("A", "B")});
  auto after = make_store({sc("A", "C")});
  auto d = store_diff(before, after);
  EXPECT_EQ(d.added_tbox, std::set<TBoxAxiom>{sc("A", "C")});
  EXPECT_EQ(d.removed_tbox, std::set<TBoxAxiom>{sc("A", "B")});
}
