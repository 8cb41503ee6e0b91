#include <gtest/gtest.h>

#include <sstream>

#include "kgconv/error.hpp"
#include "kgconv/kg_store.hpp"
#include "support.hpp"

namespace kgconv {
namespace {

using testing::brute_neighborhood;
using testing::entity;
using testing::literal_triple;
using testing::make_graph;
using testing::mini_graph;
using testing::mini_raw;
using testing::triple;

// Frozen from a grep over data/mini_kg.jsonl:
//   grep -c '"kind": "triple"'                      -> 240
//   ... | grep -c '"o": {"entity"'                  -> 194
//   ... | grep -c '"p": "P214"'                     -> 3   (external ids)
//   ... | grep -c '"p": "P106"' / P569 / P1082      -> 19 / 10 / 12
constexpr std::size_t kMiniTriples = 240;
constexpr std::size_t kMiniEntityObjects = 194;
constexpr std::size_t kMiniExternalIds = 3;
constexpr std::size_t kMiniP106P569P1082 = 19 + 10 + 12;

KnowledgeGraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_graph(in);
}

const char* kFranceParis =
    R"({"kind":"entity","id":"Q142","preferred_label":"France","types":["Q6256"]}
{"kind":"entity","id":"Q90","preferred_label":"Paris","types":["Q515"]}
{"kind":"triple","s":"Q142","p":"P36","inverse":false,"o":{"entity":"Q90"},"qualifiers":{}}
)";

TEST(LoadGraph, EmptyInputGivesEmptyGraph) {
  const auto g = parse("");
  EXPECT_EQ(g.size(), 0u);
  EXPECT_TRUE(g.entities().empty());
}

TEST(LoadGraph, SingleRecord) {
  const auto g = parse(kFranceParis);
  EXPECT_EQ(g.entities().size(), 2u);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.label_of(g.triples()[0].object), "Paris");
}

TEST(LoadGraph, MiniKgTripleCountMatchesRecordCount) {
  EXPECT_EQ(mini_raw().size(), kMiniTriples);
}

TEST(LoadGraph, ReadsEntityFields) {
  const Entity& e = mini_raw().entity(EntityId("Q184874"));
  EXPECT_EQ(e.preferred_label, "Nicolas Louis de Lacaille");
  EXPECT_EQ(e.gender, Gender::kMale);
  EXPECT_TRUE(e.is_dead);
  ASSERT_TRUE(e.surname);
  EXPECT_EQ(*e.surname, "Lacaille");
  EXPECT_TRUE(e.is_person());
}

TEST(LoadGraph, ReadsLiteralsAndQualifiers) {
  const auto g = parse(R"({"kind":"entity","id":"Q1","preferred_label":"A"}
{"kind":"entity","id":"Q2","preferred_label":"B"}
{"kind":"triple","s":"Q1","p":"P569","o":{"literal":{"kind":"date","value":"1713-03-15","label":"15 March 1713"}}}
{"kind":"triple","s":"Q1","p":"P26","o":{"entity":"Q2"},"qualifiers":{"end_time":"1900-01-01"}}
)");
  ASSERT_EQ(g.size(), 2u);
  bool saw_literal = false, saw_qualifier = false;
  for (const Triple& t : g.triples()) {
    if (const auto* lit = as_literal(t.object)) {
      saw_literal = true;
      EXPECT_EQ(lit->kind, Literal::Kind::kDate);
      EXPECT_EQ(lit->label, "15 March 1713");
    } else {
      saw_qualifier = t.qualifiers.end_time == std::optional<std::string>("1900-01-01");
    }
  }
  EXPECT_TRUE(saw_literal);
  EXPECT_TRUE(saw_qualifier);
}

TEST(LoadGraph, UnlabeledEntitiesAreDroppedWithTheirTriples) {
  const auto g = parse(R"({"kind":"entity","id":"Q1","preferred_label":"A"}
{"kind":"entity","id":"Q2","preferred_label":""}
{"kind":"entity","id":"Q3","preferred_label":"C"}
{"kind":"triple","s":"Q1","p":"P1","o":{"entity":"Q2"}}
{"kind":"triple","s":"Q2","p":"P1","o":{"entity":"Q3"}}
{"kind":"triple","s":"Q1","p":"P1","o":{"entity":"Q3"}}
)");
  EXPECT_EQ(g.find_entity(EntityId("Q2")), nullptr);
  EXPECT_EQ(g.size(), 1u);
}

TEST(LoadGraph, ParseErrorCarriesLineNumber) {
  try {
    parse("{\"kind\":\"entity\",\"id\":\"Q1\",\"preferred_label\":\"A\"}\n{not json\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.kind(), "parse_error");
  }
}

TEST(LoadGraph, DanglingReferencesAreListed) {
  try {
    parse(R"({"kind":"entity","id":"Q1","preferred_label":"A"}
{"kind":"triple","s":"Q1","p":"P1","o":{"entity":"Q404"}}
)");
    FAIL() << "expected DanglingReferenceError";
  } catch (const DanglingReferenceError& e) {
    ASSERT_EQ(e.ids().size(), 1u);
    EXPECT_EQ(e.ids()[0], "Q404");
  }
}

TEST(LoadGraph, SaveLoadRoundTrip) {
  std::ostringstream out;
  save_graph(mini_raw(), out);
  std::istringstream in(out.str());
  const auto g = load_graph(in);
  ASSERT_EQ(g.size(), mini_raw().size());
  EXPECT_TRUE(std::equal(g.triples().begin(), g.triples().end(), mini_raw().triples().begin()));
  EXPECT_EQ(g.entities().size(), mini_raw().entities().size());
  EXPECT_EQ(g.properties().size(), mini_raw().properties().size());
}

TEST(KnowledgeGraph, IndexesAgreeWithTripleSet) {
  const auto& g = mini_graph();
  for (const Triple& t : g.triples()) {
    const auto by_s = g.outgoing(t.subject);
    EXPECT_NE(std::find_if(by_s.begin(), by_s.end(), [&](const Triple* x) { return *x == t; }),
              by_s.end());
    const auto by_sp = g.outgoing(t.subject, t.property);
    EXPECT_NE(std::find_if(by_sp.begin(), by_sp.end(), [&](const Triple* x) { return *x == t; }),
              by_sp.end());
    EXPECT_TRUE(g.contains(t));
  }
}

TEST(KnowledgeGraph, DuplicateFactsCollapse) {
  const auto g = make_graph({entity("Q1", "A"), entity("Q2", "B")},
                            {triple("Q1", "P1", "Q2"), triple("Q1", "P1", "Q2")});
  EXPECT_EQ(g.size(), 1u);
}

TEST(FilterProperties, ExternalIdOnlyGraphLosesEverything) {
  const auto g = make_graph({entity("Q1", "A")}, {literal_triple("Q1", "P214", "123")},
                            {{"P214", PropertyInfo{"VIAF ID", true}}});
  const auto f = filter_properties(g, PropertyRules::wikidata_defaults());
  EXPECT_EQ(f.size(), 0u);
  EXPECT_NE(f.find_entity(EntityId("Q1")), nullptr);
  EXPECT_TRUE(f.root_ineligible(EntityId("Q1")));
}

TEST(FilterProperties, EmptyRuleSetIsIdentity) {
  const auto f = filter_properties(mini_raw(), PropertyRules{});
  ASSERT_EQ(f.size(), mini_raw().size());
  EXPECT_TRUE(std::equal(f.triples().begin(), f.triples().end(), mini_raw().triples().begin()));
}

TEST(FilterProperties, ExcludedIdsRemoveExactlyTheirTriples) {
  PropertyRules rules;
  rules.excluded = {"P106", "P569", "P1082"};
  const auto f = filter_properties(mini_raw(), rules);
  EXPECT_EQ(mini_raw().size() - f.size(), kMiniP106P569P1082);
  for (const Triple& t : f.triples()) EXPECT_FALSE(rules.excluded.count(t.property.id));
}

TEST(FilterProperties, DefaultsDropExternalIdentifiers) {
  const auto f = filter_properties(mini_raw(), PropertyRules::wikidata_defaults());
  EXPECT_EQ(mini_raw().size() - f.size(), kMiniExternalIds);
}

TEST(FilterProperties, ForeignNamespacesAreDropped) {
  const auto g = make_graph({entity("Q1", "A"), entity("Q2", "B")},
                            {triple("Q1", "wdt:P1", "Q2"), triple("Q1", "schema:about", "Q2")});
  const auto f = filter_properties(g, PropertyRules::wikidata_defaults());
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.triples()[0].property.id, "wdt:P1");
}

TEST(AugmentReverse, CapitalOfFrance) {
  const auto g = augment_reverse(parse(kFranceParis));
  EXPECT_TRUE(g.contains(triple("Q90", "P36", "Q142", true)));
  EXPECT_EQ(g.size(), 2u);
}

TEST(AugmentReverse, LiteralObjectsAreNotReversed) {
  const auto g = augment_reverse(
      make_graph({entity("Q1", "A")}, {literal_triple("Q1", "P569", "1900", Literal::Kind::kDate)}));
  EXPECT_EQ(g.size(), 1u);
}

TEST(AugmentReverse, MiniKgCount) {
  const auto g = augment_reverse(mini_raw());
  EXPECT_EQ(g.size(), kMiniTriples + kMiniEntityObjects);
}

TEST(AugmentReverse, Idempotent) {
  const auto once = augment_reverse(mini_raw());
  const auto twice = augment_reverse(once);
  ASSERT_EQ(once.size(), twice.size());
  EXPECT_TRUE(std::equal(once.triples().begin(), once.triples().end(), twice.triples().begin()));
}

TEST(AugmentReverse, ReversalIsAnInvolution) {
  const auto& g = mini_graph();
  for (const Triple& t : g.triples()) {
    const auto* o = as_entity(t.object);
    if (!o) continue;
    EXPECT_TRUE(g.contains(Triple{*o, t.property.inverted(), t.subject, {}}));
  }
}

TEST(AugmentReverse, QualifiersAreCopied) {
  Triple t = triple("Q1", "P26", "Q2");
  t.qualifiers.end_time = "1906-04-19";
  const auto g = augment_reverse(make_graph({entity("Q1", "A"), entity("Q2", "B")}, {t}));
  const Triple* r = g.find(triple("Q2", "P26", "Q1", true));
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->qualifiers.end_time, t.qualifiers.end_time);
}

TEST(Neighborhood, RootWithoutOutgoingTriples) {
  const auto g = make_graph({entity("r", "R"), entity("a", "A")}, {triple("a", "p", "r")});
  EXPECT_TRUE(neighborhood(g, EntityId("r")).empty());
}

TEST(Neighborhood, StopsAfterTwoHops) {
  const auto g = make_graph(
      {entity("r", "R"), entity("a", "A"), entity("b", "B"), entity("c", "C"), entity("d", "D")},
      {triple("r", "p", "a"), triple("r", "p", "b"), triple("a", "p", "c"), triple("c", "p", "d")});
  const auto n = neighborhood(g, EntityId("r"));
  const std::vector<Triple> expected{triple("a", "p", "c"), triple("r", "p", "a"),
                                     triple("r", "p", "b")};
  EXPECT_EQ(n, expected);
}

TEST(Neighborhood, UnknownRootThrows) {
  EXPECT_THROW(neighborhood(mini_graph(), EntityId("Q0")), UnknownEntityError);
}

TEST(Neighborhood, MatchesBruteForceOnEveryMiniKgEntity) {
  const auto& g = mini_graph();
  for (const auto& [id, e] : g.entities()) EXPECT_EQ(neighborhood(g, id), brute_neighborhood(g, id)) << id.str();
}

KnowledgeGraph star(std::size_t leaves) {
  std::vector<Entity> entities{entity("r", "R", {"T"})};
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < leaves; ++i) {
    const std::string leaf = "l" + std::to_string(i);
    entities.push_back(entity(leaf, leaf));
    triples.push_back(triple("r", "p", leaf));
  }
  return make_graph(entities, triples);
}

TEST(EligibleRoots, NineteenIsTooFew) {
  const auto roots = eligible_roots(star(19), {{"t", EntityId("T")}});
  EXPECT_TRUE(roots.at("t").empty());
}

TEST(EligibleRoots, TwentyIsEnough) {
  const auto roots = eligible_roots(star(20), {{"t", EntityId("T")}});
  ASSERT_EQ(roots.at("t").size(), 1u);
  EXPECT_EQ(roots.at("t")[0], EntityId("r"));
}

TEST(EligibleRoots, MiniKgMembershipMatchesBruteForce) {
  const auto& g = mini_graph();
  const std::map<std::string, EntityId> themes{
      {"person", EntityId("Q5")}, {"country", EntityId("Q6256")}, {"space object", EntityId("Q6999")}};
  const auto roots = eligible_roots(g, themes);
  std::size_t total = 0;
  for (const auto& [theme, cls] : themes) {
    std::vector<EntityId> expected;
    for (const auto& [id, e] : g.entities())
      if (e.types.count(cls) && brute_neighborhood(g, id).size() >= 20) expected.push_back(id);
    EXPECT_EQ(roots.at(theme), expected) << theme;
    total += expected.size();
  }
  EXPECT_GT(total, 10u);
}

}  // namespace
}  // namespace kgconv
