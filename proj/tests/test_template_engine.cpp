#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "kgconv/error.hpp"
#include "kgconv/template_engine.hpp"
#include "support.hpp"

namespace kgconv {
namespace {

using testing::entity;
using testing::make_graph;
using testing::mini_graph;
using testing::mini_templates;
using testing::triple;

std::set<EntityId> ids(std::initializer_list<const char*> names) {
  std::set<EntityId> out;
  for (const char* n : names) out.insert(EntityId(n));
  return out;
}

ApplicabilityCondition cond(const char* p, std::set<EntityId> s, std::set<EntityId> o) {
  return {PropertyId{p, false}, std::move(s), std::move(o)};
}

Template tpl(std::string id, std::string text, ApplicabilityCondition c) {
  Template t;
  t.id = std::move(id);
  t.text = std::move(text);
  t.condition = std::move(c);
  t.tense = detect_tense(t.text);
  return t;
}

// Oracle: set inclusion written out by hand.
bool brute_matches(const ApplicabilityCondition& c, const Triple& t, const KnowledgeGraph& g) {
  if (c.property.id != t.property.id || c.property.inverse != t.property.inverse) return false;
  const auto& st = g.types_of(t.subject);
  const auto& ot = g.types_of(t.object);
  for (const auto& x : c.subject_types)
    if (!st.count(x)) return false;
  for (const auto& x : c.object_types)
    if (!ot.count(x)) return false;
  return true;
}

TEST(Matches, EmptyConditionMatchesEveryTripleOfItsProperty) {
  const auto& g = mini_graph();
  const auto c = cond("P27", {}, {});
  for (const Triple& t : g.triples()) EXPECT_EQ(matches(c, t, g), t.property == c.property);
}

TEST(Matches, SubjectTypeViolation) {
  const auto g = make_graph({entity("a", "A", {"city"}), entity("b", "B", {"country"})},
                            {triple("a", "P17", "b")});
  EXPECT_FALSE(matches(cond("P17", ids({"Q5"}), {}), g.triples()[0], g));
  EXPECT_TRUE(matches(cond("P17", ids({"city"}), ids({"country"})), g.triples()[0], g));
}

TEST(Matches, DirectionMatters) {
  const auto& g = mini_graph();
  ApplicabilityCondition reversed{PropertyId{"P36", true}, {}, {}};
  EXPECT_FALSE(matches(reversed, triple("Q142", "P36", "Q90"), g));
  EXPECT_TRUE(matches(reversed, triple("Q90", "P36", "Q142", true), g));
}

TEST(Matches, MiniKgSweepAgreesWithBruteForce) {
  const auto& g = mini_graph();
  for (const auto& t : mini_templates().templates())
    for (const Triple& x : g.triples())
      ASSERT_EQ(matches(t.condition, x, g), brute_matches(t.condition, x, g)) << t.id;
}

TEST(SelectTemplates, EmptyLibrary) {
  EXPECT_TRUE(select_templates(TemplateLibrary{}, triple("Q142", "P36", "Q90"), mini_graph()).empty());
}

TEST(SelectTemplates, SingleUniversalTemplate) {
  TemplateLibrary lib({tpl("a", "What is the capital of {SUBJECT}?", cond("P36", {}, {}))});
  const auto out = select_templates(lib, triple("Q142", "P36", "Q90"), mini_graph());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0]->id, "a");
}

TEST(SelectTemplates, MiniLibraryEqualsFilteringByMatches) {
  const auto& g = mini_graph();
  const auto& lib = mini_templates();
  for (const Triple& x : g.triples()) {
    std::vector<std::string> expected;
    for (const auto& t : lib.templates())
      if (brute_matches(t.condition, x, g)) expected.push_back(t.id);
    std::sort(expected.begin(), expected.end());
    std::vector<std::string> got;
    for (const Template* t : select_templates(lib, x, g)) got.push_back(t->id);
    EXPECT_EQ(got, expected);
  }
}

TEST(TemplateLibrary, RejectsDuplicatesAndBadSlots) {
  EXPECT_THROW(TemplateLibrary({tpl("a", "Who is {SUBJECT}?", cond("P1", {}, {})),
                                tpl("a", "Who was {SUBJECT}?", cond("P1", {}, {}))}),
               TemplateError);
  EXPECT_THROW(TemplateLibrary({tpl("a", "Who is it?", cond("P1", {}, {}))}), TemplateError);
  EXPECT_THROW(TemplateLibrary({tpl("a", "{SUBJECT} or {SUBJECT}?", cond("P1", {}, {}))}),
               TemplateError);
}

TEST(TemplateLibrary, FileRoundTrip) {
  const auto& lib = mini_templates();
  std::ostringstream out;
  save_templates(lib.templates(), out);
  std::istringstream in(out.str());
  const auto again = load_templates(in);
  ASSERT_EQ(again.size(), lib.size());
  for (std::size_t i = 0; i < lib.size(); ++i) {
    EXPECT_EQ(again.templates()[i].id, lib.templates()[i].id);
    EXPECT_EQ(again.templates()[i].text, lib.templates()[i].text);
    EXPECT_EQ(again.templates()[i].condition, lib.templates()[i].condition);
    EXPECT_EQ(again.templates()[i].source, lib.templates()[i].source);
  }
}

TEST(DetectTense, PresentPastUnknown) {
  EXPECT_EQ(detect_tense("What is the capital of {SUBJECT}?"), Tense::kPresent);
  EXPECT_EQ(detect_tense("What faith does {SUBJECT} follow?"), Tense::kPresent);
  EXPECT_EQ(detect_tense("Who was behind the discovery of {SUBJECT}?"), Tense::kPast);
  EXPECT_EQ(detect_tense("Who found {SUBJECT}?"), Tense::kPast);
  EXPECT_EQ(detect_tense("{SUBJECT}?"), Tense::kUnknown);
}

TEST(Instantiate, WhoFound) {
  const auto& g = mini_graph();
  const auto out = instantiate(tpl("x", "Who found {SUBJECT}?", cond("P61", {}, {})),
                               triple("Q1136383", "P61", "Q184874"), g);
  EXPECT_EQ(out.question, "Who found NGC 4833?");
  EXPECT_EQ(out.answer, "Nicolas Louis de Lacaille");
  EXPECT_EQ(out.question.substr(out.mention_pos, out.mention_len), "NGC 4833");
}

TEST(Instantiate, CapitalOfFrance) {
  const auto out = instantiate(tpl("x", "What is the capital of {SUBJECT}?", cond("P36", {}, {})),
                               triple("Q142", "P36", "Q90"), mini_graph());
  EXPECT_EQ(out.question, "What is the capital of France?");
  EXPECT_EQ(out.answer, "Paris");
}

TEST(Instantiate, SlotOnlyTemplateGivesTheLabel) {
  const auto out =
      instantiate(tpl("x", "{SUBJECT}", cond("P36", {}, {})), triple("Q142", "P36", "Q90"), mini_graph());
  EXPECT_EQ(out.question, "France");
}

TEST(Instantiate, EveryMiniTemplateYieldsOneMentionAndAQuestionMark) {
  const auto& g = mini_graph();
  for (const Triple& x : g.triples()) {
    for (const Template* t : select_templates(mini_templates(), x, g)) {
      const auto out = instantiate(*t, x, g);
      const std::string label = g.entity(x.subject).preferred_label;
      EXPECT_EQ(out.question.back(), '?');
      const auto first = out.question.find(label);
      ASSERT_NE(first, std::string::npos);
      EXPECT_EQ(out.question.find(label, first + 1), std::string::npos) << out.question;
    }
  }
}

TEST(MergeConditions, IntersectsTypeSets) {
  const auto m = merge_conditions(cond("p", ids({"A", "B"}), ids({"X"})), cond("p", ids({"A"}), ids({"X", "Y"})));
  EXPECT_EQ(m, cond("p", ids({"A"}), ids({"X"})));
}

TEST(MergeConditions, Idempotent) {
  const auto c = cond("p", ids({"A", "B"}), ids({"X"}));
  EXPECT_EQ(merge_conditions(c, c), c);
}

TEST(MergeConditions, PropertyMismatch) {
  try {
    merge_conditions(cond("p", {}, {}), cond("q", {}, {}));
    FAIL();
  } catch (const TemplateError& e) {
    EXPECT_EQ(e.kind(), "property_mismatch");
  }
}

// Synthetic type universe of 8 classes over 40 entities.
struct Universe {
  KnowledgeGraph graph;
  std::vector<Triple> pool;
  std::vector<EntityId> classes;
};

Universe make_universe(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Universe u;
  for (int i = 0; i < 8; ++i) u.classes.push_back(EntityId("T" + std::to_string(i)));
  std::vector<Entity> entities;
  for (int i = 0; i < 40; ++i) {
    Entity e = entity("e" + std::to_string(i), "E" + std::to_string(i));
    for (const auto& c : u.classes)
      if (rng() % 3 == 0) e.types.insert(c);
    entities.push_back(std::move(e));
  }
  std::vector<Triple> triples;
  for (int k = 0; k < 300; ++k) {
    triples.push_back(triple("e" + std::to_string(rng() % 40), "p", "e" + std::to_string(rng() % 40)));
  }
  u.graph = make_graph(entities, triples);
  u.pool.assign(u.graph.triples().begin(), u.graph.triples().end());
  return u;
}

ApplicabilityCondition random_condition(const Universe& u, std::mt19937_64& rng) {
  ApplicabilityCondition c{PropertyId{"p", false}, {}, {}};
  for (const auto& t : u.classes) {
    if (rng() % 4 == 0) c.subject_types.insert(t);
    if (rng() % 4 == 0) c.object_types.insert(t);
  }
  return c;
}

TEST(MergeConditions, AlgebraOnRandomPairs) {
  const Universe u = make_universe(5);
  std::mt19937_64 rng(99);
  for (int k = 0; k < 1000; ++k) {
    const auto a = random_condition(u, rng);
    const auto b = random_condition(u, rng);
    const auto c = random_condition(u, rng);
    const auto ab = merge_conditions(a, b);
    EXPECT_EQ(ab, merge_conditions(b, a));
    EXPECT_EQ(merge_conditions(ab, c), merge_conditions(a, merge_conditions(b, c)));
    EXPECT_EQ(merge_conditions(a, a), a);
    for (const Triple& t : u.pool)
      if (brute_matches(a, t, u.graph) || brute_matches(b, t, u.graph))
        ASSERT_TRUE(brute_matches(ab, t, u.graph));
  }
}

TEST(ClusterConditions, LowSupportIsDropped) {
  std::vector<Entity> es{entity("s", "S", {"A"})};
  std::vector<Triple> ts;
  for (int i = 0; i < 4; ++i) {
    es.push_back(entity("o" + std::to_string(i), "O", {"X"}));
    ts.push_back(triple("s", "p", "o" + std::to_string(i)));
  }
  const auto g = make_graph(es, ts);
  const std::vector<ApplicabilityCondition> in{cond("p", ids({"A"}), ids({"X"}))};
  EXPECT_TRUE(cluster_conditions(in, ts, g).empty());
}

TEST(ClusterConditions, IdenticalConditionsCollapse) {
  std::vector<Entity> es{entity("s", "S", {"A"})};
  std::vector<Triple> ts;
  for (int i = 0; i < 6; ++i) {
    es.push_back(entity("o" + std::to_string(i), "O", {"X"}));
    ts.push_back(triple("s", "p", "o" + std::to_string(i)));
  }
  const auto g = make_graph(es, ts);
  const auto c = cond("p", ids({"A"}), ids({"X"}));
  const auto out = cluster_conditions(std::vector{c, c}, ts, g);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], c);
}

TEST(ClusterConditions, TwoTypeClustersKeepBruteForceSupport) {
  // Cities in regions and persons with citizenships, both over "p".
  std::vector<Entity> es;
  std::vector<Triple> ts;
  std::vector<ApplicabilityCondition> in;
  for (int i = 0; i < 8; ++i) {
    const std::string city = "city" + std::to_string(i), region = "region" + std::to_string(i);
    const std::string person = "person" + std::to_string(i), country = "country" + std::to_string(i);
    es.push_back(entity(city, city, {"city", i % 2 ? "capital" : "town"}));
    es.push_back(entity(region, region, {"region"}));
    es.push_back(entity(person, person, {"human", i % 2 ? "writer" : "painter"}));
    es.push_back(entity(country, country, {"country"}));
    ts.push_back(triple(city, "p", region));
    ts.push_back(triple(person, "p", country));
  }
  const auto g = make_graph(es, ts);
  for (const Triple& t : g.triples()) in.push_back({t.property, g.types_of(t.subject), g.types_of(t.object)});
  const auto out = cluster_conditions(in, ts, g);
  ASSERT_FALSE(out.empty());
  for (const auto& c : out) {
    std::size_t brute = 0;
    for (const Triple& t : ts) brute += brute_matches(c, t, g);
    EXPECT_EQ(support(c, ts, g), brute);
    EXPECT_GE(brute, 5u);
  }
  // The two clusters stay apart: no output condition is empty on both sides.
  for (const auto& c : out) EXPECT_FALSE(c.subject_types.empty() && c.object_types.empty());
  EXPECT_EQ(out.size(), 2u);
}

TEST(TemplateFromQaPair, CapitalOfFrance) {
  const auto& g = mini_graph();
  const Triple t = triple("Q142", "P36", "Q90");
  const auto out = template_from_qa_pair(t, "what is the capital of France?", g);
  EXPECT_EQ(out.text, "what is the capital of {SUBJECT}?");
  EXPECT_EQ(out.condition.property, t.property);
  EXPECT_EQ(out.condition.subject_types, g.types_of(t.subject));
  EXPECT_EQ(out.condition.object_types, g.types_of(t.object));
  EXPECT_EQ(out.source, TemplateSource::kSimpleQuestions);
}

TEST(TemplateFromQaPair, Errors) {
  const auto& g = mini_graph();
  const Triple t = triple("Q142", "P36", "Q90");
  try {
    template_from_qa_pair(t, "what is the capital?", g);
    FAIL();
  } catch (const TemplateError& e) {
    EXPECT_EQ(e.kind(), "label_not_found");
  }
  try {
    template_from_qa_pair(t, "is france the capital of france?", g);
    FAIL();
  } catch (const TemplateError& e) {
    EXPECT_EQ(e.kind(), "ambiguous_label");
  }
}

TEST(TemplateFromQaPair, LabelInsideAnotherWordIsNotAMatch) {
  const auto out = template_from_qa_pair(triple("Q3123", "P397", "Q319"),
                                         "Which population centre does Io orbit?", mini_graph());
  EXPECT_EQ(out.text, "Which population centre does {SUBJECT} orbit?");
}

TEST(TemplateFromQaPair, RoundTripOverFiftyPairs) {
  const auto& g = mini_graph();
  const std::vector<std::string> frames{"What is the {} of {}?", "{}: what is its {}?",
                                        "tell me the {} of {}?", "Which {} does {} have?",
                                        "For {}, what {}?"};
  std::size_t checked = 0;
  for (const Triple& t : g.triples()) {
    if (checked == 50) break;
    const std::string subject = g.entity(t.subject).preferred_label;
    const std::string prop = g.property_label(t.property);
    const std::string& frame = frames[checked % frames.size()];
    // Subject first for the frames that start with it.
    const bool subject_first = frame.rfind("{}:", 0) == 0 || frame.rfind("For {}", 0) == 0;
    std::string q = frame;
    const std::string a = subject_first ? subject : prop, b = subject_first ? prop : subject;
    q.replace(q.find("{}"), 2, a);
    q.replace(q.find("{}"), 2, b);
    Template tpl_out;
    try {
      tpl_out = template_from_qa_pair(t, q, g);
    } catch (const TemplateError&) {
      continue;  // the label also occurs in the property name
    }
    EXPECT_EQ(instantiate(tpl_out, t, g).question, q);
    ++checked;
  }
  EXPECT_EQ(checked, 50u);
}

}  // namespace
}  // namespace kgconv
