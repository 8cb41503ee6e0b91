#include "kgconv/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "kgconv/error.hpp"
#include "kgconv/sic_rewriter.hpp"

namespace kgconv {

TurnTriple describe(const Triple& triple, const KnowledgeGraph& graph) {
  TurnTriple out;
  out.s = {triple.subject.str(), graph.label_of(triple.subject)};
  out.p = {triple.property.id, graph.property_label(PropertyId{triple.property.id, false}),
           triple.property.inverse};
  if (const auto* e = as_entity(triple.object)) {
    out.o.qid = e->str();
  } else {
    out.o.literal = as_literal(triple.object)->value;
  }
  out.o.label = graph.label_of(triple.object);
  return out;
}

Triple resolve(const TurnTriple& triple, const KnowledgeGraph& graph) {
  const EntityId subject(triple.s.qid);
  graph.entity(subject);
  for (const Triple* t : graph.outgoing(subject, PropertyId{triple.p.pid, triple.p.inverse})) {
    if (triple.o.qid) {
      if (const auto* e = as_entity(t->object); e && e->str() == *triple.o.qid) return *t;
    } else if (const auto* l = as_literal(t->object); l && triple.o.literal &&
                                                       l->value == *triple.o.literal) {
      return *t;
    }
  }
  throw Error("unknown_triple", "no triple (" + triple.s.qid + ", " +
                                    (triple.p.inverse ? "-" : "") + triple.p.pid + ", " +
                                    triple.o.qid.value_or(triple.o.literal.value_or("")) +
                                    ") in the graph");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

std::optional<std::string> read_optional_string(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

Json mention_to_json(const std::optional<Mention>& m) {
  return m ? Json::array({m->pos, m->len}) : Json(nullptr);
}

std::optional<Mention> mention_from_json(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return Mention{it->at(0).get<std::size_t>(), it->at(1).get<std::size_t>()};
}

Json turn_triple_to_json(const TurnTriple& t) {
  Json o = Json::object();
  if (t.o.qid) {
    o["qid"] = *t.o.qid;
  } else {
    o["literal"] = t.o.literal.value_or("");
  }
  o["label"] = t.o.label;
  return Json{{"s", {{"qid", t.s.qid}, {"label", t.s.label}}},
              {"p", {{"pid", t.p.pid}, {"label", t.p.label}, {"inverse", t.p.inverse}}},
              {"o", o}};
}

TurnTriple turn_triple_from_json(const Json& j) {
  TurnTriple t;
  const Json& s = j.at("s");
  t.s = {s.at("qid").get<std::string>(), s.at("label").get<std::string>()};
  const Json& p = j.at("p");
  t.p = {p.at("pid").get<std::string>(), p.at("label").get<std::string>(),
         p.at("inverse").get<bool>()};
  const Json& o = j.at("o");
  t.o.qid = read_optional_string(o, "qid");
  t.o.literal = read_optional_string(o, "literal");
  if (t.o.qid.has_value() == t.o.literal.has_value())
    throw Error("parse_error", "object needs exactly one of qid and literal");
  t.o.label = o.at("label").get<std::string>();
  return t;
}

}  // namespace

Json to_json(const Conversation& c, bool with_trace) {
  Json turns = Json::array();
  for (const auto& turn : c.turns) {
    Json paraphrases = Json::array();
    for (const auto& v : turn.paraphrases) {
      Json pj{{"ooc", v.ooc}, {"ic", optional_string(v.ic)}, {"sic", optional_string(v.sic)}};
      if (with_trace) {
        pj["template"] = v.template_id;
        pj["mention"] = mention_to_json(v.mention);
        pj["ic_mention"] = mention_to_json(v.ic_mention);
      }
      paraphrases.push_back(std::move(pj));
    }
    turns.push_back(Json{{"triple", turn_triple_to_json(turn.triple)},
                         {"answer", turn.answer},
                         {"paraphrases", std::move(paraphrases)}});
  }
  return Json{{"id", c.id},
              {"root", {{"qid", c.root.qid}, {"label", c.root.label}}},
              {"theme", c.theme},
              {"seed", c.seed},
              {"turns", std::move(turns)}};
}

Conversation conversation_from_json(const Json& j) {
  try {
    Conversation c;
    c.id = j.at("id").get<std::string>();
    c.root = {j.at("root").at("qid").get<std::string>(), j.at("root").at("label").get<std::string>()};
    c.theme = j.at("theme").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& tj : j.at("turns")) {
      Turn turn;
      turn.triple = turn_triple_from_json(tj.at("triple"));
      turn.answer = tj.at("answer").get<std::string>();
      for (const auto& pj : tj.at("paraphrases")) {
        QuestionVariantSet v;
        v.ooc = pj.at("ooc").get<std::string>();
        v.ic = read_optional_string(pj, "ic");
        v.sic = read_optional_string(pj, "sic");
        v.template_id = pj.value("template", "");
        v.mention = mention_from_json(pj, "mention");
        v.ic_mention = mention_from_json(pj, "ic_mention");
        turn.paraphrases.push_back(std::move(v));
      }
      c.turns.push_back(std::move(turn));
    }
    return c;
  } catch (const Json::exception& e) {
    throw Error("parse_error", e.what());
  }
}

std::vector<Conversation> read_dataset(std::istream& in) {
  std::vector<Conversation> out;
  for_each_jsonl(in, [&](const Json& j, std::size_t) { out.push_back(conversation_from_json(j)); });
  return out;
}

std::vector<Conversation> read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read " + path);
  return read_dataset(in);
}

std::string write_dataset(std::span<const Conversation> conversations, bool with_trace) {
  std::string out;
  for (const auto& c : conversations) {
    out += to_json(c, with_trace).dump();
    out += '\n';
  }
  return out;
}

std::vector<std::string> history_labels(const Conversation& conversation, std::size_t turn_index) {
  std::vector<std::string> out;
  auto add = [&](const std::string& l) {
    if (!l.empty() && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  };
  for (std::size_t i = 0; i < turn_index && i < conversation.turns.size(); ++i) {
    const auto& t = conversation.turns[i].triple;
    add(t.s.label);
    if (t.o.qid) add(t.o.label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

using FactKey = std::tuple<std::string, std::string, bool, std::string>;

FactKey key_of(const TurnTriple& t) {
  return {t.s.qid, t.p.pid, t.p.inverse, t.o.qid ? "Q:" + *t.o.qid : "L:" + t.o.literal.value_or("")};
}

}  // namespace

std::vector<std::string> validate_conversation(const Conversation& c, const WalkConfig& walk) {
  std::vector<std::string> out;
  auto fail = [&](std::size_t turn, const std::string& what) {
    out.push_back(c.id + " turn " + std::to_string(turn) + ": " + what);
  };
  if (c.id.empty()) out.push_back("conversation without id");
  if (c.theme.empty()) out.push_back(c.id + ": empty theme");
  if (c.turns.size() < walk.min_len || c.turns.size() > walk.max_len)
    out.push_back(c.id + ": " + std::to_string(c.turns.size()) + " turns outside [" +
                  std::to_string(walk.min_len) + ", " + std::to_string(walk.max_len) + "]");
  if (!c.turns.empty() && c.turns.front().triple.s.qid != c.root.qid)
    out.push_back(c.id + ": first turn is not about the root");

  std::set<FactKey> seen;
  std::set<RewriteCategory> prev_categories;
  for (std::size_t i = 0; i < c.turns.size(); ++i) {
    const Turn& turn = c.turns[i];
    const TurnTriple& t = turn.triple;
    if (t.o.qid.has_value() == t.o.literal.has_value()) fail(i, "object needs one of qid/literal");
    if (!seen.insert(key_of(t)).second) fail(i, "repeated triple");
    if (i > 0) {
      const TurnTriple& prev = c.turns[i - 1].triple;
      const bool continues = t.s.qid == c.root.qid || t.s.qid == prev.s.qid ||
                             (prev.o.qid && t.s.qid == *prev.o.qid);
      if (!continues) fail(i, "subject " + t.s.qid + " breaks continuity");
    }
    if (turn.answer != t.o.label) fail(i, "answer differs from the object label");
    if (turn.paraphrases.empty()) fail(i, "no paraphrases");
    if (turn.paraphrases.size() > kMaxParaphrases) fail(i, "more than 10 paraphrases");

    const auto labels = history_labels(c, i);
    std::set<std::string> strings;
    std::set<RewriteCategory> categories;
    for (std::size_t k = 0; k < turn.paraphrases.size(); ++k) {
      const auto& v = turn.paraphrases[k];
      const std::string where = "paraphrase " + std::to_string(k) + ": ";
      if (v.ooc.empty()) fail(i, where + "empty OOC question");
      if (v.ic && *v.ic == v.ooc) fail(i, where + "IC repeats OOC");
      if (v.sic && *v.sic == v.ic.value_or(v.ooc)) fail(i, where + "SIC repeats its input");
      for (const auto* s : {&v.ooc, v.ic ? &*v.ic : nullptr, v.sic ? &*v.sic : nullptr}) {
        if (s && !strings.insert(*s).second) fail(i, where + "duplicate question '" + *s + "'");
      }
      if (v.mention && v.mention->pos + v.mention->len > v.ooc.size())
        fail(i, where + "mention outside the OOC question");
      if (v.ic_mention && (!v.ic || v.ic_mention->pos + v.ic_mention->len > v.ic->size()))
        fail(i, where + "IC mention outside the IC question");
      if (v.sic) {
        const auto cat = classify_candidate(*v.sic, v.ic.value_or(v.ooc), labels);
        if (cat == RewriteCategory::kNone) fail(i, where + "SIC fits no rewrite category");
        categories.insert(cat);
      }
    }
    for (auto cat : categories) {
      if (prev_categories.count(cat))
        fail(i, std::string("SIC category ") + to_string(cat) + " repeats the previous turn's");
    }
    prev_categories = std::move(categories);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Splits

void SplitRatios::validate() const {
  if (train < 0 || dev < 0 || test < 0 || std::abs(train + dev + test - 1.0) > 1e-9)
    throw std::invalid_argument("split ratios must be non-negative and sum to 1");
}

Json to_json(const DatasetSplits& s) {
  return Json{{"train", s.train},
              {"dev", s.dev},
              {"test", s.test},
              {"unseen_themes", s.unseen_themes},
              {"unseen_property", s.unseen_property}};
}

DatasetSplits splits_from_json(const Json& j) {
  try {
    DatasetSplits s;
    s.train = j.at("train").get<std::vector<std::string>>();
    s.dev = j.at("dev").get<std::vector<std::string>>();
    s.test = j.at("test").get<std::vector<std::string>>();
    s.unseen_themes = j.value("unseen_themes", std::set<std::string>{});
    s.unseen_property = j.value("unseen_property", std::set<std::string>{});
    return s;
  } catch (const Json::exception& e) {
    throw Error("parse_error", std::string("splits: ") + e.what());
  }
}

DatasetSplits split_dataset(std::span<const Conversation> conversations,
                            const std::set<std::string>& unseen_themes,
                            const std::set<std::string>& unseen_properties,
                            const SplitRatios& ratios, std::uint64_t seed) {
  ratios.validate();
  DatasetSplits out;
  out.unseen_themes = unseen_themes;

  enum Split { kTrain, kDev, kTest, kUndecided };
  std::vector<Split> where(conversations.size(), kUndecided);
  std::set<std::string> roots;
  for (std::size_t i = 0; i < conversations.size(); ++i) {
    const auto& c = conversations[i];
    const bool unseen_prop = std::any_of(c.turns.begin(), c.turns.end(), [&](const Turn& t) {
      return unseen_properties.count(t.triple.p.pid) != 0;
    });
    if (unseen_prop) out.unseen_property.insert(c.id);
    if (unseen_prop || unseen_themes.count(c.theme)) {
      where[i] = kTest;
    } else {
      roots.insert(c.root.qid);
    }
  }

  std::vector<std::string> order(roots.begin(), roots.end());
  Rng rng = rng_for(seed, "split");
  std::shuffle(order.begin(), order.end(), rng);
  const auto n = order.size();
  const auto n_train = std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(ratios.train * n)));
  const auto n_dev =
      std::min<std::size_t>(n - n_train, static_cast<std::size_t>(std::llround(ratios.dev * n)));
  std::map<std::string, Split> root_split;
  for (std::size_t k = 0; k < n; ++k)
    root_split[order[k]] = k < n_train ? kTrain : k < n_train + n_dev ? kDev : kTest;

  for (std::size_t i = 0; i < conversations.size(); ++i) {
    const auto& c = conversations[i];
    Split s = where[i] == kUndecided ? root_split.at(c.root.qid) : where[i];
    (s == kTrain ? out.train : s == kDev ? out.dev : out.test).push_back(c.id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

namespace {

StatsRow summarize(const std::vector<const Conversation*>& group,
                   const std::map<std::string, std::size_t>& split_of) {
  StatsRow row;
  std::set<std::string> entities, properties;
  std::set<std::tuple<std::string, std::string, std::string>> triples;
  std::size_t paraphrases = 0, references = 0;
  for (const Conversation* c : group) {
    ++row.conversations;
    const auto split = split_of.find(c->id);
    for (const auto& turn : c->turns) {
      const auto& t = turn.triple;
      entities.insert(t.s.qid);
      if (t.o.qid) entities.insert(*t.o.qid);
      properties.insert(t.p.pid);
      const std::string object = t.o.qid ? *t.o.qid : "\x1f" + t.o.literal.value_or("");
      if (t.p.inverse && t.o.qid) {
        triples.emplace(*t.o.qid, t.p.pid, t.s.qid);
      } else {
        triples.emplace(t.s.qid, t.p.pid, object);
      }
      ++row.total_turns;
      if (split != split_of.end()) ++row.turns[split->second];
      paraphrases += turn.paraphrases.size();
      std::set<std::string> distinct;
      for (const auto& v : turn.paraphrases) {
        distinct.insert(v.ooc);
        if (v.ic) distinct.insert(*v.ic);
        if (v.sic) distinct.insert(*v.sic);
      }
      references += distinct.size();
    }
  }
  row.entities = entities.size();
  row.properties = properties.size();
  row.triples = triples.size();
  if (row.total_turns > 0) {
    row.templates_per_turn = static_cast<double>(paraphrases) / static_cast<double>(row.total_turns);
    row.references_per_turn = static_cast<double>(references) / static_cast<double>(row.total_turns);
  }
  return row;
}

Json row_to_json(std::string_view name, const StatsRow& r) {
  return Json{{"name", name},
              {"entities", r.entities},
              {"properties", r.properties},
              {"triples", r.triples},
              {"conversations", r.conversations},
              {"turns",
               {{"train", r.turns[0]}, {"dev", r.turns[1]}, {"test", r.turns[2]}, {"total", r.total_turns}}},
              {"templates_per_turn", r.templates_per_turn},
              {"references_per_turn", r.references_per_turn}};
}

}  // namespace

Json StatsReport::to_json() const {
  Json rows = Json::array();
  for (const auto& [theme, row] : themes) rows.push_back(row_to_json(theme, row));
  if (unseen_property) rows.push_back(row_to_json(kUnseenPropertyRow, *unseen_property));
  rows.push_back(row_to_json(kTotalRow, total));
  return Json{{"rows", rows}};
}

StatsReport stats(std::span<const Conversation> conversations, const DatasetSplits* splits) {
  std::map<std::string, std::size_t> split_of;
  if (splits) {
    for (const auto& id : splits->train) split_of[id] = 0;
    for (const auto& id : splits->dev) split_of[id] = 1;
    for (const auto& id : splits->test) split_of[id] = 2;
  }
  std::map<std::string, std::vector<const Conversation*>> by_theme;
  std::vector<const Conversation*> marked, all;
  for (const auto& c : conversations) {
    all.push_back(&c);
    if (splits && splits->unseen_property.count(c.id)) {
      marked.push_back(&c);
    } else {
      by_theme[c.theme].push_back(&c);
    }
  }
  StatsReport report;
  for (const auto& [theme, group] : by_theme) report.themes[theme] = summarize(group, split_of);
  if (!marked.empty()) report.unseen_property = summarize(marked, split_of);
  report.total = summarize(all, split_of);
  return report;
}

}  // namespace kgconv
