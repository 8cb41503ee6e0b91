#include "kgconv/jsonl.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kgconv/error.hpp"

namespace kgconv {

void for_each_jsonl(std::istream& in, const std::function<void(const Json&, std::size_t)>& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(number, e.what());
    }
    try {
      fn(record, number);
    } catch (const Json::exception& e) {
      throw ParseError(number, e.what());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      if (e.kind() == "parse_error") throw ParseError(number, e.what());
      throw;
    }
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io_error", "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("io_error", "cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json triple_to_json(const Triple& t) {
  Json j;
  j["s"] = t.subject.str();
  j["p"] = t.property.id;
  j["inverse"] = t.property.inverse;
  if (const auto* e = as_entity(t.object)) {
    j["o"] = Json{{"entity", e->str()}};
  } else {
    const auto& lit = std::get<Literal>(t.object);
    j["o"] = Json{{"literal", Json{{"kind", to_string(lit.kind)},
                                   {"value", lit.value},
                                   {"label", lit.label}}}};
  }
  Json q = Json::object();
  if (t.qualifiers.end_time) q["end_time"] = *t.qualifiers.end_time;
  j["qualifiers"] = q;
  return j;
}

Triple triple_from_json(const Json& j) {
  Triple t;
  t.subject = EntityId(j.at("s").get<std::string>());
  t.property.id = j.at("p").get<std::string>();
  t.property.inverse = j.value("inverse", false);
  const Json& o = j.at("o");
  if (o.contains("entity")) {
    t.object = EntityId(o.at("entity").get<std::string>());
  } else if (o.contains("literal")) {
    const Json& l = o.at("literal");
    Literal lit;
    lit.kind = literal_kind_from_string(l.value("kind", "string"));
    lit.value = l.at("value").is_string() ? l.at("value").get<std::string>()
                                          : l.at("value").dump();
    lit.label = l.value("label", lit.value);
    t.object = lit;
  } else {
    throw Error("parse_error", "object must be {\"entity\"} or {\"literal\"}");
  }
  if (j.contains("qualifiers") && j.at("qualifiers").is_object()) {
    const Json& q = j.at("qualifiers");
    if (q.contains("end_time") && q.at("end_time").is_string())
      t.qualifiers.end_time = q.at("end_time").get<std::string>();
  }
  return t;
}

}  // namespace kgconv
