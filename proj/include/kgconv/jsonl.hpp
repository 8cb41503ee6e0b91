#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "kgconv/kg_store.hpp"

namespace kgconv {

using Json = nlohmann::ordered_json;

// Calls fn(record, line_number) for every non-blank line. Malformed JSON
// raises ParseError with the 1-based line number.
void for_each_jsonl(std::istream& in, const std::function<void(const Json&, std::size_t)>& fn);

// Writes content to path through a sibling temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Triple records as used by the graph file and the intermediate stage files:
// {"s","p","inverse","o":{"entity"}|{"literal":{...}},"qualifiers":{...}}.
Json triple_to_json(const Triple& t);
Triple triple_from_json(const Json& j);

}  // namespace kgconv
