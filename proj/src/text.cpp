#include "kgconv/text.hpp"

#include <cctype>

namespace kgconv::text {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) || c == '\'' || c == '-';
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !is_word_char(s[i])) ++i;
    std::size_t b = i;
    while (i < s.size() && is_word_char(s[i])) ++i;
    if (i > b) out.emplace_back(s.substr(b, i - b));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  const std::string low = lower(s);
  std::size_t i = 0;
  while (i < low.size()) {
    const auto u = static_cast<unsigned char>(low[i]);
    if (std::isspace(u)) {
      ++i;
      continue;
    }
    if (u >= 0x80 || std::isalnum(u)) {
      std::size_t b = i;
      while (i < low.size()) {
        const auto v = static_cast<unsigned char>(low[i]);
        if (v >= 0x80 || std::isalnum(v)) {
          ++i;
        } else if ((low[i] == '\'' || low[i] == '-') && i + 1 < low.size() &&
                   std::isalnum(static_cast<unsigned char>(low[i + 1])) &&
                   !(low[i] == '\'' && low.compare(i, 2, "'s") == 0 &&
                     (i + 2 == low.size() || !std::isalnum(static_cast<unsigned char>(low[i + 2]))))) {
          ++i;
        } else {
          break;
        }
      }
      out.push_back(low.substr(b, i - b));
      continue;
    }
    if (low[i] == '\'' && low.compare(i, 2, "'s") == 0 &&
        (i + 2 == low.size() || !std::isalnum(static_cast<unsigned char>(low[i + 2])))) {
      out.emplace_back("'s");
      i += 2;
      continue;
    }
    out.emplace_back(1, low[i]);
    ++i;
  }
  return out;
}

bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return true;
  for (char c : token) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u)) return false;
  }
  return token != "'s";
}

std::size_t find_word(std::string_view haystack, std::string_view needle, std::size_t from) {
  if (needle.empty()) return std::string_view::npos;
  for (auto pos = haystack.find(needle, from); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    const bool left = pos == 0 || !std::isalnum(static_cast<unsigned char>(haystack[pos - 1]));
    const std::size_t end = pos + needle.size();
    const bool right = end == haystack.size() ||
                       !std::isalnum(static_cast<unsigned char>(haystack[end]));
    if (left && right) return pos;
  }
  return std::string_view::npos;
}

std::string capitalize_first(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

bool starts_upper(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

std::size_t word_before_pos(std::string_view s, std::size_t pos) {
  std::size_t e = pos;
  while (e > 0 && s[e - 1] == ' ') --e;
  std::size_t b = e;
  while (b > 0 && is_word_char(s[b - 1])) --b;
  return b == e ? std::string_view::npos : b;
}

std::string word_before(std::string_view s, std::size_t pos) {
  const std::size_t b = word_before_pos(s, pos);
  if (b == std::string_view::npos) return {};
  std::size_t e = b;
  while (e < s.size() && is_word_char(s[e])) ++e;
  return std::string(s.substr(b, e - b));
}

}  // namespace kgconv::text
