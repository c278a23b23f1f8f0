#include "hgr/text_util.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace hgr {

namespace {

const std::set<std::string, std::less<>>& stopwords() {
  static const std::set<std::string, std::less<>> words = {
      "the", "and", "for", "are", "was", "were", "what", "which", "who", "whom", "whose", "when",
      "where", "why", "how", "does", "did", "has", "have", "had", "with", "from", "into", "that",
      "this", "these", "those", "its", "their", "there", "they", "them", "been", "being", "than",
      "then", "not", "but", "can", "could", "should", "would", "will", "shall", "may", "might",
      "must", "about", "over", "under", "such", "any", "all", "each", "other", "some", "our",
      "your", "his", "her", "she", "him", "you", "also", "per", "via"};
  return words;
}

}  // namespace

std::string fold_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += static_cast<char>(c < 0x80 ? std::tolower(c) : c);
    } else {
      pending_space = true;
    }
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t count_tokens(std::string_view s) { return split_whitespace(s).size(); }

std::vector<std::string> content_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (auto& t : split_whitespace(fold_text(s)))
    if (t.size() >= 3 && !stopwords().contains(t)) out.push_back(std::move(t));
  return out;
}

std::vector<std::string> answer_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (auto& t : split_whitespace(fold_text(s)))
    if (t != "a" && t != "an" && t != "the") out.push_back(std::move(t));
  return out;
}

double multiset_f1(const std::vector<std::string>& prediction, const std::vector<std::string>& gold) {
  if (prediction.empty() && gold.empty()) return 1.0;
  if (prediction.empty() || gold.empty()) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& t : gold) ++counts[t];
  std::size_t common = 0;
  for (const auto& t : prediction) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  double p = static_cast<double>(common) / static_cast<double>(prediction.size());
  double r = static_cast<double>(common) / static_cast<double>(gold.size());
  return 2.0 * p * r / (p + r);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool folded_contains(std::string_view haystack, std::string_view needle) {
  std::string n = fold_text(needle);
  if (n.empty()) return true;
  std::string h = " " + fold_text(haystack) + " ";
  return h.find(n) != std::string::npos;
}

}  // namespace hgr
