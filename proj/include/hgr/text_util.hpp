#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hgr {

/// Lowercases ASCII, maps every non-alphanumeric byte to a space, collapses
/// runs of spaces and trims.
std::string fold_text(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

/// Whitespace-split token count; the metering unit of the mock backend.
std::size_t count_tokens(std::string_view s);

/// Folded tokens with stopwords and tokens shorter than three characters removed.
std::vector<std::string> content_tokens(std::string_view s);

/// Extractive-QA answer normalization: lowercase, drop punctuation, drop the
/// articles a/an/the, split on whitespace.
std::vector<std::string> answer_tokens(std::string_view s);

/// Token-level F1 over multisets. Both empty gives 1, exactly one empty gives 0.
double multiset_f1(const std::vector<std::string>& prediction, const std::vector<std::string>& gold);

std::string trim(std::string_view s);

/// Case-insensitive containment on folded text.
bool folded_contains(std::string_view haystack, std::string_view needle);

}  // namespace hgr
