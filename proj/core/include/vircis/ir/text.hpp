#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vircis::ir {

using StopWords = std::set<std::string, std::less<>>;

/// Lowercases, splits on every non-alphanumeric byte, and drops empty
/// tokens and stop words. No stemming.
std::vector<std::string> tokenize_filter(std::string_view text, const StopWords& stopwords);

/// The English list shipped in data/stopwords.txt.
const StopWords& default_stopwords();

// One word per line; blank lines and '#' comments are skipped; words are lowercased.
StopWords parse_stopwords(std::istream& in);
StopWords load_stopwords(const std::filesystem::path& path);

}  // namespace vircis::ir
