#pragma once

#include <filesystem>
#include <vector>

#include "vircis/ir/index.hpp"

namespace vircis::ir {

/// Every regular file under dir (recursively) becomes a document whose id
/// is the relative path with '/' separators. Titles are left empty.
std::vector<Document> load_corpus_directory(const std::filesystem::path& dir);

/// Lines "doc_id<TAB>title<TAB>body-path"; body paths resolve against the manifest's directory.
std::vector<Document> load_corpus_manifest(const std::filesystem::path& manifest);

/// Directory or manifest, decided by what path is.
std::vector<Document> load_corpus(const std::filesystem::path& path);

}  // namespace vircis::ir
