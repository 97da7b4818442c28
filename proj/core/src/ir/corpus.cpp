#include "vircis/ir/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "vircis/error.hpp"

namespace vircis::ir {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::vector<Document> load_corpus_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::io, "corpus directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& f : files) {
    docs.push_back({f.lexically_relative(dir).generic_string(), "", slurp(f)});
  }
  return docs;
}

std::vector<Document> load_corpus_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::io, "cannot open corpus manifest " + manifest.string());
  const auto base = manifest.parent_path();
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(ErrorCode::format, manifest.string() + ":" + std::to_string(lineno) +
                                         ": expected 'doc_id<TAB>title<TAB>body-path'");
    }
    std::filesystem::path body = line.substr(t2 + 1);
    if (body.is_relative()) body = base / body;
    docs.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), slurp(body)});
  }
  return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return load_corpus_directory(path);
  return load_corpus_manifest(path);
}

}  // namespace vircis::ir
