#include "hpcode/corpus/corpus.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hpcode/parse/printer.hpp"

namespace hpcode::corpus {

namespace fs = std::filesystem;

std::array<uint8_t, 32> sha256(std::string_view bytes) {
  std::array<uint8_t, 32> digest{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(),
             nullptr);
  return digest;
}

std::string hex(const uint8_t* data, size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * n);
  for (size_t i = 0; i < n; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0xf]);
  }
  return out;
}

uint64_t RawFile::file_id() const {
  uint64_t id = 0;
  for (int i = 0; i < 8; ++i) id = (id << 8) | content_hash[i];
  return id;
}

std::string RawFile::file_id_hex() const {
  return hex(content_hash.data(), 8);
}

const std::vector<std::string>& default_extensions() {
  static const std::vector<std::string> exts = {".c",   ".h",   ".cc",
                                                ".cpp", ".cxx", ".hpp"};
  return exts;
}

std::optional<parse::Language> language_for_extension(const std::string& ext) {
  if (ext == ".c" || ext == ".h") return parse::Language::C;
  if (ext == ".cc" || ext == ".cpp" || ext == ".cxx" || ext == ".hpp")
    return parse::Language::Cpp;
  return std::nullopt;
}

std::vector<RawFile> ingest(const std::vector<fs::path>& roots,
                            const std::vector<std::string>& extensions) {
  std::vector<fs::path> paths;
  for (const auto& root : roots) {
    std::error_code ec;
    if (fs::is_regular_file(root, ec)) {
      paths.push_back(root);
      continue;
    }
    fs::recursive_directory_iterator it(root, ec), end;
    if (ec) {
      std::cerr << "corpus: cannot open " << root << ": " << ec.message()
                << "\n";
      continue;
    }
    for (; it != end; it.increment(ec)) {
      if (ec) break;
      if (it->is_regular_file(ec)) paths.push_back(it->path());
    }
  }
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());

  std::vector<RawFile> files;
  for (const auto& path : paths) {
    std::string ext = path.extension().string();
    if (std::find(extensions.begin(), extensions.end(), ext) ==
        extensions.end())
      continue;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      std::cerr << "corpus: cannot read " << path << ", skipping\n";
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    RawFile file;
    file.path = path;
    file.bytes = std::move(buf).str();
    file.language = language_for_extension(ext);
    file.content_hash = sha256(file.bytes);
    files.push_back(std::move(file));
  }
  return files;
}

std::vector<RawFile> dedup(std::vector<RawFile> files, uint64_t* dropped) {
  std::set<std::array<uint8_t, 32>> seen;
  std::vector<RawFile> out;
  out.reserve(files.size());
  uint64_t drop_count = 0;
  for (auto& file : files) {
    if (seen.insert(file.content_hash).second)
      out.push_back(std::move(file));
    else
      ++drop_count;
  }
  if (dropped) *dropped = drop_count;
  return out;
}

bool filter_size(const RawFile& file, int min_tokens, size_t max_bytes) {
  if (file.bytes.size() >= max_bytes) return false;
  if (!file.language) return false;
  try {
    auto tree = parse::parse_source(file.bytes, *file.language);
    auto tokens = parse::code_tokens(tree);
    return (int)tokens.size() > min_tokens;
  } catch (const parse::DecodeError&) {
    return false;
  }
}

namespace {

struct FileResult {
  bool skipped = false;       // undecodable
  bool filtered_out = false;  // failed the size filter
  std::string lang_name;
  size_t size_bytes = 0;
  std::vector<std::string> records;  // JSONL lines, file order
};

FileResult process_file(const RawFile& file, const BuildConfig& config) {
  FileResult result;
  result.lang_name = std::string(parse::language_name(*file.language));
  result.size_bytes = file.bytes.size();

  std::optional<parse::SyntaxTree> parsed;
  try {
    parsed = parse::parse_source(file.bytes, *file.language);
  } catch (const parse::DecodeError& e) {
    std::cerr << "corpus: skipping " << file.path << ": " << e.what() << "\n";
    result.skipped = true;
    return result;
  }
  const parse::SyntaxTree& tree = *parsed;

  if (!config.per_function_filter) {
    auto tokens = parse::code_tokens(tree);
    if (!((int)tokens.size() > config.min_tokens &&
          file.bytes.size() < config.max_bytes)) {
      result.filtered_out = true;
      return result;
    }
  }

  for (const auto& unit : parse::extract_functions(tree, file.file_id())) {
    nlohmann::ordered_json record;
    record["v"] = 1;
    record["file_id"] = file.file_id_hex();
    record["lang"] = result.lang_name;
    record["name"] = unit.name;
    std::vector<std::string> tokens;
    std::string code;
    try {
      if (config.anonymize) {
        uint64_t seed = tokompiler::derive_seed(config.seed, unit.file_id,
                                                unit.byte_span);
        auto anon = tokompiler::anonymize(unit, seed, config.tokompiler);
        code = anon.code;
        tokens = tokompiler::lexicalize(anon).tokens;
      } else {
        code = tokompiler::normalize(unit);
        auto unit_tree = parse::parse_source(code, unit.language);
        tokens = parse::code_tokens(unit_tree);
      }
    } catch (const std::exception& e) {
      std::cerr << "corpus: skipping " << file.path << ":" << unit.name << ": "
                << e.what() << "\n";
      continue;
    }
    if (config.per_function_filter && (int)tokens.size() <= config.min_tokens)
      continue;
    record["code"] = code;
    if (config.emit_tokens) record["tokens"] = tokens;
    result.records.push_back(record.dump());
  }
  return result;
}

}  // namespace

CorpusStats build_corpus(const BuildConfig& config) {
  CorpusStats stats;
  std::vector<RawFile> files;
  for (const auto& root : config.roots) {
    auto batch = ingest({root}, config.extensions);
    for (auto& file : batch) files.push_back(std::move(file));
    // Each input root counts as one "repo" for the stats table.
  }
  stats.files_ingested = files.size();
  files = dedup(std::move(files), &stats.duplicates_dropped);

  std::ofstream out(config.out);
  if (!out)
    throw std::runtime_error("cannot write corpus output " +
                             config.out.string());

  // Map-parallel over files, merged back in file order so the output does
  // not depend on completion timing.
  std::vector<std::optional<FileResult>> results(files.size());
  int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < files.size(); ++i)
      if (files[i].language) results[i] = process_file(files[i], config);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= files.size()) return;
        if (files[i].language) results[i] = process_file(files[i], config);
      }
    };
    std::vector<std::future<void>> pool;
    for (int j = 0; j < jobs; ++j)
      pool.push_back(std::async(std::launch::async, worker));
    for (auto& task : pool) task.get();
  }

  for (const auto& result : results) {
    if (!result) continue;
    if (result->skipped) {
      ++stats.files_skipped;
      continue;
    }
    if (result->filtered_out) {
      ++stats.files_filtered_out;
      continue;
    }
    auto& lang_stats = stats.per_language[result->lang_name];
    lang_stats.file_count += 1;
    lang_stats.size_bytes += result->size_bytes;
    for (const auto& line : result->records) {
      out << line << "\n";
      lang_stats.function_count += 1;
      ++stats.functions_emitted;
    }
  }

  for (auto& [lang, lang_stats] : stats.per_language)
    lang_stats.repos = config.roots.size();
  return stats;
}

CompletionPair truncate_prefix(const std::vector<std::string>& tokens,
                               int cut) {
  if (cut <= 0) throw std::invalid_argument("cut must be positive");
  if ((int)tokens.size() <= cut)
    throw TooShort("token stream has " + std::to_string(tokens.size()) +
                   " tokens, need more than " + std::to_string(cut));
  CompletionPair pair;
  pair.cut = cut;
  pair.prefix_tokens.assign(tokens.begin(), tokens.begin() + cut);
  pair.suffix_tokens.assign(tokens.begin() + cut, tokens.end());
  return pair;
}

}  // namespace hpcode::corpus
