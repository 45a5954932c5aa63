#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpcode/parse/functions.hpp"
#include "hpcode/tokompiler/tokompiler.hpp"

namespace hpcode::corpus {

class TooShort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::array<uint8_t, 32> sha256(std::string_view bytes);
std::string hex(const uint8_t* data, size_t n);

struct RawFile {
  std::filesystem::path path;
  std::string bytes;
  std::optional<parse::Language> language;  // from the file extension
  std::array<uint8_t, 32> content_hash{};

  // Stable 64-bit id: the hash's first 8 bytes, big-endian.
  uint64_t file_id() const;
  std::string file_id_hex() const;
};

struct LangStats {
  uint64_t repos = 0;
  uint64_t size_bytes = 0;
  uint64_t file_count = 0;
  uint64_t function_count = 0;
};

struct CorpusStats {
  std::map<std::string, LangStats> per_language;
  uint64_t files_ingested = 0;
  uint64_t duplicates_dropped = 0;
  uint64_t files_filtered_out = 0;
  uint64_t files_skipped = 0;  // undecodable or unreadable
  uint64_t functions_emitted = 0;
};

const std::vector<std::string>& default_extensions();
std::optional<parse::Language> language_for_extension(const std::string& ext);

// Deterministic lexicographic traversal; files that cannot be read are
// logged to stderr and skipped.
std::vector<RawFile> ingest(
    const std::vector<std::filesystem::path>& roots,
    const std::vector<std::string>& extensions = default_extensions());

// Keeps the first occurrence of each content hash.
std::vector<RawFile> dedup(std::vector<RawFile> files,
                           uint64_t* dropped = nullptr);

// True iff the file holds more than min_tokens lexical tokens and fewer
// than max_bytes bytes (both bounds strict).
bool filter_size(const RawFile& file, int min_tokens = 100,
                 size_t max_bytes = 1048576);

struct BuildConfig {
  std::vector<std::filesystem::path> roots;
  std::filesystem::path out;
  std::vector<std::string> extensions = default_extensions();
  bool anonymize = false;
  uint64_t seed = 0;
  tokompiler::TokompilerConfig tokompiler;
  int min_tokens = 100;
  size_t max_bytes = 1048576;
  bool per_function_filter = false;  // apply min_tokens per function instead
  bool emit_tokens = true;
  int jobs = 1;
};

// ingest -> dedup -> size filter -> extract -> (anonymize) -> JSONL.
// Emitted code is always regenerated without comments.  Record schema:
// {"v":1,"file_id":hex,"lang":"c|cpp","name":str,"code":str,"tokens":[...]}.
CorpusStats build_corpus(const BuildConfig& config);

struct CompletionPair {
  std::vector<std::string> prefix_tokens;
  std::vector<std::string> suffix_tokens;
  int cut = 0;
  // origin function, when the pair came from a corpus record
  uint64_t origin_file_id = 0;
  std::string origin_name;
};

// The completion-evaluation prefix sizes.
inline constexpr std::array<int, 3> kPrefixCuts = {100, 300, 600};

// Splits a token stream after `cut` tokens; the suffix serves as the
// reference for completion scoring.  Throws TooShort when the stream has
// no tokens past the cut.
CompletionPair truncate_prefix(const std::vector<std::string>& tokens, int cut);

}  // namespace hpcode::corpus
