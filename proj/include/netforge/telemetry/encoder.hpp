#pragma once

// Character n-gram TF-IDF with a rank-128 truncated-SVD projection and L2
// normalization. The analyzer pads n-grams at word boundaries; out-of-
// vocabulary grams contribute nothing, which keeps tensor sizes fixed for
// text the model never saw during fitting.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netforge/telemetry/logs.hpp"
#include "netforge/types.hpp"

namespace netforge::telemetry {

struct EncoderOptions {
  int ngram_min = 3;
  int ngram_max = 5;
  int dim = kEmbeddingDim;
  int vocab_cap = 20000;  // top n-grams by document frequency
};

struct EncoderModel {
  int ngram_min = 3;
  int ngram_max = 5;
  int dim = kEmbeddingDim;
  std::uint64_t fit_seed = 0;
  std::vector<std::string> vocabulary;  // lexicographic; position = column
  std::unordered_map<std::string, int> vocab_index;
  Vec idf;         // one weight per vocabulary entry
  Mat projection;  // vocab_size x dim

  void rebuild_index();
  std::vector<std::uint8_t> serialize() const;
  static EncoderModel deserialize(const std::vector<std::uint8_t>& bytes);
  void save(const std::string& path) const;
  static EncoderModel load(const std::string& path);
};

// Fits TF-IDF + truncated SVD on the corpus. Deterministic in
// (corpus, fit_seed); weights are quantized to the 32-bit on-disk precision
// so a fitted model and its serialized round-trip encode identically.
// Throws when the corpus has fewer than `dim` distinct documents or the
// vocabulary ends up smaller than `dim`.
EncoderModel fit_encoder(const std::vector<LogRecord>& corpus,
                         std::uint64_t fit_seed, const EncoderOptions& opts = {});

// Splits lowercased text on whitespace and emits space-padded character
// n-grams per word; a word shorter than n contributes itself once.
void char_wb_ngrams(std::string_view text, int nmin, int nmax,
                    std::vector<std::string>& out);

// Per-simulator encoding frontend. Caches per-word gram lookups; the
// underlying model stays immutable and shareable.
class LogEncoder {
 public:
  explicit LogEncoder(const EncoderModel& model) : model_(&model) {}

  // L2-normalized embedding; the zero vector (with *all_oov set) when every
  // n-gram is out of vocabulary.
  Embedding128 encode(std::string_view text, bool* all_oov = nullptr) const;
  Embedding128 encode(const LogRecord& record, bool* all_oov = nullptr) const {
    return encode(record.xml_text, all_oov);
  }

 private:
  struct WordEntry {
    std::vector<std::pair<int, int>> grams;  // (vocab column, count)
  };
  const WordEntry& word_entry(std::string_view word) const;

  const EncoderModel* model_;
  mutable std::unordered_map<std::string, WordEntry> cache_;
  mutable std::unordered_map<int, Real> accum_;
  mutable std::vector<std::pair<int, Real>> sorted_;
};

}  // namespace netforge::telemetry
