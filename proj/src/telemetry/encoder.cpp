#include "netforge/telemetry/encoder.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <stdexcept>

namespace netforge::telemetry {

static_assert(std::endian::native == std::endian::little,
              "serialized encoder containers are little-endian");

void char_wb_ngrams(std::string_view text, int nmin, int nmax,
                    std::vector<std::string>& out) {
  std::string word;
  auto flush_word = [&] {
    if (word.empty()) return;
    std::string padded = " " + word + " ";
    const int len = static_cast<int>(padded.size());
    for (int n = nmin; n <= nmax; ++n) {
      out.push_back(padded.substr(0, std::min(n, len)));
      for (int off = 1; off + n <= len; ++off) out.push_back(padded.substr(off, n));
      if (len <= n) break;  // short word contributes itself exactly once
    }
    word.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush_word();
    } else {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  flush_word();
}

namespace {

// Quantize through the on-disk float32 precision so in-memory and
// save/load models encode bit-identically.
Real q32(Real v) { return static_cast<Real>(static_cast<float>(v)); }

struct SparseRow {
  std::vector<std::pair<int, Real>> entries;  // sorted by column
};

}  // namespace

EncoderModel fit_encoder(const std::vector<LogRecord>& corpus,
                         std::uint64_t fit_seed, const EncoderOptions& opts) {
  const int dim = opts.dim;
  {
    std::set<std::string_view> distinct;
    for (const LogRecord& r : corpus) distinct.insert(r.xml_text);
    if (static_cast<int>(distinct.size()) < dim) {
      throw std::invalid_argument(
          "corpus has only " + std::to_string(distinct.size()) +
          " distinct documents; rank-" + std::to_string(dim) +
          " truncated SVD needs at least " + std::to_string(dim) +
          " -- generate a larger seed corpus");
    }
  }

  // Per-document gram counts and document frequencies.
  const int n_docs = static_cast<int>(corpus.size());
  std::vector<std::unordered_map<std::string, int>> doc_counts(n_docs);
  std::unordered_map<std::string, int> df;
  std::vector<std::string> grams;
  for (int d = 0; d < n_docs; ++d) {
    grams.clear();
    char_wb_ngrams(corpus[d].xml_text, opts.ngram_min, opts.ngram_max, grams);
    auto& counts = doc_counts[d];
    for (std::string& g : grams) ++counts[std::move(g)];
    for (const auto& [g, c] : counts) ++df[g];
  }

  // Vocabulary: the top vocab_cap grams by document frequency (ties by gram),
  // then columns in lexicographic order.
  std::vector<std::pair<int, const std::string*>> ranked;
  ranked.reserve(df.size());
  for (const auto& [g, c] : df) ranked.emplace_back(c, &g);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  });
  if (static_cast<int>(ranked.size()) > opts.vocab_cap) ranked.resize(opts.vocab_cap);

  EncoderModel model;
  model.ngram_min = opts.ngram_min;
  model.ngram_max = opts.ngram_max;
  model.dim = dim;
  model.fit_seed = fit_seed;
  model.vocabulary.reserve(ranked.size());
  for (const auto& [c, g] : ranked) model.vocabulary.push_back(*g);
  std::sort(model.vocabulary.begin(), model.vocabulary.end());
  model.rebuild_index();
  const int vocab = static_cast<int>(model.vocabulary.size());
  if (vocab < dim) {
    throw std::invalid_argument("vocabulary too small for rank-" +
                                std::to_string(dim) + " projection: " +
                                std::to_string(vocab));
  }

  // Smoothed idf, then L2-normalized tf-idf rows.
  model.idf.resize(vocab);
  for (int g = 0; g < vocab; ++g) {
    const int d = df.at(model.vocabulary[g]);
    model.idf[g] = q32(std::log((1.0 + n_docs) / (1.0 + d)) + 1.0);
  }

  std::vector<SparseRow> rows(n_docs);
  for (int d = 0; d < n_docs; ++d) {
    auto& row = rows[d].entries;
    for (const auto& [g, c] : doc_counts[d]) {
      auto it = model.vocab_index.find(g);
      if (it == model.vocab_index.end()) continue;
      row.emplace_back(it->second, c * model.idf[it->second]);
    }
    std::sort(row.begin(), row.end());
    Real norm2 = 0;
    for (const auto& [g, v] : row) norm2 += v * v;
    if (norm2 > 0) {
      const Real inv = 1.0 / std::sqrt(norm2);
      for (auto& [g, v] : row) v *= inv;
    }
  }
  doc_counts.clear();

  // Randomized range finder for the rank-`dim` truncated SVD of the
  // (docs x vocab) tf-idf matrix; the projection is the right factor.
  const int oversample = 10;
  const int k = std::min(dim + oversample, std::min(n_docs, vocab));
  std::mt19937_64 rng(splitmix64(fit_seed));
  std::normal_distribution<Real> gauss(0.0, 1.0);
  Mat omega(vocab, k);
  for (int i = 0; i < vocab; ++i) {
    for (int j = 0; j < k; ++j) omega(i, j) = gauss(rng);
  }

  auto multiply = [&](const Mat& m) {  // X * m, m is vocab x k
    Mat y = Mat::Zero(n_docs, m.cols());
    for (int d = 0; d < n_docs; ++d) {
      for (const auto& [g, v] : rows[d].entries) y.row(d) += v * m.row(g);
    }
    return y;
  };
  auto multiply_t = [&](const Mat& m) {  // X^T * m, m is docs x k
    Mat z = Mat::Zero(vocab, m.cols());
    for (int d = 0; d < n_docs; ++d) {
      for (const auto& [g, v] : rows[d].entries) z.row(g) += v * m.row(d);
    }
    return z;
  };
  auto orthonormalize = [](const Mat& m) {
    Eigen::HouseholderQR<Mat> qr(m);
    Mat thin = Mat::Identity(m.rows(), m.cols());
    return Mat(qr.householderQ() * thin);
  };

  Mat y = orthonormalize(multiply(omega));
  for (int iter = 0; iter < 4; ++iter) {
    Mat z = orthonormalize(multiply_t(y));
    y = orthonormalize(multiply(z));
  }
  Mat b = multiply_t(y).transpose();  // k x vocab

  Eigen::BDCSVD<Mat> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Mat v = svd.matrixV().leftCols(dim);

  // Deterministic sign convention: the largest-magnitude entry of each
  // component is positive.
  for (int c = 0; c < dim; ++c) {
    int arg = 0;
    v.col(c).cwiseAbs().maxCoeff(&arg);
    if (v(arg, c) < 0) v.col(c) = -v.col(c);
  }
  model.projection = v.unaryExpr([](Real x) { return q32(x); });
  return model;
}

void EncoderModel::rebuild_index() {
  vocab_index.clear();
  vocab_index.reserve(vocabulary.size() * 2);
  for (int i = 0; i < static_cast<int>(vocabulary.size()); ++i) {
    vocab_index.emplace(vocabulary[i], i);
  }
}

namespace {

template <class T>
void put(std::vector<std::uint8_t>& out, const T& v) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
  out.insert(out.end(), p, p + sizeof(T));
}

template <class T>
T get(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw std::runtime_error("truncated encoder model");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

constexpr char kMagic[4] = {'N', 'F', 'E', 'M'};

}  // namespace

std::vector<std::uint8_t> EncoderModel::serialize() const {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put<std::uint32_t>(out, 1);  // version
  put<std::uint64_t>(out, fit_seed);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(ngram_min));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(ngram_max));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(dim));
  put<std::uint64_t>(out, vocabulary.size());
  for (const std::string& g : vocabulary) {
    put<std::uint16_t>(out, static_cast<std::uint16_t>(g.size()));
    out.insert(out.end(), g.begin(), g.end());
  }
  for (int i = 0; i < idf.size(); ++i) put<float>(out, static_cast<float>(idf[i]));
  for (int r = 0; r < projection.rows(); ++r) {
    for (int c = 0; c < projection.cols(); ++c) {
      put<float>(out, static_cast<float>(projection(r, c)));
    }
  }
  return out;
}

EncoderModel EncoderModel::deserialize(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw std::runtime_error("bad encoder model magic");
  }
  pos = 4;
  const auto version = get<std::uint32_t>(bytes, pos);
  if (version != 1) throw std::runtime_error("unsupported encoder model version");
  EncoderModel m;
  m.fit_seed = get<std::uint64_t>(bytes, pos);
  m.ngram_min = static_cast<int>(get<std::uint32_t>(bytes, pos));
  m.ngram_max = static_cast<int>(get<std::uint32_t>(bytes, pos));
  m.dim = static_cast<int>(get<std::uint32_t>(bytes, pos));
  const auto vocab = get<std::uint64_t>(bytes, pos);
  m.vocabulary.reserve(vocab);
  for (std::uint64_t i = 0; i < vocab; ++i) {
    const auto len = get<std::uint16_t>(bytes, pos);
    if (pos + len > bytes.size()) throw std::runtime_error("truncated encoder model");
    m.vocabulary.emplace_back(reinterpret_cast<const char*>(bytes.data()) + pos, len);
    pos += len;
  }
  m.rebuild_index();
  m.idf.resize(static_cast<Eigen::Index>(vocab));
  for (std::uint64_t i = 0; i < vocab; ++i) m.idf[i] = get<float>(bytes, pos);
  m.projection.resize(static_cast<Eigen::Index>(vocab), m.dim);
  for (std::uint64_t r = 0; r < vocab; ++r) {
    for (int c = 0; c < m.dim; ++c) m.projection(r, c) = get<float>(bytes, pos);
  }
  return m;
}

void EncoderModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write encoder model: " + path);
  const auto bytes = serialize();
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

EncoderModel EncoderModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read encoder model: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

const LogEncoder::WordEntry& LogEncoder::word_entry(std::string_view word) const {
  auto it = cache_.find(std::string(word));
  if (it != cache_.end()) return it->second;
  WordEntry entry;
  std::vector<std::string> grams;
  char_wb_ngrams(word, model_->ngram_min, model_->ngram_max, grams);
  std::sort(grams.begin(), grams.end());
  for (std::size_t i = 0; i < grams.size();) {
    std::size_t j = i;
    while (j < grams.size() && grams[j] == grams[i]) ++j;
    auto vit = model_->vocab_index.find(grams[i]);
    if (vit != model_->vocab_index.end()) {
      entry.grams.emplace_back(vit->second, static_cast<int>(j - i));
    }
    i = j;
  }
  return cache_.emplace(std::string(word), std::move(entry)).first->second;
}

Embedding128 LogEncoder::encode(std::string_view text, bool* all_oov) const {
  accum_.clear();
  std::size_t start = 0;
  const auto flush = [&](std::size_t begin, std::size_t end) {
    if (end <= begin) return;
    for (const auto& [col, count] : word_entry(text.substr(begin, end - begin)).grams) {
      accum_[col] += count;
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      flush(start, i);
      start = i + 1;
    }
  }
  flush(start, text.size());

  Embedding128 out = Embedding128::Zero();
  if (accum_.empty()) {
    if (all_oov != nullptr) *all_oov = true;
    return out;  // reserved zero vector; cannot be normalized
  }
  if (all_oov != nullptr) *all_oov = false;

  // Summation in column order so results do not depend on hash layout.
  sorted_.assign(accum_.begin(), accum_.end());
  std::sort(sorted_.begin(), sorted_.end());
  Real norm2 = 0;
  for (auto& [col, v] : sorted_) {
    v *= model_->idf[col];
    norm2 += v * v;
  }
  const Real inv = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 0.0;
  for (const auto& [col, v] : sorted_) {
    out += (v * inv) * model_->projection.row(col).transpose();
  }
  const Real n = out.norm();
  if (n > 0) out /= n;
  return out;
}

}  // namespace netforge::telemetry
