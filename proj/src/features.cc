// Copyright 2026 The Checkworthy Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "checkworthy/features.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_set>

#include "checkworthy/common.h"
#include "checkworthy/normalizer.h"
#include "string_util.h"

namespace checkworthy::features {

void FeatureMatrix::validate() const {
  if (static_cast<std::size_t>(values.rows()) != row_ids.size()) {
    throw DataError("feature matrix has " + std::to_string(values.rows()) + " rows but " +
                    std::to_string(row_ids.size()) + " ids");
  }
  if (static_cast<std::size_t>(values.cols()) != column_names.size()) {
    throw DataError("feature matrix has " + std::to_string(values.cols()) + " columns but " +
                    std::to_string(column_names.size()) + " names");
  }
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    if (!values.row(i).allFinite()) throw DataError("non-finite feature in row " + row_ids[i]);
  }
}

FeatureMatrix FeatureMatrix::select(std::span<const std::string> ids) const {
  std::unordered_map<std::string_view, Eigen::Index> pos;
  for (std::size_t i = 0; i < row_ids.size(); ++i) pos.emplace(row_ids[i], static_cast<Eigen::Index>(i));
  FeatureMatrix out;
  out.column_names = column_names;
  out.values.resize(static_cast<Eigen::Index>(ids.size()), values.cols());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const auto it = pos.find(ids[r]);
    if (it == pos.end()) throw DataError("no feature row for " + ids[r]);
    out.values.row(static_cast<Eigen::Index>(r)) = values.row(it->second);
    out.row_ids.push_back(ids[r]);
  }
  return out;
}

TfidfModel::TfidfModel(std::vector<std::string> terms, std::vector<int> df, int n_docs)
    : terms_(std::move(terms)), idf_(static_cast<Eigen::Index>(terms_.size())), n_docs_(n_docs) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    index_.emplace(terms_[i], static_cast<int>(i));
    idf_[static_cast<Eigen::Index>(i)] = std::log((1.0 + n_docs) / (1.0 + df[i])) + 1.0;
  }
}

std::optional<int> TfidfModel::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double TfidfModel::idf_of(std::string_view term) const {
  if (const auto i = index_of(term)) return idf_[*i];
  return std::log(1.0 + n_docs_) + 1.0;
}

TfidfModel fit_tfidf(std::span<const Doc> docs) {
  std::map<std::string, int> df;
  bool any = false;
  for (const Doc& doc : docs) {
    any = any || !doc.empty();
    const std::unordered_set<std::string> seen(doc.begin(), doc.end());
    for (const auto& t : seen) ++df[t];
  }
  if (!any) throw DataError("cannot fit TF-IDF: every document is empty");
  std::vector<std::string> terms;
  std::vector<int> counts;
  for (auto& [t, c] : df) {
    terms.push_back(t);
    counts.push_back(c);
  }
  return TfidfModel(std::move(terms), std::move(counts), static_cast<int>(docs.size()));
}

FeatureMatrix tfidf_transform(const TfidfModel& model, std::span<const Doc> docs,
                              std::vector<std::string> row_ids) {
  if (row_ids.size() != docs.size()) throw DataError("tfidf_transform: ids and documents differ in count");
  FeatureMatrix out;
  out.row_ids = std::move(row_ids);
  out.column_names.reserve(model.size());
  for (const auto& t : model.terms()) out.column_names.push_back("tfidf:" + t);
  out.values = Matrix::Zero(static_cast<Eigen::Index>(docs.size()), static_cast<Eigen::Index>(model.size()));
  for (std::size_t r = 0; r < docs.size(); ++r) {
    auto row = out.values.row(static_cast<Eigen::Index>(r));
    for (const auto& t : docs[r]) {
      if (const auto c = model.index_of(t)) row[*c] += 1.0;
    }
    row.array() *= model.idf().transpose().array();
    const double norm = row.norm();
    if (norm > 0.0) row /= norm;
  }
  return out;
}

namespace {

const Vector* lookup(std::string_view token, const corpus::VectorTable& table) {
  if (const Vector* v = table.find(token)) return v;
  const std::string lower = util::ascii_lower(token);
  return lower == token ? nullptr : table.find(lower);
}

// Weighted mean accumulated over distinct tokens in sorted order, so the
// result ignores token order and a single token returns its vector exactly.
template <typename Weight>
Vector weighted_mean(std::span<const std::string> tokens, const corpus::VectorTable& table,
                     Weight weight) {
  std::map<std::string_view, int> tf;
  for (const auto& t : tokens) ++tf[t];
  Vector mean = Vector::Zero(table.dim());
  double total = 0.0;
  for (const auto& [t, count] : tf) {
    const Vector* v = lookup(t, table);
    if (v == nullptr) continue;
    const double w = weight(t, count);
    total += w;
    mean += (w / total) * (*v - mean);
  }
  return mean;
}

}  // namespace

Vector pool_mean(std::span<const std::string> tokens, const corpus::VectorTable& table) {
  return weighted_mean(tokens, table, [](std::string_view, int count) { return double(count); });
}

Vector pool_max(std::span<const std::string> tokens, const corpus::VectorTable& table) {
  Vector out = Vector::Zero(table.dim());
  bool first = true;
  for (const auto& t : tokens) {
    const Vector* v = lookup(t, table);
    if (v == nullptr) continue;
    out = first ? *v : Vector(out.cwiseMax(*v));
    first = false;
  }
  return out;
}

Vector pool_tfidf(std::span<const std::string> tokens, const corpus::VectorTable& table,
                  const TfidfModel& model) {
  return weighted_mean(tokens, table,
                       [&](std::string_view t, int count) { return count * model.idf_of(t); });
}

FeatureMatrix pool_matrix(std::span<const Doc> docs, std::vector<std::string> row_ids,
                          const corpus::VectorTable& table, Pooling pooling, const TfidfModel* model) {
  if (row_ids.size() != docs.size()) throw DataError("pool_matrix: ids and documents differ in count");
  if (pooling == Pooling::kTfidf && model == nullptr) throw UsageError("TF-IDF pooling needs a TF-IDF model");
  const char* prefix = pooling == Pooling::kMean ? "mean:" : pooling == Pooling::kMax ? "max:" : "tfidf_pool:";
  FeatureMatrix out;
  out.row_ids = std::move(row_ids);
  for (int j = 0; j < table.dim(); ++j) out.column_names.push_back(prefix + std::to_string(j));
  out.values.resize(static_cast<Eigen::Index>(docs.size()), table.dim());
  for (std::size_t r = 0; r < docs.size(); ++r) {
    Vector v;
    switch (pooling) {
      case Pooling::kMean:
        v = pool_mean(docs[r], table);
        break;
      case Pooling::kMax:
        v = pool_max(docs[r], table);
        break;
      case Pooling::kTfidf:
        v = pool_tfidf(docs[r], table, *model);
        break;
    }
    out.values.row(static_cast<Eigen::Index>(r)) = v.transpose();
  }
  return out;
}

const Vector& sentence_vector(std::string_view tweet_id, const corpus::PrecomputedVectors& store) {
  const Vector* v = store.find(tweet_id);
  if (v == nullptr) throw DataError("no vector for " + std::string(tweet_id));
  return *v;
}

FeatureMatrix sentence_matrix(std::span<const std::string> ids, const corpus::PrecomputedVectors& store) {
  FeatureMatrix out;
  out.row_ids.assign(ids.begin(), ids.end());
  for (int j = 0; j < store.dim(); ++j) out.column_names.push_back("sent:" + std::to_string(j));
  out.values.resize(static_cast<Eigen::Index>(ids.size()), store.dim());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    out.values.row(static_cast<Eigen::Index>(r)) = sentence_vector(ids[r], store).transpose();
  }
  return out;
}

const std::array<std::string_view, kMetadataColumns>& metadata_columns() {
  static const std::array<std::string_view, kMetadataColumns> kNames = {
      "verified",  "has_url",   "fact_very_high", "fact_high",  "fact_mostly_factual", "fact_mixed",
      "fact_low", "fact_fake_news", "fact_conspiracy", "ln_retweets", "ln_friends", "account_age_years"};
  return kNames;
}

Vector extract_metadata(const corpus::Tweet& tweet, const corpus::FactualityTable& fact,
                        corpus::Timestamp collection_date) {
  Vector out = Vector::Zero(kMetadataColumns);
  out[0] = tweet.verified ? 1.0 : 0.0;
  const bool url_in_text = normalizer::replace_urls(tweet.text) != tweet.text;
  out[1] = (!tweet.urls.empty() || url_in_text) ? 1.0 : 0.0;
  for (const auto& url : tweet.urls) {
    if (const auto level = fact.lookup_url(url)) out[2 + static_cast<int>(*level)] = 1.0;
  }
  out[9] = std::log1p(static_cast<double>(tweet.retweet_count));
  out[10] = std::log1p(static_cast<double>(tweet.friends_count));
  if (tweet.created_at) {
    if (*tweet.created_at > collection_date) {
      throw DataError("tweet " + tweet.tweet_id + " created after the collection date");
    }
    const double seconds = static_cast<double>((collection_date - *tweet.created_at).count());
    out[11] = seconds / (365.25 * 86400.0);
  }
  return out;
}

FeatureMatrix metadata_matrix(const corpus::Dataset& dataset, const corpus::FactualityTable& fact) {
  FeatureMatrix out;
  out.row_ids = dataset.ids();
  for (const auto name : metadata_columns()) out.column_names.emplace_back(name);
  out.values.resize(static_cast<Eigen::Index>(dataset.size()), kMetadataColumns);
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    out.values.row(static_cast<Eigen::Index>(r)) =
        extract_metadata(dataset.tweets()[r], fact, dataset.collection_date()).transpose();
  }
  return out;
}

FeatureMatrix concat_features(std::span<const FeatureMatrix> parts) {
  if (parts.empty()) throw UsageError("concat_features needs at least one part");
  FeatureMatrix out;
  out.row_ids = parts[0].row_ids;
  Eigen::Index cols = 0;
  for (const auto& p : parts) {
    if (p.row_ids != out.row_ids) throw DataError("cannot concatenate feature matrices with different row ids");
    cols += p.values.cols();
  }
  out.values.resize(static_cast<Eigen::Index>(out.row_ids.size()), cols);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.values.middleCols(at, p.values.cols()) = p.values;
    at += p.values.cols();
    out.column_names.insert(out.column_names.end(), p.column_names.begin(), p.column_names.end());
  }
  return out;
}

std::string format_feature_matrix(const FeatureMatrix& m) {
  m.validate();
  std::string out = "tweet_id";
  for (const auto& c : m.column_names) out += "\t" + c;
  out += '\n';
  char buf[32];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += m.row_ids[r];
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "\t%.17g", m.values(static_cast<Eigen::Index>(r), j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

FeatureMatrix parse_feature_matrix(std::string_view content) {
  const auto lines = util::split_lines(content);
  if (lines.empty()) throw DataError("feature file is empty");
  const auto header = util::split(lines[0], '\t');
  if (header[0] != "tweet_id") throw DataError("feature file header must start with tweet_id");
  FeatureMatrix out;
  for (std::size_t j = 1; j < header.size(); ++j) out.column_names.emplace_back(header[j]);
  const auto d = static_cast<Eigen::Index>(out.column_names.size());
  std::vector<double> data;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = util::split(lines[i], '\t');
    const std::string where = "feature file line " + std::to_string(i + 1) + ": ";
    if (static_cast<Eigen::Index>(fields.size()) != d + 1) {
      throw DataError(where + "expected " + std::to_string(d + 1) + " fields, got " +
                      std::to_string(fields.size()));
    }
    out.row_ids.emplace_back(fields[0]);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      const auto v = util::parse_double(fields[j]);
      if (!v || !std::isfinite(*v)) throw DataError(where + "bad value '" + std::string(fields[j]) + "'");
      data.push_back(*v);
    }
  }
  out.values = Eigen::Map<Matrix>(data.data(), static_cast<Eigen::Index>(out.row_ids.size()), d);
  std::unordered_set<std::string_view> seen;
  for (const auto& id : out.row_ids) {
    if (!seen.insert(id).second) throw DataError("duplicate tweet_id " + id + " in feature file");
  }
  return out;
}

void save_feature_matrix(const std::filesystem::path& path, const FeatureMatrix& m) {
  corpus::write_file(path, format_feature_matrix(m));
}

FeatureMatrix load_feature_matrix(const std::filesystem::path& path) {
  return parse_feature_matrix(corpus::read_file(path));
}

}  // namespace checkworthy::features
