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

#include "checkworthy/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "checkworthy/common.h"
#include "checkworthy/embedded_data.h"
#include "checkworthy/random.h"
#include "json.hpp"
#include "string_util.h"

namespace checkworthy::corpus {

using json = nlohmann::json;
using std::chrono::days;
using std::chrono::hours;
using std::chrono::minutes;
using std::chrono::seconds;

// ---------------------------------------------------------------------------
// Files and timestamps

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

namespace {

bool read_digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  const auto fail = [&]() -> Timestamp {
    throw DataError("invalid timestamp '" + std::string(text) + "' (expected ISO-8601 UTC)");
  };
  int y, mo, d;
  if (!read_digits(text, 0, 4, y) || text.size() < 10 || text[4] != '-' ||
      !read_digits(text, 5, 2, mo) || text[7] != '-' || !read_digits(text, 8, 2, d)) {
    return fail();
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return fail();
  Timestamp t{std::chrono::sys_days{ymd}};
  if (text.size() == 10) return t;

  int hh, mm, ss;
  if ((text[10] != 'T' && text[10] != ' ') || !read_digits(text, 11, 2, hh) ||
      text.size() < 19 || text[13] != ':' || !read_digits(text, 14, 2, mm) || text[16] != ':' ||
      !read_digits(text, 17, 2, ss) || hh > 23 || mm > 59 || ss > 60) {
    return fail();
  }
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) return fail();
  }
  const std::string_view zone = text.substr(pos);
  if (!(zone.empty() || zone == "Z" || zone == "+00:00" || zone == "+0000")) return fail();
  return t + hours(hh) + minutes(mm) + seconds(ss);
}

std::string format_timestamp(Timestamp t) {
  const auto day = std::chrono::floor<days>(t);
  const std::chrono::year_month_day ymd{day};
  const auto secs = (t - day).count();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), static_cast<long long>(secs / 3600),
                static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60));
  return buf;
}

// ---------------------------------------------------------------------------
// Tweets

Dataset::Dataset(std::vector<Tweet> tweets, Timestamp collection_date)
    : tweets_(std::move(tweets)), collection_date_(collection_date) {
  index_.reserve(tweets_.size());
  for (std::size_t i = 0; i < tweets_.size(); ++i) {
    const Tweet& t = tweets_[i];
    if (!index_.emplace(t.tweet_id, i).second) {
      throw DataError("duplicate tweet_id " + t.tweet_id);
    }
    if (t.created_at && *t.created_at > collection_date_) {
      throw DataError("tweet " + t.tweet_id + " created after the collection date " +
                      format_timestamp(collection_date_));
    }
  }
}

const Tweet* Dataset::find(std::string_view tweet_id) const {
  const auto it = index_.find(std::string(tweet_id));
  return it == index_.end() ? nullptr : &tweets_[it->second];
}

const Tweet& Dataset::at(std::string_view tweet_id) const {
  const Tweet* t = find(tweet_id);
  if (t == nullptr) throw DataError("unknown tweet_id " + std::string(tweet_id));
  return *t;
}

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  out.reserve(tweets_.size());
  for (const Tweet& t : tweets_) {
    if (!t.label) throw DataError("tweet " + t.tweet_id + " has no check_worthiness label");
    out.push_back(*t.label);
  }
  return out;
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(tweets_.size());
  for (const Tweet& t : tweets_) out.push_back(t.tweet_id);
  return out;
}

namespace {

std::string id_field(const json& rec, const char* key, std::size_t line) {
  const auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) {
    throw DataError("line " + std::to_string(line) + ": missing " + key);
  }
  if (it->is_string()) {
    std::string s = it->get<std::string>();
    if (s.empty()) throw DataError("line " + std::to_string(line) + ": empty " + key);
    return s;
  }
  if (it->is_number_integer()) {
    return it->is_number_unsigned() ? std::to_string(it->get<std::uint64_t>())
                                    : std::to_string(it->get<std::int64_t>());
  }
  throw DataError("line " + std::to_string(line) + ": " + key + " must be a string or integer");
}

std::int64_t count_field(const json& rec, const char* key, std::size_t line) {
  const auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return 0;
  if (!it->is_number_integer() || (it->is_number_integer() && it->get<std::int64_t>() < 0)) {
    throw DataError("line " + std::to_string(line) + ": " + key +
                    " must be a non-negative integer");
  }
  return it->get<std::int64_t>();
}

std::optional<int> label_field(const json& rec, std::size_t line) {
  const auto it = rec.find("check_worthiness");
  if (it == rec.end() || it->is_null()) return std::nullopt;
  int v = -1;
  if (it->is_boolean()) {
    v = it->get<bool>() ? 1 : 0;
  } else if (it->is_number_integer()) {
    v = static_cast<int>(it->get<std::int64_t>());
  } else if (it->is_string()) {
    const std::string s = it->get<std::string>();
    if (s == "0") v = 0;
    if (s == "1") v = 1;
  }
  if (v != 0 && v != 1) {
    throw DataError("line " + std::to_string(line) + ": check_worthiness must be 0 or 1");
  }
  return v;
}

Tweet parse_tweet(std::string_view text, std::size_t line) {
  json rec;
  try {
    rec = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError("line " + std::to_string(line) + ": malformed record (" + e.what() + ")");
  }
  if (!rec.is_object()) {
    throw DataError("line " + std::to_string(line) + ": record is not an object");
  }
  Tweet t;
  t.tweet_id = id_field(rec, "tweet_id", line);
  t.topic_id = id_field(rec, "topic_id", line);
  const auto txt = rec.find("tweet_text");
  if (txt == rec.end() || !txt->is_string()) {
    throw DataError("line " + std::to_string(line) + ": missing tweet_text");
  }
  t.text = txt->get<std::string>();
  t.label = label_field(rec, line);
  if (const auto v = rec.find("verified"); v != rec.end() && !v->is_null()) {
    if (v->is_boolean()) {
      t.verified = v->get<bool>();
    } else if (v->is_number_integer()) {
      t.verified = v->get<std::int64_t>() != 0;
    } else {
      throw DataError("line " + std::to_string(line) + ": verified must be a boolean");
    }
  }
  t.friends_count = count_field(rec, "friends_count", line);
  t.retweet_count = count_field(rec, "retweet_count", line);
  if (const auto c = rec.find("created_at"); c != rec.end() && !c->is_null()) {
    if (!c->is_string()) {
      throw DataError("line " + std::to_string(line) + ": created_at must be a string");
    }
    try {
      t.created_at = parse_timestamp(c->get<std::string>());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  if (const auto u = rec.find("urls"); u != rec.end() && !u->is_null()) {
    if (!u->is_array()) throw DataError("line " + std::to_string(line) + ": urls must be an array");
    for (const json& url : *u) {
      if (!url.is_string()) {
        throw DataError("line " + std::to_string(line) + ": urls must hold strings");
      }
      t.urls.push_back(url.get<std::string>());
    }
  }
  return t;
}

}  // namespace

Dataset parse_tweets(std::string_view content, std::optional<Timestamp> collection_date) {
  std::vector<Tweet> tweets;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t line_no = 0;
  for (std::string_view line : util::split_lines(content)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    Tweet t = parse_tweet(line, line_no);
    if (!seen.emplace(t.tweet_id, line_no).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate tweet_id " + t.tweet_id);
    }
    tweets.push_back(std::move(t));
  }
  Timestamp date{};
  if (collection_date) {
    date = *collection_date;
  } else {
    for (const Tweet& t : tweets) {
      if (t.created_at && *t.created_at > date) date = *t.created_at;
    }
  }
  return Dataset(std::move(tweets), date);
}

Dataset load_tweets(const std::filesystem::path& path, std::optional<Timestamp> collection_date) {
  try {
    return parse_tweets(read_file(path), collection_date);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Vectors

const Vector* KeyedVectors::find(std::string_view key) const {
  const auto it = entries_.find(std::string(key));
  return it == entries_.end() ? nullptr : &it->second;
}

void KeyedVectors::insert(std::string key, Vector v) {
  if (dim_ == 0) dim_ = static_cast<int>(v.size());
  if (v.size() != dim_) {
    throw DataError("vector for '" + key + "' has dimension " + std::to_string(v.size()) +
                    ", expected " + std::to_string(dim_));
  }
  entries_.insert_or_assign(std::move(key), std::move(v));
}

KeyedVectors parse_vectors(std::string_view content, std::string_view what) {
  KeyedVectors table;
  std::size_t line_no = 0;
  std::size_t duplicates = 0;
  std::vector<double> values;
  for (std::string_view line : util::split_lines(content)) {
    ++line_no;
    const auto fields = util::split_ws(line);
    if (fields.empty()) continue;
    const auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    if (fields.size() < 2) throw DataError(where() + "no vector components");
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto v = util::parse_double(fields[i]);
      if (!v || !std::isfinite(*v)) throw DataError(where() + "non-numeric component '" + std::string(fields[i]) + "'");
      values.push_back(*v);
    }
    const int d = static_cast<int>(values.size());
    if (table.dim() != 0 && d != table.dim()) {
      throw DataError(where() + "dimension mismatch: " + std::to_string(d) + " components, expected " +
                      std::to_string(table.dim()));
    }
    std::string key(fields[0]);
    if (table.find(key) != nullptr) ++duplicates;
    table.insert(std::move(key), Eigen::Map<const Vector>(values.data(), d));
  }
  if (table.size() == 0) throw DataError("no vectors in " + std::string(what));
  if (duplicates > 0) {
    warn(std::string(what) + ": " + std::to_string(duplicates) +
         " duplicate keys, last occurrence kept");
  }
  return table;
}

VectorTable load_word_vectors(const std::filesystem::path& path) {
  try {
    return parse_vectors(read_file(path), path.string());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

PrecomputedVectors load_precomputed_vectors(const std::filesystem::path& path) {
  return load_word_vectors(path);
}

// ---------------------------------------------------------------------------
// Factuality and VIP tables

const std::array<std::string_view, kFactualityLevels>& factuality_names() {
  static const std::array<std::string_view, kFactualityLevels> kNames = {
      "very_high", "high", "mostly_factual", "mixed", "low", "fake_news", "conspiracy"};
  return kNames;
}

Factuality parse_factuality(std::string_view label) {
  std::string key = util::ascii_lower(util::trim(label));
  for (char& c : key) {
    if (c == ' ' || c == '-') c = '_';
  }
  const auto& names = factuality_names();
  for (int i = 0; i < kFactualityLevels; ++i) {
    if (key == names[i]) return static_cast<Factuality>(i);
  }
  std::string legal;
  for (const auto n : names) legal += (legal.empty() ? "" : ", ") + std::string(n);
  throw DataError("unknown factuality label '" + std::string(label) + "' (expected one of " +
                  legal + ")");
}

std::string registered_domain(std::string_view url) {
  std::string_view s = util::trim(url);
  if (const auto p = s.find("://"); p != std::string_view::npos) s.remove_prefix(p + 3);
  if (const auto p = s.find_first_of("/?#"); p != std::string_view::npos) s = s.substr(0, p);
  if (const auto p = s.rfind('@'); p != std::string_view::npos) s.remove_prefix(p + 1);
  if (const auto p = s.find(':'); p != std::string_view::npos) s = s.substr(0, p);
  std::string host = util::ascii_lower(s);
  while (!host.empty() && host.back() == '.') host.pop_back();
  if (host.starts_with("www.")) host.erase(0, 4);
  return host;
}

void FactualityTable::insert(std::string domain, Factuality level) {
  entries_.insert_or_assign(registered_domain(domain), level);
}

std::optional<Factuality> FactualityTable::lookup_domain(std::string_view domain) const {
  const auto it = entries_.find(std::string(domain));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<Factuality> FactualityTable::lookup_url(std::string_view url) const {
  const std::string domain = registered_domain(url);
  std::string_view host = domain;
  while (!host.empty()) {
    if (auto hit = lookup_domain(host)) return hit;
    const auto dot = host.find('.');
    if (dot == std::string_view::npos) break;
    host.remove_prefix(dot + 1);
    if (host.find('.') == std::string_view::npos) break;  // never match a bare TLD
  }
  return std::nullopt;
}

namespace {

bool phrase_char_ok(unsigned char c) {
  return c >= 0x80 || std::isalnum(c) || c == ' ' || c == '-' || c == '\'';
}

template <typename Fn>
void for_each_csv_row(std::string_view content, Fn fn) {
  std::size_t line_no = 0;
  for (std::string_view line : util::split_lines(content)) {
    ++line_no;
    const std::string_view t = util::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto comma = t.find(',');
    if (comma == std::string_view::npos) {
      throw DataError("line " + std::to_string(line_no) + ": expected two comma-separated columns");
    }
    try {
      fn(util::trim(t.substr(0, comma)), util::trim(t.substr(comma + 1)));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

void VipTable::insert(std::string_view handle, std::string phrase) {
  std::string_view h = handle;
  if (!h.empty() && h.front() == '@') h.remove_prefix(1);
  if (h.empty()) throw DataError("empty VIP handle");
  const std::string_view p = util::trim(phrase);
  if (p.empty()) throw DataError("empty replacement phrase for @" + std::string(h));
  for (const char c : p) {
    if (!phrase_char_ok(static_cast<unsigned char>(c))) {
      throw DataError("replacement phrase for @" + std::string(h) +
                      " may only hold letters, digits, spaces, hyphens and apostrophes");
    }
  }
  entries_.insert_or_assign(util::ascii_lower(h), std::string(p));
}

const std::string* VipTable::find(std::string_view handle) const {
  const auto it = entries_.find(util::ascii_lower(handle));
  return it == entries_.end() ? nullptr : &it->second;
}

FactualityTable parse_factuality_table(std::string_view content) {
  FactualityTable table;
  for_each_csv_row(content, [&](std::string_view domain, std::string_view label) {
    if (domain.empty()) throw DataError("empty domain");
    table.insert(std::string(domain), parse_factuality(label));
  });
  return table;
}

FactualityTable load_factuality_table(const std::filesystem::path& path) {
  try {
    return parse_factuality_table(read_file(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

VipTable parse_vip_table(std::string_view content) {
  VipTable table;
  for_each_csv_row(content, [&](std::string_view handle, std::string_view phrase) {
    table.insert(handle, std::string(phrase));
  });
  return table;
}

VipTable load_vip_table(const std::filesystem::path& path) {
  try {
    return parse_vip_table(read_file(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

const VipTable& default_vip_table() {
  static const VipTable kTable = parse_vip_table(embedded::vip_default());
  return kTable;
}

// ---------------------------------------------------------------------------
// Folds

std::vector<int> FoldAssignment::folds_for(const std::vector<std::string>& ids) const {
  std::vector<int> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const auto it = fold_of.find(id);
    if (it == fold_of.end()) throw DataError("no fold assigned to " + id);
    out.push_back(it->second);
  }
  return out;
}

FoldAssignment stratified_kfold(const Dataset& dataset, int k, std::uint64_t seed) {
  if (k < 2) throw UsageError("k must be at least 2");
  std::vector<std::size_t> pos, neg;
  const auto& tweets = dataset.tweets();
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    if (!tweets[i].label) {
      throw DataError("cannot stratify: tweet " + tweets[i].tweet_id + " is unlabeled");
    }
    (*tweets[i].label == 1 ? pos : neg).push_back(i);
  }
  if (static_cast<std::size_t>(k) > pos.size() || static_cast<std::size_t>(k) > neg.size()) {
    throw DataError("k=" + std::to_string(k) + " exceeds a class count (" +
                    std::to_string(pos.size()) + " positive, " + std::to_string(neg.size()) +
                    " negative)");
  }
  Rng rng(seed);
  const auto shuffle = [&rng](std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[rng.uniform_index(i)]);
    }
  };
  shuffle(pos);
  shuffle(neg);

  FoldAssignment out;
  out.k = k;
  std::size_t slot = 0;
  for (const auto* group : {&pos, &neg}) {
    for (const std::size_t i : *group) {
      out.fold_of.emplace(tweets[i].tweet_id, static_cast<int>(slot % k));
      ++slot;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Run files

std::vector<std::string> rank_ids(const std::map<std::string, double>& scores) {
  std::vector<std::pair<std::string, double>> rows(scores.begin(), scores.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> ids;
  ids.reserve(rows.size());
  for (auto& r : rows) ids.push_back(std::move(r.first));
  return ids;
}

std::string format_run(std::string_view run_id, const std::map<std::string, double>& scores,
                       std::string_view topic_id) {
  if (scores.empty()) throw DataError("cannot write an empty run");
  std::string out;
  char buf[64];
  for (const auto& id : rank_ids(scores)) {
    const double s = scores.at(id);
    if (!std::isfinite(s)) throw NumericalError("non-finite score for " + id);
    std::snprintf(buf, sizeof(buf), "%.6f", s);
    out.append(topic_id).append("\t").append(id).append("\t").append(buf).append("\t");
    out.append(run_id).append("\n");
  }
  return out;
}

void write_run_file(const std::filesystem::path& path, std::string_view run_id,
                    const std::map<std::string, double>& scores, std::string_view topic_id) {
  write_file(path, format_run(run_id, scores, topic_id));
}

std::vector<RunRow> parse_run(std::string_view content) {
  std::vector<RunRow> rows;
  std::size_t line_no = 0;
  for (std::string_view line : util::split_lines(content)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    const auto fields = util::split(line, '\t');
    if (fields.size() != 4) {
      throw DataError("line " + std::to_string(line_no) + ": expected 4 tab-separated fields");
    }
    const auto score = util::parse_double(fields[2]);
    if (!score) throw DataError("line " + std::to_string(line_no) + ": bad score");
    rows.push_back({std::string(fields[0]), std::string(fields[1]), *score, std::string(fields[3])});
  }
  return rows;
}

std::vector<RunRow> read_run_file(const std::filesystem::path& path) {
  try {
    return parse_run(read_file(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace checkworthy::corpus
