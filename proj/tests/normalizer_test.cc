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

#include "checkworthy/normalizer.h"

#include <regex>

#include "checkworthy/common.h"
#include "checkworthy/embedded_data.h"
#include "checkworthy/random.h"
#include "doctest.h"
#include "fuzz_text.h"
#include "string_util.h"

namespace checkworthy::normalizer {
namespace {

const corpus::VipTable& vip() { return corpus::default_vip_table(); }

std::string norm(std::string_view text, Pipeline p = Pipeline::kDefault) {
  return detokenize(normalize_text(text, p, vip()));
}

// Reference splitter for ASCII hashtags built on a regular expression.
std::vector<std::string> regex_split(std::string_view tag) {
  static const std::regex kPiece("[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+");
  std::string body(tag.substr(tag.starts_with('#') ? 1 : 0));
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), kPiece); it != std::sregex_iterator();
       ++it) {
    const std::string w = it->str();
    int upper = 0;
    bool lower = false;
    for (char c : w) {
      upper += std::isupper(static_cast<unsigned char>(c)) ? 1 : 0;
      lower = lower || std::islower(static_cast<unsigned char>(c));
    }
    out.push_back(!lower && upper >= 2 ? w : util::ascii_lower(w));
  }
  return out;
}

TEST_CASE("hashtag golden table") {
  int rows = 0;
  for (const auto line : util::split_lines(embedded::hashtag_split_golden())) {
    if (line.empty()) continue;
    const auto cols = util::split(line, '\t');
    REQUIRE(cols.size() == 2);
    CAPTURE(line);
    CHECK(util::join(split_hashtag(cols[0]), " ") == cols[1]);
    ++rows;
  }
  CHECK(rows >= 30);
}

TEST_CASE("split_hashtag agrees with the regex splitter on random ASCII tags") {
  const std::string alphabet = "abcxyzABCXYZ0189_-";
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string tag = "#";
    const auto len = 1 + rng.uniform_index(12);
    for (std::uint64_t i = 0; i < len; ++i) tag.push_back(alphabet[rng.uniform_index(alphabet.size())]);
    CAPTURE(tag);
    CHECK(split_hashtag(tag) == regex_split(tag));
  }
}

TEST_CASE("split_hashtag edge cases") {
  CHECK(split_hashtag("#").empty());
  CHECK(split_hashtag("#__").empty());
  CHECK(split_hashtag("NoHash") == std::vector<std::string>{"no", "hash"});
}

TEST_CASE("normalizer golden corpus") {
  int rows = 0;
  for (const auto line : util::split_lines(embedded::normalizer_golden())) {
    if (line.empty()) continue;
    const auto cols = util::split(line, '\t');
    REQUIRE(cols.size() == 3);
    CAPTURE(line);
    CHECK(norm(cols[1], parse_pipeline(cols[0])) == cols[2]);
    ++rows;
  }
  CHECK(rows >= 50);
}

TEST_CASE("replace_urls") {
  CHECK(replace_urls("see https://t.co/abc now") == "see url now");
  CHECK(replace_urls("HTTP://X.COM") == "url");
  CHECK(replace_urls("go:www.a.b/c?d=1") == "go: url");
  CHECK(replace_urls("quoted \"http://a.b\" end") == "quoted \" url \" end");
  CHECK(replace_urls("xhttp://a.b") == "x url");
  CHECK(replace_urls("#G20Summithttps://t.co/x") == "#G20Summit url");
  CHECK(replace_urls("awww.no") == "awww.no");
  CHECK(replace_urls("no links here") == "no links here");
}

TEST_CASE("replace_mentions") {
  CHECK(replace_mentions("@realDonaldTrump said", vip()) == "Donald Trump said");
  CHECK(replace_mentions("@REALDONALDTRUMP said", vip()) == "Donald Trump said");
  CHECK(replace_mentions("hi @bob_99!", vip()) == "hi user !");
  CHECK(replace_mentions("mail a@b.com", vip()) == "mail a@b.com");
  CHECK(replace_mentions("@ alone", vip()) == "@ alone");
  corpus::VipTable custom;
  custom.insert("jd", "John Doe");
  CHECK(replace_mentions("@jd @realDonaldTrump", custom) == "John Doe user");
}

TEST_CASE("unify_covid") {
  CHECK(unify_covid("#covid19 #Covid_19 #COVID2019 #covid") == "covid-19 covid-19 covid-19 covid-19");
  CHECK(unify_covid("covid 19 cases") == "covid-19 cases");
  CHECK(unify_covid("COVID-19") == "covid-19");
  CHECK(unify_covid("#coronavirus #Corona_Virus #korona") == "corona virus corona virus corona virus");
  CHECK(unify_covid("corona virus") == "corona virus");
  CHECK(unify_covid("covid19-related news") == "covid19-related news");
  CHECK(unify_covid("coronas") == "coronas");
  CHECK(unify_covid("the covid,19") == "the covid-19 ,19");
}

TEST_CASE("strip_trailing_hashtags") {
  CHECK(strip_trailing_hashtags("This is a scandal! #Covid-19 #Upset #Scandal") == "This is a scandal!");
  CHECK(strip_trailing_hashtags("Breaking #News url") == "Breaking url");
  CHECK(strip_trailing_hashtags("#only #hashtags") == "#only #hashtags");
  CHECK(strip_trailing_hashtags("mid #tag text") == "mid #tag text");
  CHECK(strip_trailing_hashtags("trailing (#tag).") == "trailing");
}

TEST_CASE("expand_quantities") {
  CHECK(expand_quantities("7m 12k 3B 2.5bn 4BN") == "7 million 12 thousand 3 billion 2.5 billion 4 billion");
  CHECK(expand_quantities("7mm 5kg a5k") == "7mm 5kg a5k");
  CHECK(expand_quantities("(10k)") == "(10 thousand)");
  CHECK(expand_quantities("5k_x") == "5 thousand_x");
}

TEST_CASE("strip_punctuation") {
  CHECK(strip_punctuation("Hello,   world!!") == "Hello world");
  CHECK(strip_punctuation("well-known -dash- a--b") == "well-known dash a b");
  CHECK(strip_punctuation("it's \"fine\"") == "it's \"fine\"");
  CHECK(strip_punctuation("snake_case #tag @x") == "snake case tag x");
  CHECK(strip_punctuation("wow\xF0\x9F\x98\xB7mask") == "wow mask");
  CHECK(strip_punctuation("Zürich—Genève") == "Zürich Genève");
}

TEST_CASE("corona_swap") {
  CHECK(corona_swap("covid-19 and corona virus") == "ebola and ebola");
  CHECK(corona_swap("COVID-19") == "ebola");
  CHECK(corona_swap("covid-19-era") == "covid-19-era");
}

TEST_CASE("lowercasing keeps acronyms") {
  CHECK(is_acronym("USA"));
  CHECK(is_acronym("COVID"));
  CHECK_FALSE(is_acronym("A"));
  CHECK_FALSE(is_acronym("5G"));
  CHECK_FALSE(is_acronym("USA's"));
  CHECK(norm("The NBA and A cat") == "the NBA and a cat");
}

TEST_CASE("stop words") {
  const StopWords& sw = StopWords::bundled();
  CHECK(sw.list_size() == 179);
  for (const auto& w : sw.keep()) CHECK_FALSE(sw.removes(w));
  CHECK(sw.removes("the"));
  CHECK_FALSE(sw.removes("The"));
  const std::vector<std::string> toks = {"the", "cat", "is", "here", "they"};
  CHECK(remove_stopwords(toks) == std::vector<std::string>{"cat", "they"});
  // Protected replacements survive even if they look like stop words.
  corpus::VipTable custom;
  custom.insert("x", "the");
  CHECK(detokenize(normalize_text("@x is a one", Pipeline::kSwc, custom)) == "the one");
}

TEST_CASE("pipelines") {
  CHECK(parse_pipeline("corona") == Pipeline::kCorona);
  CHECK(pipeline_name(Pipeline::kSwc) == "swc");
  CHECK_THROWS_AS(parse_pipeline("Default"), UsageError);
  corpus::Tweet t;
  t.tweet_id = "42";
  t.text = "#covid19 is here";
  const NormalizedTweet n = normalize(t, Pipeline::kCorona, vip());
  CHECK(n.tweet_id == "42");
  CHECK(n.pipeline == Pipeline::kCorona);
  CHECK(n.tokens == std::vector<std::string>{"ebola", "is", "here"});
}

TEST_CASE("empty and whitespace input") {
  CHECK(normalize_text("", Pipeline::kDefault, vip()).empty());
  CHECK(normalize_text(" \t\n", Pipeline::kSwc, vip()).empty());
  CHECK(normalize_text("!!! ...", Pipeline::kCorona, vip()).empty());
}

TEST_CASE("normalization is idempotent") {
  for (const Pipeline p : {Pipeline::kDefault, Pipeline::kCorona, Pipeline::kSwc}) {
    Rng rng(derive_seed(1234, static_cast<std::uint64_t>(p)));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::string text = testing::random_text(rng);
      const std::string once = norm(text, p);
      CAPTURE(pipeline_name(p));
      CAPTURE(text);
      REQUIRE(norm(once, p) == once);
    }
  }
}

TEST_CASE("normalized tokens carry no mentions, urls or stray punctuation") {
  for (const Pipeline p : {Pipeline::kDefault, Pipeline::kCorona, Pipeline::kSwc}) {
    Rng rng(derive_seed(99, static_cast<std::uint64_t>(p)));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::string text = testing::random_text(rng);
      const auto tokens = normalize_text(text, p, vip());
      CAPTURE(pipeline_name(p));
      CAPTURE(text);
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        CAPTURE(t);
        REQUIRE_FALSE(t.empty());
        REQUIRE(t.find_first_of(" \t\n@#") == std::string::npos);
        REQUIRE(t.find("http") == std::string::npos);
        REQUIRE(t.find("www.") == std::string::npos);
        for (std::size_t j = 0; j < t.size(); ++j) {
          const char c = t[j];
          if (c == '"' || c == '\'') continue;
          if (c == '-' && j > 0 && j + 1 < t.size()) continue;
          REQUIRE_FALSE(std::ispunct(static_cast<unsigned char>(c)));
        }
        if (p == Pipeline::kCorona) {
          REQUIRE(t != "covid-19");
          REQUIRE_FALSE((util::ascii_lower(t) == "corona" && i + 1 < tokens.size() &&
                         util::ascii_lower(tokens[i + 1]) == "virus"));
        }
        if (p == Pipeline::kSwc) REQUIRE_FALSE(StopWords::bundled().removes(t));
      }
    }
  }
}

TEST_CASE("hashtag pieces concatenate back to the tag body") {
  Rng rng(31);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-";
  for (int trial = 0; trial < 5000; ++trial) {
    std::string tag = "#";
    const auto len = 1 + rng.uniform_index(16);
    for (std::uint64_t i = 0; i < len; ++i) tag += alphabet[rng.uniform_index(alphabet.size())];
    std::string body;
    for (char c : tag.substr(1)) {
      if (c != '_' && c != '-') body += c;
    }
    std::string joined;
    for (const auto& w : split_hashtag(tag)) {
      CHECK_FALSE(w.empty());
      joined += w;
    }
    CAPTURE(tag);
    CHECK(util::ascii_lower(joined) == util::ascii_lower(body));
  }
}

TEST_CASE("golden rows are idempotent") {
  for (const auto line : util::split_lines(embedded::normalizer_golden())) {
    if (line.empty()) continue;
    const auto cols = util::split(line, '\t');
    const Pipeline p = parse_pipeline(cols[0]);
    CAPTURE(line);
    CHECK(norm(cols[2], p) == cols[2]);
  }
}

}  // namespace
}  // namespace checkworthy::normalizer
