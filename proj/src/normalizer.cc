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

#include <algorithm>

#include "checkworthy/common.h"
#include "checkworthy/embedded_data.h"
#include "string_util.h"
#include "unicode.h"

namespace checkworthy::normalizer {

using unicode::CharClass;
using unicode::classify;
using unicode::decode;

std::string_view pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::kDefault:
      return "default";
    case Pipeline::kCorona:
      return "corona";
    case Pipeline::kSwc:
      return "swc";
  }
  return "default";
}

Pipeline parse_pipeline(std::string_view name) {
  if (name == "default") return Pipeline::kDefault;
  if (name == "corona") return Pipeline::kCorona;
  if (name == "swc") return Pipeline::kSwc;
  throw UsageError("unknown pipeline '" + std::string(name) + "' (expected default, corona or swc)");
}

bool is_acronym(std::string_view token) {
  int letters = 0;
  for (const char c : token) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') ++letters;
  }
  return letters >= 2;
}

namespace {

std::string case_fold(std::string_view word) {
  return is_acronym(word) ? std::string(word) : util::ascii_lower(word);
}

// ---------------------------------------------------------------------------
// Text is carried through the rules as pieces. Protected pieces hold rule
// output and are passed through untouched by later rules; a protected piece
// is always a token boundary.

struct Piece {
  std::string text;
  bool is_protected = false;
  bool from_hashtag = false;  // protected output that replaced a hashtag
};
using Pieces = std::vector<Piece>;

void emit_text(Pieces& out, std::string_view text) {
  if (text.empty()) return;
  if (!out.empty() && !out.back().is_protected) {
    out.back().text.append(text);
  } else {
    out.push_back({std::string(text), false, false});
  }
}

void emit_protected(Pieces& out, std::string text, bool from_hashtag = false) {
  out.push_back({std::move(text), true, from_hashtag});
}

template <typename Rule>
Pieces rewrite(const Pieces& in, Rule&& rule) {
  Pieces out;
  for (const Piece& p : in) {
    if (p.is_protected) {
      out.push_back(p);
    } else {
      rule(std::string_view(p.text), out);
    }
  }
  return out;
}

Pieces single(std::string_view text) { return Pieces{{std::string(text), false, false}}; }

std::string flatten(const Pieces& pieces) {
  std::string out;
  bool prev_protected = false;
  for (const Piece& p : pieces) {
    if (p.text.empty()) continue;
    const bool need_gap = !out.empty() && (p.is_protected || prev_protected) &&
                          !util::is_space(out.back()) && !util::is_space(p.text.front());
    if (need_gap) out.push_back(' ');
    out += p.text;
    prev_protected = p.is_protected;
  }
  return out;
}

bool word_before(std::string_view s, std::size_t pos) {
  if (pos == 0) return false;
  std::size_t start;
  return unicode::is_word(unicode::decode_before(s, pos, start));
}

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

// End of the word run starting at `start`: word characters, optionally
// underscores, and hyphens sitting between two run characters.
std::size_t run_end(std::string_view s, std::size_t start, bool underscores) {
  const auto in_run = [&](char32_t cp) { return unicode::is_word(cp) || (underscores && cp == U'_'); };
  std::size_t j = start;
  while (j < s.size()) {
    std::size_t k = j;
    const char32_t cp = decode(s, k);
    if (in_run(cp)) {
      j = k;
      continue;
    }
    if (cp == U'-' && j > start && k < s.size()) {
      std::size_t n = k;
      if (in_run(decode(s, n))) {
        j = k;
        continue;
      }
    }
    break;
  }
  return j;
}

// True if `pos` holds a '#' that starts a hashtag.
bool hashtag_at(std::string_view s, std::size_t pos, bool underscores = true) {
  if (s[pos] != '#' || pos + 1 >= s.size() || word_before(s, pos)) return false;
  std::size_t k = pos + 1;
  const char32_t cp = decode(s, k);
  return unicode::is_word(cp) || (underscores && cp == U'_');
}

// Skips whitespace and underscores.
std::size_t skip_separators(std::string_view s, std::size_t pos) {
  while (pos < s.size()) {
    std::size_t k = pos;
    const char32_t cp = decode(s, k);
    if (!unicode::is_space(cp) && cp != U'_') break;
    pos = k;
  }
  return pos;
}

// If a word equal (case-insensitively) to one of `words` follows after at
// least one separator, returns its end; otherwise 0.
std::size_t following_word(std::string_view s, std::size_t pos,
                           std::initializer_list<std::string_view> words) {
  const std::size_t start = skip_separators(s, pos);
  if (start == pos || start >= s.size()) return 0;
  const std::size_t end = run_end(s, start, false);
  const std::string w = util::ascii_lower(s.substr(start, end - start));
  for (const auto cand : words) {
    if (w == cand) return end;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Rules

void url_rule(std::string_view text, Pieces& out) {
  std::size_t i = 0, last = 0;
  while (i < text.size()) {
    // A scheme starts a URL even when glued to the previous word ("...Summithttps://").
    const bool scheme = starts_with_ci(text, i, "http://") || starts_with_ci(text, i, "https://");
    const bool www = starts_with_ci(text, i, "www.") && !word_before(text, i);
    if (!scheme && !www) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size()) {
      std::size_t k = j;
      const char32_t cp = decode(text, k);
      if (unicode::is_space(cp) || unicode::is_double_quote(cp) || cp == U'<' || cp == U'>') break;
      j = k;
    }
    emit_text(out, text.substr(last, i - last));
    emit_protected(out, "url");
    i = last = j;
  }
  emit_text(out, text.substr(last));
}

bool is_handle_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

void mention_rule(std::string_view text, const corpus::VipTable& vip, Pieces& out) {
  std::size_t i = 0, last = 0;
  while (i < text.size()) {
    if (text[i] != '@' || i + 1 >= text.size() || !is_handle_char(text[i + 1]) ||
        word_before(text, i)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && is_handle_char(text[j])) ++j;
    const std::string* phrase = vip.find(text.substr(i + 1, j - i - 1));
    emit_text(out, text.substr(last, i - last));
    emit_protected(out, phrase != nullptr ? *phrase : "user");
    i = last = j;
  }
  emit_text(out, text.substr(last));
}

// Literal occurrences of VIP replacement phrases keep their protected status,
// so normalizing already-normalized text leaves them alone.
void vip_phrase_rule(std::string_view text, const std::vector<std::string>& phrases, Pieces& out) {
  std::size_t i = 0, last = 0;
  while (i < text.size()) {
    bool matched = false;
    if (!word_before(text, i)) {
      for (const std::string& phrase : phrases) {
        if (text.substr(i, phrase.size()) != phrase) continue;
        const std::size_t end = i + phrase.size();
        std::size_t k = end;
        if (end < text.size() && unicode::is_word(decode(text, k))) continue;
        emit_text(out, text.substr(last, i - last));
        emit_protected(out, phrase);
        i = last = end;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  emit_text(out, text.substr(last));
}

bool is_covid_form(std::string_view w) {
  if (!w.starts_with("covid")) return false;
  w.remove_prefix(5);
  while (!w.empty() && w.front() == '-') w.remove_prefix(1);
  return w.empty() || w == "19" || w == "2019";
}

bool is_corona_form(std::string_view w) {
  if (!(w.starts_with("corona") || w.starts_with("korona"))) return false;
  w.remove_prefix(6);
  if (!w.empty() && w.front() == '-') w.remove_prefix(1);
  return w.empty() || w == "virus";
}

void unify_rule(std::string_view text, Pieces& out) {
  std::size_t i = 0, last = 0;
  while (i < text.size()) {
    std::size_t next = i;
    const char32_t cp = decode(text, next);
    bool hashtag = false;
    std::size_t body;
    if (hashtag_at(text, i, false)) {
      hashtag = true;
      body = i + 1;
    } else if (unicode::is_word(cp) && !word_before(text, i)) {
      body = i;
    } else {
      i = next;
      continue;
    }
    const std::size_t end = run_end(text, body, false);
    const std::string word = util::ascii_lower(text.substr(body, end - body));
    std::size_t match_end = end;
    const char* canonical = nullptr;
    if (is_covid_form(word)) {
      canonical = "covid-19";
      if (word == "covid") {
        if (const std::size_t e = following_word(text, end, {"19", "2019"})) match_end = e;
      }
    } else if (is_corona_form(word)) {
      canonical = "corona virus";
      if (word == "corona" || word == "korona") {
        if (const std::size_t e = following_word(text, end, {"virus"})) match_end = e;
      }
    }
    if (canonical == nullptr) {
      i = end;
      continue;
    }
    emit_text(out, text.substr(last, i - last));
    emit_protected(out, canonical, hashtag);
    i = last = match_end;
  }
  emit_text(out, text.substr(last));
}

void split_hashtags_rule(std::string_view text, Pieces& out) {
  std::size_t i = 0, last = 0;
  while (i < text.size()) {
    if (!hashtag_at(text, i)) {
      ++i;
      continue;
    }
    const std::size_t end = run_end(text, i + 1, true);
    emit_text(out, text.substr(last, i - last));
    const auto words = split_hashtag(text.substr(i, end - i));
    emit_text(out, " " + util::join(words, " ") + " ");
    i = last = end;
  }
  emit_text(out, text.substr(last));
}

void expand_rule(std::string_view text, Pieces& out) {
  const auto digit = [&](std::size_t p) { return p < text.size() && text[p] >= '0' && text[p] <= '9'; };
  std::size_t i = 0, last = 0;
  while (i < text.size()) {
    if (!digit(i) || word_before(text, i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (digit(j)) ++j;
    if (j < text.size() && text[j] == '.' && digit(j + 1)) {
      ++j;
      while (digit(j)) ++j;
    }
    const std::size_t number_end = j;
    const char* word = nullptr;
    if (starts_with_ci(text, j, "bn")) {
      word = "billion";
      j += 2;
    } else if (j < text.size()) {
      switch (text[j]) {
        case 'k':
        case 'K':
          word = "thousand";
          break;
        case 'm':
        case 'M':
          word = "million";
          break;
        case 'b':
        case 'B':
          word = "billion";
          break;
        default:
          break;
      }
      if (word != nullptr) ++j;
    }
    std::size_t after = j;
    const bool ends_token = j >= text.size() || !unicode::is_word(decode(text, after));
    if (word == nullptr || !ends_token) {
      i = number_end;
      continue;
    }
    emit_text(out, text.substr(last, i - last));
    emit_text(out, std::string(text.substr(i, number_end - i)) + " " + word);
    i = last = j;
  }
  emit_text(out, text.substr(last));
}

std::string strip_punct_raw(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  char32_t prev = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    const char32_t cp = decode(s, pos);
    switch (classify(cp)) {
      case CharClass::kWord:
      case CharClass::kQuote:
        out.append(s.substr(start, pos - start));
        break;
      case CharClass::kSpace:
        out.push_back(' ');
        break;
      case CharClass::kPunct: {
        bool keep = false;
        if (cp == U'-' && unicode::is_word(prev) && pos < s.size()) {
          std::size_t k = pos;
          keep = unicode::is_word(decode(s, k));
        }
        out.push_back(keep ? '-' : ' ');
        break;
      }
    }
    prev = cp;
  }
  return out;
}

std::string collapse_spaces(std::string_view s) {
  return util::join(util::split_ws(s), " ");
}

// ---------------------------------------------------------------------------
// Trailing hashtags

struct Tok {
  std::string text;
  bool is_protected = false;
  bool from_hashtag = false;
};

std::vector<Tok> piece_tokens(const Pieces& pieces) {
  std::vector<Tok> toks;
  for (const Piece& p : pieces) {
    if (p.is_protected) {
      toks.push_back({p.text, true, p.from_hashtag});
      continue;
    }
    // Unicode spaces count as separators here too.
    std::size_t pos = 0, start = 0;
    const std::string_view s = p.text;
    while (pos < s.size()) {
      std::size_t k = pos;
      if (unicode::is_space(decode(s, k))) {
        if (pos > start) toks.push_back({std::string(s.substr(start, pos - start)), false, false});
        start = k;
      }
      pos = k;
    }
    if (s.size() > start) toks.push_back({std::string(s.substr(start)), false, false});
  }
  return toks;
}

bool is_hashtag_token(const Tok& t) {
  if (t.is_protected) return t.from_hashtag;
  const std::string_view s = t.text;
  bool had_tag = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (hashtag_at(s, pos)) {
      pos = run_end(s, pos + 1, true);
      had_tag = true;
      continue;
    }
    std::size_t k = pos;
    if (classify(decode(s, k)) != CharClass::kPunct) return false;
    pos = k;
  }
  return had_tag;
}

// Returns false when nothing was removed.
bool strip_trailing(std::vector<Tok>& toks) {
  std::size_t end = toks.size();
  if (end > 0 && toks[end - 1].text == "url") --end;
  std::size_t first = end;
  while (first > 0 && is_hashtag_token(toks[first - 1])) --first;
  // A tweet made only of hashtags keeps them (they get split later).
  if (first == end || first == 0) return false;
  toks.erase(toks.begin() + static_cast<std::ptrdiff_t>(first),
             toks.begin() + static_cast<std::ptrdiff_t>(end));
  return true;
}

Pieces pieces_from_tokens(const std::vector<Tok>& toks) {
  Pieces out;
  for (const Tok& t : toks) {
    if (t.is_protected) {
      emit_protected(out, t.text, t.from_hashtag);
    } else if (!out.empty() && !out.back().is_protected) {
      out.back().text += " " + t.text;
    } else {
      emit_text(out, t.text);
    }
  }
  return out;
}

Pieces strip_trailing_pieces(const Pieces& pieces) {
  std::vector<Tok> toks = piece_tokens(pieces);
  if (!strip_trailing(toks)) return pieces;
  return pieces_from_tokens(toks);
}

// ---------------------------------------------------------------------------
// Corona swap

void corona_swap_rule(std::string_view text, Pieces& out) {
  std::size_t i = 0, last = 0;
  while (i < text.size()) {
    std::size_t next = i;
    const char32_t cp = decode(text, next);
    if (!unicode::is_word(cp) || word_before(text, i)) {
      i = next;
      continue;
    }
    const std::size_t end = run_end(text, i, false);
    const std::string word = util::ascii_lower(text.substr(i, end - i));
    std::size_t match_end = 0;
    if (word == "covid-19") {
      match_end = end;
    } else if (word == "corona") {
      match_end = following_word(text, end, {"virus"});
    }
    if (match_end == 0) {
      i = end;
      continue;
    }
    emit_text(out, text.substr(last, i - last));
    emit_protected(out, "ebola");
    i = last = match_end;
  }
  emit_text(out, text.substr(last));
}

Pieces corona_swap_pieces(const Pieces& in) {
  Pieces out;
  for (const Piece& p : in) {
    if (p.is_protected) {
      if (p.text == "covid-19" || p.text == "corona virus") {
        emit_protected(out, "ebola", p.from_hashtag);
      } else {
        out.push_back(p);
      }
    } else {
      corona_swap_rule(p.text, out);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tokenization

struct Token {
  std::string text;
  bool is_protected = false;
};

bool is_single_quote(char32_t cp) { return unicode::is_quote(cp) && !unicode::is_double_quote(cp); }

// Double quotes always stand alone; single quotes are split off only at the
// edges of a word, so apostrophes inside words survive.
void push_word(std::string_view word, std::vector<Token>& out) {
  std::vector<std::string> tail;
  while (!word.empty()) {
    std::size_t k = 0;
    const char32_t cp = decode(word, k);
    if (!is_single_quote(cp)) break;
    out.push_back({std::string(word.substr(0, k)), false});
    word.remove_prefix(k);
  }
  while (!word.empty()) {
    std::size_t start;
    const char32_t cp = unicode::decode_before(word, word.size(), start);
    if (!is_single_quote(cp)) break;
    tail.emplace_back(word.substr(start));
    word = word.substr(0, start);
  }
  if (!word.empty()) out.push_back({case_fold(word), false});
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back({*it, false});
}

void tokenize_text(std::string_view text, std::vector<Token>& out) {
  for (const std::string_view raw : util::split_ws(text)) {
    std::size_t pos = 0, start = 0;
    while (pos < raw.size()) {
      const std::size_t here = pos;
      const char32_t cp = decode(raw, pos);
      if (unicode::is_double_quote(cp)) {
        push_word(raw.substr(start, here - start), out);
        out.push_back({std::string(raw.substr(here, pos - here)), false});
        start = pos;
      }
    }
    push_word(raw.substr(start), out);
  }
}

std::vector<Token> tokenize(const Pieces& pieces) {
  std::vector<Token> out;
  for (const Piece& p : pieces) {
    if (p.is_protected) {
      for (const auto w : util::split_ws(p.text)) out.push_back({std::string(w), true});
    } else {
      tokenize_text(p.text, out);
    }
  }
  return out;
}

std::vector<std::string> sorted_phrases(const corpus::VipTable& vip) {
  std::vector<std::string> phrases;
  for (const auto& [handle, phrase] : vip.entries()) phrases.push_back(phrase);
  std::sort(phrases.begin(), phrases.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  phrases.erase(std::unique(phrases.begin(), phrases.end()), phrases.end());
  return phrases;
}

std::unordered_set<std::string> word_set(std::string_view content) {
  std::unordered_set<std::string> out;
  for (const auto line : util::split_lines(content)) {
    const auto w = util::trim(line);
    if (!w.empty()) out.emplace(w);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public rules

std::vector<std::string> split_hashtag(std::string_view hashtag) {
  std::string_view body = hashtag;
  if (!body.empty() && body.front() == '#') body.remove_prefix(1);

  enum class Kind { kUpper, kLower, kDigit, kOther, kSeparator };
  struct Cp {
    Kind kind;
    std::size_t offset;
  };
  std::vector<Cp> cps;
  for (std::size_t pos = 0; pos < body.size();) {
    const std::size_t offset = pos;
    const char32_t cp = decode(body, pos);
    Kind kind = Kind::kOther;
    if (unicode::is_ascii_upper(cp)) {
      kind = Kind::kUpper;
    } else if (unicode::is_ascii_lower(cp)) {
      kind = Kind::kLower;
    } else if (unicode::is_ascii_digit(cp)) {
      kind = Kind::kDigit;
    } else if (cp == U'_' || cp == U'-') {
      kind = Kind::kSeparator;
    }
    cps.push_back({kind, offset});
  }
  const auto offset_of = [&](std::size_t i) { return i < cps.size() ? cps[i].offset : body.size(); };
  const auto letter = [](Kind k) { return k == Kind::kUpper || k == Kind::kLower; };

  std::vector<std::string> words;
  std::size_t start = 0;
  const auto flush = [&](std::size_t end) {
    if (end > start) {
      words.push_back(case_fold(body.substr(offset_of(start), offset_of(end) - offset_of(start))));
    }
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const Kind b = cps[i].kind;
    if (b == Kind::kSeparator) {
      flush(i);
      start = i + 1;
      continue;
    }
    if (i == start) continue;
    const Kind a = cps[i - 1].kind;
    const bool camel = a == Kind::kLower && b == Kind::kUpper;
    const bool digit_edge = (letter(a) && b == Kind::kDigit) || (a == Kind::kDigit && letter(b));
    const bool acronym_end = a == Kind::kUpper && b == Kind::kUpper && i + 1 < cps.size() &&
                             cps[i + 1].kind == Kind::kLower;
    if (camel || digit_edge || acronym_end) {
      flush(i);
      start = i;
    }
  }
  flush(cps.size());
  return words;
}

std::string replace_urls(std::string_view text) { return flatten(rewrite(single(text), url_rule)); }

std::string replace_mentions(std::string_view text, const corpus::VipTable& vip) {
  return flatten(rewrite(single(text), [&](std::string_view t, Pieces& out) {
    mention_rule(t, vip, out);
  }));
}

std::string unify_covid(std::string_view text) { return flatten(rewrite(single(text), unify_rule)); }

std::string strip_trailing_hashtags(std::string_view text) {
  std::vector<Tok> toks = piece_tokens(single(text));
  if (!strip_trailing(toks)) return std::string(text);
  return flatten(pieces_from_tokens(toks));
}

std::string expand_quantities(std::string_view text) {
  return flatten(rewrite(single(text), expand_rule));
}

std::string strip_punctuation(std::string_view text) { return collapse_spaces(strip_punct_raw(text)); }

std::string corona_swap(std::string_view text) {
  return flatten(rewrite(single(text), corona_swap_rule));
}

StopWords::StopWords(std::unordered_set<std::string> stop, std::unordered_set<std::string> keep)
    : stop_(std::move(stop)), keep_(std::move(keep)) {}

const StopWords& StopWords::bundled() {
  static const StopWords kWords(word_set(embedded::stopwords_en()),
                                word_set(embedded::pronoun_keep()));
  return kWords;
}

bool StopWords::removes(std::string_view token) const {
  const std::string t(token);
  return stop_.count(t) > 0 && keep_.count(t) == 0;
}

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const StopWords& words) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (!words.removes(t)) out.push_back(t);
  }
  return out;
}

std::vector<std::string> normalize_text(std::string_view text, Pipeline pipeline,
                                        const corpus::VipTable& vip) {
  const std::vector<std::string> phrases = sorted_phrases(vip);
  Pieces p = rewrite(single(text), url_rule);
  p = rewrite(p, [&](std::string_view t, Pieces& out) { vip_phrase_rule(t, phrases, out); });
  p = rewrite(p, [&](std::string_view t, Pieces& out) { mention_rule(t, vip, out); });
  p = rewrite(p, unify_rule);
  p = strip_trailing_pieces(p);
  p = rewrite(p, split_hashtags_rule);
  // Split hashtags can spell out covid/corona forms ("#CoronaVirusOutbreak").
  p = rewrite(p, unify_rule);
  p = rewrite(p, expand_rule);
  p = rewrite(p, [](std::string_view t, Pieces& out) { emit_text(out, strip_punct_raw(t)); });
  if (pipeline != Pipeline::kDefault) p = corona_swap_pieces(p);

  const StopWords& stop = StopWords::bundled();
  std::vector<std::string> tokens;
  for (Token& t : tokenize(p)) {
    if (pipeline == Pipeline::kSwc && !t.is_protected && stop.removes(t.text)) continue;
    tokens.push_back(std::move(t.text));
  }
  return tokens;
}

NormalizedTweet normalize(const corpus::Tweet& tweet, Pipeline pipeline,
                          const corpus::VipTable& vip) {
  return {tweet.tweet_id, normalize_text(tweet.text, pipeline, vip), pipeline};
}

std::string detokenize(std::span<const std::string> tokens) { return util::join(tokens, " "); }

}  // namespace checkworthy::normalizer
