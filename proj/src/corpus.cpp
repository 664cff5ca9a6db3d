// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "tweetsent/error.hpp"

namespace tweetsent {
namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 4> kFields = {"id", "text", "created_at", "topic"};

// ---------------------------------------------------------------------------
// Timestamps

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool Done() const { return pos_ >= text_.size(); }
  char Peek() const { return Done() ? '\0' : text_[pos_]; }
  bool Consume(char c) {
    if (Peek() != c) return false;
    ++pos_;
    return true;
  }
  bool ConsumeLiteral(std::string_view lit) {
    if (text_.substr(pos_).substr(0, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }
  bool Digits(int count, int& value) {
    if (pos_ + static_cast<std::size_t>(count) > text_.size()) return false;
    const char* first = text_.data() + pos_;
    const char* last = first + count;
    if (!std::all_of(first, last, [](char c) { return c >= '0' && c <= '9'; })) return false;
    std::from_chars(first, last, value);
    pos_ += static_cast<std::size_t>(count);
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void BadTimestamp(std::string_view text) {
  ThrowData("invalid ISO-8601 UTC timestamp '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Code points

std::u32string DecodeUtf8(std::string_view in) {
  std::u32string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    const auto b0 = static_cast<unsigned char>(in[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + static_cast<std::size_t>(extra) >= in.size()) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool valid = true;
    for (int k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(in[i + static_cast<std::size_t>(k)]);
      if ((b & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!valid) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char32_t cp : in) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

bool IsSpace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' ||
         cp == U'\f';
}

bool IsAsciiAlnum(char32_t cp) {
  return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || (cp >= U'0' && cp <= U'9');
}

bool IsWordChar(char32_t cp) { return IsAsciiAlnum(cp) || cp == U'_'; }

// Lowercase letters kept by the cleaner: a-z, digits, and the Latin-1
// Supplement lowercase block (U+00DF..U+00FF except U+00F7).
bool IsKeptLetter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'0' && cp <= U'9')) return true;
  return cp >= 0xDF && cp <= 0xFF && cp != 0xF7;
}

char32_t ToLower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

bool StartsWith(std::u32string_view s, std::size_t pos, std::u32string_view prefix) {
  return s.substr(pos).substr(0, prefix.size()) == prefix;
}

std::u32string RemoveUrls(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const bool boundary = i == 0 || !IsWordChar(s[i - 1]);
    const bool url = StartsWith(s, i, U"http://") || StartsWith(s, i, U"https://") ||
                     (boundary && (StartsWith(s, i, U"www.") || StartsWith(s, i, U"t.co/")));
    if (url) {
      while (i < s.size() && !IsSpace(s[i])) ++i;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::u32string RemoveMentions(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const bool boundary = i == 0 || !IsWordChar(s[i - 1]);
    if (s[i] == U'@' && boundary && i + 1 < s.size() && IsWordChar(s[i + 1])) {
      ++i;
      while (i < s.size() && IsWordChar(s[i])) ++i;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // line on which the record starts
};

// RFC-4180 reader. Returns false at end of input.
bool ReadCsvRecord(std::istream& in, std::size_t& line, CsvRecord& record) {
  record.fields.clear();
  record.line = line + 1;
  if (in.peek() == std::char_traits<char>::eof()) return false;

  std::string field;
  bool quoted = false;
  bool after_quote = false;
  bool any = false;
  int ch;
  while ((ch = in.get()) != std::char_traits<char>::eof()) {
    const char c = static_cast<char>(ch);
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == ',') {
      record.fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (c == '\r' && in.peek() == '\n') {
      continue;
    } else if (c == '\n') {
      ++line;
      record.fields.push_back(std::move(field));
      return true;
    } else if (c == '"' && field.empty() && !after_quote) {
      quoted = true;
    } else {
      if (after_quote) {
        ThrowData("line " + std::to_string(line + 1) + ": unexpected character after closing quote");
      }
      field.push_back(c);
    }
  }
  if (quoted) {
    ThrowData("record starting on line " + std::to_string(record.line) +
              ": unterminated quoted field");
  }
  if (!any) return false;
  ++line;
  record.fields.push_back(std::move(field));
  return true;
}

bool IsBlankRecord(const CsvRecord& record) {
  return record.fields.size() == 1 && record.fields[0].empty();
}

void WriteCsvField(std::ostream& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

class DuplicateGuard {
 public:
  void Check(const std::string& id, const std::string& where) {
    if (id.empty()) ThrowData(where + ": field 'id' must be non-empty");
    if (!seen_.insert(id).second) ThrowData(where + ": duplicate id '" + id + "'");
  }

 private:
  std::unordered_set<std::string> seen_;
};

RawTweet MakeTweet(std::string id, std::string text, std::string_view created_at,
                   std::string topic, const std::string& where) {
  Timestamp ts;
  try {
    ts = ParseTimestamp(created_at);
  } catch (const Error& e) {
    ThrowData(where + ": field 'created_at': " + e.what());
  }
  return RawTweet{std::move(id), std::move(text), ts, std::move(topic)};
}

std::vector<RawTweet> ParseJsonl(std::istream& in) {
  std::vector<RawTweet> tweets;
  DuplicateGuard guard;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      ThrowData(where + ": malformed JSON record (" + e.what() + ")");
    }
    if (!record.is_object()) ThrowData(where + ": record is not a JSON object");
    std::array<std::string, 4> values;
    for (std::size_t f = 0; f < kFields.size(); ++f) {
      const std::string key(kFields[f]);
      const auto it = record.find(key);
      if (it == record.end()) ThrowData(where + ": missing field '" + key + "'");
      if (!it->is_string()) ThrowData(where + ": field '" + key + "' must be a string");
      values[f] = it->get<std::string>();
    }
    guard.Check(values[0], where);
    tweets.push_back(MakeTweet(std::move(values[0]), std::move(values[1]), values[2],
                               std::move(values[3]), where));
  }
  return tweets;
}

std::vector<RawTweet> ParseCsv(std::istream& in) {
  std::vector<RawTweet> tweets;
  std::size_t line = 0;
  CsvRecord header;
  if (!ReadCsvRecord(in, line, header)) return tweets;
  if (!header.fields.empty() && header.fields[0].starts_with("\xEF\xBB\xBF")) {
    header.fields[0].erase(0, 3);
  }
  std::array<std::size_t, 4> column{};
  for (std::size_t f = 0; f < kFields.size(); ++f) {
    const auto it = std::find(header.fields.begin(), header.fields.end(), kFields[f]);
    if (it == header.fields.end()) {
      ThrowData("CSV header: missing field '" + std::string(kFields[f]) + "'");
    }
    column[f] = static_cast<std::size_t>(it - header.fields.begin());
  }

  DuplicateGuard guard;
  CsvRecord record;
  std::size_t record_no = 0;
  while (ReadCsvRecord(in, line, record)) {
    if (IsBlankRecord(record)) continue;
    ++record_no;
    const std::string where =
        "record " + std::to_string(record_no) + " (line " + std::to_string(record.line) + ")";
    if (record.fields.size() != header.fields.size()) {
      ThrowData(where + ": malformed record, expected " + std::to_string(header.fields.size()) +
                " fields but found " + std::to_string(record.fields.size()));
    }
    auto& v = record.fields;
    guard.Check(v[column[0]], where);
    tweets.push_back(MakeTweet(std::move(v[column[0]]), std::move(v[column[1]]), v[column[2]],
                               std::move(v[column[3]]), where));
  }
  return tweets;
}

}  // namespace

CorpusFormat ParseCorpusFormat(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "csv") return CorpusFormat::kCsv;
  ThrowUsage("unknown corpus format '" + std::string(name) + "' (expected jsonl or csv)");
}

Timestamp ParseTimestamp(std::string_view text) {
  using namespace std::chrono;
  Cursor c(text);
  int y, mo, d, h, mi, s;
  if (!c.Digits(4, y) || !c.Consume('-') || !c.Digits(2, mo) || !c.Consume('-') ||
      !c.Digits(2, d)) {
    BadTimestamp(text);
  }
  if (!c.Consume('T') && !c.Consume(' ')) BadTimestamp(text);
  if (!c.Digits(2, h) || !c.Consume(':') || !c.Digits(2, mi) || !c.Consume(':') ||
      !c.Digits(2, s)) {
    BadTimestamp(text);
  }
  if (c.Consume('.')) {
    int digit;
    if (!c.Digits(1, digit)) BadTimestamp(text);
    while (c.Digits(1, digit)) {
    }
  }
  int offset_minutes = 0;
  if (c.Consume('Z') || c.ConsumeLiteral(" UTC") || c.ConsumeLiteral(" +0000")) {
  } else if (c.Peek() == '+' || c.Peek() == '-') {
    const int sign = c.Peek() == '+' ? 1 : -1;
    c.Consume(c.Peek());
    int oh, om;
    if (!c.Digits(2, oh)) BadTimestamp(text);
    c.Consume(':');
    if (!c.Digits(2, om) || oh > 23 || om > 59) BadTimestamp(text);
    offset_minutes = sign * (oh * 60 + om);
  }
  if (!c.Done()) BadTimestamp(text);

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) BadTimestamp(text);
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} - minutes{offset_minutes};
}

std::string FormatTimestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{ts - day_point};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::vector<RawTweet> ParseCorpus(std::istream& in, CorpusFormat format) {
  return format == CorpusFormat::kJsonl ? ParseJsonl(in) : ParseCsv(in);
}

std::vector<RawTweet> LoadCorpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowData("cannot open corpus file '" + path.string() + "'");
  try {
    return ParseCorpus(in, format);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void WriteCorpus(std::ostream& out, std::span<const RawTweet> tweets, CorpusFormat format) {
  if (format == CorpusFormat::kJsonl) {
    for (const RawTweet& t : tweets) {
      json record = {{"id", t.id},
                     {"text", t.text},
                     {"created_at", FormatTimestamp(t.created_at)},
                     {"topic", t.topic}};
      out << record.dump() << '\n';
    }
    return;
  }
  out << "id,text,created_at,topic\n";
  for (const RawTweet& t : tweets) {
    WriteCsvField(out, t.id);
    out << ',';
    WriteCsvField(out, t.text);
    out << ',' << FormatTimestamp(t.created_at) << ',';
    WriteCsvField(out, t.topic);
    out << '\n';
  }
}

std::string CleanText(std::string_view raw) {
  std::u32string s = DecodeUtf8(raw);
  std::transform(s.begin(), s.end(), s.begin(), ToLower);
  s = RemoveUrls(s);
  s = RemoveMentions(s);
  std::erase(s, U'#');

  std::u32string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char32_t cp : s) {
    if (cp == U'\'' || cp == 0x2019) continue;
    if (IsKeptLetter(cp)) {
      if (pending_space && !out.empty()) out.push_back(U' ');
      pending_space = false;
      out.push_back(cp);
    } else {
      pending_space = true;
    }
  }
  return EncodeUtf8(out);
}

std::vector<std::string> Tokenize(std::string_view clean, const StopwordSet& stopwords) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos <= clean.size()) {
    std::size_t end = clean.find(' ', pos);
    if (end == std::string_view::npos) end = clean.size();
    if (end > pos) {
      std::string token(clean.substr(pos, end - pos));
      if (!stopwords.contains(token)) tokens.push_back(std::move(token));
    }
    pos = end + 1;
  }
  return tokens;
}

StopwordSet LoadStopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowData("cannot open stopword file '" + path.string() + "'");
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.insert(line.substr(first, last - first + 1));
  }
  return words;
}

CleanDocument MakeCleanDocument(const RawTweet& tweet, const StopwordSet& stopwords) {
  return CleanDocument{tweet.id, Tokenize(CleanText(tweet.text), stopwords), tweet.topic,
                       tweet.created_at};
}

std::vector<CleanDocument> CleanCorpus(std::span<const RawTweet> tweets,
                                       const StopwordSet& stopwords) {
  std::vector<CleanDocument> docs;
  docs.reserve(tweets.size());
  for (const RawTweet& t : tweets) docs.push_back(MakeCleanDocument(t, stopwords));
  return docs;
}

std::uint64_t HourHistogram::Total() const {
  std::uint64_t total = 0;
  for (auto b : bins) total += b;
  return total;
}

HourHistogram HourlyHistogram(std::span<const CleanDocument> docs) {
  using namespace std::chrono;
  HourHistogram hist;
  for (const CleanDocument& doc : docs) {
    const auto since_midnight = doc.created_at - floor<days>(doc.created_at);
    ++hist.bins[static_cast<std::size_t>(floor<hours>(since_midnight).count())];
  }
  return hist;
}

}  // namespace tweetsent
