#include "rougekit/textproc.hpp"

#include <cctype>
#include <fstream>
#include <mutex>
#include <unordered_map>

#include "rougekit/error.hpp"

namespace rougekit {

namespace {

struct Codepoint {
  char32_t value;
  int width;
};

unsigned char byte_at(std::string_view s, std::size_t i) {
  return static_cast<unsigned char>(s[i]);
}

// Invalid sequences fall back to one byte per unit so no input is lost.
Codepoint decode_utf8(std::string_view s, std::size_t i) {
  const unsigned char b0 = byte_at(s, i);
  if (b0 < 0x80) return {b0, 1};
  auto continuation = [&](std::size_t k) {
    return i + k < s.size() && (byte_at(s, i + k) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && continuation(1)) {
    return {static_cast<char32_t>(((b0 & 0x1Fu) << 6) | (byte_at(s, i + 1) & 0x3Fu)), 2};
  }
  if ((b0 & 0xF0) == 0xE0 && continuation(1) && continuation(2)) {
    return {static_cast<char32_t>(((b0 & 0x0Fu) << 12) | ((byte_at(s, i + 1) & 0x3Fu) << 6) |
                                  (byte_at(s, i + 2) & 0x3Fu)),
            3};
  }
  if ((b0 & 0xF8) == 0xF0 && continuation(1) && continuation(2) && continuation(3)) {
    return {static_cast<char32_t>(((b0 & 0x07u) << 18) | ((byte_at(s, i + 1) & 0x3Fu) << 12) |
                                  ((byte_at(s, i + 2) & 0x3Fu) << 6) | (byte_at(s, i + 3) & 0x3Fu)),
            4};
  }
  return {b0, 1};
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

bool is_space_cp(char32_t c) {
  switch (c) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\f':
    case U'\v':
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_hyphen_cp(char32_t c) { return c == U'-' || c == 0x2010 || c == 0x2011; }

bool is_punct_cp(char32_t c) {
  if (c < 0x80) {
    return (c >= U'!' && c <= U'/') || (c >= U':' && c <= U'@') || (c >= U'[' && c <= U'`') ||
           (c >= U'{' && c <= U'~');
  }
  switch (c) {
    case 0x00A1:  // inverted exclamation
    case 0x00AB:  // left guillemet
    case 0x00B7:  // middle dot
    case 0x00BB:  // right guillemet
    case 0x00BF:  // inverted question mark
    case 0x2044:  // fraction slash
    case 0x3001:  // ideographic comma
    case 0x3002:  // ideographic full stop
    case 0x300C:
    case 0x300D:
    case 0xFF01:
    case 0xFF0C:
    case 0xFF0E:
    case 0xFF1A:
    case 0xFF1B:
    case 0xFF1F:
      return true;
    default:
      // general punctuation block, minus the line/paragraph separators
      return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E);
  }
}

// ASCII plus Latin-1 supplement; everything else passes through.
char32_t lower_cp(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 32;
  return c;
}

bool is_word_start(std::string_view text, std::size_t i) {
  if (i >= text.size()) return false;
  Codepoint cp = decode_utf8(text, i);
  return !is_space_cp(cp.value) && !is_punct_cp(cp.value);
}

std::string trim_copy(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<Token> out;
  std::string word;
  std::string punct;
  auto flush_word = [&] {
    if (!word.empty()) {
      out.push_back(std::move(word));
      word.clear();
    }
  };
  auto flush_punct = [&] {
    if (!punct.empty()) {
      if (!config.strip_punctuation) out.push_back(std::move(punct));
      punct.clear();
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const Codepoint cp = decode_utf8(text, i);
    const std::size_t next = i + cp.width;
    if (is_space_cp(cp.value)) {
      flush_word();
      flush_punct();
      i = next;
      continue;
    }
    bool word_char;
    if (is_hyphen_cp(cp.value)) {
      // a hyphen joins its neighbours only when compounds are kept intact
      word_char = !config.split_hyphens && !word.empty() && is_word_start(text, next);
    } else {
      word_char = !is_punct_cp(cp.value);
    }
    if (word_char) {
      flush_punct();
      append_utf8(word, config.lowercase ? lower_cp(cp.value) : cp.value);
    } else {
      flush_word();
      append_utf8(punct, cp.value);
    }
    i = next;
  }
  flush_word();
  flush_punct();
  return out;
}

Stopwords Stopwords::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file: " + path);
  Stopwords s;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string entry = trim_copy(line);
    if (entry.empty()) continue;
    for (char& ch : entry) {
      ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    s.words_.insert(std::move(entry));
  }
  return s;
}

const Stopwords& stopwords_for(const TokenizerConfig& config) {
  if (config.stopword_path.empty()) return Stopwords::builtin();
  static std::mutex mutex;
  static std::unordered_map<std::string, Stopwords> cache;
  std::scoped_lock lock(mutex);
  auto it = cache.find(config.stopword_path);
  if (it == cache.end()) {
    it = cache.emplace(config.stopword_path, Stopwords::from_file(config.stopword_path)).first;
  }
  return it->second;
}

bool is_stopword(std::string_view token, const TokenizerConfig& config) {
  return stopwords_for(config).contains(token);
}

std::vector<NGram> extract_ngrams(const std::vector<Token>& tokens, int n) {
  if (n < 1 || n > kMaxNgram) {
    throw Error("n-gram order out of range [1, " + std::to_string(kMaxNgram) +
                "]: " + std::to_string(n));
  }
  std::vector<NGram> out;
  if (tokens.size() < static_cast<std::size_t>(n)) return out;
  out.reserve(tokens.size() - n + 1);
  for (std::size_t pos = 0; pos + n <= tokens.size(); ++pos) {
    out.emplace_back(tokens.begin() + pos, tokens.begin() + pos + n);
  }
  return out;
}

bool contains_ngram(const std::vector<Token>& haystack, const NGram& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t pos = 0; pos + needle.size() <= haystack.size(); ++pos) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (haystack[pos + k] != needle[k]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

std::string join_tokens(const NGram& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace rougekit
