#include "harmlab/grigorchuk.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace harmlab::grig {

namespace {

constexpr uint8_t kA = 0;

// Product inside the Klein four-group {b,c,d}: distinct x,y in {1,2,3}
// multiply to the third letter.
inline uint8_t klein(uint8_t x, uint8_t y) { return static_cast<uint8_t>(6 - x - y); }

// Section of a single letter at subtree side in {0,1}.
// a contributes nothing (255 = empty), b=(a,c), c=(a,d), d=(e,b).
constexpr uint8_t kSection[4][2] = {
    {255, 255},  // a
    {kA, 2},     // b -> (a, c)
    {kA, 3},     // c -> (a, d)
    {255, 1},    // d -> (e, b)
};

std::string key_of(const Word& w) { return std::string(w.begin(), w.end()); }

// Process-wide memo tables; elements are immutable so sharing is safe
// behind a mutex.
std::mutex& memo_mutex() {
  static std::mutex m;
  return m;
}
std::unordered_map<std::string, bool>& trivial_memo() {
  static std::unordered_map<std::string, bool> t;
  return t;
}
std::unordered_map<std::string, std::string>& key_memo() {
  static std::unordered_map<std::string, std::string> t;
  return t;
}

}  // namespace

Word reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (uint8_t c : w) {
    if (c > 3) throw std::invalid_argument("grigorchuk letter out of range");
    if (out.empty()) {
      out.push_back(c);
      continue;
    }
    uint8_t t = out.back();
    if (t == c) {
      out.pop_back();  // every letter is an involution
    } else if (t != kA && c != kA) {
      out.back() = klein(t, c);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Word concat_reduce(const Word& lhs, const Word& rhs) {
  Word w;
  w.reserve(lhs.size() + rhs.size());
  w.insert(w.end(), lhs.begin(), lhs.end());
  w.insert(w.end(), rhs.begin(), rhs.end());
  return reduce(std::move(w));
}

std::pair<Word, Word> sections(const Word& w) {
  Word s[2];
  // Scan with the running subtree position: a letter acts on the side the
  // prefix moved us to, and 'a' flips the side.
  for (int side = 0; side < 2; ++side) {
    int pos = side;
    for (uint8_t c : w) {
      if (c == kA) {
        pos ^= 1;
      } else {
        uint8_t sec = kSection[c][pos];
        if (sec != 255) s[side].push_back(sec);
      }
    }
  }
  return {reduce(std::move(s[0])), reduce(std::move(s[1]))};
}

bool is_trivial(const Word& w) {
  if (w.empty()) return true;
  if (w.size() == 1) return false;
  size_t a_count = 0;
  for (uint8_t c : w) a_count += (c == kA);
  if (a_count % 2 != 0) return false;  // swaps the first level

  const std::string key = key_of(w);
  {
    std::lock_guard<std::mutex> lock(memo_mutex());
    auto it = trivial_memo().find(key);
    if (it != trivial_memo().end()) return it->second;
  }
  auto [s0, s1] = sections(w);
  const bool result = is_trivial(s0) && is_trivial(s1);
  std::lock_guard<std::mutex> lock(memo_mutex());
  trivial_memo().emplace(key, result);
  return result;
}

std::string canonical_key(const Word& w) {
  const std::string key = key_of(w);
  {
    std::lock_guard<std::mutex> lock(memo_mutex());
    auto it = key_memo().find(key);
    if (it != key_memo().end()) return it->second;
  }

  std::string result;
  // Nucleus membership: w equals one of e,a,b,c,d iff w * letter is
  // trivial (the candidates are involutions).
  if (is_trivial(w)) {
    result = "e";
  } else {
    for (uint8_t c = 0; c <= 3 && result.empty(); ++c) {
      if (is_trivial(concat_reduce(w, Word{c}))) result = std::string(1, "abcd"[c]);
    }
  }
  if (result.empty()) {
    size_t a_count = 0;
    for (uint8_t c : w) a_count += (c == kA);
    auto [s0, s1] = sections(w);
    result = "(";
    result += (a_count % 2 != 0) ? '1' : '0';
    result += canonical_key(s0);
    result += canonical_key(s1);
    result += ')';
  }

  std::lock_guard<std::mutex> lock(memo_mutex());
  key_memo().emplace(key, result);
  return result;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (uint8_t c : w) s += "abcd"[c];
  return s;
}

Word parse_word(const std::string& s) {
  Word w;
  if (s == "e" || s.empty()) return w;
  for (char c : s) {
    const char* p = "abcd";
    const char* hit = nullptr;
    for (int i = 0; i < 4; ++i) {
      if (p[i] == c) hit = p + i;
    }
    if (!hit) throw std::invalid_argument("bad grigorchuk word: " + s);
    w.push_back(static_cast<uint8_t>(hit - p));
  }
  return reduce(std::move(w));
}

}  // namespace harmlab::grig
