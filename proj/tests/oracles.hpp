#pragma once

// Slow, obviously-correct reference implementations used as test oracles.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

inline std::size_t rank1(const std::vector<bool>& bits, std::size_t i) {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(i), true));
}

// 1-based: position of the k-th one, or bits.size() if there is none
inline std::size_t select1(const std::vector<bool>& bits, std::size_t k) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] && ++seen == k) return i;
  }
  return bits.size();
}

template <class Sym>
std::size_t rank(const std::vector<Sym>& s, uint64_t c, std::size_t i) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i), [&](Sym x) { return x == c; }));
}

template <class Sym>
std::vector<uint32_t> suffix_array(const std::vector<Sym>& s) {
  std::vector<uint32_t> sa(s.size());
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = static_cast<uint32_t>(i);
  std::sort(sa.begin(), sa.end(), [&](uint32_t a, uint32_t b) {
    return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
  });
  return sa;
}

// last column of the sorted rotations
template <class Sym>
std::vector<Sym> bwt(const std::vector<Sym>& s) {
  const auto sa = suffix_array(s);
  std::vector<Sym> out(s.size());
  for (std::size_t i = 0; i < sa.size(); ++i) out[i] = s[(sa[i] + s.size() - 1) % s.size()];
  return out;
}

// overlapping occurrences; the empty pattern occurs at every one of |text|+1 positions
inline uint64_t count(std::string_view text, std::string_view q) {
  if (q.empty()) return text.size() + 1;
  uint64_t n = 0;
  for (std::size_t pos = text.find(q); pos != std::string_view::npos; pos = text.find(q, pos + 1)) ++n;
  return n;
}

inline uint64_t kr_hash(std::string_view s, uint64_t base, uint64_t prime) {
  unsigned __int128 h = 0;
  for (unsigned char c : s) h = (h * base + c) % prime;
  return static_cast<uint64_t>(h);
}

struct Parse {
  std::vector<std::string> dictionary;
  std::vector<uint32_t> phrase_ids;
};

// Prefix-free parse of text (last byte = unique sentinel) by direct
// definition: trigger starts, cyclic phrases between them extended by w,
// rotated to begin at the sentinel, ranked among the distinct phrases.
inline Parse parse(std::string_view text, std::size_t w, const std::function<bool(std::string_view)>& is_trigger) {
  const std::size_t n = text.size();
  std::vector<std::size_t> starts{n - 1};
  for (std::size_t i = 0; i + w <= n - 1; ++i) {
    if (is_trigger(text.substr(i, w))) starts.push_back(i);
  }
  std::sort(starts.begin(), starts.end());
  auto cyclic = [&](std::size_t from, std::size_t len) {
    std::string out;
    for (std::size_t k = 0; k < len; ++k) out.push_back(text[(from + k) % n]);
    return out;
  };
  std::vector<std::string> phrases;
  // starts.back() is the sentinel; walk the triggers cyclically from there
  std::vector<std::size_t> order{n - 1};
  order.insert(order.end(), starts.begin(), starts.end() - 1);
  for (std::size_t j = 0; j < order.size(); ++j) {
    const std::size_t a = order[j];
    const std::size_t b = order[(j + 1) % order.size()];
    const std::size_t len = (b + n - a) % n;
    phrases.push_back(cyclic(a, (len == 0 ? n : len) + w));
  }
  std::set<std::string> distinct(phrases.begin(), phrases.end());
  Parse out;
  out.dictionary.assign(distinct.begin(), distinct.end());
  for (const auto& ph : phrases) {
    out.phrase_ids.push_back(static_cast<uint32_t>(
        std::lower_bound(out.dictionary.begin(), out.dictionary.end(), ph) - out.dictionary.begin()));
  }
  return out;
}

inline std::string random_string(std::mt19937_64& rng, std::size_t len, std::string_view alphabet) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len, ' ');
  for (auto& c : s) c = alphabet[pick(rng)];
  return s;
}

}  // namespace oracle
