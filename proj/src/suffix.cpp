#include "pfpfm/suffix.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace pfpfm {

namespace {

constexpr uint32_t kEmpty = std::numeric_limits<uint32_t>::max();

template <class Sym>
class InducedSorter {
 public:
  InducedSorter(std::span<const Sym> s, uint32_t alphabet_size, std::span<uint32_t> sa)
      : s_(s), n_(static_cast<uint32_t>(s.size())), sigma_(alphabet_size), sa_(sa) {}

  void run() {
    if (n_ == 1) {
      sa_[0] = 0;
      return;
    }
    classify();
    count_buckets();

    // Stage 1: sort LMS substrings.
    std::fill(sa_.begin(), sa_.end(), kEmpty);
    bucket_tails();
    for (uint32_t i = 1; i < n_; ++i) {
      if (is_lms(i)) sa_[--bucket_[s_[i]]] = i;
    }
    induce();

    // Compact sorted LMS positions into the front of sa.
    uint32_t n1 = 0;
    for (uint32_t i = 0; i < n_; ++i) {
      if (is_lms(sa_[i])) sa_[n1++] = sa_[i];
    }

    // Name LMS substrings; names are stored at sa[n1 + pos / 2], which is free
    // since LMS positions are at least two apart.
    std::fill(sa_.begin() + n1, sa_.end(), kEmpty);
    uint32_t names = 0;
    uint32_t prev = kEmpty;
    for (uint32_t i = 0; i < n1; ++i) {
      const uint32_t pos = sa_[i];
      if (prev == kEmpty || !equal_lms(prev, pos)) ++names;
      prev = pos;
      sa_[n1 + pos / 2] = names - 1;
    }

    std::vector<uint32_t> reduced;
    reduced.reserve(n1);
    for (uint32_t i = n1; i < n_; ++i) {
      if (sa_[i] != kEmpty) reduced.push_back(sa_[i]);
    }

    // Stage 2: order of LMS suffixes.
    std::vector<uint32_t> reduced_sa(n1);
    if (names < n1) {
      InducedSorter<uint32_t>(reduced, names, reduced_sa).run();
    } else {
      for (uint32_t i = 0; i < n1; ++i) reduced_sa[reduced[i]] = i;
    }
    reduced.clear();
    reduced.shrink_to_fit();

    // reduced_sa[i] -> text position of the i-th LMS suffix
    std::vector<uint32_t> lms_positions;
    lms_positions.reserve(n1);
    for (uint32_t i = 1; i < n_; ++i) {
      if (is_lms(i)) lms_positions.push_back(i);
    }
    for (auto& r : reduced_sa) r = lms_positions[r];
    lms_positions.clear();
    lms_positions.shrink_to_fit();

    // Stage 3: induce the full order from sorted LMS suffixes.
    std::fill(sa_.begin(), sa_.end(), kEmpty);
    bucket_tails();
    for (uint32_t i = n1; i-- > 0;) {
      const uint32_t j = reduced_sa[i];
      sa_[--bucket_[s_[j]]] = j;
    }
    induce();
  }

 private:
  bool is_s(uint32_t i) const { return (stype_[i / 64] >> (i % 64)) & 1U; }
  bool is_lms(uint32_t i) const { return i != kEmpty && i > 0 && is_s(i) && !is_s(i - 1); }

  void classify() {
    stype_.assign((n_ + 63) / 64, 0);
    auto set_s = [&](uint32_t i) { stype_[i / 64] |= uint64_t{1} << (i % 64); };
    set_s(n_ - 1);
    for (uint32_t i = n_ - 1; i-- > 0;) {
      if (s_[i] < s_[i + 1] || (s_[i] == s_[i + 1] && is_s(i + 1))) set_s(i);
    }
  }

  void count_buckets() {
    counts_.assign(sigma_, 0);
    for (Sym c : s_) ++counts_[c];
    bucket_.resize(sigma_);
  }

  void bucket_heads() {
    uint32_t sum = 0;
    for (uint32_t c = 0; c < sigma_; ++c) {
      bucket_[c] = sum;
      sum += counts_[c];
    }
  }

  void bucket_tails() {
    uint32_t sum = 0;
    for (uint32_t c = 0; c < sigma_; ++c) {
      sum += counts_[c];
      bucket_[c] = sum;
    }
  }

  void induce() {
    bucket_heads();
    for (uint32_t i = 0; i < n_; ++i) {
      const uint32_t p = sa_[i];
      if (p == kEmpty || p == 0) continue;
      if (!is_s(p - 1)) sa_[bucket_[s_[p - 1]]++] = p - 1;
    }
    bucket_tails();
    for (uint32_t i = n_; i-- > 0;) {
      const uint32_t p = sa_[i];
      if (p == kEmpty || p == 0) continue;
      if (is_s(p - 1)) sa_[--bucket_[s_[p - 1]]] = p - 1;
    }
  }

  bool equal_lms(uint32_t a, uint32_t b) const {
    for (uint32_t d = 0;; ++d) {
      if (a + d >= n_ || b + d >= n_) return false;
      if (s_[a + d] != s_[b + d] || is_s(a + d) != is_s(b + d)) return false;
      if (d > 0) {
        const bool end_a = is_lms(a + d);
        const bool end_b = is_lms(b + d);
        if (end_a || end_b) return end_a && end_b;
      }
    }
  }

  std::span<const Sym> s_;
  uint32_t n_;
  uint32_t sigma_;
  std::span<uint32_t> sa_;
  std::vector<uint64_t> stype_;
  std::vector<uint32_t> counts_;
  std::vector<uint32_t> bucket_;
};

template <class Sym>
std::vector<uint32_t> suffix_array(std::span<const Sym> s, uint32_t alphabet_size) {
  if (s.empty()) throw BuildError("suffix array: empty input");
  if (s.size() >= kEmpty) throw BuildError("suffix array: input longer than 2^32 - 2 symbols");
  if (alphabet_size == 0) throw BuildError("suffix array: empty alphabet");
  if (s.back() != 0) throw BuildError("suffix array: last symbol must be the sentinel 0");
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == 0) throw BuildError("suffix array: sentinel 0 occurs before the end (position " + std::to_string(i) + ")");
    if (s[i] >= alphabet_size) throw BuildError("suffix array: symbol outside alphabet");
  }
  std::vector<uint32_t> sa(s.size());
  InducedSorter<Sym>(s, alphabet_size, sa).run();
  return sa;
}

}  // namespace

std::vector<uint32_t> build_suffix_array(std::span<const uint8_t> s, uint32_t alphabet_size) {
  return suffix_array(s, alphabet_size);
}

std::vector<uint32_t> build_suffix_array(std::span<const uint32_t> s, uint32_t alphabet_size) {
  return suffix_array(s, alphabet_size);
}

}  // namespace pfpfm
