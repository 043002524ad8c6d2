#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfpfm/pfp.hpp"
#include "pfpfm/serialize.hpp"
#include "pfpfm/succinct.hpp"
#include "pfpfm/suffix.hpp"

namespace pfpfm {

inline constexpr uint64_t kDefaultPhraseSeed = 0x5eed;

/// Inclusive range of BWT rows; empty iff lo > hi.
struct Interval {
  uint64_t lo = 1;
  uint64_t hi = 0;

  static Interval none() { return {}; }
  static Interval full(uint64_t rows) { return rows == 0 ? none() : Interval{0, rows - 1}; }

  bool empty() const { return lo > hi; }
  uint64_t size() const { return empty() ? 0 : hi - lo + 1; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return (a.empty() && b.empty()) || (a.lo == b.lo && a.hi == b.hi);
  }
};

// BWT + C array + wavelet rank over a dense integer alphabet.
class FmIndex {
 public:
  FmIndex() = default;
  FmIndex(std::span<const uint8_t> bwt, uint64_t alphabet_size);
  FmIndex(std::span<const uint32_t> bwt, uint64_t alphabet_size);

  uint64_t size() const { return bwt_.size(); }
  uint64_t alphabet_size() const { return bwt_.alphabet_size(); }
  const WaveletTree& bwt() const { return bwt_; }
  const std::vector<uint64_t>& c_array() const { return c_; }
  Interval full() const { return Interval::full(size()); }

  // One backward-search step: rows prefixed by c followed by the rows of iv.
  Interval extend(Interval iv, uint64_t c) const {
    if (iv.empty() || c >= alphabet_size()) return Interval::none();
    const auto [a, b] = bwt_.rank_pair(static_cast<uint32_t>(c), iv.lo, iv.hi + 1);
    if (a == b) return Interval::none();
    return {c_[c] + a, c_[c] + b - 1};
  }

  uint64_t lf(uint64_t row) const;

  /// Reconstructs the indexed sequence (ending with symbol 0) by LF iteration
  /// from the row of the sentinel rotation.
  std::vector<uint32_t> invert() const;

  void save(ByteWriter& out) const;
  static FmIndex load(ByteReader& in);

  std::size_t size_in_bytes() const { return bwt_.size_in_bytes() + c_.size() * 8; }

 private:
  WaveletTree bwt_;
  std::vector<uint64_t> c_;
};

/// Character-level FM-index over a byte text with the sentinel remapped to 0.
class CharFmIndex {
 public:
  static constexpr uint16_t kAbsent = 256;

  CharFmIndex() { remap_.fill(kAbsent); }
  // `code_of` maps bytes to dense codes (kAbsent when absent); `bwt` is in codes.
  CharFmIndex(const std::array<uint16_t, 256>& code_of, std::span<const uint8_t> bwt);

  const FmIndex& fm() const { return fm_; }
  uint64_t text_len() const { return fm_.size(); }  // includes the sentinel
  uint16_t code(unsigned char byte) const { return remap_[byte]; }
  unsigned char byte_of(uint32_t code) const { return symbols_[code]; }
  const std::array<uint16_t, 256>& remap_table() const { return remap_; }

  Interval backward_search(std::string_view pattern, Interval start) const {
    const auto* bytes = reinterpret_cast<const unsigned char*>(pattern.data());
    for (std::size_t i = pattern.size(); i-- > 0 && !start.empty();) {
      const uint16_t c = remap_[bytes[i]];
      if (c == kAbsent) return Interval::none();
      start = fm_.extend(start, c);
    }
    return start;
  }

  /// Text recovered from the BWT, sentinel included.
  std::string invert() const;

  void save(ByteWriter& out) const;
  static CharFmIndex load(ByteReader& in);

 private:
  std::array<uint16_t, 256> remap_;
  std::vector<unsigned char> symbols_;
  FmIndex fm_;
};

/// FM-index over phrase IDs; row i is the i-th smallest rotation of the parse.
class ParseFmIndex {
 public:
  ParseFmIndex() = default;
  ParseFmIndex(std::span<const uint32_t> bwt, uint64_t dictionary_size) : fm_(bwt, dictionary_size) {}

  const FmIndex& fm() const { return fm_; }
  uint64_t parse_len() const { return fm_.size(); }

  // Phrase IDs are consumed right to left.
  Interval backward_search(std::span<const uint32_t> phrase_ids, Interval start) const {
    for (std::size_t i = phrase_ids.size(); i-- > 0 && !start.empty();) start = fm_.extend(start, phrase_ids[i]);
    return start;
  }

  void save(ByteWriter& out) const { fm_.save(out); }
  static ParseFmIndex load(ByteReader& in);

 private:
  FmIndex fm_;
};

inline Interval backward_search(const CharFmIndex& fm, std::string_view pattern, Interval start) {
  return fm.backward_search(pattern, start);
}

inline Interval backward_search(const ParseFmIndex& fm, std::span<const uint32_t> phrase_ids, Interval start) {
  return fm.backward_search(phrase_ids, start);
}

struct IndexStats {
  uint64_t text_len = 0;  // input bytes, sentinel excluded
  uint64_t dictionary_size = 0;
  uint64_t parse_len = 0;
  double mean_phrase_len = 0;  // over parse occurrences, both trigger windows included
  // bucket k counts dictionary phrases with length in [2^k, 2^(k+1))
  std::vector<uint64_t> phrase_length_histogram;
};

enum class CountPath : uint8_t { TwoLevel, NoTrigger, NotInDictionary, Sentinel };

/// Intermediate intervals of one two-level count.
struct CountTrace {
  CountPath path = CountPath::TwoLevel;
  Interval beta;           // rows prefixed by beta (text level)
  Interval beta_in_parse;  // the same rows as parse rotations
  Interval mids_in_parse;  // after the complete phrases
  Interval mids_in_text;   // mapped back to text rows
  Interval result;         // after the ragged prefix
};

/// Two-level FM-index: a character FM-index of the text, an FM-index of its
/// prefix-free parse, the bitvector marking text rows that start with a
/// trigger window, and the phrase map used to parse queries.
class TwoLevelIndex {
 public:
  TwoLevelIndex() = default;

  const CharFmIndex& char_fm() const { return char_fm_; }
  const ParseFmIndex& parse_fm() const { return parse_fm_; }
  const BitVector& marks() const { return marks_; }
  const PhraseMap& phrase_map() const { return phrase_map_; }
  const Dictionary& dictionary() const { return phrase_map_.dictionary(); }
  const TriggerOracle& oracle() const { return oracle_; }
  const IndexStats& stats() const { return stats_; }

  /// Occurrences of q in the indexed text.
  uint64_t count(std::string_view q, CountTrace* trace = nullptr) const;

  /// Same answer using character-level backward search only.
  uint64_t count_baseline(std::string_view q) const;

  /// Rows of the text BWT -> rows of the parse BWT.  Every row of iv must be
  /// marked; throws std::logic_error otherwise.
  Interval map_char_to_parse(Interval iv) const;

  /// Rows of the parse BWT -> rows of the text BWT.
  Interval map_parse_to_char(Interval iv) const;

  std::size_t size_in_bytes() const;

  void save(ByteWriter& out) const;
  static TwoLevelIndex load(ByteReader& in);

  friend TwoLevelIndex build_index(std::string_view text, const TriggerOracle& oracle, uint64_t seed);

 private:
  CharFmIndex char_fm_;
  ParseFmIndex parse_fm_;
  BitVector marks_;
  PhraseMap phrase_map_;
  TriggerOracle oracle_ = TriggerOracle::hash_based(1, 1);
  IndexStats stats_;
};

/// Builds the two-level index of `text`; a sentinel is appended internally.
/// Throws BuildError for empty input, input containing the sentinel byte, or
/// a dictionary with 2^32 or more phrases.
TwoLevelIndex build_index(std::string_view text, const TriggerOracle& oracle, uint64_t seed = kDefaultPhraseSeed);

}  // namespace pfpfm
