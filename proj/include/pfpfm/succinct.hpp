#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pfpfm/serialize.hpp"

namespace pfpfm {

/// Static bitvector with constant-time rank and bounded-time select.
///
/// Bits live in 64-byte chunks: one word with the number of ones preceding
/// the chunk followed by seven payload words, so rank touches a single cache
/// line.  Select keeps the chunk of every 1024th one; sample blocks whose ones
/// are spread over more than 1024 chunks store their positions explicitly,
/// which bounds the binary search to ten steps.
///
/// The structure is plain (not run-length compressed).  The marking bitvector
/// of a two-level index has one run per distinct trigger string and would
/// compress well with a run-length encoding; that is left as an optimization.
class BitVector {
 public:
  static constexpr std::size_t kWordsPerChunk = 7;
  static constexpr std::size_t kBitsPerChunk = kWordsPerChunk * 64;

  BitVector() : BitVector(std::span<const uint64_t>{}, 0) {}

  /// Bit i is (words[i / 64] >> (i % 64)) & 1.  Bits past n_bits are ignored.
  BitVector(std::span<const uint64_t> words, std::size_t n_bits);

  explicit BitVector(const std::vector<bool>& bits);

  std::size_t size() const { return n_bits_; }
  std::size_t count_ones() const { return n_ones_; }

  /// Bit at position i; throws std::out_of_range when i >= size().
  bool get(std::size_t i) const;

  /// Number of ones in [0, i); throws std::out_of_range when i > size().
  std::size_t rank1(std::size_t i) const;

  std::size_t rank1_unchecked(std::size_t i) const {
    assert(i <= n_bits_);
    const Chunk& ch = chunks_[i / kBitsPerChunk];
    const std::size_t r = i % kBitsPerChunk;
    const std::size_t full = r / 64;
    std::size_t ones = ch.ones_before;
    for (std::size_t k = 0; k < full; ++k) ones += std::popcount(ch.words[k]);
    if (const std::size_t tail = r % 64; tail != 0) {
      ones += std::popcount(ch.words[full] & ((uint64_t{1} << tail) - 1));
    }
    return ones;
  }

  /// Position of the k-th one, k 1-based; throws std::out_of_range when no
  /// such one exists.
  std::size_t select1(std::size_t k) const;

  /// Total variant of select1: returns size() when k is out of range.
  std::size_t select1_or_size(std::size_t k) const;

  /// The bits as plain little-endian words (the constructor's input format).
  std::vector<uint64_t> to_words() const;

  void save(ByteWriter& out) const;
  static BitVector load(ByteReader& in);

  std::size_t size_in_bytes() const;

 private:
  struct alignas(64) Chunk {
    uint64_t ones_before = 0;
    uint64_t words[kWordsPerChunk] = {};
  };

  static constexpr std::size_t kSelectSample = 1024;
  static constexpr std::size_t kSparseChunkSpan = 1024;

  void build_select();
  std::size_t select_in_chunk(std::size_t chunk, std::size_t k) const;

  std::size_t n_bits_ = 0;
  std::size_t n_ones_ = 0;
  std::vector<Chunk> chunks_;
  // chunk holding the (s * kSelectSample + 1)-th one, plus a final entry
  std::vector<uint64_t> select_hints_;
  // per sample block: index into sparse_positions_ or kNoSparse
  std::vector<uint64_t> sparse_index_;
  std::vector<uint64_t> sparse_positions_;
};

/// Balanced wavelet structure over an integer alphabet [0, alphabet_size).
///
/// Implemented as a wavelet matrix: ceil(log2 sigma) levels, each a
/// BitVector of the sequence length, most significant bit first.  Every
/// rank or access costs one bitvector rank per level.
class WaveletTree {
 public:
  WaveletTree() = default;
  WaveletTree(std::span<const uint32_t> seq, uint64_t alphabet_size);
  WaveletTree(std::span<const uint8_t> seq, uint64_t alphabet_size);

  std::size_t size() const { return n_; }
  uint64_t alphabet_size() const { return sigma_; }
  std::size_t levels() const { return levels_.size(); }

  /// Symbol at position i; throws std::out_of_range when i >= size().
  uint32_t access(std::size_t i) const;

  /// Occurrences of c in [0, i).  Symbols outside the alphabet have rank 0.
  /// Throws std::out_of_range when i > size().
  std::size_t rank(uint64_t c, std::size_t i) const;

  /// {rank(c, i), rank(c, j)} in one traversal; c must be < alphabet_size()
  /// and i, j <= size().
  std::pair<std::size_t, std::size_t> rank_pair(uint32_t c, std::size_t i, std::size_t j) const {
    assert(c < sigma_ && i <= n_ && j <= n_);
    const std::size_t depth = levels_.size();
    for (std::size_t l = 0; l < depth; ++l) {
      const BitVector& bv = levels_[l];
      const std::size_t ri = bv.rank1_unchecked(i);
      const std::size_t rj = bv.rank1_unchecked(j);
      if ((c >> (depth - 1 - l)) & 1U) {
        i = zeros_[l] + ri;
        j = zeros_[l] + rj;
      } else {
        i -= ri;
        j -= rj;
      }
    }
    return {i - group_start_[c], j - group_start_[c]};
  }

  void save(ByteWriter& out) const;
  static WaveletTree load(ByteReader& in);

  std::size_t size_in_bytes() const;

 private:
  template <class Sym>
  void build(std::span<const Sym> seq, uint64_t alphabet_size);

  std::size_t n_ = 0;
  uint64_t sigma_ = 0;
  std::vector<BitVector> levels_;
  std::vector<uint64_t> zeros_;
  // start of each symbol's block in the bottom-level order
  std::vector<uint64_t> group_start_;
};

}  // namespace pfpfm
