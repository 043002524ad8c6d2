#include "pfpfm/succinct.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace pfpfm {

namespace {

constexpr uint64_t kNoSparse = std::numeric_limits<uint64_t>::max();

// Position of the k-th (0-based) set bit of a word that has more than k ones.
unsigned select_in_word(uint64_t word, unsigned k) {
  for (unsigned i = 0; i < k; ++i) word &= word - 1;
  return static_cast<unsigned>(std::countr_zero(word));
}

}  // namespace

BitVector::BitVector(std::span<const uint64_t> words, std::size_t n_bits) : n_bits_(n_bits) {
  if (words.size() * 64 < n_bits) throw std::invalid_argument("BitVector: not enough words for n_bits");
  // one extra chunk so rank(n_bits) never reads past the end
  chunks_.resize(n_bits / kBitsPerChunk + 1);
  const std::size_t n_words = (n_bits + 63) / 64;
  for (std::size_t w = 0; w < n_words; ++w) {
    uint64_t word = words[w];
    if (w == n_words - 1 && n_bits % 64 != 0) word &= (uint64_t{1} << (n_bits % 64)) - 1;
    chunks_[w / kWordsPerChunk].words[w % kWordsPerChunk] = word;
  }
  uint64_t ones = 0;
  for (auto& ch : chunks_) {
    ch.ones_before = ones;
    for (uint64_t word : ch.words) ones += std::popcount(word);
  }
  n_ones_ = ones;
  build_select();
}

BitVector::BitVector(const std::vector<bool>& bits)
    : BitVector(
          [&] {
            std::vector<uint64_t> words((bits.size() + 63) / 64, 0);
            for (std::size_t i = 0; i < bits.size(); ++i) {
              if (bits[i]) words[i / 64] |= uint64_t{1} << (i % 64);
            }
            return words;
          }(),
          bits.size()) {}

void BitVector::build_select() {
  select_hints_.clear();
  sparse_index_.clear();
  sparse_positions_.clear();
  const std::size_t blocks = (n_ones_ + kSelectSample - 1) / kSelectSample;
  select_hints_.reserve(blocks + 1);
  std::size_t next_target = 1;  // 1-based rank of the next sampled one
  for (std::size_t c = 0; c < chunks_.size() && next_target <= n_ones_; ++c) {
    const std::size_t end_ones =
        c + 1 < chunks_.size() ? chunks_[c + 1].ones_before : static_cast<std::size_t>(n_ones_);
    while (next_target <= n_ones_ && next_target <= end_ones) {
      select_hints_.push_back(c);
      next_target += kSelectSample;
    }
  }
  select_hints_.push_back(chunks_.empty() ? 0 : chunks_.size() - 1);

  sparse_index_.assign(blocks, kNoSparse);
  for (std::size_t s = 0; s < blocks; ++s) {
    if (select_hints_[s + 1] - select_hints_[s] <= kSparseChunkSpan) continue;
    sparse_index_[s] = sparse_positions_.size();
    const std::size_t first = s * kSelectSample + 1;
    const std::size_t last = std::min<std::size_t>(first + kSelectSample - 1, n_ones_);
    std::size_t chunk = select_hints_[s];
    for (std::size_t k = first; k <= last; ++k) {
      while (chunk + 1 < chunks_.size() && chunks_[chunk + 1].ones_before < k) ++chunk;
      sparse_positions_.push_back(select_in_chunk(chunk, k));
    }
  }
}

bool BitVector::get(std::size_t i) const {
  if (i >= n_bits_) throw std::out_of_range("BitVector::get: position " + std::to_string(i) + " out of range");
  const Chunk& ch = chunks_[i / kBitsPerChunk];
  const std::size_t r = i % kBitsPerChunk;
  return (ch.words[r / 64] >> (r % 64)) & 1U;
}

std::size_t BitVector::rank1(std::size_t i) const {
  if (i > n_bits_) throw std::out_of_range("BitVector::rank1: position " + std::to_string(i) + " out of range");
  return rank1_unchecked(i);
}

std::size_t BitVector::select_in_chunk(std::size_t chunk, std::size_t k) const {
  const Chunk& ch = chunks_[chunk];
  std::size_t remaining = k - ch.ones_before - 1;  // 0-based within chunk
  for (std::size_t w = 0; w < kWordsPerChunk; ++w) {
    const auto pc = static_cast<std::size_t>(std::popcount(ch.words[w]));
    if (remaining < pc) {
      return chunk * kBitsPerChunk + w * 64 + select_in_word(ch.words[w], static_cast<unsigned>(remaining));
    }
    remaining -= pc;
  }
  assert(false && "select_in_chunk: chunk does not hold the requested one");
  return n_bits_;
}

std::size_t BitVector::select1_or_size(std::size_t k) const {
  if (k == 0 || k > n_ones_) return n_bits_;
  const std::size_t s = (k - 1) / kSelectSample;
  if (sparse_index_[s] != kNoSparse) return sparse_positions_[sparse_index_[s] + (k - 1) % kSelectSample];
  // last chunk in [lo, hi] whose ones_before < k
  std::size_t lo = select_hints_[s];
  std::size_t hi = select_hints_[s + 1];
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (chunks_[mid].ones_before < k) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return select_in_chunk(lo, k);
}

std::size_t BitVector::select1(std::size_t k) const {
  if (k == 0 || k > n_ones_) {
    throw std::out_of_range("BitVector::select1: no occurrence " + std::to_string(k) + " (popcount " +
                            std::to_string(n_ones_) + ")");
  }
  return select1_or_size(k);
}

std::vector<uint64_t> BitVector::to_words() const {
  std::vector<uint64_t> words((n_bits_ + 63) / 64);
  for (std::size_t w = 0; w < words.size(); ++w) words[w] = chunks_[w / kWordsPerChunk].words[w % kWordsPerChunk];
  return words;
}

void BitVector::save(ByteWriter& out) const {
  out.put<uint64_t>(n_bits_);
  out.put_array(to_words());
}

BitVector BitVector::load(ByteReader& in) {
  const auto n_bits = in.get<uint64_t>();
  const auto words = in.get_array<uint64_t>();
  if (words.size() != (n_bits + 63) / 64) throw FormatError("bitvector word count does not match its length");
  return BitVector(words, n_bits);
}

std::size_t BitVector::size_in_bytes() const {
  return chunks_.size() * sizeof(Chunk) + (select_hints_.size() + sparse_index_.size() + sparse_positions_.size()) * 8;
}

// ---------------------------------------------------------------------------

WaveletTree::WaveletTree(std::span<const uint32_t> seq, uint64_t alphabet_size) { build(seq, alphabet_size); }

WaveletTree::WaveletTree(std::span<const uint8_t> seq, uint64_t alphabet_size) { build(seq, alphabet_size); }

template <class Sym>
void WaveletTree::build(std::span<const Sym> seq, uint64_t alphabet_size) {
  if (alphabet_size == 0) throw std::invalid_argument("WaveletTree: alphabet size must be at least 1");
  if (alphabet_size > (uint64_t{1} << 32)) throw std::invalid_argument("WaveletTree: alphabet too large");
  n_ = seq.size();
  sigma_ = alphabet_size;
  const auto depth = static_cast<std::size_t>(std::max<int>(1, std::bit_width(alphabet_size - 1)));

  std::vector<uint64_t> freq(alphabet_size, 0);
  for (Sym c : seq) {
    if (c >= alphabet_size) throw std::invalid_argument("WaveletTree: symbol outside alphabet");
    ++freq[c];
  }

  std::vector<Sym> cur(seq.begin(), seq.end());
  std::vector<Sym> next(n_);
  levels_.reserve(depth);
  zeros_.reserve(depth);
  for (std::size_t l = 0; l < depth; ++l) {
    const std::size_t shift = depth - 1 - l;
    std::vector<uint64_t> words((n_ + 63) / 64, 0);
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if ((cur[i] >> shift) & 1U) {
        words[i / 64] |= uint64_t{1} << (i % 64);
      } else {
        ++zeros;
      }
    }
    std::size_t z = 0, o = zeros;
    for (std::size_t i = 0; i < n_; ++i) {
      if ((cur[i] >> shift) & 1U) {
        next[o++] = cur[i];
      } else {
        next[z++] = cur[i];
      }
    }
    levels_.emplace_back(words, n_);
    zeros_.push_back(zeros);
    cur.swap(next);
  }

  // The bottom level is ordered by the bit-reversed symbol code.
  group_start_.assign(alphabet_size, 0);
  uint64_t acc = 0;
  const uint64_t codes = uint64_t{1} << depth;
  for (uint64_t r = 0; r < codes; ++r) {
    uint64_t c = 0;
    for (std::size_t b = 0; b < depth; ++b) c |= ((r >> b) & 1U) << (depth - 1 - b);
    if (c >= alphabet_size) continue;
    group_start_[c] = acc;
    acc += freq[c];
  }
}

uint32_t WaveletTree::access(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("WaveletTree::access: position " + std::to_string(i) + " out of range");
  uint32_t c = 0;
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const BitVector& bv = levels_[l];
    const std::size_t r = bv.rank1_unchecked(i);
    const bool bit = bv.get(i);
    c = (c << 1) | static_cast<uint32_t>(bit);
    i = bit ? zeros_[l] + r : i - r;
  }
  return c;
}

std::size_t WaveletTree::rank(uint64_t c, std::size_t i) const {
  if (i > n_) throw std::out_of_range("WaveletTree::rank: position " + std::to_string(i) + " out of range");
  if (c >= sigma_) return 0;
  return rank_pair(static_cast<uint32_t>(c), 0, i).second;
}

void WaveletTree::save(ByteWriter& out) const {
  out.put<uint64_t>(n_);
  out.put<uint64_t>(sigma_);
  out.put<uint64_t>(levels_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    out.put<uint64_t>(zeros_[l]);
    levels_[l].save(out);
  }
  out.put_array(group_start_);
}

WaveletTree WaveletTree::load(ByteReader& in) {
  WaveletTree wt;
  wt.n_ = in.get<uint64_t>();
  wt.sigma_ = in.get<uint64_t>();
  const auto depth = in.get<uint64_t>();
  if (wt.sigma_ == 0 || depth == 0 || depth > 32) throw FormatError("wavelet tree header is inconsistent");
  for (uint64_t l = 0; l < depth; ++l) {
    wt.zeros_.push_back(in.get<uint64_t>());
    wt.levels_.push_back(BitVector::load(in));
    if (wt.levels_.back().size() != wt.n_ || wt.zeros_.back() > wt.n_) {
      throw FormatError("wavelet tree level does not match sequence length");
    }
  }
  wt.group_start_ = in.get_array<uint64_t>();
  if (wt.group_start_.size() != wt.sigma_) throw FormatError("wavelet tree symbol table has the wrong size");
  return wt;
}

std::size_t WaveletTree::size_in_bytes() const {
  std::size_t total = (zeros_.size() + group_start_.size()) * 8;
  for (const auto& bv : levels_) total += bv.size_in_bytes();
  return total;
}

}  // namespace pfpfm
