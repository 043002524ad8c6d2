#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "pfpfm/succinct.hpp"

using pfpfm::BitVector;
using pfpfm::WaveletTree;

namespace {

std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<bool> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = coin(rng);
  return bits;
}

// prefix-sum oracle; the linear rank oracle is too slow for 10^6-bit vectors
void check_against_prefix_sums(const std::vector<bool>& bits, std::mt19937_64& rng, std::size_t probes) {
  const BitVector bv(bits);
  std::vector<std::size_t> prefix(bits.size() + 1, 0);
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    prefix[i + 1] = prefix[i] + (bits[i] ? 1 : 0);
    if (bits[i]) ones.push_back(i);
  }
  REQUIRE(bv.size() == bits.size());
  REQUIRE(bv.count_ones() == ones.size());
  std::uniform_int_distribution<std::size_t> pos(0, bits.size());
  for (std::size_t t = 0; t < probes; ++t) {
    const std::size_t i = pos(rng);
    REQUIRE(bv.rank1(i) == prefix[i]);
    if (i < bits.size()) REQUIRE(bv.get(i) == bits[i]);
  }
  if (!ones.empty()) {
    std::uniform_int_distribution<std::size_t> kth(1, ones.size());
    for (std::size_t t = 0; t < probes; ++t) {
      const std::size_t k = kth(rng);
      REQUIRE(bv.select1(k) == ones[k - 1]);
    }
  }
  CHECK(bv.select1_or_size(ones.size() + 1) == bits.size());
}

}  // namespace

TEST_CASE("bitvector rank and select match the naive oracle on small vectors") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {0UL, 1UL, 63UL, 64UL, 65UL, 447UL, 448UL, 449UL, 1000UL, 5000UL}) {
    for (double density : {0.0, 0.01, 0.5, 0.99, 1.0}) {
      const auto bits = random_bits(rng, n, density);
      const BitVector bv(bits);
      for (std::size_t i = 0; i <= n; ++i) REQUIRE(bv.rank1(i) == oracle::rank1(bits, i));
      const std::size_t ones = oracle::rank1(bits, n);
      for (std::size_t k = 1; k <= ones; ++k) REQUIRE(bv.select1(k) == oracle::select1(bits, k));
      CHECK_THROWS_AS(bv.select1(ones + 1), std::out_of_range);
      CHECK_THROWS_AS(bv.select1(0), std::out_of_range);
      CHECK_THROWS_AS(bv.rank1(n + 1), std::out_of_range);
    }
  }
}

TEST_CASE("bitvector on a million bits with 10^4 probes per density") {
  std::mt19937_64 rng(12);
  for (double density : {0.0001, 0.001, 0.1, 0.5, 0.9}) {
    check_against_prefix_sums(random_bits(rng, 1'000'000, density), rng, 10'000);
  }
}

TEST_CASE("bitvector select across long runs of zeros") {
  // a few ones separated by far more than one select sample's worth of chunks
  std::vector<bool> bits(3'000'000, false);
  for (std::size_t i : {5UL, 999'999UL, 1'000'000UL, 2'999'999UL}) bits[i] = true;
  std::mt19937_64 rng(13);
  check_against_prefix_sums(bits, rng, 1000);

  std::vector<bool> dense(2'000'000, true);
  check_against_prefix_sums(dense, rng, 1000);
}

TEST_CASE("bitvector marks of the worked example") {
  std::vector<bool> bits(41, false);
  for (std::size_t i : {0, 1, 2, 19, 31, 32}) bits[i] = true;
  const BitVector bv(bits);
  CHECK(bv.count_ones() == 6);
  CHECK(bv.rank1(31) == 4);
  CHECK(bv.rank1(33) == 6);
  CHECK(bv.select1(4) == 19);
  CHECK(bv.select1(6) == 32);
  CHECK(bv.select1_or_size(7) == 41);
}

TEST_CASE("bitvector word constructor and round trip") {
  std::mt19937_64 rng(14);
  const auto bits = random_bits(rng, 10'007, 0.3);
  const BitVector a(bits);
  const auto words = a.to_words();
  const BitVector b(words, bits.size());
  for (std::size_t i = 0; i <= bits.size(); ++i) REQUIRE(a.rank1(i) == b.rank1(i));

  pfpfm::ByteWriter out;
  a.save(out);
  pfpfm::ByteReader in(out.buffer());
  const BitVector c = BitVector::load(in);
  CHECK(in.remaining() == 0);
  CHECK(c.to_words() == words);
  CHECK(c.size() == a.size());
  CHECK(c.count_ones() == a.count_ones());
}

TEST_CASE("wavelet tree access and rank over several alphabets") {
  std::mt19937_64 rng(15);
  for (uint64_t sigma : {2ULL, 4ULL, 256ULL, 100'000ULL}) {
    for (std::size_t n : {1UL, 2UL, 100UL, 3000UL}) {
      std::uniform_int_distribution<uint64_t> sym(0, sigma - 1);
      std::vector<uint32_t> seq(n);
      for (auto& x : seq) x = static_cast<uint32_t>(sym(rng));
      const WaveletTree wt(std::span<const uint32_t>(seq), sigma);
      REQUIRE(wt.size() == n);
      for (std::size_t i = 0; i < n; ++i) REQUIRE(wt.access(i) == seq[i]);

      std::vector<uint64_t> probe_syms;
      for (std::size_t k = 0; k < 8; ++k) probe_syms.push_back(seq[sym(rng) % n]);
      for (std::size_t k = 0; k < 4; ++k) probe_syms.push_back(sym(rng));
      for (uint64_t c : probe_syms) {
        std::size_t running = 0;
        for (std::size_t i = 0; i <= n; ++i) {
          REQUIRE(wt.rank(c, i) == running);
          if (i < n && seq[i] == c) ++running;
        }
      }
      CHECK(wt.rank(sigma, n) == 0);
      CHECK_THROWS_AS(wt.access(n), std::out_of_range);
    }
  }
}

TEST_CASE("wavelet tree rank_pair agrees with two ranks") {
  std::mt19937_64 rng(16);
  std::vector<uint8_t> seq(5000);
  std::uniform_int_distribution<int> sym(0, 4);
  for (auto& x : seq) x = static_cast<uint8_t>(sym(rng));
  const WaveletTree wt(std::span<const uint8_t>(seq), 5);
  std::uniform_int_distribution<std::size_t> pos(0, seq.size());
  for (int t = 0; t < 10'000; ++t) {
    std::size_t i = pos(rng);
    std::size_t j = pos(rng);
    if (i > j) std::swap(i, j);
    const auto c = static_cast<uint32_t>(sym(rng));
    const auto [ri, rj] = wt.rank_pair(c, i, j);
    REQUIRE(ri == oracle::rank(seq, c, i));
    REQUIRE(rj == oracle::rank(seq, c, j));
  }
}

TEST_CASE("wavelet tree serialization round trip") {
  std::vector<uint32_t> seq{5, 3, 0, 4, 2, 1};
  const WaveletTree wt(std::span<const uint32_t>(seq), 6);
  pfpfm::ByteWriter out;
  wt.save(out);
  pfpfm::ByteReader in(out.buffer());
  const WaveletTree back = WaveletTree::load(in);
  for (std::size_t i = 0; i < seq.size(); ++i) CHECK(back.access(i) == seq[i]);
  pfpfm::ByteWriter again;
  back.save(again);
  CHECK(again.buffer() == out.buffer());
}
