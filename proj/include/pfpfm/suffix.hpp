#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace pfpfm {

/// Raised when an index cannot be built from its input.
class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Suffix array construction by induced sorting (SA-IS).
//
// Input symbols must lie in [0, alphabet_size) and the last symbol must be the
// unique occurrence of 0; under that condition suffix order equals rotation
// order, which is what the BWT needs.  Texts are limited to 2^32 - 2 symbols.
std::vector<uint32_t> build_suffix_array(std::span<const uint8_t> s, uint32_t alphabet_size);
std::vector<uint32_t> build_suffix_array(std::span<const uint32_t> s, uint32_t alphabet_size);

// BWT[i] = s[(sa[i] + n - 1) mod n]
template <class Sym>
std::vector<Sym> bwt_from_sa(std::span<const Sym> s, std::span<const uint32_t> sa) {
  if (s.size() != sa.size()) throw std::invalid_argument("bwt_from_sa: length mismatch");
  const std::size_t n = s.size();
  std::vector<Sym> bwt(n);
  for (std::size_t i = 0; i < n; ++i) bwt[i] = s[sa[i] == 0 ? n - 1 : sa[i] - 1];
  return bwt;
}

// C[c] = number of symbols smaller than c; size alphabet_size + 1, C[sigma] = n.
template <class Sym>
std::vector<uint64_t> build_c_array(std::span<const Sym> s, uint64_t alphabet_size) {
  std::vector<uint64_t> c(alphabet_size + 1, 0);
  for (Sym x : s) {
    if (x >= alphabet_size) throw std::invalid_argument("build_c_array: symbol outside alphabet");
    ++c[x + 1];
  }
  for (uint64_t i = 1; i <= alphabet_size; ++i) c[i] += c[i - 1];
  return c;
}

}  // namespace pfpfm
