#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace pfpfm {

inline constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

// Polynomial fingerprint modulo a prime in (256, 2^63):
//   f(x[0..k-1]) = sum x[i] * base^(k-1-i)  (mod prime)
// The Mersenne prime 2^61 - 1 takes a division-free reduction path.
class KarpRabin {
 public:
  KarpRabin(uint64_t base, uint64_t prime) : base_(base), prime_(prime) {
    // bytes are used as coefficients without reduction
    if (prime_ <= 256 || prime_ >= (uint64_t{1} << 63)) throw std::invalid_argument("KarpRabin: prime out of range");
    if (base_ == 0 || base_ >= prime_) throw std::invalid_argument("KarpRabin: base must lie in [1, prime)");
  }

  uint64_t base() const { return base_; }
  uint64_t prime() const { return prime_; }

  uint64_t mul(uint64_t a, uint64_t b) const {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (prime_ == kMersenne61) {
      uint64_t r = static_cast<uint64_t>(p & kMersenne61) + static_cast<uint64_t>(p >> 61);
      if (r >= kMersenne61) r -= kMersenne61;
      return r;
    }
    return static_cast<uint64_t>(p % prime_);
  }

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t r = a + b;
    return r >= prime_ ? r - prime_ : r;
  }

  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + prime_ - b; }

  uint64_t pow(uint64_t e) const {
    uint64_t result = 1 % prime_;
    uint64_t b = base_;
    while (e != 0) {
      if (e & 1U) result = mul(result, b);
      b = mul(b, b);
      e >>= 1;
    }
    return result;
  }

  uint64_t hash(std::string_view s) const {
    uint64_t h = 0;
    for (unsigned char c : s) h = add(mul(h, base_), c);
    return h;
  }

 private:
  uint64_t base_;
  uint64_t prime_;
};

// Fixed-width sliding window over a byte string.
class RollingWindow {
 public:
  RollingWindow(const KarpRabin& kr, std::size_t width) : kr_(kr), width_(width), top_(kr.pow(width - 1)) {}

  // Hash of the first window.
  uint64_t init(std::string_view window) {
    hash_ = kr_.hash(window.substr(0, width_));
    return hash_;
  }

  // Drop `out` from the front, append `in` at the back.
  uint64_t roll(unsigned char out, unsigned char in) {
    hash_ = kr_.sub(hash_, kr_.mul(out, top_));
    hash_ = kr_.add(kr_.mul(hash_, kr_.base()), in);
    return hash_;
  }

  uint64_t value() const { return hash_; }

 private:
  const KarpRabin& kr_;
  std::size_t width_;
  uint64_t top_;
  uint64_t hash_ = 0;
};

}  // namespace pfpfm
