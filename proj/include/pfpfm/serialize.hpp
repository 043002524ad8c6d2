#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace pfpfm {

/// Raised for malformed, truncated or incompatible serialized data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    T out{};
    auto* src = reinterpret_cast<const unsigned char*>(&v);
    auto* dst = reinterpret_cast<unsigned char*>(&out);
    for (std::size_t i = 0; i < sizeof(T); ++i) dst[i] = src[sizeof(T) - 1 - i];
    return out;
  } else {
    return v;
  }
}

}  // namespace detail

// Appends little-endian primitives to an in-memory buffer.
class ByteWriter {
 public:
  template <class T>
    requires std::is_integral_v<T>
  void put(T v) {
    v = detail::to_little(v);
    buf_.append(reinterpret_cast<const char*>(&v), sizeof(T));
  }

  void put_bytes(std::string_view bytes) {
    put<uint64_t>(bytes.size());
    buf_.append(bytes);
  }

  template <class T>
    requires std::is_integral_v<T>
  void put_array(std::span<const T> values) {
    put<uint64_t>(values.size());
    if constexpr (std::endian::native == std::endian::little) {
      buf_.append(reinterpret_cast<const char*>(values.data()), values.size_bytes());
    } else {
      for (T v : values) put(v);
    }
  }

  template <class T>
  void put_array(const std::vector<T>& values) {
    put_array(std::span<const T>(values));
  }

  std::size_t size() const { return buf_.size(); }
  const std::string& buffer() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

// Bounds-checked reader over a little-endian buffer.
class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  template <class T>
    requires std::is_integral_v<T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return detail::to_little(v);
  }

  std::string get_bytes() {
    const auto len = get<uint64_t>();
    need(len);
    std::string out(data_.substr(pos_, len));
    pos_ += len;
    return out;
  }

  template <class T>
    requires std::is_integral_v<T>
  std::vector<T> get_array() {
    const auto len = get<uint64_t>();
    if (len > (data_.size() - pos_) / sizeof(T)) throw FormatError("array length exceeds remaining data");
    std::vector<T> out(len);
    std::memcpy(out.data(), data_.data() + pos_, len * sizeof(T));
    pos_ += len * sizeof(T);
    if constexpr (std::endian::native == std::endian::big) {
      for (auto& v : out) v = detail::to_little(v);
    }
    return out;
  }

  std::string_view take(std::size_t len) {
    need(len);
    auto out = data_.substr(pos_, len);
    pos_ += len;
    return out;
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t len) const {
    if (len > data_.size() - pos_) throw FormatError("unexpected end of data");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace pfpfm
