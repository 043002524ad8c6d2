#include "pfpfm/container.hpp"

#include <zlib.h>

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace pfpfm {

namespace {

uint32_t checksum(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths
  constexpr std::size_t kStep = 1U << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kStep) {
    const std::size_t len = std::min(kStep, bytes.size() - off);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off), static_cast<uInt>(len));
  }
  return static_cast<uint32_t>(crc);
}

}  // namespace

std::string serialize_index(const TwoLevelIndex& idx) {
  ByteWriter out;
  for (char c : kContainerMagic) out.put<char>(c);
  out.put<uint32_t>(kContainerVersion);
  idx.save(out);
  out.put<uint32_t>(checksum(out.buffer()));
  return out.take();
}

TwoLevelIndex deserialize_index(std::string_view bytes) {
  if (bytes.size() < kContainerMagic.size() + 8 || bytes.substr(0, kContainerMagic.size()) != kContainerMagic) {
    throw FormatError("not an index file (bad magic)");
  }
  const auto body = bytes.substr(0, bytes.size() - 4);
  ByteReader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.get<uint32_t>() != checksum(body)) throw FormatError("index file checksum mismatch");

  ByteReader in(body);
  in.take(kContainerMagic.size());
  const auto version = in.get<uint32_t>();
  if (version != kContainerVersion) {
    throw FormatError("unsupported index format version " + std::to_string(version) + " (expected " +
                      std::to_string(kContainerVersion) + ")");
  }
  auto idx = TwoLevelIndex::load(in);
  if (in.remaining() != 0) throw FormatError("trailing bytes after the last index section");
  return idx;
}

void save_index(const TwoLevelIndex& idx, const std::filesystem::path& path) {
  const std::string bytes = serialize_index(idx);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

TwoLevelIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index '" + path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_index(bytes);
}

}  // namespace pfpfm
