#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "pfpfm/index.hpp"

namespace pfpfm {

// On-disk index container, little-endian throughout:
//
//   magic    "PFPFM1\0\0"                       8 bytes
//   version  u32
//   sections (tag u32, length u64, payload)     oracle parameters + phrase-map
//            seed, character FM-index with its alphabet remap table, parse
//            FM-index, marking bitvector, dictionary, build statistics
//   checksum u32                                 CRC-32 of everything before it
inline constexpr std::string_view kContainerMagic{"PFPFM1\0\0", 8};
inline constexpr uint32_t kContainerVersion = 1;

std::string serialize_index(const TwoLevelIndex& idx);
/// Throws FormatError on bad magic, version mismatch, checksum mismatch or
/// malformed sections.
TwoLevelIndex deserialize_index(std::string_view bytes);

void save_index(const TwoLevelIndex& idx, const std::filesystem::path& path);
TwoLevelIndex load_index(const std::filesystem::path& path);

}  // namespace pfpfm
