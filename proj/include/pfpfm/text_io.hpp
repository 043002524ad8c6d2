#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pfpfm {

/// True when the first non-whitespace byte is '>'.
bool looks_like_fasta(std::string_view data);

/// Drops header lines and line breaks, concatenates all records and
/// uppercases ASCII letters.  Other bytes are kept verbatim.
std::string fasta_to_text(std::string_view data);

/// Reads an input text: FASTA is normalized with fasta_to_text; any other file
/// is taken verbatim apart from trailing line terminators.
std::string read_sequence_file(const std::filesystem::path& path);

/// One pattern per LF-terminated line; a final line without LF still counts.
std::vector<std::string> split_lines(std::string_view data);
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// `num` substrings of length `length`, start positions drawn uniformly from
/// [0, |text| - length] with a seeded generator.  Throws
/// std::invalid_argument when length is 0 or exceeds |text|.
std::vector<std::string> sample_patterns(std::string_view text, std::size_t length, std::size_t num, uint64_t seed);

/// `copies` independently mutated copies of one random DNA seed of
/// `seed_len` bases; each base is substituted with probability
/// `mutation_rate`.
std::string generate_repetitive_corpus(std::size_t seed_len, std::size_t copies, double mutation_rate, uint64_t seed);

void write_file(const std::filesystem::path& path, std::string_view data);
std::string read_file(const std::filesystem::path& path);

}  // namespace pfpfm
