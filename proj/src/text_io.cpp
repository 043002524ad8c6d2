#include "pfpfm/text_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>

namespace pfpfm {

bool looks_like_fasta(std::string_view data) {
  for (char c : data) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '>';
  }
  return false;
}

std::string fasta_to_text(std::string_view data) {
  std::string out;
  out.reserve(data.size());
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    const auto line = data.substr(pos, end - pos);
    if (line.empty() || line.front() != '>') {
      for (char c : line) {
        if (c == '\r') continue;
        out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      }
    }
    pos = end + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string read_sequence_file(const std::filesystem::path& path) {
  std::string data = read_file(path);
  if (looks_like_fasta(data)) return fasta_to_text(data);
  while (!data.empty() && (data.back() == '\n' || data.back() == '\r')) data.pop_back();
  return data;
}

std::vector<std::string> split_lines(std::string_view data) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    lines.emplace_back(data.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) { return split_lines(read_file(path)); }

std::vector<std::string> sample_patterns(std::string_view text, std::size_t length, std::size_t num, uint64_t seed) {
  if (length == 0) throw std::invalid_argument("pattern length must be positive");
  if (length > text.size()) {
    throw std::invalid_argument("pattern length " + std::to_string(length) + " exceeds text length " +
                                std::to_string(text.size()));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> start(0, text.size() - length);
  std::vector<std::string> out;
  out.reserve(num);
  for (std::size_t i = 0; i < num; ++i) out.emplace_back(text.substr(start(rng), length));
  return out;
}

std::string generate_repetitive_corpus(std::size_t seed_len, std::size_t copies, double mutation_rate, uint64_t seed) {
  static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> base(0, 3);
  std::uniform_int_distribution<int> other(1, 3);
  std::bernoulli_distribution mutate(mutation_rate);

  std::string reference(seed_len, 'A');
  for (auto& c : reference) c = kBases[base(rng)];

  std::string out;
  out.reserve(seed_len * copies);
  for (std::size_t k = 0; k < copies; ++k) {
    for (char c : reference) {
      if (mutate(rng)) {
        int idx = 0;
        while (kBases[idx] != c) ++idx;
        c = kBases[(idx + other(rng)) % 4];
      }
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace pfpfm
