#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pfpfm/bench.hpp"

namespace pfpfm {

// Every command reports failures on `err` and returns a process exit status.

struct BuildOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  // with a triggers file, defaults to the trigger length
  std::optional<uint32_t> w;
  uint64_t p = 50;
  std::optional<std::filesystem::path> triggers;
  uint64_t seed = kDefaultPhraseSeed;
};

int cmd_build(const BuildOptions& opts, std::ostream& err);

int cmd_count(const std::filesystem::path& index_path, const std::filesystem::path& patterns_path, bool baseline,
              std::ostream& out, std::ostream& err);

/// An empty output path writes to `out`.
int cmd_sample(const std::filesystem::path& input, std::size_t length, std::size_t num, uint64_t seed,
               const std::filesystem::path& output, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::filesystem::path input;
  BenchConfig config;
  // empty: CSV goes to the `out` stream
  std::filesystem::path csv;
};

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

struct CorpusOptions {
  std::filesystem::path output;
  std::size_t seed_len = 51200;
  std::size_t copies = 1000;
  double mutation_rate = 0.01;
  uint64_t seed = 1;
};

int cmd_gen_corpus(const CorpusOptions& opts, std::ostream& err);

/// Reads an ExplicitSet trigger file: one string per line, blank lines and a
/// trailing CR ignored.  All triggers must share one length.
TriggerOracle load_trigger_file(const std::filesystem::path& path, std::optional<uint32_t> w);

}  // namespace pfpfm
