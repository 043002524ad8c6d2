#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfpfm/index.hpp"

namespace pfpfm {

inline constexpr std::string_view kBenchCsvHeader =
    "w,p,pattern_length,num_queries,accel_qps,baseline_qps,ratio,build_seconds,peak_build_bytes";

struct BenchConfig {
  std::vector<uint32_t> w_list{4, 6, 8, 10};
  std::vector<uint64_t> p_list{10, 30, 50, 100};
  std::vector<std::size_t> lengths{125, 250, 500, 1000};
  std::size_t num = 1000;
  uint64_t seed = 42;
  uint64_t phrase_seed = kDefaultPhraseSeed;
  // each timed batch is repeated until it has run this long
  double min_batch_seconds = 0.2;
  // timing rounds per method; the fastest round is reported
  unsigned rounds = 3;
};

/// One cell of the (w, p) x pattern-length sweep.  Throughputs are rounded to
/// 3 decimals, build time to microseconds, and ratio is
/// accel_qps / baseline_qps rounded to 3 decimals.
struct BenchRecord {
  uint32_t w = 0;
  uint64_t p = 0;
  uint64_t pattern_length = 0;
  uint64_t num_queries = 0;
  double accel_qps = 0;
  double baseline_qps = 0;
  double ratio = 0;
  double build_seconds = 0;
  uint64_t peak_build_bytes = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  // sum of counts over each record's pattern batch, parallel to records
  std::vector<uint64_t> total_counts;
};

/// An accelerated count disagreed with the baseline.
class CountMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the sweep: one build per (w, p), the same seeded pattern batch per
/// length for every cell, a full accel-vs-baseline cross-check, then timing.
/// `progress`, when set, receives each record as soon as it is measured.
BenchResult run_bench(std::string_view text, const BenchConfig& config,
                      const std::function<void(const BenchRecord&)>& progress = {});

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::string format_bench_row(const BenchRecord& record);

/// Throws FormatError on a wrong header or malformed row.
std::vector<BenchRecord> read_bench_csv(std::istream& in);

/// Peak resident set size since the last reset, in bytes (0 if unknown).
uint64_t peak_rss_bytes();
/// Resets the kernel's peak-RSS counter where supported; returns success.
bool reset_peak_rss();

}  // namespace pfpfm
