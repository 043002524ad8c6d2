#include "pfpfm/bench.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pfpfm/text_io.hpp"

namespace pfpfm {

namespace {

using Clock = std::chrono::steady_clock;

double round_to(double v, double scale) { return std::round(v * scale) / scale; }

// Whole-batch throughput of `fn` over the patterns; the batch is repeated
// until `min_seconds` have elapsed.
template <class Fn>
double batch_qps(const std::vector<std::string>& patterns, double min_seconds, Fn&& fn, uint64_t& sink) {
  std::size_t queries = 0;
  const auto start = Clock::now();
  double elapsed = 0;
  do {
    for (const auto& q : patterns) sink += fn(q);
    queries += patterns.size();
    elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  } while (elapsed < min_seconds);
  return static_cast<double>(queries) / elapsed;
}

std::string preview(std::string_view q) {
  return q.size() <= 40 ? std::string(q) : std::string(q.substr(0, 40)) + "...";
}

}  // namespace

uint64_t peak_rss_bytes() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream fields(line.substr(6));
      uint64_t kb = 0;
      if (fields >> kb) return kb * 1024;
    }
  }
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) == 0) return static_cast<uint64_t>(usage.ru_maxrss) * 1024;
  return 0;
}

bool reset_peak_rss() {
  std::ofstream clear("/proc/self/clear_refs");
  if (!clear) return false;
  clear << "5";
  return static_cast<bool>(clear.flush());
}

BenchResult run_bench(std::string_view text, const BenchConfig& config,
                      const std::function<void(const BenchRecord&)>& progress) {
  if (config.w_list.empty() || config.p_list.empty() || config.lengths.empty()) {
    throw std::invalid_argument("bench parameter lists must be non-empty");
  }
  if (config.num == 0) throw std::invalid_argument("bench needs at least one query per batch");

  std::vector<std::vector<std::string>> batches;
  batches.reserve(config.lengths.size());
  for (std::size_t len : config.lengths) batches.push_back(sample_patterns(text, len, config.num, config.seed));

  BenchResult result;
  for (uint32_t w : config.w_list) {
    for (uint64_t p : config.p_list) {
      const auto oracle = TriggerOracle::hash_based(w, p);
      reset_peak_rss();
      const auto build_start = Clock::now();
      const TwoLevelIndex idx = build_index(text, oracle, config.phrase_seed);
      const double build_seconds = std::chrono::duration<double>(Clock::now() - build_start).count();
      const uint64_t peak = peak_rss_bytes();

      for (std::size_t li = 0; li < config.lengths.size(); ++li) {
        const auto& patterns = batches[li];
        uint64_t total = 0;
        for (std::size_t qi = 0; qi < patterns.size(); ++qi) {
          const uint64_t accel = idx.count(patterns[qi]);
          const uint64_t base = idx.count_baseline(patterns[qi]);
          if (accel != base) {
            throw CountMismatch("count mismatch at w=" + std::to_string(w) + " p=" + std::to_string(p) +
                                " pattern #" + std::to_string(qi) + " (length " + std::to_string(patterns[qi].size()) +
                                ", '" + preview(patterns[qi]) + "'): accelerated " + std::to_string(accel) +
                                ", baseline " + std::to_string(base));
          }
          total += accel;
        }

        uint64_t sink = 0;
        double accel_qps = 0;
        double baseline_qps = 0;
        for (unsigned r = 0; r < std::max(1U, config.rounds); ++r) {
          accel_qps = std::max(accel_qps, batch_qps(patterns, config.min_batch_seconds,
                                                    [&](const std::string& q) { return idx.count(q); }, sink));
          baseline_qps = std::max(baseline_qps, batch_qps(patterns, config.min_batch_seconds,
                                                          [&](const std::string& q) { return idx.count_baseline(q); },
                                                          sink));
        }
        if (sink == 0 && total != 0) throw std::logic_error("benchmark sink lost its counts");

        BenchRecord rec;
        rec.w = w;
        rec.p = p;
        rec.pattern_length = config.lengths[li];
        rec.num_queries = patterns.size();
        rec.accel_qps = round_to(accel_qps, 1e3);
        rec.baseline_qps = round_to(baseline_qps, 1e3);
        rec.ratio = rec.baseline_qps > 0 ? round_to(rec.accel_qps / rec.baseline_qps, 1e3) : 0;
        rec.build_seconds = round_to(build_seconds, 1e6);
        rec.peak_build_bytes = peak;
        result.records.push_back(rec);
        result.total_counts.push_back(total);
        if (progress) progress(rec);
      }
    }
  }
  return result;
}

std::string format_bench_row(const BenchRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%u,%llu,%llu,%llu,%.3f,%.3f,%.3f,%.6f,%llu", r.w,
                static_cast<unsigned long long>(r.p), static_cast<unsigned long long>(r.pattern_length),
                static_cast<unsigned long long>(r.num_queries), r.accel_qps, r.baseline_qps, r.ratio, r.build_seconds,
                static_cast<unsigned long long>(r.peak_build_bytes));
  return buf;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : records) out << format_bench_row(r) << '\n';
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchCsvHeader) throw FormatError("bench CSV header mismatch");
  std::vector<BenchRecord> records;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) throw FormatError("bench CSV row " + std::to_string(row) + " has " + std::to_string(fields.size()) + " fields");
    try {
      std::size_t used = 0;
      auto whole = [&](const std::string& s) {
        const auto v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      auto real = [&](const std::string& s) {
        const auto v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
      };
      BenchRecord r;
      r.w = static_cast<uint32_t>(whole(fields[0]));
      r.p = whole(fields[1]);
      r.pattern_length = whole(fields[2]);
      r.num_queries = whole(fields[3]);
      r.accel_qps = real(fields[4]);
      r.baseline_qps = real(fields[5]);
      r.ratio = real(fields[6]);
      r.build_seconds = real(fields[7]);
      r.peak_build_bytes = whole(fields[8]);
      records.push_back(r);
    } catch (const std::logic_error& e) {
      throw FormatError("bench CSV row " + std::to_string(row) + ": bad value '" + e.what() + "'");
    }
  }
  return records;
}

}  // namespace pfpfm
