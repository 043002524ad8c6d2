#include "pfpfm/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pfpfm/container.hpp"
#include "pfpfm/text_io.hpp"

namespace pfpfm {

namespace {

int fail(std::ostream& err, const std::string& what) {
  err << "error: " << what << '\n';
  return 1;
}

}  // namespace

TriggerOracle load_trigger_file(const std::filesystem::path& path, std::optional<uint32_t> w) {
  std::vector<std::string> triggers;
  for (auto& line : read_lines(path)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    triggers.push_back(std::move(line));
  }
  if (!w) {
    if (triggers.empty()) throw std::invalid_argument("trigger file '" + path.string() + "' is empty and no -w given");
    w = static_cast<uint32_t>(triggers.front().size());
  }
  for (const auto& t : triggers) {
    if (t.size() != *w) {
      throw std::invalid_argument("trigger '" + t + "' has length " + std::to_string(t.size()) + ", expected " +
                                  std::to_string(*w));
    }
  }
  return TriggerOracle::explicit_set(*w, std::move(triggers));
}

int cmd_build(const BuildOptions& opts, std::ostream& err) {
  try {
    const std::string text = read_sequence_file(opts.input);
    const TriggerOracle oracle =
        opts.triggers ? load_trigger_file(*opts.triggers, opts.w) : TriggerOracle::hash_based(opts.w.value_or(8), opts.p);

    const auto start = std::chrono::steady_clock::now();
    const TwoLevelIndex idx = build_index(text, oracle, opts.seed);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    save_index(idx, opts.output);

    const auto& s = idx.stats();
    err << "n=" << s.text_len << " |D|=" << s.dictionary_size << " |P|=" << s.parse_len
        << " mean_phrase_len=" << s.mean_phrase_len << " index_bytes=" << idx.size_in_bytes()
        << " build_seconds=" << secs << '\n';
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

int cmd_count(const std::filesystem::path& index_path, const std::filesystem::path& patterns_path, bool baseline,
              std::ostream& out, std::ostream& err) {
  try {
    const TwoLevelIndex idx = load_index(index_path);
    const auto patterns = read_lines(patterns_path);
    std::string buf;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      const uint64_t c = baseline ? idx.count_baseline(patterns[i]) : idx.count(patterns[i]);
      buf += std::to_string(i);
      buf += '\t';
      buf += std::to_string(c);
      buf += '\n';
    }
    out << buf;
    return out ? 0 : fail(err, "failed writing counts");
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

int cmd_sample(const std::filesystem::path& input, std::size_t length, std::size_t num, uint64_t seed,
               const std::filesystem::path& output, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = read_sequence_file(input);
    std::string buf;
    for (const auto& s : sample_patterns(text, length, num, seed)) {
      if (s.find('\n') != std::string::npos) throw std::runtime_error("sampled pattern spans a line break");
      buf += s;
      buf += '\n';
    }
    if (output.empty()) {
      out << buf;
    } else {
      write_file(output, buf);
    }
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = read_sequence_file(opts.input);
    const auto result = run_bench(text, opts.config, [&](const BenchRecord& r) {
      err << "w=" << r.w << " p=" << r.p << " len=" << r.pattern_length << " accel=" << r.accel_qps
          << " baseline=" << r.baseline_qps << " ratio=" << r.ratio << '\n';
    });
    if (opts.csv.empty()) {
      write_bench_csv(out, result.records);
    } else {
      std::ostringstream csv;
      write_bench_csv(csv, result.records);
      write_file(opts.csv, csv.str());
    }
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

int cmd_gen_corpus(const CorpusOptions& opts, std::ostream& err) {
  try {
    write_file(opts.output, generate_repetitive_corpus(opts.seed_len, opts.copies, opts.mutation_rate, opts.seed));
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

}  // namespace pfpfm
