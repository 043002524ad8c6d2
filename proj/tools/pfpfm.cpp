#include <iostream>

#include "CLI11.hpp"
#include "pfpfm/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-level FM-index over a prefix-free parse"};
  app.require_subcommand(1);

  pfpfm::BuildOptions build;
  uint32_t build_w = 8;
  auto* b = app.add_subcommand("build", "Build an index from a FASTA or raw text file");
  b->add_option("-i,--input", build.input, "Input text")->required()->check(CLI::ExistingFile);
  b->add_option("-o,--output", build.output, "Index file to write")->required();
  auto* w_opt = b->add_option("-w,--w", build_w, "Trigger window length")->check(CLI::Range(1U, 64U));
  b->add_option("-p,--p", build.p, "Trigger modulus")->check(CLI::PositiveNumber);
  std::string triggers;
  b->add_option("--triggers", triggers, "File of explicit trigger strings, one per line")->check(CLI::ExistingFile);
  b->add_option("--seed", build.seed, "Phrase fingerprint seed");

  std::string index_path;
  std::string patterns_path;
  bool baseline = false;
  auto* c = app.add_subcommand("count", "Count occurrences of each pattern");
  c->add_option("--index", index_path, "Index file")->required()->check(CLI::ExistingFile);
  c->add_option("--patterns", patterns_path, "Patterns, one per line")->required()->check(CLI::ExistingFile);
  c->add_flag("--baseline", baseline, "Use character-level backward search only");

  std::string sample_in;
  std::string sample_out;
  std::size_t length = 0;
  std::size_t num = 1000;
  uint64_t sample_seed = 42;
  auto* s = app.add_subcommand("sample", "Sample random substrings of a text");
  s->add_option("-i,--input", sample_in, "Input text")->required()->check(CLI::ExistingFile);
  s->add_option("--length", length, "Pattern length")->required();
  s->add_option("--num", num, "Number of patterns");
  s->add_option("--seed", sample_seed, "Sampling seed");
  s->add_option("-o,--output", sample_out, "Output file (default: stdout)");

  pfpfm::BenchOptions bench;
  std::string bench_in;
  std::string bench_csv;
  auto* be = app.add_subcommand("bench", "Sweep (w, p) and pattern length, writing CSV");
  be->add_option("-i,--input", bench_in, "Input text")->required()->check(CLI::ExistingFile);
  be->add_option("-w,--w,--w-list", bench.config.w_list, "Window lengths")->delimiter(',');
  be->add_option("-p,--p,--p-list", bench.config.p_list, "Moduli")->delimiter(',');
  be->add_option("--lengths,--length-list", bench.config.lengths, "Pattern lengths")->delimiter(',');
  be->add_option("--num", bench.config.num, "Patterns per length");
  be->add_option("--seed", bench.config.seed, "Sampling seed");
  be->add_option("--rounds", bench.config.rounds, "Timing rounds, fastest kept");
  be->add_option("--min-seconds", bench.config.min_batch_seconds, "Minimum time per timed batch");
  be->add_option("--csv", bench_csv, "CSV output file (default: stdout)");

  pfpfm::CorpusOptions corpus;
  auto* g = app.add_subcommand("gen-corpus", "Write a repetitive DNA test corpus");
  g->add_option("-o,--output", corpus.output, "Output file")->required();
  g->add_option("--seed-len", corpus.seed_len, "Length of the random seed sequence");
  g->add_option("--copies", corpus.copies, "Number of mutated copies");
  g->add_option("--mutation-rate", corpus.mutation_rate, "Per-base substitution probability")
      ->check(CLI::Range(0.0, 1.0));
  g->add_option("--seed", corpus.seed, "Generator seed");

  CLI11_PARSE(app, argc, argv);

  if (b->parsed()) {
    if (!triggers.empty()) build.triggers = triggers;
    if (triggers.empty() || w_opt->count() > 0) build.w = build_w;
    return pfpfm::cmd_build(build, std::cerr);
  }
  if (c->parsed()) return pfpfm::cmd_count(index_path, patterns_path, baseline, std::cout, std::cerr);
  if (s->parsed()) return pfpfm::cmd_sample(sample_in, length, num, sample_seed, sample_out, std::cout, std::cerr);
  if (be->parsed()) {
    bench.input = bench_in;
    bench.csv = bench_csv;
    return pfpfm::cmd_bench(bench, std::cout, std::cerr);
  }
  return pfpfm::cmd_gen_corpus(corpus, std::cerr);
}
