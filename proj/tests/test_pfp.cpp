#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "pfpfm/pfp.hpp"

using namespace pfpfm;

namespace {

std::string with_sentinel(std::string_view s) {
  std::string out(s);
  out.push_back(kSentinel);
  return out;
}

// '$' in the literals below stands for the sentinel byte
std::string dollar(std::string s) {
  for (auto& c : s) {
    if (c == '$') c = kSentinel;
  }
  return s;
}

const std::string kWorkedText = "TCCAGAAGAGTATCTCCTCGACATGTTGAAGACATATGAT";
const std::string kWorkedQuery = "CAGAAGAGTATCTCCTCGACATGTTGAAGACATAT";

std::vector<std::string> dictionary_strings(const Dictionary& d) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d.size(); ++i) out.emplace_back(d[i]);
  return out;
}

// Glues phrases that overlap by w; the last phrase wraps onto the first.
std::string glue(const Dictionary& d, const std::vector<uint32_t>& ids, std::size_t w) {
  std::string out;
  for (uint32_t id : ids) out += d[id].substr(0, d[id].size() - w);
  return out;
}

}  // namespace

TEST_CASE("worked example: triggers, dictionary and parse") {
  const auto text = with_sentinel(kWorkedText);
  const auto oracle = TriggerOracle::explicit_set(2, {"AA", "CG", "TA"});

  const auto triggers = find_triggers(text, oracle, true);
  CHECK(triggers == std::vector<std::size_t>{5, 10, 18, 28, 34, 40});

  const auto parsed = parse_text(text, oracle);
  CHECK(dictionary_strings(parsed.dictionary) ==
        std::vector<std::string>{dollar("$TCCAGAA"), "AAGACATA", "AAGAGTA", "CGACATGTTGAA", "TATCTCCTCG",
                                 dollar("TATGAT$T")});
  CHECK(parsed.parse.phrase_ids == std::vector<uint32_t>{0, 2, 4, 3, 1, 5});
  CHECK(parsed.parse.trigger_positions == triggers);
}

TEST_CASE("second worked example with separator bytes") {
  const auto text = with_sentinel("AGACGACT#AGATACT#AGATTCGAGACGAC");
  const auto oracle = TriggerOracle::explicit_set(2, {"AC", "TC"});
  const auto parsed = parse_text(text, oracle);
  CHECK(dictionary_strings(parsed.dictionary) == std::vector<std::string>{dollar("$AGAC"), dollar("AC$A"), "ACGAC",
                                                                          "ACT#AGATAC", "ACT#AGATTC", "TCGAGAC"});
  CHECK(parsed.parse.phrase_ids == std::vector<uint32_t>{0, 2, 3, 4, 5, 2, 1});
}

TEST_CASE("degenerate single-phrase parse") {
  const auto parsed = parse_text(with_sentinel(""), TriggerOracle::explicit_set(1, {}));
  CHECK(dictionary_strings(parsed.dictionary) == std::vector<std::string>{dollar("$$")});
  CHECK(parsed.parse.phrase_ids == std::vector<uint32_t>{0});

  const auto one = parse_text(with_sentinel("ACGT"), TriggerOracle::explicit_set(2, {}));
  CHECK(dictionary_strings(one.dictionary) == std::vector<std::string>{dollar("$ACGT$A")});
}

TEST_CASE("non-cyclic trigger scans") {
  const auto none = TriggerOracle::explicit_set(2, {});
  CHECK(find_triggers("ACGT", none, false).empty());
  const auto ta = TriggerOracle::explicit_set(2, {"TA"});
  CHECK(find_triggers("TATA", ta, false) == std::vector<std::size_t>{0, 2});
  CHECK(find_triggers("T", ta, false).empty());
  // only the window starting at the sentinel may cover it
  CHECK_THROWS_AS(TriggerOracle::explicit_set(2, {dollar("A$")}), std::invalid_argument);
  CHECK(find_triggers(with_sentinel("CA"), TriggerOracle::explicit_set(2, {"CA"}), true) ==
        std::vector<std::size_t>{0, 2});
}

TEST_CASE("hash-based scan matches rehashing every window") {
  std::mt19937_64 rng(31);
  for (uint32_t w : {1U, 2U, 4U, 8U, 13U}) {
    for (uint64_t p : {1ULL, 3ULL, 10ULL, 50ULL}) {
      const auto oracle = TriggerOracle::hash_based(w, p);
      const std::string text = oracle::random_string(rng, 3000, "ACGT");
      std::vector<std::size_t> expect;
      for (std::size_t i = 0; i + w <= text.size(); ++i) {
        if (oracle::kr_hash(text.substr(i, w), oracle.kr_base(), oracle.kr_prime()) % p == 0) expect.push_back(i);
      }
      REQUIRE(find_triggers(text, oracle, false) == expect);
      for (std::size_t i = 0; i < 50; ++i) {
        const auto win = std::string_view(text).substr(i, w);
        REQUIRE(oracle.is_trigger(win) == (oracle::kr_hash(win, oracle.kr_base(), oracle.kr_prime()) % p == 0));
      }
    }
  }
}

TEST_CASE("rolling window agrees with direct hashing") {
  const KarpRabin kr(kDefaultTriggerBase, kMersenne61);
  const KarpRabin small(31, 1'000'003);
  std::mt19937_64 rng(32);
  const std::string text = oracle::random_string(rng, 2000, "ACGT#\xff");
  for (const KarpRabin* k : {&kr, &small}) {
    for (std::size_t width : {1UL, 5UL, 64UL}) {
      RollingWindow win(*k, width);
      REQUIRE(win.init(text) == oracle::kr_hash(text.substr(0, width), k->base(), k->prime()));
      for (std::size_t i = 1; i + width <= text.size(); ++i) {
        const auto h = win.roll(static_cast<unsigned char>(text[i - 1]), static_cast<unsigned char>(text[i + width - 1]));
        REQUIRE(h == oracle::kr_hash(text.substr(i, width), k->base(), k->prime()));
      }
    }
  }
  CHECK_THROWS_AS(KarpRabin(2, 256), std::invalid_argument);
  CHECK_THROWS_AS(KarpRabin(0, kMersenne61), std::invalid_argument);
}

TEST_CASE("random parses match the direct definition and reconstruct the text") {
  std::mt19937_64 rng(33);
  for (int round = 0; round < 60; ++round) {
    const uint32_t w = 1 + static_cast<uint32_t>(rng() % 6);
    const uint64_t p = 1 + rng() % 12;
    const std::string body = oracle::random_string(rng, 1 + rng() % 800, round % 2 ? "ACGT" : "AC");
    const auto text = with_sentinel(body);
    const auto trig = TriggerOracle::hash_based(w, p);

    const auto parsed = parse_text(text, trig);
    const auto expect = oracle::parse(text, w, [&](std::string_view s) { return trig.is_trigger(s); });
    REQUIRE(dictionary_strings(parsed.dictionary) == expect.dictionary);
    REQUIRE(parsed.parse.phrase_ids == expect.phrase_ids);

    // the parse starts at the sentinel, so the text comes back rotated by one
    const std::string rotated = kSentinel + body;
    REQUIRE(glue(parsed.dictionary, parsed.parse.phrase_ids, w) == rotated);

    const auto& ids = parsed.parse.phrase_ids;
    REQUIRE(ids.front() == 0);
    REQUIRE(std::count(ids.begin(), ids.end(), 0U) == 1);

    // prefix-free: no phrase is a proper prefix of another
    const auto& d = parsed.dictionary;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      REQUIRE(d[i] < d[i + 1]);
      REQUIRE(d[i + 1].substr(0, d[i].size()) != d[i]);
    }
  }
}

TEST_CASE("phrase map lookups are exact") {
  const auto parsed = parse_text(with_sentinel(kWorkedText), TriggerOracle::explicit_set(2, {"AA", "CG", "TA"}));
  const auto map = build_phrase_map(parsed.dictionary, 7);
  for (std::size_t i = 0; i < parsed.dictionary.size(); ++i) {
    REQUIRE(map.lookup(parsed.dictionary[i]) == std::optional<uint32_t>(static_cast<uint32_t>(i)));
  }
  CHECK_FALSE(map.lookup("AAGACATAT").has_value());
  CHECK_FALSE(map.lookup("").has_value());
  CHECK_FALSE(map.lookup("TATCTCCTCGA").has_value());

  const PhraseMap rebuilt(parsed.dictionary, map.seed());
  CHECK(rebuilt.fingerprint("AAGAGTA") == map.fingerprint("AAGAGTA"));
}

TEST_CASE("dictionary validation and round trip") {
  CHECK_THROWS(Dictionary(std::vector<std::string>{"b", "a"}));
  CHECK_THROWS(Dictionary(std::vector<std::string>{"a", "a"}));
  const Dictionary d(std::vector<std::string>{"AC", "ACGT", "T"});
  ByteWriter out;
  d.save(out);
  ByteReader in(out.buffer());
  const Dictionary back = Dictionary::load(in);
  CHECK(dictionary_strings(back) == dictionary_strings(d));
}

TEST_CASE("worked query decomposes into ragged ends and complete phrases") {
  const auto oracle = TriggerOracle::explicit_set(2, {"AA", "CG", "TA"});
  const auto parsed = parse_text(with_sentinel(kWorkedText), oracle);
  const auto map = build_phrase_map(parsed.dictionary, kDefaultTriggerBase);

  const auto qp = parse_query(kWorkedQuery, oracle, map);
  REQUIRE(std::holds_alternative<PartialEncoding>(qp));
  const auto& enc = std::get<PartialEncoding>(qp);
  CHECK(enc.alpha == "CAGAA");
  CHECK(enc.mid_phrase_ids == std::vector<uint32_t>{2, 4, 3, 1});
  CHECK(enc.beta == "TAT");

  CHECK(std::holds_alternative<NoTrigger>(parse_query("GAGT", oracle, map)));
  CHECK(std::holds_alternative<NoTrigger>(parse_query("A", oracle, map)));
  // a complete phrase that is not in the dictionary
  CHECK(std::holds_alternative<NotInDictionary>(parse_query("AAGGGTAT", oracle, map)));
  // a single trigger: alpha ends where beta starts
  const auto single = std::get<PartialEncoding>(parse_query("GCGT", oracle, map));
  CHECK(single.alpha == "GCG");
  CHECK(single.mid_phrase_ids.empty());
  CHECK(single.beta == "CGT");
}

TEST_CASE("random query parses glue back to the query") {
  std::mt19937_64 rng(34);
  for (int round = 0; round < 40; ++round) {
    const uint32_t w = 2 + static_cast<uint32_t>(rng() % 4);
    const auto oracle = TriggerOracle::hash_based(w, 2 + rng() % 6);
    const std::string body = oracle::random_string(rng, 2000, "ACGT");
    const auto parsed = parse_text(with_sentinel(body), oracle);
    const auto map = build_phrase_map(parsed.dictionary, rng());
    for (int t = 0; t < 50; ++t) {
      const std::size_t len = 1 + rng() % 60;
      const std::size_t at = rng() % (body.size() - len);
      const std::string q = body.substr(at, len);
      const auto triggers = find_triggers(q, oracle, false);
      const auto qp = parse_query(q, oracle, map);
      if (triggers.empty()) {
        REQUIRE(std::holds_alternative<NoTrigger>(qp));
        continue;
      }
      // every complete phrase of a text substring is in the dictionary
      REQUIRE(std::holds_alternative<PartialEncoding>(qp));
      const auto& enc = std::get<PartialEncoding>(qp);
      REQUIRE(enc.alpha == std::string_view(q).substr(0, triggers.front() + w));
      REQUIRE(enc.beta == std::string_view(q).substr(triggers.back()));
      REQUIRE(enc.mid_phrase_ids.size() == triggers.size() - 1);
      std::string glued(enc.alpha.substr(0, enc.alpha.size() - w));
      for (uint32_t id : enc.mid_phrase_ids) {
        const auto ph = parsed.dictionary[id];
        glued += ph.substr(0, ph.size() - w);
      }
      glued += enc.beta;
      REQUIRE(glued == q);
    }
  }
}
