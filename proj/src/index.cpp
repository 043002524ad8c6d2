#include "pfpfm/index.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <variant>

#include "pfpfm/suffix.hpp"

namespace pfpfm {

namespace {

enum SectionTag : uint32_t {
  kOracleSection = 1,
  kCharFmSection = 2,
  kParseFmSection = 3,
  kMarksSection = 4,
  kPhraseMapSection = 5,
  kStatsSection = 6,
};

template <class Fn>
void write_section(ByteWriter& out, SectionTag tag, Fn&& body) {
  ByteWriter section;
  body(section);
  out.put<uint32_t>(tag);
  out.put_bytes(section.buffer());
}

std::string read_section(ByteReader& in, SectionTag expected) {
  const auto tag = in.get<uint32_t>();
  if (tag != expected) {
    throw FormatError("expected section " + std::to_string(expected) + ", found " + std::to_string(tag));
  }
  return in.get_bytes();
}

void expect_consumed(const ByteReader& r, const char* what) {
  if (r.remaining() != 0) throw FormatError(std::string("trailing bytes in ") + what + " section");
}

}  // namespace

// ---------------------------------------------------------------------------
// FmIndex

FmIndex::FmIndex(std::span<const uint8_t> bwt, uint64_t alphabet_size)
    : bwt_(bwt, alphabet_size), c_(build_c_array(bwt, alphabet_size)) {}

FmIndex::FmIndex(std::span<const uint32_t> bwt, uint64_t alphabet_size)
    : bwt_(bwt, alphabet_size), c_(build_c_array(bwt, alphabet_size)) {}

uint64_t FmIndex::lf(uint64_t row) const {
  const uint32_t c = bwt_.access(row);
  return c_[c] + bwt_.rank(c, row);
}

std::vector<uint32_t> FmIndex::invert() const {
  const uint64_t n = size();
  std::vector<uint32_t> out(n, 0);
  uint64_t row = 0;  // the rotation starting with the sentinel
  for (uint64_t i = n - 1; i-- > 0;) {
    out[i] = bwt_.access(row);
    row = lf(row);
  }
  return out;
}

void FmIndex::save(ByteWriter& out) const {
  bwt_.save(out);
  out.put_array(c_);
}

FmIndex FmIndex::load(ByteReader& in) {
  FmIndex fm;
  fm.bwt_ = WaveletTree::load(in);
  fm.c_ = in.get_array<uint64_t>();
  if (fm.c_.size() != fm.bwt_.alphabet_size() + 1 || fm.c_.front() != 0 || fm.c_.back() != fm.bwt_.size()) {
    throw FormatError("C array does not match its BWT");
  }
  return fm;
}

// ---------------------------------------------------------------------------
// CharFmIndex / ParseFmIndex

CharFmIndex::CharFmIndex(const std::array<uint16_t, 256>& code_of, std::span<const uint8_t> bwt) : remap_(code_of) {
  uint16_t sigma = 0;
  for (uint16_t c : remap_) {
    if (c != kAbsent) sigma = std::max<uint16_t>(sigma, c + 1);
  }
  symbols_.assign(sigma, 0);
  for (unsigned b = 0; b < 256; ++b) {
    if (remap_[b] != kAbsent) symbols_[remap_[b]] = static_cast<unsigned char>(b);
  }
  fm_ = FmIndex(bwt, sigma);
}

std::string CharFmIndex::invert() const {
  const auto codes = fm_.invert();
  std::string text(codes.size(), kSentinel);
  for (std::size_t i = 0; i < codes.size(); ++i) text[i] = static_cast<char>(symbols_[codes[i]]);
  return text;
}

void CharFmIndex::save(ByteWriter& out) const {
  for (uint16_t c : remap_) out.put<uint16_t>(c);
  fm_.save(out);
}

CharFmIndex CharFmIndex::load(ByteReader& in) {
  CharFmIndex idx;
  for (auto& c : idx.remap_) c = in.get<uint16_t>();
  idx.fm_ = FmIndex::load(in);
  const uint64_t sigma = idx.fm_.alphabet_size();
  idx.symbols_.assign(sigma, 0);
  std::vector<bool> seen(sigma, false);
  for (unsigned b = 0; b < 256; ++b) {
    const uint16_t c = idx.remap_[b];
    if (c == kAbsent) continue;
    if (c >= sigma || seen[c]) throw FormatError("alphabet remap table is inconsistent");
    seen[c] = true;
    idx.symbols_[c] = static_cast<unsigned char>(b);
  }
  if (idx.remap_[static_cast<unsigned char>(kSentinel)] != 0) throw FormatError("sentinel must map to code 0");
  return idx;
}

ParseFmIndex ParseFmIndex::load(ByteReader& in) {
  ParseFmIndex idx;
  idx.fm_ = FmIndex::load(in);
  return idx;
}

// ---------------------------------------------------------------------------
// TwoLevelIndex

Interval TwoLevelIndex::map_char_to_parse(Interval iv) const {
  if (iv.empty()) return iv;
  if (iv.hi >= marks_.size()) throw std::out_of_range("map_char_to_parse: interval exceeds the text BWT");
  const uint64_t before = marks_.rank1_unchecked(iv.lo);
  const uint64_t marked = marks_.rank1_unchecked(iv.hi + 1) - before;
  if (marked != iv.size()) {
    throw std::logic_error("map_char_to_parse: interval contains rows that do not start with a trigger");
  }
  return {before, before + marked - 1};
}

Interval TwoLevelIndex::map_parse_to_char(Interval iv) const {
  if (iv.empty()) return iv;
  if (iv.hi >= parse_fm_.parse_len()) throw std::out_of_range("map_parse_to_char: interval exceeds the parse BWT");
  return {marks_.select1_or_size(iv.lo + 1), marks_.select1_or_size(iv.hi + 1)};
}

uint64_t TwoLevelIndex::count_baseline(std::string_view q) const {
  if (q.find(kSentinel) != std::string_view::npos) return 0;
  return char_fm_.backward_search(q, char_fm_.fm().full()).size();
}

uint64_t TwoLevelIndex::count(std::string_view q, CountTrace* trace) const {
  CountTrace local;
  CountTrace& t = trace != nullptr ? *trace : local;
  t = CountTrace{};

  if (q.find(kSentinel) != std::string_view::npos) {
    t.path = CountPath::Sentinel;
    return 0;
  }
  const QueryParse parsed = parse_query(q, oracle_, phrase_map_);
  if (std::holds_alternative<NoTrigger>(parsed)) {
    t.path = CountPath::NoTrigger;
    t.result = char_fm_.backward_search(q, char_fm_.fm().full());
    return t.result.size();
  }
  if (std::holds_alternative<NotInDictionary>(parsed)) {
    t.path = CountPath::NotInDictionary;
    return 0;
  }
  const auto& enc = std::get<PartialEncoding>(parsed);

  // beta starts with a trigger and holds no other, so all its rows are marked
  t.beta = char_fm_.backward_search(enc.beta, char_fm_.fm().full());
  if (t.beta.empty()) return 0;
  t.beta_in_parse = map_char_to_parse(t.beta);
  t.mids_in_parse = parse_fm_.backward_search(enc.mid_phrase_ids, t.beta_in_parse);
  if (t.mids_in_parse.empty()) return 0;
  t.mids_in_text = map_parse_to_char(t.mids_in_parse);
  t.result = t.mids_in_text;
  if (enc.alpha.size() > oracle_.window_len()) {
    // the last w bytes of alpha were already matched as the next phrase's head
    t.result = char_fm_.backward_search(enc.alpha.substr(0, enc.alpha.size() - oracle_.window_len()), t.result);
  }
  return t.result.size();
}

std::size_t TwoLevelIndex::size_in_bytes() const {
  return char_fm_.fm().size_in_bytes() + parse_fm_.fm().size_in_bytes() + marks_.size_in_bytes() +
         phrase_map_.size_in_bytes();
}

void TwoLevelIndex::save(ByteWriter& out) const {
  write_section(out, kOracleSection, [&](ByteWriter& s) {
    oracle_.save(s);
    s.put<uint64_t>(phrase_map_.seed());
  });
  write_section(out, kCharFmSection, [&](ByteWriter& s) { char_fm_.save(s); });
  write_section(out, kParseFmSection, [&](ByteWriter& s) { parse_fm_.save(s); });
  write_section(out, kMarksSection, [&](ByteWriter& s) { marks_.save(s); });
  write_section(out, kPhraseMapSection, [&](ByteWriter& s) { phrase_map_.dictionary().save(s); });
  write_section(out, kStatsSection, [&](ByteWriter& s) {
    s.put<uint64_t>(stats_.text_len);
    s.put<uint64_t>(stats_.dictionary_size);
    s.put<uint64_t>(stats_.parse_len);
    s.put<uint64_t>(std::bit_cast<uint64_t>(stats_.mean_phrase_len));
    s.put_array(stats_.phrase_length_histogram);
  });
}

TwoLevelIndex TwoLevelIndex::load(ByteReader& in) {
  TwoLevelIndex idx;
  uint64_t seed = 0;
  {
    const auto body = read_section(in, kOracleSection);
    ByteReader r(body);
    idx.oracle_ = TriggerOracle::load(r);
    seed = r.get<uint64_t>();
    expect_consumed(r, "oracle");
  }
  {
    const auto body = read_section(in, kCharFmSection);
    ByteReader r(body);
    idx.char_fm_ = CharFmIndex::load(r);
    expect_consumed(r, "character index");
  }
  {
    const auto body = read_section(in, kParseFmSection);
    ByteReader r(body);
    idx.parse_fm_ = ParseFmIndex::load(r);
    expect_consumed(r, "parse index");
  }
  {
    const auto body = read_section(in, kMarksSection);
    ByteReader r(body);
    idx.marks_ = BitVector::load(r);
    expect_consumed(r, "marks");
  }
  {
    const auto body = read_section(in, kPhraseMapSection);
    ByteReader r(body);
    auto dict = Dictionary::load(r);
    expect_consumed(r, "phrase map");
    try {
      idx.phrase_map_ = PhraseMap(std::move(dict), seed);
    } catch (const BuildError& e) {
      throw FormatError(std::string("cannot rebuild phrase map: ") + e.what());
    }
    if (idx.phrase_map_.reseeds() != 0) throw FormatError("stored phrase-map seed produces fingerprint collisions");
  }
  {
    const auto body = read_section(in, kStatsSection);
    ByteReader r(body);
    idx.stats_.text_len = r.get<uint64_t>();
    idx.stats_.dictionary_size = r.get<uint64_t>();
    idx.stats_.parse_len = r.get<uint64_t>();
    idx.stats_.mean_phrase_len = std::bit_cast<double>(r.get<uint64_t>());
    idx.stats_.phrase_length_histogram = r.get_array<uint64_t>();
    expect_consumed(r, "stats");
  }

  if (idx.marks_.size() != idx.char_fm_.text_len() || idx.marks_.count_ones() != idx.parse_fm_.parse_len() ||
      idx.parse_fm_.fm().alphabet_size() != idx.dictionary().size() ||
      idx.stats_.text_len + 1 != idx.char_fm_.text_len()) {
    throw FormatError("index components disagree on their sizes");
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Construction

TwoLevelIndex build_index(std::string_view text, const TriggerOracle& oracle, uint64_t seed) {
  if (text.empty()) throw BuildError("cannot index an empty text");
  if (const auto pos = text.find(kSentinel); pos != std::string_view::npos) {
    throw BuildError("input contains the reserved sentinel byte 0x00 at offset " + std::to_string(pos));
  }
  if (text.size() + 1 >= std::numeric_limits<uint32_t>::max()) throw BuildError("text too long (limit 2^32 - 2 bytes)");

  TwoLevelIndex idx;
  idx.oracle_ = oracle;

  std::string s(text);
  s.push_back(kSentinel);
  const std::size_t n = s.size();

  ParsedText parsed = parse_text(s, oracle);

  // Dense alphabet; byte order is preserved and the sentinel gets code 0.
  std::array<uint16_t, 256> code_of;
  code_of.fill(CharFmIndex::kAbsent);
  {
    std::array<bool, 256> present{};
    for (unsigned char c : s) present[c] = true;
    uint16_t next = 0;
    for (unsigned b = 0; b < 256; ++b) {
      if (present[b]) code_of[b] = next++;
    }
  }
  std::vector<uint8_t> codes(n);
  for (std::size_t i = 0; i < n; ++i) codes[i] = static_cast<uint8_t>(code_of[static_cast<unsigned char>(s[i])]);
  s.clear();
  s.shrink_to_fit();

  uint32_t sigma = 0;
  for (uint16_t c : code_of) {
    if (c != CharFmIndex::kAbsent) ++sigma;
  }

  {
    std::vector<uint32_t> sa = build_suffix_array(codes, sigma);
    {
      const auto bwt = bwt_from_sa<uint8_t>(codes, sa);
      idx.char_fm_ = CharFmIndex(code_of, bwt);
    }
    codes.clear();
    codes.shrink_to_fit();

    std::vector<uint64_t> is_trigger((n + 63) / 64, 0);
    for (std::size_t t : parsed.parse.trigger_positions) is_trigger[t / 64] |= uint64_t{1} << (t % 64);
    std::vector<uint64_t> marks((n + 63) / 64, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const uint32_t p = sa[i];
      if ((is_trigger[p / 64] >> (p % 64)) & 1U) marks[i / 64] |= uint64_t{1} << (i % 64);
    }
    idx.marks_ = BitVector(marks, n);
  }

  // Rotate the parse so its unique 0 comes last and acts as the sentinel.
  const auto& ids = parsed.parse.phrase_ids;
  const std::size_t k = ids.size();
  std::vector<uint32_t> rotated(k);
  for (std::size_t i = 0; i < k; ++i) rotated[i] = ids[(i + 1) % k];
  const auto dict_size = static_cast<uint32_t>(parsed.dictionary.size());
  {
    const auto sa_p = build_suffix_array(rotated, dict_size);
    const auto bwt_p = bwt_from_sa<uint32_t>(rotated, sa_p);
    idx.parse_fm_ = ParseFmIndex(bwt_p, dict_size);
  }

  idx.stats_.text_len = text.size();
  idx.stats_.dictionary_size = dict_size;
  idx.stats_.parse_len = k;
  // phrases cover the rotated text once plus w bytes of overlap each
  idx.stats_.mean_phrase_len = static_cast<double>(n + k * oracle.window_len()) / static_cast<double>(k);
  for (std::size_t d = 0; d < parsed.dictionary.size(); ++d) {
    const auto bucket = static_cast<std::size_t>(std::bit_width(parsed.dictionary[d].size()) - 1);
    if (idx.stats_.phrase_length_histogram.size() <= bucket) idx.stats_.phrase_length_histogram.resize(bucket + 1, 0);
    ++idx.stats_.phrase_length_histogram[bucket];
  }

  idx.phrase_map_ = build_phrase_map(std::move(parsed.dictionary), seed);
  return idx;
}

}  // namespace pfpfm
