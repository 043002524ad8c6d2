#include "pfpfm/pfp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "pfpfm/suffix.hpp"

namespace pfpfm {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

KarpRabin phrase_hasher(uint64_t seed) { return KarpRabin(256 + splitmix64(seed) % (kMersenne61 - 256), kMersenne61); }

}  // namespace

// ---------------------------------------------------------------------------
// TriggerOracle

TriggerOracle TriggerOracle::hash_based(uint32_t window_len, uint64_t modulus, uint64_t kr_base, uint64_t kr_prime) {
  if (window_len == 0) throw std::invalid_argument("trigger window length must be positive");
  if (modulus == 0) throw std::invalid_argument("trigger modulus must be positive");
  return TriggerOracle(Mode::HashBased, window_len, modulus, KarpRabin(kr_base, kr_prime));
}

TriggerOracle TriggerOracle::explicit_set(uint32_t window_len, std::vector<std::string> triggers) {
  if (window_len == 0) throw std::invalid_argument("trigger window length must be positive");
  TriggerOracle oracle(Mode::ExplicitSet, window_len, 1, KarpRabin(kDefaultTriggerBase, kMersenne61));
  for (auto& t : triggers) {
    if (t.size() != window_len) {
      throw std::invalid_argument("trigger string '" + t + "' does not have length " + std::to_string(window_len));
    }
    if (t.find(kSentinel) != std::string::npos) throw std::invalid_argument("trigger strings may not contain the sentinel");
    oracle.set_.insert(std::move(t));
  }
  return oracle;
}

bool TriggerOracle::is_trigger(std::string_view window) const {
  if (window.size() != w_) throw std::invalid_argument("is_trigger: window has the wrong length");
  if (mode_ == Mode::ExplicitSet) return set_.find(window) != set_.end();
  return kr_.hash(window) % p_ == 0;
}

void TriggerOracle::scan(std::string_view text, std::vector<std::size_t>& out, std::size_t offset) const {
  if (text.size() < w_) return;
  const std::size_t last = text.size() - w_;
  if (mode_ == Mode::ExplicitSet) {
    for (std::size_t i = 0; i <= last; ++i) {
      if (set_.find(text.substr(i, w_)) != set_.end()) out.push_back(i + offset);
    }
    return;
  }
  RollingWindow window(kr_, w_);
  uint64_t h = window.init(text);
  const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
  for (std::size_t i = 0;; ++i) {
    if (h % p_ == 0) out.push_back(i + offset);
    if (i == last) break;
    h = window.roll(bytes[i], bytes[i + w_]);
  }
}

void TriggerOracle::save(ByteWriter& out) const {
  out.put<uint8_t>(static_cast<uint8_t>(mode_));
  out.put<uint32_t>(w_);
  out.put<uint64_t>(p_);
  out.put<uint64_t>(kr_.base());
  out.put<uint64_t>(kr_.prime());
  out.put<uint64_t>(set_.size());
  for (const auto& t : set_) out.put_bytes(t);
}

TriggerOracle TriggerOracle::load(ByteReader& in) {
  const auto mode = in.get<uint8_t>();
  const auto w = in.get<uint32_t>();
  const auto p = in.get<uint64_t>();
  const auto base = in.get<uint64_t>();
  const auto prime = in.get<uint64_t>();
  const auto n_triggers = in.get<uint64_t>();
  std::vector<std::string> triggers;
  for (uint64_t i = 0; i < n_triggers; ++i) triggers.push_back(in.get_bytes());
  try {
    if (mode == static_cast<uint8_t>(Mode::HashBased)) {
      if (!triggers.empty()) throw FormatError("hash-based trigger oracle carries an explicit set");
      return hash_based(w, p, base, prime);
    }
    if (mode == static_cast<uint8_t>(Mode::ExplicitSet)) return explicit_set(w, std::move(triggers));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid trigger parameters: ") + e.what());
  }
  throw FormatError("unknown trigger oracle mode " + std::to_string(mode));
}

std::vector<std::size_t> find_triggers(std::string_view text, const TriggerOracle& oracle, bool cyclic) {
  std::vector<std::size_t> out;
  if (!cyclic) {
    oracle.scan(text, out);
    return out;
  }
  if (text.empty() || text.back() != kSentinel) throw std::invalid_argument("cyclic trigger scan needs a sentinel-terminated text");
  if (text.find(kSentinel) != text.size() - 1) throw std::invalid_argument("sentinel occurs before the end of the text");
  // windows wrapping over the sentinel are never triggers, except the one starting at it
  oracle.scan(text.substr(0, text.size() - 1), out);
  out.push_back(text.size() - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Dictionary

Dictionary::Dictionary(const std::vector<std::string_view>& sorted_phrases) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < sorted_phrases.size(); ++i) {
    if (i > 0 && !(sorted_phrases[i - 1] < sorted_phrases[i])) {
      throw std::invalid_argument("dictionary phrases must be strictly increasing");
    }
    total += sorted_phrases[i].size();
  }
  bytes_.reserve(total);
  offsets_.reserve(sorted_phrases.size() + 1);
  offsets_.push_back(0);
  for (auto phrase : sorted_phrases) {
    bytes_.append(phrase);
    offsets_.push_back(bytes_.size());
  }
}

Dictionary::Dictionary(const std::vector<std::string>& sorted_phrases)
    : Dictionary(std::vector<std::string_view>(sorted_phrases.begin(), sorted_phrases.end())) {}

void Dictionary::save(ByteWriter& out) const {
  out.put_bytes(bytes_);
  out.put_array(offsets_);
}

Dictionary Dictionary::load(ByteReader& in) {
  Dictionary d;
  d.bytes_ = in.get_bytes();
  d.offsets_ = in.get_array<uint64_t>();
  if (!d.offsets_.empty()) {
    if (d.offsets_.front() != 0 || d.offsets_.back() != d.bytes_.size()) throw FormatError("dictionary offsets are corrupt");
    for (std::size_t i = 1; i < d.offsets_.size(); ++i) {
      if (d.offsets_[i] < d.offsets_[i - 1]) throw FormatError("dictionary offsets are corrupt");
    }
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (!(d[i - 1] < d[i])) throw FormatError("dictionary phrases are not sorted");
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Parsing

ParsedText parse_text(std::string_view text, const TriggerOracle& oracle) {
  ParsedText result;
  result.parse.trigger_positions = find_triggers(text, oracle, /*cyclic=*/true);
  const auto& triggers = result.parse.trigger_positions;
  const std::size_t n = text.size();
  const std::size_t w = oracle.window_len();

  // The text rotated to start at the sentinel, extended by w bytes of
  // cyclic continuation so the last phrase can run through the sentinel window.
  std::string rotated(n + w, kSentinel);
  for (std::size_t j = 0; j < n + w; ++j) rotated[j] = text[(j + n - 1) % n];

  // phrase starts in rotated coordinates: the sentinel, then every other trigger
  std::vector<std::size_t> starts;
  starts.reserve(triggers.size() + 1);
  starts.push_back(0);
  for (std::size_t k = 0; k + 1 < triggers.size(); ++k) starts.push_back(triggers[k] + 1);
  starts.push_back(n);

  const std::string_view view(rotated);
  const std::size_t n_phrases = triggers.size();
  std::vector<std::string_view> occurrences(n_phrases);
  std::unordered_map<std::string_view, uint32_t> distinct;
  for (std::size_t k = 0; k < n_phrases; ++k) {
    occurrences[k] = view.substr(starts[k], starts[k + 1] + w - starts[k]);
    distinct.emplace(occurrences[k], 0);
  }
  if (distinct.size() > std::numeric_limits<uint32_t>::max()) {
    throw BuildError("dictionary has " + std::to_string(distinct.size()) + " phrases; at most 2^32 - 1 are supported");
  }

  std::vector<std::string_view> sorted;
  sorted.reserve(distinct.size());
  for (const auto& [phrase, id] : distinct) sorted.push_back(phrase);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t r = 0; r < sorted.size(); ++r) distinct[sorted[r]] = static_cast<uint32_t>(r);

  result.parse.phrase_ids.reserve(n_phrases);
  for (auto phrase : occurrences) result.parse.phrase_ids.push_back(distinct[phrase]);
  result.dictionary = Dictionary(sorted);
  return result;
}

// ---------------------------------------------------------------------------
// PhraseMap

PhraseMap::PhraseMap(Dictionary dictionary, uint64_t seed)
    : dict_(std::move(dictionary)), seed_(seed), kr_(phrase_hasher(seed)) {
  while (!try_build()) {
    if (++reseeds_ > kMaxReseeds) throw BuildError("phrase map: too many fingerprint collisions");
    seed_ = splitmix64(seed_);
    kr_ = phrase_hasher(seed_);
  }
}

bool PhraseMap::try_build() {
  table_.clear();
  table_.reserve(dict_.size());
  for (std::size_t i = 0; i < dict_.size(); ++i) {
    if (!table_.emplace(kr_.hash(dict_[i]), static_cast<uint32_t>(i)).second) return false;
  }
  return true;
}

std::optional<uint32_t> PhraseMap::lookup(std::string_view phrase) const {
  const auto it = table_.find(kr_.hash(phrase));
  if (it == table_.end() || dict_[it->second] != phrase) return std::nullopt;
  return it->second;
}

std::size_t PhraseMap::size_in_bytes() const {
  // rough: payload plus node-based table overhead
  return dict_.total_bytes() + (dict_.size() + 1) * 8 + table_.size() * 32 + table_.bucket_count() * 8;
}

PhraseMap build_phrase_map(Dictionary dictionary, uint64_t seed) { return PhraseMap(std::move(dictionary), seed); }

QueryParse parse_query(std::string_view q, const TriggerOracle& oracle, const PhraseMap& map) {
  const std::size_t w = oracle.window_len();
  std::vector<std::size_t> triggers;
  oracle.scan(q, triggers);
  if (triggers.empty()) return NoTrigger{q};

  PartialEncoding enc;
  enc.alpha = q.substr(0, triggers.front() + w);
  enc.mid_phrase_ids.reserve(triggers.size() - 1);
  for (std::size_t j = 0; j + 1 < triggers.size(); ++j) {
    const auto id = map.lookup(q.substr(triggers[j], triggers[j + 1] + w - triggers[j]));
    if (!id) return NotInDictionary{};
    enc.mid_phrase_ids.push_back(*id);
  }
  enc.beta = q.substr(triggers.back());
  return enc;
}

}  // namespace pfpfm
