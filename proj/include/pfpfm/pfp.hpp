#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pfpfm/karp_rabin.hpp"
#include "pfpfm/serialize.hpp"

namespace pfpfm {

// Sentinel byte terminating every indexed text; it may not occur in the input.
inline constexpr char kSentinel = '\0';

inline constexpr uint64_t kDefaultTriggerBase = 1099511628211ULL;

/// Decides which length-w windows are trigger strings.
///
/// HashBased: a window is a trigger iff its Karp-Rabin fingerprint is 0
/// modulo p.  ExplicitSet: a window is a trigger iff it is in a fixed set.
/// In both modes the classification depends only on window content.  When
/// scanning a sentinel-terminated text cyclically, the window that starts at
/// the sentinel is always a trigger and no other window covering the sentinel
/// is.
class TriggerOracle {
 public:
  enum class Mode : uint8_t { HashBased = 0, ExplicitSet = 1 };

  static TriggerOracle hash_based(uint32_t window_len, uint64_t modulus, uint64_t kr_base = kDefaultTriggerBase,
                                  uint64_t kr_prime = kMersenne61);
  static TriggerOracle explicit_set(uint32_t window_len, std::vector<std::string> triggers);

  Mode mode() const { return mode_; }
  uint32_t window_len() const { return w_; }
  uint64_t modulus() const { return p_; }
  uint64_t kr_base() const { return kr_.base(); }
  uint64_t kr_prime() const { return kr_.prime(); }
  const std::set<std::string, std::less<>>& triggers() const { return set_; }

  /// Classifies a single window of exactly window_len() bytes.
  bool is_trigger(std::string_view window) const;

  /// Start positions of trigger windows lying fully inside `text`, ascending.
  /// Appends to `out`, offsetting each position by `offset`.
  void scan(std::string_view text, std::vector<std::size_t>& out, std::size_t offset = 0) const;

  void save(ByteWriter& out) const;
  static TriggerOracle load(ByteReader& in);

  friend bool operator==(const TriggerOracle& a, const TriggerOracle& b) {
    return a.mode_ == b.mode_ && a.w_ == b.w_ && a.p_ == b.p_ && a.kr_.base() == b.kr_.base() &&
           a.kr_.prime() == b.kr_.prime() && a.set_ == b.set_;
  }

 private:
  TriggerOracle(Mode mode, uint32_t w, uint64_t p, KarpRabin kr) : mode_(mode), w_(w), p_(p), kr_(kr) {}

  Mode mode_;
  uint32_t w_;
  uint64_t p_;
  KarpRabin kr_;
  std::set<std::string, std::less<>> set_;
};

/// Trigger positions of `text`.  With cyclic = true the text must end with the
/// unique sentinel; windows wrap around and position |text| - 1 is always
/// included.  With cyclic = false only windows fully inside the text count.
std::vector<std::size_t> find_triggers(std::string_view text, const TriggerOracle& oracle, bool cyclic);

/// Lexicographically sorted, duplicate-free phrase list stored contiguously.
class Dictionary {
 public:
  Dictionary() = default;
  /// Throws std::invalid_argument unless the phrases are strictly increasing.
  explicit Dictionary(const std::vector<std::string_view>& sorted_phrases);
  explicit Dictionary(const std::vector<std::string>& sorted_phrases);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::string_view operator[](std::size_t i) const {
    return std::string_view(bytes_).substr(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  std::size_t total_bytes() const { return bytes_.size(); }

  void save(ByteWriter& out) const;
  static Dictionary load(ByteReader& in);

 private:
  std::string bytes_;
  std::vector<uint64_t> offsets_;
};

struct ParseResult {
  // phrase ranks in text order, starting with the phrase that begins at the sentinel
  std::vector<uint32_t> phrase_ids;
  // ascending trigger start positions in the sentinel-terminated text
  std::vector<std::size_t> trigger_positions;
};

struct ParsedText {
  Dictionary dictionary;
  ParseResult parse;
};

/// Prefix-free parse of a sentinel-terminated text.
///
/// Phrases run from one trigger window to the end of the next one, so
/// consecutive phrases overlap by w bytes.  The parse is read cyclically
/// starting at the sentinel, which makes phrase 0 (the one starting with the
/// sentinel) both the first parse entry and its only 0.
ParsedText parse_text(std::string_view text, const TriggerOracle& oracle);

/// Exact phrase -> rank map keyed by a seeded Karp-Rabin fingerprint.
///
/// Each hit is verified against the stored phrase bytes, so a lookup never
/// reports a phrase that is not in the dictionary.  A fingerprint collision
/// between two dictionary phrases triggers a reseed.
class PhraseMap {
 public:
  static constexpr unsigned kMaxReseeds = 64;

  PhraseMap() : kr_(257, kMersenne61) {}
  PhraseMap(Dictionary dictionary, uint64_t seed);

  std::optional<uint32_t> lookup(std::string_view phrase) const;

  const Dictionary& dictionary() const { return dict_; }
  // seed after any reseeding; rebuilding with it reproduces this map
  uint64_t seed() const { return seed_; }
  unsigned reseeds() const { return reseeds_; }
  uint64_t fingerprint(std::string_view phrase) const { return kr_.hash(phrase); }

  std::size_t size_in_bytes() const;

 private:
  bool try_build();

  Dictionary dict_;
  uint64_t seed_ = 0;
  unsigned reseeds_ = 0;
  KarpRabin kr_;
  std::unordered_map<uint64_t, uint32_t> table_;
};

PhraseMap build_phrase_map(Dictionary dictionary, uint64_t seed);

/// Query decomposition: ragged prefix, complete phrases, ragged suffix.
/// Views point into the parsed query.
struct PartialEncoding {
  std::string_view alpha;  // q[0, t0 + w); its last w bytes are the first trigger
  std::vector<uint32_t> mid_phrase_ids;
  std::string_view beta;  // q[t_last, |q|)
};

struct NoTrigger {
  std::string_view query;
};

struct NotInDictionary {};

using QueryParse = std::variant<PartialEncoding, NoTrigger, NotInDictionary>;

/// Parses a query with non-cyclic windows.  A complete phrase missing from the
/// dictionary proves the query does not occur in the text.
QueryParse parse_query(std::string_view q, const TriggerOracle& oracle, const PhraseMap& map);

}  // namespace pfpfm
