#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "quartic/exactnum.hpp"
#include "quartic/fastrat.hpp"
#include "quartic/identity.hpp"
#include "quartic/nests.hpp"

namespace quartic {

// Reduced i/j with i != 0, j >= 1 and max(|i|, j) <= max_height, each once.
// Ordered by height, then by value.
std::vector<Rat> rationals_up_to(std::uint64_t max_height, bool include_negative);

struct SweepConfig {
  FamilyId family = FamilyId::A11;
  std::uint64_t max_height = 2;
  std::int64_t target_lo = 1;
  std::int64_t target_hi = 1000;
  bool include_negative_params = true;
  // Parameter tuples need max height strictly above this.
  std::uint64_t min_height_exclusive = 1;
  bool allow_zero_components = false;
  unsigned shard_index = 1;
  unsigned shard_count = 1;
  unsigned threads = 1;

  // Throws std::invalid_argument.
  void validate() const;
};

inline constexpr std::string_view kFlagDegenerateZero = "degenerate-zero";

struct CoverageRecord {
  std::int64_t n = 0;
  FamilyId family = FamilyId::A1;
  Params params;
  Rat alpha;
  CoverMode mode = CoverMode::Direct;
  Rat k;
  Quartet witness;
  std::vector<std::string> flags;

  friend bool operator==(const CoverageRecord&, const CoverageRecord&) = default;
};

// Canonical order: n, family, mode, max parameter height, params.
bool record_less(const CoverageRecord& a, const CoverageRecord& b);

// Describes one sweep (or one shard of it) in a store header.
struct RunInfo {
  FamilyId family = FamilyId::A11;
  std::uint64_t max_height = 0;
  std::int64_t target_lo = 1;
  std::int64_t target_hi = 1000;
  bool include_negative_params = true;
  std::uint64_t min_height_exclusive = 1;
  bool allow_zero_components = false;
  unsigned shard_index = 1;
  unsigned shard_count = 1;

  static RunInfo from(const SweepConfig& c);
  friend auto operator<=>(const RunInfo&, const RunInfo&) = default;
};

struct CoverageStore {
  std::vector<RunInfo> runs;
  std::vector<CoverageRecord> records;

  // Sorts records; merges shard runs that together form a whole run.
  void canonicalize();
  friend bool operator==(const CoverageStore&, const CoverageStore&) = default;
};

enum class TargetStatus { None, Direct, Indirect };

struct SweepSummary {
  std::int64_t target_lo = 1;
  std::int64_t target_hi = 0;
  std::vector<TargetStatus> status;  // index n - target_lo
  std::int64_t direct = 0;
  std::int64_t indirect = 0;
  std::int64_t unique() const { return direct + indirect; }
};

// Target counted Direct if any direct record exists, else Indirect.
SweepSummary summarize(const CoverageStore& store, std::int64_t lo, std::int64_t hi);

struct SweepStats {
  std::uint64_t tuples = 0;
  std::uint64_t skipped_domain = 0;
  std::uint64_t classified_hits = 0;
  std::uint64_t rejected_trivial = 0;
  std::uint64_t rejected_zero = 0;
  std::uint64_t slow_path = 0;
};

struct SweepResult {
  CoverageStore store;
  SweepSummary summary;
  SweepStats stats;
};

SweepResult sweep(const SweepConfig& config);

enum class Rejection { Trivial, ZeroComponent };

// Coverage witness with coefficient exactly n: negate if a < 0, invert for
// Indirect, scale by k, integerize. Throws std::logic_error if the result
// fails the identity (internal inconsistency).
std::variant<Quartet, Rejection> witness_for(std::int64_t n, const NestPoint& point,
                                             const Coverage& coverage,
                                             bool allow_zero_components = false);

// Maps a nest value to target naturals by fourth-free class, without
// per-target root extraction. Classes are keyed by the fourth-free integer
// p^(e mod 4) over primes up to the largest target; a value whose remaining
// cofactor is not a fourth power cannot reach any target.
class TargetClassifier {
 public:
  TargetClassifier(std::int64_t lo, std::int64_t hi);

  struct Hit {
    std::int64_t n;
    CoverMode mode;
  };

  // |num| / den must be reduced with den > 0. Appends to `out`.
  void classify(u128 num, u128 den, std::vector<Hit>& out) const;
  void classify(const Rat& alpha, std::vector<Hit>& out) const;

 private:
  template <class Int>
  bool class_values(Int num, Int den, std::uint64_t& direct, std::uint64_t& inverse) const;
  void emit(std::uint64_t direct, std::uint64_t inverse, std::vector<Hit>& out) const;

  std::int64_t lo_, hi_;
  std::vector<std::uint32_t> primes_;
  std::map<std::uint64_t, std::vector<std::int64_t>> by_class_;
};

// Problems found when re-checking a record; empty means it verifies.
std::vector<std::string> verify_record(const CoverageRecord& rec);

// Deduplicated union in canonical order; keeps the canonical-first record
// per (n, family, mode). Throws std::runtime_error on records with the same
// key and params but different content.
CoverageStore merge(const std::vector<CoverageStore>& stores);

// Store file I/O (line-delimited JSON). Throws std::runtime_error with the
// offending line number on corrupt input, std::ios_base::failure on I/O.
CoverageStore read_store(const std::string& path);
void write_store(const CoverageStore& store, const std::string& path);
std::string store_to_string(const CoverageStore& store);
CoverageStore store_from_string(const std::string& text, const std::string& origin = "<string>");
CoverageStore merge_runs(const std::vector<std::string>& paths);

inline constexpr std::string_view kToolVersion = "1.0.0";

}  // namespace quartic
