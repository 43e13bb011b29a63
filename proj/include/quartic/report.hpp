#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quartic/enumerate.hpp"
#include "quartic/nests.hpp"

namespace quartic {

// Verified coverage per family over a target range.
struct CoverageLedger {
  std::int64_t lo = 1;
  std::int64_t hi = 1000;
  struct Sets {
    std::set<std::int64_t> direct;
    std::set<std::int64_t> indirect;  // excludes targets already in direct
    std::uint64_t max_height = 0;     // largest M over the family's runs
    bool operator==(const Sets&) const = default;
  };
  std::map<FamilyId, Sets> families;

  std::set<std::int64_t> covered(FamilyId f) const;
  bool operator==(const CoverageLedger&) const = default;
};

// Merges the stores (conflicting witnesses throw) and tallies by family.
CoverageLedger build_ledger(const std::vector<CoverageStore>& stores, std::int64_t lo, std::int64_t hi);

// One table row may combine families that share a coefficient (B12, B13).
using FamilyGroup = std::vector<FamilyId>;

std::vector<FamilyGroup> default_family_order();
// "A1,A11,B1,B11,B12+B13,B14,B15,B2,B21".
std::vector<FamilyGroup> parse_family_order(const std::string& text);

struct TableRow {
  std::string label;
  std::string a_form;
  std::uint64_t max_height;
  std::int64_t direct, indirect, total;
  std::int64_t cumulative;
  // Union size over the tier-1 nest group, printed on the group's last row.
  std::optional<std::int64_t> group_subtotal;

  bool operator==(const TableRow&) const = default;
};

std::vector<TableRow> coverage_table(const CoverageLedger& ledger, const std::vector<FamilyGroup>& order);

struct VennCounts {
  // Index bits: 1 = A1, 2 = B1, 4 = B2. Tier-1 membership includes the
  // tier-2 families nested in each.
  std::array<std::int64_t, 8> regions{};
  std::map<FamilyId, std::int64_t> tier2;
};

VennCounts venn(const CoverageLedger& ledger);
std::vector<std::int64_t> fallout(const CoverageLedger& ledger);

enum class ExportFormat { Csv, Json, Text };
ExportFormat parse_format(const std::string& s);

std::string render_table(const std::vector<TableRow>& rows, ExportFormat fmt);
std::string render_ledger(const CoverageLedger& ledger, ExportFormat fmt);
CoverageLedger ledger_from_json(const std::string& text);
std::string render_venn(const VennCounts& v, ExportFormat fmt);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace quartic
