#include "quartic/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace quartic {

using nlohmann::json;

std::set<std::int64_t> CoverageLedger::covered(FamilyId f) const {
  std::set<std::int64_t> out;
  if (auto it = families.find(f); it != families.end()) {
    out.insert(it->second.direct.begin(), it->second.direct.end());
    out.insert(it->second.indirect.begin(), it->second.indirect.end());
  }
  return out;
}

CoverageLedger build_ledger(const std::vector<CoverageStore>& stores, std::int64_t lo, std::int64_t hi) {
  CoverageStore merged = merge(stores);
  CoverageLedger ledger;
  ledger.lo = lo;
  ledger.hi = hi;
  for (const auto& run : merged.runs) {
    auto& sets = ledger.families[run.family];
    sets.max_height = std::max(sets.max_height, run.max_height);
  }
  for (const auto& rec : merged.records) {
    if (rec.n < lo || rec.n > hi) continue;
    auto& sets = ledger.families[rec.family];
    if (rec.mode == CoverMode::Direct) sets.direct.insert(rec.n);
  }
  for (const auto& rec : merged.records) {
    if (rec.n < lo || rec.n > hi || rec.mode != CoverMode::Indirect) continue;
    auto& sets = ledger.families[rec.family];
    if (!sets.direct.count(rec.n)) sets.indirect.insert(rec.n);
  }
  return ledger;
}

std::vector<FamilyGroup> default_family_order() {
  using F = FamilyId;
  return {{F::A1}, {F::A11}, {F::B1}, {F::B11}, {F::B12, F::B13}, {F::B14}, {F::B15}, {F::B2}, {F::B21}};
}

std::vector<FamilyGroup> parse_family_order(const std::string& text) {
  std::vector<FamilyGroup> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    FamilyGroup g;
    std::stringstream is(item);
    std::string name;
    while (std::getline(is, name, '+')) g.push_back(parse_family(name));
    if (g.empty()) throw std::invalid_argument("empty family group in order: " + text);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<TableRow> coverage_table(const CoverageLedger& ledger, const std::vector<FamilyGroup>& order) {
  std::vector<TableRow> rows;
  std::set<std::int64_t> cumulative;
  std::map<FamilyId, std::set<std::int64_t>> by_parent;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& group = order[i];
    std::set<std::int64_t> direct, any;
    std::uint64_t m = 0;
    std::string label;
    for (FamilyId f : group) {
      if (!label.empty()) label += "+";
      label += family_name(f);
      if (auto it = ledger.families.find(f); it != ledger.families.end()) {
        direct.insert(it->second.direct.begin(), it->second.direct.end());
        m = std::max(m, it->second.max_height);
      }
      auto c = ledger.covered(f);
      any.insert(c.begin(), c.end());
    }
    cumulative.insert(any.begin(), any.end());
    FamilyId parent = family_info(group.front()).parent;
    by_parent[parent].insert(any.begin(), any.end());

    TableRow row;
    row.label = label;
    row.a_form = std::string(family_info(group.front()).a_form);
    row.max_height = m;
    row.direct = static_cast<std::int64_t>(direct.size());
    row.total = static_cast<std::int64_t>(any.size());
    row.indirect = row.total - row.direct;
    row.cumulative = static_cast<std::int64_t>(cumulative.size());
    bool last_of_parent = true;
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (family_info(order[j].front()).parent == parent) last_of_parent = false;
    if (last_of_parent && family_info(group.front()).tier == 2)
      row.group_subtotal = static_cast<std::int64_t>(by_parent[parent].size());
    rows.push_back(std::move(row));
  }
  return rows;
}

VennCounts venn(const CoverageLedger& ledger) {
  VennCounts v;
  std::map<FamilyId, std::set<std::int64_t>> tier1;
  for (const auto& info : families()) {
    auto c = ledger.covered(info.id);
    tier1[info.parent].insert(c.begin(), c.end());
    if (info.tier == 2) v.tier2[info.id] = static_cast<std::int64_t>(c.size());
  }
  for (std::int64_t n = ledger.lo; n <= ledger.hi; ++n) {
    int idx = (tier1[FamilyId::A1].count(n) ? 1 : 0) | (tier1[FamilyId::B1].count(n) ? 2 : 0) |
              (tier1[FamilyId::B2].count(n) ? 4 : 0);
    ++v.regions[static_cast<std::size_t>(idx)];
  }
  return v;
}

std::vector<std::int64_t> fallout(const CoverageLedger& ledger) {
  std::set<std::int64_t> all;
  for (const auto& [f, sets] : ledger.families) {
    all.insert(sets.direct.begin(), sets.direct.end());
    all.insert(sets.indirect.begin(), sets.indirect.end());
  }
  std::vector<std::int64_t> out;
  for (std::int64_t n = ledger.lo; n <= ledger.hi; ++n)
    if (!all.count(n)) out.push_back(n);
  return out;
}

ExportFormat parse_format(const std::string& s) {
  if (s == "csv") return ExportFormat::Csv;
  if (s == "json") return ExportFormat::Json;
  if (s == "text") return ExportFormat::Text;
  throw std::invalid_argument("unknown format: " + s);
}

namespace {

json row_json(const TableRow& r) {
  json j{{"family", r.label}, {"a", r.a_form}, {"M", r.max_height}, {"D", r.direct},
         {"I", r.indirect},   {"D+I", r.total}, {"Cum", r.cumulative}};
  j["Sub"] = r.group_subtotal ? json(*r.group_subtotal) : json(nullptr);
  return j;
}

}  // namespace

std::string render_table(const std::vector<TableRow>& rows, ExportFormat fmt) {
  std::ostringstream out;
  switch (fmt) {
    case ExportFormat::Csv:
      out << "family,a,M,D,I,D+I,Cum,Sub\n";
      for (const auto& r : rows) {
        std::string form = r.a_form;
        form.erase(std::remove(form.begin(), form.end(), ' '), form.end());
        out << r.label << ',' << form << ',' << r.max_height << ',' << r.direct << ',' << r.indirect
            << ',' << r.total << ',' << r.cumulative << ','
            << (r.group_subtotal ? std::to_string(*r.group_subtotal) : "") << '\n';
      }
      break;
    case ExportFormat::Json: {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(row_json(r));
      out << json{{"rows", arr}}.dump(2) << '\n';
      break;
    }
    case ExportFormat::Text:
      out << std::left << std::setw(9) << "family" << std::setw(36) << "a" << std::right << std::setw(6)
          << "M" << std::setw(6) << "D" << std::setw(6) << "I" << std::setw(6) << "D+I" << std::setw(6)
          << "Sub" << std::setw(6) << "Cum" << '\n';
      for (const auto& r : rows) {
        std::string form = r.a_form.size() > 34 ? r.a_form.substr(0, 31) + "..." : r.a_form;
        out << std::left << std::setw(9) << r.label << std::setw(36) << form << std::right << std::setw(6)
            << r.max_height << std::setw(6) << r.direct << std::setw(6) << r.indirect << std::setw(6)
            << r.total << std::setw(6) << (r.group_subtotal ? std::to_string(*r.group_subtotal) : "")
            << std::setw(6) << r.cumulative << '\n';
      }
      break;
  }
  return out.str();
}

std::string render_ledger(const CoverageLedger& ledger, ExportFormat fmt) {
  std::ostringstream out;
  switch (fmt) {
    case ExportFormat::Json: {
      json fams = json::object();
      for (const auto& [f, sets] : ledger.families)
        fams[std::string(family_name(f))] = json{
            {"direct", sets.direct}, {"indirect", sets.indirect}, {"max_height", sets.max_height}};
      out << json{{"lo", ledger.lo}, {"hi", ledger.hi}, {"families", fams}}.dump() << '\n';
      break;
    }
    case ExportFormat::Csv:
      out << "n,family,mode\n";
      for (const auto& [f, sets] : ledger.families) {
        for (auto n : sets.direct) out << n << ',' << family_name(f) << ",direct\n";
        for (auto n : sets.indirect) out << n << ',' << family_name(f) << ",indirect\n";
      }
      break;
    case ExportFormat::Text:
      for (const auto& [f, sets] : ledger.families) {
        out << family_name(f) << " (M=" << sets.max_height << ") direct " << sets.direct.size()
            << ", indirect " << sets.indirect.size() << '\n';
      }
      break;
  }
  return out.str();
}

CoverageLedger ledger_from_json(const std::string& text) {
  json j = json::parse(text);
  CoverageLedger l;
  l.lo = j.at("lo").get<std::int64_t>();
  l.hi = j.at("hi").get<std::int64_t>();
  for (const auto& [name, v] : j.at("families").items()) {
    auto& sets = l.families[parse_family(name)];
    sets.direct = v.at("direct").get<std::set<std::int64_t>>();
    sets.indirect = v.at("indirect").get<std::set<std::int64_t>>();
    sets.max_height = v.at("max_height").get<std::uint64_t>();
  }
  return l;
}

std::string render_venn(const VennCounts& v, ExportFormat fmt) {
  static const char* names[8] = {"none", "A1", "B1", "A1&B1", "B2", "A1&B2", "B1&B2", "A1&B1&B2"};
  std::ostringstream out;
  if (fmt == ExportFormat::Json) {
    json regions = json::object();
    for (int i = 0; i < 8; ++i) regions[names[i]] = v.regions[static_cast<std::size_t>(i)];
    json t2 = json::object();
    for (const auto& [f, c] : v.tier2) t2[std::string(family_name(f))] = c;
    out << json{{"regions", regions}, {"tier2", t2}}.dump(2) << '\n';
    return out.str();
  }
  const char sep = fmt == ExportFormat::Csv ? ',' : ' ';
  if (fmt == ExportFormat::Csv) out << "region,count\n";
  for (int i = 0; i < 8; ++i) out << names[i] << sep << v.regions[static_cast<std::size_t>(i)] << '\n';
  for (const auto& [f, c] : v.tier2) out << family_name(f) << sep << c << '\n';
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << content;
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace quartic
