#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "quartic/report.hpp"
#include "support.hpp"

using namespace quartic;

namespace {

// Placeholder record; reporting trusts its inputs and never re-checks witnesses.
CoverageRecord fake(std::int64_t n, FamilyId f, CoverMode m = CoverMode::Direct) {
  CoverageRecord r;
  r.n = n;
  r.family = f;
  r.params = Params{Rat(n + 1), std::nullopt};
  r.alpha = Rat(n);
  r.mode = m;
  r.k = 1;
  r.witness = Quartet{Rat(n), {1, 1, 1, 1}};
  return r;
}

CoverageStore store_of(FamilyId f, std::vector<std::int64_t> ns, CoverMode m = CoverMode::Direct) {
  CoverageStore s;
  RunInfo run;
  run.family = f;
  run.max_height = 10;
  s.runs.push_back(run);
  for (auto n : ns) s.records.push_back(fake(n, f, m));
  return s;
}

}  // namespace

TEST_CASE("table columns") {
  auto l = build_ledger({store_of(FamilyId::A11, {6})}, 1, 1000);
  auto rows = coverage_table(l, {{FamilyId::A11}});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].total == 1);
  CHECK(rows[0].cumulative == 1);
  CHECK(rows[0].max_height == 10);

  l = build_ledger({store_of(FamilyId::A11, {6}), store_of(FamilyId::B12, {6, 13})}, 1, 1000);
  rows = coverage_table(l, {{FamilyId::A11}, {FamilyId::B12}});
  CHECK(rows[0].cumulative == 1);
  CHECK(rows[1].cumulative == 2);
}

TEST_CASE("direct and indirect are disjoint per family") {
  auto d = store_of(FamilyId::B14, {5, 7, 9});
  auto i = store_of(FamilyId::B14, {7, 11}, CoverMode::Indirect);
  auto l = build_ledger({d, i}, 1, 1000);
  auto rows = coverage_table(l, {{FamilyId::B14}});
  CHECK(rows[0].direct == 3);
  CHECK(rows[0].indirect == 1);
  CHECK(rows[0].total == 4);
  CHECK(l.covered(FamilyId::B14).size() == 4);

  // out-of-range records are ignored
  l = build_ledger({d, i}, 6, 10);
  CHECK(l.covered(FamilyId::B14) == std::set<std::int64_t>{7, 9});
}

TEST_CASE("grouped rows and subtotals") {
  auto l = build_ledger({store_of(FamilyId::B12, {2, 3}), store_of(FamilyId::B13, {3, 4}),
                         store_of(FamilyId::B11, {1}), store_of(FamilyId::B1, {9})},
                        1, 100);
  auto rows = coverage_table(l, parse_family_order("B1,B11,B12+B13"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].label == "B12+B13");
  CHECK(rows[2].total == 3);
  CHECK(rows[2].cumulative == 5);
  CHECK_FALSE(rows[0].group_subtotal);
  CHECK_FALSE(rows[1].group_subtotal);
  REQUIRE(rows[2].group_subtotal);
  CHECK(*rows[2].group_subtotal == 5);

  CHECK(parse_family_order("A1,A11,B1,B11,B12+B13,B14,B15,B2,B21") == default_family_order());
  CHECK_THROWS(parse_family_order("A1,,B1"));
  CHECK_THROWS(parse_family_order("A1,Q"));
}

TEST_CASE("cumulative is monotone and order independent at the end") {
  std::vector<CoverageStore> stores{store_of(FamilyId::A1, {1, 2, 3}), store_of(FamilyId::B1, {3, 4}),
                                    store_of(FamilyId::A11, {5, 1}), store_of(FamilyId::B2, {7})};
  auto l = build_ledger(stores, 1, 50);
  auto fwd = coverage_table(l, default_family_order());
  auto order = default_family_order();
  std::reverse(order.begin(), order.end());
  auto rev = coverage_table(l, order);
  for (std::size_t i = 1; i < fwd.size(); ++i) CHECK(fwd[i].cumulative >= fwd[i - 1].cumulative);
  CHECK(fwd.back().cumulative == rev.back().cumulative);
  CHECK(fwd.back().cumulative == 6);
}

TEST_CASE("venn regions partition the range") {
  auto empty = venn(build_ledger({}, 1, 1000));
  CHECK(empty.regions[0] == 1000);

  auto l = build_ledger({store_of(FamilyId::A1, {1, 2}), store_of(FamilyId::B1, {2})}, 1, 10);
  auto v = venn(l);
  CHECK(v.regions[1] == 1);
  CHECK(v.regions[3] == 1);
  CHECK(v.regions[0] == 8);
  CHECK(std::accumulate(v.regions.begin(), v.regions.end(), std::int64_t{0}) == 10);

  // tier-2 coverage counts toward its tier-1 parent
  l = build_ledger({store_of(FamilyId::A11, {4}), store_of(FamilyId::B21, {4, 5})}, 1, 10);
  v = venn(l);
  CHECK(v.regions[1 | 4] == 1);
  CHECK(v.regions[4] == 1);
  CHECK(v.tier2[FamilyId::A11] == 1);
  CHECK(v.tier2[FamilyId::B21] == 2);
}

TEST_CASE("fallout") {
  CHECK(fallout(build_ledger({}, 1, 3)) == std::vector<std::int64_t>{1, 2, 3});
  std::vector<std::int64_t> most;
  for (std::int64_t n = 1; n <= 1000; ++n)
    if (n != 214 && n != 830) most.push_back(n);
  auto l = build_ledger({store_of(FamilyId::B11, most)}, 1, 1000);
  CHECK(fallout(l) == std::vector<std::int64_t>{214, 830});
  auto f = fallout(l);
  auto c = l.covered(FamilyId::B11);
  CHECK(f.size() + c.size() == 1000);
  for (auto n : f) CHECK_FALSE(c.count(n));
}

TEST_CASE("conflicting stores are rejected") {
  auto a = store_of(FamilyId::A11, {6});
  auto b = a;
  b.records[0].witness.terms.A = 2;
  CHECK_THROWS(build_ledger({a, b}, 1, 1000));
}

TEST_CASE("exports") {
  CHECK(render_table({}, ExportFormat::Csv) == "family,a,M,D,I,D+I,Cum,Sub\n");

  auto l = build_ledger({store_of(FamilyId::A11, {6, 9}), store_of(FamilyId::B15, {2}, CoverMode::Indirect)},
                        1, 1000);
  auto rows = coverage_table(l, default_family_order());
  std::string csv = render_table(rows, ExportFormat::Csv);
  CHECK(csv.find("\nA11,u^2-3,10,2,0,2,2,2\n") != std::string::npos);
  CHECK(csv.find("\nB15,u^2+9/4,10,0,1,1,3,1\n") != std::string::npos);
  CHECK(render_table(rows, ExportFormat::Csv) == csv);

  std::string text = render_table(rows, ExportFormat::Text);
  CHECK(text.rfind("family", 0) == 0);
  CHECK(text.find("u^2 - 3") != std::string::npos);

  std::string js = render_table(rows, ExportFormat::Json);
  CHECK(js.find("\"rows\"") != std::string::npos);

  CHECK(ledger_from_json(render_ledger(l, ExportFormat::Json)) == l);
  CHECK(render_ledger(l, ExportFormat::Csv).rfind("n,family,mode\n", 0) == 0);

  CHECK(parse_format("csv") == ExportFormat::Csv);
  CHECK_THROWS(parse_format("xml"));

  auto path = (std::filesystem::temp_directory_path() / "quartic_report_test.csv").string();
  write_text_file(path, csv);
  std::ifstream in(path);
  std::string back((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(back == csv);
  std::filesystem::remove(path);
  CHECK_THROWS(write_text_file("/nonexistent-dir/x.csv", csv));
}
