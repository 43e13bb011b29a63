#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "quartic/enumerate.hpp"

namespace quartic {

using nlohmann::json;

namespace {

json quartet_json(const Quartet& q) {
  return json{{"a", q.a.str()},
              {"A", q.terms.A.str()},
              {"B", q.terms.B.str()},
              {"C", q.terms.C.str()},
              {"D", q.terms.D.str()}};
}

Quartet quartet_from(const json& j) {
  auto r = [&](const char* key) { return Rat::parse(j.at(key).get<std::string>()); };
  return Quartet{r("a"), Terms{r("A"), r("B"), r("C"), r("D")}};
}

json record_json(const CoverageRecord& rec) {
  json params = json::array();
  params.push_back(rec.params.u.str());
  if (rec.params.v) params.push_back(rec.params.v->str());
  return json{{"n", rec.n},
              {"family", std::string(family_name(rec.family))},
              {"params", params},
              {"alpha", rec.alpha.str()},
              {"mode", std::string(mode_name(rec.mode))},
              {"k", rec.k.str()},
              {"witness", quartet_json(rec.witness)},
              {"flags", rec.flags}};
}

CoverageRecord record_from(const json& j) {
  CoverageRecord rec;
  rec.n = j.at("n").get<std::int64_t>();
  rec.family = parse_family(j.at("family").get<std::string>());
  const auto& params = j.at("params");
  if (params.empty() || params.size() > 2) throw std::invalid_argument("params must have 1 or 2 entries");
  rec.params.u = Rat::parse(params.at(0).get<std::string>());
  if (params.size() == 2) rec.params.v = Rat::parse(params.at(1).get<std::string>());
  if ((family_info(rec.family).param_count == 2) != rec.params.v.has_value())
    throw std::invalid_argument("parameter count does not match family");
  rec.alpha = Rat::parse(j.at("alpha").get<std::string>());
  rec.mode = parse_mode(j.at("mode").get<std::string>());
  rec.k = Rat::parse(j.at("k").get<std::string>());
  rec.witness = quartet_from(j.at("witness"));
  rec.flags = j.at("flags").get<std::vector<std::string>>();
  return rec;
}

json run_json(const RunInfo& r) {
  return json{{"family", std::string(family_name(r.family))},
              {"max_height", r.max_height},
              {"targets", std::to_string(r.target_lo) + ".." + std::to_string(r.target_hi)},
              {"include_negative_params", r.include_negative_params},
              {"min_height_exclusive", r.min_height_exclusive},
              {"allow_zero_components", r.allow_zero_components},
              {"shard", std::to_string(r.shard_index) + "/" + std::to_string(r.shard_count)}};
}

std::pair<std::int64_t, std::int64_t> split_pair(const std::string& s, const std::string& sep) {
  auto pos = s.find(sep);
  if (pos == std::string::npos) throw std::invalid_argument("expected '" + sep + "' in " + s);
  return {std::stoll(s.substr(0, pos)), std::stoll(s.substr(pos + sep.size()))};
}

RunInfo run_from(const json& j) {
  RunInfo r;
  r.family = parse_family(j.at("family").get<std::string>());
  r.max_height = j.at("max_height").get<std::uint64_t>();
  std::tie(r.target_lo, r.target_hi) = split_pair(j.at("targets").get<std::string>(), "..");
  r.include_negative_params = j.at("include_negative_params").get<bool>();
  r.min_height_exclusive = j.at("min_height_exclusive").get<std::uint64_t>();
  r.allow_zero_components = j.at("allow_zero_components").get<bool>();
  auto [i, n] = split_pair(j.at("shard").get<std::string>(), "/");
  r.shard_index = static_cast<unsigned>(i);
  r.shard_count = static_cast<unsigned>(n);
  return r;
}

}  // namespace

std::string store_to_string(const CoverageStore& store) {
  std::ostringstream out;
  json runs = json::array();
  for (const auto& r : store.runs) runs.push_back(run_json(r));
  json header{{"header", {{"tool", "quartic"}, {"version", std::string(kToolVersion)}, {"runs", runs}}}};
  out << header.dump() << '\n';
  for (const auto& rec : store.records) out << record_json(rec).dump() << '\n';
  return out.str();
}

CoverageStore store_from_string(const std::string& text, const std::string& origin) {
  CoverageStore store;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      if (j.contains("header")) {
        for (const auto& r : j.at("header").at("runs")) store.runs.push_back(run_from(r));
      } else {
        store.records.push_back(record_from(j));
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": corrupt record: " + e.what());
    }
  }
  return store;
}

CoverageStore read_store(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return store_from_string(buf.str(), path);
}

void write_store(const CoverageStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << store_to_string(store);
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

CoverageStore merge_runs(const std::vector<std::string>& paths) {
  std::vector<CoverageStore> stores;
  for (const auto& p : paths) stores.push_back(read_store(p));
  return merge(stores);
}

}  // namespace quartic
