// Command-line front end: sweeps, targeted searches, sieve tables,
// store verification and coverage reports.

#include <glob.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quartic/enumerate.hpp"
#include "quartic/exactnum.hpp"
#include "quartic/report.hpp"
#include "quartic/sieve.hpp"

namespace {

using namespace quartic;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Merges a JSON config object into argv: keys mirror flag names, and only
// flags absent from the command line are taken from the file.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw CLI::ParseError("--config requires a path", kExitUsage);
  std::string path = *(it + 1);
  args.erase(it, it + 2);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw CLI::ParseError("bad config " + path + ": " + e.what(), kExitUsage);
  }
  if (!cfg.is_object()) throw CLI::ParseError("config must be a JSON object", kExitUsage);
  for (const auto& [key, value] : cfg.items()) {
    std::string flag = "--" + key;
    bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else {
      args.push_back(flag);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return args;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) throw CLI::ValidationError("--targets", "expected LO..HI");
  return {std::stoll(s.substr(0, pos)), std::stoll(s.substr(pos + 2))};
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == 0)
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  globfree(&g);
  std::sort(out.begin(), out.end());
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search and verification tool for A^4 + a B^4 = C^4 + a D^4"};
  app.require_subcommand(1);

  // verify
  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Re-check every record of a store file");
  verify->add_option("store", verify_path, "Store file")->required();

  // sweep
  std::string family_name_arg, targets = "1..1000", shard = "1/1", sweep_out;
  SweepConfig sc;
  bool positive_only = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Height-bounded coverage sweep of one family");
  sweep_cmd->add_option("--family", family_name_arg, "A1 B1 B2 A11 B11 B12 B13 B14 B15 B21")->required();
  sweep_cmd->add_option("--max-height", sc.max_height, "Largest parameter height M")->required();
  sweep_cmd->add_option("--targets", targets, "Target range LO..HI");
  sweep_cmd->add_option("--shard", shard, "Shard i/n");
  sweep_cmd->add_option("--threads", sc.threads, "Worker threads");
  sweep_cmd->add_option("--min-height", sc.min_height_exclusive, "Tuples need max height above this");
  sweep_cmd->add_flag("--allow-zero-components", sc.allow_zero_components);
  sweep_cmd->add_flag("--positive-params-only", positive_only);
  sweep_cmd->add_option("--out", sweep_out, "Store file to write")->required();

  // targeted
  TargetedQuery tq;
  std::string c_arg, experimental_c, targeted_out;
  auto* targeted_cmd = app.add_subcommand("targeted", "Search u^2 + c X^4 = a Y^4");
  targeted_cmd->add_option("--a", tq.a, "Signed target coefficient")->required();
  auto* c_opt = targeted_cmd->add_option("--c", c_arg, "Shift: -3, -1, 2, 3 or 9/4");
  auto* xc_opt = targeted_cmd->add_option("--experimental-c", experimental_c, "Experimental shift (-9/4)");
  c_opt->excludes(xc_opt);
  targeted_cmd->add_option("--xmax", tq.x_max, "Largest X");
  targeted_cmd->add_option("--threads", tq.threads, "Worker threads");
  targeted_cmd->add_option("--out", targeted_out, "Write hit records as a store file");

  // sieve
  std::int64_t sieve_a = 0;
  std::string sieve_c;
  auto* sieve_cmd = app.add_subcommand("sieve", "Mod-8 parity feasibility table");
  sieve_cmd->add_option("--a", sieve_a, "Signed coefficient")->required();
  sieve_cmd->add_option("--c", sieve_c, "Shift")->required();

  // report
  std::string report_in, report_format = "text", report_order, report_targets = "1..1000", report_out;
  auto* report_cmd = app.add_subcommand("report", "Coverage table, Venn regions and fallout");
  report_cmd->add_option("--in", report_in, "Glob of store files")->required();
  report_cmd->add_option("--format", report_format, "csv, json or text");
  report_cmd->add_option("--order", report_order, "Row order, e.g. A1,A11,B1,B11,B12+B13,B14,B15,B2,B21");
  report_cmd->add_option("--targets", report_targets, "Target range LO..HI");
  report_cmd->add_option("--out", report_out, "Output file (default stdout)");

  // class
  std::string class_alpha;
  std::int64_t class_n = 0;
  auto* class_cmd = app.add_subcommand("class", "Coverage verdict of a nest value for a target");
  class_cmd->add_option("--alpha", class_alpha, "Rational nest value")->required();
  class_cmd->add_option("--n", class_n, "Target natural")->required();

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    std::reverse(args.begin(), args.end());
    args = apply_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }

  try {
    if (*verify) {
      CoverageStore store;
      try {
        store = read_store(verify_path);
      } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
      } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerify;
      }
      std::size_t bad = 0;
      for (const auto& rec : store.records) {
        auto problems = verify_record(rec);
        if (problems.empty()) continue;
        ++bad;
        for (const auto& p : problems)
          std::cerr << "n=" << rec.n << " " << family_name(rec.family) << " " << mode_name(rec.mode) << ": " << p
                    << '\n';
      }
      std::cout << store.records.size() - bad << "/" << store.records.size() << " records verified\n";
      return bad == 0 ? kExitOk : kExitVerify;
    }

    if (*sweep_cmd) {
      try {
        sc.family = parse_family(family_name_arg);
        std::tie(sc.target_lo, sc.target_hi) = parse_range(targets);
        auto slash = shard.find('/');
        if (slash == std::string::npos) throw std::invalid_argument("--shard expects i/n");
        sc.shard_index = static_cast<unsigned>(std::stoul(shard.substr(0, slash)));
        sc.shard_count = static_cast<unsigned>(std::stoul(shard.substr(slash + 1)));
        sc.include_negative_params = !positive_only;
        sc.validate();
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      auto t0 = std::chrono::steady_clock::now();
      SweepResult res = sweep(sc);
      auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cerr << "sweep " << family_name(sc.family) << " M=" << sc.max_height << ": " << res.stats.tuples
                << " tuples, " << res.stats.classified_hits << " class hits, " << res.stats.rejected_trivial
                << " trivial, " << res.stats.rejected_zero << " zero-component, " << res.stats.slow_path
                << " slow-path, " << secs << " s\n";
      write_store(res.store, sweep_out);
      std::cout << family_name(sc.family) << " M=" << sc.max_height << " D=" << res.summary.direct
                << " I=" << res.summary.indirect << " D+I=" << res.summary.unique() << '\n';
      return kExitOk;
    }

    if (*targeted_cmd) {
      try {
        if (!experimental_c.empty()) {
          tq.c = Rat::parse(experimental_c);
          tq.experimental = true;
        } else if (!c_arg.empty()) {
          tq.c = Rat::parse(c_arg);
        } else {
          throw std::invalid_argument("--c or --experimental-c is required");
        }
        tq.validate();
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      TargetedResult res = targeted(tq);
      if (res.excluded) {
        std::cout << "excluded: " << std::llabs(tq.a)
                  << " has a prime = 3 (mod 4) to an odd power; no u^2 + 9/4 representation\n";
        return kExitOk;
      }
      CoverageStore store;
      for (const auto& h : res.hits) {
        std::cout << "hit u=" << h.u.get_str() << " X=" << h.x << " Y=" << h.y << " u_hat=" << h.u_hat.str()
                  << " mode=" << mode_name(h.coverage.mode) << " k=" << h.coverage.k.str()
                  << (h.record ? "" : " (no accepted witness)") << '\n';
        if (h.record) store.records.push_back(*h.record);
      }
      std::cout << res.hits.size() << " hits over " << res.pairs_tested << " coprime (X, Y) pairs\n";
      if (!targeted_out.empty()) {
        store = merge({store});
        write_store(store, targeted_out);
      }
      return kExitOk;
    }

    if (*sieve_cmd) {
      Rat c;
      try {
        c = Rat::parse(sieve_c);
        if (!is_supported_shift(c, true)) throw std::invalid_argument("unsupported shift " + sieve_c);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      auto rows = parity_table(sieve_a, c);
      std::cout << "a c u X Y lhs rhs matched\n";
      auto parity = [](bool odd) { return odd ? "Odd" : "Even"; };
      for (const auto& r : rows)
        std::cout << r.a << ' ' << r.c.str() << ' ' << parity(r.u_odd) << ' ' << parity(r.x_odd) << ' '
                  << parity(r.y_odd) << " {" << join(r.lhs) << "} {" << join(r.rhs) << "} " << join(r.matched)
                  << '\n';
      return kExitOk;
    }

    if (*report_cmd) {
      ExportFormat fmt;
      std::vector<FamilyGroup> order;
      std::int64_t lo, hi;
      try {
        fmt = parse_format(report_format);
        order = report_order.empty() ? default_family_order() : parse_family_order(report_order);
        std::tie(lo, hi) = parse_range(report_targets);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      auto paths = expand_glob(report_in);
      if (paths.empty()) {
        std::cerr << "error: no store files match " << report_in << '\n';
        return kExitIo;
      }
      std::vector<CoverageStore> stores;
      for (const auto& p : paths) stores.push_back(read_store(p));
      CoverageLedger ledger = build_ledger(stores, lo, hi);
      auto rows = coverage_table(ledger, order);
      auto v = venn(ledger);
      auto f = fallout(ledger);
      std::ostringstream out;
      if (fmt == ExportFormat::Csv) {
        out << render_table(rows, fmt);
      } else if (fmt == ExportFormat::Json) {
        nlohmann::json j = nlohmann::json::parse(render_table(rows, fmt));
        j["venn"] = nlohmann::json::parse(render_venn(v, fmt));
        j["fallout"] = f;
        out << j.dump(2) << '\n';
      } else {
        out << render_table(rows, fmt) << '\n' << render_venn(v, fmt) << "\nfallout (" << f.size() << "):";
        for (std::size_t i = 0; i < f.size() && i < 50; ++i) out << ' ' << f[i];
        if (f.size() > 50) out << " ...";
        out << '\n';
      }
      emit(out.str(), report_out);
      return kExitOk;
    }

    if (*class_cmd) {
      Rat alpha;
      try {
        alpha = Rat::parse(class_alpha);
        if (alpha.is_zero()) throw std::invalid_argument("alpha must be nonzero");
        if (class_n <= 0) throw std::invalid_argument("n must be positive");
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      auto cov = covers(BigInt(static_cast<long>(class_n)), alpha);
      if (!cov) {
        std::cout << "None\n";
      } else {
        std::cout << (cov->mode == CoverMode::Direct ? "Direct" : "Indirect") << " k=" << cov->k.str() << '\n';
      }
      return kExitOk;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
