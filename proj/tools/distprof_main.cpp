// distprof: distance profiles between a pattern and a text under an
// alphabet metric. Exact profiles via convolution or the naive oracle,
// (1 +- eps)-approximate profiles via sampling over separating hashes,
// plus one-mismatch labeling, hash-family validation, and benchmarking.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "distprof/distprof.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string text_path, pattern_path, metric_path, out_path;
  std::string format = "json";
  std::string wildcard = "?";
  std::string seed_str;
  bool bytes = false;
  bool skip_triangle_check = false;
};

void add_io_opts(CLI::App* cmd, CommonOpts& o, bool needs_strings = true) {
  if (needs_strings) {
    cmd->add_option("--text", o.text_path, "text file")->required();
    cmd->add_option("--pattern", o.pattern_path, "pattern file")->required();
  }
  cmd->add_option("--metric", o.metric_path, "metric JSON file")->required();
  cmd->add_option("--out", o.out_path, "output file (default stdout)");
  cmd->add_option("--format", o.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--wildcard", o.wildcard, "wildcard token (default ?)");
  cmd->add_flag("--bytes", o.bytes, "treat inputs as raw bytes 0..255");
  cmd->add_flag("--skip-triangle-check", o.skip_triangle_check,
                "trust the metric matrix; skip the O(sigma^3) scan");
  cmd->add_option("--seed", o.seed_str,
                  "master seed (integer, or \"random\"); falls back to "
                  "METRICPROF_SEED, then a fixed constant");
}

std::uint64_t resolve_seed(const std::string& seed_str) {
  std::string s = seed_str;
  if (s.empty()) {
    if (const char* env = std::getenv("METRICPROF_SEED")) s = env;
  }
  if (s.empty()) return distprof::kDefaultSeed;
  if (s == "random") return std::random_device{}();
  return std::stoull(s);
}

void emit(const CommonOpts& o, const std::string& payload) {
  if (o.out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw distprof::ParseError("cannot write " + o.out_path);
    out << payload;
  }
}

struct LoadedInstance {
  distprof::MetricFile metric;
  distprof::SymbolString text, pattern;
};

LoadedInstance load_instance(const CommonOpts& o) {
  LoadedInstance li{
      distprof::load_metric_file(o.metric_path, !o.skip_triangle_check),
      {},
      {}};
  li.text = distprof::load_symbols_file(o.text_path, li.metric.alphabet,
                                        o.bytes, o.wildcard);
  li.pattern = distprof::load_symbols_file(o.pattern_path, li.metric.alphabet,
                                           o.bytes, o.wildcard);
  for (distprof::Symbol s : li.text) {
    if (s != distprof::WILDCARD && s >= li.metric.space.sigma()) {
      throw distprof::ParseError("text symbol id out of metric range");
    }
  }
  for (distprof::Symbol s : li.pattern) {
    if (s != distprof::WILDCARD && s >= li.metric.space.sigma()) {
      throw distprof::ParseError("pattern symbol id out of metric range");
    }
  }
  if (li.pattern.empty() || li.pattern.size() > li.text.size()) {
    throw distprof::ParseError("pattern length must be in [1, n]");
  }
  return li;
}

void emit_profile(const CommonOpts& o, const distprof::DistanceProfile& prof,
                  std::size_t n, std::size_t m, const json& params) {
  if (o.format == "csv") {
    emit(o, distprof::profile_to_csv(prof));
  } else {
    emit(o, distprof::profile_to_json(prof, n, m, params).dump(2) + "\n");
  }
}

int run_exact(const CommonOpts& o, const std::string& method, bool verify) {
  LoadedInstance li = load_instance(o);
  const auto ms = li.metric.space.normalized();
  distprof::DistanceProfile prof;
  if (method == "naive") {
    prof = distprof::naive_profile(li.text, li.pattern, ms);
  } else {
    prof = distprof::exact_profile_per_letter(li.text, li.pattern, ms);
  }
  if (verify) {
    const auto naive = distprof::naive_profile(li.text, li.pattern, ms);
    const auto perletter =
        distprof::exact_profile_per_letter(li.text, li.pattern, ms);
    for (std::size_t i = 0; i < naive.values.size(); ++i) {
      const double ref = naive.values[i];
      const double got = perletter.values[i];
      if (std::fabs(got - ref) > 1e-9 * std::max(1.0, std::fabs(ref))) {
        throw distprof::ParseError(
            "--verify: naive and per-letter profiles disagree at offset " +
            std::to_string(i));
      }
    }
  }
  emit_profile(o, prof, li.text.size(), li.pattern.size(),
               json{{"method", method}, {"verify", verify}});
  return 0;
}

int run_approx(const CommonOpts& o, distprof::ApproxParams params) {
  LoadedInstance li = load_instance(o);
  const auto ms = li.metric.space.normalized();
  const auto kind = ms.kind() == distprof::MetricKind::finite
                        ? distprof::FamilyKind::partition
                        : distprof::FamilyKind::grid;
  const auto prof =
      distprof::approximate_profile(li.text, li.pattern, ms, kind, params);
  emit_profile(o, prof, li.text.size(), li.pattern.size(),
               json{{"epsilon", params.epsilon},
                    {"t", params.t},
                    {"k_const", params.k_const},
                    {"seed", params.master_seed}});
  return 0;
}

int run_mismatch1(const CommonOpts& o) {
  LoadedInstance li = load_instance(o);
  const auto labels = distprof::one_mismatch(li.text, li.pattern);
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "offset,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      csv << i << ',';
      switch (labels[i].kind) {
        case distprof::MismatchKind::match: csv << "match"; break;
        case distprof::MismatchKind::location: csv << labels[i].pos; break;
        case distprof::MismatchKind::many: csv << "many"; break;
      }
      csv << '\n';
    }
    emit(o, csv.str());
  } else {
    json out;
    out["mode"] = "mismatch1";
    out["n"] = li.text.size();
    out["m"] = li.pattern.size();
    json arr = json::array();
    for (const auto& l : labels) {
      switch (l.kind) {
        case distprof::MismatchKind::match: arr.push_back("match"); break;
        case distprof::MismatchKind::location: arr.push_back(l.pos); break;
        case distprof::MismatchKind::many: arr.push_back("many"); break;
      }
    }
    out["labels"] = arr;
    emit(o, out.dump(2) + "\n");
  }
  return 0;
}

int run_hash_validate(const CommonOpts& o, double d_threshold,
                      std::uint64_t draws, const std::string& dump_path) {
  const auto mf = distprof::load_metric_file(o.metric_path,
                                             !o.skip_triangle_check);
  const auto ms = mf.space.normalized();
  const auto kind = ms.kind() == distprof::MetricKind::finite
                        ? distprof::FamilyKind::partition
                        : distprof::FamilyKind::grid;
  const distprof::HashFamily fam(ms, kind, d_threshold);
  const double c = fam.factor();
  const std::size_t sigma = ms.sigma();
  const std::uint64_t seed = resolve_seed(o.seed_str);

  std::ofstream dump;
  if (!dump_path.empty()) {
    dump.open(dump_path);
    if (!dump) throw distprof::ParseError("cannot write " + dump_path);
    dump << "draw_id,symbol,bucket\n";
  }

  std::vector<std::vector<std::uint64_t>> sep(sigma,
                                              std::vector<std::uint64_t>(sigma, 0));
  for (std::uint64_t d = 0; d < draws; ++d) {
    auto rng = distprof::RngStream::derive(seed, {0x4a5bULL, d});
    const auto h = fam.sample(rng);
    if (dump.is_open()) {
      for (std::size_t s = 0; s < sigma; ++s) {
        dump << d << ',' << s << ',' << h.table[s] << '\n';
      }
    }
    for (std::size_t x = 0; x < sigma; ++x) {
      for (std::size_t y = x + 1; y < sigma; ++y) {
        if (h.table[x] != h.table[y]) ++sep[x][y];
      }
    }
  }

  std::uint64_t cond1_violations = 0;
  double worst_margin = -1e300;
  json worst = nullptr;
  for (std::size_t x = 0; x < sigma; ++x) {
    for (std::size_t y = x + 1; y < sigma; ++y) {
      const double d = ms.dist(static_cast<distprof::Symbol>(x),
                               static_cast<distprof::Symbol>(y));
      const double freq =
          static_cast<double>(sep[x][y]) / static_cast<double>(draws);
      if (d >= d_threshold && sep[x][y] != draws) {
        cond1_violations += draws - sep[x][y];
      }
      const double bound = std::min(1.0, c * d / d_threshold);
      const double se = std::sqrt(std::max(freq * (1.0 - freq), 1e-12) /
                                  static_cast<double>(draws));
      const double margin = freq - (bound + 3.0 * se);
      if (margin > worst_margin) {
        worst_margin = margin;
        worst = json{{"x", x}, {"y", y}, {"d", d}, {"frequency", freq},
                     {"bound", bound}};
      }
    }
  }

  json report;
  report["D"] = d_threshold;
  report["draws"] = draws;
  report["C"] = c;
  report["family"] = kind == distprof::FamilyKind::grid ? "grid" : "partition";
  report["condition1_violations"] = cond1_violations;
  report["condition2_worst_margin"] = worst_margin;
  report["condition2_worst_pair"] = worst;
  report["condition2_ok"] = worst_margin <= 0.0;
  emit(o, report.dump(2) + "\n");
  return 0;
}

int run_bench(const CommonOpts& o, const std::vector<std::size_t>& ns,
              const std::vector<std::size_t>& ms_list,
              const std::string& mode, distprof::ApproxParams params) {
  const auto mf = distprof::load_metric_file(o.metric_path,
                                             !o.skip_triangle_check);
  const auto ms = mf.space.normalized();
  auto rng = distprof::RngStream::derive(params.master_seed, {0xbe9cULL});
  std::ostringstream csv;
  csv << "n,m,mode,seconds\n";
  for (std::size_t n : ns) {
    for (std::size_t m : ms_list) {
      if (m == 0 || m > n) continue;
      distprof::SymbolString text(n), pattern(m);
      for (auto& s : text) {
        s = static_cast<distprof::Symbol>(rng.below(ms.sigma()));
      }
      for (auto& s : pattern) {
        s = static_cast<distprof::Symbol>(rng.below(ms.sigma()));
      }
      const auto start = std::chrono::steady_clock::now();
      if (mode == "naive") {
        distprof::naive_profile(text, pattern, ms);
      } else if (mode == "perletter") {
        distprof::exact_profile_per_letter(text, pattern, ms);
      } else if (mode == "mismatch1") {
        distprof::one_mismatch(text, pattern);
      } else {
        const auto kind = ms.kind() == distprof::MetricKind::finite
                              ? distprof::FamilyKind::partition
                              : distprof::FamilyKind::grid;
        distprof::ApproxParams p = params;
        p.keep_diagnostics = false;
        distprof::approximate_profile(text, pattern, ms, kind, p);
      }
      const std::chrono::duration<double> dt =
          std::chrono::steady_clock::now() - start;
      csv << n << ',' << m << ',' << mode << ',' << dt.count() << '\n';
    }
  }
  emit(o, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distance profiles under alphabet metrics"};
  app.require_subcommand(1);

  CommonOpts o_exact, o_approx, o_mm, o_hash, o_bench;
  std::string method = "perletter";
  bool verify = false;
  auto* exact = app.add_subcommand("exact", "exact distance profile");
  add_io_opts(exact, o_exact);
  exact->add_option("--method", method, "naive or perletter")
      ->check(CLI::IsMember({"naive", "perletter"}));
  exact->add_flag("--verify", verify,
                  "cross-check naive and per-letter profiles");

  distprof::ApproxParams ap;
  auto* approx = app.add_subcommand("approx", "approximate distance profile");
  add_io_opts(approx, o_approx);
  approx->add_option("--epsilon", ap.epsilon, "relative error target (0,1)");
  approx->add_option("--t", ap.t, "confidence exponent (failure prob e^-t)");
  approx->add_option("--k-const", ap.k_const, "c0 in K = c0*C*t/eps^2");
  approx->add_option("--q-floor", ap.q_floor_factor,
                     "q sweeps down while q > q-floor / m");
  approx->add_option("--c-part", ap.c_part,
                     "partition family calibration constant");
  approx->add_option("--threads", ap.threads, "worker threads (0 = auto)");
  approx->add_option("--budget", ap.max_samples,
                     "cap on total Sample invocations");

  auto* mm = app.add_subcommand("mismatch1", "one-mismatch offset labels");
  add_io_opts(mm, o_mm);

  double hash_d = 2.0;
  std::uint64_t hash_draws = 10000;
  std::string dump_path;
  auto* hv = app.add_subcommand("hash-validate",
                                "check separating-hash conditions 1 and 2");
  add_io_opts(hv, o_hash, /*needs_strings=*/false);
  hv->add_option("--D", hash_d, "separation threshold (normalized units)")
      ->required();
  hv->add_option("--draws", hash_draws, "number of hash draws");
  hv->add_option("--dump", dump_path, "CSV dump of (draw_id,symbol,bucket)");

  std::vector<std::size_t> bench_n{1000, 2000, 4000};
  std::vector<std::size_t> bench_m{100};
  std::string bench_mode = "approx";
  auto* bench = app.add_subcommand("bench", "timing grid over n and m");
  add_io_opts(bench, o_bench, /*needs_strings=*/false);
  bench->add_option("--n", bench_n, "text lengths");
  bench->add_option("--m", bench_m, "pattern lengths");
  bench->add_option("--mode", bench_mode,
                    "naive, perletter, mismatch1, or approx")
      ->check(CLI::IsMember({"naive", "perletter", "mismatch1", "approx"}));
  bench->add_option("--epsilon", ap.epsilon, "approx epsilon");
  bench->add_option("--t", ap.t, "approx t");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exact->parsed()) return run_exact(o_exact, method, verify);
    if (approx->parsed()) {
      ap.master_seed = resolve_seed(o_approx.seed_str);
      return run_approx(o_approx, ap);
    }
    if (mm->parsed()) return run_mismatch1(o_mm);
    if (hv->parsed()) return run_hash_validate(o_hash, hash_d, hash_draws,
                                               dump_path);
    if (bench->parsed()) {
      ap.master_seed = resolve_seed(o_bench.seed_str);
      return run_bench(o_bench, bench_n, bench_m, bench_mode, ap);
    }
  } catch (const distprof::OverflowRisk& e) {
    std::cerr << nlohmann::json{{"error", {{"type", e.code()},
                                           {"message", e.what()}}}}
              << std::endl;
    return 3;
  } catch (const distprof::BudgetExceeded& e) {
    std::cerr << nlohmann::json{{"error", {{"type", e.code()},
                                           {"message", e.what()}}}}
              << std::endl;
    return 3;
  } catch (const distprof::Error& e) {
    std::cerr << nlohmann::json{{"error", {{"type", e.code()},
                                           {"message", e.what()}}}}
              << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "InternalError"},
                                           {"message", e.what()}}}}
              << std::endl;
    return 2;
  }
  return 0;
}
