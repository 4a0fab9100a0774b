// Command-line front door. Subcommands:
//   constants    limit-theorem constants for a Hermite integrand
//   simulate     sample fractional Brownian paths and dump them
//   experiment   run one named experiment and report verdicts
//   sweep        run one experiment across several Hurst indices
//   selftest     exact identity checks plus a thread-determinism probe
// Exit codes: 0 success or verdict pass, 1 verdict fail, 2 usage or
// configuration error.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "roughlab/errors.hpp"
#include "roughlab/gaussian_paths.hpp"
#include "roughlab/hermite_analysis.hpp"
#include "roughlab/limit_experiments.hpp"
#include "roughlab/rational.hpp"
#include "roughlab/stats_harness.hpp"

namespace {

using roughlab::ConfigInvalid;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

roughlab::Rational parse_nu(const std::string& s) {
  try {
    return roughlab::parse_rational(s);
  } catch (const std::exception&) {
    throw ConfigInvalid("cannot parse Hurst index '" + s + "'; use a rational like 3/10 or a decimal like 0.3");
  }
}

int parse_hermite(const std::string& s) {
  std::string digits = s;
  if (!digits.empty() && (digits[0] == 'H' || digits[0] == 'h')) digits = digits.substr(1);
  if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
    const long q = std::strtol(digits.c_str(), nullptr, 10);
    if (q >= 1 && q <= 20) return static_cast<int>(q);
  }
  throw ConfigInvalid("cannot parse Hermite index '" + s + "'; use H1..H20");
}

const char* regime_name(roughlab::Regime r) {
  switch (r) {
    case roughlab::Regime::kGaussian: return "gaussian";
    case roughlab::Regime::kCritical: return "critical";
    default: return "deterministic";
  }
}

// stdout always; the same bytes also go to --out when given.
void emit(const std::string& text, const std::string& out_path) {
  std::fwrite(text.data(), 1, text.size(), stdout);
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigInvalid("cannot open '" + out_path + "' for writing");
    f << text;
  }
}

std::string report_text(const roughlab::ExperimentReport& rep, const std::string& format) {
  std::ostringstream os;
  if (format == "csv")
    write_report_csv(os, rep);
  else
    write_report_json(os, rep);
  return os.str();
}

// One header, then the data rows of every report.
std::string reports_csv(const std::vector<roughlab::ExperimentReport>& reps) {
  std::string out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::ostringstream os;
    write_report_csv(os, reps[i]);
    std::string text = os.str();
    if (i > 0) text = text.substr(text.find('\n') + 1);
    out += text;
  }
  return out;
}

std::string reports_json(const std::vector<roughlab::ExperimentReport>& reps) {
  std::string out = "[";
  for (std::size_t i = 0; i < reps.size(); ++i) {
    out += (i ? ",\n" : "\n");
    std::ostringstream os;
    write_report_json(os, reps[i]);
    out += os.str();
  }
  out += "]\n";
  return out;
}

std::string experiment_help() {
  std::string s = "experiment name or alias:";
  for (const std::string& id : roughlab::experiment_ids())
    s += " " + id + "/" + roughlab::experiment_alias(id);
  return s;
}

int default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Flat key=value config files. Keys mirror the long flags of the subcommand;
// a key is ignored when the same flag was given on the command line, so flags
// always win. '#' starts a comment.
using ConfigSetter = std::function<void(const std::string&)>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void apply_config(const CLI::App* sub, const std::string& path,
                  const std::map<std::string, ConfigSetter>& setters) {
  if (path.empty()) return;
  std::ifstream f(path);
  if (!f) throw ConfigInvalid("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw ConfigInvalid(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (sub->count("--" + key) > 0) continue;
    try {
      it->second(value);
    } catch (const ConfigInvalid&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigInvalid(path + ":" + std::to_string(lineno) + ": cannot parse value '" +
                          value + "' for key '" + key + "'");
    }
  }
}

ConfigSetter set_string(std::string& var) {
  return [&var](const std::string& v) { var = v; };
}
ConfigSetter set_choice(std::string& var, std::vector<std::string> allowed) {
  return [&var, allowed = std::move(allowed)](const std::string& v) {
    for (const std::string& a : allowed)
      if (v == a) {
        var = v;
        return;
      }
    throw ConfigInvalid("value '" + v + "' not one of the allowed choices");
  };
}
ConfigSetter set_int(int& var) {
  return [&var](const std::string& v) { var = static_cast<int>(std::stoll(v)); };
}
ConfigSetter set_i64(std::int64_t& var) {
  return [&var](const std::string& v) { var = std::stoll(v); };
}
ConfigSetter set_u64(std::uint64_t& var) {
  return [&var](const std::string& v) { var = std::stoull(v); };
}
ConfigSetter set_i64_list(std::vector<std::int64_t>& var) {
  return [&var](const std::string& v) {
    std::vector<std::int64_t> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(trim(item)));
    var = std::move(out);
  };
}
ConfigSetter set_string_list(std::vector<std::string>& var) {
  return [&var](const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    var = std::move(out);
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete rough-path calculus and limit-theorem experiments"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- constants ----
  std::string co_nu, co_hermite = "H2", co_format = "json", co_out, co_cfg;
  CLI::App* constants = app.add_subcommand(
      "constants", "limit-theorem constants for a Hermite integrand at a given Hurst index");
  constants->add_option("--nu", co_nu, "Hurst index, rational (3/10) or decimal (0.3)");
  constants->add_option("--hermite", co_hermite, "Hermite polynomial H1..H20 (default H2)");
  constants->add_option("--format", co_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  constants->add_option("--out", co_out, "also write the output to this file");
  constants->add_option("--config", co_cfg,
                        "flat key=value file mirroring the flags; flags win on conflict");
  constants->callback([&] {
    apply_config(constants, co_cfg,
                 {{"nu", set_string(co_nu)},
                  {"hermite", set_string(co_hermite)},
                  {"format", set_choice(co_format, {"json", "csv"})},
                  {"out", set_string(co_out)}});
    if (co_nu.empty()) throw ConfigInvalid("constants needs --nu (flag or config file)");
    const roughlab::HurstParam nu(parse_nu(co_nu));
    const int q = parse_hermite(co_hermite);
    const roughlab::RegimeDecision dec = roughlab::classify_regime(nu, q);
    double fact = 1.0;
    for (int i = 2; i <= q; ++i) fact *= i;
    std::optional<double> sigma2;
    try {
      sigma2 = fact * roughlab::rho_power_sum(q, nu.value);
    } catch (const roughlab::DivergentSeries&) {
    }
    std::vector<std::optional<double>> rho(7);
    for (int k = 1; k <= 6; ++k) {
      try {
        rho[k] = roughlab::rho_power_sum(k, nu.value);
      } catch (const roughlab::DivergentSeries&) {
      }
    }
    const std::string nu_label =
        nu.exact ? std::to_string(nu.exact->num) + "/" + std::to_string(nu.exact->den)
                 : fmt17(nu.value);
    std::string text;
    if (co_format == "csv") {
      text = "nu,hermite,rank,regime,controlled_order,normalization_exponent,sigma2";
      for (int k = 1; k <= 6; ++k) text += ",rho_power_sum_q" + std::to_string(k);
      text += "\n" + nu_label + ",H" + std::to_string(q) + "," + std::to_string(q) + "," +
              regime_name(dec.regime) + "," + std::to_string(dec.ell) + "," +
              fmt17(dec.normalization_exponent) + "," + (sigma2 ? fmt17(*sigma2) : "");
      for (int k = 1; k <= 6; ++k) text += "," + (rho[k] ? fmt17(*rho[k]) : std::string());
      text += "\n";
    } else {
      text = "{\n  \"nu\": \"" + nu_label + "\",\n  \"hermite\": \"H" + std::to_string(q) +
             "\",\n  \"rank\": " + std::to_string(q) + ",\n  \"regime\": \"" +
             regime_name(dec.regime) + "\",\n  \"controlled_order\": " +
             std::to_string(dec.ell) + ",\n  \"normalization_exponent\": " +
             fmt17(dec.normalization_exponent) + ",\n  \"sigma2\": " +
             (sigma2 ? fmt17(*sigma2) : "null") + ",\n  \"rho_power_sums\": [";
      for (int k = 1; k <= 6; ++k)
        text += std::string(k > 1 ? ", " : "") + "{\"q\": " + std::to_string(k) +
                ", \"value\": " + (rho[k] ? fmt17(*rho[k]) : "null") + "}";
      text += "]\n}\n";
    }
    emit(text, co_out);
  });

  // ---- simulate ----
  std::string si_nu, si_format = "csv", si_out;
  std::int64_t si_n = 1024;
  int si_paths = 1, si_components = 1;
  std::uint64_t si_seed = 42;
  CLI::App* simulate =
      app.add_subcommand("simulate", "sample fractional Brownian paths on the unit interval");
  std::string si_cfg;
  simulate->add_option("--nu", si_nu, "Hurst index, rational or decimal");
  simulate->add_option("--n", si_n, "grid cells (default 1024)");
  simulate->add_option("--paths", si_paths, "number of paths (default 1)");
  simulate->add_option("--components", si_components, "components per path (default 1)");
  simulate->add_option("--seed", si_seed, "RNG seed (default 42)")->envname("ROUGHLAB_SEED");
  simulate->add_option("--format", si_format, "csv, json, or bin (bin requires --out)")
      ->check(CLI::IsMember({"csv", "json", "bin"}));
  simulate->add_option("--out", si_out, "also write the output to this file");
  simulate->add_option("--config", si_cfg,
                       "flat key=value file mirroring the flags; flags win on conflict");
  simulate->callback([&] {
    apply_config(simulate, si_cfg,
                 {{"nu", set_string(si_nu)},
                  {"n", set_i64(si_n)},
                  {"paths", set_int(si_paths)},
                  {"components", set_int(si_components)},
                  {"seed", set_u64(si_seed)},
                  {"format", set_choice(si_format, {"csv", "json", "bin"})},
                  {"out", set_string(si_out)}});
    if (si_nu.empty()) throw ConfigInvalid("simulate needs --nu (flag or config file)");
    const roughlab::HurstParam nu(parse_nu(si_nu));
    const roughlab::PathBatch batch =
        roughlab::sample_fbm(si_n, si_paths, si_components, nu, si_seed);
    if (si_format == "bin") {
      if (si_out.empty()) throw ConfigInvalid("--format bin needs --out");
      roughlab::write_path_binary(si_out, batch);
      std::printf("wrote %d path(s) x %d component(s), n = %lld, to %s\n", batch.paths,
                  batch.components, static_cast<long long>(batch.n), si_out.c_str());
      return;
    }
    if (si_format == "csv") {
      std::ostringstream os;
      roughlab::write_path_csv(os, batch);
      emit(os.str(), si_out);
      return;
    }
    std::string text = "{\n  \"n\": " + std::to_string(batch.n) +
                       ",\n  \"paths\": " + std::to_string(batch.paths) +
                       ",\n  \"components\": " + std::to_string(batch.components) +
                       ",\n  \"nu\": " + fmt17(batch.nu) +
                       ",\n  \"seed\": " + std::to_string(batch.seed) + ",\n  \"values\": [";
    for (std::int64_t k = 0; k <= batch.n; ++k) {
      text += (k ? ",\n    [" : "\n    [");
      for (Eigen::Index c = 0; c < batch.values.cols(); ++c)
        text += std::string(c ? ", " : "") + fmt17(batch.values(k, c));
      text += "]";
    }
    text += "\n  ]\n}\n";
    emit(text, si_out);
  });

  // ---- experiment ----
  std::string ex_name, ex_nu, ex_format = "json", ex_out;
  std::vector<std::int64_t> ex_ns;
  int ex_paths = 0, ex_threads = default_threads(), ex_blocks = 0, ex_subgrid = 0;
  std::uint64_t ex_seed = 42;
  CLI::App* experiment =
      app.add_subcommand("experiment", "run one named experiment against its verdict gates");
  experiment->add_option("name", ex_name, experiment_help())->required();
  experiment->add_option("--nu", ex_nu, "Hurst index override, rational or decimal");
  experiment->add_option("--n", ex_ns, "grid cells; repeat or comma-separate for sweeps")
      ->delimiter(',');
  experiment->add_option("--paths", ex_paths, "Monte Carlo sample size override");
  experiment->add_option("--seed", ex_seed, "RNG seed (default 42)")->envname("ROUGHLAB_SEED");
  experiment->add_option("--threads", ex_threads,
                         "worker threads (default: logical cores; output independent)");
  experiment->add_option("--block-count", ex_blocks,
                         "fixed block count for the block-decomposition identity");
  experiment->add_option("--oracle-subgrid", ex_subgrid,
                         "sub-grid resolution of the area covariance oracle");
  experiment->add_option("--format", ex_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  experiment->add_option("--out", ex_out, "also write the report to this file");
  std::string ex_cfg;
  experiment->add_option("--config", ex_cfg,
                         "flat key=value file mirroring the flags; flags win on conflict");
  experiment->callback([&] {
    apply_config(experiment, ex_cfg,
                 {{"nu", set_string(ex_nu)},
                  {"n", set_i64_list(ex_ns)},
                  {"paths", set_int(ex_paths)},
                  {"seed", set_u64(ex_seed)},
                  {"threads", set_int(ex_threads)},
                  {"block-count", set_int(ex_blocks)},
                  {"oracle-subgrid", set_int(ex_subgrid)},
                  {"format", set_choice(ex_format, {"json", "csv"})},
                  {"out", set_string(ex_out)}});
    roughlab::ExperimentConfig cfg;
    cfg.experiment = ex_name;
    if (!ex_nu.empty()) cfg.nu = parse_nu(ex_nu);
    cfg.ns = ex_ns;
    cfg.paths = ex_paths;
    cfg.seed = ex_seed;
    cfg.threads = ex_threads;
    cfg.block_count = ex_blocks;
    cfg.oracle_subgrid = ex_subgrid;
    const roughlab::ExperimentReport rep = roughlab::run(cfg);
    emit(report_text(rep, ex_format), ex_out);
    exit_code = rep.pass ? 0 : 1;
  });

  // ---- sweep ----
  std::string sw_name, sw_format = "json", sw_out;
  std::vector<std::string> sw_nus;
  std::vector<std::int64_t> sw_ns;
  int sw_paths = 0, sw_threads = default_threads();
  std::uint64_t sw_seed = 42;
  CLI::App* sweep =
      app.add_subcommand("sweep", "run one experiment across several Hurst indices");
  sweep->add_option("name", sw_name, experiment_help())->required();
  sweep->add_option("--nu", sw_nus, "Hurst indices; repeat or comma-separate")->delimiter(',');
  sweep->add_option("--n", sw_ns, "grid cells; repeat or comma-separate")->delimiter(',');
  sweep->add_option("--paths", sw_paths, "Monte Carlo sample size override");
  sweep->add_option("--seed", sw_seed, "RNG seed (default 42)")->envname("ROUGHLAB_SEED");
  sweep->add_option("--threads", sw_threads,
                    "worker threads (default: logical cores; output independent)");
  sweep->add_option("--format", sw_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", sw_out, "also write the combined report to this file");
  std::string sw_cfg;
  sweep->add_option("--config", sw_cfg,
                    "flat key=value file mirroring the flags; flags win on conflict");
  sweep->callback([&] {
    apply_config(sweep, sw_cfg,
                 {{"nu", set_string_list(sw_nus)},
                  {"n", set_i64_list(sw_ns)},
                  {"paths", set_int(sw_paths)},
                  {"seed", set_u64(sw_seed)},
                  {"threads", set_int(sw_threads)},
                  {"format", set_choice(sw_format, {"json", "csv"})},
                  {"out", set_string(sw_out)}});
    if (sw_nus.empty())
      throw ConfigInvalid("sweep needs at least one --nu (flag or config file)");
    std::vector<roughlab::ExperimentReport> reps;
    bool all_pass = true;
    for (const std::string& nu_str : sw_nus) {
      roughlab::ExperimentConfig cfg;
      cfg.experiment = sw_name;
      cfg.nu = parse_nu(nu_str);
      cfg.ns = sw_ns;
      cfg.paths = sw_paths;
      cfg.seed = sw_seed;
      cfg.threads = sw_threads;
      reps.push_back(roughlab::run(cfg));
      all_pass = all_pass && reps.back().pass;
    }
    emit(sw_format == "csv" ? reports_csv(reps) : reports_json(reps), sw_out);
    exit_code = all_pass ? 0 : 1;
  });

  // ---- selftest ----
  std::string st_format = "json", st_out;
  int st_threads = default_threads();
  CLI::App* selftest = app.add_subcommand(
      "selftest", "exact identity checks plus a thread-determinism probe (well under 30 s)");
  selftest->add_option("--threads", st_threads, "worker threads for the determinism probe");
  selftest->add_option("--format", st_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  selftest->add_option("--out", st_out, "also write the output to this file");
  std::string st_cfg;
  selftest->add_option("--config", st_cfg,
                       "flat key=value file mirroring the flags; flags win on conflict");
  selftest->callback([&] {
    apply_config(selftest, st_cfg,
                 {{"threads", set_int(st_threads)},
                  {"format", set_choice(st_format, {"json", "csv"})},
                  {"out", set_string(st_out)}});
    std::vector<roughlab::ExperimentReport> reps;
    for (const char* id : {"a1", "a2"}) {
      roughlab::ExperimentConfig cfg;
      cfg.experiment = id;
      reps.push_back(roughlab::run(cfg));
    }
    roughlab::ExperimentConfig det;
    det.experiment = "a3";
    det.ns = {512};
    det.paths = 120;
    det.threads = 1;
    const std::string one = report_text(roughlab::run(det), "json");
    det.threads = std::max(2, st_threads);
    const bool identical = one == report_text(roughlab::run(det), "json");
    const bool pass = identical && reps[0].pass && reps[1].pass;

    std::string text;
    if (st_format == "csv") {
      text = reports_csv(reps);
      text += "determinism,512,120,42,,,,,,," + std::string(identical ? "pass" : "fail") + "\n";
    } else {
      text = "{\n\"selftest\": " + std::string(pass ? "true" : "false") +
             ",\n\"determinism\": {\"threads\": [1, " + std::to_string(std::max(2, st_threads)) +
             "], \"identical\": " + (identical ? "true" : "false") + "},\n\"reports\": [\n";
      for (std::size_t i = 0; i < reps.size(); ++i)
        text += report_text(reps[i], "json") + (i + 1 < reps.size() ? ",\n" : "");
      text += "]\n}\n";
    }
    emit(text, st_out);
    exit_code = pass ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the parse error
    return rc == 0 ? 0 : 2;
  } catch (const ConfigInvalid& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
