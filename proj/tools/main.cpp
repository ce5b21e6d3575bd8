#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghyper/errors.hpp"
#include "ghyper/io.hpp"
#include "ghyper/mgh.hpp"
#include "ghyper/migh.hpp"
#include "ghyper/oracle.hpp"
#include "ghyper/urn.hpp"

namespace {

using namespace ghyper;

struct Options {
  std::string dist;
  std::string weights_str;
  std::string counts_str;
  std::string a_scales_str;
  std::int64_t c = 0;
  std::int64_t n = 0;
  std::int64_t gamma = 0;
  std::int64_t a_scale = 0;
  double tail_eps = 1e-6;
  double tol = -1.0;  // per-command default when negative
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;
  std::int64_t step_cap = 1'000'000;
  std::string params_path;
  std::string format = "csv";

  // which flags the user actually set, for param-file conflict warnings
  bool has(const CLI::App* cmd, const std::string& name) const {
    return cmd->count(name) > 0;
  }
};

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(Errc::usage_error, "cannot parse real number '" + item + "'");
    }
  }
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw Error(Errc::usage_error, "cannot parse integer '" + item + "'");
    }
  }
  return out;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--dist", o.dist, "distribution: mgh, migh, pe, ipe");
  cmd->add_option("--weights", o.weights_str, "comma-separated real weights C_0..C_k");
  cmd->add_option("--counts", o.counts_str, "comma-separated initial ball counts a_0..a_k");
  cmd->add_option("--c", o.c, "urn reinforcement");
  cmd->add_option("--n", o.n, "draw count");
  cmd->add_option("--gamma", o.gamma, "required color-0 draw count");
  cmd->add_option("--tail-eps", o.tail_eps, "tail mass bound for infinite supports");
  cmd->add_option("--seed", o.seed, "64-bit PRNG seed");
  cmd->add_option("--trials", o.trials, "number of sampler draws");
  cmd->add_option("--params", o.params_path, "JSON parameter file (wins over flags)");
  cmd->add_option("--format", o.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

// Resolved distribution parameters; exactly one member is engaged.
struct Resolved {
  std::string dist;
  std::optional<MghParams> mgh;
  std::optional<MighParams> migh;
  std::optional<UrnParams> urn;
  std::int64_t n = 0;
  std::int64_t gamma = 0;
};

void apply_param_file(const CLI::App* cmd, Options& o) {
  if (o.params_path.empty()) return;
  const ParamFile file = load_param_file(o.params_path);
  auto warn = [&](const std::string& flag) {
    std::cerr << "warning: --" << flag << " overridden by " << o.params_path << "\n";
  };
  if (o.has(cmd, "--dist") && o.dist != file.distribution) warn("dist");
  o.dist = file.distribution;
  if (!file.weights.empty()) {
    if (o.has(cmd, "--weights")) warn("weights");
    std::string s;
    for (std::size_t i = 0; i < file.weights.size(); ++i)
      s += (i ? "," : "") + format_real(file.weights[i]);
    o.weights_str = s;
  }
  if (!file.counts.empty()) {
    if (o.has(cmd, "--counts")) warn("counts");
    std::string s;
    for (std::size_t i = 0; i < file.counts.size(); ++i)
      s += (i ? "," : "") + std::to_string(file.counts[i]);
    o.counts_str = s;
    if (o.has(cmd, "--c")) warn("c");
    o.c = file.reinforcement;
  }
  if (file.draws) {
    if (o.has(cmd, "--n")) warn("n");
    o.n = *file.draws;
  }
  if (file.gamma) {
    if (o.has(cmd, "--gamma")) warn("gamma");
    o.gamma = *file.gamma;
  }
  if (file.tail_epsilon) {
    if (o.has(cmd, "--tail-eps")) warn("tail-eps");
    o.tail_eps = *file.tail_epsilon;
  }
  if (file.a_scales) {
    std::string s;
    for (std::size_t i = 0; i < file.a_scales->size(); ++i)
      s += (i ? "," : "") + std::to_string((*file.a_scales)[i]);
    o.a_scales_str = s;
  }
  if (file.seed) {
    if (o.has(cmd, "--seed")) warn("seed");
    o.seed = *file.seed;
  }
  if (file.trials) {
    if (o.has(cmd, "--trials")) warn("trials");
    o.trials = *file.trials;
  }
}

Resolved resolve(const CLI::App* cmd, Options& o) {
  apply_param_file(cmd, o);
  Resolved r;
  r.dist = o.dist;
  if (o.dist == "mgh") {
    r.mgh.emplace(parse_reals(o.weights_str), o.n);
    r.n = o.n;
  } else if (o.dist == "migh") {
    r.migh.emplace(parse_reals(o.weights_str), o.gamma);
    r.gamma = o.gamma;
  } else if (o.dist == "pe") {
    r.urn.emplace(parse_ints(o.counts_str), o.c);
    r.n = o.n;
  } else if (o.dist == "ipe") {
    r.urn.emplace(parse_ints(o.counts_str), o.c);
    r.gamma = o.gamma;
  } else {
    throw Error(Errc::usage_error, "--dist must be one of mgh, migh, pe, ipe");
  }
  return r;
}

std::vector<std::string> tuple_columns(std::size_t colors, std::size_t first) {
  std::vector<std::string> cols;
  for (std::size_t i = first; i < first + colors; ++i) cols.push_back("x" + std::to_string(i));
  return cols;
}

PmfTable build_pmf_table(const Resolved& r, double tail_eps) {
  PmfTable table;
  if (r.mgh) {
    table.columns = tuple_columns(r.mgh->colors(), 0);
    for (const Outcome& x : support(*r.mgh).outcomes) {
      table.outcomes.push_back(x);
      table.masses.push_back(pmf(*r.mgh, x));
    }
  } else if (r.migh) {
    table.columns = tuple_columns(r.migh->colors(), 0);
    const EnumerationStats stats =
        for_each_mass(*r.migh, tail_eps, [&](std::span<const std::int64_t> full, double mass) {
          table.outcomes.emplace_back(full.begin(), full.end());
          table.masses.push_back(mass);
          return true;
        });
    table.truncated = stats.truncated;
    table.tail_mass_bound = stats.truncated ? 1.0 - stats.accumulated : 0.0;
  } else if (r.dist == "pe") {
    table.columns = tuple_columns(r.urn->colors(), 0);
    for (const Outcome& x : pe_support(*r.urn, r.n).outcomes) {
      table.outcomes.push_back(x);
      table.masses.push_back(pe_pmf(*r.urn, r.n, x));
    }
  } else {
    table.columns = tuple_columns(r.urn->colors(), 0);
    const EnumerationStats stats = for_each_ipe_mass(
        *r.urn, r.gamma, tail_eps, [&](std::span<const std::int64_t> full, double mass) {
          table.outcomes.emplace_back(full.begin(), full.end());
          table.masses.push_back(mass);
          return true;
        });
    table.truncated = stats.truncated;
    table.tail_mass_bound = stats.truncated ? 1.0 - stats.accumulated : 0.0;
  }
  return table;
}

int emit_report(const VerificationReport& report, const std::string& format) {
  if (format == "json")
    std::cout << to_json(report).dump(2) << "\n";
  else
    write_csv(std::cout, report);
  return report.pass ? 0 : 1;
}

int run_pmf(const CLI::App* cmd, Options& o) {
  const Resolved r = resolve(cmd, o);
  const PmfTable table = build_pmf_table(r, o.tail_eps);
  if (o.format == "json")
    std::cout << to_json(table).dump(2) << "\n";
  else
    write_csv(std::cout, table);
  return 0;
}

int run_moments(const CLI::App* cmd, Options& o) {
  const Resolved r = resolve(cmd, o);
  if (r.mgh) {
    const MomentReport m = moments(*r.mgh);
    if (o.format == "json") {
      nlohmann::json j;
      j["means"] = m.means;
      if (m.variances)
        j["variances"] = *m.variances;
      else
        j["variances"] = nullptr;
      std::cout << j.dump(2) << "\n";
    } else {
      write_moments_csv(std::cout, m, 0);
    }
    return 0;
  }
  if (r.migh) {
    const MomentReport m = mean(*r.migh);
    if (o.format == "json") {
      nlohmann::json j;
      j["means"] = m.means;
      j["variances"] = nullptr;
      std::cout << j.dump(2) << "\n";
    } else {
      write_moments_csv(std::cout, m, 1);
    }
    return 0;
  }
  throw Error(Errc::usage_error, "moments supports --dist mgh or migh");
}

int run_sample(const CLI::App* cmd, Options& o) {
  const Resolved r = resolve(cmd, o);
  std::vector<Outcome> draws;
  std::vector<std::string> cols;
  if (r.mgh) {
    draws = sample(*r.mgh, o.seed, o.trials);
    cols = tuple_columns(r.mgh->colors(), 0);
  } else if (r.migh) {
    draws = sample(*r.migh, o.seed, o.trials);
    cols = tuple_columns(r.migh->colors() - 1, 1);
  } else if (r.dist == "pe") {
    draws = pe_sample(*r.urn, r.n, o.seed, o.trials);
    cols = tuple_columns(r.urn->colors(), 0);
  } else {
    draws = ipe_sample(*r.urn, r.gamma, o.seed, o.trials, o.step_cap);
    cols = tuple_columns(r.urn->colors() - 1, 1);
  }
  if (o.format == "json") {
    nlohmann::json j;
    j["columns"] = cols;
    j["draws"] = draws;
    j["seed"] = o.seed;
    std::cout << j.dump(2) << "\n";
  } else {
    write_sample_csv(std::cout, cols, draws);
  }
  return 0;
}

int run_verify_normalization(const CLI::App* cmd, Options& o) {
  const Resolved r = resolve(cmd, o);
  const double tol = o.tol > 0 ? o.tol : 1e-9;
  VerificationReport report;
  if (r.mgh)
    report = verify_normalization(*r.mgh, tol);
  else if (r.migh)
    report = verify_normalization(*r.migh, o.tail_eps, tol);
  else if (r.dist == "pe")
    report = verify_pe_normalization(*r.urn, r.n, tol);
  else
    report = verify_ipe_normalization(*r.urn, r.gamma, o.tail_eps, tol);
  return emit_report(report, o.format);
}

int run_verify_moments(const CLI::App* cmd, Options& o) {
  const Resolved r = resolve(cmd, o);
  const double tol = o.tol > 0 ? o.tol : 1e-8;
  VerificationReport report;
  if (r.mgh)
    report = moment_check(*r.mgh, tol);
  else if (r.migh)
    report = moment_check(*r.migh, o.tail_eps, tol);
  else
    throw Error(Errc::usage_error, "verify moments supports --dist mgh or migh");
  return emit_report(report, o.format);
}

int run_verify_gof(const CLI::App* cmd, Options& o) {
  const Resolved r = resolve(cmd, o);
  GofBins bins;
  std::vector<Outcome> draws;
  if (r.mgh) {
    bins = gof_bins(*r.mgh);
    draws = sample(*r.mgh, o.seed, o.trials);
  } else if (r.migh) {
    bins = gof_bins(*r.migh, r.migh->infinite_support() ? o.tail_eps : 0.0);
    draws = sample(*r.migh, o.seed, o.trials);
  } else if (r.dist == "pe") {
    bins = gof_bins_pe(*r.urn, r.n);
    draws = pe_sample(*r.urn, r.n, o.seed, o.trials);
  } else {
    bins = gof_bins_ipe(*r.urn, r.gamma, o.tail_eps);
    draws = ipe_sample(*r.urn, r.gamma, o.seed, o.trials, o.step_cap);
  }
  return emit_report(gof_check(bins, draws), o.format);
}

int run_converge(const CLI::App* cmd, Options& o) {
  const Resolved r = resolve(cmd, o);
  if (o.a_scales_str.empty()) throw Error(Errc::usage_error, "--a-scales is required");
  const std::vector<std::int64_t> scales = parse_ints(o.a_scales_str);
  const double tol = o.tol > 0 ? o.tol : 1e-3;
  VerificationReport report;
  if (r.mgh)
    report = convergence_table(*r.mgh, scales, tol);
  else if (r.migh)
    report = convergence_table(*r.migh, scales, o.tail_eps, tol);
  else
    throw Error(Errc::usage_error, "converge supports --dist mgh or migh");
  return emit_report(report, o.format);
}

int run_derive_urn(const CLI::App* cmd, Options& o) {
  const Resolved r = resolve(cmd, o);
  if (o.a_scale < 1) throw Error(Errc::usage_error, "--a-scale is required and positive");
  UrnDerivation d = r.mgh ? derive_urn(*r.mgh, o.a_scale)
                          : (r.migh ? derive_urn(*r.migh, o.a_scale)
                                    : throw Error(Errc::usage_error,
                                                  "derive-urn supports --dist mgh or migh"));
  if (o.format == "json") {
    nlohmann::json j;
    j["a_scale"] = d.a_scale;
    j["c"] = d.urn.reinforcement();
    j["balls"] = d.urn.balls();
    j["color0_feasible"] = d.color0_feasible;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "a_scale,c,color,balls\n";
    for (std::size_t i = 0; i < d.urn.colors(); ++i)
      std::cout << d.a_scale << "," << d.urn.reinforcement() << "," << i << ","
                << d.urn.balls()[i] << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized hypergeometric distributions and their urn models"};
  app.require_subcommand(1);

  Options o;
  auto* pmf_cmd = app.add_subcommand("pmf", "full support table with masses");
  auto* moments_cmd = app.add_subcommand("moments", "closed-form moments");
  auto* sample_cmd = app.add_subcommand("sample", "reproducible draws");
  auto* verify_cmd = app.add_subcommand("verify", "verification reports");
  verify_cmd->require_subcommand(1);
  auto* vnorm = verify_cmd->add_subcommand("normalization", "support masses sum to 1");
  auto* vmom = verify_cmd->add_subcommand("moments", "closed forms vs enumeration");
  auto* vgof = verify_cmd->add_subcommand("gof", "chi-square sampler fit");
  auto* converge_cmd = app.add_subcommand("converge", "urn-limit deviation table");
  auto* derive_cmd = app.add_subcommand("derive-urn", "urn parameters at a scale");

  for (CLI::App* cmd : {pmf_cmd, moments_cmd, sample_cmd, vnorm, vmom, vgof, converge_cmd, derive_cmd})
    add_common(cmd, o);
  for (CLI::App* cmd : {vnorm, vmom, vgof, converge_cmd})
    cmd->add_option("--tol", o.tol, "pass tolerance");
  converge_cmd->add_option("--a-scales", o.a_scales_str, "comma-separated urn scales");
  derive_cmd->add_option("--a-scale", o.a_scale, "urn scale");
  vgof->add_option("--step-cap", o.step_cap, "per-trial draw cap for ipe");
  sample_cmd->add_option("--step-cap", o.step_cap, "per-trial draw cap for ipe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (pmf_cmd->parsed()) return run_pmf(pmf_cmd, o);
    if (moments_cmd->parsed()) return run_moments(moments_cmd, o);
    if (sample_cmd->parsed()) return run_sample(sample_cmd, o);
    if (verify_cmd->parsed()) {
      if (vnorm->parsed()) return run_verify_normalization(vnorm, o);
      if (vmom->parsed()) return run_verify_moments(vmom, o);
      if (vgof->parsed()) return run_verify_gof(vgof, o);
    }
    if (converge_cmd->parsed()) return run_converge(converge_cmd, o);
    if (derive_cmd->parsed()) return run_derive_urn(derive_cmd, o);
  } catch (const ghyper::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
