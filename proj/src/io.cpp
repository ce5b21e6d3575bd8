#include "ghyper/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>

#include "ghyper/errors.hpp"

namespace ghyper {

std::string format_real(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const PmfTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << table.columns[i] << ",";
  out << "mass\n";
  for (std::size_t r = 0; r < table.outcomes.size(); ++r) {
    for (const std::int64_t v : table.outcomes[r]) out << v << ",";
    out << format_real(table.masses[r]) << "\n";
  }
}

void write_csv(std::ostream& out, const VerificationReport& report) {
  out << "label,expected,observed,deviation\n";
  for (const ReportRow& row : report.rows)
    out << row.label << "," << format_real(row.expected) << "," << format_real(row.observed)
        << "," << format_real(row.deviation) << "\n";
}

void write_sample_csv(std::ostream& out, const std::vector<std::string>& columns,
                      const std::vector<Outcome>& draws) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const Outcome& x : draws) {
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
    out << "\n";
  }
}

void write_moments_csv(std::ostream& out, const MomentReport& report, std::size_t first_index) {
  out << (report.variances ? "index,mean,variance\n" : "index,mean\n");
  for (std::size_t i = 0; i < report.means.size(); ++i) {
    out << first_index + i << "," << format_real(report.means[i]);
    if (report.variances) out << "," << format_real((*report.variances)[i]);
    out << "\n";
  }
}

nlohmann::json to_json(const PmfTable& table) {
  nlohmann::json j;
  j["columns"] = table.columns;
  j["outcomes"] = table.outcomes;
  j["masses"] = table.masses;
  j["truncated"] = table.truncated;
  j["tail_mass_bound"] = table.tail_mass_bound;
  return j;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["kind"] = report_kind_name(report.kind);
  j["tolerance"] = report.tolerance;
  j["pass"] = report.pass;
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : report.rows)
    rows.push_back({{"label", row.label},
                    {"expected", row.expected},
                    {"observed", row.observed},
                    {"deviation", row.deviation}});
  j["rows"] = std::move(rows);
  return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport report;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "normalization")
    report.kind = ReportKind::normalization;
  else if (kind == "moments")
    report.kind = ReportKind::moments;
  else if (kind == "convergence")
    report.kind = ReportKind::convergence;
  else if (kind == "gof")
    report.kind = ReportKind::gof;
  else
    throw Error(Errc::usage_error, "unknown report kind '" + kind + "'");
  report.tolerance = j.at("tolerance").get<double>();
  report.pass = j.at("pass").get<bool>();
  for (const auto& row : j.at("rows"))
    report.rows.push_back({row.at("label").get<std::string>(), row.at("expected").get<double>(),
                           row.at("observed").get<double>(), row.at("deviation").get<double>()});
  return report;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "distribution", "weights", "counts", "c",      "n",
    "gamma",        "tail_epsilon", "a_scales", "seed", "trials"};

}  // namespace

ParamFile parse_param_file(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::usage_error, "parameter file must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kKnownKeys.count(key))
      throw Error(Errc::usage_error, "unknown parameter-file key '" + key + "'");

  ParamFile p;
  p.distribution = j.at("distribution").get<std::string>();
  const bool urn_based = p.distribution == "pe" || p.distribution == "ipe";
  const bool inverse = p.distribution == "migh" || p.distribution == "ipe";
  if (!urn_based && p.distribution != "mgh" && p.distribution != "migh")
    throw Error(Errc::usage_error, "distribution must be one of mgh, migh, pe, ipe");

  if (urn_based) {
    if (j.contains("weights"))
      throw Error(Errc::usage_error, p.distribution + " takes 'counts', not 'weights'");
    p.counts = j.at("counts").get<std::vector<std::int64_t>>();
    p.reinforcement = j.at("c").get<std::int64_t>();
  } else {
    if (j.contains("counts") || j.contains("c"))
      throw Error(Errc::usage_error, p.distribution + " takes 'weights', not 'counts'/'c'");
    p.weights = j.at("weights").get<std::vector<double>>();
  }
  if (inverse) {
    if (j.contains("n"))
      throw Error(Errc::usage_error, p.distribution + " takes 'gamma', not 'n'");
    p.gamma = j.at("gamma").get<std::int64_t>();
  } else {
    if (j.contains("gamma"))
      throw Error(Errc::usage_error, p.distribution + " takes 'n', not 'gamma'");
    p.draws = j.at("n").get<std::int64_t>();
  }
  if (j.contains("tail_epsilon")) p.tail_epsilon = j.at("tail_epsilon").get<double>();
  if (j.contains("a_scales")) p.a_scales = j.at("a_scales").get<std::vector<std::int64_t>>();
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("trials")) p.trials = j.at("trials").get<std::int64_t>();
  return p;
}

ParamFile load_param_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::usage_error, "cannot open parameter file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::usage_error, "invalid JSON in '" + path + "': " + e.what());
  }
  try {
    return parse_param_file(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::usage_error, "bad parameter file '" + path + "': " + e.what());
  }
}

}  // namespace ghyper
