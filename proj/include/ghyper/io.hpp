#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghyper/oracle.hpp"
#include "ghyper/types.hpp"

namespace ghyper {

/// Shortest decimal representation that round-trips to the same double
/// (at most 17 significant digits).
std::string format_real(double value);

/// A pmf table: column names for the tuple entries, the outcomes in
/// enumeration order, and their masses.
struct PmfTable {
  std::vector<std::string> columns;
  std::vector<Outcome> outcomes;
  std::vector<double> masses;
  bool truncated = false;
  double tail_mass_bound = 0.0;
};

void write_csv(std::ostream& out, const PmfTable& table);
void write_csv(std::ostream& out, const VerificationReport& report);
void write_sample_csv(std::ostream& out, const std::vector<std::string>& columns,
                      const std::vector<Outcome>& draws);
void write_moments_csv(std::ostream& out, const MomentReport& report, std::size_t first_index);

nlohmann::json to_json(const PmfTable& table);
nlohmann::json to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

/// Parameter file contents; `distribution` selects which fields are
/// required (mgh: weights+n, migh: weights+gamma, pe: counts+c+n,
/// ipe: counts+c+gamma). Unknown keys and fields belonging to a different
/// distribution are rejected.
struct ParamFile {
  std::string distribution;
  std::vector<double> weights;
  std::vector<std::int64_t> counts;
  std::int64_t reinforcement = 0;
  std::optional<std::int64_t> draws;
  std::optional<std::int64_t> gamma;
  std::optional<double> tail_epsilon;
  std::optional<std::vector<std::int64_t>> a_scales;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
};

ParamFile load_param_file(const std::string& path);
ParamFile parse_param_file(const nlohmann::json& j);

}  // namespace ghyper
