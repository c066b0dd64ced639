#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "contest/optimizer.hpp"
#include "contest/structure.hpp"

namespace contest::cli {

// Fixed 9-significant-digit text for a double.
std::string fmt9(double v);
// v rounded through its 9-digit text, so JSON output carries 9 digits at most.
double round9(double v);

nlohmann::json result_to_json(const OptResult& r, const nlohmann::json& config);
// Reads the policy back from an OptResult document.
Policy policy_from_json(const nlohmann::json& doc);
Policy read_policy_file(const std::string& path);

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double value = 0.0;
  std::string structure;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

void write_cdf_csv(std::ostream& out, const std::vector<std::pair<double, double>>& table);
std::vector<std::pair<double, double>> read_cdf_csv(std::istream& in);

}  // namespace contest::cli
