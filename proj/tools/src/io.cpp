#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "contest/errors.hpp"

namespace contest::cli {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double round9(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(fmt9(v));
}

nlohmann::json result_to_json(const OptResult& r, const nlohmann::json& config) {
  nlohmann::json policy = nlohmann::json::array();
  for (double v : r.policy.values()) policy.push_back(round9(v));
  nlohmann::json j;
  j["policy"] = policy;
  j["value"] = round9(r.value);
  j["gap"] = std::isfinite(r.certified_gap) ? nlohmann::json(round9(r.certified_gap)) : nlohmann::json(nullptr);
  j["nodes"] = r.nodes_explored;
  j["method"] = r.method;
  j["certified"] = r.certified;
  j["config"] = config;
  const auto cls = classify_structure(r.policy, r.method == "grid" && config.contains("granularity")
                                                    ? 0.5 * config["granularity"].get<double>()
                                                    : 1e-6);
  j["structure"] = to_string(cls.tag);
  if (r.method == "bnb") {
    j["max_depth"] = r.max_depth;
    j["depth_bound"] = round9(r.depth_bound);
    j["epsilon_effective"] = round9(r.epsilon_effective);
  }
  j["quad_bound"] = round9(r.quad_bound);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Policy policy_from_json(const nlohmann::json& doc) {
  if (!doc.contains("policy") || !doc["policy"].is_array())
    throw Error(ErrorKind::parse, "document has no policy array");
  std::vector<double> v;
  for (const auto& e : doc["policy"]) v.push_back(e.get<double>());
  // Shares were rounded to 9 digits on output; restore the exact sum before validating.
  double sum = 0.0;
  for (double x : v) sum += x;
  if (std::abs(sum - 1.0) < 1e-8 && sum > 0.0)
    for (double& x : v) x /= sum;
  return make_policy(std::move(v));
}

Policy read_policy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
  return policy_from_json(doc);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "alpha,beta,p1,p2,value,structure_tag\n";
  for (const auto& r : rows)
    out << fmt9(r.alpha) << ',' << fmt9(r.beta) << ',' << fmt9(r.p1) << ',' << fmt9(r.p2) << ','
        << fmt9(r.value) << ',' << r.structure << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double number(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::parse, "bad number '" + s + "' on line " + std::to_string(line_no));
}

}  // namespace

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "alpha,beta,p1,p2,value,structure_tag")
    throw Error(ErrorKind::parse, "missing sweep CSV header");
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 6) throw Error(ErrorKind::parse, "expected 6 columns on line " + std::to_string(line_no));
    rows.push_back({number(c[0], line_no), number(c[1], line_no), number(c[2], line_no), number(c[3], line_no),
                    number(c[4], line_no), c[5]});
  }
  return rows;
}

void write_cdf_csv(std::ostream& out, const std::vector<std::pair<double, double>>& table) {
  out << "q,F\n";
  for (const auto& [q, f] : table) out << fmt9(q) << ',' << fmt9(f) << '\n';
}

std::vector<std::pair<double, double>> read_cdf_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "q,F") throw Error(ErrorKind::parse, "missing CDF CSV header");
  std::vector<std::pair<double, double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 2) throw Error(ErrorKind::parse, "expected 2 columns on line " + std::to_string(line_no));
    rows.emplace_back(number(c[0], line_no), number(c[1], line_no));
  }
  return rows;
}

}  // namespace contest::cli
