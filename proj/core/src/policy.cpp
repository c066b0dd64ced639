#include "contest/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "contest/errors.hpp"

namespace contest {

Policy make_policy(std::vector<double> values) {
  if (values.size() < 2) throw Error(ErrorKind::domain, "policy needs at least two ranks");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorKind::domain, "entry " + std::to_string(i + 1) + " is negative or not finite");
    sum += v;
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i + 1] > values[i] + kOrderTol)
      throw Error(ErrorKind::order_violation,
                  "p_" + std::to_string(i + 2) + " exceeds p_" + std::to_string(i + 1));
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    std::ostringstream os;
    os.precision(17);
    os << "shares sum to " << sum;
    throw Error(ErrorKind::normalization_violation, os.str());
  }
  return Policy(std::move(values));
}

Policy hm(int n) {
  if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
  std::vector<double> p(n, 0.0);
  p[0] = 1.0;
  return make_policy(std::move(p));
}

Policy uni(int n) {
  if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
  std::vector<double> p(n, 1.0 / (n - 1));
  p[n - 1] = 0.0;
  return make_policy(std::move(p));
}

Policy two_level(int n, double p1) {
  if (n < 3) throw Error(ErrorKind::domain, "two-level family needs n >= 3");
  const double lo = 1.0 / (n - 1);
  if (!(p1 >= lo - kOrderTol && p1 <= 1.0 + kOrderTol))
    throw Error(ErrorKind::domain, "p1 outside [1/(n-1), 1]");
  p1 = std::clamp(p1, lo, 1.0);
  std::vector<double> p(n, 0.0);
  p[0] = p1;
  const double mid = (1.0 - p1) / (n - 2);
  for (int i = 1; i < n - 1; ++i) p[i] = std::min(mid, p1);
  return make_policy(std::move(p));
}

bool is_nontrivial(const Policy& p, double tol) {
  const auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  return *hi - *lo > tol;
}

const char* to_string(StructureTag tag) {
  switch (tag) {
    case StructureTag::hm: return "HM";
    case StructureTag::uni: return "UNI";
    case StructureTag::two_level: return "TwoLevel";
    case StructureTag::other: return "Other";
  }
  return "Other";
}

StructureClass classify_structure(const Policy& p, double tol) {
  const int n = p.n();
  tol += kOrderTol;  // absorb representation error in lattice shares
  StructureClass out;
  double rest = 0.0;
  for (int i = 1; i < n; ++i) rest = std::max(rest, p[i]);
  if (std::abs(p[0] - 1.0) <= tol && rest <= tol) {
    out.tag = StructureTag::hm;
    out.p1 = p[0];
    return out;
  }
  if (p.last() > tol) return out;
  const double target = 1.0 / (n - 1);
  bool is_uni = true;
  for (int i = 0; i < n - 1; ++i) is_uni = is_uni && std::abs(p[i] - target) <= tol;
  if (is_uni) {
    out.tag = StructureTag::uni;
    out.p1 = p[0];
    return out;
  }
  if (n >= 3) {
    double mean = 0.0;
    for (int i = 1; i < n - 1; ++i) mean += p[i];
    mean /= (n - 2);
    double dev = 0.0;
    for (int i = 1; i < n - 1; ++i) dev = std::max(dev, std::abs(p[i] - mean));
    if (dev <= tol) {
      out.tag = StructureTag::two_level;
      out.p1 = p[0];
    }
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, std::size_t position) {
  const std::string t = trim(token);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size())
    throw Error(ErrorKind::parse, "bad number '" + t + "' at position " + std::to_string(position));
  return v;
}

}  // namespace

Policy parse_policy(const std::string& raw, int n) {
  const std::string text = trim(raw);
  auto need_n = [&] {
    if (n < 2) throw Error(ErrorKind::parse, "named policy '" + text + "' needs n >= 2");
  };
  if (text == "hm") {
    need_n();
    return hm(n);
  }
  if (text == "uni") {
    need_n();
    return uni(n);
  }
  if (text == "uniform") {
    need_n();
    return make_policy(std::vector<double>(n, 1.0 / n));
  }
  if (text.rfind("two:", 0) == 0) {
    need_n();
    return two_level(n, parse_number(text.substr(4), 4));
  }
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    values.push_back(parse_number(token, start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (n >= 2 && static_cast<int>(values.size()) != n)
    throw Error(ErrorKind::parse, "policy has " + std::to_string(values.size()) +
                                      " entries but n = " + std::to_string(n));
  return make_policy(std::move(values));
}

std::string format_policy(const Policy& p) {
  std::string out;
  char buf[64];
  for (int i = 0; i < p.n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g", p[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

}  // namespace contest
