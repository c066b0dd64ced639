#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace contest {

inline constexpr double kOrderTol = 1e-12;
inline constexpr double kSumTol = 1e-12;

// Prize shares p_1 >= ... >= p_n >= 0 summing to one. Index 0 holds p_1.
class Policy {
 public:
  int n() const noexcept { return static_cast<int>(p_.size()); }
  double operator[](std::size_t i) const { return p_[i]; }
  double top() const { return p_.front(); }
  double last() const { return p_.back(); }
  std::span<const double> shares() const noexcept { return p_; }
  const std::vector<double>& values() const noexcept { return p_; }

  friend Policy make_policy(std::vector<double> values);

 private:
  explicit Policy(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

// Validates without sorting or renormalizing.
Policy make_policy(std::vector<double> values);

Policy hm(int n);
Policy uni(int n);
// (p1, (1-p1)/(n-2), ..., (1-p1)/(n-2), 0) for p1 in [1/(n-1), 1].
Policy two_level(int n, double p1);

bool is_nontrivial(const Policy& p, double tol = kOrderTol);

enum class StructureTag { hm, uni, two_level, other };

struct StructureClass {
  StructureTag tag = StructureTag::other;
  double p1 = 0.0;
};

const char* to_string(StructureTag tag);

StructureClass classify_structure(const Policy& p, double tol = 1e-6);

// Accepts "hm", "uni", "two:<p1>", "uniform" (the trivial policy) or
// comma-separated shares. n is required for the named forms.
Policy parse_policy(const std::string& text, int n);

std::string format_policy(const Policy& p);

}  // namespace contest
