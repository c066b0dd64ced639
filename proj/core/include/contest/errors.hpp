#pragma once

#include <stdexcept>
#include <string>

namespace contest {

enum class ErrorKind {
  domain,                 // argument outside its mathematical domain
  range,                  // value outside the admissible range (support, inverse range)
  order_violation,        // policy entries not nonincreasing
  normalization_violation,// policy entries do not sum to one
  trivial_policy,         // operation needs a nontrivial policy
  reduction_precondition, // reduced objective needs p_n = 0
  structural_condition,   // two-level structure not guaranteed for this objective
  budget,                 // enumeration or node budget exceeded
  parse,                  // malformed textual input
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace contest
