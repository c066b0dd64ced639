#include "contest/errors.hpp"

namespace contest {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::range: return "range error";
    case ErrorKind::order_violation: return "order violation";
    case ErrorKind::normalization_violation: return "normalization violation";
    case ErrorKind::trivial_policy: return "nontrivial-policy error";
    case ErrorKind::reduction_precondition: return "reduction-precondition error";
    case ErrorKind::structural_condition: return "structural-condition error";
    case ErrorKind::budget: return "budget exceeded";
    case ErrorKind::parse: return "parse error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace contest
