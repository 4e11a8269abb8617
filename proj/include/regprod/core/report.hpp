#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regprod/core/bigrational.hpp"

namespace regprod {

/// One row of a per-term breakdown: named real fields in insertion order.
template <class Real>
struct BreakdownRow {
  std::string label;
  std::vector<std::pair<std::string, Real>> fields;
};

/// Result of a regularized-product computation.
template <class Real>
struct RegProdReport {
  std::string kind;
  /// Present whenever the exponent is rational.
  std::optional<BigRational> exact_exponent;
  Real exponent{0};
  Real value{0};
  std::vector<BreakdownRow<Real>> breakdown;
  /// Named residuals (imaginary parts, cross-path differences, error estimates).
  std::map<std::string, double> residuals;
  std::vector<std::string> notes;
  std::string status = "ok";
};

}  // namespace regprod
