#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace graphpse {

/// Sum whose result depends only on the multiset of terms: the terms are
/// sorted before accumulation. Used wherever a computation must be bitwise
/// equivariant under node relabeling.
template <typename Scalar>
Scalar order_independent_sum(std::span<Scalar> terms) {
  std::sort(terms.begin(), terms.end());
  Scalar sum = Scalar(0);
  for (Scalar t : terms) sum += t;
  return sum;
}

template <typename Scalar>
Scalar order_independent_sum(std::vector<Scalar> terms) {
  return order_independent_sum(std::span<Scalar>(terms));
}

/// Population mean and standard deviation of a multiset, order independent.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

inline MeanStd mean_std(std::vector<double> values) {
  if (values.empty()) return {};
  const double n = static_cast<double>(values.size());
  const double mean = order_independent_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
  return {mean, std::sqrt(order_independent_sum(std::move(sq)) / n)};
}

}  // namespace graphpse
