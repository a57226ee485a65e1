#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hecke/algebra/laurent_q.hpp"
#include "hecke/error.hpp"

namespace hecke {

/// Integer polynomial in q through the given (q, value) samples. The first
/// degree_bound + 1 samples determine the candidate by exact Lagrange
/// interpolation; every further sample must agree, otherwise the data are not
/// a polynomial within the bound and InterpolationDegreeExceeded is thrown.
inline LaurentQ interpolate_in_q(const std::vector<std::pair<long long, BigInt>>& samples, int degree_bound) {
  const int n = degree_bound + 1;
  if (static_cast<int>(samples.size()) < n) throw UsageError("not enough interpolation samples");
  // Newton divided differences on the first n points.
  std::vector<Rational> dd;
  for (int i = 0; i < n; ++i) dd.emplace_back(samples[i].second);
  for (int j = 1; j < n; ++j)
    for (int i = n - 1; i >= j; --i)
      dd[i] = (dd[i] - dd[i - 1]) / Rational(samples[i].first - samples[i - j].first);
  // Expand the Newton form into the monomial basis.
  std::vector<Rational> coeffs{dd[n - 1]};
  for (int i = n - 2; i >= 0; --i) {
    std::vector<Rational> next(coeffs.size() + 1, Rational(0));
    for (size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= coeffs[k] * samples[i].first;
    }
    next[0] += dd[i];
    coeffs = std::move(next);
  }
  std::vector<int64_t> ints;
  for (const auto& c : coeffs) {
    if (denominator(c) != 1)
      throw InterpolationDegreeExceeded("fit has non-integral coefficients within degree " +
                                        std::to_string(degree_bound));
    BigInt v = numerator(c);
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw ArithmeticOverflow("interpolated coefficient");
    ints.push_back(static_cast<int64_t>(v));
  }
  LaurentQ f = LaurentQ::from_coeffs(0, std::move(ints));
  for (size_t i = n; i < samples.size(); ++i)
    if (f.eval(samples[i].first) != Rational(samples[i].second))
      throw InterpolationDegreeExceeded("sample at q=" + std::to_string(samples[i].first) +
                                        " disagrees with the degree-" + std::to_string(degree_bound) + " fit");
  if (f.high() > degree_bound) throw InterpolationDegreeExceeded("fit exceeds degree bound");
  return f;
}

}  // namespace hecke
