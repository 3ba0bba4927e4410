/*
 * Copyright 2026 The hsidj Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HSIDJ_TESTS_METRIC_ORACLE_H_
#define HSIDJ_TESTS_METRIC_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hsidj::testing {

using Rational = boost::multiprecision::cpp_rational;

struct OracleMetrics {
  double oa = 0;
  double aa = 0;
  double kappa = 0;
  bool kappa_degenerate = false;
  std::vector<std::optional<double>> recall;
  std::vector<double> precision;
  std::vector<std::optional<double>> f1;
};

inline double ToDouble(const Rational& r) { return static_cast<double>(r); }

// Textbook definitions evaluated in exact rational arithmetic; only the final
// values are rounded to double. cm[i][j] counts true class i predicted as j.
inline OracleMetrics RationalMetrics(
    const std::vector<std::vector<std::uint64_t>>& cm) {
  const std::size_t k = cm.size();
  std::vector<Rational> row(k, 0), col(k, 0);
  Rational total = 0, diag = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      row[i] += cm[i][j];
      col[j] += cm[i][j];
      total += cm[i][j];
    }
    diag += cm[i][i];
  }
  OracleMetrics m;
  const Rational po = diag / total;
  m.oa = ToDouble(100 * po);

  Rational pe = 0;
  for (std::size_t i = 0; i < k; ++i) pe += (row[i] / total) * (col[i] / total);
  if (pe == 1) {
    m.kappa_degenerate = true;
    m.kappa = po == 1 ? 100.0 : 0.0;
  } else {
    m.kappa = ToDouble(100 * (po - pe) / (1 - pe));
  }

  Rational recall_sum = 0;
  int with_support = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Rational correct = cm[i][i];
    std::optional<Rational> recall;
    if (row[i] != 0) {
      recall = correct / row[i];
      recall_sum += *recall;
      ++with_support;
      m.recall.push_back(ToDouble(100 * *recall));
    } else {
      m.recall.push_back(std::nullopt);
    }
    const Rational precision = col[i] != 0 ? correct / col[i] : Rational(0);
    m.precision.push_back(ToDouble(100 * precision));
    if (!recall) {
      m.f1.push_back(std::nullopt);
    } else if (precision + *recall == 0) {
      m.f1.push_back(0.0);
    } else {
      m.f1.push_back(
          ToDouble(100 * 2 * precision * *recall / (precision + *recall)));
    }
  }
  m.aa = with_support > 0 ? ToDouble(100 * recall_sum / with_support) : 0.0;
  return m;
}

}  // namespace hsidj::testing

#endif  // HSIDJ_TESTS_METRIC_ORACLE_H_
