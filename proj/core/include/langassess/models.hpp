// Copyright 2026 The langassess Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LANGASSESS_MODELS_HPP_
#define LANGASSESS_MODELS_HPP_

#include <cstddef>
#include <vector>

#include "langassess/tree.hpp"
#include "langassess/types.hpp"

namespace langassess::ml {

// z-score per column; zero-variance columns keep scale 1.
struct Standardizer {
  Vector mean;
  Vector scale;

  static Standardizer fit(const Matrix& x);
  Matrix apply(const Matrix& x) const;
};

struct KnnModel {
  int k = 5;
  Matrix x;
  Labels y;

  // Neighbors ordered by (distance, training index); vote ties go to 0.
  Labels predict(const Matrix& q) const;
};

struct LdaModel {
  Vector w;
  Vector mid;       // midpoint of the class means
  double b = 0.0;   // log prior ratio

  static LdaModel fit(const Matrix& x, const Labels& y, double ridge);
  // w . (x - mid) + b
  double score(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
  Labels predict(const Matrix& x) const;  // score > 0 -> 1
};

// Objective 0.5 |w|^2 + C sum log(1 + exp(-s_i (w.x_i + b))), s = 2y - 1.
// The parameter vector is [w; b]; the intercept is not penalized.
double logistic_loss(const Vector& theta, const Matrix& x, const Labels& y, double c);
Vector logistic_gradient(const Vector& theta, const Matrix& x, const Labels& y, double c);

struct LogisticModel {
  Vector theta;                      // [w; b]
  std::vector<double> loss_history;  // one entry per Newton step, plus the start
  double gradient_norm = 0.0;
  int iterations = 0;

  static LogisticModel fit(const Matrix& x, const Labels& y, double c, double tol = 1e-8,
                           int max_iter = 100);
  double decision(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
  Labels predict(const Matrix& x) const;
};

enum class Kernel { Linear, Rbf };

struct SvmParams {
  Kernel kernel = Kernel::Linear;
  double c = 1.0;
  double gamma = 0.0;  // <= 0 selects 1 / (p * Var(X))
  double tol = 1e-6;
  long max_iter = 100000;
};

struct SvmModel {
  Kernel kernel = Kernel::Linear;
  double gamma = 0.0;
  double c = 1.0;
  Matrix sv;            // training rows
  Vector alpha;         // dual coefficients, one per training row
  Vector y_signed;      // +-1
  double b = 0.0;       // f(x) = sum alpha_i y_i K(x_i, x) + b
  long iterations = 0;
  bool hit_iteration_cap = false;

  static SvmModel fit(const Matrix& x, const Labels& y, const SvmParams& params);
  double kernel_value(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                      const Eigen::Ref<const Eigen::RowVectorXd>& b) const;
  double decision(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
  Labels predict(const Matrix& x) const;  // decision > 0 -> 1

  // Dual objective 0.5 a'Qa - sum a.
  double dual_objective() const;
  // Largest violation of the KKT conditions of the dual at the solution.
  double kkt_violation() const;
};

}  // namespace langassess::ml

#endif  // LANGASSESS_MODELS_HPP_
