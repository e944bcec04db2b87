/******************************************************************************
 * Copyright 2026 The Panocam Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

/**
 * @file logistic.hpp
 * @brief L2-regularized logistic regression, binary and one-vs-rest.
 *
 * The objective is
 *
 *   sum_i log(1 + exp(-s_i (w.x_i + b))) + |w|^2 / (2 C),   s_i in {-1, +1}
 *
 * with the bias left unpenalized. It is minimized with damped Newton steps
 * (Armijo backtracking) until the gradient norm drops to `gradient_tolerance`
 * or `max_iterations` is reached. The solver is fully deterministic.
 */

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace panocam {

double sigmoid(double z);

struct LogisticOptions {
  double C = 1.0;
  double gradient_tolerance = 1e-6;
  int max_iterations = 10000;
};

struct LogisticTrace {
  /// Objective value before the first step and after every accepted step.
  std::vector<double> loss;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double C = 1.0;

  double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double probability(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd decisions(const Eigen::MatrixXd& X) const;
  Eigen::VectorXd probabilities(const Eigen::MatrixXd& X) const;
};

/// Rows of X are samples; labels are 1 (positive) or 0 (negative).
/// Throws kDegenerateData when fewer than two samples or a single class.
LogisticModel train_logistic(const Eigen::MatrixXd& X, const std::vector<int>& labels,
                             const LogisticOptions& options = {},
                             LogisticTrace* trace = nullptr);

/// Objective value of `model` on (X, labels) with the model's C.
double logistic_objective(const LogisticModel& model, const Eigen::MatrixXd& X,
                          const std::vector<int>& labels);

/// One binary model per class, trained class-vs-rest.
struct OneVsRestModel {
  std::vector<std::string> classes;  // sorted
  std::vector<LogisticModel> models;

  /// Class with the largest decision value; ties go to the earlier class.
  std::string predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// Throws kDegenerateData with fewer than two distinct classes.
OneVsRestModel train_one_vs_rest(const Eigen::MatrixXd& X, const std::vector<std::string>& labels,
                                 const LogisticOptions& options = {});

}  // namespace panocam
