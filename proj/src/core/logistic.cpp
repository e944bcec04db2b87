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

#include "logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "error.hpp"

namespace panocam {
namespace {

// log(1 + exp(-m)) without overflow.
double log1p_exp_neg(double m) {
  return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

struct Problem {
  const Eigen::MatrixXd& X;
  Eigen::VectorXd sign;  // +1 / -1
  double inv_c;

  // Parameters are packed as [w; b].
  double objective(const Eigen::VectorXd& theta) const {
    const auto d = X.cols();
    const Eigen::VectorXd z = (X * theta.head(d)).array() + theta(d);
    double loss = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) loss += log1p_exp_neg(sign(i) * z(i));
    return loss + 0.5 * inv_c * theta.head(d).squaredNorm();
  }

  void gradient_hessian(const Eigen::VectorXd& theta, Eigen::VectorXd& grad,
                        Eigen::MatrixXd& hess) const {
    const auto n = X.rows();
    const auto d = X.cols();
    const Eigen::VectorXd z = (X * theta.head(d)).array() + theta(d);
    Eigen::VectorXd residual(n);  // p_i - y_i
    Eigen::VectorXd curvature(n);  // p_i (1 - p_i)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = sigmoid(z(i));
      residual(i) = p - (sign(i) > 0.0 ? 1.0 : 0.0);
      curvature(i) = p * (1.0 - p);
    }
    grad.resize(d + 1);
    grad.head(d) = X.transpose() * residual + inv_c * theta.head(d);
    grad(d) = residual.sum();

    hess.resize(d + 1, d + 1);
    const Eigen::MatrixXd weighted = X.array().colwise() * curvature.array();
    hess.topLeftCorner(d, d) = X.transpose() * weighted;
    hess.topLeftCorner(d, d).diagonal().array() += inv_c;
    const Eigen::VectorXd cross = weighted.colwise().sum().transpose();
    hess.block(0, d, d, 1) = cross;
    hess.block(d, 0, 1, d) = cross.transpose();
    hess(d, d) = curvature.sum();
  }
};

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogisticModel::decision(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return weights.dot(x) + bias;
}

double LogisticModel::probability(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return sigmoid(decision(x));
}

Eigen::VectorXd LogisticModel::decisions(const Eigen::MatrixXd& X) const {
  return (X * weights).array() + bias;
}

Eigen::VectorXd LogisticModel::probabilities(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd z = decisions(X);
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = sigmoid(z(i));
  return z;
}

LogisticModel train_logistic(const Eigen::MatrixXd& X, const std::vector<int>& labels,
                             const LogisticOptions& options, LogisticTrace* trace) {
  if (static_cast<std::size_t>(X.rows()) != labels.size()) {
    fail(ErrorCode::kInvalidArgument, "feature rows and labels differ in count");
  }
  if (!(options.C > 0.0)) fail(ErrorCode::kInvalidArgument, "regularization C must be positive");
  if (X.rows() < 2) fail(ErrorCode::kDegenerateData, "logistic regression needs >= 2 samples");
  const auto positives = std::count(labels.begin(), labels.end(), 1);
  const auto negatives = std::count(labels.begin(), labels.end(), 0);
  if (positives + negatives != static_cast<long>(labels.size())) {
    fail(ErrorCode::kInvalidArgument, "binary labels must be 0 or 1");
  }
  if (positives == 0 || negatives == 0) {
    fail(ErrorCode::kDegenerateData, "training data contains a single class");
  }

  Problem problem{X, Eigen::VectorXd(X.rows()), 1.0 / options.C};
  for (Eigen::Index i = 0; i < X.rows(); ++i) problem.sign(i) = labels[i] == 1 ? 1.0 : -1.0;

  const auto d = X.cols();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  double loss = problem.objective(theta);
  LogisticTrace local;
  local.loss.push_back(loss);

  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    problem.gradient_hessian(theta, grad, hess);
    local.gradient_norm = grad.norm();
    if (local.gradient_norm <= options.gradient_tolerance) {
      local.converged = true;
      break;
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    Eigen::VectorXd step = ldlt.solve(grad);
    if (ldlt.info() != Eigen::Success || !step.allFinite() || step.dot(grad) <= 0.0) {
      // The bias curvature can vanish on separable data; fall back to a
      // slightly damped system.
      Eigen::MatrixXd damped = hess;
      damped.diagonal().array() += 1e-8 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff());
      step = damped.ldlt().solve(grad);
    }

    const double slope = step.dot(grad);
    if (slope <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(loss))) {
      // The predicted decrease is below the objective's rounding noise, so
      // the line search cannot judge it. This close to the optimum the full
      // Newton step is kept when it shrinks the gradient.
      const Eigen::VectorXd candidate = theta - step;
      Eigen::VectorXd candidate_grad;
      problem.gradient_hessian(candidate, candidate_grad, hess);
      local.iterations = iter + 1;
      if (candidate_grad.norm() < local.gradient_norm) {
        theta = candidate;
        loss = problem.objective(theta);
        local.loss.push_back(loss);
        local.gradient_norm = candidate_grad.norm();
      }
      local.converged = local.gradient_norm <= options.gradient_tolerance;
      break;
    }
    double alpha = 1.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      const Eigen::VectorXd candidate = theta - alpha * step;
      const double candidate_loss = problem.objective(candidate);
      if (candidate_loss <= loss - 1e-4 * alpha * slope) {
        theta = candidate;
        loss = candidate_loss;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    local.iterations = iter + 1;
    if (!accepted) {
      // Objective is flat to machine precision along the Newton direction.
      problem.gradient_hessian(theta, grad, hess);
      local.gradient_norm = grad.norm();
      local.converged = local.gradient_norm <= options.gradient_tolerance;
      break;
    }
    local.loss.push_back(loss);
  }
  if (!local.converged) {
    problem.gradient_hessian(theta, grad, hess);
    local.gradient_norm = grad.norm();
    local.converged = local.gradient_norm <= options.gradient_tolerance;
  }

  LogisticModel model;
  model.weights = theta.head(d);
  model.bias = theta(d);
  model.C = options.C;
  if (trace) *trace = std::move(local);
  return model;
}

double logistic_objective(const LogisticModel& model, const Eigen::MatrixXd& X,
                          const std::vector<int>& labels) {
  Problem problem{X, Eigen::VectorXd(X.rows()), 1.0 / model.C};
  for (Eigen::Index i = 0; i < X.rows(); ++i) problem.sign(i) = labels.at(i) == 1 ? 1.0 : -1.0;
  Eigen::VectorXd theta(model.weights.size() + 1);
  theta << model.weights, model.bias;
  return problem.objective(theta);
}

std::string OneVsRestModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  std::size_t best = 0;
  double best_value = models.at(0).decision(x);
  for (std::size_t k = 1; k < models.size(); ++k) {
    const double v = models[k].decision(x);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  return classes[best];
}

OneVsRestModel train_one_vs_rest(const Eigen::MatrixXd& X, const std::vector<std::string>& labels,
                                 const LogisticOptions& options) {
  const std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) {
    fail(ErrorCode::kDegenerateData, "multi-class training needs >= 2 classes");
  }
  OneVsRestModel ovr;
  ovr.classes.assign(distinct.begin(), distinct.end());
  for (const auto& cls : ovr.classes) {
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == cls ? 1 : 0;
    ovr.models.push_back(train_logistic(X, y, options));
  }
  return ovr;
}

}  // namespace panocam
