// Copyright 2026 The Tabletop Authors
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

#ifndef TABLETOP_TESTS_NN_ORACLES_H_
#define TABLETOP_TESTS_NN_ORACLES_H_

#include <algorithm>
#include <cmath>

#include "tabletop/nn/ppo.h"

namespace tabletop::testing {

using MatD = nn::Matrix<double>;
using VecD = nn::Vector<double>;
using nn::MaskMatrix;
using nn::RowVector;
using nn::PolicyNet;
using nn::PpoBatch;
using nn::PpoLossConfig;
using nn::NetShape;

// Direct sum A_t = sum_l (gamma lambda)^l delta_{t+l}, cut after a done.
inline MatD GaeOracle(const MatD& r, const MatD& v, const MaskMatrix& done,
                      const RowVector<double>& boot, double gamma, double lambda) {
  MatD adv = MatD::Zero(r.rows(), r.cols());
  for (Eigen::Index n = 0; n < r.cols(); ++n) {
    for (Eigen::Index t = 0; t < r.rows(); ++t) {
      double weight = 1.0;
      for (Eigen::Index k = t; k < r.rows(); ++k) {
        const double next = done(k, n) ? 0.0 : (k + 1 < r.rows() ? v(k + 1, n) : boot(n));
        adv(t, n) += weight * (r(k, n) + gamma * next - v(k, n));
        if (done(k, n)) break;
        weight *= gamma * lambda;
      }
    }
  }
  return adv;
}

struct Problem {
  PolicyNet<double> net;
  PpoBatch<double> batch;
};

inline Problem MakeProblem(NetShape shape, int samples, Seed seed) {
  Rng rng(seed);
  PolicyNet<double> net(shape);
  net.Initialize(rng);
  // Move off the zero policy head so every term has a gradient.
  for (Eigen::Index i = 0; i < net.parameter_count(); ++i) net.parameters()[i] += 0.1 * rng.Normal();
  PpoBatch<double> b;
  const int in = shape.input_size();
  b.observations = MatD(in, samples);
  for (Eigen::Index i = 0; i < b.observations.size(); ++i) b.observations.data()[i] = rng.Normal();
  b.masks = MaskMatrix::Zero(shape.actions, samples);
  for (int s = 0; s < samples; ++s) {
    for (int a = 0; a < shape.actions; ++a) b.masks(a, s) = rng.UniformInt(3) != 0;
    const int forced = static_cast<int>(rng.UniformInt(shape.actions));
    b.masks(forced, s) = 1;
    std::vector<int> legal;
    for (int a = 0; a < shape.actions; ++a) {
      if (b.masks(a, s)) legal.push_back(a);
    }
    b.actions.push_back(legal[rng.UniformInt(legal.size())]);
  }
  const auto out = net.Forward(b.observations);
  const MatD logp = nn::MaskedLogSoftmax<double>(out.logits, b.masks);
  b.old_log_probs = VecD(samples);
  b.advantages = VecD(samples);
  b.returns = VecD(samples);
  b.old_values = VecD(samples);
  for (int s = 0; s < samples; ++s) {
    // Old policy differs a little so some samples are clipped.
    b.old_log_probs[s] = logp(b.actions[s], s) + 0.3 * rng.Normal();
    b.advantages[s] = rng.Normal();
    b.old_values[s] = out.values(s) + 0.3 * rng.Normal();
    b.returns[s] = out.values(s) + rng.Normal();
  }
  return {std::move(net), std::move(b)};
}

// Worst relative error between the analytic gradient and central
// differences over every parameter.
inline double GradientError(Problem p, const PpoLossConfig& cfg) {
  VecD grad;
  nn::PpoLoss(p.net, p.batch, cfg, &grad);
  const double h = 1e-6;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < p.net.parameter_count(); ++i) {
    const double saved = p.net.parameters()[i];
    p.net.parameters()[i] = saved + h;
    const double up = nn::PpoLoss<double>(p.net, p.batch, cfg, nullptr).loss;
    p.net.parameters()[i] = saved - h;
    const double down = nn::PpoLoss<double>(p.net, p.batch, cfg, nullptr).loss;
    p.net.parameters()[i] = saved;
    const double fd = (up - down) / (2 * h);
    const double err = std::abs(fd - grad[i]) / std::max(1e-3, std::abs(fd) + std::abs(grad[i]));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace tabletop::testing

#endif  // TABLETOP_TESTS_NN_ORACLES_H_
