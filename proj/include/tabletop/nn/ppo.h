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

#ifndef TABLETOP_NN_PPO_H_
#define TABLETOP_NN_PPO_H_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "tabletop/action_space.h"
#include "tabletop/nn/policy_net.h"

namespace tabletop::nn {

// Masked log-softmax per column: masked-out logits are replaced by
// kMaskedLogit, so their probability is exactly zero.
template <typename Scalar>
Matrix<Scalar> MaskedLogSoftmax(const Matrix<Scalar>& logits, const MaskMatrix& masks) {
  if (logits.rows() != masks.rows() || logits.cols() != masks.cols()) {
    throw ShapeError("logits and masks differ in shape");
  }
  Matrix<Scalar> out(logits.rows(), logits.cols());
  for (Eigen::Index b = 0; b < logits.cols(); ++b) {
    Scalar max = static_cast<Scalar>(kMaskedLogit);
    bool any = false;
    for (Eigen::Index j = 0; j < logits.rows(); ++j) {
      if (masks(j, b)) {
        max = any ? std::max(max, logits(j, b)) : logits(j, b);
        any = true;
      }
    }
    if (!any) throw InvalidMaskError("mask has no legal action");
    Scalar sum = 0;
    for (Eigen::Index j = 0; j < logits.rows(); ++j) {
      const Scalar z = masks(j, b) ? logits(j, b) : static_cast<Scalar>(kMaskedLogit);
      out(j, b) = z - max;
      sum += std::exp(out(j, b));
    }
    out.col(b).array() -= std::log(sum);
  }
  return out;
}

// Inverse-CDF draw from one column of probabilities. Zero-probability
// entries are never returned.
template <typename Scalar>
int SampleCategorical(const Eigen::Ref<const Vector<Scalar>>& probs, Rng& rng) {
  const double u = rng.UniformDouble();
  double cumulative = 0.0;
  int last_positive = -1;
  for (Eigen::Index j = 0; j < probs.size(); ++j) {
    if (probs[j] <= Scalar(0)) continue;
    last_positive = static_cast<int>(j);
    cumulative += static_cast<double>(probs[j]);
    if (u < cumulative) return last_positive;
  }
  if (last_positive < 0) throw InvalidMaskError("distribution has no support");
  return last_positive;
}

// Entropy of a masked categorical given its log-probabilities.
template <typename Scalar>
Scalar MaskedEntropy(const Eigen::Ref<const Vector<Scalar>>& logp,
                     const Eigen::Ref<const Eigen::Array<std::uint8_t, Eigen::Dynamic, 1>>& mask) {
  Scalar h = 0;
  for (Eigen::Index j = 0; j < logp.size(); ++j) {
    if (mask[j]) h -= std::exp(logp[j]) * logp[j];
  }
  return h;
}

// GAE over a rollout stored as (steps x envs). done(t, n) marks that the
// episode in env n ended with the action taken at step t, so nothing is
// bootstrapped across it. `bootstrap` holds V(s_T) per env.
template <typename Scalar>
struct GaeResult {
  Matrix<Scalar> advantages;
  Matrix<Scalar> returns;
};

template <typename Scalar>
GaeResult<Scalar> ComputeGae(const Matrix<Scalar>& rewards, const Matrix<Scalar>& values,
                             const Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>& dones,
                             const RowVector<Scalar>& bootstrap, Scalar gamma, Scalar lambda) {
  const Eigen::Index steps = rewards.rows();
  const Eigen::Index envs = rewards.cols();
  GaeResult<Scalar> out{Matrix<Scalar>(steps, envs), Matrix<Scalar>(steps, envs)};
  for (Eigen::Index n = 0; n < envs; ++n) {
    Scalar running = 0;
    for (Eigen::Index t = steps - 1; t >= 0; --t) {
      const Scalar next_value = t + 1 < steps ? values(t + 1, n) : bootstrap(n);
      const Scalar live = dones(t, n) ? Scalar(0) : Scalar(1);
      const Scalar delta = rewards(t, n) + gamma * next_value * live - values(t, n);
      running = delta + gamma * lambda * live * running;
      out.advantages(t, n) = running;
    }
  }
  out.returns = out.advantages + values;
  return out;
}

struct PpoLossConfig {
  double clip = 0.2;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  bool clip_value_loss = true;
  bool normalize_advantages = true;
};

// One minibatch, one column per sample.
template <typename Scalar>
struct PpoBatch {
  Matrix<Scalar> observations;
  MaskMatrix masks;
  std::vector<int> actions;
  Vector<Scalar> old_log_probs;
  Vector<Scalar> advantages;
  Vector<Scalar> returns;
  Vector<Scalar> old_values;
  Eigen::Index size() const { return observations.cols(); }
};

struct LossStats {
  double loss = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  double mean_ratio = 0.0;
};

// Clipped-surrogate PPO objective
//   L = mean(max(-A r, -A clip(r, 1-e, 1+e))) - c_ent * H + c_v * L_v
// with L_v = 0.5 mean(max((v - R)^2, (v_clip - R)^2)). When `grad` is
// non-null it receives dL/dparameters (overwritten).
template <typename Scalar>
LossStats PpoLoss(const PolicyNet<Scalar>& net, const PpoBatch<Scalar>& batch,
                  const PpoLossConfig& cfg, Vector<Scalar>* grad) {
  using Mat = Matrix<Scalar>;
  const Eigen::Index size = batch.size();
  typename PolicyNet<Scalar>::Cache cache;
  const auto out = net.Forward(batch.observations, grad ? &cache : nullptr);
  const Mat logp = MaskedLogSoftmax<Scalar>(out.logits, batch.masks);

  Vector<Scalar> adv = batch.advantages;
  if (cfg.normalize_advantages && size > 1) {
    const Scalar mean = adv.mean();
    const Scalar var = (adv.array() - mean).square().sum() / static_cast<Scalar>(size - 1);
    adv = ((adv.array() - mean) / (std::sqrt(var) + Scalar(1e-8))).matrix();
  }

  const Scalar clip = static_cast<Scalar>(cfg.clip);
  const Scalar inv = Scalar(1) / static_cast<Scalar>(size);
  Mat dlogits = Mat::Zero(out.logits.rows(), size);
  RowVector<Scalar> dvalues = RowVector<Scalar>::Zero(size);
  LossStats stats;
  for (Eigen::Index b = 0; b < size; ++b) {
    const int a = batch.actions[b];
    const Scalar log_ratio = logp(a, b) - batch.old_log_probs[b];
    const Scalar ratio = std::exp(log_ratio);
    const Scalar unclipped = -adv[b] * ratio;
    const Scalar clipped = -adv[b] * std::clamp(ratio, Scalar(1) - clip, Scalar(1) + clip);
    stats.policy_loss += static_cast<double>(std::max(unclipped, clipped));
    stats.approx_kl += static_cast<double>((ratio - Scalar(1)) - log_ratio);
    stats.clip_fraction += std::abs(ratio - Scalar(1)) > clip ? 1.0 : 0.0;
    stats.mean_ratio += static_cast<double>(ratio);

    Scalar entropy = 0;
    for (Eigen::Index j = 0; j < logp.rows(); ++j) {
      if (batch.masks(j, b)) entropy -= std::exp(logp(j, b)) * logp(j, b);
    }
    stats.entropy += static_cast<double>(entropy);

    const Scalar v = out.values(b);
    const Scalar v_old = batch.old_values[b];
    const Scalar target = batch.returns[b];
    const Scalar err = v - target;
    Scalar dv = err;
    Scalar sq = err * err;
    if (cfg.clip_value_loss) {
      const Scalar v_clip = v_old + std::clamp(v - v_old, -clip, clip);
      const Scalar err_clip = v_clip - target;
      if (err_clip * err_clip > sq) {
        sq = err_clip * err_clip;
        dv = std::abs(v - v_old) < clip ? err_clip : Scalar(0);
      }
    }
    stats.value_loss += 0.5 * static_cast<double>(sq);

    if (grad == nullptr) continue;
    const Scalar dlogp = unclipped >= clipped ? -adv[b] * ratio : Scalar(0);
    const Scalar ent_coef = static_cast<Scalar>(cfg.entropy_coef);
    for (Eigen::Index j = 0; j < logp.rows(); ++j) {
      if (!batch.masks(j, b)) continue;
      const Scalar p = std::exp(logp(j, b));
      Scalar d = -dlogp * p + ent_coef * p * (logp(j, b) + entropy);
      if (j == a) d += dlogp;
      dlogits(j, b) = d * inv;
    }
    dvalues(b) = static_cast<Scalar>(cfg.value_coef) * dv * inv;
  }
  const double n = static_cast<double>(size);
  stats.policy_loss /= n;
  stats.value_loss /= n;
  stats.entropy /= n;
  stats.approx_kl /= n;
  stats.clip_fraction /= n;
  stats.mean_ratio /= n;
  stats.loss = stats.policy_loss - cfg.entropy_coef * stats.entropy + cfg.value_coef * stats.value_loss;
  if (!std::isfinite(stats.loss)) {
    throw std::runtime_error("non-finite PPO loss: policy " + std::to_string(stats.policy_loss) +
                             ", value " + std::to_string(stats.value_loss) + ", entropy " +
                             std::to_string(stats.entropy));
  }
  if (grad != nullptr) {
    *grad = Vector<Scalar>::Zero(net.parameter_count());
    net.Backward(cache, dlogits, dvalues, *grad);
  }
  return stats;
}

// Scales `grad` in place so its L2 norm is at most max_norm; returns the
// norm before clipping.
template <typename Scalar>
Scalar ClipGradNorm(Vector<Scalar>& grad, Scalar max_norm) {
  const Scalar norm = grad.norm();
  const Scalar scale = max_norm / (norm + Scalar(1e-6));
  if (scale < Scalar(1)) grad *= scale;
  return norm;
}

template <typename Scalar>
class Adam {
 public:
  explicit Adam(Eigen::Index size, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-5)
      : m_(Vector<Scalar>::Zero(size)),
        v_(Vector<Scalar>::Zero(size)),
        beta1_(beta1),
        beta2_(beta2),
        eps_(eps) {}

  void Step(Vector<Scalar>& params, const Vector<Scalar>& grad, double lr) {
    ++t_;
    const Scalar b1 = static_cast<Scalar>(beta1_);
    const Scalar b2 = static_cast<Scalar>(beta2_);
    m_ = b1 * m_ + (Scalar(1) - b1) * grad;
    v_ = b2 * v_ + (Scalar(1) - b2) * grad.cwiseAbs2();
    const double c1 = 1.0 - std::pow(beta1_, t_);
    const double c2 = 1.0 - std::pow(beta2_, t_);
    const Scalar step = static_cast<Scalar>(lr / c1);
    const Scalar denom_scale = static_cast<Scalar>(1.0 / std::sqrt(c2));
    params.array() -= step * m_.array() /
                      (v_.array().sqrt() * denom_scale + static_cast<Scalar>(eps_));
  }

  long steps() const { return t_; }

 private:
  Vector<Scalar> m_;
  Vector<Scalar> v_;
  double beta1_;
  double beta2_;
  double eps_;
  long t_ = 0;
};

}  // namespace tabletop::nn

#endif  // TABLETOP_NN_PPO_H_
