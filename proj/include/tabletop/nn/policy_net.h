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

#ifndef TABLETOP_NN_POLICY_NET_H_
#define TABLETOP_NN_POLICY_NET_H_

#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tabletop/errors.h"
#include "tabletop/rng.h"

namespace tabletop::nn {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
// Per-sample legality, one column per sample.
using MaskMatrix = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Architecture: [conv 3x3 stride 1 pad 1 + ReLU] -> dense(hidden) + tanh ->
// dense(hidden) + tanh -> {policy logits, value}. The convolution is present
// only for spatial (channels x height x width) observations.
struct NetShape {
  std::vector<int> observation_shape;
  int actions = 0;
  int hidden = 64;
  int conv_channels = 0;

  bool has_conv() const { return conv_channels > 0; }
  int input_size() const {
    return std::accumulate(observation_shape.begin(), observation_shape.end(), 1,
                           std::multiplies<>());
  }
  int in_channels() const { return observation_shape[0]; }
  int height() const { return observation_shape[1]; }
  int width() const { return observation_shape[2]; }
  int positions() const { return height() * width(); }
  int trunk_input() const { return has_conv() ? conv_channels * positions() : input_size(); }
  bool operator==(const NetShape&) const = default;
};

// Spatial observations get a 32-channel stem, vectors none.
NetShape DefaultNetShape(const std::vector<int>& observation_shape, int actions, int hidden = 64,
                         int conv_channels = 32);

struct TensorInfo {
  std::string name;
  int rows;
  int cols;
  Eigen::Index offset;
};

// Flat parameter layout: [conv_w, conv_b,] w1, b1, w2, b2, policy_w,
// policy_b, value_w, value_b. Weight matrices are (out x in), column-major.
std::vector<TensorInfo> ParameterLayout(const NetShape& shape);

enum Tensor { kConvW = 0, kConvB, kW1, kB1, kW2, kB2, kPolicyW, kPolicyB, kValueW, kValueB };

template <typename Scalar>
class PolicyNet {
 public:
  using Mat = Matrix<Scalar>;
  using Vec = Vector<Scalar>;
  using Row = RowVector<Scalar>;

  struct Output {
    Mat logits;  // actions x batch, unmasked
    Row values;  // 1 x batch
  };

  // Activations kept by Forward for Backward.
  struct Cache {
    Mat input;
    Mat columns;   // im2col of the whole batch, (C*9) x (positions*batch)
    Mat conv_pre;  // K x (positions*batch)
    Mat trunk_in;  // trunk_input x batch
    Mat h1;
    Mat h2;
  };

  explicit PolicyNet(NetShape shape)
      : shape_(std::move(shape)), layout_(ParameterLayout(shape_)) {
    const TensorInfo& last = layout_.back();
    params_ = Vec::Zero(last.offset + static_cast<Eigen::Index>(last.rows) * last.cols);
  }

  const NetShape& shape() const { return shape_; }
  const std::vector<TensorInfo>& layout() const { return layout_; }
  Eigen::Index parameter_count() const { return params_.size(); }
  Vec& parameters() { return params_; }
  const Vec& parameters() const { return params_; }

  Eigen::Map<Mat> tensor(Tensor t) { return TensorOf(params_, t); }
  Eigen::Map<const Mat> tensor(Tensor t) const { return TensorOf(params_, t); }

  // Orthogonal weights (gain sqrt 2 for hidden layers, 1 for the value
  // head), zero biases, zero policy head so the initial policy is uniform
  // over legal actions.
  void Initialize(Rng& rng) {
    params_.setZero();
    const Scalar hidden_gain = static_cast<Scalar>(std::sqrt(2.0));
    if (shape_.has_conv()) Orthogonal(tensor(kConvW), hidden_gain, rng);
    Orthogonal(tensor(kW1), hidden_gain, rng);
    Orthogonal(tensor(kW2), hidden_gain, rng);
    Orthogonal(tensor(kValueW), Scalar(1), rng);
  }

  // obs: input_size x batch. `cache` may be null for inference.
  Output Forward(const Eigen::Ref<const Mat>& obs, Cache* cache = nullptr) const {
    if (obs.rows() != shape_.input_size()) {
      throw ShapeError("observation has " + std::to_string(obs.rows()) + " rows, net expects " +
                       std::to_string(shape_.input_size()));
    }
    const Eigen::Index batch = obs.cols();
    Mat trunk_in;
    Mat columns;
    Mat conv_pre;
    if (shape_.has_conv()) {
      columns = Im2Col(obs);
      conv_pre = tensor(kConvW) * columns;
      conv_pre.colwise() += Vec(tensor(kConvB));
      trunk_in = FlattenConv(conv_pre.cwiseMax(Scalar(0)), batch);
    }
    Mat h1 = shape_.has_conv() ? Mat(tensor(kW1) * trunk_in) : Mat(tensor(kW1) * obs);
    h1 = (h1.colwise() + Vec(tensor(kB1))).array().tanh().matrix();
    Mat h2 = ((tensor(kW2) * h1).colwise() + Vec(tensor(kB2))).array().tanh().matrix();
    Output out;
    out.logits = (tensor(kPolicyW) * h2).colwise() + Vec(tensor(kPolicyB));
    out.values = ((tensor(kValueW) * h2).array() + tensor(kValueB)(0, 0)).matrix();
    if (cache != nullptr) {
      cache->input = obs;
      cache->columns = std::move(columns);
      cache->conv_pre = std::move(conv_pre);
      cache->trunk_in = std::move(trunk_in);
      cache->h1 = std::move(h1);
      cache->h2 = std::move(h2);
    }
    return out;
  }

  // Accumulates d(loss)/d(parameters) into `grad` given the loss gradients
  // with respect to the logits (actions x batch) and values (1 x batch).
  void Backward(const Cache& cache, const Mat& dlogits, const Row& dvalues, Vec& grad) const {
    const Eigen::Index batch = cache.h2.cols();
    TensorOf(grad, kPolicyW).noalias() += dlogits * cache.h2.transpose();
    TensorOf(grad, kPolicyB) += dlogits.rowwise().sum();
    TensorOf(grad, kValueW).noalias() += dvalues * cache.h2.transpose();
    TensorOf(grad, kValueB)(0, 0) += dvalues.sum();

    Mat dh2 = tensor(kPolicyW).transpose() * dlogits;
    dh2.noalias() += tensor(kValueW).transpose() * dvalues;
    const Mat dz2 = dh2.cwiseProduct((Scalar(1) - cache.h2.array().square()).matrix());
    TensorOf(grad, kW2).noalias() += dz2 * cache.h1.transpose();
    TensorOf(grad, kB2) += dz2.rowwise().sum();

    const Mat dh1 = tensor(kW2).transpose() * dz2;
    const Mat dz1 = dh1.cwiseProduct((Scalar(1) - cache.h1.array().square()).matrix());
    const Mat& x = shape_.has_conv() ? cache.trunk_in : cache.input;
    TensorOf(grad, kW1).noalias() += dz1 * x.transpose();
    TensorOf(grad, kB1) += dz1.rowwise().sum();

    if (!shape_.has_conv()) return;
    const Mat dtrunk = tensor(kW1).transpose() * dz1;
    const Mat dconv = UnflattenConv(dtrunk, batch).cwiseProduct(
        (cache.conv_pre.array() > Scalar(0)).template cast<Scalar>().matrix());
    TensorOf(grad, kConvW).noalias() += dconv * cache.columns.transpose();
    TensorOf(grad, kConvB) += dconv.rowwise().sum();
  }

  template <typename Other>
  PolicyNet<Other> Cast() const {
    PolicyNet<Other> out(shape_);
    out.parameters() = params_.template cast<Other>();
    return out;
  }

 private:
  template <typename V>
  auto TensorOf(V& flat, Tensor t) const {
    const TensorInfo& info = layout_[Index(t)];
    using M = std::conditional_t<std::is_const_v<V>, const Mat, Mat>;
    return Eigen::Map<M>(flat.data() + info.offset, info.rows, info.cols);
  }

  int Index(Tensor t) const { return shape_.has_conv() ? t : t - 2; }

  static void Orthogonal(Eigen::Map<Mat> w, Scalar gain, Rng& rng) {
    const Eigen::Index rows = w.rows();
    const Eigen::Index cols = w.cols();
    const Eigen::Index big = std::max(rows, cols);
    const Eigen::Index small = std::min(rows, cols);
    Eigen::MatrixXd g(big, small);
    for (Eigen::Index j = 0; j < small; ++j) {
      for (Eigen::Index i = 0; i < big; ++i) g(i, j) = rng.Normal();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(big, small);
    // Sign fix so the distribution is uniform over orthogonal matrices.
    const Eigen::MatrixXd r = qr.matrixQR().topRows(small).template triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < small; ++j) {
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    }
    if (rows >= cols) {
      w = (q * static_cast<double>(gain)).template cast<Scalar>();
    } else {
      w = (q.transpose() * static_cast<double>(gain)).template cast<Scalar>();
    }
  }

  // (C*9) x (positions*batch); column = sample * positions + (row * W + col).
  Mat Im2Col(const Eigen::Ref<const Mat>& obs) const {
    const int c_in = shape_.in_channels();
    const int h = shape_.height();
    const int w = shape_.width();
    const int positions = h * w;
    const Eigen::Index batch = obs.cols();
    Mat cols = Mat::Zero(c_in * 9, positions * batch);
    for (Eigen::Index b = 0; b < batch; ++b) {
      for (int c = 0; c < c_in; ++c) {
        for (int kr = 0; kr < 3; ++kr) {
          for (int kc = 0; kc < 3; ++kc) {
            const int row = c * 9 + kr * 3 + kc;
            for (int r = 0; r < h; ++r) {
              const int sr = r + kr - 1;
              if (sr < 0 || sr >= h) continue;
              for (int col = 0; col < w; ++col) {
                const int sc = col + kc - 1;
                if (sc < 0 || sc >= w) continue;
                cols(row, b * positions + r * w + col) = obs(c * positions + sr * w + sc, b);
              }
            }
          }
        }
      }
    }
    return cols;
  }

  // K x (positions*batch) -> (K*positions) x batch, index k*positions + pos.
  Mat FlattenConv(const Mat& conv, Eigen::Index batch) const {
    const int k = shape_.conv_channels;
    const int positions = shape_.positions();
    Mat out(static_cast<Eigen::Index>(k) * positions, batch);
    for (Eigen::Index b = 0; b < batch; ++b) {
      for (int pos = 0; pos < positions; ++pos) {
        for (int ch = 0; ch < k; ++ch) out(ch * positions + pos, b) = conv(ch, b * positions + pos);
      }
    }
    return out;
  }

  Mat UnflattenConv(const Mat& flat, Eigen::Index batch) const {
    const int k = shape_.conv_channels;
    const int positions = shape_.positions();
    Mat out(k, positions * batch);
    for (Eigen::Index b = 0; b < batch; ++b) {
      for (int pos = 0; pos < positions; ++pos) {
        for (int ch = 0; ch < k; ++ch) out(ch, b * positions + pos) = flat(ch * positions + pos, b);
      }
    }
    return out;
  }

  NetShape shape_;
  std::vector<TensorInfo> layout_;
  Vec params_;
};

}  // namespace tabletop::nn

#endif  // TABLETOP_NN_POLICY_NET_H_
