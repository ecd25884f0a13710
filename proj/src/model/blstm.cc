// src/model/blstm.cc

// Copyright 2026  upitsep authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "upit/model/blstm.h"

#include <atomic>
#include <cmath>
#include <random>

#include "upit/error.h"
#include "upit/util/random.h"

namespace upit {
namespace {

uint64_t NextVersion() {
  static std::atomic<uint64_t> counter{0};
  return ++counter;
}

const char *DirectionName(int d) { return d == 0 ? "fw" : "bw"; }

std::string BlockName(int layer, int direction, const char *what) {
  return "lstm" + std::to_string(layer) + "." + DirectionName(direction) + "." + what;
}

Eigen::ArrayXd Sigmoid(const Eigen::ArrayXd &z) {
  return 1.0 / (1.0 + (-z).exp());
}

}  // namespace

void BlstmConfig::Validate() const {
  Require(num_layers >= 1 && cells_per_direction >= 1 && input_dim >= 1 &&
              output_sources >= 1 && output_dim_per_source >= 1,
          ErrorKind::kInvalidArgument, "BlstmConfig: sizes must be positive");
  Require(dropout_rate >= 0.0 && dropout_rate < 1.0, ErrorKind::kInvalidArgument,
          "BlstmConfig: dropout rate must be in [0, 1)");
}

int64_t BlstmConfig::ParameterCount() const {
  const int64_t h = cells_per_direction;
  int64_t total = 0;
  for (int l = 0; l < num_layers; ++l) {
    const int64_t d = l == 0 ? input_dim : 2 * h;
    total += 2 * 4 * h * (d + h + 1);
  }
  total += static_cast<int64_t>(output_dim()) * (2 * h + 1);
  return total;
}

Eigen::MatrixXd ApplyDropout(const Eigen::MatrixXd &x, double rate,
                             uint64_t seed, Eigen::MatrixXd *scale) {
  Eigen::MatrixXd s(x.rows(), x.cols());
  auto engine = MakeEngine(seed, {0xd50});
  std::bernoulli_distribution keep(1.0 - rate);
  const double kept_scale = 1.0 / (1.0 - rate);
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      s(i, j) = keep(engine) ? kept_scale : 0.0;
    }
  }
  Eigen::MatrixXd out = x.cwiseProduct(s);
  if (scale) *scale = std::move(s);
  return out;
}

struct BlstmNetwork::LayerParams {
  Eigen::Map<const Eigen::MatrixXd> w_input;
  Eigen::Map<const Eigen::MatrixXd> w_recurrent;
  Eigen::Map<const Eigen::MatrixXd> bias;
};

BlstmNetwork::BlstmNetwork(const BlstmConfig &config) : config_(config) {
  config_.Validate();
  const Eigen::Index h = config_.cells_per_direction;
  Eigen::Index offset = 0;
  auto add = [&](std::string name, Eigen::Index rows, Eigen::Index cols) {
    layout_.push_back({std::move(name), offset, rows, cols});
    offset += rows * cols;
  };
  for (int l = 0; l < config_.num_layers; ++l) {
    const Eigen::Index d = l == 0 ? config_.input_dim : 2 * h;
    for (int dir = 0; dir < 2; ++dir) {
      add(BlockName(l, dir, "w_input"), 4 * h, d);
      add(BlockName(l, dir, "w_recurrent"), 4 * h, h);
      add(BlockName(l, dir, "bias"), 4 * h, 1);
    }
  }
  add("output.weight", config_.output_dim(), 2 * h);
  add("output.bias", config_.output_dim(), 1);
  params_ = Eigen::VectorXd::Zero(offset);
  version_ = NextVersion();
}

const ParameterBlock &BlstmNetwork::block(std::string_view name) const {
  for (const auto &b : layout_) {
    if (b.name == name) return b;
  }
  Fail(ErrorKind::kInvalidArgument, "BlstmNetwork: no block " + std::string(name));
}

void BlstmNetwork::SetParameters(const Eigen::VectorXd &params) {
  Require(params.size() == params_.size(), ErrorKind::kDimensionMismatch,
          "BlstmNetwork::SetParameters: size mismatch");
  params_ = params;
  version_ = NextVersion();
}

void BlstmNetwork::Update(const Eigen::VectorXd &delta) {
  Require(delta.size() == params_.size(), ErrorKind::kDimensionMismatch,
          "BlstmNetwork::Update: size mismatch");
  params_ += delta;
  version_ = NextVersion();
}

Eigen::Map<const Eigen::MatrixXd> BlstmNetwork::View(const ParameterBlock &b) const {
  return {params_.data() + b.offset, b.rows, b.cols};
}

Eigen::Map<Eigen::MatrixXd> BlstmNetwork::MutableView(const ParameterBlock &b) {
  version_ = NextVersion();
  return {params_.data() + b.offset, b.rows, b.cols};
}

void BlstmNetwork::Initialize(uint64_t seed, double scale) {
  auto engine = MakeEngine(seed, {0x1417});
  std::uniform_real_distribution<double> uniform(-scale, scale);
  const Eigen::Index h = config_.cells_per_direction;
  for (const auto &b : layout_) {
    auto view = MutableView(b);
    const bool is_bias = b.cols == 1 && b.name.ends_with("bias");
    if (is_bias) {
      view.setZero();
      if (b.name.starts_with("lstm")) view.block(h, 0, h, 1).setOnes();
    } else {
      for (Eigen::Index i = 0; i < view.size(); ++i) view.data()[i] = uniform(engine);
    }
  }
}

BlstmNetwork::LayerParams BlstmNetwork::Layer(int layer, int direction) const {
  return {View(block(BlockName(layer, direction, "w_input"))),
          View(block(BlockName(layer, direction, "w_recurrent"))),
          View(block(BlockName(layer, direction, "bias")))};
}

namespace {

void RunDirection(const Eigen::Map<const Eigen::MatrixXd> &w_input,
                  const Eigen::Map<const Eigen::MatrixXd> &w_recurrent,
                  const Eigen::Map<const Eigen::MatrixXd> &bias,
                  const Eigen::MatrixXd &x, bool reverse, DirectionCache *c) {
  const Eigen::Index h = w_recurrent.cols();
  const Eigen::Index k = x.cols();
  Eigen::MatrixXd z = w_input * x;
  z.colwise() += bias.col(0);
  c->gates.resize(4 * h, k);
  c->cells.resize(h, k);
  c->hidden.resize(h, k);
  Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(h);
  Eigen::ArrayXd c_prev = Eigen::ArrayXd::Zero(h);
  for (Eigen::Index step = 0; step < k; ++step) {
    const Eigen::Index t = reverse ? k - 1 - step : step;
    Eigen::VectorXd zt = z.col(t);
    zt.noalias() += w_recurrent * h_prev;
    const Eigen::ArrayXd i = Sigmoid(zt.segment(0, h).array());
    const Eigen::ArrayXd f = Sigmoid(zt.segment(h, h).array());
    const Eigen::ArrayXd g = zt.segment(2 * h, h).array().tanh();
    const Eigen::ArrayXd o = Sigmoid(zt.segment(3 * h, h).array());
    const Eigen::ArrayXd cell = f * c_prev + i * g;
    const Eigen::ArrayXd hid = o * cell.tanh();
    c->gates.col(t) << i.matrix(), f.matrix(), g.matrix(), o.matrix();
    c->cells.col(t) = cell.matrix();
    c->hidden.col(t) = hid.matrix();
    c_prev = cell;
    h_prev = hid.matrix();
  }
}

struct DirectionGrads {
  Eigen::MatrixXd w_input, w_recurrent, bias, input;
};

// Backpropagation through time for one direction. d_hidden is the gradient
// of the loss with respect to this direction's hidden outputs.
DirectionGrads BackwardDirection(
    const Eigen::Map<const Eigen::MatrixXd> &w_input,
    const Eigen::Map<const Eigen::MatrixXd> &w_recurrent,
    const Eigen::MatrixXd &x, const DirectionCache &c,
    const Eigen::MatrixXd &d_hidden, bool reverse) {
  const Eigen::Index h = w_recurrent.cols();
  const Eigen::Index k = x.cols();
  Eigen::MatrixXd dz(4 * h, k);
  Eigen::MatrixXd h_prev_all = Eigen::MatrixXd::Zero(h, k);
  Eigen::VectorXd dh_rec = Eigen::VectorXd::Zero(h);
  Eigen::ArrayXd dc_rec = Eigen::ArrayXd::Zero(h);
  for (Eigen::Index step = k - 1; step >= 0; --step) {
    const Eigen::Index t = reverse ? k - 1 - step : step;
    const bool first = step == 0;
    const Eigen::Index prev = reverse ? t + 1 : t - 1;
    const Eigen::ArrayXd i = c.gates.col(t).segment(0, h).array();
    const Eigen::ArrayXd f = c.gates.col(t).segment(h, h).array();
    const Eigen::ArrayXd g = c.gates.col(t).segment(2 * h, h).array();
    const Eigen::ArrayXd o = c.gates.col(t).segment(3 * h, h).array();
    const Eigen::ArrayXd tc = c.cells.col(t).array().tanh();
    const Eigen::ArrayXd c_prev =
        first ? Eigen::ArrayXd::Zero(h) : Eigen::ArrayXd(c.cells.col(prev).array());
    if (!first) h_prev_all.col(t) = c.hidden.col(prev);

    const Eigen::ArrayXd dh = d_hidden.col(t).array() + dh_rec.array();
    const Eigen::ArrayXd dc = dh * o * (1.0 - tc * tc) + dc_rec;
    dz.col(t).segment(0, h) = (dc * g * i * (1.0 - i)).matrix();
    dz.col(t).segment(h, h) = (dc * c_prev * f * (1.0 - f)).matrix();
    dz.col(t).segment(2 * h, h) = (dc * i * (1.0 - g * g)).matrix();
    dz.col(t).segment(3 * h, h) = (dh * tc * o * (1.0 - o)).matrix();
    dc_rec = dc * f;
    dh_rec.noalias() = w_recurrent.transpose() * dz.col(t);
  }
  DirectionGrads out;
  out.w_input.noalias() = dz * x.transpose();
  out.w_recurrent.noalias() = dz * h_prev_all.transpose();
  out.bias = dz.rowwise().sum();
  out.input.noalias() = w_input.transpose() * dz;
  return out;
}

}  // namespace

ForwardResult BlstmNetwork::Forward(const Grid &features, bool train_mode,
                                    uint64_t seed) const {
  Require(features.cols() == config_.input_dim && features.rows() >= 1,
          ErrorKind::kDimensionMismatch,
          "BlstmNetwork::Forward: feature dimension does not match config");
  const Eigen::Index h = config_.cells_per_direction;
  const Eigen::Index k = features.rows();
  ForwardResult result;
  ForwardCache &cache = result.cache;
  cache.parameter_version = version_;
  cache.owner = this;
  cache.layers.resize(config_.num_layers);

  Eigen::MatrixXd x = features.matrix().transpose();
  for (int l = 0; l < config_.num_layers; ++l) {
    LayerCache &lc = cache.layers[l];
    if (l > 0 && train_mode && config_.dropout_rate > 0.0) {
      lc.input = ApplyDropout(x, config_.dropout_rate,
                              DeriveSeed(seed, {static_cast<uint64_t>(l)}),
                              &lc.dropout);
    } else {
      lc.input = std::move(x);
    }
    const LayerParams fw = Layer(l, 0);
    const LayerParams bw = Layer(l, 1);
    RunDirection(fw.w_input, fw.w_recurrent, fw.bias, lc.input, false, &lc.forward);
    RunDirection(bw.w_input, bw.w_recurrent, bw.bias, lc.input, true, &lc.backward);
    x.resize(2 * h, k);
    x << lc.forward.hidden, lc.backward.hidden;
  }
  cache.top = std::move(x);
  const auto w_out = View(block("output.weight"));
  const auto b_out = View(block("output.bias"));
  cache.output_pre.noalias() = w_out * cache.top;
  cache.output_pre.colwise() += b_out.col(0);

  const Eigen::Index per_source = config_.output_dim_per_source;
  for (int s = 0; s < config_.output_sources; ++s) {
    result.masks.push_back(
        cache.output_pre.middleRows(s * per_source, per_source)
            .transpose()
            .array()
            .max(0.0));
  }
  return result;
}

std::vector<Grid> BlstmNetwork::Infer(const Grid &features) const {
  return Forward(features, false, 0).masks;
}

Eigen::VectorXd BlstmNetwork::Backward(const ForwardCache &cache,
                                       std::span<const Grid> mask_gradients) const {
  Require(cache.owner == this && cache.parameter_version == version_,
          ErrorKind::kInvalidArgument,
          "BlstmNetwork::Backward: stale or foreign forward cache");
  Require(static_cast<int>(mask_gradients.size()) == config_.output_sources,
          ErrorKind::kDimensionMismatch,
          "BlstmNetwork::Backward: one gradient per output source required");
  const Eigen::Index h = config_.cells_per_direction;
  const Eigen::Index k = cache.top.cols();
  const Eigen::Index per_source = config_.output_dim_per_source;

  Eigen::MatrixXd d_out(config_.output_dim(), k);
  for (int s = 0; s < config_.output_sources; ++s) {
    const Grid &g = mask_gradients[s];
    Require(g.rows() == k && g.cols() == per_source, ErrorKind::kDimensionMismatch,
            "BlstmNetwork::Backward: mask gradient shape mismatch");
    d_out.middleRows(s * per_source, per_source) = g.matrix().transpose();
  }
  d_out = (cache.output_pre.array() > 0.0).select(d_out, 0.0);

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(params_.size());
  auto write = [&](const ParameterBlock &b, const Eigen::MatrixXd &m) {
    Eigen::Map<Eigen::MatrixXd>(grad.data() + b.offset, b.rows, b.cols) = m;
  };
  const auto w_out = View(block("output.weight"));
  write(block("output.weight"), d_out * cache.top.transpose());
  write(block("output.bias"), d_out.rowwise().sum());

  Eigen::MatrixXd d_top = w_out.transpose() * d_out;  // 2H x K
  for (int l = config_.num_layers - 1; l >= 0; --l) {
    const LayerCache &lc = cache.layers[l];
    Eigen::MatrixXd d_input;
    for (int dir = 0; dir < 2; ++dir) {
      const LayerParams p = Layer(l, dir);
      const DirectionCache &dc = dir == 0 ? lc.forward : lc.backward;
      DirectionGrads g = BackwardDirection(p.w_input, p.w_recurrent, lc.input, dc,
                                           d_top.middleRows(dir * h, h), dir == 1);
      write(block(BlockName(l, dir, "w_input")), g.w_input);
      write(block(BlockName(l, dir, "w_recurrent")), g.w_recurrent);
      write(block(BlockName(l, dir, "bias")), g.bias);
      if (dir == 0) {
        d_input = std::move(g.input);
      } else {
        d_input += g.input;
      }
    }
    if (l > 0) {
      if (lc.dropout.size() > 0) d_input = d_input.cwiseProduct(lc.dropout);
      d_top = std::move(d_input);
    }
  }
  return grad;
}

}  // namespace upit
