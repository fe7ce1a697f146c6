#include "graphpse/mpnn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphpse/errors.hpp"
#include "graphpse/numeric.hpp"

namespace graphpse {
namespace {

Eigen::VectorXd relu(const Eigen::VectorXd& x) { return x.cwiseMax(0.0); }

void require_width(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::kWidthMismatch, std::string(what) + ": width " + std::to_string(got) +
                                               ", expected " + std::to_string(want));
  }
}

// Coordinate-wise sum of message rows, each coordinate summed in sorted order.
Eigen::VectorXd sum_messages(const Eigen::MatrixXd& messages, Eigen::Index width) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(width);
  std::vector<double> column(messages.rows());
  for (Eigen::Index c = 0; c < width; ++c) {
    for (Eigen::Index r = 0; r < messages.rows(); ++r) column[r] = messages(r, c);
    out(c) = order_independent_sum(std::span<double>(column));
  }
  return out;
}

void check_gated(const GatedGcnLayerWeights& w) {
  const auto in = w.u.cols();
  const auto out = w.u.rows();
  if (w.v.cols() != in || w.a.cols() != in || w.b.cols() != in || w.v.rows() != out ||
      w.a.rows() != out || w.b.rows() != out) {
    throw Error(ErrorCode::kWidthMismatch, "GatedGCN matrices U, V, A, B must share shape");
  }
}

Eigen::MatrixXd with_constant_channel(const Eigen::MatrixXd& h) {
  Eigen::MatrixXd x(h.rows(), h.cols() + 1);
  x.col(0).setOnes();
  x.rightCols(h.cols()) = h;
  return x;
}

Eigen::MatrixXd uniform_matrix(Eigen::Index rows, Eigen::Index cols, double bound, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-bound, bound);
  return m;
}

}  // namespace

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

Eigen::MatrixXd gin_layer(const Eigen::MatrixXd& h, const Graph& g, const GinLayerWeights& w) {
  require_width(h.rows(), g.num_nodes(), "GIN input rows");
  require_width(h.cols(), w.input_width(), "GIN input");
  require_width(w.w2.cols(), w.hidden_width(), "GIN second MLP layer");
  Eigen::MatrixXd out(g.num_nodes(), w.output_width());
  for (int u = 0; u < g.num_nodes(); ++u) {
    const auto nb = g.neighbors(u);
    Eigen::MatrixXd messages(nb.size(), h.cols());
    for (std::size_t k = 0; k < nb.size(); ++k) messages.row(k) = h.row(nb[k]);
    const Eigen::VectorXd self = (1.0 + w.epsilon) * h.row(u).transpose();
    const Eigen::VectorXd agg = self + sum_messages(messages, h.cols());
    const Eigen::VectorXd hidden = relu(w.w1 * agg);
    out.row(u) = relu(w.w2 * hidden).transpose();
  }
  return out;
}

Eigen::MatrixXd gatedgcn_layer(const Eigen::MatrixXd& h, const Graph& g, const GatedGcnLayerWeights& w) {
  check_gated(w);
  require_width(h.rows(), g.num_nodes(), "GatedGCN input rows");
  require_width(h.cols(), w.input_width(), "GatedGCN input");
  const int n = g.num_nodes();
  const Eigen::Index width = w.output_width();
  Eigen::MatrixXd uh(n, width), vh(n, width), ah(n, width), bh(n, width);
  for (int v = 0; v < n; ++v) {
    const Eigen::VectorXd x = h.row(v).transpose();
    uh.row(v) = (w.u * x).transpose();
    vh.row(v) = (w.v * x).transpose();
    ah.row(v) = (w.a * x).transpose();
    bh.row(v) = (w.b * x).transpose();
  }
  Eigen::MatrixXd out(n, width);
  for (int v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    Eigen::MatrixXd messages(nb.size(), width);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const int u = nb[k];
      const Eigen::ArrayXd gate = (ah.row(v) + bh.row(u)).array().unaryExpr(&sigmoid);
      messages.row(k) = gate.transpose() * vh.row(u).array();
    }
    const Eigen::VectorXd pre = uh.row(v).transpose() + sum_messages(messages, width);
    out.row(v) = relu(pre).transpose();
  }
  return out;
}

std::vector<Eigen::MatrixXd> gin_forward(const Eigen::MatrixXd& h0, const Graph& g,
                                         std::span<const GinLayerWeights> stack) {
  std::vector<Eigen::MatrixXd> states{h0};
  for (const auto& layer : stack) states.push_back(gin_layer(states.back(), g, layer));
  return states;
}

Eigen::MatrixXd gatedgcn_forward(const Eigen::MatrixXd& h0, const Graph& g,
                                 std::span<const GatedGcnLayerWeights> stack) {
  Eigen::MatrixXd h = h0;
  for (const auto& layer : stack) h = gatedgcn_layer(h, g, layer);
  return h;
}

Eigen::MatrixXd gpse_encoder_forward(const Graph& g, const Eigen::MatrixXd& x, const GpseWeights& w) {
  const Graph aug = g.virtual_node() ? g : add_virtual_node(g);
  require_width(x.rows(), aug.num_nodes(), "encoder input rows");
  require_width(x.cols(), w.input_dim(), "encoder input");
  Eigen::MatrixXd h(aug.num_nodes(), w.inner_dim());
  for (int v = 0; v < aug.num_nodes(); ++v) {
    h.row(v) = relu(w.w_inp * x.row(v).transpose()).transpose();
  }
  for (const auto& layer : w.layers) {
    Eigen::MatrixXd next = gatedgcn_layer(h, aug, layer);
    if (w.residual) {
      require_width(next.cols(), h.cols(), "residual connection");
      next += h;
    }
    h = std::move(next);
  }
  const int vn = *aug.virtual_node();
  Eigen::MatrixXd out(aug.num_nodes() - 1, h.cols());
  for (int v = 0, r = 0; v < aug.num_nodes(); ++v) {
    if (v != vn) out.row(r++) = h.row(v);
  }
  return out;
}

std::vector<Eigen::MatrixXd> gpse_decode(const Eigen::MatrixXd& h, std::span<const GpseHead> heads) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& head : heads) {
    require_width(h.cols(), head.w1.cols(), "head input");
    require_width(head.w2.cols(), head.w1.rows(), "head output layer");
    require_width(head.w2.rows(), 1, "head output");
    if (head.level == PseLevel::kGraph) {
      const Eigen::VectorXd pooled = sum_messages(h, h.cols());
      out.push_back(head.w2 * relu(head.w1 * pooled));
    } else {
      Eigen::MatrixXd y(h.rows(), 1);
      for (Eigen::Index i = 0; i < h.rows(); ++i) {
        y(i, 0) = (head.w2 * relu(head.w1 * h.row(i).transpose()))(0);
      }
      out.push_back(std::move(y));
    }
  }
  return out;
}

Eigen::MatrixXd gpse_inputs(const Graph& g, InputMode mode, int dim, std::uint64_t seed) {
  const Graph aug = g.virtual_node() ? g : add_virtual_node(g);
  return mode == InputMode::kConstant ? constant_features(aug, dim).values : rnf(aug, dim, seed).values;
}

GpseWeights random_gpse_weights(int input_dim, int inner_dim, int num_layers, int num_node_heads,
                                int num_graph_heads, Rng& rng) {
  GpseWeights w;
  w.w_inp = uniform_matrix(inner_dim, input_dim, 1.0 / std::sqrt(double(input_dim)), rng);
  const double bound = 1.0 / std::sqrt(double(inner_dim));
  for (int l = 0; l < num_layers; ++l) {
    w.layers.push_back({uniform_matrix(inner_dim, inner_dim, bound, rng),
                        uniform_matrix(inner_dim, inner_dim, bound, rng),
                        uniform_matrix(inner_dim, inner_dim, bound, rng),
                        uniform_matrix(inner_dim, inner_dim, bound, rng)});
  }
  for (int k = 0; k < num_node_heads + num_graph_heads; ++k) {
    w.heads.push_back({uniform_matrix(inner_dim, inner_dim, bound, rng),
                       uniform_matrix(1, inner_dim, bound, rng),
                       k < num_node_heads ? PseLevel::kNode : PseLevel::kGraph});
  }
  return w;
}

std::vector<GinLayerWeights> random_gin_stack(std::span<const int> widths, int hidden, double bound,
                                              Rng& rng) {
  std::vector<GinLayerWeights> stack;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    GinLayerWeights layer;
    layer.epsilon = rng.uniform(-bound, bound);
    layer.w1 = uniform_matrix(hidden, widths[l], bound, rng);
    layer.w2 = uniform_matrix(widths[l + 1], hidden, bound, rng);
    stack.push_back(std::move(layer));
  }
  return stack;
}

std::vector<GatedGcnLayerWeights> thm1_construct(std::span<const GinLayerWeights> gin_stack, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kAlphaOutOfRange, "alpha must lie in (0, 1)");
  }
  std::vector<GatedGcnLayerWeights> out;
  for (std::size_t l = 0; l < gin_stack.size(); ++l) {
    const auto& gin = gin_stack[l];
    require_width(gin.w2.cols(), gin.hidden_width(), "GIN second MLP layer");
    if (l > 0) require_width(gin.input_width(), gin_stack[l - 1].output_width(), "GIN stack");
    const Eigen::Index d_in = gin.input_width();
    const Eigen::Index d_hid = gin.hidden_width();
    const Eigen::Index d_out = gin.output_width();
    const double beta = (1.0 + gin.epsilon) * (1.0 - alpha);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d_in, d_in);

    GatedGcnLayerWeights aggregate;
    aggregate.u = Eigen::MatrixXd::Zero(1 + 2 * d_in, 1 + d_in);
    aggregate.u(0, 0) = 1.0;
    aggregate.u.block(1, 1, d_in, d_in) = beta * eye;
    aggregate.u.block(1 + d_in, 1, d_in, d_in) = -beta * eye;
    aggregate.v = Eigen::MatrixXd::Zero(1 + 2 * d_in, 1 + d_in);
    aggregate.v.block(1, 1, d_in, d_in) = eye;
    aggregate.v.block(1 + d_in, 1, d_in, d_in) = -eye;
    aggregate.a = Eigen::MatrixXd::Zero(1 + 2 * d_in, 1 + d_in);
    aggregate.a.col(0).setConstant(logit(1.0 - alpha));
    aggregate.b = Eigen::MatrixXd::Zero(1 + 2 * d_in, 1 + d_in);

    GatedGcnLayerWeights first;
    first.u = Eigen::MatrixXd::Zero(1 + d_hid, 1 + 2 * d_in);
    first.u(0, 0) = 1.0;
    first.u.block(1, 1, d_hid, d_in) = gin.w1;
    first.u.block(1, 1 + d_in, d_hid, d_in) = -gin.w1;
    first.v = first.a = first.b = Eigen::MatrixXd::Zero(1 + d_hid, 1 + 2 * d_in);

    GatedGcnLayerWeights second;
    second.u = Eigen::MatrixXd::Zero(1 + d_out, 1 + d_hid);
    second.u(0, 0) = 1.0;
    second.u.block(1, 1, d_out, d_hid) = gin.w2;
    second.v = second.a = second.b = Eigen::MatrixXd::Zero(1 + d_out, 1 + d_hid);

    out.push_back(std::move(aggregate));
    out.push_back(std::move(first));
    out.push_back(std::move(second));
  }
  return out;
}

Thm1Report thm1_verify(const Graph& g, const Eigen::MatrixXd& h0,
                       std::span<const GinLayerWeights> gin_stack, double alpha) {
  const auto gated = thm1_construct(gin_stack, alpha);
  const auto states = gin_forward(h0, g, gin_stack);
  const std::size_t depth = gin_stack.size();

  Thm1Report report;
  report.constant_channel_exact = true;
  auto run_block = [&](Eigen::MatrixXd x, std::size_t l) {
    for (std::size_t k = 0; k < 3; ++k) {
      x = gatedgcn_layer(x, g, gated[3 * l + k]);
      if (!(x.col(0).array() == 1.0).all()) report.constant_channel_exact = false;
    }
    return x;
  };
  auto max_row_distance = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) worst = std::max(worst, (a.row(i) - b.row(i)).norm());
    return worst;
  };

  Eigen::MatrixXd chained = with_constant_channel(h0);
  for (std::size_t l = 0; l < depth; ++l) {
    const Eigen::MatrixXd& target = states[l + 1];
    for (Eigen::Index i = 0; i < target.rows(); ++i) {
      report.max_norm = std::max(report.max_norm, target.row(i).norm());
    }
    const Eigen::MatrixXd local = run_block(with_constant_channel(states[l]), l);
    report.max_error = std::max(report.max_error, max_row_distance(target, local.rightCols(target.cols())));
    chained = run_block(std::move(chained), l);
    report.end_to_end_error =
        std::max(report.end_to_end_error, max_row_distance(target, chained.rightCols(target.cols())));
  }
  report.bound = alpha * report.max_norm;
  report.pass = report.max_error <= report.bound + kThm1Slack;
  report.end_to_end_bound = (1.0 - std::pow(1.0 - alpha, double(depth))) * report.max_norm;
  report.end_to_end_pass = report.end_to_end_error <= report.end_to_end_bound + kThm1Slack;
  return report;
}

}  // namespace graphpse
