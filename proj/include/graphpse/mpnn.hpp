#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graphpse/graph.hpp"
#include "graphpse/pse.hpp"
#include "graphpse/rng.hpp"

namespace graphpse {

// Conventions: node features are matrices with one row per node. Weight
// matrices act on column vectors (out x in), so a layer computes W * h_v.

/// GIN: h'_u = MLP((1 + eps) h_u + sum_{v in N(u)} h_v),
/// MLP(x) = ReLU(w2 ReLU(w1 x)).
struct GinLayerWeights {
  double epsilon = 0.0;
  Eigen::MatrixXd w1;
  Eigen::MatrixXd w2;

  Eigen::Index input_width() const { return w1.cols(); }
  Eigen::Index hidden_width() const { return w1.rows(); }
  Eigen::Index output_width() const { return w2.rows(); }
};

/// GatedGCN: h'_v = ReLU(U h_v + sum_{u in N(v)} sigmoid(A h_v + B h_u) * (V h_u)).
/// The receiving node enters the gate through A, the sender through B.
struct GatedGcnLayerWeights {
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;

  Eigen::Index input_width() const { return u.cols(); }
  Eigen::Index output_width() const { return u.rows(); }
};

/// Two-layer decoder head: y = w2 ReLU(w1 h). Graph-level heads read the sum
/// of node embeddings.
struct GpseHead {
  Eigen::MatrixXd w1;  // d x d
  Eigen::MatrixXd w2;  // 1 x d
  PseLevel level = PseLevel::kNode;
};

struct GpseWeights {
  Eigen::MatrixXd w_inp;  // d x input_dim
  std::vector<GatedGcnLayerWeights> layers;
  std::vector<GpseHead> heads;
  /// Adds h^{(l)} to each layer output when set.
  bool residual = false;

  Eigen::Index input_dim() const { return w_inp.cols(); }
  Eigen::Index inner_dim() const { return w_inp.rows(); }
};

inline constexpr int kDefaultInnerDim = 32;

double sigmoid(double x);
double logit(double p);

Eigen::MatrixXd gin_layer(const Eigen::MatrixXd& h, const Graph& g, const GinLayerWeights& w);
Eigen::MatrixXd gatedgcn_layer(const Eigen::MatrixXd& h, const Graph& g, const GatedGcnLayerWeights& w);

/// All hidden states of a GIN stack: [h0, h1, ..., hL].
std::vector<Eigen::MatrixXd> gin_forward(const Eigen::MatrixXd& h0, const Graph& g,
                                         std::span<const GinLayerWeights> stack);
Eigen::MatrixXd gatedgcn_forward(const Eigen::MatrixXd& h0, const Graph& g,
                                 std::span<const GatedGcnLayerWeights> stack);

/// Encoder: h0 = ReLU(W_inp x), then the GatedGCN stack. A virtual node is
/// appended when g has none; x must have one row per node of the augmented
/// graph. The virtual-node row is dropped from the result.
Eigen::MatrixXd gpse_encoder_forward(const Graph& g, const Eigen::MatrixXd& x, const GpseWeights& w);

/// One prediction block per head: num_nodes x 1 for node heads, 1 x 1 for graph heads.
std::vector<Eigen::MatrixXd> gpse_decode(const Eigen::MatrixXd& h, std::span<const GpseHead> heads);

enum class InputMode { kRandomNormal, kConstant };

/// Inputs for the encoder on g plus its virtual node: N(0,1) features from
/// Rng(seed), or all-ones features.
Eigen::MatrixXd gpse_inputs(const Graph& g, InputMode mode, int dim, std::uint64_t seed);

GpseWeights random_gpse_weights(int input_dim, int inner_dim, int num_layers, int num_node_heads,
                                int num_graph_heads, Rng& rng);

/// Random GIN stack, every weight and epsilon uniform in [-bound, bound].
std::vector<GinLayerWeights> random_gin_stack(std::span<const int> widths, int hidden, double bound,
                                              Rng& rng);

/// Three GatedGCN layers per GIN layer that reproduce it up to a factor
/// (1 - alpha), acting on features with a leading constant-1 channel:
///   aggregation: gate A = [logit(1 - alpha) 1 | 0], B = 0,
///                U = [1 0; 0 beta I; 0 -beta I], V = [0 0; 0 I; 0 -I], beta = (1 + eps)(1 - alpha)
///   first MLP layer:  U = [1 0 0; 0 W1 -W1], V = A = B = 0
///   second MLP layer: U = [1 0; 0 W2],       V = A = B = 0
/// Widths per block: (1 + d_in) -> (1 + 2 d_in) -> (1 + d_hid) -> (1 + d_out).
std::vector<GatedGcnLayerWeights> thm1_construct(std::span<const GinLayerWeights> gin_stack, double alpha);

struct Thm1Report {
  /// max over GIN layers l >= 1 and nodes of ||h_gin - h_gated||, where each
  /// constructed block is fed the exact GIN input [1 | h^{(l-1)}].
  double max_error = 0.0;
  /// alpha * max_{l >= 1, i} ||h_i^{(l)}||
  double bound = 0.0;
  double max_norm = 0.0;
  bool pass = false;
  /// Same comparison with the whole constructed stack run end to end; the
  /// (1 - alpha) factors then compound to (1 - alpha)^l at GIN layer l.
  double end_to_end_error = 0.0;
  /// (1 - (1 - alpha)^L) * max_norm
  double end_to_end_bound = 0.0;
  bool end_to_end_pass = false;
  /// Column 0 equals 1 exactly after every constructed layer.
  bool constant_channel_exact = false;
};

inline constexpr double kThm1Slack = 1e-9;

Thm1Report thm1_verify(const Graph& g, const Eigen::MatrixXd& h0,
                       std::span<const GinLayerWeights> gin_stack, double alpha);

}  // namespace graphpse
