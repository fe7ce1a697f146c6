#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "graphpse/datasets.hpp"
#include "graphpse/errors.hpp"
#include "graphpse/mpnn.hpp"
#include "graphpse/weights_io.hpp"
#include "test_support.hpp"

namespace graphpse {
namespace {

using testing::make_graph;

GinLayerWeights identity_gin(int width, double epsilon) {
  return {epsilon, Eigen::MatrixXd::Identity(width, width), Eigen::MatrixXd::Identity(width, width)};
}

GatedGcnLayerWeights scalar_gated(double u, double v, double a, double b) {
  return {Eigen::MatrixXd::Constant(1, 1, u), Eigen::MatrixXd::Constant(1, 1, v), Eigen::MatrixXd::Constant(1, 1, a),
          Eigen::MatrixXd::Constant(1, 1, b)};
}

TEST(GinLayer, Examples) {
  const GinLayerWeights zero{0.3, Eigen::MatrixXd::Zero(4, 2), Eigen::MatrixXd::Zero(3, 4)};
  EXPECT_EQ(gin_layer(Eigen::MatrixXd::Ones(3, 2), testing::triangle(), zero), Eigen::MatrixXd::Zero(3, 3));
  EXPECT_EQ(gin_layer(Eigen::MatrixXd::Ones(3, 1), testing::triangle(), identity_gin(1, 0)),
            Eigen::MatrixXd::Constant(3, 1, 3));
  Eigen::MatrixXd h(2, 1);
  h << 1, 2;
  Eigen::MatrixXd want(2, 1);
  want << 4, 5;
  EXPECT_EQ(gin_layer(h, testing::k2(), identity_gin(1, 1)), want);
  EXPECT_THROW(gin_layer(Eigen::MatrixXd::Ones(2, 3), testing::k2(), identity_gin(1, 0)), Error);
  EXPECT_THROW(gin_layer(Eigen::MatrixXd::Ones(3, 1), testing::k2(), identity_gin(1, 0)), Error);
}

TEST(GatedGcnLayer, Examples) {
  EXPECT_EQ(gatedgcn_layer(Eigen::MatrixXd::Ones(3, 1), testing::triangle(), scalar_gated(0, 0, 0, 0)),
            Eigen::MatrixXd::Zero(3, 1));
  EXPECT_EQ(gatedgcn_layer(Eigen::MatrixXd::Ones(3, 1), testing::triangle(), scalar_gated(1, 1, 0, 0)),
            Eigen::MatrixXd::Constant(3, 1, 2));
  Eigen::MatrixXd h(1, 1);
  h << -2;
  EXPECT_EQ(gatedgcn_layer(h, make_graph(1, {}), scalar_gated(-1.5, 7, 3, 4))(0, 0), 3.0);
  GatedGcnLayerWeights bad = scalar_gated(1, 1, 1, 1);
  bad.a = Eigen::MatrixXd::Ones(2, 1);
  EXPECT_THROW(gatedgcn_layer(Eigen::MatrixXd::Ones(3, 1), testing::triangle(), bad), Error);
}

TEST(GatedGcnLayer, GateRoles) {
  // Receiver enters through A, sender through B.
  Eigen::MatrixXd h(2, 1);
  h << 1, 3;
  const auto out = gatedgcn_layer(h, testing::k2(), scalar_gated(0, 1, 1, 0));
  EXPECT_DOUBLE_EQ(out(0, 0), sigmoid(1.0) * 3);
  EXPECT_DOUBLE_EQ(out(1, 0), sigmoid(3.0) * 1);
}

TEST(Layers, PermutationEquivariantBitExact) {
  Rng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = erdos_renyi(rng.uniform_int(1, 15), 0.35, rng);
    const int in = rng.uniform_int(1, 5);
    Eigen::MatrixXd h(g.num_nodes(), in);
    for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = rng.uniform(-1, 1);
    const int widths[] = {in, 4};
    const auto gin = random_gin_stack(widths, 6, 1.0, rng).front();
    auto random = [&](int r, int c) {
      Eigen::MatrixXd m(r, c);
      for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-1, 1);
      return m;
    };
    const GatedGcnLayerWeights gated{random(3, in), random(3, in), random(3, in), random(3, in)};
    const auto perm = rng.permutation(g.num_nodes());
    const Graph pg = permute(g, perm);
    const Eigen::MatrixXd ph = testing::permute_rows(h, perm);
    EXPECT_EQ(gin_layer(ph, pg, gin), testing::permute_rows(gin_layer(h, g, gin), perm));
    EXPECT_EQ(gatedgcn_layer(ph, pg, gated), testing::permute_rows(gatedgcn_layer(h, g, gated), perm));
  }
}

TEST(GpseEncoder, Examples) {
  Rng rng(61);
  const auto w = random_gpse_weights(20, 8, 2, 1, 1, rng);
  const Graph single = make_graph(1, {});
  const Eigen::MatrixXd x = gpse_inputs(single, InputMode::kRandomNormal, 20, 5);
  EXPECT_EQ(x.rows(), 2);
  EXPECT_EQ(gpse_encoder_forward(single, x, w).rows(), 1);
  GpseWeights zero = w;
  zero.w_inp.setZero();
  const Graph c5 = testing::cycle(5);
  const Eigen::MatrixXd x5 = gpse_inputs(c5, InputMode::kRandomNormal, 20, 6);
  EXPECT_EQ(gpse_encoder_forward(c5, x5, zero), Eigen::MatrixXd::Zero(5, 8));
  EXPECT_EQ(gpse_encoder_forward(c5, x5, w), gpse_encoder_forward(c5, x5, w));
  EXPECT_THROW(gpse_encoder_forward(c5, Eigen::MatrixXd::Ones(6, 3), w), Error);
  EXPECT_THROW(gpse_encoder_forward(c5, Eigen::MatrixXd::Ones(5, 20), w), Error);
}

TEST(GpseEncoder, ExistingVirtualNodeIsReused) {
  Rng rng(67);
  const auto w = random_gpse_weights(4, 6, 2, 0, 0, rng);
  const Graph g = add_virtual_node(testing::path(4));
  const Eigen::MatrixXd x = gpse_inputs(g, InputMode::kConstant, 4, 0);
  EXPECT_EQ(x, Eigen::MatrixXd::Ones(5, 4));
  EXPECT_EQ(gpse_encoder_forward(g, x, w), gpse_encoder_forward(testing::path(4), x, w));
}

TEST(GpseEncoder, EdgeInsertionOrderIrrelevant) {
  Rng rng(71);
  const auto w = random_gpse_weights(3, 5, 3, 0, 0, rng);
  std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {4, 1}};
  const Graph a = Graph::build(5, edges);
  std::reverse(edges.begin(), edges.end());
  for (auto& e : edges) std::swap(e.first, e.second);
  const Graph b = Graph::build(5, edges);
  const Eigen::MatrixXd x = gpse_inputs(a, InputMode::kRandomNormal, 3, 9);
  EXPECT_EQ(gpse_encoder_forward(a, x, w), gpse_encoder_forward(b, x, w));
}

TEST(GpseEncoder, ResidualAddsInput) {
  Rng rng(73);
  GpseWeights w = random_gpse_weights(3, 4, 1, 0, 0, rng);
  const Graph g = testing::triangle();
  const Eigen::MatrixXd x = gpse_inputs(g, InputMode::kRandomNormal, 3, 2);
  const Eigen::MatrixXd plain = gpse_encoder_forward(g, x, w);
  w.residual = true;
  const Eigen::MatrixXd residual = gpse_encoder_forward(g, x, w);
  Eigen::MatrixXd h0(3, 4);
  for (int v = 0; v < 3; ++v) h0.row(v) = (w.w_inp * x.row(v).transpose()).cwiseMax(0.0).transpose();
  EXPECT_LE((residual - plain - h0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GpseDecode, Examples) {
  const Eigen::MatrixXd h = Eigen::MatrixXd::Constant(3, 2, 0.7);
  const GpseHead zero{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(1, 2), PseLevel::kNode};
  const GpseHead zero_heads[] = {zero};
  EXPECT_EQ(gpse_decode(h, zero_heads).front(), Eigen::MatrixXd::Zero(3, 1));

  Eigen::MatrixXd w1(2, 2);
  w1 << 0.5, -1, 2, 0.25;
  Eigen::MatrixXd w2(1, 2);
  w2 << 1, -0.5;
  const GpseHead graph_head{w1, w2, PseLevel::kGraph};
  Eigen::MatrixXd two(2, 2);
  two << 0.3, 0.8, 0.3, 0.8;
  const GpseHead graph_heads[] = {graph_head};
  const auto pooled = gpse_decode(two, graph_heads).front();
  const Eigen::MatrixXd doubled = 2 * two.topRows(1);
  const GpseHead node_heads[] = {{w1, w2, PseLevel::kNode}};
  EXPECT_EQ(pooled.rows(), 1);
  EXPECT_DOUBLE_EQ(pooled(0, 0), gpse_decode(doubled, node_heads).front()(0, 0));

  Eigen::MatrixXd one(1, 3);
  one << 0.2, 0.9, 0.4;
  Eigen::MatrixXd pick(1, 3);
  pick << 0, 1, 0;
  const GpseHead identity_like[] = {{Eigen::MatrixXd::Identity(3, 3), pick, PseLevel::kNode}};
  EXPECT_EQ(gpse_decode(one, identity_like).front()(0, 0), 0.9);
  EXPECT_THROW(gpse_decode(Eigen::MatrixXd::Ones(2, 5), zero_heads), Error);
}

TEST(Thm1Construct, Shapes) {
  Rng rng(79);
  const int widths[] = {2, 2};
  const auto gin = random_gin_stack(widths, 2, 1.0, rng);
  const auto half = thm1_construct(gin, 0.5);
  ASSERT_EQ(half.size(), 3u);
  EXPECT_EQ(half[0].input_width(), 3);
  EXPECT_EQ(half[0].output_width(), 5);
  EXPECT_EQ(half[1].output_width(), 3);
  EXPECT_EQ(half[2].output_width(), 3);
  EXPECT_EQ(half[0].a.col(0), Eigen::VectorXd::Zero(5));
  EXPECT_EQ(half[0].a.col(0)(0), logit(0.5));
  const auto tenth = thm1_construct(gin, 0.1);
  EXPECT_NEAR(tenth[0].a(0, 0), std::log(0.9 / 0.1), 1e-15);
  EXPECT_EQ(tenth[0].a.rightCols(2), Eigen::MatrixXd::Zero(5, 2));
  EXPECT_EQ(tenth[0].b, Eigen::MatrixXd::Zero(5, 3));
  for (double bad : {0.0, 1.0, -0.5, 2.0, std::nan("")}) EXPECT_THROW(thm1_construct(gin, bad), Error);
}

TEST(Thm1Verify, ErrorExactlyScalesWithAlpha) {
  Rng rng(83);
  const Graph g = testing::triangle();
  const int widths[] = {3, 4, 2};
  const auto gin = random_gin_stack(widths, 5, 1.0, rng);
  Eigen::MatrixXd h0(3, 3);
  for (Eigen::Index i = 0; i < h0.size(); ++i) h0.data()[i] = rng.uniform(-1, 1);
  const auto r01 = thm1_verify(g, h0, gin, 0.1);
  const auto r0001 = thm1_verify(g, h0, gin, 0.001);
  EXPECT_TRUE(r01.pass);
  EXPECT_TRUE(r0001.pass);
  EXPECT_TRUE(r01.constant_channel_exact);
  EXPECT_LE(r01.max_error, 0.1 * r01.max_norm + kThm1Slack);
  ASSERT_GT(r01.max_error, 0);
  const double ratio = r0001.max_error / r01.max_error;
  EXPECT_GT(ratio, 0.01 / 2);
  EXPECT_LT(ratio, 0.01 * 2);
  EXPECT_TRUE(r01.end_to_end_pass);
}

TEST(Thm1Verify, ZeroWeightsExact) {
  const GinLayerWeights zero{0.0, Eigen::MatrixXd::Zero(3, 2), Eigen::MatrixXd::Zero(2, 3)};
  const std::vector<GinLayerWeights> stack{zero, zero};
  const auto r = thm1_verify(testing::cycle(5), Eigen::MatrixXd::Ones(5, 2), stack, 0.3);
  EXPECT_EQ(r.max_error, 0.0);
  EXPECT_EQ(r.end_to_end_error, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Thm1Verify, ConstantChannelAcrossRandomStacks) {
  Rng rng(89);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = erdos_renyi(rng.uniform_int(1, 8), 0.4, rng);
    const int widths[] = {2, 3, 2, 1};
    const auto gin = random_gin_stack(widths, 3, 1.0, rng);
    Eigen::MatrixXd h0(g.num_nodes(), 2);
    for (Eigen::Index i = 0; i < h0.size(); ++i) h0.data()[i] = rng.uniform(-1, 1);
    for (double alpha : {0.5, 0.1, 0.01, 0.001, 0.99}) {
      const auto r = thm1_verify(g, h0, gin, alpha);
      EXPECT_TRUE(r.constant_channel_exact);
      EXPECT_TRUE(r.pass) << r.max_error << " vs " << r.bound;
      EXPECT_TRUE(r.end_to_end_pass);
    }
  }
}

TEST(Thm1Verify, WidthMismatchInStack) {
  const GinLayerWeights a{0, Eigen::MatrixXd::Ones(2, 2), Eigen::MatrixXd::Ones(3, 2)};
  const GinLayerWeights b{0, Eigen::MatrixXd::Ones(2, 2), Eigen::MatrixXd::Ones(1, 2)};
  const std::vector<GinLayerWeights> stack{a, b};
  EXPECT_THROW(thm1_construct(stack, 0.5), Error);
}

TEST(WeightsIo, RoundTrip) {
  Rng rng(97);
  const auto gpse = random_gpse_weights(20, 6, 2, 2, 1, rng);
  const auto back = gpse_weights_from_json(nlohmann::json::parse(gpse_weights_to_json(gpse).dump()));
  EXPECT_EQ(back.w_inp, gpse.w_inp);
  ASSERT_EQ(back.layers.size(), 2u);
  EXPECT_EQ(back.layers[1].b, gpse.layers[1].b);
  ASSERT_EQ(back.heads.size(), 3u);
  EXPECT_EQ(back.heads[2].level, PseLevel::kGraph);
  EXPECT_EQ(back.heads[0].level, PseLevel::kNode);
  EXPECT_EQ(back.residual, gpse.residual);

  const int widths[] = {2, 3, 1};
  const auto gin = random_gin_stack(widths, 4, 1.0, rng);
  const auto gin_back = gin_stack_from_json(nlohmann::json::parse(gin_stack_to_json(gin).dump()));
  ASSERT_EQ(gin_back.size(), 2u);
  EXPECT_EQ(gin_back[1].w2, gin[1].w2);
  EXPECT_EQ(gin_back[0].epsilon, gin[0].epsilon);
}

TEST(WeightsIo, Malformed) {
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"({"matrices":{"m":{"shape":[2,2],"data":[1,2,3]}}})"), "m"),
               Error);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"({"matrices":{}})"), "m"), Error);
  EXPECT_THROW(gpse_weights_from_json(nlohmann::json::parse("[]")), Error);
}

}  // namespace
}  // namespace graphpse
