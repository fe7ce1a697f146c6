#include "graphpse/weights_io.hpp"

#include "graphpse/errors.hpp"

namespace graphpse {
namespace {

using nlohmann::json;

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  if (!doc.is_object()) throw Error(ErrorCode::kMalformedRecord, "weights document must be an object");
  const auto it = doc.find(key);
  if (it == doc.end()) return empty;
  if (!it->is_object()) throw Error(ErrorCode::kMalformedRecord, std::string(key) + " must be an object");
  return *it;
}

bool has_matrix(const json& doc, const std::string& name) { return section(doc, "matrices").contains(name); }

double scalar(const json& doc, const std::string& name, double fallback) {
  const auto& s = section(doc, "scalars");
  const auto it = s.find(name);
  if (it == s.end()) return fallback;
  if (!it->is_number()) throw Error(ErrorCode::kMalformedRecord, "scalar " + name + " is not a number");
  return it->get<double>();
}

}  // namespace

json matrix_to_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  return {{"shape", {m.rows(), m.cols()}}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const json& doc, const std::string& name) {
  const auto& matrices = section(doc, "matrices");
  const auto it = matrices.find(name);
  if (it == matrices.end()) throw Error(ErrorCode::kMalformedRecord, "missing matrix " + name);
  try {
    const auto shape = it->at("shape").get<std::vector<long>>();
    const auto data = it->at("data").get<std::vector<double>>();
    if (shape.size() != 2 || shape[0] < 0 || shape[1] < 0 ||
        static_cast<long>(data.size()) != shape[0] * shape[1]) {
      throw Error(ErrorCode::kMalformedRecord, "matrix " + name + ": shape and data disagree");
    }
    Eigen::MatrixXd m(shape[0], shape[1]);
    for (long i = 0; i < shape[0]; ++i)
      for (long j = 0; j < shape[1]; ++j) m(i, j) = data[i * shape[1] + j];
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, "matrix " + name + ": " + e.what());
  }
}

json gin_stack_to_json(const std::vector<GinLayerWeights>& stack) {
  json doc = {{"matrices", json::object()}, {"scalars", json::object()}};
  for (std::size_t l = 0; l < stack.size(); ++l) {
    const std::string prefix = "gin." + std::to_string(l) + ".";
    doc["matrices"][prefix + "w1"] = matrix_to_json(stack[l].w1);
    doc["matrices"][prefix + "w2"] = matrix_to_json(stack[l].w2);
    doc["scalars"][prefix + "epsilon"] = stack[l].epsilon;
  }
  return doc;
}

std::vector<GinLayerWeights> gin_stack_from_json(const json& doc) {
  std::vector<GinLayerWeights> stack;
  for (int l = 0; has_matrix(doc, "gin." + std::to_string(l) + ".w1"); ++l) {
    const std::string prefix = "gin." + std::to_string(l) + ".";
    stack.push_back({scalar(doc, prefix + "epsilon", 0.0), matrix_from_json(doc, prefix + "w1"),
                     matrix_from_json(doc, prefix + "w2")});
  }
  return stack;
}

json gpse_weights_to_json(const GpseWeights& w) {
  json doc = {{"matrices", json::object()}, {"scalars", json::object()}};
  doc["matrices"]["gpse.w_inp"] = matrix_to_json(w.w_inp);
  for (std::size_t l = 0; l < w.layers.size(); ++l) {
    const std::string prefix = "gpse.layer." + std::to_string(l) + ".";
    doc["matrices"][prefix + "U"] = matrix_to_json(w.layers[l].u);
    doc["matrices"][prefix + "V"] = matrix_to_json(w.layers[l].v);
    doc["matrices"][prefix + "A"] = matrix_to_json(w.layers[l].a);
    doc["matrices"][prefix + "B"] = matrix_to_json(w.layers[l].b);
  }
  for (std::size_t k = 0; k < w.heads.size(); ++k) {
    const std::string prefix = "gpse.head." + std::to_string(k) + ".";
    doc["matrices"][prefix + "w1"] = matrix_to_json(w.heads[k].w1);
    doc["matrices"][prefix + "w2"] = matrix_to_json(w.heads[k].w2);
    doc["scalars"][prefix + "graph_level"] = w.heads[k].level == PseLevel::kGraph ? 1 : 0;
  }
  doc["scalars"]["gpse.residual"] = w.residual ? 1 : 0;
  return doc;
}

GpseWeights gpse_weights_from_json(const json& doc) {
  GpseWeights w;
  w.w_inp = matrix_from_json(doc, "gpse.w_inp");
  for (int l = 0; has_matrix(doc, "gpse.layer." + std::to_string(l) + ".U"); ++l) {
    const std::string prefix = "gpse.layer." + std::to_string(l) + ".";
    w.layers.push_back({matrix_from_json(doc, prefix + "U"), matrix_from_json(doc, prefix + "V"),
                        matrix_from_json(doc, prefix + "A"), matrix_from_json(doc, prefix + "B")});
  }
  for (int k = 0; has_matrix(doc, "gpse.head." + std::to_string(k) + ".w1"); ++k) {
    const std::string prefix = "gpse.head." + std::to_string(k) + ".";
    w.heads.push_back({matrix_from_json(doc, prefix + "w1"), matrix_from_json(doc, prefix + "w2"),
                       scalar(doc, prefix + "graph_level", 0.0) != 0.0 ? PseLevel::kGraph : PseLevel::kNode});
  }
  w.residual = scalar(doc, "gpse.residual", 0.0) != 0.0;
  return w;
}

}  // namespace graphpse
