#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphpse/mpnn.hpp"

namespace graphpse {

// Weight files are JSON:
//   {"matrices": {name: {"shape": [rows, cols], "data": [row-major values]}},
//    "scalars": {name: value}}
// Names: gin.<l>.w1, gin.<l>.w2, gin.<l>.epsilon (scalar); gpse.w_inp,
// gpse.layer.<l>.{U,V,A,B}, gpse.head.<k>.{w1,w2}, gpse.head.<k>.graph_level
// and gpse.residual (scalars, nonzero = true).

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& doc, const std::string& name);

nlohmann::json gin_stack_to_json(const std::vector<GinLayerWeights>& stack);
std::vector<GinLayerWeights> gin_stack_from_json(const nlohmann::json& doc);

nlohmann::json gpse_weights_to_json(const GpseWeights& w);
GpseWeights gpse_weights_from_json(const nlohmann::json& doc);

}  // namespace graphpse
