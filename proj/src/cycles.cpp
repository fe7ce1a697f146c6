#include <cstdint>
#include <vector>

#include "graphpse/errors.hpp"
#include "graphpse/pse.hpp"

namespace graphpse {
namespace {

// Paths rooted at their smallest vertex `root`; every cycle through root is
// found once per direction.
class CycleCounter {
 public:
  CycleCounter(const Graph& g, int k_max)
      : g_(g), k_max_(k_max), on_path_(g.num_nodes(), false), counts_(k_max + 1, 0) {}

  std::vector<std::uint64_t> run() {
    for (int root = 0; root < g_.num_nodes(); ++root) {
      root_ = root;
      on_path_[root] = true;
      extend(root, 1);
      on_path_[root] = false;
    }
    std::vector<std::uint64_t> out;
    for (int k = 3; k <= k_max_; ++k) out.push_back(counts_[k] / 2);
    return out;
  }

 private:
  void extend(int v, int length) {
    for (int u : g_.neighbors(v)) {
      if (u == root_) {
        if (length >= 3) ++counts_[length];
      } else if (u > root_ && !on_path_[u] && length < k_max_) {
        on_path_[u] = true;
        extend(u, length + 1);
        on_path_[u] = false;
      }
    }
  }

  const Graph& g_;
  int k_max_;
  int root_ = 0;
  std::vector<bool> on_path_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace

std::vector<std::uint64_t> count_cycles(const Graph& g, int k_max) {
  if (k_max > kMaxCycleLength) {
    throw Error(ErrorCode::kKTooLarge, "cycle length limit is " + std::to_string(kMaxCycleLength));
  }
  if (k_max < 3) throw Error(ErrorCode::kInvalidArgument, "k_max must be >= 3");
  return CycleCounter(g, k_max).run();
}

}  // namespace graphpse
