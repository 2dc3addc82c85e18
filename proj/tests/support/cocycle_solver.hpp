#pragma once
#include <vector>

#include "forge/dyn_twist.hpp"

namespace forge::testing {

// Z2 instance: H = U = kZ2, R = 1/2(1(x)1 + 1(x)g + g(x)1 - g(x)g), L = functions on Z2 with trivial action.
struct Z2Instance {
  HopfPtr z;
  QT qt;
  Algebra L;
  ModuleAction act;
  BasePtr minus;
  Z2Instance()
      : z(std::make_shared<Hopf>(group_algebra(cyclic_table(2), {}, "Z2"))),
        qt(verify_qt(z, half_r())),
        L(dual_hopf(*z).alg),
        act(trivial_module(*z, 2)),
        minus(std::make_shared<BaseAlgebra>(coaction_from_R(qt, L, act, -1, "L-"))) {}
  static Vec half_r() {
    Scalar h(1, 2);
    Vec R(4);
    R.e = {{0, h}, {1, h}, {2, h}, {3, -h}};
    return R;
  }
};

// Exhaustive solver: the normalization constraints are solved exactly (unit cocycle plus kernel),
// the remaining coordinates run over a rational grid and each candidate goes through the verifier.
inline std::vector<DynamicalCocycle> solve_cocycles(const HopfPtr& U, const BasePtr& base,
                                                    const std::vector<Scalar>& grid) {
  Index m = U->dim(), n = base->dim(), N = m * m * n;
  LinearMap A(N, 2 * m * n);
  for (Index k = 0; k < N; ++k) {
    Vec e = Vec::unit(N, k);
    Vec a = contract_leg(e, Shape{m, m, n}, 0, U->counit_row());
    Vec b = contract_leg(e, Shape{m, m, n}, 1, U->counit_row());
    Acc acc(2 * m * n);
    for (const auto& [i, c] : a.e) acc.add(i, c);
    for (const auto& [i, c] : b.e) acc.add(m * n + i, c);
    A.cols[k] = acc.take();
  }
  std::vector<Vec> K = kernel(A).basis();
  DynamicalCocycle unit = unit_cocycle(U, LinearMap::identity(U->dim()), base);
  std::vector<DynamicalCocycle> out;
  std::vector<std::size_t> idx(K.size(), 0);
  while (true) {
    DynamicalCocycle dc = unit;
    for (std::size_t i = 0; i < K.size(); ++i) dc.F += grid[idx[i]] * K[i];
    if (verify_dynamical_cocycle(dc).ok()) out.push_back(dc);
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == grid.size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  return out;
}

}  // namespace forge::testing
