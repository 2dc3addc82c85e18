#include "cocycle_solver.hpp"
#include "doctest.h"

using namespace forge;
using forge::testing::Z2Instance;

namespace {
std::vector<Scalar> grid() { return {Scalar(-1), Scalar(0), Scalar(1, 2), Scalar(2)}; }
bool is_unit(const DynamicalCocycle& dc) {
  return dc.F == unit_cocycle(dc.U, dc.incl, dc.base).F;
}
}  // namespace

TEST_CASE("cocycle solver finds nontrivial cocycles on the Z2 instance") {
  Z2Instance s;
  auto sols = forge::testing::solve_cocycles(s.z, s.minus, grid());
  CHECK(sols.size() > 1);
  int nontrivial = 0;
  for (auto& dc : sols) nontrivial += !is_unit(dc);
  CHECK(nontrivial > 0);
}

TEST_CASE("perturbed cocycle fails") {
  Z2Instance s;
  DynamicalCocycle dc = unit_cocycle(s.z, LinearMap::identity(2), s.minus);
  CHECK(verify_dynamical_cocycle(dc).ok());
  dc.F.e[0].second += Scalar(1);
  CheckReport r = verify_dynamical_cocycle(dc);
  CHECK_FALSE(r.ok());
  REQUIRE(r.find("normalization"));
  CHECK(r.find("normalization")->status == Status::Fail);
}

TEST_CASE("psi twist from the unit and from a solved cocycle") {
  Z2Instance s;
  CheckReport rp;
  SmashBialgebroid plus = smash_qt(s.qt, s.L, s.act, +1, &rp);
  CHECK(rp.ok());
  DynamicalCocycle one = unit_cocycle(s.z, LinearMap::identity(2), s.minus);
  CHECK(psi_from_cocycle(one, plus).report.ok());
  auto sols = forge::testing::solve_cocycles(s.z, s.minus, grid());
  for (auto& dc : sols)
    if (!is_unit(dc)) {
      PsiTwist pt = psi_from_cocycle(dc, plus);
      CHECK_MESSAGE(pt.report.ok(), pt.report.first_failure());
      break;
    }
}

TEST_CASE("wrong coaction on the third leg is rejected") {
  Z2Instance s;
  CheckReport rp;
  SmashBialgebroid plus = smash_qt(s.qt, s.L, s.act, +1, &rp);
  auto reg = std::make_shared<BaseAlgebra>(regular_base(s.z));
  DynamicalCocycle dc = unit_cocycle(s.z, LinearMap::identity(2), reg);
  // regular base carries the coproduct coaction, not the L- one
  CHECK_THROWS_AS(psi_from_cocycle(dc, plus), InputError);
}

TEST_CASE("dynamization over the regular base") {
  auto z = std::make_shared<Hopf>(group_algebra(cyclic_table(2), {}, "Z2"));
  auto reg = std::make_shared<BaseAlgebra>(regular_base(z));
  SmashBialgebroid sb = smash_product(reg);
  ModuleAction triv = trivial_module(*z, 1), regm = regular_module(z->alg);
  CHECK(check_dynamize_module(regm, sb, "regular").ok());
  CHECK(check_dynamize_monoidal(regm, regm, sb, "reg,reg").ok());
  CHECK(check_dynamize_monoidal(triv, regm, sb, "triv,reg").ok());
  // the trivial module dynamizes to the anchor action on L
  ModuleAction dt = dynamize_module(triv, sb);
  for (Index b = 0; b < sb.B.dim(); ++b)
    for (Index l = 0; l < 2; ++l) CHECK(dt.rho[b].col(l) == sb.B.anchor(sb.B.B.basis(b), sb.L().basis(l)));
}

TEST_CASE("dual groupoid of the unit cocycle") {
  auto z = std::make_shared<Hopf>(group_algebra(cyclic_table(2), {}, "Z2"));
  auto reg = std::make_shared<BaseAlgebra>(regular_base(z));
  DualGroupoid g = dual_groupoid(unit_cocycle(z, LinearMap::identity(2), reg));
  CHECK_MESSAGE(g.report.ok(), g.report.first_failure());
}
