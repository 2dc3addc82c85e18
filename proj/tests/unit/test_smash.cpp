#include "doctest.h"
#include "forge/smash.hpp"

using namespace forge;

namespace {
struct Z {
  HopfPtr z;
  Double dd;
  QT qt;
  BaseAlgebra reg;
  ModuleAction da;
  explicit Z(int n)
      : z(std::make_shared<Hopf>(group_algebra(cyclic_table(n), {}, "Z"))),
        dd(drinfeld_double(z)),
        qt(verify_qt(dd.D, dd.Theta)),
        reg(regular_base(z)),
        da(double_action(reg, dd)) {}
};
}  // namespace

TEST_CASE("smash product over a catalog base") {
  auto b = std::make_shared<BaseAlgebra>(regular_base(std::make_shared<Hopf>(group_algebra(cyclic_table(2), {}, "Z2"))));
  CheckReport r;
  SmashBialgebroid sb = smash_product(b, &r);
  CHECK(r.ok());
  CHECK(sb.B.dim() == 4);
  CHECK(verify_bialgebroid(sb.B).ok());
  CHECK(check_smash_anchor(sb).ok());
}

TEST_CASE("quantum groupoid of D(Z2) over kZ2") {
  Z s(2);
  QuantumGroupoid qg = quantum_groupoid(s.qt, s.reg.L, s.da);
  CHECK_MESSAGE(qg.report.ok(), qg.report.first_failure());
  CHECK(qg.plus->B.dim() == 8);
  CHECK(qg.Q.dim() + qg.J.rank() == 8);
  CHECK(check_sub_bialgebroid(*qg.plus).ok());
  CHECK(antipode_descends(qg).ok());
}

TEST_CASE("antipode maps on D(Z2)") {
  Z s(2);
  QuantumGroupoid qg = quantum_groupoid(s.qt, s.reg.L, s.da);
  CheckReport ro, rz, rl;
  SmashBialgebroid op = opposite_smash(*qg.plus, &ro);
  antipode_zeta(*qg.plus, op, &rz);
  lu_antipode(*qg.plus, &rl);
  CHECK(ro.ok());
  CHECK(rz.ok());
  CHECK(rl.ok());
}

TEST_CASE("triangular host gives the trivial ideal") {
  auto z2 = std::make_shared<Hopf>(group_algebra(cyclic_table(2), {}, "Z2"));
  Scalar h(1, 2);
  Vec Rh(4);
  Rh.e = {{0, h}, {1, h}, {2, h}, {3, -h}};
  BaseAlgebra reg = regular_base(z2);
  for (const Vec& R : {z2->one2(), Rh}) {
    QT qt = verify_qt(z2, R);
    REQUIRE(qt.triangular());
    QuantumGroupoid qg = quantum_groupoid(qt, reg.L, reg.act);
    CHECK(qg.report.ok());
    CHECK(qg.J.rank() == 0);
    CHECK(qg.Q.B.table == qg.plus->B.B.table);
  }
}
