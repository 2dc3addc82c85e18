#include "doctest.h"
#include "forge/bialgebroid.hpp"
#include "forge/base_algebra.hpp"

using namespace forge;

TEST_CASE("basic bialgebroids verify") {
  Hopf z2 = group_algebra(cyclic_table(2), {"1", "g"}, "Z2");
  Bialgebroid e = build_EndL(z2.alg);
  CHECK(e.dim() == 4);
  CHECK(verify_bialgebroid(e).ok());
  Bialgebroid ll = build_LLopH(z2.alg, z2, adjoint_action(z2));
  CHECK(ll.dim() == 8);
  CHECK(verify_bialgebroid(ll).ok());
  CHECK(verify_bialgebroid(coopposite(e)).ok());
  Bialgebroid sw = bialgebra_as_bialgebroid(sweedler());
  CHECK(verify_bialgebroid(sw).ok());
  CHECK(verify_bialgebroid(tensor_bialgebroid(e, sw)).ok());
}

TEST_CASE("quasitriangular bialgebroid criterion over the ground field") {
  Bialgebroid sw = bialgebra_as_bialgebroid(sweedler());
  CHECK(verify_qt_bialgebroid(sw, sweedler_r(Scalar(1))).ok());
  CHECK_FALSE(verify_qt_bialgebroid(sw, kron(sw.B.basis(1), sw.B.basis(1))).ok());
}

TEST_CASE("twist by the unit") {
  Hopf z2 = group_algebra(cyclic_table(2), {"1", "g"}, "Z2");
  Bialgebroid ll = build_LLopH(z2.alg, z2, adjoint_action(z2));
  TwistResult tw = twist_bialgebroid(ll, ll.one2());
  CHECK(tw.report.ok());
  CHECK(check_twist_cocycle(ll, ll.one2()).ok());
}
