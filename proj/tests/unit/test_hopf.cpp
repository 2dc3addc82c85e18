#include "doctest.h"
#include "forge/hopf.hpp"

using namespace forge;

namespace {
HopfPtr grp(int n) {
  return std::make_shared<Hopf>(group_algebra(cyclic_table(n), {}, "Z" + std::to_string(n)));
}
}  // namespace

TEST_CASE("catalog Hopf algebras verify") {
  CHECK(verify_hopf(*grp(2)).ok());
  CHECK(verify_hopf(*grp(3)).ok());
  Hopf s3 = group_algebra(s3_table(), {}, "S3");
  CHECK(s3.dim() == 6);
  CHECK(verify_hopf(s3).ok());
  CHECK(verify_hopf(dual_hopf(s3)).ok());
  CHECK(verify_hopf(sweedler()).ok());
  Hopf t3 = taft(3, 3);
  CHECK(t3.dim() == 9);
  CHECK(verify_hopf(t3).ok());
  CHECK(verify_hopf(dual_hopf(t3)).ok());
  CHECK(verify_hopf(hopf_op(sweedler())).ok() == verify_hopf(hopf_cop(sweedler())).ok());
}

TEST_CASE("non-group table is rejected") {
  std::vector<std::vector<int>> t{{0, 1, 2}, {1, 1, 0}, {2, 0, 1}};
  CHECK_THROWS_AS(group_algebra(t, {}, "bad"), InputError);
}

TEST_CASE("Sweedler triangular family") {
  auto sw = std::make_shared<Hopf>(sweedler());
  for (Scalar a : {Scalar(0), Scalar(1), Scalar(-2, 3), Scalar(5)}) {
    QT qt;
    CheckReport r = check_qt(sw, sweedler_r(a), &qt);
    CHECK_MESSAGE(r.ok(), r.first_failure());
    CHECK(qt.triangular());
    CHECK(check_qybe(*sw, sweedler_r(a)).ok());
  }
  CheckReport bad = check_qt(sw, sw->one2());
  CHECK_FALSE(bad.ok());
  REQUIRE(bad.find("intertwining"));
  CHECK(bad.find("intertwining")->status == Status::Fail);
}

TEST_CASE("Drinfeld double of Z2 and Z3") {
  for (int n : {2, 3}) {
    Double dd = drinfeld_double(grp(n));
    CHECK(dd.D->dim() == Index(n * n));
    CHECK(dd.D->name == "double(Z" + std::to_string(n) + ")");
    CHECK(verify_hopf(*dd.D).ok());
    QT qt = verify_qt(dd.D, dd.Theta);
    CHECK(qt.report.ok());
    CHECK(check_qybe(*dd.D, dd.Theta).ok());
  }
}

TEST_CASE("qt projections from the double of Sweedler") {
  auto sw = std::make_shared<Hopf>(sweedler());
  Double dd = drinfeld_double(sw);
  QT qt = verify_qt(sw, sweedler_r(Scalar(1)));
  CheckReport rp;
  LinearMap p = qt_projection(dd, qt, 1, &rp);
  LinearMap m = qt_projection(dd, qt, -1, &rp);
  CHECK_MESSAGE(rp.ok(), rp.first_failure());
  CHECK(p.dom == 16);
  CHECK(m.cod == 4);
}

TEST_CASE("modules") {
  Hopf z3 = *grp(3);
  CHECK(verify_module(z3.alg, regular_module(z3.alg)).ok());
  CHECK(verify_module(z3.alg, adjoint_action(z3)).ok());
  ModuleAction t = tensor_module(z3, regular_module(z3.alg), trivial_module(z3, 2));
  CHECK(t.carrier == 6);
  CHECK(verify_module(z3.alg, t).ok());
}

TEST_CASE("trivial twist leaves the structure unchanged") {
  Hopf sw = sweedler();
  CheckReport r;
  Hopf tw = hopf_twist(sw, sw.one2(), &r);
  CHECK(r.ok());
  CHECK(tw.cop == sw.cop);
}
