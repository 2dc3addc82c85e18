#include "doctest.h"
#include "forge/base_algebra.hpp"

using namespace forge;

TEST_CASE("regular and dual base algebras verify") {
  for (HopfPtr h : {HopfPtr(std::make_shared<Hopf>(group_algebra(cyclic_table(2), {}, "Z2"))),
                    HopfPtr(std::make_shared<Hopf>(group_algebra(s3_table(), {}, "S3"))),
                    HopfPtr(std::make_shared<Hopf>(sweedler()))}) {
    CheckReport r = verify_base_algebra(regular_base(h));
    CHECK_MESSAGE(r.ok(), h->name << " " << r.first_failure());
    CheckReport d = verify_base_algebra(dual_base(h));
    CHECK_MESSAGE(d.ok(), h->name << " " << d.first_failure());
  }
}

TEST_CASE("double action and R-coactions on Z2") {
  auto z2 = std::make_shared<Hopf>(group_algebra(cyclic_table(2), {}, "Z2"));
  Double dd = drinfeld_double(z2);
  QT qt = verify_qt(dd.D, dd.Theta);
  BaseAlgebra b = regular_base(z2);
  ModuleAction da = double_action(b, dd);
  CHECK(verify_module(dd.D->alg, da).ok());
  CHECK(check_quasi_commutative(qt, b.L, da).ok());
  BaseAlgebra plus = coaction_from_R(qt, b.L, da, 1, "L+");
  BaseAlgebra minus = coaction_from_R(qt, b.L, da, -1, "L-");
  CHECK(verify_base_algebra(plus).ok());
  CHECK(verify_base_algebra(minus).ok());
}

TEST_CASE("invariants") {
  auto s3 = std::make_shared<Hopf>(group_algebra(s3_table(), {}, "S3"));
  // adjoint invariants of kS3 are the class sums: three conjugacy classes
  BaseAlgebra rb = regular_base(s3);
  CHECK(invariants(rb).rank() == 3);
  // functions on S3 with the translation action: only constants are invariant
  BaseAlgebra tb = translation_base(s3, "fn(S3)");
  CHECK(verify_base_algebra(tb).ok());
  CHECK(invariants(tb).rank() == 1);
  CHECK(is_quasi_transitive(tb));
}

TEST_CASE("braided tensor of regular bases") {
  auto z2 = std::make_shared<Hopf>(group_algebra(cyclic_table(2), {}, "Z2"));
  BaseAlgebra b = regular_base(z2);
  Algebra t = braided_tensor(b, b);
  CHECK(t.dim == 4);
  CHECK(verify_algebra(t).ok());
}
