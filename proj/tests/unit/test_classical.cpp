#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "forge/classical.hpp"
#include "json.hpp"

using namespace forge;
using M = MV<RationalBase>;

namespace {
nlohmann::json oracle() {
  std::ifstream in(std::string(FORGE_ORACLES) + "/cdybe_sl2_expected.json");
  std::stringstream ss;
  ss << in.rdbuf();
  return nlohmann::json::parse(ss.str());
}
}  // namespace

TEST_CASE("rational functions") {
  RatFunc a = parse_ratfunc("-(l - 4)/(4*l)", 1);
  RatFunc b = parse_ratfunc("1/l - 1/4", 1);
  CHECK((a - b).is_zero());
  CHECK_THROWS_AS(parse_ratfunc("1/(l-l)", 1), InputError);
  CHECK_THROWS_AS(parse_ratfunc("(l", 1), InputError);
}

TEST_CASE("Lie algebras and bialgebras") {
  CHECK(verify_lie(sl2_lie()).ok());
  CHECK(verify_lie(borel_sl2_lie()).ok());
  CHECK(verify_lie_bialgebra(borel_sl2_bialgebra()).ok());
  CHECK(verify_lie_double(lie_double_unchecked(borel_sl2_bialgebra())).ok());
  // nu(h) = e^f on sl2 is not a 1-cocycle
  auto bad = LieBialgebra::from_wedge(sl2_lie(), {{}, {}, {{{0, 1}, Scalar(1)}}});
  CHECK_FALSE(verify_lie_bialgebra(bad).ok());
}

TEST_CASE("sl2/Cartan phi matches the symbolic oracle") {
  auto j = oracle();
  ClassicalSetup s = sl2_cartan_setup();
  RationalBase base = rational_cartan_base();
  Index n = s.n();
  auto check_phi = [&](const std::string& c, const nlohmann::json& expected) {
    auto dyn = verify_dynamical_rmatrix(s, base, M::basis(base, 0b011, parse_ratfunc(c, 1)));
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index k = 0; k < n; ++k) {
          std::string key = std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(k);
          RatFunc want = expected.contains(key) ? parse_ratfunc(expected[key].get<std::string>(), 1) : RatFunc();
          CHECK_MESSAGE((dyn.phi_tensor[(a * n + b) * n + k] - want).is_zero(), key);
        }
    return dyn.report;
  };
  std::string acc = j["c_accepted"];
  CHECK(check_phi(acc, j["phi_accepted"]).ok());
  CHECK_FALSE(check_phi(acc + " + 1", j["phi_perturbed"]).ok());
}

TEST_CASE("cross-check verdicts agree") {
  ClassicalSetup s = sl2_cartan_setup();
  RationalBase base = rational_cartan_base();
  for (std::string c : {"-2/l", "-2/l + 1", "0", "1"}) {
    CheckReport r = cdybe_cross_check(s, base, M::basis(base, 0b011, parse_ratfunc(c, 1)));
    REQUIRE(r.find("agreement"));
    CHECK_MESSAGE(r.find("agreement")->status == Status::Pass, c);
  }
}

TEST_CASE("Schouten identities on random triples") {
  ClassicalSetup s = sl2_cartan_setup();
  RationalBase base = rational_cartan_base();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto P = M::random(base, s.V, 1 + t % 3, 2, rng), Q = M::random(base, s.V, 1 + t % 2, 2, rng),
         R = M::random(base, s.V, 1 + (t / 2) % 2, 2, rng);
    CHECK(schouten_identities(base, s.V, P, Q, R).ok());
  }
}

TEST_CASE("Lie bialgebroid compatibility follows the cocycle property") {
  CHECK(lie_bialgebroid_compat(rational_cartan_base(), LieBialgebra::zero(abelian_lie({"H"}))).ok());
  CHECK(lie_bialgebroid_compat(points_base(2, 4), borel_sl2_bialgebra()).ok());
  auto bad = LieBialgebra::from_wedge(sl2_lie(), {{}, {}, {{{0, 1}, Scalar(1)}}});
  CHECK_FALSE(lie_bialgebroid_compat(points_base(1, 6), bad).ok());
}
