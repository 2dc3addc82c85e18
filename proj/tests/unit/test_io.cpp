#include "doctest.h"
#include "forge/io.hpp"
#include "forge/smash.hpp"

using namespace forge;

namespace {
std::string fixture(const std::string& f) { return std::string(FORGE_FIXTURES) + "/" + f; }
}  // namespace

TEST_CASE("hopf export round trip is bit-identical") {
  for (std::string name : {"sweedler", "taft:3", "double(Z2)", "dual(S3)"}) {
    HopfPtr h = resolve_hopf(name);
    std::string a = hopf_to_json(*h);
    Hopf back = hopf_from_json(a, name);
    CHECK(back.alg.table == h->alg.table);
    CHECK(back.cop == h->cop);
    CHECK(back.S == h->S);
    CHECK(hopf_to_json(back) == a);
  }
}

TEST_CASE("bialgebroid export round trip") {
  auto b = resolve_base("base:adjZ2");
  SmashBialgebroid sb = smash_product(b);
  std::string a = bialgebroid_to_json(sb.B);
  Bialgebroid back = bialgebroid_from_json(a, "mem");
  CHECK(back.B.table == sb.B.B.table);
  CHECK(back.cop == sb.B.cop);
  CHECK(bialgebroid_to_json(back) == a);
  CHECK(verify_bialgebroid(back).ok());
}

TEST_CASE("lie bialgebra round trip") {
  LieBialgebra b = borel_sl2_bialgebra();
  LieBialgebra back = lie_bialgebra_from_json(lie_bialgebra_to_json(b), "mem");
  CHECK(back.h.c == b.h.c);
  CHECK(back.nu == b.nu);
}

TEST_CASE("parse errors carry line and column") {
  try {
    hopf_from_json(read_file(fixture("broken.json")), "broken.json");
    FAIL("no error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("broken.json:6:3") != std::string::npos);
  }
  CHECK_THROWS_AS(group_from_json(read_file(fixture("notagroup.json")), "notagroup.json"), InputError);
  CHECK_THROWS_AS(hopf_from_json("{\"kind\":\"hopf\",\"dim\":2}", "x"), InputError);
  CHECK_THROWS_AS(resolve_hopf("nosuch"), InputError);
  CHECK_THROWS_AS(resolve_hopf("taft:3", 4), InputError);
}

TEST_CASE("fixtures") {
  Hopf sw = hopf_from_json(read_file(fixture("sweedler.json")), "sweedler.json");
  CHECK(verify_hopf(sw).ok());
  auto swp = std::make_shared<Hopf>(sw);
  Vec R = rmatrix_from_json(read_file(fixture("R_bad.json")), "R_bad.json", sw);
  CheckReport r = check_qt(swp, R);
  CHECK_FALSE(r.ok());
  CHECK(r.find("intertwining")->status == Status::Fail);
}

TEST_CASE("catalog resolves") {
  for (const auto& e : catalog()) {
    if (e.kind == "hopf") CHECK(verify_hopf(*resolve_hopf(e.name == "taft:n" ? "taft:3" : e.name)).ok());
    if (e.kind == "base") CHECK(verify_base_algebra(*resolve_base(e.name)).ok());
  }
  CHECK(resolve_cdybe("sl2-cartan").r.size() == 1);
}

TEST_CASE("report json round trip") {
  CheckReport r;
  r.object = "x";
  r.pass("a");
  r.fail("b", "residual {1:-1/2}");
  r.info("c", "note");
  CheckReport back = CheckReport::from_json(r.to_json());
  CHECK(back.object == "x");
  REQUIRE(back.lines.size() == 3);
  CHECK(back.lines[1].status == Status::Fail);
  CHECK(back.lines[1].witness == "residual {1:-1/2}");
  CHECK_FALSE(back.ok());
}
