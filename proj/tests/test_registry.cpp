#include <doctest.h>

#include <vector>

#include "relrank/registry.hpp"
#include "relrank/report.hpp"
#include "relrank/verify.hpp"

using namespace relrank;

TEST_CASE("function keys build what they say") {
  CHECK(make_natfn("identity")(9) == 9);
  CHECK(make_natfn("zero")(9) == 0);
  CHECK(make_natfn("one")(9) == 1);
  CHECK(make_natfn("const:42")(0) == 42);
  CHECK(make_natfn("succ")(9) == 10);
  CHECK(make_natfn("double")(9) == 18);
  CHECK(make_natfn("triple")(9) == 27);
  CHECK(make_natfn("lin:5:2")(9) == 47);
  CHECK(make_natfn("halve")(9) == 4);
  CHECK(make_natfn("s:evens")(4) == 4);
  CHECK(make_natfn("s:evens")(5) == 0);
  CHECK(make_natfn("ind:mult:3")(9) == 1);
  CHECK(make_natfn("coind:mult:3")(9) == 0);
  CHECK(make_natfn("enum:odds")(3) == 7);
  CHECK_THROWS(make_natfn("nonsense"));
  CHECK_THROWS(make_natfn("lin:5"));
  CHECK_THROWS(make_natfn("rand:0"));
}

TEST_CASE("linear keys carry exact inverse and coimage") {
  auto f = make_natfn("lin:3:1");
  REQUIRE(f.meta().inverse);
  CHECK(f.meta().inverse(7) == 2);
  CHECK(f.meta().inverse(10) == 3);
  CHECK(!f.meta().inverse(9).has_value());
  CHECK(!f.meta().inverse(0).has_value());

  // misses 0 and then two of every three: 0, 2, 3, 5, 6, 8, 9, ...
  REQUIRE(f.meta().coimage.has_value());
  const auto& co = *f.meta().coimage;
  std::vector<nat> first = {0, 2, 3, 5, 6, 8, 9};
  for (nat i = 0; i < first.size(); ++i) {
    CHECK(co.nth(i) == first[i]);
    CHECK(co.index_of(first[i]) == i);
  }
  CHECK(!co.index_of(7).has_value());
  for (nat i = 0; i < 500; ++i) CHECK(co.index_of(co.nth(i)) == i);

  // offset-only maps miss an initial segment
  auto s = make_natfn("lin:1:3");
  CHECK(s.meta().coimage->member(2));
  CHECK(!s.meta().coimage->member(3));
}

TEST_CASE("rand keys are seed-deterministic and bounded") {
  auto a = make_natfn("rand:10:3", 42);
  auto b = make_natfn("rand:10:3", 42);
  auto c = make_natfn("rand:10:4", 42);
  auto d = make_natfn("rand:10:3", 43);
  bool differs_salt = false, differs_seed = false;
  for (nat n = 0; n < 500; ++n) {
    CHECK(a(n) < 10);
    CHECK(a(n) == b(n));
    differs_salt = differs_salt || a(n) != c(n);
    differs_seed = differs_seed || a(n) != d(n);
  }
  CHECK(differs_salt);
  CHECK(differs_seed);
  CHECK(a.meta().image_bound == 10);
}

TEST_CASE("ukm keys sample members of the right family") {
  auto f = make_natfn("ukm:2:3:1", 7);
  for (nat i = 0; i < 2; ++i) CHECK(f(i) == i);
  for (nat i = 2; i < 100; ++i) {
    CHECK(f(i) >= 2);
    CHECK(f(i) < 5);
  }
}

TEST_CASE("set keys build what they say") {
  CHECK(make_setrep("evens").member(4));
  CHECK(make_setrep("odds").member(5));
  CHECK(make_setrep("mult:7").member(21));
  CHECK(make_setrep("mod:5:2").member(12));
  CHECK(!make_setrep("mod:5:2").member(13));
  CHECK(make_setrep("finite:[1,2,3]").member(2));
  CHECK(make_setrep("finite:[]").kind() == SetRep::Kind::finite);
  CHECK(!make_setrep("cofinite:[4]").member(4));
  CHECK(make_setrep("slice:2").member(3));
  CHECK(make_setrep("tuple:[0,0]").member(cantor_pair(2, 9)));
  CHECK_THROWS(make_setrep("mod:5:7"));
  CHECK_THROWS(make_setrep("branch:"));
  CHECK_THROWS(make_setrep("branch:012"));
}

TEST_CASE("branch keys follow the path, padded or repeated") {
  auto padded = make_setrep("branch:01");  // 0,1,0,0,0,...
  CHECK(padded.nth(0) == 1);
  CHECK(padded.nth(1) == 4);
  CHECK(padded.nth(2) == 9);
  CHECK(padded.nth(3) == 19);  // fourth bit is the pad 0

  auto repeated = make_setrep("branch:01~");  // 0,1,0,1,...
  CHECK(repeated.nth(3) == 20);  // fourth bit repeats to 1
}

TEST_CASE("randset keys give dense seed-stable sets") {
  auto a = make_setrep("randset:5", 1);
  auto b = make_setrep("randset:5", 1);
  nat members = 0;
  for (nat n = 0; n < 2000; ++n) {
    CHECK(a.member(n) == b.member(n));
    if (a.member(n)) ++members;
  }
  CHECK(members > 700);
  CHECK(members < 1300);
}

TEST_CASE("banach bases refuse surjective maps") {
  CHECK_THROWS(banach_base(1, 0));
  auto [f, residues] = banach_base(2, 0);
  CHECK(residues.member(0));
  CHECK(residues.size() == 1);
  auto [g, none] = banach_base(4, 3);
  CHECK(none.size() == 0);
  CHECK(g(2) == 11);
}

TEST_CASE("reports render stably in both formats") {
  RunReport r;
  r.command = "demo";
  r.parameters = {{"n", 3}};
  r.pass("first", 100);
  r.fail("second", {{"witness", 7}});
  r.inconclusive("third", 50);

  CHECK(r.count(Verdict::pass) == 1);
  CHECK(r.count(Verdict::fail) == 1);
  CHECK(r.exit_code() == 1);

  auto j1 = to_json(r);
  auto j2 = to_json(r);
  CHECK(j1 == j2);
  CHECK(j1.find("\"schema\": \"1\"") != std::string::npos);
  CHECK(j1.find("wall_ms") == std::string::npos);  // not set, not rendered

  auto t = to_table(r);
  CHECK(t.find("[fail] second") != std::string::npos);
  CHECK(t.find("1 pass, 1 fail, 1 inconclusive") != std::string::npos);
}

TEST_CASE("the invariant battery passes and renders byte-identically") {
  auto r1 = verify_all(256, 7, 1 << 14);
  auto r2 = verify_all(256, 7, 1 << 14);
  CHECK(r1.count(Verdict::fail) == 0);
  CHECK(to_json(r1) == to_json(r2));
}
