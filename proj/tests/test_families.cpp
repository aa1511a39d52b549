#include <doctest.h>

#include <vector>

#include "relrank/families.hpp"
#include "relrank/registry.hpp"

using namespace relrank;

TEST_CASE("s-maps fix members and crush the rest") {
  auto s = s_map(SetRep::evens());
  CHECK(s(4) == 4);
  CHECK(s(5) == 0);
  CHECK(s(0) == 0);
}

TEST_CASE("s-maps compose to the intersection") {
  auto A = SetRep::evens();
  auto B = SetRep::multiples(3);
  auto res = semilattice_check(A, B, 5000);
  CHECK(res.ok);

  // pointwise: s_A(s_B(n)) equals s over multiples of 6
  auto sa = s_map(A), sb = s_map(B);
  auto sab = s_map(set_intersection(A, B));
  for (nat n = 0; n < 500; ++n) CHECK(sa(sb(n)) == sab(n));
}

TEST_CASE("random decidable sets satisfy the semilattice law too") {
  for (nat t = 0; t < 10; ++t) {
    auto A = make_setrep("randset:" + std::to_string(2 * t), 99);
    auto B = make_setrep("randset:" + std::to_string(2 * t + 1), 99);
    CHECK(semilattice_check(A, B, 2000).ok);
  }
}

TEST_CASE("indicators are two-valued with known bound") {
  auto i = indicator(SetRep::evens());
  CHECK(i(4) == 1);
  CHECK(i(5) == 0);
  CHECK(i.meta().image_bound == 2);
  auto c = indicator_complement(SetRep::evens());
  CHECK(c(4) == 0);
  CHECK(c(5) == 1);
}

TEST_CASE("ideal tags refute by counting distinct values") {
  IdealTag two(2);
  CHECK(ideal_refute(std::vector<nat>{0, 1, 2}, two));
  CHECK(!ideal_refute(std::vector<nat>{5, 5, 7, 7, 5}, two));
  CHECK(!ideal_refute(std::vector<nat>{}, two));
  CHECK_THROWS(IdealTag(1));
}

namespace {
NatFn periodic_path(const std::string& bits) {
  std::vector<nat> block;
  for (char c : bits) block.push_back(static_cast<nat>(c - '0'));
  return NatFn::make("path:" + bits + "~",
                     [block](nat i) { return block[i % block.size()]; });
}
}  // namespace

TEST_CASE("branch sets hold exactly the prefix codes of their path") {
  // path 0101...: prefixes {0}, {0,1}, {0,1,0}, {0,1,0,1} code to 1, 4, 9, 20
  auto s = branch_set(periodic_path("01"));
  CHECK(s.nth(0) == 1);
  CHECK(s.nth(1) == 4);
  CHECK(s.nth(2) == 9);
  CHECK(s.nth(3) == 20);
  CHECK(s.member(9));
  CHECK(!s.member(10));
  CHECK(s.index_of(20) == 3);
  CHECK(!s.index_of(19).has_value());
}

TEST_CASE("distinct paths share exactly their common prefix codes") {
  auto fam = branch_family({periodic_path("0101"), periodic_path("0100")});
  const auto& note = fam.note(0, 1);
  REQUIRE(note.exact);
  CHECK(note.size == 3);
  CHECK(note.common == std::vector<nat>{1, 4, 9});

  // exhaustive cross-check below 2^16
  nat shared = 0;
  for (nat n = 0; n < (nat(1) << 16); ++n)
    if (fam.members[0].member(n) && fam.members[1].member(n)) ++shared;
  CHECK(shared == 3);
}

TEST_CASE("identical paths leave the intersection unresolved") {
  auto fam = branch_family({periodic_path("011"), periodic_path("011")});
  CHECK(!fam.note(0, 1).exact);
  CHECK(fam.note(0, 1).bound >= 1024);
}

TEST_CASE("lcp lengths drive pairwise intersections across a family") {
  auto fam = branch_family({periodic_path("0000"), periodic_path("0001"),
                            periodic_path("0010"), periodic_path("010")});
  // lcp(0000~, 0001~) = 3, lcp(0000~, 0010~) = 2, lcp(0000~, 010~) = 1
  CHECK(fam.note(0, 1).size == 3);
  CHECK(fam.note(0, 2).size == 2);
  CHECK(fam.note(0, 3).size == 1);
  CHECK(fam.note(2, 3).size == 1);  // 0010 vs 0100 agree on the first bit only
}

TEST_CASE("family indicators include complements and constants") {
  auto fam = branch_family({periodic_path("01"), periodic_path("10")});
  auto inds = family_indicators(fam);
  CHECK(inds.size() == 2 * fam.members.size() + 2);
  for (const auto& g : inds)
    for (nat n = 0; n < 64; ++n) CHECK(g(n) <= 1);
}

TEST_CASE("non-binary paths are rejected") {
  auto bad = NatFn::make("bad", [](nat n) { return n; });
  CHECK_THROWS(branch_family({bad}));
}
