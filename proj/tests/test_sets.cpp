#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "relrank/natfn.hpp"
#include "relrank/registry.hpp"
#include "relrank/sets.hpp"

using namespace relrank;

TEST_CASE("cantor pairing matches the closed form on small values") {
  // (a+b)(a+b+1)/2 + b, worked by hand
  CHECK(cantor_pair(0, 0) == 0);
  CHECK(cantor_pair(1, 0) == 1);
  CHECK(cantor_pair(0, 1) == 2);
  CHECK(cantor_pair(2, 0) == 3);
  CHECK(cantor_pair(1, 1) == 4);
  CHECK(cantor_pair(0, 2) == 5);
  CHECK(cantor_pair(0, 4) == 14);

  auto [a, b] = cantor_unpair(14);
  CHECK(a == 0);
  CHECK(b == 4);
}

TEST_CASE("cantor pairing round trips") {
  for (nat n = 0; n < 5000; ++n) {
    auto [a, b] = cantor_unpair(n);
    CHECK(cantor_pair(a, b) == n);
  }
  // and from the pair side
  for (nat a = 0; a < 40; ++a)
    for (nat b = 0; b < 40; ++b) {
      auto [x, y] = cantor_unpair(cantor_pair(a, b));
      CHECK(x == a);
      CHECK(y == b);
    }
}

TEST_CASE("cantor pairing survives large inputs") {
  nat big = nat(1) << 31;
  auto [a, b] = cantor_unpair(cantor_pair(big, big + 3));
  CHECK(a == big);
  CHECK(b == big + 3);
  CHECK_THROWS_AS(cantor_pair(nat(1) << 63, nat(1) << 63), std::overflow_error);
}

TEST_CASE("tuple codes are injective and decode back") {
  CHECK(tuple_code(std::vector<nat>{}) == 0);
  CHECK(tuple_code(std::vector<nat>{0}) == 1);
  CHECK(tuple_code(std::vector<nat>{0, 0}) == 2);
  CHECK(tuple_code(std::vector<nat>{1}) == 3);
  CHECK(tuple_code(std::vector<nat>{0, 1}) == 5);
  CHECK(tuple_code(std::vector<nat>{1, 0}) == 7);

  // codes roughly square per appended entry, so length 3 over values < 100
  // already reaches ~1e14; anything longer would blow past 64 bits.
  Rng rng(42);
  for (int t = 0; t < 500; ++t) {
    std::vector<nat> tuple(rng.below(4));
    for (auto& x : tuple) x = rng.below(100);
    CHECK(tuple_decode(tuple_code(tuple)) == tuple);
  }
  CHECK_THROWS_AS(tuple_code(std::vector<nat>(5, 1000)), std::overflow_error);
}

TEST_CASE("sequence codes enumerate binary strings in length order") {
  CHECK(seq_code(std::vector<nat>{}) == 0);
  CHECK(seq_code(std::vector<nat>{0}) == 1);
  CHECK(seq_code(std::vector<nat>{1}) == 2);
  CHECK(seq_code(std::vector<nat>{0, 0}) == 3);
  CHECK(seq_code(std::vector<nat>{0, 1}) == 4);
  CHECK(seq_code(std::vector<nat>{1, 0}) == 5);
  CHECK(seq_code(std::vector<nat>{1, 1}) == 6);
  for (nat c = 0; c < 4096; ++c) CHECK(seq_code(seq_decode(c)) == c);
  // codes of length-k strings fill [2^k - 1, 2^(k+1) - 1)
  CHECK(seq_decode(7).size() == 3);
  CHECK(seq_decode(14).size() == 3);
}

TEST_CASE("built-in sets enumerate what they claim") {
  CHECK(SetRep::evens().nth(3) == 6);
  CHECK(SetRep::odds().nth(0) == 1);
  CHECK(SetRep::odds().index_of(7) == 3);
  CHECK(!SetRep::odds().index_of(8).has_value());
  CHECK(SetRep::multiples(3).nth(2) == 6);
  CHECK(SetRep::residue_class(5, 2).nth(0) == 2);
  CHECK(SetRep::residue_class(5, 2).nth(3) == 17);
  CHECK(SetRep::all().nth(17) == 17);
  CHECK(!SetRep::empty().member(0));

  for (nat i = 0; i < 200; ++i) {
    CHECK(SetRep::evens().member(SetRep::evens().nth(i)));
    CHECK(SetRep::evens().index_of(SetRep::evens().nth(i)) == i);
  }
}

TEST_CASE("finite and cofinite sets keep their defining lists") {
  auto f = SetRep::finite({2, 3, 10});
  CHECK(f.kind() == SetRep::Kind::finite);
  CHECK(f.size() == 3);
  CHECK(f.member(3));
  CHECK(!f.member(4));
  CHECK(f.nth(2) == 10);
  CHECK_THROWS(f.nth(3));

  auto c = SetRep::cofinite({0, 5});
  CHECK(c.kind() == SetRep::Kind::cofinite);
  CHECK(!c.member(5));
  CHECK(c.member(6));
  // enumeration skips the exclusions: 1,2,3,4,6,7,...
  CHECK(c.nth(0) == 1);
  CHECK(c.nth(4) == 6);
  CHECK(c.index_of(6) == 4);
  CHECK(!c.index_of(5).has_value());
  for (nat i = 0; i < 100; ++i) CHECK(c.index_of(c.nth(i)) == i);
}

TEST_CASE("intersection and complement preserve exact structure") {
  auto i = set_intersection(SetRep::finite({1, 2, 3, 8}), SetRep::odds());
  CHECK(i.kind() == SetRep::Kind::finite);
  CHECK(i.member(1));
  CHECK(i.member(3));
  CHECK(!i.member(2));
  CHECK(!i.member(8));

  auto c = set_complement(SetRep::finite({0, 1}));
  CHECK(c.kind() == SetRep::Kind::cofinite);
  CHECK(!c.member(1));
  CHECK(c.member(2));

  auto g = set_intersection(SetRep::evens(), SetRep::multiples(3));
  for (nat n = 0; n < 300; ++n) CHECK(g.member(n) == (n % 6 == 0));
}

TEST_CASE("pairing slices partition the naturals") {
  auto s2 = tuple_slice(2);
  CHECK(s2.nth(0) == 3);   // pair(2,0)
  CHECK(s2.nth(1) == 7);   // pair(2,1)
  CHECK(s2.nth(2) == 12);  // pair(2,2)
  CHECK(s2.index_of(7) == 1);

  // every n < 500 lies in exactly one of the first slices
  for (nat n = 0; n < 500; ++n) {
    auto [t, j] = cantor_unpair(n);
    CHECK(tuple_slice(t).member(n));
    CHECK(tuple_slice(t).index_of(n) == j);
    CHECK(!tuple_slice(t + 1).member(n));
  }

  // slice addressed by a tuple uses the tuple's code
  auto st = tuple_slice_of(std::vector<nat>{0, 0});
  CHECK(st.member(cantor_pair(2, 5)));
}

TEST_CASE("backward orbits of doubling classify by depth") {
  auto f = make_natfn("double");
  auto o = classify_orbit(f, 12, 64);
  CHECK(o.kind == OrbitClass::Kind::terminates);
  CHECK(o.depth == 2);  // 12 -> 6 -> 3
  CHECK(o.root == 3);

  auto odd = classify_orbit(f, 9, 64);
  CHECK(odd.kind == OrbitClass::Kind::terminates);
  CHECK(odd.depth == 0);

  // 0 -> 0 -> ... never reaches an odd number
  auto zero = classify_orbit(f, 0, 64);
  CHECK(zero.kind == OrbitClass::Kind::cycles);
}

TEST_CASE("orbit levels are the forward copies of the coimage") {
  auto f = make_natfn("double");
  auto x1 = orbit_level(f, 1);
  CHECK(x1.member(6));    // 2 * 3
  CHECK(!x1.member(4));   // 4 = 2*2 sits at depth 2
  CHECK(!x1.member(3));
  auto x0 = orbit_level(f, 0);
  for (nat n = 1; n < 100; ++n) CHECK(x0.member(n) == (n % 2 == 1));
}

TEST_CASE("enumerated sets fall back to scanning for membership") {
  auto s = SetRep::enumerated("squares", [](nat i) { return i * i; });
  CHECK(s.member(49));
  CHECK(!s.member(50));
  CHECK(s.index_of(49) == 7);
  CHECK(s.first(4) == std::vector<nat>{0, 1, 4, 9});
}
