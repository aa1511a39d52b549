#include <doctest.h>

#include <algorithm>

#include "relrank/oracle.hpp"
#include "relrank/registry.hpp"
#include "relrank/ukm.hpp"

using namespace relrank;

TEST_CASE("finite maps pack densely and unpack") {
  FiniteMap f(3, {1, 2, 0});
  CHECK(f.pack() == 1 + 2 * 3 + 0 * 9);
  CHECK(FiniteMap::unpack(3, f.pack()) == f);
  CHECK(f.image_size() == 3);
  CHECK(f.surjective());

  for (nat code = 0; code < 27; ++code) CHECK(FiniteMap::unpack(3, code).pack() == code);
  CHECK_THROWS(FiniteMap(3, {0, 1, 3}));  // value out of range
  CHECK_THROWS(FiniteMap(8, {0, 0, 0, 0, 0, 0, 0, 0}));  // too many points
}

TEST_CASE("composition is function application order") {
  FiniteMap f(3, {1, 2, 0});  // rotation
  FiniteMap g(3, {0, 0, 1});
  auto fg = f.after(g);  // f(g(i))
  CHECK(fg(0) == 1);
  CHECK(fg(1) == 1);
  CHECK(fg(2) == 2);
}

TEST_CASE("truncation clamps large values") {
  auto t = FiniteMap::truncate(make_natfn("double"), 4);
  CHECK(t.table() == std::vector<nat>{0, 2, 3, 3});
  // members of U(2,3) restrict exactly when the window fits
  auto u = FiniteMap::truncate(sample_ukm_member({2, 3}, 5), 5);
  CHECK(u(0) == 0);
  CHECK(u(1) == 1);
  for (nat i = 2; i < 5; ++i) CHECK(u(i) >= 2);
}

TEST_CASE("all_maps counts n^n and image filter is exact") {
  CHECK(all_maps(2).size() == 4);
  CHECK(all_maps(3).size() == 27);
  // image <= 2 on 3 points: everything except the 6 bijections
  auto small = maps_with_image_at_most(3, 2);
  CHECK(small.size() == 21);
  for (const auto& f : small) CHECK(f.image_size() <= 2);
}

TEST_CASE("saturation closes the small-image maps onto themselves") {
  auto closure = saturate(maps_with_image_at_most(3, 2));
  CHECK(closure.size() == 21);
  CHECK(std::none_of(closure.begin(), closure.end(),
                     [](const FiniteMap& f) { return f.surjective(); }));
  // canonical order: sorted by pack index
  CHECK(std::is_sorted(closure.begin(), closure.end(),
                       [](const FiniteMap& a, const FiniteMap& b) { return a.pack() < b.pack(); }));
}

TEST_CASE("a cycle and a merging map generate everything they should") {
  FiniteMap cyc(3, {1, 2, 0});
  FiniteMap transp(3, {1, 0, 2});
  FiniteMap merge(3, {0, 0, 2});
  // the classical three-generator set reaches the whole monoid on 3 points
  CHECK(saturate({cyc, transp, merge}).size() == 27);
  CHECK(contains_generated(all_maps(3), {cyc, transp, merge}));
  // without the transposition the odd permutations are out of reach: any
  // word through the merge has image size <= 2, and merge-free words are
  // powers of the cycle, so exactly 27 - 3 maps remain
  CHECK(saturate({cyc, merge}).size() == 24);
  // a constant absorbs everything around it, so swapping the merge for a
  // constant collapses the closure to the permutations plus the constants
  CHECK(saturate({cyc, transp, FiniteMap(3, {0, 0, 0})}).size() == 9);
  // the cycle alone closes into its powers
  CHECK(saturate({cyc}).size() == 3);
}

TEST_CASE("small-image maps absorb composition both ways") {
  CHECK(ideal_check(3, 2).holds);
  CHECK(ideal_check(4, 2).holds);
  CHECK(ideal_check(4, 3).holds);
  CHECK(ideal_check(5, 1).holds);
}
