#include <doctest.h>

#include <atomic>
#include <thread>
#include <vector>

#include "relrank/natfn.hpp"
#include "relrank/registry.hpp"

using namespace relrank;

TEST_CASE("identity and constants") {
  CHECK(NatFn::identity()(17) == 17);
  CHECK(NatFn::constant(5)(123) == 5);
  CHECK(NatFn::constant(5).meta().image_bound == 1);
  // identity knows it misses nothing
  REQUIRE(NatFn::identity().meta().coimage.has_value());
  CHECK(!NatFn::identity().meta().coimage->member(0));
}

TEST_CASE("compose applies right factor first") {
  auto f = compose(make_natfn("succ"), make_natfn("double"));  // 2n + 1
  for (nat n = 0; n < 100; ++n) CHECK(f(n) == 2 * n + 1);
  auto g = compose(make_natfn("double"), make_natfn("succ"));  // 2n + 2
  CHECK(g(3) == 8);
}

TEST_CASE("power iterates") {
  auto f = power(make_natfn("double"), 3);
  CHECK(f(5) == 40);
  CHECK(power(make_natfn("double"), 0)(9) == 9);
  auto a = agree_on_prefix(f, make_natfn("lin:8:0"), 2000);
  CHECK(a.agree);
}

TEST_CASE("metadata propagates through composition") {
  auto d = make_natfn("double");
  auto s = make_natfn("succ");
  auto c = compose(s, d);  // injective, inverse (y-1)/2
  REQUIRE(c.meta().injective.has_value());
  CHECK(c.meta().injective->kind == Provenance::Kind::by_construction);
  REQUIRE(c.meta().inverse);
  CHECK(c.meta().inverse(7) == 3);
  CHECK(!c.meta().inverse(8).has_value());

  // image bound is the min of the present bounds
  auto r = make_natfn("rand:10");
  CHECK(compose(make_natfn("rand:100:1"), r).meta().image_bound == 10);
  CHECK(compose(r, make_natfn("rand:100:1")).meta().image_bound == 10);
}

TEST_CASE("inverse of a power unwinds step by step") {
  auto f8 = power(make_natfn("double"), 3);
  REQUIRE(f8.meta().inverse);
  CHECK(f8.meta().inverse(40) == 5);
  CHECK(!f8.meta().inverse(12).has_value());
}

TEST_CASE("agreement reports the least disagreement") {
  auto a = agree_on_prefix(make_natfn("double"), make_natfn("lin:2:0"), 5000);
  CHECK(a.agree);
  auto b = agree_on_prefix(make_natfn("double"), make_natfn("triple"), 5000);
  CHECK(!b.agree);
  CHECK(b.first_diff == 1);  // they agree at 0 only
}

TEST_CASE("prefixes are plain value tables") {
  CHECK(prefix_of(make_natfn("succ"), 4) == Prefix{1, 2, 3, 4});
}

TEST_CASE("renaming changes nothing but the label") {
  auto f = make_natfn("double").renamed("twice");
  CHECK(f.name() == "twice");
  CHECK(f(21) == 42);
}

TEST_CASE("cached evaluation is transparent and thread-safe") {
  std::atomic<int> calls{0};
  auto slow = NatFn::make("counted", [&calls](nat n) {
    calls++;
    return mix64(n) % 1000;
  }, /*cache=*/true);

  // warm half the range on one thread
  std::vector<nat> expect(2000);
  for (nat n = 0; n < 1000; ++n) expect[n] = slow(n);
  for (nat n = 1000; n < 2000; ++n) expect[n] = mix64(n) % 1000;

  std::vector<std::thread> pool;
  std::atomic<bool> ok{true};
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&] {
      for (nat n = 0; n < 2000; ++n)
        if (slow(n) != expect[n]) ok = false;
    });
  for (auto& th : pool) th.join();
  CHECK(ok);
  // each argument computed at most once despite 4 threads hammering
  CHECK(calls <= 2000);
}
