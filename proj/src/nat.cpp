#include "relrank/nat.hpp"

namespace relrank {

nat isqrt(nat n) {
  if (n < 2) return n;
  // Newton iteration on integers; converges in a handful of steps and is
  // exact where a double-based sqrt can be off by one near 2^53.
  nat x = n;
  nat y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  auto sq = [](nat v) { return static_cast<unsigned __int128>(v) * v; };
  while (sq(x + 1) <= n) ++x;  // guard against undershoot
  while (sq(x) > n) --x;
  return x;
}

nat mix64(nat x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

nat seeded_at(nat seed, nat index) { return mix64(seed * 0x2545f4914f6cdd1dull + index); }

}  // namespace relrank
