#include "relrank/oracle.hpp"

#include <algorithm>
#include <deque>

namespace relrank {

FiniteMap::FiniteMap(nat n, std::vector<nat> table) : n_(n), t_(std::move(table)) {
  if (n == 0 || n > kMaxPoints)
    throw std::invalid_argument("FiniteMap: need 1 <= n <= " + std::to_string(kMaxPoints));
  if (t_.size() != n) throw std::invalid_argument("FiniteMap: table size != n");
  for (nat v : t_)
    if (v >= n) throw std::invalid_argument("FiniteMap: value out of range");
}

FiniteMap FiniteMap::identity(nat n) {
  std::vector<nat> t(n);
  for (nat i = 0; i < n; ++i) t[i] = i;
  return FiniteMap(n, std::move(t));
}

FiniteMap FiniteMap::constant(nat n, nat v) { return FiniteMap(n, std::vector<nat>(n, v)); }

FiniteMap FiniteMap::truncate(const NatFn& f, nat n) {
  std::vector<nat> t(n);
  for (nat i = 0; i < n; ++i) t[i] = std::min(f(i), n - 1);
  return FiniteMap(n, std::move(t));
}

nat FiniteMap::at(nat i) const {
  if (i >= n_) throw std::out_of_range("FiniteMap::at");
  return t_[i];
}

FiniteMap FiniteMap::after(const FiniteMap& g) const {
  if (g.n_ != n_) throw std::invalid_argument("FiniteMap::after: point count mismatch");
  std::vector<nat> t(n_);
  for (nat i = 0; i < n_; ++i) t[i] = t_[g.t_[i]];
  return FiniteMap(n_, std::move(t));
}

nat FiniteMap::image_size() const {
  bool seen[kMaxPoints] = {};
  nat count = 0;
  for (nat v : t_)
    if (!seen[v]) {
      seen[v] = true;
      ++count;
    }
  return count;
}

nat FiniteMap::pack() const {
  nat p = 0;
  for (nat i = n_; i-- > 0;) p = p * n_ + t_[i];
  return p;
}

FiniteMap FiniteMap::unpack(nat n, nat packed) {
  std::vector<nat> t(n);
  for (nat i = 0; i < n; ++i) {
    t[i] = packed % n;
    packed /= n;
  }
  return FiniteMap(n, std::move(t));
}

std::string FiniteMap::str() const {
  std::string s = "[";
  for (nat i = 0; i < n_; ++i) {
    if (i) s += ",";
    s += std::to_string(t_[i]);
  }
  return s + "]";
}

std::vector<FiniteMap> all_maps(nat n) {
  nat total = 1;
  for (nat i = 0; i < n; ++i) total *= n;
  std::vector<FiniteMap> out;
  out.reserve(total);
  for (nat p = 0; p < total; ++p) out.push_back(FiniteMap::unpack(n, p));
  return out;
}

std::vector<FiniteMap> maps_with_image_at_most(nat n, nat k) {
  std::vector<FiniteMap> out;
  for (FiniteMap& m : all_maps(n))
    if (m.image_size() <= k) out.push_back(std::move(m));
  return out;
}

std::vector<FiniteMap> saturate(const std::vector<FiniteMap>& gens) {
  if (gens.empty()) return {};
  const nat n = gens.front().points();
  for (const FiniteMap& g : gens)
    if (g.points() != n) throw std::invalid_argument("saturate: mixed point counts");

  nat total = 1;
  for (nat i = 0; i < n; ++i) total *= n;
  std::vector<bool> seen(total, false);
  std::deque<FiniteMap> queue;
  std::vector<FiniteMap> closure;

  auto push = [&](const FiniteMap& m) {
    nat p = m.pack();
    if (!seen[p]) {
      seen[p] = true;
      queue.push_back(m);
      closure.push_back(m);
    }
  };
  for (const FiniteMap& g : gens) push(g);

  // Every product of generators is reachable by right-multiplying an
  // already-reached word by one more generator.
  while (!queue.empty()) {
    FiniteMap a = queue.front();
    queue.pop_front();
    for (const FiniteMap& g : gens) push(a.after(g));
  }
  std::sort(closure.begin(), closure.end(),
            [](const FiniteMap& x, const FiniteMap& y) { return x.pack() < y.pack(); });
  return closure;
}

bool contains_generated(const std::vector<FiniteMap>& targets, const std::vector<FiniteMap>& gens,
                        const std::vector<FiniteMap>& extra) {
  std::vector<FiniteMap> all = gens;
  all.insert(all.end(), extra.begin(), extra.end());
  std::vector<FiniteMap> closure = saturate(all);
  auto in = [&](const FiniteMap& m) {
    return std::any_of(closure.begin(), closure.end(), [&](const FiniteMap& c) { return c == m; });
  };
  return std::all_of(targets.begin(), targets.end(), in);
}

IdealCheck ideal_check(nat n_points, nat k) {
  std::vector<FiniteMap> small = maps_with_image_at_most(n_points, k);
  std::vector<FiniteMap> all = all_maps(n_points);
  for (const FiniteMap& a : small)
    for (const FiniteMap& b : all) {
      if (a.after(b).image_size() > k)
        return {false, a.str() + " . " + b.str()};
      if (b.after(a).image_size() > k)
        return {false, b.str() + " . " + a.str()};
    }
  return {true, ""};
}

}  // namespace relrank
