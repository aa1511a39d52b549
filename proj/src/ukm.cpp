#include "relrank/ukm.hpp"

namespace relrank {

CheckResult ukm_member(const NatFn& f, UkmParams p, nat len) {
  if (len <= p.k) throw std::invalid_argument("ukm_member: len must exceed k");
  for (nat i = 0; i < len; ++i) {
    nat v = f(i);
    if (i < p.k ? v != i : (v < p.k || v >= p.k + p.m)) return {false, i};
  }
  return {true, std::nullopt};
}

bool ukm_order(UkmParams a, UkmParams b) { return a.m <= b.m && a.k + a.m <= b.k + b.m; }

EmbedMaps ukm_embed_maps(UkmParams from, UkmParams to) {
  if (!ukm_order(from, to))
    throw std::invalid_argument("ukm_embed_maps: U(" + std::to_string(from.k) + "," +
                                std::to_string(from.m) + ") does not embed below U(" +
                                std::to_string(to.k) + "," + std::to_string(to.m) + ")");
  const nat k = from.k, m = from.m, l = to.k, n = to.m;
  const nat up = l + n - (k + m);    // shift applied by g above k
  const nat cut = l + n - m;         // h is the down-shift from here on

  NatFn g = NatFn::make("ukm_g", [k, up](nat i) { return i < k ? i : i + up; });
  {
    FnMeta meta;
    meta.injective = Provenance::constructed();
    meta.inverse = [k, up](nat y) -> std::optional<nat> {
      if (y < k) return y;
      if (y < k + up) return std::nullopt;  // the gap g skips over
      return y - up;
    };
    g = g.with_meta(std::move(meta));
  }

  // Pinned to the identity on the middle gap [k, cut); only the values on
  // g's image matter for h.g = identity.
  NatFn h = NatFn::make("ukm_h", [k, cut, up](nat i) {
    if (i < k) return i;
    if (i < cut) return i;
    return i - up;
  });
  return {g, h};
}

NatFn ukm_transport(const NatFn& f, UkmParams from, UkmParams to, nat check_len) {
  CheckResult member = ukm_member(f, from, std::max<nat>(check_len, from.k + 1));
  if (!member.ok)
    throw std::invalid_argument("ukm_transport: f is not in U(" + std::to_string(from.k) + "," +
                                std::to_string(from.m) + ") at " + std::to_string(*member.witness));
  EmbedMaps maps = ukm_embed_maps(from, to);
  const nat cut = to.k + to.m - from.m;
  NatFn g = maps.g, h = maps.h;
  return NatFn::make("ukm_transport:" + f.name(),
                     [f, g, h, cut](nat i) { return i < cut ? i : g(f(h(i))); });
}

std::vector<UkmParams> antichain_params(nat i) {
  if (i == 0) throw std::invalid_argument("antichain_params: need i >= 1");
  std::vector<UkmParams> out;
  for (nat j = 0; j < i; ++j) out.emplace_back(2 * j, i + 1 - j);
  return out;
}

std::vector<std::vector<bool>> comparability_matrix(const std::vector<UkmParams>& params) {
  std::vector<std::vector<bool>> m(params.size(), std::vector<bool>(params.size(), false));
  for (size_t p = 0; p < params.size(); ++p)
    for (size_t q = 0; q < params.size(); ++q) m[p][q] = ukm_order(params[p], params[q]);
  return m;
}

NatFn sample_ukm_member(UkmParams p, nat seed) {
  const nat k = p.k, m = p.m;
  NatFn f = NatFn::make("ukm_member:" + std::to_string(k) + ":" + std::to_string(m) + ":" +
                            std::to_string(seed),
                        [k, m, seed](nat i) { return i < k ? i : k + seeded_at(seed, i) % m; });
  FnMeta meta;
  meta.image_bound = k + m;  // image inside [0, k+m)
  meta.image_bound_provenance = Provenance::constructed();
  return f.with_meta(std::move(meta));
}

}  // namespace relrank
