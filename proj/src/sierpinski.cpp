#include "relrank/sierpinski.hpp"

#include <unordered_set>

namespace relrank {

// ---------------------------------------------------------------------------
// Core partition bookkeeping
// ---------------------------------------------------------------------------

struct BanachCore {
  NatFn f;
  std::vector<NatFn> gs;
  SetRep x0;  // coimage of f, with enumerator and index
  SetRep residues;
  bool res_finite = true;
  nat res_count = 0;
  nat orbit_budget = 256;

  // Cell layout over X_0 indices.  Finite residue set of size R: the first
  // R enumerator positions form X_{0,0} and position R + pair(i, t) is the
  // t-th point of X_{0,i+1}.  Infinite residue set: even positions form
  // X_{0,0}, position 2*pair(i, t) + 1 is the t-th point of X_{0,i+1}.
  std::pair<nat, nat> cell_of(nat j) const {
    if (res_finite) {
      if (j < res_count) return {0, j};
      auto [i, t] = cantor_unpair(j - res_count);
      return {i + 1, t};
    }
    if (j % 2 == 0) return {0, j / 2};
    auto [i, t] = cantor_unpair((j - 1) / 2);
    return {i + 1, t};
  }

  nat cell_index(nat level, nat t) const {
    if (res_finite) {
      if (level == 0) {
        if (t >= res_count) throw std::logic_error("banach: cell X_{0,0} has no slot " + std::to_string(t));
        return t;
      }
      return cantor_pair(level - 1, t) + res_count;
    }
    return level == 0 ? 2 * t : 2 * cantor_pair(level - 1, t) + 1;
  }

  nat x0_index(nat n) const {
    auto i = x0.index_of(n);
    if (!i) throw std::logic_error("banach: " + std::to_string(n) + " is not a coimage point");
    return *i;
  }

  nat f_pow(nat i, nat x) const {
    for (nat k = 0; k < i; ++k) x = f(x);
    return x;
  }

  nat residue_index(nat r) const {
    auto i = residues.index_of(r);
    if (!i) throw std::logic_error("banach: unattested residue point " + std::to_string(r));
    return *i;
  }

  // Inverse of the bijection h.f^level.h.f : N -> X_{0,level}.
  nat chain_inverse(nat level, nat np) const {
    auto [lvl, t] = cell_of(x0_index(np));
    if (lvl != level)
      throw std::logic_error("banach: point " + std::to_string(np) + " is not in cell " +
                             std::to_string(level));
    // Undo the outer h and the middle f^level in one step: the X_level point
    // that h sends to np has orbit root X_0[t], so the value before the
    // middle f^level is X_0[t], which sits at coimage position t.
    // Undo the inner h: position t was filled either from residue #t_b or
    // from the X_{l_b} point above X_0[t_b].
    auto [lb, tb] = cell_of(t);
    nat a = lb == 0 ? residues.nth(tb) : f_pow(lb, x0.nth(tb));
    // Undo the inner f.
    auto n = f.meta().inverse(a);
    if (!n)
      throw std::logic_error("banach: inverse oracle silent at " + std::to_string(a));
    return *n;
  }

  nat h_eval(nat n) const {
    // Residue points fill X_{0,0} in enumeration order.
    if (residues.member(n)) return x0.nth(cell_index(0, residue_index(n)));
    if (x0.member(n)) {
      auto [lvl, t] = cell_of(x0_index(n));
      (void)t;
      if (lvl == 0 || lvl > gs.size()) return 0;  // pinned outside the carried list
      return gs[lvl - 1](chain_inverse(lvl, n));
    }
    OrbitClass c = classify_orbit(f, n, orbit_budget);
    switch (c.kind) {
      case OrbitClass::Kind::terminates:
        // n is the depth-th forward copy of its root: map X_i -> X_{0,i}
        // preserving the root's enumeration index.
        return x0.nth(cell_index(c.depth, x0_index(c.root)));
      case OrbitClass::Kind::cycles:
        throw std::logic_error("banach: point " + std::to_string(n) +
                               " has a cyclic backward orbit but is not attested as residue");
      case OrbitClass::Kind::exhausted:
      default:
        throw std::runtime_error("banach: orbit budget exhausted at " + std::to_string(n));
    }
  }
};

namespace {

void validate_banach_inputs(const NatFn& f, const std::vector<NatFn>& gs, const BanachCore& core,
                            nat validate_len) {
  if (gs.empty()) throw std::invalid_argument("banach_h: gs must be nonempty (g_1 = gs[0])");
  const FnMeta& meta = f.meta();
  if (!meta.inverse) throw std::invalid_argument("banach_h: f lacks an inverse oracle");
  if (!meta.coimage) throw std::invalid_argument("banach_h: f lacks coimage metadata");
  if (!meta.coimage->has_enumerator())
    throw std::invalid_argument("banach_h: coimage of f has no enumerator");
  if (!meta.injective) throw std::invalid_argument("banach_h: f is not marked injective");

  // Spot-check the claims instead of trusting them outright.
  std::unordered_set<nat> values;
  for (nat n = 0; n < validate_len; ++n) {
    nat v = f(n);
    if (!values.insert(v).second)
      throw std::invalid_argument("banach_h: f is not injective (collision at " + std::to_string(n) + ")");
    if (core.x0.member(v))
      throw std::invalid_argument("banach_h: claimed coimage point " + std::to_string(v) +
                                  " is in the image of f");
    auto back = meta.inverse(v);
    if (!back || *back != n)
      throw std::invalid_argument("banach_h: inverse oracle disagrees with f at " + std::to_string(n));
  }
  for (nat i = 0; i + 1 < std::min<nat>(validate_len, 64); ++i)
    if (core.x0.nth(i) >= core.x0.nth(i + 1))
      throw std::invalid_argument("banach_h: coimage enumerator is not strictly increasing");
  if (core.x0.index_of(core.x0.nth(0)) != std::optional<nat>{0})
    throw std::invalid_argument("banach_h: coimage index_of does not invert the enumerator");

  // Residue attestation: listed points must have no backward-orbit depth;
  // nearby unlisted points must classify within budget.
  nat sample = core.res_finite ? core.res_count : std::min<nat>(validate_len, 8);
  for (nat t = 0; t < sample; ++t) {
    nat r = core.residues.nth(t);
    if (core.x0.member(r))
      throw std::invalid_argument("banach_h: residue point " + std::to_string(r) + " lies in the coimage");
    OrbitClass c = classify_orbit(f, r, core.orbit_budget);
    if (c.kind == OrbitClass::Kind::terminates)
      throw std::invalid_argument("banach_h: attested residue " + std::to_string(r) +
                                  " reaches the coimage at depth " + std::to_string(c.depth));
  }
  for (nat n = 0; n < validate_len; ++n) {
    if (core.residues.member(n) || core.x0.member(n)) continue;
    OrbitClass c = classify_orbit(f, n, core.orbit_budget);
    if (c.kind == OrbitClass::Kind::cycles)
      throw std::invalid_argument("banach_h: point " + std::to_string(n) +
                                  " cycles backward but is not attested as residue");
    if (c.kind == OrbitClass::Kind::exhausted)
      throw std::runtime_error("banach_h: orbit budget exhausted validating " + std::to_string(n));
  }
}

}  // namespace

BanachData banach_h(const NatFn& f, const std::vector<NatFn>& gs, BanachOptions opts) {
  auto core = std::make_shared<BanachCore>();
  core->f = f;
  core->gs = gs;
  if (!f.meta().coimage) throw std::invalid_argument("banach_h: f lacks coimage metadata");
  core->x0 = *f.meta().coimage;
  core->residues = opts.residues.value_or(SetRep::empty());
  core->orbit_budget = opts.orbit_budget;
  if (auto sz = core->residues.size()) {
    core->res_finite = true;
    core->res_count = *sz;
  } else {
    if (!core->residues.has_enumerator())
      throw std::invalid_argument("banach_h: infinite residue set needs an enumerator");
    core->res_finite = false;
    core->res_count = 0;
  }
  validate_banach_inputs(f, gs, *core, opts.validate_len);

  BanachData data;
  data.f = f;
  data.gs = gs;
  data.residues = core->residues;
  data.residues_finite = core->res_finite;
  data.residue_count = core->res_count;
  data.scheme = core->res_finite
                    ? "cells: first " + std::to_string(core->res_count) +
                          " coimage positions form X_{0,0}; position R+pair(i,t) is X_{0,i+1}[t]"
                    : "cells: even coimage positions form X_{0,0}; position 2*pair(i,t)+1 is X_{0,i+1}[t]";
  data.core = core;
  auto corep = core;
  data.h = NatFn::make("banach_h:" + f.name(), [corep](nat n) { return corep->h_eval(n); },
                       /*cache=*/true);
  return data;
}

SetRep BanachData::level(nat i) const {
  auto c = core;
  if (i == 0) return c->x0;
  return SetRep::predicate("X_" + std::to_string(i),
                           [c, i](nat n) {
                             OrbitClass o = classify_orbit(c->f, n, c->orbit_budget);
                             if (o.kind == OrbitClass::Kind::exhausted)
                               throw std::runtime_error("level: orbit budget exhausted");
                             return o.kind == OrbitClass::Kind::terminates && o.depth == i;
                           })
      .with_enumerator([c, i](nat t) { return c->f_pow(i, c->x0.nth(t)); });
}

SetRep BanachData::base_cell(nat i) const {
  auto c = core;
  return SetRep::predicate("X_{0," + std::to_string(i) + "}",
                           [c, i](nat n) {
                             if (!c->x0.member(n)) return false;
                             return c->cell_of(c->x0_index(n)).first == i;
                           })
      .with_enumerator([c, i](nat t) { return c->x0.nth(c->cell_index(i, t)); });
}

CheckResult verify_banach(const BanachData& d, nat i, nat m) {
  if (i == 0 || i > d.gs.size())
    throw std::invalid_argument("verify_banach: index must satisfy 1 <= i <= |gs|");
  const NatFn& h = d.h;
  const NatFn& f = d.f;
  const NatFn& g = d.gs[i - 1];
  for (nat n = 0; n < m; ++n) {
    nat v = h(f(n));
    for (nat k = 0; k < i; ++k) v = f(v);
    v = h(h(v));
    if (v != g(n)) return {false, n};
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Zero-product factorizations
// ---------------------------------------------------------------------------

ZeroFamilyData zero_family(const std::vector<NatFn>& us) {
  if (us.empty()) throw std::invalid_argument("zero_family: need at least one function");
  ZeroFamilyData d;
  d.us = us;
  d.X = SetRep::odds();
  d.h = NatFn::make("zf_h", [](nat n) { return 2 * n + 1; });
  d.k = NatFn::make("zf_k", [](nat n) { return n % 2 == 0 ? n / 2 : 0; });
  for (const NatFn& u : us) {
    d.gs.push_back(NatFn::make("zf_g:" + u.name(), [u](nat n) {
      // Odd arguments carry the payload; everything else collapses to 0.
      // All values are even, which is what forces g_a . g_b = 0.
      return n % 2 == 1 ? 2 * u((n - 1) / 2) : 0;
    }));
  }
  return d;
}

CheckResult verify_zero_factorization(const ZeroFamilyData& d, nat m) {
  for (size_t a = 0; a < d.us.size(); ++a)
    for (nat n = 0; n < m; ++n)
      if (d.us[a](n) != d.k(d.gs[a](d.h(n)))) return {false, n};
  return {true, std::nullopt};
}

CheckResult verify_zero_products(const ZeroFamilyData& d, nat m) {
  for (const NatFn& ga : d.gs)
    for (const NatFn& gb : d.gs)
      for (nat n = 0; n < m; ++n)
        if (ga(gb(n)) != 0) return {false, n};
  return {true, std::nullopt};
}

}  // namespace relrank
