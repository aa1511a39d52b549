#pragma once

#include <vector>

#include "relrank/families.hpp"
#include "relrank/natfn.hpp"

namespace relrank {

// The family U(k, m): maps fixing every i < k and sending every i >= k
// into the window [k, k+m).  m >= 2 throughout; these families are closed
// under composition and their comparability has a two-inequality test.
struct UkmParams {
  nat k = 0;
  nat m = 2;

  UkmParams() = default;
  UkmParams(nat k_, nat m_) : k(k_), m(m_) {
    if (m < 2) throw std::invalid_argument("UkmParams: need m >= 2");
  }
  bool operator==(const UkmParams&) const = default;
};

// Membership of f in U(p) checked pointwise on [0, len); len must exceed
// p.k so the check is not vacuous.
CheckResult ukm_member(const NatFn& f, UkmParams p, nat len);

// Exact comparability test: U(a) embeds below U(b) iff a.m <= b.m and
// a.k + a.m <= b.k + b.m.
bool ukm_order(UkmParams a, UkmParams b);

// The witnessing pair for ukm_order(from, to): g is injective, h is a left
// inverse (h.g = identity), and f -> h.f'.g transports members.
struct EmbedMaps {
  NatFn g;
  NatFn h;
};

// Throws unless ukm_order(from, to) holds.
EmbedMaps ukm_embed_maps(UkmParams from, UkmParams to);

// Builds f' in U(to) with f = h.f'.g; membership of f in U(from) is
// validated on [0, check_len) first.
NatFn ukm_transport(const NatFn& f, UkmParams from, UkmParams to, nat check_len = 1024);

// Parameter list (2j, i+1-j) for j = 0..i-1: i families that are pairwise
// incomparable in both directions.
std::vector<UkmParams> antichain_params(nat i);

// matrix[p][q] = ukm_order(params[p], params[q]).
std::vector<std::vector<bool>> comparability_matrix(const std::vector<UkmParams>& params);

// Deterministic pseudo-random member of U(p).
NatFn sample_ukm_member(UkmParams p, nat seed);

}  // namespace relrank
