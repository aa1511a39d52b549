#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relrank/natfn.hpp"
#include "relrank/sets.hpp"

namespace relrank {

// ---------------------------------------------------------------------------
// The two-generator reduction
// ---------------------------------------------------------------------------
//
// Given an injective f whose image misses infinitely many points, a single
// map h recovers any countable list g_1, g_2, ... through the identity
//
//     g_i = h . h . f^i . h . f          (i-fold f in the middle)
//
// h is assembled from a partition indexed by backward orbits of f:
//   X_0        = the coimage of f,
//   X_i        = f^i(X_0),
//   residue    = points whose backward orbit never reaches X_0.
// X_0 itself splits into cells X_{0,0}, X_{0,1}, ... where X_{0,0} is paired
// off with the residue set and cell X_{0,i} carries g_i.

struct BanachOptions {
  // Steps allowed when classifying a backward orbit.
  nat orbit_budget = 256;
  // Attested residue set (the points with no backward-orbit depth).  A
  // finite SetRep fixes the count; an enumerated SetRep (with index_of)
  // attests an infinite residue set.  Defaults to the empty set.
  std::optional<SetRep> residues;
  // Sample length for the up-front metadata consistency checks.
  nat validate_len = 64;
};

struct BanachCore;  // implementation detail, shared by h and the set views

struct BanachData {
  NatFn f;
  std::vector<NatFn> gs;
  NatFn h;
  SetRep residues;
  bool residues_finite = true;
  nat residue_count = 0;  // meaningful when residues_finite
  std::string scheme;     // human-readable description of the cell layout

  // X_i: level(0) is the coimage, level(i) its i-th forward copy.
  SetRep level(nat i) const;
  // X_{0,i}: the i-th cell of the coimage under the pinned layout.
  SetRep base_cell(nat i) const;

  std::shared_ptr<const BanachCore> core;
};

// Requires f to carry: injectivity, an inverse oracle, and a coimage with
// enumerator and index.  gs must be nonempty (g_i = gs[i-1]).
BanachData banach_h(const NatFn& f, const std::vector<NatFn>& gs, BanachOptions opts = {});

// Checks g_i(n) == h(h(f^i(h(f(n))))) for all n < m; i is 1-based and must
// not exceed |gs|.
CheckResult verify_banach(const BanachData& d, nat i, nat m);

// ---------------------------------------------------------------------------
// Zero-product factorizations
// ---------------------------------------------------------------------------
//
// Any list u_0, u_1, ... factors as u_a = k . g_a . h where all the g_a
// multiply to the zero constant among themselves.  Pinned instance:
// X = odds, h(n) = 2n+1, k(2n) = n and k(odd) = 0,
// g_a(2m+1) = 2*u_a(m), g_a(even) = 0.

struct ZeroFamilyData {
  std::vector<NatFn> us;
  std::vector<NatFn> gs;
  NatFn h;
  NatFn k;
  SetRep X;
};

ZeroFamilyData zero_family(const std::vector<NatFn>& us);

// u_a == k . g_a . h on [0, m) for every a.
CheckResult verify_zero_factorization(const ZeroFamilyData& d, nat m);
// g_a . g_b == 0 on [0, m) for every ordered pair (a, b).
CheckResult verify_zero_products(const ZeroFamilyData& d, nat m);

}  // namespace relrank
