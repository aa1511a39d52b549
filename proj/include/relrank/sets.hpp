#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relrank/nat.hpp"

namespace relrank {

class NatFn;  // natfn.hpp; kept out of this header to break the cycle

// ---------------------------------------------------------------------------
// Pairing and sequence codes
// ---------------------------------------------------------------------------

// Cantor pairing: pair(a,b) = (a+b)(a+b+1)/2 + b.  Bijective; throws on
// 64-bit overflow rather than wrapping.
nat cantor_pair(nat a, nat b);
std::pair<nat, nat> cantor_unpair(nat n);

// Injective code for arbitrary finite tuples: fold (c, x) -> pair(c, x) + 1
// starting from 0, so the empty tuple codes to 0 and codes decode uniquely.
nat tuple_code(std::span<const nat> tuple);
std::vector<nat> tuple_decode(nat code);

// Code for finite binary sequences: code(empty) = 0,
// code(x + b) = 2*code(x) + b + 1.  Bijection onto the naturals; sequences
// longer than 62 bits would overflow and throw.
nat seq_code(std::span<const nat> bits);
std::vector<nat> seq_decode(nat code);

// ---------------------------------------------------------------------------
// SetRep: a decidable subset of the naturals
// ---------------------------------------------------------------------------
//
// Membership is always available.  An enumerator, when present, lists the
// set in strictly increasing order; index_of inverts it.  `finite` and
// `cofinite` kinds carry their defining list so that finite data stays
// exact; everything else is `general`.

class SetRep {
 public:
  enum class Kind { finite, cofinite, general };

  SetRep();  // the empty set

  static SetRep finite(std::vector<nat> elements);
  static SetRep cofinite(std::vector<nat> excluded);
  static SetRep predicate(std::string name, std::function<bool(nat)> member);
  // Enumerator-backed set; `nth` must be strictly increasing.  If no
  // index_of is supplied, membership falls back to a bounded scan of the
  // enumerator.
  static SetRep enumerated(std::string name, std::function<nat(nat)> nth,
                           std::function<std::optional<nat>(nat)> index_of = nullptr);

  static SetRep all();
  static SetRep empty();
  static SetRep evens();
  static SetRep odds();
  static SetRep multiples(nat k);
  static SetRep residue_class(nat modulus, nat r);

  // Copy of this set with an enumerator attached (membership unchanged).
  SetRep with_enumerator(std::function<nat(nat)> nth,
                         std::function<std::optional<nat>(nat)> index_of = nullptr) const;
  SetRep renamed(std::string name) const;

  bool member(nat n) const;
  bool has_enumerator() const;

  // i-th member in increasing order.  Throws if the set has no enumerator
  // or a finite set is exhausted.
  nat nth(nat i) const;

  // Position of n in the enumeration; nullopt if n is not a member.
  // Enumerated sets without a closed-form index fall back to scanning,
  // capped by `scan_budget` steps (throws when the cap is hit).
  std::optional<nat> index_of(nat n, nat scan_budget = 1u << 20) const;

  // First `count` members.  Without an enumerator, scans candidate values
  // 0..scan_budget; throws if the scan cannot produce `count` members.
  std::vector<nat> first(nat count, nat scan_budget = 1u << 20) const;

  Kind kind() const;
  // Defining list for finite (the elements) / cofinite (the exclusions).
  const std::vector<nat>& basis() const;
  std::optional<nat> size() const;  // finite sets only
  const std::string& name() const;

 private:
  struct Impl;
  explicit SetRep(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Intersection keeps exact finite/cofinite structure where possible;
// general intersections are predicate-only (no enumerator).
SetRep set_intersection(const SetRep& a, const SetRep& b);
SetRep set_complement(const SetRep& a);

// ---------------------------------------------------------------------------
// Canonical partitions
// ---------------------------------------------------------------------------

// The t-th slice {pair(t, j) : j} of the pairing partition.  Slices are
// pairwise disjoint and cover the naturals as t ranges over all values.
SetRep tuple_slice(nat t);
// Slice addressed by an explicit tuple (slice index = tuple_code(tuple)).
SetRep tuple_slice_of(std::span<const nat> tuple);

// ---------------------------------------------------------------------------
// Backward orbits of an injective map
// ---------------------------------------------------------------------------
//
// For injective f with decidable coimage, every n either reaches the
// coimage after i inverse steps (depth i), revisits a point (a backward
// cycle, so no depth exists), or exhausts the step budget.

struct OrbitClass {
  enum class Kind { terminates, cycles, exhausted } kind;
  nat depth = 0;  // valid when kind == terminates
  nat root = 0;   // the coimage point reached
};

// Requires f to carry inverse and coimage metadata; throws otherwise.
OrbitClass classify_orbit(const NatFn& f, nat n, nat budget);

// X_level = f^level(X_0) where X_0 is the coimage of f.  Membership is
// decided by inverse steps; a budget-exhausted orbit throws rather than
// answering wrongly.
SetRep orbit_level(const NatFn& f, nat level, nat budget = 256);

}  // namespace relrank
