#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "relrank/natfn.hpp"

namespace relrank {

// A total map on {0, ..., n-1} with n <= 7.  Small enough that whole
// subsemigroups can be enumerated exhaustively; used as an independent
// cross-check on the infinite constructions.
class FiniteMap {
 public:
  static constexpr nat kMaxPoints = 7;

  FiniteMap(nat n, std::vector<nat> table);
  FiniteMap(nat n, std::initializer_list<nat> table)
      : FiniteMap(n, std::vector<nat>(table)) {}

  static FiniteMap identity(nat n);
  static FiniteMap constant(nat n, nat v);
  // Restriction of f to {0,...,n-1}, clamping any value >= n down to n-1.
  // For maps whose values already lie below n (e.g. U(k,m) members with
  // k+m <= n) this is a plain restriction.
  static FiniteMap truncate(const NatFn& f, nat n);

  nat points() const { return n_; }
  nat at(nat i) const;
  nat operator()(nat i) const { return at(i); }

  FiniteMap after(const FiniteMap& g) const;  // this . g
  nat image_size() const;
  bool surjective() const { return image_size() == n_; }

  // Dense index in [0, n^n); doubles as a hash.
  nat pack() const;
  static FiniteMap unpack(nat n, nat packed);

  bool operator==(const FiniteMap&) const = default;
  std::string str() const;

  const std::vector<nat>& table() const { return t_; }

 private:
  nat n_;
  std::vector<nat> t_;
};

// All maps on n points (n^n of them, in pack order).
std::vector<FiniteMap> all_maps(nat n);
// All maps with image size <= k.
std::vector<FiniteMap> maps_with_image_at_most(nat n, nat k);

// The subsemigroup generated by `gens` under composition (generators
// included).  Exhaustive breadth-first closure; result is sorted by pack
// index so output order is canonical.
std::vector<FiniteMap> saturate(const std::vector<FiniteMap>& gens);

// Every member of `targets` lies in the closure of gens + extra.
bool contains_generated(const std::vector<FiniteMap>& targets, const std::vector<FiniteMap>& gens,
                        const std::vector<FiniteMap>& extra = {});

// Two-sided ideal property of the image <= k maps inside the full
// transformation semigroup on n points: a.b and b.a stay in the set for
// every a with small image and arbitrary b.
struct IdealCheck {
  bool holds = true;
  std::string witness;  // offending pair when violated
};
IdealCheck ideal_check(nat n_points, nat k);

}  // namespace relrank
