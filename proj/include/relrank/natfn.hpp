#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relrank/nat.hpp"
#include "relrank/sets.hpp"

namespace relrank {

// Where a metadata claim comes from: guaranteed by the way the function was
// built, or only checked up to some bound.  Claims are advisory; exact
// checks never trust them blindly.
struct Provenance {
  enum class Kind { by_construction, checked_to };
  Kind kind = Kind::by_construction;
  nat bound = 0;

  static Provenance constructed() { return {Kind::by_construction, 0}; }
  static Provenance checked(nat bound) { return {Kind::checked_to, bound}; }
};

struct FnMeta {
  std::optional<Provenance> injective;
  // Strict upper bound on |image| when known (e.g. 2 for indicator maps).
  std::optional<nat> image_bound;
  std::optional<Provenance> image_bound_provenance;
  // Partial inverse: inverse(y) = x with f(x) = y, nullopt off the image.
  std::function<std::optional<nat>(nat)> inverse;
  // Complement of the image, when the construction knows it exactly.
  std::optional<SetRep> coimage;
};

// An immutable total function on the naturals.  Copies share state; the
// evaluation cache (when enabled) is synchronized, so concurrent evaluation
// from several threads is safe.
class NatFn {
 public:
  NatFn();  // the identity

  // `cache` should stay on for expensive or recursive constructions and can
  // be dropped for O(1) closed-form maps, where the table would only add
  // lock traffic.  Either way evaluation must be deterministic.
  static NatFn make(std::string name, std::function<nat(nat)> fn, bool cache = false);

  static NatFn identity();
  static NatFn constant(nat v);

  NatFn with_meta(FnMeta meta) const;
  NatFn renamed(std::string name) const;

  nat operator()(nat n) const;

  const std::string& name() const;
  const FnMeta& meta() const;
  bool cached() const;

 private:
  struct Impl;
  explicit NatFn(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

using Prefix = std::vector<nat>;

// compose(f, g): n -> f(g(n)).  Image bounds and injectivity metadata
// propagate when both factors carry them.
NatFn compose(const NatFn& f, const NatFn& g);

// i-fold composition of f with itself; power(f, 0) is the identity.
NatFn power(const NatFn& f, nat i);

Prefix prefix_of(const NatFn& f, nat m);

struct Agreement {
  bool agree = true;
  nat first_diff = 0;  // least disagreeing argument when !agree
};

Agreement agree_on_prefix(const NatFn& f, const NatFn& g, nat m);

// Generic bounded-verification verdict.
struct CheckResult {
  bool ok = true;
  std::optional<nat> witness;  // least failing argument
};

}  // namespace relrank
