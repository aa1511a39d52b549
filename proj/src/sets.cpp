#include "relrank/sets.hpp"

#include <algorithm>
#include <unordered_set>

#include "relrank/natfn.hpp"

namespace relrank {

// ---------------------------------------------------------------------------
// Pairing and codes
// ---------------------------------------------------------------------------

nat cantor_pair(nat a, nat b) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  unsigned __int128 v = s * (s + 1) / 2 + b;
  if (v > ~nat{0}) throw std::overflow_error("cantor_pair: result exceeds 64 bits");
  return static_cast<nat>(v);
}

std::pair<nat, nat> cantor_unpair(nat n) {
  // Invert via the triangular root: w = floor((sqrt(8n+1)-1)/2).
  unsigned __int128 m = static_cast<unsigned __int128>(n) * 8 + 1;
  nat r;
  if (m > ~nat{0}) {
    // 8n+1 needs 65 bits; start from 4*isqrt(n/2) ~ sqrt(8n) and refine.
    nat approx = isqrt(n / 2) * 4;
    while ((static_cast<unsigned __int128>(approx + 1)) * (approx + 1) <= m) ++approx;
    while ((static_cast<unsigned __int128>(approx)) * approx > m) --approx;
    r = approx;
  } else {
    r = isqrt(static_cast<nat>(m));
  }
  nat w = (r - 1) / 2;
  nat t = static_cast<nat>(static_cast<unsigned __int128>(w) * (w + 1) / 2);
  nat b = n - t;
  nat a = w - b;
  return {a, b};
}

nat tuple_code(std::span<const nat> tuple) {
  nat c = 0;
  for (nat x : tuple) {
    c = cantor_pair(c, x);
    if (c == ~nat{0}) throw std::overflow_error("tuple_code: overflow");
    c += 1;
  }
  return c;
}

std::vector<nat> tuple_decode(nat code) {
  std::vector<nat> out;
  while (code != 0) {
    auto [c, x] = cantor_unpair(code - 1);
    out.push_back(x);
    code = c;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

nat seq_code(std::span<const nat> bits) {
  nat c = 0;
  for (nat b : bits) {
    if (b > 1) throw std::invalid_argument("seq_code: entries must be 0 or 1");
    if (c > (~nat{0} - 2) / 2) throw std::overflow_error("seq_code: sequence too long");
    c = 2 * c + b + 1;
  }
  return c;
}

std::vector<nat> seq_decode(nat code) {
  std::vector<nat> bits;
  while (code != 0) {
    bits.push_back((code - 1) & 1);
    code = (code - 1) >> 1;
  }
  std::reverse(bits.begin(), bits.end());
  return bits;
}

// ---------------------------------------------------------------------------
// SetRep
// ---------------------------------------------------------------------------

struct SetRep::Impl {
  Kind kind = Kind::finite;
  std::string name;
  std::vector<nat> basis;  // sorted; elements (finite) or exclusions (cofinite)
  std::function<bool(nat)> member;
  std::function<nat(nat)> nth;
  std::function<std::optional<nat>(nat)> index_of;
};

namespace {

std::vector<nat> sorted_unique(std::vector<nat> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string list_name(const char* prefix, const std::vector<nat>& v) {
  std::string s(prefix);
  s += "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
    if (i >= 7 && v.size() > 8) {
      s += ",...";
      break;
    }
  }
  s += "}";
  return s;
}

}  // namespace

SetRep::SetRep(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

SetRep::SetRep() : SetRep(finite({})) {}

SetRep SetRep::finite(std::vector<nat> elements) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::finite;
  impl->basis = sorted_unique(std::move(elements));
  impl->name = list_name("", impl->basis);
  return SetRep(impl);
}

SetRep SetRep::cofinite(std::vector<nat> excluded) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::cofinite;
  impl->basis = sorted_unique(std::move(excluded));
  impl->name = list_name("co", impl->basis);
  return SetRep(impl);
}

SetRep SetRep::predicate(std::string name, std::function<bool(nat)> member) {
  if (!member) throw std::invalid_argument("SetRep::predicate: null membership test");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::general;
  impl->name = std::move(name);
  impl->member = std::move(member);
  return SetRep(impl);
}

SetRep SetRep::enumerated(std::string name, std::function<nat(nat)> nth,
                          std::function<std::optional<nat>(nat)> index_of) {
  if (!nth) throw std::invalid_argument("SetRep::enumerated: null enumerator");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::general;
  impl->name = std::move(name);
  impl->nth = std::move(nth);
  impl->index_of = std::move(index_of);
  return SetRep(impl);
}

SetRep SetRep::all() {
  static const SetRep s = cofinite({}).renamed("all");
  return s;
}

SetRep SetRep::empty() {
  static const SetRep s = finite({}).renamed("empty");
  return s;
}

SetRep SetRep::evens() {
  static const SetRep s =
      predicate("evens", [](nat n) { return n % 2 == 0; })
          .with_enumerator([](nat i) { return 2 * i; },
                           [](nat n) -> std::optional<nat> {
                             if (n % 2) return std::nullopt;
                             return n / 2;
                           });
  return s;
}

SetRep SetRep::odds() {
  static const SetRep s =
      predicate("odds", [](nat n) { return n % 2 == 1; })
          .with_enumerator([](nat i) { return 2 * i + 1; },
                           [](nat n) -> std::optional<nat> {
                             if (n % 2 == 0) return std::nullopt;
                             return (n - 1) / 2;
                           });
  return s;
}

SetRep SetRep::multiples(nat k) {
  if (k == 0) throw std::invalid_argument("SetRep::multiples: k must be positive");
  return predicate("mult:" + std::to_string(k), [k](nat n) { return n % k == 0; })
      .with_enumerator([k](nat i) { return k * i; },
                       [k](nat n) -> std::optional<nat> {
                         if (n % k) return std::nullopt;
                         return n / k;
                       });
}

SetRep SetRep::residue_class(nat modulus, nat r) {
  if (modulus == 0 || r >= modulus)
    throw std::invalid_argument("SetRep::residue_class: need r < modulus");
  return predicate("mod:" + std::to_string(modulus) + ":" + std::to_string(r),
                   [modulus, r](nat n) { return n % modulus == r; })
      .with_enumerator([modulus, r](nat i) { return modulus * i + r; },
                       [modulus, r](nat n) -> std::optional<nat> {
                         if (n % modulus != r) return std::nullopt;
                         return n / modulus;
                       });
}

SetRep SetRep::with_enumerator(std::function<nat(nat)> nth,
                               std::function<std::optional<nat>(nat)> index_of) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->nth = std::move(nth);
  if (index_of) impl->index_of = std::move(index_of);
  return SetRep(impl);
}

SetRep SetRep::renamed(std::string name) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->name = std::move(name);
  return SetRep(impl);
}

bool SetRep::member(nat n) const {
  const Impl& im = *impl_;
  switch (im.kind) {
    case Kind::finite:
      return std::binary_search(im.basis.begin(), im.basis.end(), n);
    case Kind::cofinite:
      return !std::binary_search(im.basis.begin(), im.basis.end(), n);
    case Kind::general:
      break;
  }
  if (im.member) return im.member(n);
  if (im.index_of) return im.index_of(n).has_value();
  // Enumerator-only set: scan until the enumerator passes n.
  for (nat i = 0;; ++i) {
    nat v = im.nth(i);
    if (v == n) return true;
    if (v > n) return false;
    if (i > n) throw std::runtime_error("SetRep::member: enumerator not increasing");
  }
}

bool SetRep::has_enumerator() const {
  return impl_->kind != Kind::general || static_cast<bool>(impl_->nth);
}

nat SetRep::nth(nat i) const {
  const Impl& im = *impl_;
  if (im.kind == Kind::finite) {
    if (i >= im.basis.size()) throw std::out_of_range("SetRep::nth: finite set exhausted");
    return im.basis[i];
  }
  if (im.kind == Kind::cofinite) {
    // i-th natural not in the exclusion list.
    nat v = i;
    for (nat x : im.basis) {
      if (x <= v) ++v;
      else break;
    }
    return v;
  }
  if (!im.nth) throw std::runtime_error("SetRep::nth: set '" + im.name + "' has no enumerator");
  return im.nth(i);
}

std::optional<nat> SetRep::index_of(nat n, nat scan_budget) const {
  const Impl& im = *impl_;
  if (im.kind == Kind::finite) {
    auto it = std::lower_bound(im.basis.begin(), im.basis.end(), n);
    if (it == im.basis.end() || *it != n) return std::nullopt;
    return static_cast<nat>(it - im.basis.begin());
  }
  if (im.kind == Kind::cofinite) {
    auto it = std::lower_bound(im.basis.begin(), im.basis.end(), n);
    if (it != im.basis.end() && *it == n) return std::nullopt;
    return n - static_cast<nat>(it - im.basis.begin());
  }
  if (im.index_of) return im.index_of(n);
  if (!im.nth) {
    if (!member(n)) return std::nullopt;
    throw std::runtime_error("SetRep::index_of: set '" + im.name + "' has no enumerator");
  }
  for (nat i = 0; i < scan_budget; ++i) {
    nat v = im.nth(i);
    if (v == n) return i;
    if (v > n) return std::nullopt;
  }
  throw std::runtime_error("SetRep::index_of: scan budget exhausted on '" + im.name + "'");
}

std::vector<nat> SetRep::first(nat count, nat scan_budget) const {
  std::vector<nat> out;
  out.reserve(count);
  const Impl& im = *impl_;
  if (im.kind == Kind::finite) {
    for (nat i = 0; i < count && i < im.basis.size(); ++i) out.push_back(im.basis[i]);
    return out;
  }
  if (has_enumerator()) {
    for (nat i = 0; i < count; ++i) out.push_back(nth(i));
    return out;
  }
  for (nat v = 0; v < scan_budget && out.size() < count; ++v)
    if (member(v)) out.push_back(v);
  if (out.size() < count)
    throw std::runtime_error("SetRep::first: scan budget exhausted on '" + im.name + "'");
  return out;
}

SetRep::Kind SetRep::kind() const { return impl_->kind; }
const std::vector<nat>& SetRep::basis() const { return impl_->basis; }

std::optional<nat> SetRep::size() const {
  if (impl_->kind == Kind::finite) return impl_->basis.size();
  return std::nullopt;
}

const std::string& SetRep::name() const { return impl_->name; }

SetRep set_intersection(const SetRep& a, const SetRep& b) {
  using Kind = SetRep::Kind;
  if (a.kind() == Kind::finite) {
    std::vector<nat> kept;
    for (nat x : a.basis())
      if (b.member(x)) kept.push_back(x);
    return SetRep::finite(std::move(kept));
  }
  if (b.kind() == Kind::finite) return set_intersection(b, a);
  if (a.kind() == Kind::cofinite && b.kind() == Kind::cofinite) {
    std::vector<nat> excl = a.basis();
    excl.insert(excl.end(), b.basis().begin(), b.basis().end());
    return SetRep::cofinite(std::move(excl));
  }
  return SetRep::predicate("(" + a.name() + " & " + b.name() + ")",
                           [a, b](nat n) { return a.member(n) && b.member(n); });
}

SetRep set_complement(const SetRep& a) {
  using Kind = SetRep::Kind;
  if (a.kind() == Kind::finite) return SetRep::cofinite(a.basis());
  if (a.kind() == Kind::cofinite) return SetRep::finite(a.basis());
  return SetRep::predicate("!(" + a.name() + ")", [a](nat n) { return !a.member(n); });
}

// ---------------------------------------------------------------------------
// Pairing partition slices
// ---------------------------------------------------------------------------

SetRep tuple_slice(nat t) {
  return SetRep::predicate("slice:" + std::to_string(t),
                           [t](nat n) { return cantor_unpair(n).first == t; })
      .with_enumerator([t](nat j) { return cantor_pair(t, j); },
                       [t](nat n) -> std::optional<nat> {
                         auto [a, b] = cantor_unpair(n);
                         if (a != t) return std::nullopt;
                         return b;
                       });
}

SetRep tuple_slice_of(std::span<const nat> tuple) { return tuple_slice(tuple_code(tuple)); }

// ---------------------------------------------------------------------------
// Backward orbits
// ---------------------------------------------------------------------------

OrbitClass classify_orbit(const NatFn& f, nat n, nat budget) {
  const FnMeta& meta = f.meta();
  if (!meta.inverse || !meta.coimage)
    throw std::invalid_argument("classify_orbit: f lacks inverse/coimage metadata");
  const SetRep& x0 = *meta.coimage;
  nat cur = n;
  std::unordered_set<nat> seen;
  for (nat step = 0; step <= budget; ++step) {
    if (x0.member(cur)) return {OrbitClass::Kind::terminates, step, cur};
    if (!seen.insert(cur).second) return {OrbitClass::Kind::cycles, 0, 0};
    std::optional<nat> prev = meta.inverse(cur);
    if (!prev)
      throw std::runtime_error("classify_orbit: inverse oracle silent off the coimage at " +
                               std::to_string(cur));
    cur = *prev;
  }
  return {OrbitClass::Kind::exhausted, 0, 0};
}

SetRep orbit_level(const NatFn& f, nat level, nat budget) {
  if (!f.meta().inverse || !f.meta().coimage)
    throw std::invalid_argument("orbit_level: f lacks inverse/coimage metadata");
  std::string nm = "orbit:" + f.name() + ":" + std::to_string(level);
  return SetRep::predicate(nm, [f, level, budget](nat n) {
    OrbitClass c = classify_orbit(f, n, budget);
    if (c.kind == OrbitClass::Kind::exhausted)
      throw std::runtime_error("orbit_level: budget exhausted classifying " + std::to_string(n));
    return c.kind == OrbitClass::Kind::terminates && c.depth == level;
  });
}

}  // namespace relrank
