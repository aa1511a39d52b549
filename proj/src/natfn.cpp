#include "relrank/natfn.hpp"

#include <mutex>
#include <unordered_map>

namespace relrank {

namespace {
// Cache tier for small arguments: a direct-indexed table up to this size,
// a hash map beyond it.
constexpr nat kSmallCache = 4096;
}  // namespace

struct NatFn::Impl {
  std::string name;
  std::function<nat(nat)> fn;
  bool cache = false;
  FnMeta meta;

  mutable std::mutex mu;
  mutable std::vector<nat> small_vals;
  mutable std::vector<bool> small_set;
  mutable std::unordered_map<nat, nat> big;

  std::optional<nat> lookup(nat n) const {
    std::lock_guard<std::mutex> lock(mu);
    if (n < small_set.size() && small_set[n]) return small_vals[n];
    auto it = big.find(n);
    if (it != big.end()) return it->second;
    return std::nullopt;
  }

  void store(nat n, nat v) const {
    std::lock_guard<std::mutex> lock(mu);
    if (n < kSmallCache) {
      if (small_set.size() <= n) {
        small_set.resize(n + 1, false);
        small_vals.resize(n + 1, 0);
      }
      small_set[n] = true;
      small_vals[n] = v;
    } else {
      big.emplace(n, v);
    }
  }
};

NatFn::NatFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

NatFn::NatFn() : NatFn(identity()) {}

NatFn NatFn::make(std::string name, std::function<nat(nat)> fn, bool cache) {
  if (!fn) throw std::invalid_argument("NatFn::make: null function");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->fn = std::move(fn);
  impl->cache = cache;
  return NatFn(impl);
}

NatFn NatFn::identity() {
  static const NatFn f = [] {
    NatFn id = make("identity", [](nat n) { return n; });
    FnMeta meta;
    meta.injective = Provenance::constructed();
    meta.inverse = [](nat y) -> std::optional<nat> { return y; };
    meta.coimage = SetRep::empty();
    return id.with_meta(std::move(meta));
  }();
  return f;
}

NatFn NatFn::constant(nat v) {
  NatFn f = make("const:" + std::to_string(v), [v](nat) { return v; });
  FnMeta meta;
  meta.image_bound = 1;
  meta.image_bound_provenance = Provenance::constructed();
  return f.with_meta(std::move(meta));
}

NatFn NatFn::with_meta(FnMeta meta) const {
  auto impl = std::make_shared<Impl>();
  impl->name = impl_->name;
  impl->fn = impl_->fn;
  impl->cache = impl_->cache;
  impl->meta = std::move(meta);
  return NatFn(impl);
}

NatFn NatFn::renamed(std::string name) const {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->fn = impl_->fn;
  impl->cache = impl_->cache;
  impl->meta = impl_->meta;
  return NatFn(impl);
}

nat NatFn::operator()(nat n) const {
  const Impl& im = *impl_;
  if (!im.cache) return im.fn(n);
  if (auto hit = im.lookup(n)) return *hit;
  // Compute outside the lock: user closures may evaluate other NatFns (or
  // this one), and holding the mutex across that would invite deadlock.
  nat v = im.fn(n);
  im.store(n, v);
  return v;
}

const std::string& NatFn::name() const { return impl_->name; }
const FnMeta& NatFn::meta() const { return impl_->meta; }
bool NatFn::cached() const { return impl_->cache; }

NatFn compose(const NatFn& f, const NatFn& g) {
  std::string nm = f.name() + "." + g.name();
  if (nm.size() > 80) nm = nm.substr(0, 77) + "...";
  NatFn h = NatFn::make(std::move(nm), [f, g](nat n) { return f(g(n)); }, f.cached() || g.cached());

  FnMeta meta;
  const FnMeta& mf = f.meta();
  const FnMeta& mg = g.meta();
  // |f(g(N))| is at most |image f| and at most |image g|.
  if (mf.image_bound || mg.image_bound) {
    nat b = ~nat{0};
    if (mf.image_bound) b = std::min(b, *mf.image_bound);
    if (mg.image_bound) b = std::min(b, *mg.image_bound);
    meta.image_bound = b;
    meta.image_bound_provenance = Provenance::checked(0);
    if (mf.image_bound && mg.image_bound &&
        mf.image_bound_provenance && mg.image_bound_provenance &&
        mf.image_bound_provenance->kind == Provenance::Kind::by_construction &&
        mg.image_bound_provenance->kind == Provenance::Kind::by_construction)
      meta.image_bound_provenance = Provenance::constructed();
  }
  if (mf.injective && mg.injective) {
    if (mf.injective->kind == Provenance::Kind::by_construction &&
        mg.injective->kind == Provenance::Kind::by_construction)
      meta.injective = Provenance::constructed();
    else
      meta.injective = Provenance::checked(
          std::min(mf.injective->kind == Provenance::Kind::checked_to ? mf.injective->bound : ~nat{0},
                   mg.injective->kind == Provenance::Kind::checked_to ? mg.injective->bound : ~nat{0}));
  }
  if (mf.inverse && mg.inverse) {
    auto finv = mf.inverse;
    auto ginv = mg.inverse;
    meta.inverse = [finv, ginv](nat y) -> std::optional<nat> {
      auto u = finv(y);
      if (!u) return std::nullopt;
      return ginv(*u);
    };
  }
  return h.with_meta(std::move(meta));
}

NatFn power(const NatFn& f, nat i) {
  if (i == 0) return NatFn::identity();
  NatFn fn = NatFn::make(f.name() + "^" + std::to_string(i),
                         [f, i](nat n) {
                           nat v = n;
                           for (nat k = 0; k < i; ++k) v = f(v);
                           return v;
                         },
                         f.cached());
  FnMeta meta;
  if (f.meta().injective) meta.injective = f.meta().injective;
  if (f.meta().inverse) {
    auto inv = f.meta().inverse;
    meta.inverse = [inv, i](nat y) -> std::optional<nat> {
      nat v = y;
      for (nat k = 0; k < i; ++k) {
        auto u = inv(v);
        if (!u) return std::nullopt;
        v = *u;
      }
      return v;
    };
  }
  return fn.with_meta(std::move(meta));
}

Prefix prefix_of(const NatFn& f, nat m) {
  Prefix out;
  out.reserve(m);
  for (nat n = 0; n < m; ++n) out.push_back(f(n));
  return out;
}

Agreement agree_on_prefix(const NatFn& f, const NatFn& g, nat m) {
  for (nat n = 0; n < m; ++n)
    if (f(n) != g(n)) return {false, n};
  return {true, 0};
}

}  // namespace relrank
