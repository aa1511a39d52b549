#include "relrank/registry.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

#include "relrank/families.hpp"
#include "relrank/ukm.hpp"

namespace relrank {

namespace {

[[noreturn]] void bad_key(const char* what, const std::string& key) {
  throw std::invalid_argument(std::string(what) + ": bad key: " + key);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

nat parse_nat(const std::string& s, const std::string& key) {
  if (s.empty()) bad_key("registry", key);
  nat v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') bad_key("registry", key);
    nat d = static_cast<nat>(c - '0');
    if (v > (std::numeric_limits<nat>::max() - d) / 10) bad_key("registry", key);
    v = v * 10 + d;
  }
  return v;
}

// "[a,b,c]" -> {a, b, c}; "[]" -> {}
std::vector<nat> parse_list(const std::string& s, const std::string& key) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') bad_key("registry", key);
  std::string body = s.substr(1, s.size() - 2);
  std::vector<nat> out;
  if (body.empty()) return out;
  for (const auto& part : split(body, ',')) out.push_back(parse_nat(part, key));
  return out;
}

nat stream_base(nat seed, nat salt) {
  return seeded_at(seed, mix64(salt + 0x517cc1b727220a95ull));
}

NatFn linear_fn(nat a, nat b, const std::string& label) {
  if (a < 1) throw std::invalid_argument("linear_fn: need a >= 1");
  auto fn = NatFn::make(label, [a, b](nat n) {
    unsigned __int128 v = static_cast<unsigned __int128>(a) * n + b;
    if (v > std::numeric_limits<nat>::max()) throw std::overflow_error("linear map overflow");
    return static_cast<nat>(v);
  });

  FnMeta meta;
  meta.injective = Provenance::constructed();
  meta.inverse = [a, b](nat y) -> std::optional<nat> {
    if (y < b || (y - b) % a != 0) return std::nullopt;
    return (y - b) / a;
  };
  if (a == 1) {
    // misses exactly 0..b-1
    std::vector<nat> miss;
    for (nat i = 0; i < b; ++i) miss.push_back(i);
    meta.coimage = SetRep::finite(std::move(miss)).renamed("coimage(" + label + ")");
  } else {
    // misses 0..b-1 plus, in each block [b + q*a, b + (q+1)*a), everything
    // after the single hit at its start
    auto nth = [a, b](nat i) -> nat {
      if (i < b) return i;
      nat j = i - b;
      return b + (j / (a - 1)) * a + j % (a - 1) + 1;
    };
    auto index_of = [a, b](nat y) -> std::optional<nat> {
      if (y < b) return y;
      nat d = y - b;
      nat r = d % a;
      if (r == 0) return std::nullopt;  // a hit, not missed
      return b + (d / a) * (a - 1) + (r - 1);
    };
    meta.coimage = SetRep::enumerated("coimage(" + label + ")", nth, index_of);
  }
  return fn.with_meta(std::move(meta));
}

NatFn enum_fn(const SetRep& s, const std::string& label) {
  if (!s.has_enumerator())
    throw std::invalid_argument("registry: enum: set has no enumerator: " + s.name());
  auto fn = NatFn::make(label, [s](nat n) { return s.nth(n); });
  FnMeta meta;
  meta.injective = Provenance::constructed();  // enumerators are strictly increasing
  meta.inverse = [s](nat y) -> std::optional<nat> { return s.index_of(y); };
  meta.coimage = set_complement(s);
  return fn.with_meta(std::move(meta));
}

}  // namespace

NatFn make_natfn(const std::string& key, nat seed) {
  if (key == "identity" || key == "id") return NatFn::identity();
  if (key == "zero") return NatFn::constant(0);
  if (key == "one") return NatFn::constant(1);
  if (key == "succ") return linear_fn(1, 1, "succ");
  if (key == "double") return linear_fn(2, 0, "double");
  if (key == "triple") return linear_fn(3, 0, "triple");
  if (key == "halve") return NatFn::make("halve", [](nat n) { return n / 2; });

  auto parts = split(key, ':');
  const std::string& head = parts[0];

  if (head == "const" && parts.size() == 2) return NatFn::constant(parse_nat(parts[1], key));

  if (head == "lin" && parts.size() == 3)
    return linear_fn(parse_nat(parts[1], key), parse_nat(parts[2], key), key);

  if (head == "rand" && (parts.size() == 2 || parts.size() == 3)) {
    nat mod = parse_nat(parts[1], key);
    if (mod == 0) bad_key("make_natfn", key);
    nat salt = parts.size() == 3 ? parse_nat(parts[2], key) : 0;
    nat base = stream_base(seed, salt);
    auto fn = NatFn::make(key, [base, mod](nat n) { return mix64(base + n) % mod; });
    FnMeta meta;
    meta.image_bound = mod;
    meta.image_bound_provenance = Provenance::constructed();
    return fn.with_meta(std::move(meta));
  }

  if (head == "ukm" && (parts.size() == 3 || parts.size() == 4)) {
    UkmParams p(parse_nat(parts[1], key), parse_nat(parts[2], key));
    nat salt = parts.size() == 4 ? parse_nat(parts[3], key) : 0;
    return sample_ukm_member(p, stream_base(seed, salt)).renamed(key);
  }

  if ((head == "s" || head == "ind" || head == "coind" || head == "enum") && parts.size() >= 2) {
    std::string set_key = key.substr(head.size() + 1);
    SetRep s = make_setrep(set_key, seed);
    if (head == "s") return s_map(s).renamed(key);
    if (head == "ind") return indicator(s).renamed(key);
    if (head == "coind") return indicator_complement(s).renamed(key);
    return enum_fn(s, key);
  }

  bad_key("make_natfn", key);
}

SetRep make_setrep(const std::string& key, nat seed) {
  if (key == "all") return SetRep::all();
  if (key == "empty") return SetRep::empty();
  if (key == "evens") return SetRep::evens();
  if (key == "odds") return SetRep::odds();

  auto parts = split(key, ':');
  const std::string& head = parts[0];

  if (head == "mult" && parts.size() == 2) return SetRep::multiples(parse_nat(parts[1], key));

  if (head == "mod" && parts.size() == 3) {
    nat m = parse_nat(parts[1], key), r = parse_nat(parts[2], key);
    if (m == 0 || r >= m) bad_key("make_setrep", key);
    return SetRep::residue_class(m, r);
  }

  if (head == "finite" && parts.size() == 2) return SetRep::finite(parse_list(parts[1], key));
  if (head == "cofinite" && parts.size() == 2) return SetRep::cofinite(parse_list(parts[1], key));

  if (head == "tuple" && parts.size() == 2) {
    auto t = parse_list(parts[1], key);
    return tuple_slice_of(t);
  }
  if (head == "slice" && parts.size() == 2) return tuple_slice(parse_nat(parts[1], key));

  if (head == "branch" && parts.size() == 2) {
    std::string bits = parts[1];
    bool repeat = !bits.empty() && bits.back() == '~';
    if (repeat) bits.pop_back();
    if (bits.empty()) bad_key("make_setrep", key);
    std::vector<nat> block;
    for (char c : bits) {
      if (c != '0' && c != '1') bad_key("make_setrep", key);
      block.push_back(static_cast<nat>(c - '0'));
    }
    auto path = NatFn::make("path:" + parts[1], [block, repeat](nat i) -> nat {
      if (i < block.size()) return block[i];
      return repeat ? block[i % block.size()] : 0;
    });
    return branch_set(path).renamed(key);
  }

  if (head == "randset" && (parts.size() == 1 || parts.size() == 2)) {
    nat salt = parts.size() == 2 ? parse_nat(parts[1], key) : 0;
    nat base = stream_base(seed, mix64(salt) ^ 0xd1b54a32d192ed03ull);
    return SetRep::predicate(key, [base](nat n) { return (mix64(base + n) & 1) != 0; });
  }

  bad_key("make_setrep", key);
}

std::pair<NatFn, SetRep> banach_base(nat a, nat b) {
  if (a < 1 || (a == 1 && b == 0))
    throw std::invalid_argument("banach_base: map must miss a value (a >= 2 or b >= 1)");
  std::string label = a == 2 && b == 0 ? "double" : a == 3 && b == 0 ? "triple" : "lin:" +
                      std::to_string(a) + ":" + std::to_string(b);
  NatFn f = linear_fn(a, b, label);
  SetRep residues =
      b == 0 ? SetRep::finite({0}).renamed("residues(" + label + ")") : SetRep::finite({});
  return {f, residues};
}

}  // namespace relrank
