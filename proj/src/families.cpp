#include "relrank/families.hpp"

#include <algorithm>

namespace relrank {

NatFn s_map(const SetRep& A) {
  NatFn f = NatFn::make("s:" + A.name(), [A](nat n) { return A.member(n) ? n : 0; });
  return f;
}

NatFn indicator(const SetRep& A) {
  NatFn f = NatFn::make("ind:" + A.name(), [A](nat n) { return A.member(n) ? nat{1} : nat{0}; });
  FnMeta meta;
  meta.image_bound = 2;
  meta.image_bound_provenance = Provenance::constructed();
  return f.with_meta(std::move(meta));
}

NatFn indicator_complement(const SetRep& A) {
  NatFn f = NatFn::make("ind!:" + A.name(), [A](nat n) { return A.member(n) ? nat{0} : nat{1}; });
  FnMeta meta;
  meta.image_bound = 2;
  meta.image_bound_provenance = Provenance::constructed();
  return f.with_meta(std::move(meta));
}

CheckResult semilattice_check(const SetRep& A, const SetRep& B, nat m) {
  NatFn sa = s_map(A);
  NatFn sb = s_map(B);
  NatFn sab = s_map(set_intersection(A, B));
  for (nat n = 0; n < m; ++n) {
    if (sa(sb(n)) != sab(n)) return {false, n};
    if (sa(sa(n)) != sa(n)) return {false, n};
  }
  return {true, std::nullopt};
}

bool ideal_refute(std::span<const nat> prefix_values, IdealTag tag) {
  std::vector<nat> vals(prefix_values.begin(), prefix_values.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals.size() > tag.n;
}

// ---------------------------------------------------------------------------
// Branch families
// ---------------------------------------------------------------------------

namespace {

void check_binary(const NatFn& path, nat bound) {
  for (nat i = 0; i < bound; ++i) {
    nat v = path(i);
    if (v > 1)
      throw std::invalid_argument("branch family: path '" + path.name() + "' is not 0/1-valued at " +
                                  std::to_string(i));
  }
}

// Code of path|_(len); len >= 1.
nat prefix_code(const NatFn& path, nat len) {
  nat c = 0;
  for (nat i = 0; i < len; ++i) {
    nat b = path(i);
    if (b > 1)
      throw std::invalid_argument("branch family: path '" + path.name() + "' is not 0/1-valued at " +
                                  std::to_string(i));
    if (c > (~nat{0} - 2) / 2) throw std::overflow_error("branch set: prefix code exceeds 64 bits");
    c = 2 * c + b + 1;
  }
  return c;
}

}  // namespace

SetRep branch_set(const NatFn& path, nat check_bound) {
  check_binary(path, std::min<nat>(check_bound, 64));
  auto member = [path](nat n) {
    if (n == 0) return false;  // code of the empty prefix is not in A_x
    std::vector<nat> bits = seq_decode(n);
    for (size_t i = 0; i < bits.size(); ++i)
      if (path(i) != bits[i]) return false;
    return true;
  };
  auto nth = [path](nat i) { return prefix_code(path, i + 1); };
  auto index_of = [path](nat n) -> std::optional<nat> {
    if (n == 0) return std::nullopt;
    std::vector<nat> bits = seq_decode(n);
    for (size_t i = 0; i < bits.size(); ++i)
      if (path(i) != bits[i]) return std::nullopt;
    return bits.size() - 1;
  };
  return SetRep::predicate("branch:" + path.name(), member).with_enumerator(nth, index_of);
}

const PairNote& ADFamily::note(nat i, nat j) const {
  if (i == j || i >= members.size() || j >= members.size())
    throw std::out_of_range("ADFamily::note: bad pair");
  if (i > j) std::swap(i, j);
  return notes[i][j - i - 1];
}

ADFamily branch_family(const std::vector<NatFn>& paths, nat check_bound) {
  ADFamily fam;
  fam.paths = paths;
  for (const NatFn& p : paths) fam.members.push_back(branch_set(p, check_bound));

  for (size_t i = 0; i < paths.size(); ++i) {
    fam.notes.emplace_back();
    for (size_t j = i + 1; j < paths.size(); ++j) {
      PairNote note;
      std::optional<nat> split;
      for (nat n = 0; n < check_bound; ++n) {
        if (paths[i](n) != paths[j](n)) {
          split = n;
          break;
        }
      }
      if (split) {
        note.exact = true;
        note.size = *split;  // |A_x & A_y| = length of common prefix
        for (nat len = 1; len <= *split; ++len) note.common.push_back(prefix_code(paths[i], len));
      } else {
        note.exact = false;
        note.bound = check_bound;
      }
      fam.notes[i].push_back(std::move(note));
    }
  }
  return fam;
}

std::vector<NatFn> family_indicators(const ADFamily& fam) {
  std::vector<NatFn> out;
  for (const SetRep& A : fam.members) out.push_back(indicator(A));
  for (const SetRep& A : fam.members) out.push_back(indicator_complement(A));
  out.push_back(NatFn::constant(0).renamed("ind:empty"));
  out.push_back(NatFn::constant(1).renamed("ind:all"));
  return out;
}

}  // namespace relrank
