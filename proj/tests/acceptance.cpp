// Acceptance gates for the library: one line per criterion, exit code is
// the number of failures.  Bounds, seeds and time limits are pinned here.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "relrank/diagonal.hpp"
#include "relrank/families.hpp"
#include "relrank/oracle.hpp"
#include "relrank/perfect.hpp"
#include "relrank/registry.hpp"
#include "relrank/report.hpp"
#include "relrank/sierpinski.hpp"
#include "relrank/ukm.hpp"
#include "relrank/verify.hpp"

using namespace relrank;

namespace {

constexpr nat kPrefix = 10000;

struct Outcome {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

// 1. Five targets fold through a single generator pair built over doubling.
Outcome criterion1() {
  Outcome out;
  auto [f, residues] = banach_base(2, 0);
  BanachOptions opts;
  opts.residues = residues;
  std::vector<NatFn> gs;
  for (nat i = 1; i <= 5; ++i) gs.push_back(make_natfn("rand:100:" + std::to_string(i), 1));
  auto d = banach_h(f, gs, opts);
  for (nat i = 1; i <= 5; ++i) {
    auto res = verify_banach(d, i, kPrefix);
    out.expect(res.ok, "chain identity failed for target " + std::to_string(i) + " at " +
                           std::to_string(res.witness.value_or(0)));
  }
  return out;
}

// 2. Sixteen simultaneous zero-product factorizations.
Outcome criterion2() {
  Outcome out;
  std::vector<NatFn> us;
  for (nat i = 0; i < 16; ++i) us.push_back(make_natfn("rand:100:" + std::to_string(i), 2));
  auto d = zero_family(us);
  auto fac = verify_zero_factorization(d, kPrefix);
  out.expect(fac.ok, "factorization failed at " + std::to_string(fac.witness.value_or(0)));
  auto zp = verify_zero_products(d, kPrefix);
  out.expect(zp.ok, "a product missed zero at " + std::to_string(zp.witness.value_or(0)));
  out.expect(d.gs.size() == 16, "wrong family size");
  return out;
}

// 3. Fifty random decidable pairs collapse correctly, plus an exhaustive
// finite cross-check over every pair of subsets of {1,2,3,4} on 5 points.
Outcome criterion3() {
  Outcome out;
  for (nat t = 0; t < 50 && out.ok; ++t) {
    auto A = make_setrep("randset:" + std::to_string(2 * t), 3);
    auto B = make_setrep("randset:" + std::to_string(2 * t + 1), 3);
    auto res = semilattice_check(A, B, kPrefix);
    out.expect(res.ok, "pair " + std::to_string(t) + " failed at " +
                           std::to_string(res.witness.value_or(0)));
  }
  auto table_for = [](nat mask) {
    std::vector<nat> t(5, 0);
    for (nat i = 1; i <= 4; ++i)
      if (mask & (nat(1) << (i - 1))) t[i] = i;
    return FiniteMap(5, t);
  };
  for (nat a = 0; a < 16; ++a)
    for (nat b = 0; b < 16; ++b) {
      auto got = table_for(a).after(table_for(b));
      out.expect(got == table_for(a & b), "finite cross-check failed for masks " +
                                              std::to_string(a) + "," + std::to_string(b));
    }
  return out;
}

// 4. Twenty random path pairs: the exhaustive intersection below 2^16
// equals the length of the common prefix.
Outcome criterion4() {
  Outcome out;
  for (nat t = 0; t < 20; ++t) {
    nat salt = t;
    nat base_a = 0, base_b = 0, lcp = 0;
    while (true) {
      base_a = seeded_at(4, 2 * salt);
      base_b = seeded_at(4, 2 * salt + 1);
      lcp = 0;
      while (lcp < 64 && (mix64(base_a + lcp) & 1) == (mix64(base_b + lcp) & 1)) ++lcp;
      if (lcp <= 13) break;  // keep every shared code below the scan bound
      salt += 1000;
    }
    auto path = [](nat base) {
      return NatFn::make("p", [base](nat i) -> nat { return mix64(base + i) & 1; });
    };
    auto A = branch_set(path(base_a));
    auto B = branch_set(path(base_b));
    nat shared = 0;
    for (nat n = 0; n < (nat(1) << 16); ++n)
      if (A.member(n) && B.member(n)) ++shared;
    out.expect(shared == lcp, "pair " + std::to_string(t) + ": shared " +
                                  std::to_string(shared) + " vs lcp " + std::to_string(lcp));
  }
  return out;
}

// 5. Twenty admissible parameter quadruples; the section-retraction identity
// and 100 transported members per quadruple, all on the full prefix.
Outcome criterion5() {
  Outcome out;
  Rng rng(seeded_at(5, 0));
  std::vector<std::pair<UkmParams, UkmParams>> quads;
  while (quads.size() < 20) {
    UkmParams from(rng.below(7), 2 + rng.below(5));
    UkmParams to(rng.below(7), 2 + rng.below(5));
    if (ukm_order(from, to)) quads.push_back({from, to});
  }
  for (nat q = 0; q < quads.size() && out.ok; ++q) {
    auto [from, to] = quads[q];
    auto maps = ukm_embed_maps(from, to);
    for (nat n = 0; n < kPrefix; ++n)
      if (maps.h(maps.g(n)) != n) {
        out.expect(false, "h.g misses the identity at " + std::to_string(n));
        break;
      }
    for (nat s = 0; s < 100 && out.ok; ++s) {
      auto f = sample_ukm_member(from, seeded_at(5, 1 + q * 100 + s));
      auto fp = ukm_transport(f, from, to, 1024);
      auto mem = ukm_member(fp, to, kPrefix);
      out.expect(mem.ok, "transported sample left the family at " +
                             std::to_string(mem.witness.value_or(0)));
      for (nat n = 0; n < kPrefix; ++n)
        if (f(n) != maps.h(fp(maps.g(n)))) {
          out.expect(false, "factorization broke at " + std::to_string(n));
          break;
        }
    }
  }
  return out;
}

// 6. Antichains of length 1..6 are pairwise incomparable both ways.
Outcome criterion6() {
  Outcome out;
  for (nat i = 1; i <= 6; ++i) {
    auto params = antichain_params(i);
    auto mat = comparability_matrix(params);
    for (nat p = 0; p < i; ++p)
      for (nat q = 0; q < i; ++q)
        if (p != q)
          out.expect(!mat[p][q], "antichain " + std::to_string(i) + " compares " +
                                     std::to_string(p) + " to " + std::to_string(q));
  }
  return out;
}

// 7. Image-bounded maps on 3 points saturate to exactly 21 maps, none
// surjective; ideal property at (3,2), (4,2), (4,3).
Outcome criterion7() {
  Outcome out;
  auto closure = saturate(maps_with_image_at_most(3, 2));
  out.expect(closure.size() == 21,
             "closure has " + std::to_string(closure.size()) + " maps, wanted 21");
  for (const auto& f : closure) out.expect(!f.surjective(), "a surjective map slipped in");
  out.expect(ideal_check(3, 2).holds, "(3,2): " + ideal_check(3, 2).witness);
  out.expect(ideal_check(4, 2).holds, "(4,2): " + ideal_check(4, 2).witness);
  out.expect(ideal_check(4, 3).holds, "(4,3): " + ideal_check(4, 3).witness);
  return out;
}

// 8. Depth-8 kernel on the code tree: invariants hold and all 256 colored
// branches are pairwise distinct.
Outcome criterion8() {
  Outcome out;
  auto kd = kernel_fresh_labels(branch_code_tree(), 8);
  auto inv = check_kernel(branch_code_tree(), kd);
  out.expect(inv.ok, inv.detail);
  auto col = color_and_check(kd);
  out.expect(col.injective, "coloring collided");
  out.expect(col.colored.size() == 256, "wrong branch count");
  for (nat a = 0; a < col.colored.size(); ++a)
    for (nat b = a + 1; b < col.colored.size(); ++b)
      if (col.colored[a] == col.colored[b]) {
        out.expect(false, "branches " + std::to_string(a) + " and " + std::to_string(b) +
                              " color identically");
        return out;
      }
  return out;
}

// 9. One two-valued f over the evens: support inside the domain on the full
// prefix, and a recorded disagreement index for every indicator in every
// cell of the (generator, family) grid.
Outcome criterion9() {
  Outcome out;
  std::vector<std::string> path_keys = {"0000", "0101", "0110", "1010"};
  std::vector<NatFn> raw;
  for (const auto& p : path_keys) {
    std::vector<nat> block;
    for (char c : p) block.push_back(static_cast<nat>(c - '0'));
    raw.push_back(NatFn::make("path:" + p + "~",
                              [block](nat i) { return block[i % block.size()]; }));
  }
  auto fam = branch_family(raw);
  auto res = find_one_f(SetRep::evens(), {fam}, {NatFn::identity(), NatFn::constant(0)});
  out.expect(res.cells.size() == 2, "expected one cell per generator");
  for (nat n = 0; n < kPrefix; ++n)
    if (res.fn(n) != 0 && n % 2 != 0) {
      out.expect(false, "support escaped the evens at " + std::to_string(n));
      break;
    }
  for (const auto& cell : res.cells) {
    out.expect(cell.separations.size() == 2 * fam.members.size() + 2,
               "an indicator went unchecked");
    for (const auto& sep : cell.separations)
      out.expect(sep.found, "cell (" + std::to_string(cell.i) + "," + std::to_string(cell.j) +
                                ") never disagreed with " + sep.against);
  }
  return out;
}

// 10. The invariant battery at seed 7 renders byte-identical JSON twice.
Outcome criterion10() {
  Outcome out;
  auto r1 = verify_all(1024, 7, 1 << 16);
  auto r2 = verify_all(1024, 7, 1 << 16);
  out.expect(r1.count(Verdict::fail) == 0, "the battery itself failed");
  out.expect(to_json(r1) == to_json(r2), "reports differ between runs");
  return out;
}

}  // namespace

int main() {
  struct Gate {
    const char* what;
    std::function<Outcome()> run;
    double limit_s;  // 0 = no limit
  };
  std::vector<Gate> gates = {
      {"five targets fold through one generator pair", criterion1, 5.0},
      {"sixteen zero-product factorizations", criterion2, 5.0},
      {"random and exhaustive collapse of s-map pairs", criterion3, 0},
      {"branch intersections equal common-prefix lengths", criterion4, 0},
      {"window-family embeddings transport members", criterion5, 0},
      {"antichains are pairwise incomparable", criterion6, 0},
      {"small-image closure and ideals are exact", criterion7, 0},
      {"depth-8 kernel extraction separates 256 branches", criterion8, 10.0},
      {"one f escapes a grid of indicator semigroups", criterion9, 0},
      {"the invariant battery is deterministic", criterion10, 0},
  };

  int failures = 0;
  for (nat i = 0; i < gates.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = gates[i].run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.note = std::string("threw: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && gates[i].limit_s > 0 && secs > gates[i].limit_s) {
      out.ok = false;
      out.note = "over the " + std::to_string(gates[i].limit_s) + "s limit";
    }
    if (!out.ok) ++failures;
    std::printf("criterion %2llu: %s  %s (%.2fs)%s%s\n",
                static_cast<unsigned long long>(i + 1), out.ok ? "pass" : "FAIL",
                gates[i].what, secs, out.note.empty() ? "" : " -- ", out.note.c_str());
  }
  return failures;
}
