#include "relrank/verify.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "relrank/diagonal.hpp"
#include "relrank/families.hpp"
#include "relrank/natfn.hpp"
#include "relrank/oracle.hpp"
#include "relrank/perfect.hpp"
#include "relrank/registry.hpp"
#include "relrank/sets.hpp"
#include "relrank/sierpinski.hpp"
#include "relrank/ukm.hpp"

namespace relrank {

namespace {

// Runs one named check; an escaped exception is a failure, not a crash.
void section(RunReport& r, const std::string& name, std::optional<nat> bound,
             const std::function<void(RunReport&)>& body) {
  try {
    body(r);
  } catch (const std::exception& e) {
    r.fail(name + " (threw)", {{"error", e.what()}}, bound);
  }
}

}  // namespace

RunReport verify_all(nat prefix_len, nat seed, nat budget) {
  RunReport r;
  r.command = "verify all";
  r.parameters = {{"prefix_len", prefix_len}, {"seed", seed}, {"budget", budget}};

  const nat m = std::max<nat>(prefix_len, 64);

  // --- pairing and codes ---------------------------------------------------
  section(r, "pairing round-trip", m, [&](RunReport& rr) {
    for (nat n = 0; n < m; ++n) {
      auto [a, b] = cantor_unpair(n);
      if (cantor_pair(a, b) != n) {
        rr.fail("pairing round-trip", {{"n", n}, {"a", a}, {"b", b}}, m);
        return;
      }
    }
    rr.pass("pairing round-trip", m);
  });

  section(r, "tuple code round-trip", 200, [&](RunReport& rr) {
    Rng rng(seeded_at(seed, 1));
    for (nat t = 0; t < 200; ++t) {
      // longer tuples overflow the code space: each entry squares the code
      std::vector<nat> tuple(rng.below(4));
      for (auto& x : tuple) x = rng.below(50);
      nat code = tuple_code(tuple);
      if (tuple_decode(code) != tuple) {
        rr.fail("tuple code round-trip", {{"code", code}}, 200);
        return;
      }
    }
    rr.pass("tuple code round-trip", 200);
  });

  section(r, "sequence code round-trip", m, [&](RunReport& rr) {
    for (nat c = 0; c < m; ++c) {
      auto bits = seq_decode(c);
      if (seq_code(bits) != c) {
        rr.fail("sequence code round-trip", {{"code", c}}, m);
        return;
      }
    }
    rr.pass("sequence code round-trip", m);
  });

  // --- set enumerators -----------------------------------------------------
  section(r, "set enumerators consistent", 128, [&](RunReport& rr) {
    std::vector<SetRep> sets = {SetRep::evens(),          SetRep::odds(),
                                SetRep::multiples(3),     SetRep::residue_class(5, 2),
                                SetRep::cofinite({0, 5}), SetRep::finite({2, 3, 10})};
    for (const auto& s : sets) {
      nat count = s.size() ? std::min<nat>(*s.size(), 128) : 128;
      nat prev = 0;
      for (nat i = 0; i < count; ++i) {
        nat v = s.nth(i);
        if (i > 0 && v <= prev) {
          rr.fail("set enumerators consistent", {{"set", s.name()}, {"i", i}}, 128);
          return;
        }
        if (!s.member(v) || s.index_of(v) != i) {
          rr.fail("set enumerators consistent", {{"set", s.name()}, {"value", v}}, 128);
          return;
        }
        prev = v;
      }
    }
    rr.pass("set enumerators consistent", 128);
  });

  // --- function algebra ----------------------------------------------------
  section(r, "compose and power agree with closed forms", m, [&](RunReport& rr) {
    auto p = agree_on_prefix(power(make_natfn("double"), 3), make_natfn("lin:8:0"), m);
    auto c = agree_on_prefix(compose(make_natfn("succ"), make_natfn("double")),
                             make_natfn("lin:2:1"), m);
    if (!p.agree || !c.agree) {
      rr.fail("compose and power agree with closed forms",
              {{"first_diff", p.agree ? c.first_diff : p.first_diff}}, m);
      return;
    }
    rr.pass("compose and power agree with closed forms", m);
  });

  section(r, "cache transparent", m, [&](RunReport& rr) {
    NatFn f = make_natfn("rand:97", seed);
    NatFn g = NatFn::make("cached copy", [f](nat n) { return f(n); }, /*cache=*/true);
    auto a1 = agree_on_prefix(f, g, m);
    auto a2 = agree_on_prefix(f, g, m);  // second pass reads the cache
    if (!a1.agree || !a2.agree) {
      rr.fail("cache transparent", {{"first_diff", a1.agree ? a2.first_diff : a1.first_diff}},
              m);
      return;
    }
    rr.pass("cache transparent", m);
  });

  // --- s-maps --------------------------------------------------------------
  section(r, "s-maps collapse to intersections", std::min<nat>(m, 2048), [&](RunReport& rr) {
    nat bound = std::min<nat>(m, 2048);
    for (nat t = 0; t < 8; ++t) {
      SetRep A = make_setrep("randset:" + std::to_string(2 * t), seed);
      SetRep B = make_setrep("randset:" + std::to_string(2 * t + 1), seed);
      auto res = semilattice_check(A, B, bound);
      if (!res.ok) {
        rr.fail("s-maps collapse to intersections", {{"pair", t}, {"witness", *res.witness}},
                bound);
        return;
      }
    }
    rr.pass("s-maps collapse to intersections", bound);
  });

  // --- branch families -----------------------------------------------------
  section(r, "branch sets meet in their common prefix", budget, [&](RunReport& rr) {
    SetRep A = make_setrep("branch:0101~", seed);
    SetRep B = make_setrep("branch:0100~", seed);
    nat shared = 0;
    for (nat n = 0; n < budget; ++n)
      if (A.member(n) && B.member(n)) ++shared;
    // the paths agree on exactly their first three bits, and the codes of
    // those prefixes all sit far below the budget
    if (shared != 3) {
      rr.fail("branch sets meet in their common prefix", {{"shared", shared}, {"expected", 3}},
              budget);
      return;
    }
    rr.pass("branch sets meet in their common prefix", budget);
  });

  // --- U(k, m) -------------------------------------------------------------
  section(r, "window family embedding", m, [&](RunReport& rr) {
    UkmParams from(2, 3), to(3, 4);
    auto maps = ukm_embed_maps(from, to);
    auto idp = agree_on_prefix(compose(maps.h, maps.g), NatFn::identity(), m);
    if (!idp.agree) {
      rr.fail("window family embedding", {{"h.g first_diff", idp.first_diff}}, m);
      return;
    }
    for (nat t = 0; t < 3; ++t) {
      NatFn f = sample_ukm_member(from, seeded_at(seed, 100 + t));
      NatFn fp = ukm_transport(f, from, to, std::min<nat>(m, 1024));
      auto mem = ukm_member(fp, to, m);
      auto rt = agree_on_prefix(f, compose(maps.h, compose(fp, maps.g)), m);
      if (!mem.ok || !rt.agree) {
        rr.fail("window family embedding",
                {{"sample", t}, {"member_ok", mem.ok}, {"round_trip", rt.agree}}, m);
        return;
      }
    }
    rr.pass("window family embedding", m);
  });

  section(r, "window family antichain", 4, [&](RunReport& rr) {
    auto params = antichain_params(4);
    auto mat = comparability_matrix(params);
    for (nat p = 0; p < params.size(); ++p)
      for (nat q = 0; q < params.size(); ++q)
        if (p != q && mat[p][q]) {
          rr.fail("window family antichain", {{"p", p}, {"q", q}}, 4);
          return;
        }
    rr.pass("window family antichain", 4);
  });

  // --- two-generator constructions ------------------------------------------
  section(r, "two-generator chain identities", std::min<nat>(m, 512), [&](RunReport& rr) {
    nat bound = std::min<nat>(m, 512);
    auto [f, residues] = banach_base(2, 0);
    std::vector<NatFn> gs;
    for (nat i = 0; i < 3; ++i) gs.push_back(make_natfn("rand:50:" + std::to_string(i), seed));
    BanachOptions opts;
    opts.residues = residues;
    auto data = banach_h(f, gs, opts);
    for (nat i = 1; i <= gs.size(); ++i) {
      auto res = verify_banach(data, i, bound);
      if (!res.ok) {
        rr.fail("two-generator chain identities", {{"i", i}, {"witness", *res.witness}}, bound);
        return;
      }
    }
    rr.pass("two-generator chain identities", bound);
  });

  section(r, "zero-product factorization", std::min<nat>(m, 2048), [&](RunReport& rr) {
    nat bound = std::min<nat>(m, 2048);
    std::vector<NatFn> us;
    for (nat i = 0; i < 4; ++i) us.push_back(make_natfn("rand:40:" + std::to_string(10 + i), seed));
    auto data = zero_family(us);
    auto fac = verify_zero_factorization(data, bound);
    auto zp = verify_zero_products(data, bound);
    if (!fac.ok || !zp.ok) {
      rr.fail("zero-product factorization",
              {{"factorization_ok", fac.ok}, {"products_ok", zp.ok}}, bound);
      return;
    }
    rr.pass("zero-product factorization", bound);
  });

  // --- kernel extraction ----------------------------------------------------
  section(r, "kernel extraction on the code tree", 5, [&](RunReport& rr) {
    auto kd = kernel_fresh_labels(branch_code_tree(), 5);
    auto inv = check_kernel(branch_code_tree(), kd);
    if (!inv.ok) {
      rr.fail("kernel extraction on the code tree", {{"detail", inv.detail}}, 5);
      return;
    }
    auto col = color_and_check(kd);
    if (!col.injective) {
      rr.fail("kernel extraction on the code tree", {{"collision", true}}, 5);
      return;
    }
    rr.pass("kernel extraction on the code tree", 5);
  });

  section(r, "kernel extraction rejects bounded labels", 3, [&](RunReport& rr) {
    try {
      kernel_fresh_labels(full_binary_tree(), 3);
      rr.fail("kernel extraction rejects bounded labels", {{"threw", false}}, 3);
    } catch (const KernelSearchError&) {
      rr.pass("kernel extraction rejects bounded labels", 3);
    }
  });

  // --- word tails and the separating f ---------------------------------------
  section(r, "word tail collapses", 512, [&](RunReport& rr) {
    Word in_word{{make_natfn("double"), make_natfn("succ")}, {SetRep::evens()}};
    auto in_rep = classify_word_tail(in_word, {SetRep::evens()}, SetRep::all());
    Word out_word{{make_natfn("double"), make_natfn("succ")}, {SetRep::odds()}};
    auto out_rep = classify_word_tail(out_word, {SetRep::evens()}, SetRep::all());
    bool ok = in_rep.kind == TailKind::composite && out_rep.kind == TailKind::constant &&
              out_rep.constant_value == 1;
    if (!ok) {
      rr.fail("word tail collapses",
              {{"in", static_cast<int>(in_rep.kind)}, {"out", static_cast<int>(out_rep.kind)}},
              512);
      return;
    }
    rr.pass("word tail collapses", 512);
  });

  section(r, "merged-pair witness separates", 512, [&](RunReport& rr) {
    CaseWitness w;
    w.kind = CaseWitness::Kind::merged_pair;
    w.N = SetRep::all();
    w.composite = make_natfn("halve");
    for (nat t = 70; t < 74; ++t) w.pairs.push_back({2 * t, 2 * t + 1});
    auto pf = build_case_fn(w);
    Word word{{make_natfn("halve")}, {}};
    auto sep = separate_check(pf, word);
    if (!sep.separated) {
      rr.fail("merged-pair witness separates", {{"separated", false}}, 512);
      return;
    }
    rr.pass("merged-pair witness separates", 512);
  });

  section(r, "one f against a grid of indicator semigroups", std::min<nat>(m, 2048),
          [&](RunReport& rr) {
            nat bound = std::min<nat>(m, 2048);
            auto fam =
                branch_family({make_natfn("ind:mult:3"), make_natfn("coind:mult:3")});
            FindOneBounds fb;
            fb.cell_points = 24;
            fb.heavy_cutoff = 8;
            auto res = find_one_f(SetRep::evens(), {fam},
                                  {NatFn::identity(), NatFn::constant(0)}, fb);
            for (nat n = 0; n < bound; ++n)
              if (res.fn(n) != 0 && !SetRep::evens().member(n)) {
                rr.fail("one f against a grid of indicator semigroups",
                        {{"support escapes at", n}}, bound);
                return;
              }
            for (const auto& cell : res.cells)
              for (const auto& sep : cell.separations)
                if (!sep.found) {
                  rr.fail("one f against a grid of indicator semigroups",
                          {{"cell_i", cell.i}, {"cell_j", cell.j}, {"against", sep.against}},
                          bound);
                  return;
                }
            rr.pass("one f against a grid of indicator semigroups", bound);
          });

  // --- finite oracle ----------------------------------------------------------
  section(r, "finite saturation and ideals", 3, [&](RunReport& rr) {
    auto sat = saturate(maps_with_image_at_most(3, 2));
    if (sat.size() != 21) {
      rr.fail("finite saturation and ideals", {{"closure_size", sat.size()}, {"expected", 21}},
              3);
      return;
    }
    auto ic = ideal_check(3, 2);
    if (!ic.holds) {
      rr.fail("finite saturation and ideals", {{"witness", ic.witness}}, 3);
      return;
    }
    rr.pass("finite saturation and ideals", 3);
  });

  return r;
}

}  // namespace relrank
