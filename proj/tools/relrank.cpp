// relrank: desk-scale constructions and bounded checks for subsemigroups of
// the full transformation monoid on the naturals.  Every subcommand renders
// a RunReport as a table or JSON; the exit code is 0 unless a check failed.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relrank/diagonal.hpp"
#include "relrank/families.hpp"
#include "relrank/oracle.hpp"
#include "relrank/perfect.hpp"
#include "relrank/registry.hpp"
#include "relrank/report.hpp"
#include "relrank/sierpinski.hpp"
#include "relrank/ukm.hpp"
#include "relrank/verify.hpp"

namespace {

using namespace relrank;

struct Global {
  nat seed = 0;
  nat prefix_len = 1024;
  nat budget = 1 << 16;
  std::string format = "table";
  bool timing = false;
};

std::vector<NatFn> make_fns(const std::vector<std::string>& keys, nat seed) {
  std::vector<NatFn> out;
  for (const auto& k : keys) out.push_back(make_natfn(k, seed));
  return out;
}

json key_list(const std::vector<std::string>& keys) {
  json j = json::array();
  for (const auto& k : keys) j.push_back(k);
  return j;
}

// --f double | triple | lin:<a>:<b>  ->  (a, b)
std::pair<nat, nat> parse_linear_key(const std::string& key) {
  if (key == "double") return {2, 0};
  if (key == "triple") return {3, 0};
  if (key.rfind("lin:", 0) == 0) {
    auto rest = key.substr(4);
    auto colon = rest.find(':');
    if (colon != std::string::npos)
      return {std::stoull(rest.substr(0, colon)), std::stoull(rest.substr(colon + 1))};
  }
  throw CLI::ValidationError("--f", "expected double, triple or lin:<a>:<b>");
}

FiniteMap parse_finite_map(const std::string& key, nat n) {
  if (key == "id") {
    std::vector<nat> t(n);
    for (nat i = 0; i < n; ++i) t[i] = i;
    return FiniteMap(n, t);
  }
  if (key == "cyc") {
    std::vector<nat> t(n);
    for (nat i = 0; i < n; ++i) t[i] = (i + 1) % n;
    return FiniteMap(n, t);
  }
  if (key == "transp") {
    if (n < 2) throw CLI::ValidationError("--gens", "transp needs n >= 2");
    std::vector<nat> t(n);
    for (nat i = 0; i < n; ++i) t[i] = i;
    t[0] = 1;
    t[1] = 0;
    return FiniteMap(n, t);
  }
  if (key == "const0") return FiniteMap(n, std::vector<nat>(n, 0));
  if (key.rfind("table:[", 0) == 0 && key.back() == ']') {
    std::vector<nat> t;
    std::string body = key.substr(7, key.size() - 8);
    std::size_t start = 0;
    while (start <= body.size() && !body.empty()) {
      auto pos = body.find(',', start);
      t.push_back(std::stoull(body.substr(start, pos - start)));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (t.size() != n) throw CLI::ValidationError("--gens", "table length must equal --n");
    return FiniteMap(n, t);
  }
  throw CLI::ValidationError("--gens", "unknown map key: " + key);
}

PrefixTree parse_tree(const std::string& key) {
  if (key == "branch-codes") return branch_code_tree();
  if (key == "full-binary") return full_binary_tree();
  if (key.rfind("pinned-fresh:", 0) == 0) return pinned_fresh_tree(std::stoull(key.substr(13)));
  if (key.rfind("pinned-dead:", 0) == 0)
    return pinned_dead_branch_tree(std::stoull(key.substr(12)));
  throw CLI::ValidationError(
      "--tree", "expected branch-codes, full-binary, pinned-fresh:<a> or pinned-dead:<a>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructive checks for relative ranks of transformation semigroups"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "seed for every rand-flavoured key");
  app.add_option("--prefix-len", g.prefix_len, "default verification prefix length");
  app.add_option("--budget", g.budget, "scan budget for bounded searches");
  app.add_option("--format,--report", g.format, "output format")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_flag("--timing", g.timing, "include wall time in the report");

  std::function<RunReport()> action;

  // --- construct ------------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "two-generator constructions");

  {
    auto* c = construct->add_subcommand("banach", "fold target maps into one h");
    auto f_key = std::make_shared<std::string>("double");
    auto g_keys = std::make_shared<std::vector<std::string>>(
        std::vector<std::string>{"rand:100:1", "rand:100:2", "rand:100:3"});
    c->add_option("--f", *f_key, "injective non-surjective base map (linear keys)");
    c->add_option("--g", *g_keys, "target maps, one per chain")->expected(-1);
    c->callback([&, f_key, g_keys] {
      action = [&, f_key, g_keys] {
        RunReport r;
        r.command = "construct banach";
        auto [a, b] = parse_linear_key(*f_key);
        auto [f, residues] = banach_base(a, b);
        auto gs = make_fns(*g_keys, g.seed);
        BanachOptions opts;
        opts.residues = residues;
        auto data = banach_h(f, gs, opts);
        r.parameters = {{"f", f.name()},
                        {"g", key_list(*g_keys)},
                        {"seed", g.seed},
                        {"prefix_len", g.prefix_len},
                        {"residues", data.residues.name()},
                        {"scheme", data.scheme}};
        for (nat i = 1; i <= gs.size(); ++i) {
          std::string name = "g_" + std::to_string(i) + " = h.h.f^" + std::to_string(i) + ".h.f";
          auto res = verify_banach(data, i, g.prefix_len);
          if (res.ok)
            r.pass(name, g.prefix_len);
          else
            r.fail(name, {{"witness", *res.witness}}, g.prefix_len);
        }
        return r;
      };
    });
  }

  {
    auto* c = construct->add_subcommand("zerofamily", "zero-product factorizations u = k.g.h");
    auto u_keys = std::make_shared<std::vector<std::string>>(
        std::vector<std::string>{"rand:40:1", "rand:40:2", "rand:40:3", "rand:40:4"});
    c->add_option("--u", *u_keys, "maps to factor")->expected(-1);
    c->callback([&, u_keys] {
      action = [&, u_keys] {
        RunReport r;
        r.command = "construct zerofamily";
        r.parameters = {{"u", key_list(*u_keys)}, {"seed", g.seed}, {"prefix_len", g.prefix_len}};
        auto data = zero_family(make_fns(*u_keys, g.seed));
        auto fac = verify_zero_factorization(data, g.prefix_len);
        if (fac.ok)
          r.pass("u_a = k.g_a.h for every a", g.prefix_len);
        else
          r.fail("u_a = k.g_a.h for every a", {{"witness", *fac.witness}}, g.prefix_len);
        auto zp = verify_zero_products(data, g.prefix_len);
        if (zp.ok)
          r.pass("g_a.g_b = 0 for every pair", g.prefix_len);
        else
          r.fail("g_a.g_b = 0 for every pair", {{"witness", *zp.witness}}, g.prefix_len);
        return r;
      };
    });
  }

  // --- ukm -------------------------------------------------------------------
  auto* ukm = app.add_subcommand("ukm", "the window families U(k, m)");
  auto uk = std::make_shared<nat>(2), um = std::make_shared<nat>(3);
  auto ul = std::make_shared<nat>(3), un = std::make_shared<nat>(4);

  {
    auto* c = ukm->add_subcommand("order", "decide U(k,m) <= U(l,n)");
    c->add_option("--k", *uk);
    c->add_option("--m", *um);
    c->add_option("--l", *ul);
    c->add_option("--n", *un);
    c->callback([&, uk, um, ul, un] {
      action = [&, uk, um, ul, un] {
        RunReport r;
        r.command = "ukm order";
        r.parameters = {{"k", *uk}, {"m", *um}, {"l", *ul}, {"n", *un}};
        bool ordered = ukm_order({*uk, *um}, {*ul, *un});
        r.pass(ordered ? "ordered: U(k,m) embeds below U(l,n)"
                       : "not ordered: no embedding exists");
        return r;
      };
    });
  }

  {
    auto* c = ukm->add_subcommand("embed", "construct and check the embedding pair (g, h)");
    auto samples = std::make_shared<nat>(3);
    c->add_option("--k", *uk);
    c->add_option("--m", *um);
    c->add_option("--l", *ul);
    c->add_option("--n", *un);
    c->add_option("--samples", *samples, "members to transport and round-trip");
    c->callback([&, uk, um, ul, un, samples] {
      action = [&, uk, um, ul, un, samples] {
        RunReport r;
        r.command = "ukm embed";
        r.parameters = {
            {"k", *uk}, {"m", *um}, {"l", *ul}, {"n", *un},
            {"samples", *samples}, {"seed", g.seed}, {"prefix_len", g.prefix_len}};
        UkmParams from(*uk, *um), to(*ul, *un);
        auto maps = ukm_embed_maps(from, to);
        auto idp = agree_on_prefix(compose(maps.h, maps.g), NatFn::identity(), g.prefix_len);
        if (idp.agree)
          r.pass("h.g = identity", g.prefix_len);
        else
          r.fail("h.g = identity", {{"first_diff", idp.first_diff}}, g.prefix_len);
        for (nat t = 0; t < *samples; ++t) {
          NatFn f = sample_ukm_member(from, seeded_at(g.seed, 100 + t));
          NatFn fp = ukm_transport(f, from, to, g.prefix_len);
          auto mem = ukm_member(fp, to, g.prefix_len);
          auto rt = agree_on_prefix(f, compose(maps.h, compose(fp, maps.g)), g.prefix_len);
          std::string name = "sample " + std::to_string(t) + ": transport stays in U(l,n) and f = h.f'.g";
          if (mem.ok && rt.agree)
            r.pass(name, g.prefix_len);
          else
            r.fail(name, {{"member_ok", mem.ok}, {"round_trip", rt.agree}}, g.prefix_len);
        }
        return r;
      };
    });
  }

  {
    auto* c = ukm->add_subcommand("antichain", "pairwise incomparable parameter list");
    auto i = std::make_shared<nat>(4);
    c->add_option("--i", *i, "antichain length");
    c->callback([&, i] {
      action = [&, i] {
        RunReport r;
        r.command = "ukm antichain";
        r.parameters = {{"i", *i}};
        auto params = antichain_params(*i);
        json plist = json::array();
        for (auto p : params) plist.push_back({{"k", p.k}, {"m", p.m}});
        r.parameters["params"] = plist;
        auto mat = comparability_matrix(params);
        bool ok = true;
        for (nat p = 0; p < params.size() && ok; ++p)
          for (nat q = 0; q < params.size() && ok; ++q)
            if (p != q && mat[p][q]) {
              r.fail("pairwise incomparable", {{"p", p}, {"q", q}});
              ok = false;
            }
        if (ok) r.pass("pairwise incomparable");
        return r;
      };
    });
  }

  // --- family ------------------------------------------------------------------
  auto* family = app.add_subcommand("family", "s-maps and almost-disjoint branch families");

  {
    auto* c = family->add_subcommand("branch", "family of prefix-code sets, one per path");
    auto paths = std::make_shared<std::vector<std::string>>(
        std::vector<std::string>{"0101~", "0110~"});
    c->add_option("--paths", *paths, "binary path blocks (trailing ~ repeats)")->expected(-1);
    c->callback([&, paths] {
      action = [&, paths] {
        RunReport r;
        r.command = "family branch";
        r.parameters = {{"paths", key_list(*paths)}};
        std::vector<NatFn> fns;
        for (const auto& p : *paths) {
          SetRep s = make_setrep("branch:" + p, g.seed);
          (void)s;  // validates the key
          fns.push_back(make_natfn("ind:branch:" + p, g.seed));
        }
        // the family wants the raw 0/1 paths, not the indicator of the set
        std::vector<NatFn> raw;
        for (const auto& p : *paths) {
          std::string bits = p;
          bool repeat = !bits.empty() && bits.back() == '~';
          if (repeat) bits.pop_back();
          std::vector<nat> block;
          for (char ch : bits) block.push_back(static_cast<nat>(ch - '0'));
          raw.push_back(NatFn::make("path:" + p, [block, repeat](nat i) -> nat {
            if (i < block.size()) return block[i];
            return repeat ? block[i % block.size()] : 0;
          }));
        }
        auto fam = branch_family(raw);
        for (nat i = 0; i < fam.members.size(); ++i)
          for (nat j = i + 1; j < fam.members.size(); ++j) {
            const auto& note = fam.note(i, j);
            std::string name =
                "members " + std::to_string(i) + "," + std::to_string(j) + " meet finitely";
            if (note.exact)
              r.pass(name + " (exactly " + std::to_string(note.size) + " shared codes)");
            else
              r.inconclusive(name, note.bound);
          }
        r.parameters["indicators"] = family_indicators(fam).size();
        return r;
      };
    });
  }

  {
    auto* c = family->add_subcommand("semilattice", "s_A.s_B = s_{A&B} on a prefix");
    auto a = std::make_shared<std::string>("evens");
    auto b = std::make_shared<std::string>("mult:3");
    c->add_option("--a", *a, "first set key");
    c->add_option("--b", *b, "second set key");
    c->callback([&, a, b] {
      action = [&, a, b] {
        RunReport r;
        r.command = "family semilattice";
        r.parameters = {{"a", *a}, {"b", *b}, {"prefix_len", g.prefix_len}, {"seed", g.seed}};
        auto res = semilattice_check(make_setrep(*a, g.seed), make_setrep(*b, g.seed),
                                     g.prefix_len);
        if (res.ok)
          r.pass("s_A.s_B = s_{A&B} and both idempotent", g.prefix_len);
        else
          r.fail("s_A.s_B = s_{A&B} and both idempotent", {{"witness", *res.witness}},
                 g.prefix_len);
        return r;
      };
    });
  }

  // --- perfect --------------------------------------------------------------------
  auto* perfect = app.add_subcommand("perfect", "binary-kernel extraction from prefix trees");

  {
    auto* c = perfect->add_subcommand("kernel", "embed a full binary kernel and color it");
    auto tree_key = std::make_shared<std::string>("branch-codes");
    auto depth = std::make_shared<nat>(5);
    auto pinned = std::make_shared<std::string>();
    auto assemble = std::make_shared<bool>(false);
    c->add_option("--tree", *tree_key, "branch-codes | full-binary | pinned-fresh:<a> | pinned-dead:<a>");
    c->add_option("--depth", *depth, "kernel depth");
    c->add_option("--pinned", *pinned, "pin label0 to this value (uses the pinned-label variant)");
    c->add_flag("--assemble", *assemble, "also close up the two-valued prefix set");
    c->callback([&, tree_key, depth, pinned, assemble] {
      action = [&, tree_key, depth, pinned, assemble] {
        RunReport r;
        r.command = "perfect kernel";
        r.parameters = {{"tree", *tree_key}, {"depth", *depth}};
        PrefixTree tree = parse_tree(*tree_key);
        KernelData kd;
        if (pinned->empty()) {
          kd = kernel_fresh_labels(tree, *depth);
        } else {
          nat a = std::stoull(*pinned);
          r.parameters["pinned"] = a;
          kd = kernel_pinned_label(tree, a, {}, *depth);
        }
        auto inv = check_kernel(tree, kd);
        if (inv.ok)
          r.pass("label ranges disjoint and nodes extend along labels");
        else
          r.fail("label ranges disjoint and nodes extend along labels", {{"detail", inv.detail}});
        auto col = color_and_check(kd);
        std::string branches = std::to_string(nat(1) << *depth);
        if (col.injective)
          r.pass("coloring separates all " + branches + " branches");
        else
          r.fail("coloring separates all " + branches + " branches",
                 {{"collision", {col.collision->first, col.collision->second}}});
        if (*depth <= 5) {
          json labels = json::array();
          for (const auto& [code, l0] : kd.label0)
            labels.push_back({{"node", code}, {"label0", l0}, {"label1", kd.label1.at(code)}});
          r.parameters["labels"] = labels;
        }
        if (*assemble) {
          auto asm_res = assemble_two_valued(col.colored);
          r.parameters["elements"] = asm_res.elements.size();
          if (asm_res.closed)
            r.pass("two-valued prefix set closed under composition");
          else
            r.fail("two-valued prefix set closed under composition", nullptr);
        }
        return r;
      };
    });
  }

  // --- diagonal --------------------------------------------------------------------
  auto* diagonal = app.add_subcommand("diagonal", "word tails and separating functions");

  {
    auto* c = diagonal->add_subcommand("classify", "collapse an alternating word on a window");
    auto u_keys = std::make_shared<std::vector<std::string>>(
        std::vector<std::string>{"double", "succ"});
    auto set_keys = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"evens"});
    auto hyp_keys = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"evens"});
    auto domain = std::make_shared<std::string>("all");
    c->add_option("--u", *u_keys, "functions, innermost first")->expected(-1);
    c->add_option("--sets", *set_keys, "s-map sets between them")->expected(-1);
    c->add_option("--hyp", *hyp_keys, "claimed stage sets (use complements for crush claims)")
        ->expected(-1);
    c->add_option("--domain", *domain, "window domain");
    c->callback([&, u_keys, set_keys, hyp_keys, domain] {
      action = [&, u_keys, set_keys, hyp_keys, domain] {
        RunReport r;
        r.command = "diagonal classify";
        r.parameters = {{"u", key_list(*u_keys)},
                        {"sets", key_list(*set_keys)},
                        {"hyp", key_list(*hyp_keys)},
                        {"domain", *domain},
                        {"seed", g.seed}};
        Word w;
        w.us = make_fns(*u_keys, g.seed);
        for (const auto& k : *set_keys) w.sets.push_back(make_setrep(k, g.seed));
        std::vector<SetRep> hyp;
        for (const auto& k : *hyp_keys) hyp.push_back(make_setrep(k, g.seed));
        auto rep = classify_word_tail(w, hyp, make_setrep(*domain, g.seed));
        switch (rep.kind) {
          case TailKind::composite:
            r.pass("word equals its clean composite on the window");
            break;
          case TailKind::constant:
            r.pass("word is constant " + std::to_string(rep.constant_value) + " on the window");
            break;
          case TailKind::violation:
            r.fail("word collapses on the window",
                   {{"detail", rep.detail}, {"index", *rep.violation_index}});
            break;
        }
        return r;
      };
    });
  }

  {
    auto* c = diagonal->add_subcommand("findone",
                                       "one two-valued f outside every listed indicator semigroup");
    auto domain = std::make_shared<std::string>("evens");
    auto paths = std::make_shared<std::vector<std::string>>(
        std::vector<std::string>{"0101~", "0110~"});
    auto xs_keys = std::make_shared<std::vector<std::string>>(
        std::vector<std::string>{"identity", "zero"});
    c->add_option("--domain", *domain, "support domain (needs an enumerator)");
    c->add_option("--paths", *paths, "branch family paths")->expected(-1);
    c->add_option("--xs", *xs_keys, "generators to compose against")->expected(-1);
    c->callback([&, domain, paths, xs_keys] {
      action = [&, domain, paths, xs_keys] {
        RunReport r;
        r.command = "diagonal findone";
        r.parameters = {{"domain", *domain},
                        {"paths", key_list(*paths)},
                        {"xs", key_list(*xs_keys)},
                        {"seed", g.seed}};
        std::vector<NatFn> raw;
        for (const auto& p : *paths) {
          std::string bits = p;
          bool repeat = !bits.empty() && bits.back() == '~';
          if (repeat) bits.pop_back();
          std::vector<nat> block;
          for (char ch : bits) block.push_back(static_cast<nat>(ch - '0'));
          raw.push_back(NatFn::make("path:" + p, [block, repeat](nat i) -> nat {
            if (i < block.size()) return block[i];
            return repeat ? block[i % block.size()] : 0;
          }));
        }
        auto fam = branch_family(raw);
        auto res = find_one_f(make_setrep(*domain, g.seed), {fam}, make_fns(*xs_keys, g.seed));
        for (const auto& cell : res.cells) {
          std::string tag = "cell (" + std::to_string(cell.i) + "," + std::to_string(cell.j) +
                            ") separated from every indicator";
          bool all = true;
          for (const auto& sep : cell.separations) all = all && sep.found;
          json detail = {{"case", static_cast<int>(cell.kind)}, {"exact", cell.exact}};
          if (all)
            r.pass(tag);
          else
            r.fail(tag, detail);
        }
        return r;
      };
    });
  }

  // --- oracle --------------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "exhaustive checks on a handful of points");
  auto on = std::make_shared<nat>(3), ok_ = std::make_shared<nat>(2);

  {
    auto* c = oracle->add_subcommand("saturate", "close generators under composition");
    auto gens = std::make_shared<std::vector<std::string>>();
    c->add_option("--n", *on, "points (at most 7)");
    c->add_option("--k", *ok_, "image bound for the default generator set");
    c->add_option("--gens", *gens, "id | cyc | transp | const0 | table:[...]")->expected(-1);
    c->callback([&, on, ok_, gens] {
      action = [&, on, ok_, gens] {
        RunReport r;
        r.command = "oracle saturate";
        r.parameters = {{"n", *on}, {"k", *ok_}};
        std::vector<FiniteMap> gen_maps;
        if (gens->empty()) {
          gen_maps = maps_with_image_at_most(*on, *ok_);
        } else {
          r.parameters["gens"] = key_list(*gens);
          for (const auto& k : *gens) gen_maps.push_back(parse_finite_map(k, *on));
        }
        auto closure = saturate(gen_maps);
        r.parameters["closure_size"] = closure.size();
        r.pass("closure computed (" + std::to_string(closure.size()) + " maps)");
        if (gens->empty()) {
          bool inside = true;
          nat witness = 0;
          for (const auto& f : closure)
            if (f.image_size() > *ok_) {
              inside = false;
              witness = f.pack();
              break;
            }
          if (inside)
            r.pass("closure stays inside the image bound");
          else
            r.fail("closure stays inside the image bound", {{"packed", witness}});
        }
        return r;
      };
    });
  }

  {
    auto* c = oracle->add_subcommand("ideal", "two-sided ideal of small-image maps");
    c->add_option("--n", *on, "points (at most 7)");
    c->add_option("--k", *ok_, "image bound");
    c->callback([&, on, ok_] {
      action = [&, on, ok_] {
        RunReport r;
        r.command = "oracle ideal";
        r.parameters = {{"n", *on}, {"k", *ok_}};
        auto res = ideal_check(*on, *ok_);
        if (res.holds)
          r.pass("image-bounded maps absorb arbitrary composition");
        else
          r.fail("image-bounded maps absorb arbitrary composition", {{"witness", res.witness}});
        return r;
      };
    });
  }

  // --- verify --------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "cross-module invariant battery");
  {
    auto* c = verify->add_subcommand("all", "run every bounded invariant check");
    c->callback([&] {
      action = [&] { return verify_all(g.prefix_len, g.seed, g.budget); };
    });
  }

  CLI11_PARSE(app, argc, argv);

  if (!action) {
    std::cerr << "no action selected\n";
    return 2;
  }

  try {
    auto start = std::chrono::steady_clock::now();
    RunReport report = action();
    if (g.timing) {
      auto end = std::chrono::steady_clock::now();
      report.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
    }
    std::cout << (g.format == "json" ? to_json(report) : to_table(report));
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
