#include "relrank/diagonal.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace relrank {

namespace {

std::vector<nat> window_of(const SetRep& s, const WindowBounds& b) {
  auto pts = s.first(b.skip + b.len, b.scan_budget);
  if (pts.size() <= b.skip)
    throw std::runtime_error("window_of: set too thin for the requested window: " + s.name());
  return std::vector<nat>(pts.begin() + static_cast<std::ptrdiff_t>(b.skip), pts.end());
}

}  // namespace

nat Word::eval(nat n) const {
  validate();
  nat v = us[0](n);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    v = sets[j].member(v) ? v : 0;
    v = us[j + 1](v);
  }
  return v;
}

NatFn Word::to_fn() const {
  validate();
  std::ostringstream nm;
  for (std::size_t j = us.size(); j-- > 0;) {
    nm << us[j].name();
    if (j > 0) nm << ".s[" << sets[j - 1].name() << "].";
  }
  auto copy = std::make_shared<Word>(*this);
  return NatFn::make(nm.str(), [copy](nat n) { return copy->eval(n); });
}

TailReport classify_word_tail(const Word& w, const std::vector<SetRep>& hyp, const SetRep& N,
                              WindowBounds bounds) {
  w.validate();
  const std::size_t r = w.sets.size();
  if (hyp.size() != r)
    throw std::invalid_argument("classify_word_tail: need one hypothesis set per s-stage");

  auto window = window_of(N, bounds);

  TailReport rep;
  std::vector<nat> clean(window.size()), value(window.size());
  for (std::size_t t = 0; t < window.size(); ++t) {
    nat n = window[t];
    // clean composite, checking the containment hypothesis stage by stage
    nat c = w.us[0](n);
    for (std::size_t j = 0; j < r; ++j) {
      if (!hyp[j].member(c)) {
        rep.kind = TailKind::violation;
        std::ostringstream os;
        os << "hypothesis fails at stage " << j << ": stage value " << c << " not in "
           << hyp[j].name();
        rep.detail = os.str();
        rep.violation_index = n;
        return rep;
      }
      c = w.us[j + 1](c);
    }
    clean[t] = c;
    value[t] = w.eval(n);
  }

  bool is_composite = true, is_constant = true;
  std::size_t first_diff = 0;
  for (std::size_t t = 0; t < window.size(); ++t) {
    if (value[t] != clean[t]) {
      if (is_composite) first_diff = t;
      is_composite = false;
    }
    if (value[t] != value[0]) is_constant = false;
  }
  if (is_composite) {
    rep.kind = TailKind::composite;
    return rep;
  }
  if (is_constant) {
    rep.kind = TailKind::constant;
    rep.constant_value = value[0];
    return rep;
  }
  rep.kind = TailKind::violation;
  {
    std::ostringstream os;
    os << "word is neither the clean composite nor constant on the window; first composite "
          "mismatch at "
       << window[first_diff] << " (word " << value[first_diff] << ", composite "
       << clean[first_diff] << ")";
    rep.detail = os.str();
  }
  rep.violation_index = window[first_diff];
  return rep;
}

// ---------------------------------------------------------------------------
// build_case_fn
// ---------------------------------------------------------------------------

namespace {

// need at least this many window points on each side of every required split
constexpr nat kMinEvidence = 8;

[[noreturn]] void witness_fail(const std::string& what) {
  throw std::invalid_argument("build_case_fn: " + what);
}

void check_subset_window(const SetRep& M, const SetRep& N, const WindowBounds& b) {
  auto pts = M.first(std::min<nat>(b.len, 128), b.scan_budget);
  if (pts.empty()) witness_fail("M has no points within the scan budget");
  for (nat p : pts)
    if (!N.member(p)) witness_fail("M is not contained in N (point " + std::to_string(p) + ")");
}

void check_both_sides(const std::vector<nat>& window, const SetRep& M) {
  nat in = 0, out = 0;
  for (nat p : window) (M.member(p) ? in : out)++;
  if (in < kMinEvidence || out < kMinEvidence)
    witness_fail("M does not split the window of N both ways (" + std::to_string(in) + " in, " +
                 std::to_string(out) + " out)");
}

}  // namespace

PartialFn build_case_fn(const CaseWitness& w, WindowBounds bounds) {
  auto window = window_of(w.N, bounds);
  std::unordered_set<nat> window_set(window.begin(), window.end());

  switch (w.kind) {
    case CaseWitness::Kind::merged_pair: {
      if (w.pairs.empty()) witness_fail("merged_pair needs at least one pair");
      std::set<nat> kept, dropped;
      for (auto [m, n] : w.pairs) {
        if (m == n) witness_fail("merged_pair: degenerate pair");
        if (!w.N.member(m) || !w.N.member(n)) witness_fail("merged_pair: pair escapes N");
        if (w.composite(m) != w.composite(n))
          witness_fail("merged_pair: composite separates the pair (" + std::to_string(m) + "," +
                       std::to_string(n) + ")");
        kept.insert(m);
        dropped.insert(n);
      }
      std::vector<nat> all;
      std::set_intersection(kept.begin(), kept.end(), dropped.begin(), dropped.end(),
                            std::back_inserter(all));
      if (!all.empty()) witness_fail("merged_pair: a point appears on both sides of a pair");
      auto keep = std::make_shared<std::set<nat>>(std::move(kept));
      PartialFn out;
      out.fn = NatFn::make("case_f:merged_pair",
                           [keep](nat n) -> nat { return keep->count(n) ? 1 : 0; });
      FnMeta meta;
      meta.image_bound = 2;
      meta.image_bound_provenance = Provenance::constructed();
      out.fn = out.fn.with_meta(meta);
      out.domain = w.N;
      return out;
    }
    case CaseWitness::Kind::full_set:
    case CaseWitness::Kind::escaping_set: {
      check_subset_window(w.M, w.N, bounds);
      check_both_sides(window, w.M);
      break;
    }
    case CaseWitness::Kind::split_set: {
      check_subset_window(w.M, w.N, bounds);
      check_both_sides(window, w.M);
      // composite must land inside and outside A from both M and its complement
      nat counts[2][2] = {{0, 0}, {0, 0}};
      for (nat p : window) {
        nat side = w.M.member(p) ? 1 : 0;
        nat hit = w.A.member(w.composite(p)) ? 1 : 0;
        counts[side][hit]++;
      }
      for (int side = 0; side < 2; ++side)
        for (int hit = 0; hit < 2; ++hit)
          if (counts[side][hit] < kMinEvidence)
            witness_fail("split_set: composite images do not split across " + w.A.name() +
                         " on both sides of M");
      break;
    }
  }

  // the three set-shaped cases share their f: the indicator of M on N
  SetRep M = w.M;
  const char* tag = w.kind == CaseWitness::Kind::full_set     ? "case_f:full_set"
                    : w.kind == CaseWitness::Kind::split_set  ? "case_f:split_set"
                                                              : "case_f:escaping_set";
  PartialFn out;
  out.fn = indicator(M).renamed(tag);
  out.domain = w.N;
  return out;
}

SeparationResult separate_check(const PartialFn& f, const Word& w, WindowBounds bounds) {
  SeparationResult r;
  for (nat n : window_of(f.domain, bounds)) {
    nat a = f.fn(n), b = w.eval(n);
    if (a != b) {
      r.separated = true;
      r.index = n;
      r.lhs = a;
      r.rhs = b;
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// find_one_f
// ---------------------------------------------------------------------------

namespace {

// Per-cell state sufficient to decide membership of any point of the cell in
// the support of f, long after the sampling pass.
struct CellState {
  CellReport::Case kind = CellReport::Case::escaping;
  nat collision_point = 0;  // merged_pair
  NatFn x;                  // heavy_member
  SetRep heavy;             // heavy_member
};

struct Grid {
  SetRep A;
  nat scan_budget;
  std::map<nat, CellState> cells;  // keyed by the tuple code of (i, j)

  // in-cell position s of a cell point, or nothing
  std::optional<std::pair<nat, nat>> locate(nat n) const {
    if (!A.member(n)) return std::nullopt;
    auto k = A.index_of(n, scan_budget);
    if (!k) throw std::runtime_error("find_one_f: domain index_of ran out of budget");
    auto [t, s] = cantor_unpair(*k);
    if (!cells.count(t)) return std::nullopt;
    return std::make_pair(t, s);
  }

  nat cell_point(nat t, nat s) const { return A.nth(cantor_pair(t, s)); }

  nat eval(nat n) const {
    auto loc = locate(n);
    if (!loc) return 0;
    auto [t, s] = *loc;
    const CellState& st = cells.at(t);
    switch (st.kind) {
      case CellReport::Case::merged_pair:
        return n == st.collision_point ? 1 : 0;
      case CellReport::Case::heavy_member: {
        if (!st.heavy.member(st.x(n))) return 0;
        // keep every other point of the heavy subsequence
        nat before = 0;
        for (nat sp = 0; sp < s; ++sp)
          if (st.heavy.member(st.x(cell_point(t, sp)))) ++before;
        return before % 2 == 0 ? 1 : 0;
      }
      case CellReport::Case::escaping:
        return s % 2 == 0 ? 1 : 0;
    }
    return 0;
  }
};

}  // namespace

FindOneResult find_one_f(const SetRep& A, const std::vector<ADFamily>& fams,
                         const std::vector<NatFn>& xs, FindOneBounds bounds) {
  if (!A.has_enumerator())
    throw std::invalid_argument("find_one_f: domain needs an enumerator");
  if (fams.empty() || xs.empty())
    throw std::invalid_argument("find_one_f: need at least one family and one generator");
  if (bounds.cell_points < 4 || bounds.heavy_cutoff < 2 ||
      bounds.heavy_cutoff > bounds.cell_points)
    throw std::invalid_argument("find_one_f: bounds out of range");

  auto grid = std::make_shared<Grid>();
  grid->A = A;
  grid->scan_budget = bounds.scan_budget;

  FindOneResult result;

  for (nat i = 0; i < xs.size(); ++i) {
    for (nat j = 0; j < fams.size(); ++j) {
      nat t = tuple_code(std::array<nat, 2>{i, j});
      std::vector<nat> pts(bounds.cell_points);
      for (nat s = 0; s < bounds.cell_points; ++s) pts[s] = A.nth(cantor_pair(t, s));

      CellReport rep;
      rep.i = i;
      rep.j = j;
      CellState st;
      st.x = xs[i];

      // 1) exact collision of the generator inside the cell
      std::unordered_map<nat, nat> seen;  // value -> first point
      bool decided = false;
      for (nat p : pts) {
        nat v = xs[i](p);
        auto it = seen.find(v);
        if (it != seen.end()) {
          rep.kind = CellReport::Case::merged_pair;
          rep.exact = true;
          rep.collision_point = it->second;
          rep.collision_partner = p;
          st.kind = CellReport::Case::merged_pair;
          st.collision_point = it->second;
          decided = true;
          break;
        }
        seen.emplace(v, p);
      }

      // 2) a family member soaking up the cell's image
      if (!decided) {
        const auto& members = fams[j].members;
        for (nat c = 0; c < members.size() && !decided; ++c) {
          nat hits = 0;
          for (nat p : pts)
            if (members[c].member(xs[i](p))) ++hits;
          if (hits >= bounds.heavy_cutoff) {
            rep.kind = CellReport::Case::heavy_member;
            rep.exact = false;  // heaviness is inferred from the sample
            rep.heavy_index = c;
            st.kind = CellReport::Case::heavy_member;
            st.heavy = members[c];
            decided = true;
          }
        }
      }

      // 3) image meets every member only thinly: alternate on the cell itself
      if (!decided) {
        rep.kind = CellReport::Case::escaping;
        rep.exact = false;
        st.kind = CellReport::Case::escaping;
      }

      grid->cells.emplace(t, std::move(st));
      result.cells.push_back(std::move(rep));
    }
  }

  NatFn f = NatFn::make("find_one_f", [grid](nat n) { return grid->eval(n); },
                        /*cache=*/true);
  FnMeta meta;
  meta.image_bound = 2;
  meta.image_bound_provenance = Provenance::constructed();
  result.fn = f.with_meta(meta);

  // per cell: a disagreement index against every materialized indicator of
  // the cell's family, composed with the cell's generator
  for (auto& rep : result.cells) {
    nat t = tuple_code(std::array<nat, 2>{rep.i, rep.j});
    for (const auto& g : family_indicators(fams[rep.j])) {
      CellReport::Separation sep;
      sep.against = g.name();
      for (nat s = 0; s < bounds.cell_points; ++s) {
        nat p = grid->cell_point(t, s);
        if (result.fn(p) != g(xs[rep.i](p))) {
          sep.found = true;
          sep.index = p;
          break;
        }
      }
      rep.separations.push_back(std::move(sep));
    }
  }

  return result;
}

}  // namespace relrank
