#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relrank/natfn.hpp"
#include "relrank/sets.hpp"

namespace relrank {

// s_A: fixes the members of A and sends everything else to 0.  These maps
// form a commutative semilattice under composition: s_A . s_B = s_{A&B}.
NatFn s_map(const SetRep& A);

// Indicator of A (1 on A, 0 off it); image bound 2 by construction.
NatFn indicator(const SetRep& A);
// Indicator of the complement of A, kept as a polarity flag on A itself so
// that no complement set needs materializing.
NatFn indicator_complement(const SetRep& A);

// Verifies s_A.s_B == s_{A&B} and s_A.s_A == s_A for all n < m.
CheckResult semilattice_check(const SetRep& A, const SetRep& B, nat m);

// Tag for the ideal of maps with at most n distinct values (n >= 2).
struct IdealTag {
  explicit IdealTag(nat n_) : n(n_) {
    if (n < 2) throw std::invalid_argument("IdealTag: need n >= 2");
  }
  nat n;
};

// True when the sampled values already exceed the tag's bound, i.e. the
// prefix witnesses more than tag.n distinct values.
bool ideal_refute(std::span<const nat> prefix_values, IdealTag tag);

// ---------------------------------------------------------------------------
// Almost-disjoint families indexed by binary paths
// ---------------------------------------------------------------------------
//
// For a binary path x, A_x collects the codes of its nonempty finite
// prefixes.  Distinct paths share exactly the codes of their common prefix,
// so |A_x & A_y| equals the length of the longest common prefix.

struct PairNote {
  bool exact = false;
  // exact: the intersection size.  inexact: every disagreement search up to
  // `bound` failed, so the intersection below the bound equals A_x there.
  nat size = 0;
  nat bound = 0;
  std::vector<nat> common;  // the shared codes when exact
};

struct ADFamily {
  std::vector<SetRep> members;
  std::vector<NatFn> paths;              // binary-valued generators
  std::vector<std::vector<PairNote>> notes;  // notes[i][j] for i < j

  const PairNote& note(nat i, nat j) const;
};

// Builds A_x for each path.  Paths must be 0/1-valued (checked on the first
// `check_bound` arguments; later violations surface at evaluation time).
// Pair intersections are resolved exactly where a disagreement is found
// below `check_bound`.
ADFamily branch_family(const std::vector<NatFn>& paths, nat check_bound = 1024);

// Set of codes along a single binary path; enumerator lists code(x|_1),
// code(x|_2), ...  Codes of prefixes longer than 62 bits overflow and throw.
SetRep branch_set(const NatFn& path, nat check_bound = 1024);

// The indicator semigroup F of a family: indicators of every member and of
// every member's complement, plus the two constants.
std::vector<NatFn> family_indicators(const ADFamily& fam);

}  // namespace relrank
