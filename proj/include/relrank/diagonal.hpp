#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relrank/families.hpp"
#include "relrank/natfn.hpp"
#include "relrank/sets.hpp"

namespace relrank {

// Alternating word u_m . s_{B_{m-1}} . ... . s_{B_0} . u_0: us[0] applies
// first, then the s-map of sets[0], then us[1], and so on.
struct Word {
  std::vector<NatFn> us;
  std::vector<SetRep> sets;

  void validate() const {
    if (us.size() != sets.size() + 1)
      throw std::invalid_argument("Word: need exactly one more function than s-sets");
  }
  nat eval(nat n) const;
  NatFn to_fn() const;
};

// Enumeration window over a set: indices [skip, skip + len).  The skip
// absorbs the finitely many exceptional points that "almost" statements
// allow, at desk scale.
struct WindowBounds {
  nat skip = 64;
  nat len = 512;
  nat scan_budget = 1 << 20;
};

// On a suitable domain, a word collapses to one of two shapes: the clean
// composite of its functions, or a constant.
enum class TailKind { composite, constant, violation };

struct TailReport {
  TailKind kind = TailKind::violation;
  nat constant_value = 0;                 // kind == constant
  std::string detail;                     // kind == violation
  std::optional<nat> violation_index;     // witness point in N
};

// hyp[j] must contain u_j...u_0(N) for the classification to be promised;
// the hypothesis is checked pointwise on the window and its failure is
// reported as a violation (with the witness), not as a wrong answer.
TailReport classify_word_tail(const Word& w, const std::vector<SetRep>& hyp, const SetRep& N,
                              WindowBounds bounds = {});

// ---------------------------------------------------------------------------
// Case witnesses for the two-valued separating function
// ---------------------------------------------------------------------------

struct CaseWitness {
  enum class Kind {
    merged_pair,    // composite collides on listed pairs
    full_set,       // an infinite coinfinite M inside N
    split_set,      // M splits composite images across a named set A
    escaping_set,   // composite images eventually leave every named set
  };
  Kind kind = Kind::full_set;
  SetRep N;
  NatFn composite;                          // u_r ... u_0 (merged_pair, split_set)
  std::vector<std::pair<nat, nat>> pairs;   // merged_pair
  SetRep M;                                 // full_set, split_set, escaping_set
  SetRep A;                                 // split_set
};

// A total function together with the domain on which its values are meant.
struct PartialFn {
  NatFn fn;
  SetRep domain;
};

// Validates the witness data on the window (throws on inconsistency) and
// returns the two-valued f: indicator of the listed pair points or of M,
// zero elsewhere.
PartialFn build_case_fn(const CaseWitness& w, WindowBounds bounds = {});

struct SeparationResult {
  bool separated = false;
  nat index = 0;  // witness point
  nat lhs = 0;    // f at the witness
  nat rhs = 0;    // word at the witness
};

// Finds a point of the domain window where f and the word disagree.
// Not finding one is inconclusive, never a proof of equality.
SeparationResult separate_check(const PartialFn& f, const Word& w, WindowBounds bounds = {});

// ---------------------------------------------------------------------------
// One f escaping finitely many indicator semigroups at once
// ---------------------------------------------------------------------------

struct FindOneBounds {
  nat cell_points = 48;   // points sampled per cell
  nat heavy_cutoff = 12;  // intersection count treated as infinite
  nat scan_budget = 1 << 20;
};

struct CellReport {
  nat i = 0;  // generator index
  nat j = 0;  // family index
  enum class Case { merged_pair, heavy_member, escaping } kind = Case::escaping;
  bool exact = false;        // collision witnessed exactly; else bound-assumed
  nat collision_point = 0;   // merged_pair: the point kept in V
  nat collision_partner = 0; // merged_pair: the point left out
  nat heavy_index = 0;       // heavy_member: which family member
  struct Separation {
    std::string against;  // indicator description
    bool found = false;
    nat index = 0;  // witness point
  };
  std::vector<Separation> separations;
};

struct FindOneResult {
  NatFn fn;
  std::vector<CellReport> cells;
};

// Builds a two-valued f supported inside A such that, cell by cell, f
// disagrees with every materialized indicator g of each family composed
// with each generator x.  A needs a total enumerator (it plays the role of
// an infinite domain split into one cell per (generator, family) pair).
FindOneResult find_one_f(const SetRep& A, const std::vector<ADFamily>& fams,
                         const std::vector<NatFn>& xs, FindOneBounds bounds = {});

}  // namespace relrank
