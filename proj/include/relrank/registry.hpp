#pragma once

#include <string>
#include <utility>

#include "relrank/natfn.hpp"
#include "relrank/sets.hpp"

namespace relrank {

// String keys -> library objects, shared by the command line and by seeded
// fixtures.  The seed feeds every `rand`-flavoured key; everything else is
// seed-independent.
//
// Function keys:
//   identity | id          the identity
//   zero | one             constants 0 and 1
//   const:<v>              constant v
//   succ                   n + 1
//   double | triple        2n and 3n
//   lin:<a>:<b>            n -> a*n + b (a >= 1); carries inverse and
//                          coimage metadata
//   halve                  n / 2
//   rand:<mod>[:<salt>]    seeded pseudo-random map into [0, mod)
//   s:<set>                s-map of a set key (fix members, crush the rest)
//   ind:<set>              indicator of a set key
//   coind:<set>            indicator of the complement
//   enum:<set>             n -> n-th member of the set (needs an enumerator)
//   ukm:<k>:<m>[:<salt>]   sampled member of U(k, m)
//
// Set keys:
//   all | empty | evens | odds
//   mult:<k>               multiples of k
//   mod:<m>:<r>            residue class r mod m
//   finite:[a,b,...]       exactly the listed elements
//   cofinite:[a,b,...]     everything except the listed elements
//   tuple:[a,b,...]        pairing slice addressed by the tuple
//   slice:<t>              pairing slice t
//   branch:<bits>[~]       prefix codes of the binary path <bits>000...;
//                          with a trailing ~ the bit block repeats forever
//   randset[:<salt>]       seeded pseudo-random set (membership only)
NatFn make_natfn(const std::string& key, nat seed = 0);
SetRep make_setrep(const std::string& key, nat seed = 0);

// A lin:<a>:<b> map packaged for the two-generator construction: the map
// plus its attested residue set ({0} exactly when b == 0).  Requires the
// map to miss something, i.e. a >= 2 or b >= 1.
std::pair<NatFn, SetRep> banach_base(nat a, nat b);

}  // namespace relrank
