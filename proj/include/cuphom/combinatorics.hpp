#pragma once

// Euler characteristics of the three mod-3 subcomplexes and the lower bound
// L(b) they imply for h.

#include <optional>
#include <string>
#include <utility>

#include "cuphom/exact_linalg.hpp"
#include "cuphom/forms.hpp"
#include "cuphom/report.hpp"

namespace cuphom {

/// S(b, j) = sum_k (-1)^k C(b, 3k + j), evaluated directly. Requires b >= 1
/// and j in {0, 1, 2}.
Integer euler_sum(int b, int j);

struct EulerTriple {
    int b = 0;
    Integer s0, s1, s2;
};

EulerTriple euler_triple(int b);

/// 3^((b-1)/2) for odd b, 2 * 3^(b/2 - 1) for even b; b >= 1.
Integer lower_bound_L(int b);

/// 2^(b-1); b >= 1.
Integer upper_bound(int b);

/// Checks the closed forms, recursions and parity identities for the S(b, j)
/// against the direct sums for every 1 <= b <= b_max.
CheckReport verify_identities(int b_max);

/// Where the form came from a connected sum, the ranks of the two summands.
using SummandRanks = std::pair<int, int>;

/// L(b) <= h <= 2^(b-1); h <= 2^(b-1) - 2 when f != 0 and b >= 4; and, for a
/// recorded connected sum whose summand ranks are >= 1 and not both odd,
/// h >= (4/3) L(b).
CheckReport bounds_report(const ThreeForm& f, std::optional<SummandRanks> summands = std::nullopt);

/// Header line plus one TSV row: b, S(b,0), S(b,1), S(b,2), L(b), 2^(b-1).
std::string bounds_table(int b);

}  // namespace cuphom
