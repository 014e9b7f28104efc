#pragma once

// Ground truth that shares no code path with the Smith-form homology: the
// closed form for Sigma_g x S^1 and a plain field-coefficient elimination.

#include <cstdint>
#include <utility>
#include <vector>

#include "cuphom/forms.hpp"
#include "cuphom/homology.hpp"

namespace cuphom::oracles {

/// Closed-form E_k(g), 0 <= k <= 2g+1, g >= 1. Exponents C(2g, m) with m out
/// of range count as 0; Z_0 is Z and Z_1 is trivial.
AbelianGroup lee_packer_E(int g, int k);

/// Expected (even, odd) cup homology of surface_circle(g). E_k(g) is carried
/// by exterior degrees k-1 and k+1, so odd k feeds the even part.
std::pair<AbelianGroup, AbelianGroup> surface_circle_expected(int g);

/// dim H_k over Q (characteristic 0) or F_p for every exterior degree k,
/// built from the signed contraction formula and fraction-free elimination.
std::vector<std::size_t> field_homology_oracle(const ThreeForm& f, std::uint64_t characteristic);

}  // namespace cuphom::oracles
