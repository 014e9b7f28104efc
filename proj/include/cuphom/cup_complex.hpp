#pragma once

// Boundary matrices of the cup complex. Since multiplication by U is a chain
// isomorphism, the complex is stored once per exterior degree; contraction
// lowers the degree by 3, which splits it into three subcomplexes indexed by
// degree mod 3.

#include <array>
#include <string>
#include <vector>

#include "cuphom/exact_linalg.hpp"
#include "cuphom/forms.hpp"

namespace cuphom {

/// Matrix of the differential from degree k to degree k-3. Rows are indexed
/// by blade_basis(b, k-3), columns by blade_basis(b, k). Any k >= 0 is
/// accepted: below 3 there are no rows, above b there are no columns.
struct BoundaryMatrix {
    int source_degree = 0;
    int target_degree = 0;
    IntegerMatrix matrix;
};

BoundaryMatrix boundary_matrix(const ThreeForm& f, int k);

struct Mod3Complex {
    int residue = 0;
    /// residue, residue+3, ... up to the rank.
    std::vector<int> degrees;
    /// boundaries[i] maps degrees[i+1] to degrees[i].
    std::vector<BoundaryMatrix> boundaries;
};

std::array<Mod3Complex, 3> build_mod3_complexes(const ThreeForm& f);

struct DSquaredViolation {
    int k = 0;
    std::size_t row = 0;
    std::size_t col = 0;
};

struct DSquaredReport {
    std::vector<DSquaredViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks that every composite degree k -> k-6 vanishes.
DSquaredReport verify_d_squared(const ThreeForm& f);

/// Debug dump of every boundary matrix as integer grids.
std::string dump_boundaries(const ThreeForm& f);

}  // namespace cuphom
