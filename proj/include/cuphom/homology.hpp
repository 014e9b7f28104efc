#pragma once

// Cup homology groups and the numerical invariants h, h_p and k_p.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cuphom/cup_complex.hpp"
#include "cuphom/exact_linalg.hpp"
#include "cuphom/forms.hpp"
#include "cuphom/report.hpp"

namespace cuphom {

/// Finitely generated abelian group Z^r + Z/d_1 + ... + Z/d_n with
/// d_1 | ... | d_n and every d_i >= 2.
class AbelianGroup {
public:
    AbelianGroup() = default;

    /// Accepts any list of positive factors; units are dropped and the rest
    /// rewritten as a divisibility chain.
    AbelianGroup(std::size_t free_rank, std::vector<Integer> factors);

    static AbelianGroup free(std::size_t rank) { return AbelianGroup(rank, {}); }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

    /// Number of torsion factors divisible by p (= dim Tor(G, F_p)).
    std::size_t p_torsion_count(std::uint64_t p) const;

    /// "0", or terms joined by " + ": "Z" / "Z^r" first, then each "Z/d".
    std::string render() const;

    friend AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
    bool operator==(const AbelianGroup&) const = default;

private:
    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
};

class ComplexError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Homology at the common degree of `d_out` (source) and `d_in` (target).
/// Throws ComplexError on mismatched shapes or d_out * d_in != 0.
AbelianGroup homology_group(const BoundaryMatrix& d_out, const BoundaryMatrix& d_in);

struct CupHomologyResult {
    int rank = 0;
    /// Index k holds the homology at exterior degree k, 0 <= k <= rank.
    std::vector<AbelianGroup> by_degree;
    AbelianGroup even;
    AbelianGroup odd;
    std::size_t h_ev = 0;
    std::size_t h_odd = 0;
    /// 1/2 for rank 0, otherwise h_ev.
    mpq_class h;
};

CupHomologyResult cup_homology(const ThreeForm& f);

/// h alone, from ranks over Q; agrees with cup_homology(f).h.
mpq_class h_invariant(const ThreeForm& f);

struct FieldRanks {
    std::vector<std::size_t> by_degree;
    std::size_t even = 0;
    std::size_t odd = 0;
};

/// Dimensions of H_k(C tensor F) for F = Q (characteristic 0) or F_p.
FieldRanks field_homology_ranks(const ThreeForm& f, std::uint64_t characteristic);

/// Even-degree F_p-dimension of the mod-p cup homology of reduce_mod_p(f, p).
/// Requires rank >= 1 and p prime.
std::size_t h_mod_p(const ThreeForm& f, std::uint64_t p);

/// k_p = log2(2 h_p), carried exactly as the pair (h_p, 2 h_p). p == 1 selects
/// the integral invariant h.
struct KpValue {
    mpq_class h_p;
    mpq_class twice_h_p;
    double log2 = 0.0;
};

KpValue k_p(const ThreeForm& f, std::uint64_t p);

/// Universal-coefficient consistency between the integral groups and the
/// F_p ranks, one line per exterior degree.
CheckReport uct_check(const ThreeForm& f, std::uint64_t p);

}  // namespace cuphom
