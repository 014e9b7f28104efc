#include "cuphom/homology.hpp"

#include <cmath>
#include <map>

namespace cuphom {

namespace {

std::size_t basis_size(int b, int k)
{
    if (k < 0 || k > b)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(b - k + i) / static_cast<std::size_t>(i);
    return r;
}

AbelianGroup group_at(std::size_t chain_rank, std::size_t out_rank, const SNFResult& in)
{
    return AbelianGroup(chain_rank - out_rank - in.rank, in.invariant_factors);
}

void require_composable(const BoundaryMatrix& d_out, const BoundaryMatrix& d_in)
{
    if (d_out.matrix.cols() != d_in.matrix.rows())
        throw ComplexError("boundary shapes do not meet at a common degree");
    if (!(d_out.matrix * d_in.matrix).is_zero())
        throw ComplexError("boundary composite is nonzero at degree " + std::to_string(d_out.source_degree));
}

}  // namespace

AbelianGroup::AbelianGroup(std::size_t free_rank, std::vector<Integer> factors) : free_rank_(free_rank)
{
    for (auto& d : factors) {
        if (d == 0)
            throw std::invalid_argument("torsion factor 0 is not allowed; count it as free rank");
        d = abs(d);
    }
    normalize_divisibility(factors);
    for (auto& d : factors)
        if (d > 1)
            torsion_.push_back(std::move(d));
}

std::size_t AbelianGroup::p_torsion_count(std::uint64_t p) const
{
    std::size_t n = 0;
    for (const auto& d : torsion_)
        if (mpz_divisible_ui_p(d.get_mpz_t(), p))
            ++n;
    return n;
}

std::string AbelianGroup::render() const
{
    if (is_trivial())
        return "0";
    std::string s;
    if (free_rank_ == 1)
        s = "Z";
    else if (free_rank_ > 1)
        s = "Z^" + std::to_string(free_rank_);
    for (const auto& d : torsion_) {
        if (!s.empty())
            s += " + ";
        s += "Z/" + d.get_str();
    }
    return s;
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b)
{
    std::vector<Integer> factors = a.torsion_;
    factors.insert(factors.end(), b.torsion_.begin(), b.torsion_.end());
    return AbelianGroup(a.free_rank_ + b.free_rank_, std::move(factors));
}

AbelianGroup homology_group(const BoundaryMatrix& d_out, const BoundaryMatrix& d_in)
{
    require_composable(d_out, d_in);
    const std::size_t out_rank = smith_normal_form(d_out.matrix).rank;
    return group_at(d_out.matrix.cols(), out_rank, smith_normal_form(d_in.matrix));
}

CupHomologyResult cup_homology(const ThreeForm& f)
{
    const int b = f.rank();
    CupHomologyResult out;
    out.rank = b;

    // snf[k] describes the differential leaving degree k.
    std::vector<BoundaryMatrix> d(b + 4);
    std::vector<SNFResult> snf(b + 4);
    for (int k = 0; k <= b + 3; ++k) {
        d[k] = boundary_matrix(f, k);
        if (k >= 3 && k <= b)
            snf[k] = smith_normal_form(d[k].matrix);
    }
    for (int k = 0; k <= b; ++k) {
        require_composable(d[k], d[k + 3]);
        AbelianGroup g = group_at(basis_size(b, k), snf[k].rank, snf[k + 3]);
        if (k % 2 == 0)
            out.even = direct_sum(out.even, g);
        else
            out.odd = direct_sum(out.odd, g);
        out.by_degree.push_back(std::move(g));
    }
    out.h_ev = out.even.free_rank();
    out.h_odd = out.odd.free_rank();
    out.h = b == 0 ? mpq_class(1, 2) : mpq_class(static_cast<unsigned long>(out.h_ev));
    return out;
}

FieldRanks field_homology_ranks(const ThreeForm& f, std::uint64_t characteristic)
{
    const int b = f.rank();
    std::vector<std::size_t> r(b + 4, 0);
    for (int k = 3; k <= b; ++k)
        r[k] = rank_over_field(boundary_matrix(f, k).matrix, characteristic);
    FieldRanks out;
    for (int k = 0; k <= b; ++k) {
        const std::size_t dim = basis_size(b, k) - r[k] - r[k + 3];
        out.by_degree.push_back(dim);
        (k % 2 == 0 ? out.even : out.odd) += dim;
    }
    return out;
}

mpq_class h_invariant(const ThreeForm& f)
{
    if (f.rank() == 0)
        return mpq_class(1, 2);
    return mpq_class(static_cast<unsigned long>(field_homology_ranks(f, 0).even));
}

std::size_t h_mod_p(const ThreeForm& f, std::uint64_t p)
{
    if (f.rank() == 0)
        throw std::invalid_argument("h_p is defined here for rank >= 1; rank 0 uses h = 1/2");
    if (!is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    const ThreeForm reduced = reduce_mod_p(f, p);
    return field_homology_ranks(reduced, p).even;
}

KpValue k_p(const ThreeForm& f, std::uint64_t p)
{
    KpValue v;
    if (p == 1 || f.rank() == 0) {
        if (p != 1 && !is_prime(p))
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        v.h_p = h_invariant(f);
    } else {
        v.h_p = mpq_class(static_cast<unsigned long>(h_mod_p(f, p)));
    }
    v.twice_h_p = v.h_p * 2;
    v.log2 = std::log2(v.twice_h_p.get_d());
    return v;
}

CheckReport uct_check(const ThreeForm& f, std::uint64_t p)
{
    if (!is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    CheckReport report;
    const auto integral = cup_homology(f);
    const auto modp = field_homology_ranks(f, p);
    for (int k = 0; k <= f.rank(); ++k) {
        const auto& g = integral.by_degree[k];
        const std::size_t tor_below = k >= 3 ? integral.by_degree[k - 3].p_torsion_count(p) : 0;
        const std::size_t expected = g.free_rank() + g.p_torsion_count(p) + tor_below;
        const std::size_t actual = modp.by_degree[k];
        report.add("uct p=" + std::to_string(p) + " degree " + std::to_string(k), expected == actual,
                   "dim_F" + std::to_string(p) + " = " + std::to_string(actual) + ", predicted " +
                       std::to_string(expected));
    }
    return report;
}

}  // namespace cuphom
