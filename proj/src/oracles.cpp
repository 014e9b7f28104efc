#include "cuphom/oracles.hpp"

#include <stdexcept>

namespace cuphom::oracles {

namespace {

Integer choose(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::size_t exponent(const Integer& e)
{
    if (e < 0)
        throw std::logic_error("negative exponent in closed form");
    return e.get_ui();
}

// Dense matrix of the differential on degree k, written directly from the
// position-triple formula. Rows and columns are lex-ordered k-subsets stored
// as element vectors.
using Subsets = std::vector<std::vector<int>>;

Subsets subsets(int b, int k)
{
    Subsets out;
    if (k < 0 || k > b)
        return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = next; v <= b - (k - static_cast<int>(cur.size())) + 1; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<std::vector<Integer>> differential(const ThreeForm& f, int k)
{
    const int b = f.rank();
    const Subsets cols = subsets(b, k);
    const Subsets rows = subsets(b, k - 3);
    std::vector<std::vector<Integer>> m(rows.size(), std::vector<Integer>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& s = cols[c];
        for (int p1 = 0; p1 < k; ++p1)
            for (int p2 = p1 + 1; p2 < k; ++p2)
                for (int p3 = p2 + 1; p3 < k; ++p3) {
                    const std::int64_t a = f.coefficient(s[p1], s[p2], s[p3]);
                    if (a == 0)
                        continue;
                    std::vector<int> rest;
                    for (int q = 0; q < k; ++q)
                        if (q != p1 && q != p2 && q != p3)
                            rest.push_back(s[q]);
                    std::size_t r = 0;
                    while (rows[r] != rest)
                        ++r;
                    // 1-based positions p+1; the three +1's flip the sign once.
                    const bool negative = ((p1 + p2 + p3 + 3) & 1) != 0;
                    m[r][c] = negative ? -a : a;
                }
    }
    return m;
}

std::size_t bareiss_rank(std::vector<std::vector<Integer>> a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    Integer prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[r][j] = a[rank][c] * a[r][j] - a[r][c] * a[rank][j];
                mpz_divexact(a[r][j].get_mpz_t(), a[r][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t p)
{
    // Extended Euclid on signed 128-bit values.
    __int128 r0 = p, r1 = x, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const __int128 q = r0 / r1;
        __int128 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    __int128 inv = s0 % static_cast<__int128>(p);
    if (inv < 0)
        inv += p;
    return static_cast<std::uint64_t>(inv);
}

std::size_t modular_rank(const std::vector<std::vector<Integer>>& m, std::uint64_t p)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::vector<unsigned __int128>> a(rows, std::vector<unsigned __int128>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            Integer x = m[r][c] % Integer(static_cast<unsigned long>(p));
            if (x < 0)
                x += static_cast<unsigned long>(p);
            a[r][c] = x.get_ui();
        }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        const unsigned __int128 inv = inverse_mod(static_cast<std::uint64_t>(a[rank][c]), p);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0)
                continue;
            const unsigned __int128 factor = a[r][c] * inv % p;
            for (std::size_t j = c; j < cols; ++j)
                a[r][j] = (a[r][j] + (p - factor * a[rank][j] % p)) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

AbelianGroup lee_packer_E(int g, int k)
{
    if (g < 1)
        throw std::invalid_argument("genus must be >= 1");
    if (k < 0 || k > 2 * g + 1)
        throw std::invalid_argument("degree outside [0, 2g+1]");
    const int n = 2 * g;
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
    auto add_summand = [&](int j, std::size_t count) {
        if (j == 0)
            free_rank += count;
        else if (j >= 2)
            torsion.insert(torsion.end(), count, Integer(j));
    };
    if (k <= g) {
        free_rank = exponent(choose(n, k) - choose(n, k - 2));
        for (int j = 2; j <= (k + 1) / 2; ++j)
            add_summand(j, exponent(choose(n, k - 2 * j + 1) - choose(n, k - 2 * j - 1)));
    } else {
        for (int j = 0; j <= (2 * g + 1 - k) / 2; ++j)
            add_summand(j, exponent(choose(n, k + 2 * j - 1) - choose(n, k + 2 * j + 1)));
    }
    return AbelianGroup(free_rank, std::move(torsion));
}

std::pair<AbelianGroup, AbelianGroup> surface_circle_expected(int g)
{
    AbelianGroup even, odd;
    for (int k = 0; k <= 2 * g + 1; ++k) {
        if (k % 2 == 1)
            even = direct_sum(even, lee_packer_E(g, k));
        else
            odd = direct_sum(odd, lee_packer_E(g, k));
    }
    return {even, odd};
}

std::vector<std::size_t> field_homology_oracle(const ThreeForm& f, std::uint64_t characteristic)
{
    if (characteristic != 0 && !is_prime(characteristic))
        throw std::invalid_argument("characteristic must be 0 or prime");
    const int b = f.rank();
    std::vector<std::size_t> ranks(b + 4, 0);
    for (int k = 3; k <= b; ++k) {
        auto m = differential(f, k);
        ranks[k] = characteristic == 0 ? bareiss_rank(std::move(m)) : modular_rank(m, characteristic);
    }
    std::vector<std::size_t> dims;
    for (int k = 0; k <= b; ++k) {
        const std::size_t chain_rank = choose(b, k).get_ui();
        dims.push_back(chain_rank - ranks[k] - ranks[k + 3]);
    }
    return dims;
}

}  // namespace cuphom::oracles
