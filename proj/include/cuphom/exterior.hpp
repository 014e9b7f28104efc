#pragma once

// Exterior-power bases over a free module of rank b <= 63 and contraction of
// basis blades against a 3-form.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cuphom {

class ThreeForm;

inline constexpr int kMaxRank = 63;

/// Basis monomial e_{i1} ^ ... ^ e_{ik} of the exterior algebra, stored as a
/// bitmask with bit (i-1) set for each index i in 1..63.
class Blade {
public:
    constexpr Blade() = default;
    constexpr explicit Blade(std::uint64_t mask) : mask_(mask) {}

    /// Throws std::invalid_argument unless `elements` is strictly increasing
    /// and inside [1, 63].
    static Blade from_elements(std::span<const int> elements);

    constexpr std::uint64_t mask() const { return mask_; }
    int degree() const { return __builtin_popcountll(mask_); }
    bool contains(int index) const { return (mask_ >> (index - 1)) & 1U; }
    std::vector<int> elements() const;

    /// 1-based position of `index` within the sorted element list.
    int position_of(int index) const;

    std::string to_string() const;

    constexpr bool operator==(const Blade&) const = default;

    /// Lexicographic order on the sorted element lists.
    friend bool operator<(const Blade& a, const Blade& b);

private:
    std::uint64_t mask_ = 0;
};

/// Integer combination of blades of one common degree; zero coefficients are
/// never stored.
class Chain {
public:
    using Terms = std::map<Blade, mpz_class>;

    Chain() = default;

    void add(const Blade& blade, const mpz_class& coeff);
    void add(const Chain& other, const mpz_class& scale = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    mpz_class coefficient(const Blade& blade) const;

    bool operator==(const Chain&) const = default;

private:
    Terms terms_;
};

/// All C(b,k) blades of degree k, lexicographically ordered. Empty when k is
/// outside [0, b].
std::vector<Blade> blade_basis(int rank, int degree);

/// Position of `blade` in blade_basis(rank, blade.degree()).
std::size_t blade_index(int rank, const Blade& blade);

/// Contraction of `blade` against `mu`:
///   sum over positions p1<p2<p3 of (-1)^(p1+p2+p3) mu(s_p1,s_p2,s_p3)
///   times the blade with those three elements removed.
Chain contract(const ThreeForm& mu, const Blade& blade);

/// Linear extension of contract to chains.
Chain contract(const ThreeForm& mu, const Chain& chain);

}  // namespace cuphom
