#include "cuphom/exterior.hpp"

#include <stdexcept>

#include "cuphom/forms.hpp"

namespace cuphom {

Blade Blade::from_elements(std::span<const int> elements)
{
    std::uint64_t mask = 0;
    int prev = 0;
    for (int e : elements) {
        if (e <= prev || e > kMaxRank)
            throw std::invalid_argument("blade elements must be strictly increasing in [1, 63]");
        mask |= std::uint64_t{1} << (e - 1);
        prev = e;
    }
    return Blade(mask);
}

std::vector<int> Blade::elements() const
{
    std::vector<int> out;
    out.reserve(degree());
    for (std::uint64_t m = mask_; m; m &= m - 1)
        out.push_back(__builtin_ctzll(m) + 1);
    return out;
}

int Blade::position_of(int index) const
{
    const std::uint64_t below = (std::uint64_t{1} << (index - 1)) - 1;
    return __builtin_popcountll(mask_ & below) + 1;
}

std::string Blade::to_string() const
{
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first)
            s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

bool operator<(const Blade& a, const Blade& b)
{
    const std::uint64_t diff = a.mask_ ^ b.mask_;
    if (diff == 0)
        return false;
    // Both lists agree below the lowest differing index t. Whichever blade
    // holds t wins unless the other one has run out of elements.
    const int t = __builtin_ctzll(diff);
    const std::uint64_t above = (t == 63) ? 0 : ~((std::uint64_t{2} << t) - 1);
    if ((a.mask_ >> t) & 1U)
        return (b.mask_ & above) != 0;
    return (a.mask_ & above) == 0;
}

void Chain::add(const Blade& blade, const mpz_class& coeff)
{
    if (coeff == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(blade, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void Chain::add(const Chain& other, const mpz_class& scale)
{
    for (const auto& [blade, c] : other.terms_)
        add(blade, c * scale);
}

mpz_class Chain::coefficient(const Blade& blade) const
{
    auto it = terms_.find(blade);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

std::vector<Blade> blade_basis(int rank, int degree)
{
    std::vector<Blade> out;
    if (degree < 0 || degree > rank || rank > kMaxRank)
        return out;
    std::vector<int> idx(degree);
    for (int i = 0; i < degree; ++i)
        idx[i] = i + 1;
    while (true) {
        out.push_back(Blade::from_elements(idx));
        int i = degree - 1;
        while (i >= 0 && idx[i] == rank - degree + i + 1)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < degree; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

namespace {

std::uint64_t binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace

std::size_t blade_index(int rank, const Blade& blade)
{
    // Lex rank of a k-subset: for each chosen element, count the subsets that
    // take a smaller value at that slot.
    const auto elems = blade.elements();
    const int k = static_cast<int>(elems.size());
    std::size_t index = 0;
    int prev = 0;
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < elems[i]; ++v)
            index += binom(rank - v, k - i - 1);
        prev = elems[i];
    }
    return index;
}

Chain contract(const ThreeForm& mu, const Blade& blade)
{
    Chain out;
    if (blade.degree() < 3)
        return out;
    for (const Term& t : mu.terms()) {
        const std::uint64_t triple = t.mask();
        if ((blade.mask() & triple) != triple)
            continue;
        const int parity = blade.position_of(t.i) + blade.position_of(t.j) + blade.position_of(t.k);
        mpz_class c = static_cast<long>(t.coeff);
        if (parity & 1)
            c = -c;
        out.add(Blade(blade.mask() ^ triple), c);
    }
    return out;
}

Chain contract(const ThreeForm& mu, const Chain& chain)
{
    Chain out;
    for (const auto& [blade, c] : chain.terms())
        out.add(contract(mu, blade), c);
    return out;
}

}  // namespace cuphom
