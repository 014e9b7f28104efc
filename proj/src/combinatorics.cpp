#include "cuphom/combinatorics.hpp"

#include <sstream>
#include <stdexcept>

#include "cuphom/homology.hpp"

namespace cuphom {

namespace {

Integer binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer pow3(int e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(e));
    return r;
}

std::string str(const Integer& x)
{
    return x.get_str();
}

}  // namespace

Integer euler_sum(int b, int j)
{
    if (b < 1)
        throw std::invalid_argument("euler_sum needs b >= 1");
    if (j < 0 || j > 2)
        throw std::invalid_argument("euler_sum residue must be 0, 1 or 2");
    Integer s = 0;
    for (int k = 0; 3 * k + j <= b; ++k) {
        if (k % 2 == 0)
            s += binomial(b, 3 * k + j);
        else
            s -= binomial(b, 3 * k + j);
    }
    return s;
}

EulerTriple euler_triple(int b)
{
    return {b, euler_sum(b, 0), euler_sum(b, 1), euler_sum(b, 2)};
}

Integer lower_bound_L(int b)
{
    if (b < 1)
        throw std::invalid_argument("L(b) needs b >= 1");
    if (b % 2)
        return pow3((b - 1) / 2);
    return Integer(2 * pow3(b / 2 - 1));
}

Integer upper_bound(int b)
{
    if (b < 1)
        throw std::invalid_argument("2^(b-1) needs b >= 1");
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(b - 1));
    return r;
}

CheckReport verify_identities(int b_max)
{
    if (b_max < 2)
        throw std::invalid_argument("verify_identities needs b_max >= 2");
    CheckReport report;
    auto check = [&](int b, const std::string& what, bool ok, const std::string& detail = {}) {
        report.add("b=" + std::to_string(b) + " " + what, ok, detail);
    };

    std::vector<EulerTriple> s(b_max + 1);
    for (int b = 1; b <= b_max; ++b)
        s[b] = euler_triple(b);

    for (int b = 1; b <= b_max; ++b) {
        const auto& t = s[b];
        check(b, "S0 - S1 + S2 = 0", t.s0 - t.s1 + t.s2 == 0);

        if (b >= 2) {
            const auto& u = s[b - 1];
            check(b, "S(b,0) = S(b-1,0) - S(b-1,2)", t.s0 == u.s0 - u.s2);
            check(b, "S(b,1) = S(b-1,0) + S(b-1,1)", t.s1 == u.s0 + u.s1);
            check(b, "S(b,2) = S(b-1,1) + S(b-1,2)", t.s2 == u.s1 + u.s2);
        }
        if (b >= 3) {
            const auto& u = s[b - 2];
            check(b, "S0 + S1 = 3 (S(b-2,0) - S(b-2,2))", t.s0 + t.s1 == 3 * (u.s0 - u.s2));
            check(b, "S0 - S2 = -3 (S(b-2,1) + S(b-2,2))", t.s0 - t.s2 == -3 * (u.s1 + u.s2));
            check(b, "S1 + S2 = 3 (S(b-2,0) + S(b-2,1))", t.s1 + t.s2 == 3 * (u.s0 + u.s1));
        }
        if (b >= 7) {
            const auto& u = s[b - 6];
            check(b, "S0 + S1 = -27 (S(b-6,0) + S(b-6,1))", t.s0 + t.s1 == -27 * (u.s0 + u.s1));
            check(b, "S0 - S2 = -27 (S(b-6,0) - S(b-6,2))", t.s0 - t.s2 == -27 * (u.s0 - u.s2));
            check(b, "S1 + S2 = -27 (S(b-6,1) + S(b-6,2))", t.s1 + t.s2 == -27 * (u.s1 + u.s2));
        }

        const Integer total = abs(t.s0) + abs(t.s1) + abs(t.s2);
        const Integer expected_total = b % 2 ? Integer(2 * pow3((b - 1) / 2)) : Integer(4 * pow3(b / 2 - 1));
        check(b, "|S0| + |S1| + |S2| closed form", total == expected_total,
              str(total) + " vs " + str(expected_total));
        check(b, "|S0| + |S1| + |S2| = 2 L(b)", total == 2 * lower_bound_L(b));

        if (b % 2 == 1) {
            const Integer mag = pow3((b - 1) / 2);
            switch (b % 6) {
            case 1:
                check(b, "S2 = 0 and S0 = S1", t.s2 == 0 && t.s0 == t.s1);
                check(b, "|S0| = 3^((b-1)/2)", abs(t.s0) == mag);
                break;
            case 3:
                check(b, "S0 = 0 and S1 = S2", t.s0 == 0 && t.s1 == t.s2);
                check(b, "|S1| = 3^((b-1)/2)", abs(t.s1) == mag);
                break;
            case 5:
                check(b, "S1 = 0 and S0 = -S2", t.s1 == 0 && t.s0 == -t.s2);
                check(b, "|S0| = 3^((b-1)/2)", abs(t.s0) == mag);
                break;
            }
        } else if (b % 6 == 0) {
            const Integer mag = pow3(b / 2 - 1);
            check(b, "|S0| = 2 * 3^(b/2-1)", abs(t.s0) == 2 * mag, "S0 = " + str(t.s0));
            check(b, "S1 = -S2 and |S1| = 3^(b/2-1)", t.s1 == -t.s2 && abs(t.s1) == mag);
        }
    }
    return report;
}

CheckReport bounds_report(const ThreeForm& f, std::optional<SummandRanks> summands)
{
    const int b = f.rank();
    if (b < 1)
        throw std::invalid_argument("bounds_report needs rank >= 1");
    CheckReport report;
    const Integer h = h_invariant(f).get_num();
    const Integer lower = lower_bound_L(b);
    const Integer upper = upper_bound(b);

    report.add("L(b) <= h <= 2^(b-1)", lower <= h && h <= upper,
               str(lower) + " <= " + str(h) + " <= " + str(upper));
    if (!f.is_zero() && b >= 4)
        report.add("h <= 2^(b-1) - 2 for nonzero form", h <= upper - 2, "h = " + str(h));
    if (summands) {
        const auto [x, y] = *summands;
        if (x + y != b)
            throw std::invalid_argument("summand ranks do not add up to the form's rank");
        if (x >= 1 && y >= 1 && !(x % 2 == 1 && y % 2 == 1))
            report.add("h >= (4/3) L(b) for connected sum", 3 * h >= 4 * lower,
                       "3h = " + str(3 * h) + ", 4L = " + str(4 * lower));
    }
    return report;
}

std::string bounds_table(int b)
{
    const auto t = euler_triple(b);
    std::ostringstream os;
    os << "b\tS(b,0)\tS(b,1)\tS(b,2)\tL(b)\t2^(b-1)\n";
    os << b << '\t' << t.s0 << '\t' << t.s1 << '\t' << t.s2 << '\t' << lower_bound_L(b) << '\t' << upper_bound(b)
       << '\n';
    return os.str();
}

}  // namespace cuphom
