#include "cuphom/forms.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "cuphom/exact_linalg.hpp"
#include "cuphom/exterior.hpp"

namespace cuphom {

using Kind = FormError::Kind;

namespace {

void check_rank(std::int64_t rank)
{
    if (rank < 0)
        throw FormError(Kind::NegativeRank, "rank must be non-negative, got " + std::to_string(rank));
    if (rank > kMaxRank)
        throw FormError(Kind::RankTooLarge,
                        "rank " + std::to_string(rank) + " exceeds the maximum of " + std::to_string(kMaxRank));
}

std::string triple_str(const Term& t)
{
    return "(" + std::to_string(t.i) + "," + std::to_string(t.j) + "," + std::to_string(t.k) + ")";
}

bool triple_less(const Term& a, const Term& b)
{
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
}

}  // namespace

ThreeForm::ThreeForm(int rank) : rank_(rank)
{
    check_rank(rank);
}

ThreeForm::ThreeForm(int rank, std::vector<Term> terms) : rank_(rank)
{
    check_rank(rank);
    for (const Term& t : terms) {
        if (!(t.i < t.j && t.j < t.k))
            throw FormError(Kind::NotIncreasing, "triple " + triple_str(t) + " is not strictly increasing");
        if (t.i < 1 || t.k > rank)
            throw FormError(Kind::IndexOutOfRange,
                            "triple " + triple_str(t) + " has an index outside [1, " + std::to_string(rank) + "]");
        if (t.coeff == std::numeric_limits<std::int64_t>::min())
            throw FormError(Kind::Malformed, "coefficient of " + triple_str(t) + " is out of range");
    }
    std::sort(terms.begin(), terms.end(), triple_less);
    for (std::size_t n = 1; n < terms.size(); ++n) {
        if (!triple_less(terms[n - 1], terms[n]))
            throw FormError(Kind::DuplicateTriple, "duplicate triple " + triple_str(terms[n]));
    }
    std::erase_if(terms, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(terms);
}

std::int64_t ThreeForm::coefficient(int i, int j, int k) const
{
    const Term key{i, j, k, 0};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key, triple_less);
    if (it == terms_.end() || triple_less(key, *it))
        return 0;
    return it->coeff;
}

ThreeForm ThreeForm::negated() const
{
    ThreeForm out = *this;
    for (Term& t : out.terms_)
        t.coeff = -t.coeff;
    return out;
}

ThreeForm ThreeForm::permuted(std::span<const int> perm) const
{
    if (static_cast<int>(perm.size()) != rank_)
        throw FormError(Kind::BadParameter, "permutation length does not match rank");
    std::vector<bool> seen(rank_ + 1, false);
    for (int v : perm) {
        if (v < 1 || v > rank_ || seen[v])
            throw FormError(Kind::BadParameter, "not a permutation of 1..rank");
        seen[v] = true;
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        std::array<int, 3> idx{perm[t.i - 1], perm[t.j - 1], perm[t.k - 1]};
        // Bubble sort the three images, tracking the parity of the swaps.
        bool odd = false;
        for (int pass = 0; pass < 2; ++pass) {
            for (int a = 0; a + 1 < 3 - pass; ++a) {
                if (idx[a] > idx[a + 1]) {
                    std::swap(idx[a], idx[a + 1]);
                    odd = !odd;
                }
            }
        }
        out.push_back({idx[0], idx[1], idx[2], odd ? -t.coeff : t.coeff});
    }
    return ThreeForm(rank_, std::move(out));
}

ThreeForm operator+(const ThreeForm& a, const ThreeForm& b)
{
    if (a.rank_ != b.rank_)
        throw FormError(Kind::RankMismatch, "cannot add forms of different rank");
    std::vector<Term> out;
    std::size_t x = 0, y = 0;
    while (x < a.terms_.size() || y < b.terms_.size()) {
        if (y == b.terms_.size() || (x < a.terms_.size() && triple_less(a.terms_[x], b.terms_[y]))) {
            out.push_back(a.terms_[x++]);
        } else if (x == a.terms_.size() || triple_less(b.terms_[y], a.terms_[x])) {
            out.push_back(b.terms_[y++]);
        } else {
            Term t = a.terms_[x++];
            if (__builtin_add_overflow(t.coeff, b.terms_[y++].coeff, &t.coeff))
                throw FormError(Kind::Malformed, "coefficient overflow in form sum");
            out.push_back(t);
        }
    }
    return ThreeForm(a.rank_, std::move(out));
}

ThreeForm parse_form(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormError(Kind::Malformed, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw FormError(Kind::Malformed, "form document must be a JSON object");
    if (!doc.contains("rank") || !doc["rank"].is_number_integer())
        throw FormError(Kind::Malformed, "form document needs an integer \"rank\"");
    if (!doc.contains("terms") || !doc["terms"].is_array())
        throw FormError(Kind::Malformed, "form document needs a \"terms\" array");

    const auto& rank_node = doc["rank"];
    if (rank_node.is_number_unsigned() && rank_node.get<std::uint64_t>() > static_cast<std::uint64_t>(kMaxRank))
        throw FormError(Kind::RankTooLarge, "rank exceeds the maximum of " + std::to_string(kMaxRank));
    const std::int64_t rank = rank_node.get<std::int64_t>();
    check_rank(rank);

    std::vector<Term> terms;
    for (const auto& entry : doc["terms"]) {
        if (!entry.is_array() || entry.size() != 4)
            throw FormError(Kind::Malformed, "each term must be an [i, j, k, a] quadruple");
        std::array<std::int64_t, 4> v{};
        for (std::size_t n = 0; n < 4; ++n) {
            const auto& x = entry[n];
            if (!x.is_number_integer())
                throw FormError(Kind::Malformed, "term entries must be integers");
            if (x.is_number_unsigned() && x.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
                throw FormError(Kind::Malformed, "term entry out of 64-bit range");
            v[n] = x.get<std::int64_t>();
        }
        Term t{0, 0, 0, v[3]};
        if (v[0] < 1 || v[1] < 1 || v[2] < 1 || v[0] > rank || v[1] > rank || v[2] > rank) {
            if (!(v[0] < v[1] && v[1] < v[2]))
                throw FormError(Kind::NotIncreasing, "term indices must be strictly increasing");
            throw FormError(Kind::IndexOutOfRange, "term index outside [1, " + std::to_string(rank) + "]");
        }
        t.i = static_cast<int>(v[0]);
        t.j = static_cast<int>(v[1]);
        t.k = static_cast<int>(v[2]);
        terms.push_back(t);
    }
    return ThreeForm(static_cast<int>(rank), std::move(terms));
}

std::string serialize_form(const ThreeForm& f)
{
    std::ostringstream os;
    os << "{\n  \"rank\": " << f.rank() << ",\n  \"terms\": [";
    const auto terms = f.terms();
    for (std::size_t n = 0; n < terms.size(); ++n) {
        const Term& t = terms[n];
        os << (n == 0 ? "\n" : ",\n") << "    [" << t.i << ", " << t.j << ", " << t.k << ", " << t.coeff << "]";
    }
    if (!terms.empty())
        os << "\n  ";
    os << "]\n}\n";
    return os.str();
}

ThreeForm read_form_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open form file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_form(buf.str());
}

void write_form_file(const std::string& path, const ThreeForm& f)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write form file " + path);
    out << serialize_form(f);
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

ThreeForm trivial_form(int b)
{
    return ThreeForm(b);
}

ThreeForm torus3(std::int64_t n)
{
    return ThreeForm(3, {{1, 2, 3, n}});
}

ThreeForm surface_circle(int g)
{
    if (g < 0)
        throw FormError(Kind::BadParameter, "genus must be non-negative");
    return mapping_torus(g, 0);
}

ThreeForm mapping_torus(int w, int v0)
{
    if (w < 0 || v0 < 0)
        throw FormError(Kind::BadParameter, "mapping torus parameters must be non-negative");
    const std::int64_t rank = 1 + 2 * static_cast<std::int64_t>(w) + v0;
    check_rank(rank);
    std::vector<Term> terms;
    for (int i = 1; i <= w; ++i)
        terms.push_back({1, 2 * i, 2 * i + 1, 1});
    return ThreeForm(static_cast<int>(rank), std::move(terms));
}

ThreeForm builtin_family(std::string_view name, const FamilyParams& p)
{
    if (name == "trivial") {
        if (p.b < 0)
            throw FormError(Kind::BadParameter, "trivial family needs b >= 0");
        return trivial_form(p.b);
    }
    if (name == "torus3")
        return torus3(p.n);
    if (name == "surface_circle")
        return surface_circle(p.g);
    if (name == "mapping_torus")
        return mapping_torus(p.w, p.v0);
    throw FormError(Kind::BadParameter, "unknown family '" + std::string(name) + "'");
}

ThreeForm connected_sum(const ThreeForm& f1, const ThreeForm& f2)
{
    const int shift = f1.rank();
    const int rank = f1.rank() + f2.rank();
    check_rank(rank);
    std::vector<Term> terms(f1.terms().begin(), f1.terms().end());
    for (const Term& t : f2.terms())
        terms.push_back({t.i + shift, t.j + shift, t.k + shift, t.coeff});
    return ThreeForm(rank, std::move(terms));
}

ThreeForm reduce_mod_p(const ThreeForm& f, std::uint64_t p)
{
    if (!is_prime(p))
        throw FormError(Kind::BadParameter, std::to_string(p) + " is not prime");
    if (p > static_cast<std::uint64_t>(INT64_MAX))
        throw FormError(Kind::BadParameter, "prime too large for 64-bit coefficients");
    const auto sp = static_cast<std::int64_t>(p);
    std::vector<Term> terms;
    for (Term t : f.terms()) {
        t.coeff %= sp;
        if (t.coeff < 0)
            t.coeff += sp;
        terms.push_back(t);
    }
    return ThreeForm(f.rank(), std::move(terms));
}

}  // namespace cuphom
