#pragma once

// The triple-cup-product 3-form: the sole input object. A ThreeForm on a free
// module of rank b is a sparse list of coefficients a_ijk, 1 <= i < j < k <= b.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cuphom {

struct Term {
    int i = 0;
    int j = 0;
    int k = 0;
    std::int64_t coeff = 0;

    std::uint64_t mask() const
    {
        return (std::uint64_t{1} << (i - 1)) | (std::uint64_t{1} << (j - 1)) | (std::uint64_t{1} << (k - 1));
    }
    bool operator==(const Term&) const = default;
};

class FormError : public std::runtime_error {
public:
    enum class Kind {
        Malformed,
        NotIncreasing,
        IndexOutOfRange,
        DuplicateTriple,
        RankTooLarge,
        NegativeRank,
        RankMismatch,
        BadParameter,
    };

    FormError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class ThreeForm {
public:
    ThreeForm() = default;
    explicit ThreeForm(int rank);

    /// Validates every triple, drops zero coefficients and sorts terms
    /// lexicographically. Throws FormError on any violation.
    ThreeForm(int rank, std::vector<Term> terms);

    int rank() const { return rank_; }
    std::span<const Term> terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::int64_t coefficient(int i, int j, int k) const;

    ThreeForm negated() const;

    /// Relabels basis index i as perm[i-1]; `perm` must be a permutation of
    /// 1..rank. Coefficients pick up the sign of the induced reordering.
    ThreeForm permuted(std::span<const int> perm) const;

    friend ThreeForm operator+(const ThreeForm& a, const ThreeForm& b);
    bool operator==(const ThreeForm&) const = default;

private:
    int rank_ = 0;
    std::vector<Term> terms_;
};

ThreeForm parse_form(std::string_view text);
std::string serialize_form(const ThreeForm& f);

ThreeForm read_form_file(const std::string& path);
void write_form_file(const std::string& path, const ThreeForm& f);

// Built-in families.
ThreeForm trivial_form(int b);
ThreeForm torus3(std::int64_t n);
/// Sigma_g x S^1: index 1 is the circle class, terms (1, 2i, 2i+1) for i = 1..g.
ThreeForm surface_circle(int g);
/// Mapping torus with a symplectic block of dimension 2w and a null block of
/// dimension v0.
ThreeForm mapping_torus(int w, int v0);

struct FamilyParams {
    std::int64_t n = 1;
    int g = 1;
    int w = 0;
    int v0 = 0;
    int b = 0;
};

/// Dispatches on "trivial", "torus3", "surface_circle" or "mapping_torus".
ThreeForm builtin_family(std::string_view name, const FamilyParams& params);

/// Block sum: f2's indices are shifted up by rank(f1); no mixed triples.
ThreeForm connected_sum(const ThreeForm& f1, const ThreeForm& f2);

/// Coefficients reduced into [0, p); terms reducing to zero are dropped.
ThreeForm reduce_mod_p(const ThreeForm& f, std::uint64_t p);

}  // namespace cuphom
