#include "cuphom/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cuphom {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        for (long v : row)
            data_.emplace_back(v);
    }
}

bool IntegerMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntegerMatrix::to_text() const
{
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c)
                os << ' ';
            os << (*this)(r, c);
        }
        os << '\n';
    }
    return os.str();
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    IntegerMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(r, k);
            if (x == 0)
                continue;
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const Integer& y = b(k, c);
                if (y != 0)
                    out(r, c) += x * y;
            }
        }
    }
    return out;
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix sum dimension mismatch");
    IntegerMatrix out = a;
    for (std::size_t n = 0; n < out.data_.size(); ++n)
        out.data_[n] += b.data_[n];
    return out;
}

namespace {

int cmpabs(const Integer& a, const Integer& b)
{
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

class SmithReducer {
public:
    explicit SmithReducer(IntegerMatrix& m) : m_(m) {}

    std::vector<Integer> diagonal()
    {
        std::vector<Integer> diag;
        const std::size_t n = std::min(m_.rows(), m_.cols());
        for (std::size_t t = 0; t < n; ++t) {
            if (!select_pivot(t))
                break;
            reduce_cross(t);
            diag.push_back(abs(m_(t, t)));
        }
        return diag;
    }

private:
    bool select_pivot(std::size_t t)
    {
        std::size_t best_r = 0, best_c = 0;
        bool found = false;
        for (std::size_t r = t; r < m_.rows(); ++r) {
            for (std::size_t c = t; c < m_.cols(); ++c) {
                const Integer& x = m_(r, c);
                if (x == 0)
                    continue;
                if (!found || cmpabs(x, m_(best_r, best_c)) < 0) {
                    best_r = r;
                    best_c = c;
                    found = true;
                    if (x == 1 || x == -1)
                        goto done;
                }
            }
        }
    done:
        if (!found)
            return false;
        swap_rows(t, best_r);
        swap_cols(t, best_c);
        return true;
    }

    // Clears row t and column t outside the pivot. Every leftover remainder is
    // strictly smaller than the current pivot, so the loop terminates.
    void reduce_cross(std::size_t t)
    {
        while (true) {
            if (std::size_t r = clear_column(t); r != npos) {
                swap_rows(t, r);
                continue;
            }
            if (std::size_t c = clear_row(t); c != npos) {
                swap_cols(t, c);
                continue;
            }
            return;
        }
    }

    // Row operations below the pivot. Returns the row holding the smallest
    // nonzero remainder, or npos when the column is clear.
    std::size_t clear_column(std::size_t t)
    {
        nonzero_cols_.clear();
        for (std::size_t c = t; c < m_.cols(); ++c)
            if (m_(t, c) != 0)
                nonzero_cols_.push_back(c);

        std::size_t best = npos;
        const Integer& pivot = m_(t, t);
        for (std::size_t r = t + 1; r < m_.rows(); ++r) {
            if (m_(r, t) == 0)
                continue;
            mpz_tdiv_q(q_.get_mpz_t(), m_(r, t).get_mpz_t(), pivot.get_mpz_t());
            if (q_ != 0) {
                for (std::size_t c : nonzero_cols_)
                    mpz_submul(m_(r, c).get_mpz_t(), q_.get_mpz_t(), m_(t, c).get_mpz_t());
            }
            if (m_(r, t) != 0 && (best == npos || cmpabs(m_(r, t), m_(best, t)) < 0))
                best = r;
        }
        return best;
    }

    // With column t clear below the pivot, a column operation on column c only
    // touches entry (t, c).
    std::size_t clear_row(std::size_t t)
    {
        std::size_t best = npos;
        const Integer& pivot = m_(t, t);
        for (std::size_t c = t + 1; c < m_.cols(); ++c) {
            Integer& x = m_(t, c);
            if (x == 0)
                continue;
            mpz_tdiv_r(x.get_mpz_t(), x.get_mpz_t(), pivot.get_mpz_t());
            if (x != 0 && (best == npos || cmpabs(x, m_(t, best)) < 0))
                best = c;
        }
        return best;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t c = 0; c < m_.cols(); ++c)
            mpz_swap(m_(a, c).get_mpz_t(), m_(b, c).get_mpz_t());
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t r = 0; r < m_.rows(); ++r)
            mpz_swap(m_(r, a).get_mpz_t(), m_(r, b).get_mpz_t());
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    IntegerMatrix& m_;
    std::vector<std::size_t> nonzero_cols_;
    Integer q_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::size_t rank_mod_p(const IntegerMatrix& m, std::uint64_t p)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::uint64_t> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            a[r * cols + c] = mpz_fdiv_ui(m(r, c).get_mpz_t(), p);

    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pr = rank;
        while (pr < rows && a[pr * cols + c] == 0)
            ++pr;
        if (pr == rows)
            continue;
        if (pr != rank)
            std::swap_ranges(a.begin() + pr * cols, a.begin() + (pr + 1) * cols, a.begin() + rank * cols);
        const std::uint64_t inv = powmod(a[rank * cols + c], p - 2, p);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const std::uint64_t x = a[r * cols + c];
            if (x == 0)
                continue;
            const std::uint64_t factor = mulmod(x, inv, p);
            for (std::size_t k = c; k < cols; ++k) {
                const std::uint64_t y = a[rank * cols + k];
                if (y == 0)
                    continue;
                const std::uint64_t sub = mulmod(factor, y, p);
                std::uint64_t& z = a[r * cols + k];
                z = z >= sub ? z - sub : z + (p - sub);
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

// After pass i, d_i is the gcd of d_i..d_n.
void normalize_divisibility(std::vector<Integer>& d)
{
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0)
                continue;
            Integer g = gcd(d[i], d[j]);
            Integer l = (d[i] / g) * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
}

SNFResult smith_normal_form(IntegerMatrix m)
{
    SmithReducer reducer(m);
    SNFResult out;
    out.invariant_factors = reducer.diagonal();
    normalize_divisibility(out.invariant_factors);
    out.rank = out.invariant_factors.size();
    return out;
}

std::size_t rank_over_field(const IntegerMatrix& m, std::uint64_t characteristic)
{
    if (characteristic == 0)
        return smith_normal_form(m).rank;
    if (!is_prime(characteristic))
        throw std::invalid_argument("characteristic " + std::to_string(characteristic) + " is not prime");
    return rank_mod_p(m, characteristic);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

}  // namespace cuphom
