#pragma once

// Exact integer matrices: Smith normal form invariant factors and ranks over
// Q and F_p. All arithmetic is arbitrary precision.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cuphom {

using Integer = mpz_class;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;

    /// Plain-text grid: rows on separate lines, entries space-separated.
    std::string to_text() const;

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
    friend IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
    bool operator==(const IntegerMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

struct SNFResult {
    std::size_t rank = 0;
    /// d_1 | d_2 | ... | d_rank, all positive. Unit factors are kept.
    std::vector<Integer> invariant_factors;
};

SNFResult smith_normal_form(IntegerMatrix m);

/// Rewrites positive integers d_1..d_n as the invariant factors of
/// Z/d_1 + ... + Z/d_n (same count, divisibility order, units kept).
void normalize_divisibility(std::vector<Integer>& factors);

/// Rank over Q (characteristic 0) or over F_p. Throws std::invalid_argument
/// for a composite characteristic.
std::size_t rank_over_field(const IntegerMatrix& m, std::uint64_t characteristic);

/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

}  // namespace cuphom
