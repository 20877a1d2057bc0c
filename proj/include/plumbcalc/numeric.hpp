#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace plumbcalc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Integer& n);
std::string to_string(const Rational& r);   // "p/q", or "p" when q = 1
Rational parse_rational(const std::string& text);

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    IntMatrix transpose() const;
    bool is_symmetric() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t r);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// Fraction-free (Bareiss) determinant of a square matrix; 1 for the empty matrix.
Integer determinant(const IntMatrix& m);

// left * m * right is diagonal with the invariant factors on the diagonal.
struct SNFResult {
    std::vector<Integer> factors;   // min(rows, cols) entries, d_i | d_{i+1}, zeros last
    IntMatrix left;                 // rows x rows, unimodular
    IntMatrix right;                // cols x cols, unimodular
    IntMatrix diagonal;             // left * m * right
};

SNFResult smith_normal_form(const IntMatrix& m);

// Finitely generated abelian group Z^free_rank + sum Z/t_i with 1 < t_1 | t_2 | ...
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup& other) const = default;
    std::string to_string() const;  // "0", "Z", "Z^2 + Z/3", ...

    static AbelianGroup free(std::size_t rank) { return AbelianGroup{rank, {}}; }
};

// Z^rows / image(m)
AbelianGroup cokernel(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

// Unique solution of m x = b over Q, or nullopt when m is singular.
std::optional<std::vector<Rational>> solve_rational(const IntMatrix& m, const std::vector<Rational>& b);

} // namespace plumbcalc
