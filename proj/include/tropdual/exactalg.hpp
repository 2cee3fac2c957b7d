#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropdual/error.hpp"

namespace tropdual {

// mpz_class has no long long constructor on LP64 builds of gmpxx.
inline mpz_class to_mpz(long long v) { return mpz_class(static_cast<long>(v)); }

enum class RingKind { F2, Fp, Q, Z };

struct Ring {
    RingKind kind = RingKind::Q;
    uint32_t p = 0;  // modulus for F2 / Fp, 0 otherwise

    static Ring F2() { return {RingKind::F2, 2}; }
    static Ring Fp(uint32_t prime);
    static Ring Q() { return {RingKind::Q, 0}; }
    static Ring Z() { return {RingKind::Z, 0}; }

    // Accepts "F2", "Fp:<p>", "Q", "Z".
    static Ring parse(const std::string& s);

    uint32_t characteristic() const { return p; }
    bool is_field() const { return kind != RingKind::Z; }
    bool is_modular() const { return kind == RingKind::F2 || kind == RingKind::Fp; }
    std::string name() const;

    // Whether the image of the integer n is zero / a unit in this ring.
    bool is_zero(const mpz_class& n) const;
    bool is_unit(const mpz_class& n) const;

    bool operator==(const Ring& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const Ring& o) const { return !(*this == o); }
};

bool is_prime(uint32_t n);

// Dense matrix over a Ring. Entries of F2/Fp matrices are stored as residues,
// entries of Q/Z matrices as rationals (always integral for Z).
class Matrix {
public:
    Matrix() = default;
    Matrix(Ring ring, size_t rows, size_t cols);

    static Matrix identity(Ring ring, size_t n);
    static Matrix from_rows(Ring ring, const std::vector<std::vector<long long>>& rows);
    static Matrix from_rows(Ring ring, const std::vector<std::vector<mpz_class>>& rows);
    static Matrix column_vector(Ring ring, const std::vector<long long>& v);

    const Ring& ring() const { return ring_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    mpq_class at(size_t i, size_t j) const;
    void set(size_t i, size_t j, const mpq_class& v);
    void set(size_t i, size_t j, long long v);
    void add_to(size_t i, size_t j, const mpq_class& v);
    bool is_zero_at(size_t i, size_t j) const;
    bool is_zero() const;

    // Residue access for F2/Fp matrices.
    uint32_t mod_at(size_t i, size_t j) const { return mod_[i * cols_ + j]; }
    uint32_t& mod_ref(size_t i, size_t j) { return mod_[i * cols_ + j]; }
    // Rational access for Q/Z matrices.
    const mpq_class& big_at(size_t i, size_t j) const { return big_[i * cols_ + j]; }
    mpq_class& big_ref(size_t i, size_t j) { return big_[i * cols_ + j]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(long long c) const;

    Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    void set_block(size_t r0, size_t c0, const Matrix& m);
    void add_block(size_t r0, size_t c0, const Matrix& m);
    Matrix select_columns(const std::vector<size_t>& idx) const;
    Matrix column(size_t j) const { return block(0, j, rows_, 1); }

    static Matrix hstack(const std::vector<Matrix>& ms);
    static Matrix vstack(const std::vector<Matrix>& ms);

    // Maps an integral Q/Z matrix (or a matrix over the same ring) into `target`.
    Matrix reduced_to(Ring target) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    Ring ring_;
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<uint32_t> mod_;
    std::vector<mpq_class> big_;
};

// Reduced row echelon form over a field.
struct Echelon {
    Matrix reduced;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

Echelon rref(const Matrix& m);

// Rank over the fraction field; 0 for empty matrices.
size_t rank(const Matrix& m);

// Columns form a basis of the kernel; over Z the saturated kernel lattice.
Matrix kernel_basis(const Matrix& m);

struct SmithForm {
    Matrix U, D, V;  // U * m * V = D
};

SmithForm smith_normal_form(const Matrix& m);

// Nonzero diagonal entries of the Smith form, in divisibility order.
std::vector<mpz_class> invariant_factors(const Matrix& m);

// Some x with m * x = b (b may have several columns), solved in the ring.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

// Basis of the sum of column spans. Over Z, the column Hermite normal form.
Matrix column_span_sum(const std::vector<Matrix>& ms);

inline Matrix column_basis(const Matrix& m) { return column_span_sum({m}); }

// True iff Z^ambient / colspan(sub) is torsion-free.
bool is_saturated(const Matrix& sub, size_t ambient_rank);

// True iff every column of `sub` lies in the column span of `span`.
bool spans_contain(const Matrix& span, const Matrix& sub);

// Column echelon form over Z: E = m * U with U unimodular.
struct ColumnEchelon {
    Matrix E;
    Matrix U;
    std::vector<size_t> pivot_rows;  // pivot row of column j, for j < pivot_rows.size()
};

ColumnEchelon column_echelon(const Matrix& m);

mpz_class determinant(const Matrix& m);  // integral square matrix (Q or Z storage)

long long binomial(long long n, long long k);

}  // namespace tropdual
