#include "tropdual/exactalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace tropdual {

namespace {

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

uint32_t inv_mod(uint32_t a, uint32_t p) { return static_cast<uint32_t>(pow_mod(a, p - 2, p)); }

uint32_t residue(const mpz_class& z, uint32_t p) {
    return static_cast<uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), p));
}

uint32_t residue(const mpq_class& q, uint32_t p) {
    uint32_t num = residue(q.get_num(), p);
    uint32_t den = residue(q.get_den(), p);
    if (den == 0) throw Error("DomainError", "denominator not invertible mod " + std::to_string(p));
    return static_cast<uint32_t>(uint64_t(num) * inv_mod(den, p) % p);
}

void check_same_ring(const Matrix& a, const Matrix& b, const char* what) {
    if (a.ring() != b.ring()) throw Error("WrongRing", std::string(what) + ": ring mismatch");
}

}  // namespace

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Ring Ring::Fp(uint32_t prime) {
    if (prime >= (1u << 31) || !is_prime(prime))
        throw Error("InvalidRing", "Fp requires a prime below 2^31, got " + std::to_string(prime));
    return {RingKind::Fp, prime};
}

Ring Ring::parse(const std::string& s) {
    if (s == "F2") return F2();
    if (s == "Q") return Q();
    if (s == "Z") return Z();
    if (s.rfind("Fp:", 0) == 0) {
        std::string digits = s.substr(3);
        if (digits.empty() || digits.size() > 10 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw Error("InvalidRing", "bad ring string '" + s + "'");
        unsigned long long v = std::stoull(digits);
        if (v >= (1ull << 31)) throw Error("InvalidRing", "modulus too large in '" + s + "'");
        return Fp(static_cast<uint32_t>(v));
    }
    throw Error("InvalidRing", "bad ring string '" + s + "'");
}

std::string Ring::name() const {
    switch (kind) {
        case RingKind::F2: return "F2";
        case RingKind::Fp: return "Fp:" + std::to_string(p);
        case RingKind::Q: return "Q";
        case RingKind::Z: return "Z";
    }
    return "?";
}

bool Ring::is_zero(const mpz_class& n) const {
    if (is_modular()) return residue(n, p) == 0;
    return n == 0;
}

bool Ring::is_unit(const mpz_class& n) const {
    switch (kind) {
        case RingKind::F2:
        case RingKind::Fp: return residue(n, p) != 0;
        case RingKind::Q: return n != 0;
        case RingKind::Z: return n == 1 || n == -1;
    }
    return false;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Ring ring, size_t rows, size_t cols) : ring_(ring), rows_(rows), cols_(cols) {
    if (ring.is_modular())
        mod_.assign(rows * cols, 0);
    else
        big_.assign(rows * cols, mpq_class(0));
}

Matrix Matrix::identity(Ring ring, size_t n) {
    Matrix m(ring, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1LL);
    return m;
}

Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<long long>>& rows) {
    size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(ring, rows.size(), c);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw Error("DimensionMismatch", "ragged rows");
        for (size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<mpz_class>>& rows) {
    size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(ring, rows.size(), c);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw Error("DimensionMismatch", "ragged rows");
        for (size_t j = 0; j < c; ++j) m.set(i, j, mpq_class(rows[i][j]));
    }
    return m;
}

Matrix Matrix::column_vector(Ring ring, const std::vector<long long>& v) {
    Matrix m(ring, v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
}

mpq_class Matrix::at(size_t i, size_t j) const {
    if (ring_.is_modular()) return mpq_class(mod_[i * cols_ + j]);
    return big_[i * cols_ + j];
}

void Matrix::set(size_t i, size_t j, const mpq_class& v) {
    if (ring_.is_modular()) {
        mod_[i * cols_ + j] = residue(v, ring_.p);
        return;
    }
    if (ring_.kind == RingKind::Z && v.get_den() != 1)
        throw Error("DomainError", "non-integral entry in a Z matrix");
    big_[i * cols_ + j] = v;
}

void Matrix::set(size_t i, size_t j, long long v) {
    if (ring_.is_modular()) {
        long long r = v % static_cast<long long>(ring_.p);
        if (r < 0) r += ring_.p;
        mod_[i * cols_ + j] = static_cast<uint32_t>(r);
        return;
    }
    big_[i * cols_ + j] = mpq_class(mpz_class(static_cast<signed long>(v)));
}

void Matrix::add_to(size_t i, size_t j, const mpq_class& v) {
    if (ring_.is_modular()) {
        uint32_t& x = mod_[i * cols_ + j];
        x = static_cast<uint32_t>((uint64_t(x) + residue(v, ring_.p)) % ring_.p);
        return;
    }
    if (ring_.kind == RingKind::Z && v.get_den() != 1)
        throw Error("DomainError", "non-integral entry in a Z matrix");
    big_[i * cols_ + j] += v;
}

bool Matrix::is_zero_at(size_t i, size_t j) const {
    if (ring_.is_modular()) return mod_[i * cols_ + j] == 0;
    return sgn(big_[i * cols_ + j]) == 0;
}

bool Matrix::is_zero() const {
    if (ring_.is_modular())
        return std::all_of(mod_.begin(), mod_.end(), [](uint32_t x) { return x == 0; });
    return std::all_of(big_.begin(), big_.end(), [](const mpq_class& x) { return sgn(x) == 0; });
}

Matrix Matrix::transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (ring_.is_modular())
                t.mod_[j * rows_ + i] = mod_[i * cols_ + j];
            else
                t.big_[j * rows_ + i] = big_[i * cols_ + j];
        }
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_same_ring(*this, o, "multiply");
    if (cols_ != o.rows_)
        throw Error("DimensionMismatch", "multiply " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                             " by " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    Matrix r(ring_, rows_, o.cols_);
    if (ring_.is_modular()) {
        const uint64_t p = ring_.p;
        std::vector<uint64_t> acc(o.cols_);
        for (size_t i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (size_t k = 0; k < cols_; ++k) {
                uint64_t a = mod_[i * cols_ + k];
                if (!a) continue;
                const uint32_t* brow = &o.mod_[k * o.cols_];
                for (size_t j = 0; j < o.cols_; ++j)
                    if (brow[j]) acc[j] = (acc[j] + a * brow[j]) % p;
            }
            for (size_t j = 0; j < o.cols_; ++j) r.mod_[i * o.cols_ + j] = static_cast<uint32_t>(acc[j]);
        }
        return r;
    }
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const mpq_class& a = big_[i * cols_ + k];
            if (sgn(a) == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const mpq_class& b = o.big_[k * o.cols_ + j];
                if (sgn(b) != 0) r.big_[i * o.cols_ + j] += a * b;
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_ring(*this, o, "add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("DimensionMismatch", "add");
    Matrix r = *this;
    if (ring_.is_modular()) {
        for (size_t i = 0; i < mod_.size(); ++i)
            r.mod_[i] = static_cast<uint32_t>((uint64_t(mod_[i]) + o.mod_[i]) % ring_.p);
    } else {
        for (size_t i = 0; i < big_.size(); ++i) r.big_[i] += o.big_[i];
    }
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    if (ring_.is_modular()) {
        for (auto& x : r.mod_) x = x ? ring_.p - x : 0;
    } else {
        for (auto& x : r.big_) x = -x;
    }
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::scaled(long long c) const {
    Matrix r = *this;
    if (ring_.is_modular()) {
        long long cm = c % static_cast<long long>(ring_.p);
        if (cm < 0) cm += ring_.p;
        for (auto& x : r.mod_) x = static_cast<uint32_t>(uint64_t(x) * uint64_t(cm) % ring_.p);
    } else {
        mpq_class cq(mpz_class(static_cast<signed long>(c)));
        for (auto& x : r.big_) x *= cq;
    }
    return r;
}

Matrix Matrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("DimensionMismatch", "block out of range");
    Matrix b(ring_, nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) {
            if (ring_.is_modular())
                b.mod_[i * nc + j] = mod_[(r0 + i) * cols_ + c0 + j];
            else
                b.big_[i * nc + j] = big_[(r0 + i) * cols_ + c0 + j];
        }
    return b;
}

void Matrix::set_block(size_t r0, size_t c0, const Matrix& m) {
    check_same_ring(*this, m, "set_block");
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw Error("DimensionMismatch", "set_block out of range");
    for (size_t i = 0; i < m.rows_; ++i)
        for (size_t j = 0; j < m.cols_; ++j) {
            if (ring_.is_modular())
                mod_[(r0 + i) * cols_ + c0 + j] = m.mod_[i * m.cols_ + j];
            else
                big_[(r0 + i) * cols_ + c0 + j] = m.big_[i * m.cols_ + j];
        }
}

void Matrix::add_block(size_t r0, size_t c0, const Matrix& m) {
    check_same_ring(*this, m, "add_block");
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw Error("DimensionMismatch", "add_block out of range");
    for (size_t i = 0; i < m.rows_; ++i)
        for (size_t j = 0; j < m.cols_; ++j) {
            if (ring_.is_modular()) {
                uint32_t& x = mod_[(r0 + i) * cols_ + c0 + j];
                x = static_cast<uint32_t>((uint64_t(x) + m.mod_[i * m.cols_ + j]) % ring_.p);
            } else {
                big_[(r0 + i) * cols_ + c0 + j] += m.big_[i * m.cols_ + j];
            }
        }
}

Matrix Matrix::select_columns(const std::vector<size_t>& idx) const {
    Matrix r(ring_, rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < idx.size(); ++k) {
            if (ring_.is_modular())
                r.mod_[i * idx.size() + k] = mod_[i * cols_ + idx[k]];
            else
                r.big_[i * idx.size() + k] = big_[i * cols_ + idx[k]];
        }
    return r;
}

Matrix Matrix::hstack(const std::vector<Matrix>& ms) {
    if (ms.empty()) throw Error("DimensionMismatch", "hstack of nothing");
    size_t c = 0;
    for (const auto& m : ms) {
        check_same_ring(ms[0], m, "hstack");
        if (m.rows_ != ms[0].rows_) throw Error("DimensionMismatch", "hstack row counts differ");
        c += m.cols_;
    }
    Matrix r(ms[0].ring_, ms[0].rows_, c);
    size_t off = 0;
    for (const auto& m : ms) {
        r.set_block(0, off, m);
        off += m.cols_;
    }
    return r;
}

Matrix Matrix::vstack(const std::vector<Matrix>& ms) {
    if (ms.empty()) throw Error("DimensionMismatch", "vstack of nothing");
    size_t r = 0;
    for (const auto& m : ms) {
        check_same_ring(ms[0], m, "vstack");
        if (m.cols_ != ms[0].cols_) throw Error("DimensionMismatch", "vstack column counts differ");
        r += m.rows_;
    }
    Matrix out(ms[0].ring_, r, ms[0].cols_);
    size_t off = 0;
    for (const auto& m : ms) {
        out.set_block(off, 0, m);
        off += m.rows_;
    }
    return out;
}

Matrix Matrix::reduced_to(Ring target) const {
    if (target == ring_) return *this;
    if (ring_.is_modular()) throw Error("WrongRing", "cannot lift a modular matrix to " + target.name());
    Matrix r(target, rows_, cols_);
    for (size_t i = 0; i < big_.size(); ++i) {
        if (target.is_modular())
            r.mod_[i] = residue(big_[i], target.p);
        else {
            if (target.kind == RingKind::Z && big_[i].get_den() != 1)
                throw Error("DomainError", "non-integral entry mapped to Z");
            r.big_[i] = big_[i];
        }
    }
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && mod_ == o.mod_ && big_ == o.big_;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "] over " << ring_.name();
    return os.str();
}

// ---------------------------------------------------------------- echelon forms

namespace {

Echelon rref_f2(const Matrix& m) {
    const size_t R = m.rows(), C = m.cols(), W = (C + 63) / 64;
    std::vector<uint64_t> bits(R * W, 0);
    for (size_t i = 0; i < R; ++i)
        for (size_t j = 0; j < C; ++j)
            if (m.mod_at(i, j)) bits[i * W + j / 64] |= uint64_t(1) << (j % 64);
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t c = 0; c < C && row < R; ++c) {
        const size_t w = c / 64;
        const uint64_t mask = uint64_t(1) << (c % 64);
        size_t piv = row;
        while (piv < R && !(bits[piv * W + w] & mask)) ++piv;
        if (piv == R) continue;
        if (piv != row)
            for (size_t k = 0; k < W; ++k) std::swap(bits[piv * W + k], bits[row * W + k]);
        for (size_t i = 0; i < R; ++i)
            if (i != row && (bits[i * W + w] & mask))
                for (size_t k = w; k < W; ++k) bits[i * W + k] ^= bits[row * W + k];
        pivots.push_back(c);
        ++row;
    }
    Matrix out(m.ring(), R, C);
    for (size_t i = 0; i < row; ++i)
        for (size_t j = 0; j < C; ++j)
            if (bits[i * W + j / 64] & (uint64_t(1) << (j % 64))) out.mod_ref(i, j) = 1;
    return {out, pivots};
}

Echelon rref_fp(const Matrix& m) {
    const size_t R = m.rows(), C = m.cols();
    const uint64_t p = m.ring().p;
    Matrix a = m;
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t c = 0; c < C && row < R; ++c) {
        size_t piv = row;
        while (piv < R && a.mod_at(piv, c) == 0) ++piv;
        if (piv == R) continue;
        if (piv != row)
            for (size_t k = 0; k < C; ++k) std::swap(a.mod_ref(piv, k), a.mod_ref(row, k));
        const uint64_t inv = inv_mod(a.mod_at(row, c), static_cast<uint32_t>(p));
        for (size_t k = c; k < C; ++k) a.mod_ref(row, k) = static_cast<uint32_t>(a.mod_at(row, k) * inv % p);
        for (size_t i = 0; i < R; ++i) {
            if (i == row) continue;
            const uint64_t f = a.mod_at(i, c);
            if (!f) continue;
            const uint64_t nf = p - f;
            for (size_t k = c; k < C; ++k) {
                uint64_t x = a.mod_at(row, k);
                if (x) a.mod_ref(i, k) = static_cast<uint32_t>((a.mod_at(i, k) + nf * x) % p);
            }
        }
        pivots.push_back(c);
        ++row;
    }
    return {a, pivots};
}

Echelon rref_q(const Matrix& m) {
    const size_t R = m.rows(), C = m.cols();
    Matrix a = m.ring().kind == RingKind::Q ? m : m.reduced_to(Ring::Q());
    std::vector<size_t> pivots;
    size_t row = 0;
    mpq_class f, inv;
    for (size_t c = 0; c < C && row < R; ++c) {
        size_t piv = row;
        while (piv < R && sgn(a.big_at(piv, c)) == 0) ++piv;
        if (piv == R) continue;
        if (piv != row)
            for (size_t k = 0; k < C; ++k) std::swap(a.big_ref(piv, k), a.big_ref(row, k));
        inv = 1 / a.big_at(row, c);
        for (size_t k = c; k < C; ++k)
            if (sgn(a.big_at(row, k)) != 0) a.big_ref(row, k) *= inv;
        for (size_t i = 0; i < R; ++i) {
            if (i == row || sgn(a.big_at(i, c)) == 0) continue;
            f = a.big_at(i, c);
            for (size_t k = c; k < C; ++k)
                if (sgn(a.big_at(row, k)) != 0) a.big_ref(i, k) -= f * a.big_at(row, k);
        }
        pivots.push_back(c);
        ++row;
    }
    return {a, pivots};
}

// Integer helpers over the rational storage of Z matrices.
inline mpz_class zat(const Matrix& m, size_t i, size_t j) { return m.big_at(i, j).get_num(); }

void col_addmul(Matrix& m, size_t dst, size_t src, const mpz_class& f) {
    if (f == 0) return;
    mpq_class fq(f);
    for (size_t i = 0; i < m.rows(); ++i)
        if (sgn(m.big_at(i, src)) != 0) m.big_ref(i, dst) += fq * m.big_at(i, src);
}

void col_swap(Matrix& m, size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < m.rows(); ++i) std::swap(m.big_ref(i, a), m.big_ref(i, b));
}

void col_negate(Matrix& m, size_t a) {
    for (size_t i = 0; i < m.rows(); ++i) m.big_ref(i, a) = -m.big_at(i, a);
}

void row_addmul(Matrix& m, size_t dst, size_t src, const mpz_class& f) {
    if (f == 0) return;
    mpq_class fq(f);
    for (size_t j = 0; j < m.cols(); ++j)
        if (sgn(m.big_at(src, j)) != 0) m.big_ref(dst, j) += fq * m.big_at(src, j);
}

void row_swap(Matrix& m, size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < m.cols(); ++j) std::swap(m.big_ref(a, j), m.big_ref(b, j));
}

void row_negate(Matrix& m, size_t a) {
    for (size_t j = 0; j < m.cols(); ++j) m.big_ref(a, j) = -m.big_at(a, j);
}

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Matrix as_z(const Matrix& m) {
    if (m.ring().kind == RingKind::Z) return m;
    if (m.ring().kind == RingKind::Q) return m.reduced_to(Ring::Z());
    throw Error("WrongRing", "integer operation on " + m.ring().name());
}

}  // namespace

Echelon rref(const Matrix& m) {
    switch (m.ring().kind) {
        case RingKind::F2: return rref_f2(m);
        case RingKind::Fp: return rref_fp(m);
        case RingKind::Q: return rref_q(m);
        case RingKind::Z: {
            Echelon e = rref_q(m);
            return e;  // rational echelon form; entries may be non-integral
        }
    }
    throw Error("WrongRing", "rref");
}

ColumnEchelon column_echelon(const Matrix& input) {
    Matrix E = as_z(input);
    const size_t R = E.rows(), C = E.cols();
    Matrix U = Matrix::identity(Ring::Z(), C);
    std::vector<size_t> pivot_rows;
    size_t k = 0;
    for (size_t i = 0; i < R && k < C; ++i) {
        while (true) {
            // Column with the smallest nonzero |entry| in row i among k..C-1.
            size_t best = C;
            mpz_class bestabs;
            for (size_t j = k; j < C; ++j) {
                mpz_class v = abs(zat(E, i, j));
                if (v != 0 && (best == C || v < bestabs)) {
                    best = j;
                    bestabs = v;
                }
            }
            if (best == C) break;
            col_swap(E, k, best);
            col_swap(U, k, best);
            bool done = true;
            const mpz_class piv = zat(E, i, k);
            for (size_t j = k + 1; j < C; ++j) {
                mpz_class v = zat(E, i, j);
                if (v == 0) continue;
                mpz_class q = fdiv(v, piv);
                col_addmul(E, j, k, -q);
                col_addmul(U, j, k, -q);
                if (zat(E, i, j) != 0) done = false;
            }
            if (done) break;
        }
        if (k < C && zat(E, i, k) != 0) {
            if (zat(E, i, k) < 0) {
                col_negate(E, k);
                col_negate(U, k);
            }
            // Reduce earlier columns in this row modulo the pivot.
            const mpz_class piv = zat(E, i, k);
            for (size_t j = 0; j < k; ++j) {
                mpz_class q = fdiv(zat(E, i, j), piv);
                if (q != 0) {
                    col_addmul(E, j, k, -q);
                    col_addmul(U, j, k, -q);
                }
            }
            pivot_rows.push_back(i);
            ++k;
        }
    }
    return {E, U, pivot_rows};
}

size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    return rref(m).pivots.size();
}

Matrix kernel_basis(const Matrix& m) {
    const Ring ring = m.ring();
    if (ring.kind == RingKind::Z) {
        ColumnEchelon ce = column_echelon(m);
        const size_t k = ce.pivot_rows.size();
        std::vector<size_t> idx;
        for (size_t j = k; j < m.cols(); ++j) idx.push_back(j);
        Matrix K = ce.U.select_columns(idx);
        if (K.cols() == 0) return K;
        return column_basis(K);
    }
    const size_t C = m.cols();
    if (m.rows() == 0) return Matrix::identity(ring, C);
    Echelon e = rref(m);
    std::vector<bool> is_pivot(C, false);
    for (size_t c : e.pivots) is_pivot[c] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < C; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix K(ring, C, free_cols.size());
    for (size_t f = 0; f < free_cols.size(); ++f) {
        K.set(free_cols[f], f, 1LL);
        for (size_t r = 0; r < e.pivots.size(); ++r) {
            if (e.reduced.is_zero_at(r, free_cols[f])) continue;
            K.set(e.pivots[r], f, -e.reduced.at(r, free_cols[f]));
        }
    }
    return K;
}

SmithForm smith_normal_form(const Matrix& input) {
    if (input.ring().kind != RingKind::Z) throw Error("WrongRing", "Smith normal form requires Z");
    Matrix D = input;
    const size_t R = D.rows(), C = D.cols();
    Matrix U = Matrix::identity(Ring::Z(), R);
    Matrix V = Matrix::identity(Ring::Z(), C);
    for (size_t t = 0; t < std::min(R, C); ++t) {
        while (true) {
            // Smallest nonzero entry of the remaining block.
            size_t bi = R, bj = C;
            mpz_class best;
            for (size_t i = t; i < R; ++i)
                for (size_t j = t; j < C; ++j) {
                    mpz_class v = abs(zat(D, i, j));
                    if (v != 0 && (bi == R || v < best)) {
                        bi = i;
                        bj = j;
                        best = v;
                    }
                }
            if (bi == R) break;
            row_swap(D, t, bi);
            row_swap(U, t, bi);
            col_swap(D, t, bj);
            col_swap(V, t, bj);
            const mpz_class piv = zat(D, t, t);
            bool clean = true;
            for (size_t i = t + 1; i < R; ++i) {
                mpz_class v = zat(D, i, t);
                if (v == 0) continue;
                mpz_class q = fdiv(v, piv);
                row_addmul(D, i, t, -q);
                row_addmul(U, i, t, -q);
                if (zat(D, i, t) != 0) clean = false;
            }
            for (size_t j = t + 1; j < C; ++j) {
                mpz_class v = zat(D, t, j);
                if (v == 0) continue;
                mpz_class q = fdiv(v, piv);
                col_addmul(D, j, t, -q);
                col_addmul(V, j, t, -q);
                if (zat(D, t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility: fold an offending row into row t and retry.
            bool divisible = true;
            for (size_t i = t + 1; i < R && divisible; ++i)
                for (size_t j = t + 1; j < C; ++j) {
                    mpz_class v = zat(D, i, j);
                    if (v != 0 && v % piv != 0) {
                        row_addmul(D, t, i, 1);
                        row_addmul(U, t, i, 1);
                        divisible = false;
                        break;
                    }
                }
            if (divisible) break;
        }
        if (t < R && t < C && zat(D, t, t) < 0) {
            row_negate(D, t);
            row_negate(U, t);
        }
    }
    return {U, D, V};
}

std::vector<mpz_class> invariant_factors(const Matrix& m) {
    std::vector<mpz_class> out;
    if (m.empty()) return out;
    SmithForm s = smith_normal_form(as_z(m));
    for (size_t t = 0; t < std::min(m.rows(), m.cols()); ++t) {
        mpz_class v = zat(s.D, t, t);
        if (v != 0) out.push_back(v);
    }
    return out;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    check_same_ring(m, b, "solve");
    if (b.rows() != m.rows()) throw Error("DimensionMismatch", "solve: right-hand side has wrong row count");
    const Ring ring = m.ring();
    const size_t C = m.cols();
    if (ring.kind == RingKind::Z) {
        ColumnEchelon ce = column_echelon(m);
        const size_t k = ce.pivot_rows.size();
        Matrix Y(Ring::Z(), C, b.cols());
        for (size_t col = 0; col < b.cols(); ++col) {
            for (size_t j = 0; j < k; ++j) {
                const size_t r = ce.pivot_rows[j];
                mpz_class rhs = zat(b, r, col);
                for (size_t jj = 0; jj < j; ++jj) rhs -= zat(ce.E, r, jj) * zat(Y, jj, col);
                const mpz_class piv = zat(ce.E, r, j);
                if (rhs % piv != 0) return std::nullopt;
                Y.set(j, col, mpq_class(mpz_class(rhs / piv)));
            }
        }
        Matrix X = ce.U * Y;
        if (m * X != b) return std::nullopt;
        return X;
    }
    if (m.rows() == 0) return Matrix(ring, C, b.cols());
    Echelon e = rref(Matrix::hstack({m, b}));
    Matrix X(ring, C, b.cols());
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= C) return std::nullopt;
        for (size_t col = 0; col < b.cols(); ++col)
            if (!e.reduced.is_zero_at(r, C + col)) X.set(e.pivots[r], col, e.reduced.at(r, C + col));
    }
    return X;
}

Matrix column_span_sum(const std::vector<Matrix>& ms) {
    if (ms.empty()) throw Error("DimensionMismatch", "column_span_sum of nothing");
    for (const auto& m : ms) {
        if (m.ring() != ms[0].ring()) throw Error("DimensionMismatch", "column_span_sum: ring mismatch");
        if (m.rows() != ms[0].rows()) throw Error("DimensionMismatch", "column_span_sum: row counts differ");
    }
    const Ring ring = ms[0].ring();
    const size_t R = ms[0].rows();
    Matrix all = Matrix::hstack(ms);
    if (ring.kind == RingKind::Z) {
        ColumnEchelon ce = column_echelon(all);
        std::vector<size_t> idx;
        for (size_t j = 0; j < ce.pivot_rows.size(); ++j) idx.push_back(j);
        return ce.E.select_columns(idx);
    }
    if (all.cols() == 0) return Matrix(ring, R, 0);
    Echelon e = rref(all.transpose());
    return e.reduced.block(0, 0, e.pivots.size(), R).transpose();
}

bool is_saturated(const Matrix& sub, size_t ambient_rank) {
    if (sub.ring().kind != RingKind::Z) throw Error("WrongRing", "is_saturated requires Z");
    if (sub.rows() != ambient_rank) throw Error("DimensionMismatch", "is_saturated: ambient rank mismatch");
    for (const auto& f : invariant_factors(sub))
        if (f != 1) return false;
    return true;
}

bool spans_contain(const Matrix& span, const Matrix& sub) {
    if (sub.cols() == 0) return true;
    if (span.ring().is_field()) {
        if (span.cols() == 0) return sub.is_zero();
        return rank(Matrix::hstack({span, sub})) == rank(span);
    }
    if (span.cols() == 0) return sub.is_zero();
    return solve(span, sub).has_value();
}

mpz_class determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error("DimensionMismatch", "determinant of a non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    std::vector<mpz_class> a(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            mpq_class v = m.at(i, j);
            if (v.get_den() != 1) throw Error("DomainError", "determinant of a non-integral matrix");
            a[i * n + j] = v.get_num();
        }
    int sign = 1;
    mpz_class prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            size_t s = k + 1;
            while (s < n && a[s * n + k] == 0) ++s;
            if (s == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[s * n + j]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
        prev = a[k * n + k];
    }
    return sign * a[(n - 1) * n + (n - 1)];
}

long long binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace tropdual
