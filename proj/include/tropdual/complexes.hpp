#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropdual/cosheaf.hpp"

namespace tropdual {

// Plain chain complex: d[q] maps C_q to C_{q-1}, for q = 0 .. dims.size().
struct Complex {
    Ring ring;
    std::vector<size_t> dims;
    std::vector<Matrix> d;

    size_t dim(int q) const { return q < 0 || q >= static_cast<int>(dims.size()) ? 0 : dims[q]; }
};

struct HomologyResult {
    std::vector<size_t> ranks;
    std::vector<std::vector<mpz_class>> torsion;  // over Z only
};

HomologyResult homology(const Complex& cx);
// Cohomology of the dual cochain complex, delta^q = d_{q+1}^T.
HomologyResult cohomology(const Complex& cx);

// C_q(F_p) with its splitting C_q = sum over b - a = q of C_{a,b}. Blocks of
// one degree are contiguous and sorted by a.
class BigradedComplex {
public:
    static BigradedComplex build(const Cosheaf& F, int p);

    const Cosheaf& cosheaf() const { return *F_; }
    Ring ring() const { return F_->ring(); }
    int p() const { return p_; }
    int n() const { return n_; }

    size_t dim(int q) const;
    const std::vector<int>& cells(int q) const;
    size_t offset(int c) const { return offset_[c]; }

    // Total differential and its two parts, C_q -> C_{q-1}.
    Matrix d(int q) const;
    Matrix d1(int q) const;
    Matrix d2(int q) const;
    // Codifferentials C^q -> C^{q+1} in the dual bases.
    Matrix delta(int q) const { return d(q + 1).transpose(); }
    Matrix delta1(int q) const { return d1(q + 1).transpose(); }
    Matrix delta2(int q) const { return d2(q + 1).transpose(); }

    // Position of C_{a,b} inside C_{b-a}.
    std::pair<size_t, size_t> block_range(int a, int b) const;
    size_t block_dim(int a, int b) const { return block_range(a, b).second; }
    // d1: C_{a,b} -> C_{a+1,b};  d2: C_{a,b} -> C_{a,b-1}.
    Matrix d1_block(int a, int b) const;
    Matrix d2_block(int a, int b) const;

    Complex total() const;

private:
    const Cosheaf* F_ = nullptr;
    int p_ = 0;
    int n_ = 0;
    std::vector<std::vector<int>> cells_;  // by degree
    std::vector<size_t> offset_;           // by cell
    std::vector<size_t> dims_;
    std::vector<Matrix> d1_, d2_;          // by degree q = 0..n
    std::map<std::pair<int, int>, std::pair<size_t, size_t>> ranges_;
};

// Results of the three identities d1 d1 = 0, d2 d2 = 0, d1 d2 + d2 d1 = 0.
struct SquareCheck {
    bool d1d1 = true;
    bool d2d2 = true;
    bool anticommute = true;
    bool ok() const { return d1d1 && d2d2 && anticommute; }
};

SquareCheck check_squares(const BigradedComplex& cx);

// C_{b-a}(F_p(*, sigma^b)) with the first-component differential.
Complex local_column_complex(const Cosheaf& F, int sigma_b, int p);
// C_{b-a}(F_p(sigma^a, *)) with the second-component differential; its
// cohomology is the local row cohomology.
Complex local_row_complex(const Cosheaf& F, int sigma_a, int p);

enum class Direction { D1, D2, Delta1, Delta2 };

std::string direction_name(Direction d);

struct SpectralPage {
    Direction direction = Direction::D1;
    int r = 0;
    std::map<std::pair<int, int>, size_t> ranks;  // (a, b) -> rank, nonzero only
};

// Pages E^0 .. E^up_to (up_to <= 2) of the filtration whose first
// differential is the given one. Fields only.
std::vector<SpectralPage> spectral_pages(const BigradedComplex& cx, Direction dir, int up_to = 2);

}  // namespace tropdual
