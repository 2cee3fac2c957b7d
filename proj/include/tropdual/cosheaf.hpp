#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "tropdual/cubical.hpp"

namespace tropdual {

// Sorted k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);

// p-th exterior power of an integral matrix in lexicographic monomial bases:
// entry [I, J] is the minor on rows I and columns J.
Matrix wedge_power(const Matrix& m, int p);

// Multi-tangent cosheaf F_p over a ring, with modules stored as column bases
// inside the dual frame of the minimal face F_tau of each cell.
class Cosheaf {
public:
    Cosheaf(const Omega& W, Ring ring);

    const Omega& omega() const { return *W_; }
    const Triangulation& triangulation() const { return W_->triangulation(); }
    Ring ring() const { return ring_; }
    int n() const { return triangulation().n(); }

    // Saturated Z-basis of the tangent lattice of a polytope face (n x dim F).
    const Matrix& frame(int face) const;
    int frame_dim(int face) const;
    // Face of P carrying the frame of cell c.
    int cell_face(int c) const;
    size_t ambient_rank(int c, int p) const;

    // Z-basis of the annihilator of an edge inside the dual frame of a face.
    Matrix edge_annihilator(int edge, int face) const;

    // Column basis of F_p(sigma, tau) in ambient coordinates. Over Z the
    // basis is in column Hermite form.
    const Matrix& module(int c, int p) const;
    size_t rank(int c, int p) const { return module(c, p).cols(); }

    // Restriction of p-covectors from the frame of `big` to that of `small`.
    Matrix restriction(int big, int small, int p) const;

    // Inclusion F_p(sigma, tau) -> F_p(gamma, tau) for sigma in gamma.
    Matrix iota(int from, int to, int p) const;
    // Projection F_p(sigma, tau) -> F_p(sigma, eps) for eps in tau.
    Matrix pi(int from, int to, int p) const;
    // Composite iota then pi from (sigma, tau) to (gamma, eps).
    Matrix map(int from, int to, int p) const;

    // Surjection from the p-vectors of the frame onto F^p(sigma, tau), in the
    // dual basis of module(c, p).
    Matrix sheaf_surjection(int c, int p) const { return module(c, p).transpose(); }

private:
    const Omega* W_;
    Ring ring_;
    mutable std::map<int, Matrix> frames_;
    mutable std::map<std::pair<int, int>, Matrix> modules_;
};

// Ranks of Hom_R(F_p^R, R) and Hom_Z(F_p^Z, R) for one cell.
struct HomRankComparison {
    int cell = -1;
    int p = 0;
    size_t rank_ring = 0;
    size_t rank_integral = 0;
};

// Cells where the module over `ring` and the integral module tensored with
// `ring` have different ranks.
std::vector<HomRankComparison> hom_rank_disagreements(const Omega& W, Ring ring, int p);

}  // namespace tropdual
