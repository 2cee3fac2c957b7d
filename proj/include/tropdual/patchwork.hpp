#pragma once

#include <map>
#include <vector>

#include "tropdual/triangulation.hpp"

namespace tropdual {

using SignMap = std::map<Point, int>;

// eps(x) = eps(|x|) * prod over negative x_i of (-1)^{x_i}.
int extended_sign(const SignMap& signs, const Point& x);

// Reflected copies of a triangulation of d * (standard simplex), glued along
// coordinate hyperplanes, with x identified with -x on the outer boundary
// sum |x_i| = d. Each simplex is stored by its canonical point set: the
// points of one copy, replaced by the lexicographically smaller of {S, -S}
// when every point lies on the outer boundary.
struct SymmetrizedComplex {
    int n = 0;
    int d = 0;
    size_t orthants = 0;
    std::vector<std::vector<Point>> simplices;  // sorted by (dimension, points)
    std::vector<int> dim;
    std::vector<bool> mixed;                    // carries both extended signs
    std::vector<std::vector<int>> facets;
    std::map<std::vector<Point>, int> index;
};

// Throws NotStandardSimplex unless T triangulates conv(0, d e_1, ..., d e_n),
// and MissingSign when a vertex of T has no sign.
SymmetrizedComplex symmetrize(const Triangulation& T, const SignMap& signs);

// Abstract simplicial complex: sorted vertex lists, closed under faces.
using SimplicialComplex = std::vector<std::vector<int>>;

// Barycentric subdivision restricted to chains of the chosen simplices:
// vertices are simplex ids, cells are chains under the face relation.
SimplicialComplex flag_complex(const SymmetrizedComplex& S, bool mixed_only);

// The piecewise-linear hypersurface: chains of sign-mixed simplices.
inline SimplicialComplex extract_hypersurface(const SymmetrizedComplex& S) { return flag_complex(S, true); }

std::vector<size_t> betti_f2(const SimplicialComplex& K);
long long euler_characteristic(const SimplicialComplex& K);
// Every codimension-one cell lies in exactly two top cells.
bool is_closed_pseudomanifold(const SimplicialComplex& K, int top_dim);

}  // namespace tropdual
