#pragma once

#include <map>
#include <vector>

#include "tropdual/lattice.hpp"

namespace tropdual {

struct SimplexData {
    std::vector<int> verts;         // sorted indices into Triangulation::points()
    int dim = 0;
    std::vector<int> facets;        // codimension-1 faces
    std::vector<int> facet_rho;     // rho(facet, this)
    std::vector<int> cofacets;      // simplices having this one as a facet
    int face = -1;                  // minimal face of the polytope
};

class Triangulation {
public:
    // Closes the top simplices under faces. Vertices are ordered
    // lexicographically; rho(s, t) = (-1)^i where t adds the vertex at sorted
    // position i. Strict mode validates that the tops triangulate P.
    static Triangulation build(const Polytope& P, const std::vector<std::vector<Point>>& tops,
                               bool strict = false);

    const Polytope& polytope() const { return polytope_; }
    int n() const { return polytope_.n(); }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<SimplexData>& simplices() const { return simplices_; }
    const SimplexData& simplex(int s) const { return simplices_[s]; }
    const std::vector<int>& of_dim(int d) const { return by_dim_[d]; }
    int find(const std::vector<int>& verts) const;
    int find_points(std::vector<Point> pts) const;
    std::vector<Point> simplex_points(int s) const;

    // rho(facet, s); throws if not a facet.
    int rho(int facet, int s) const;
    bool is_face(int small, int big) const;
    // All faces of s of dimension d (including s itself when d == dim s).
    std::vector<int> faces_of(int s, int d) const;
    // All simplices containing s of dimension d.
    std::vector<int> cofaces_of(int s, int d) const;

    long long edge_length(int e) const;
    long long index() const;  // gcd of all edge lengths
    long long reduced_length(int e) const { return edge_length(e) / index(); }

    // Test hook: overrides one rho value (used to inject sign faults).
    void flip_rho(int facet, int s);

private:
    Polytope polytope_;
    std::vector<Point> points_;
    std::vector<SimplexData> simplices_;
    std::vector<std::vector<int>> by_dim_;
    std::map<std::vector<int>, int> index_;
    long long gamma_index_ = 0;
};

bool is_R_primitive_simplex(const std::vector<Point>& simplex, Ring ring);
bool is_R_primitive_simplex(const Triangulation& T, int s, Ring ring);

// Every k-simplex of T is R-primitive.
bool k_primitivity(const Triangulation& T, int k, Ring ring);
// Every k-face of the simplex s is R-primitive.
bool simplex_k_primitive(const Triangulation& T, int s, int k, Ring ring);
// Largest k in [1, n] with T (k,R)-primitive, or 0 when none holds.
int primitivity_level(const Triangulation& T, Ring ring);

struct Hypotheses {
    bool hyp1 = false;
    bool hyp2 = false;
};

Hypotheses hypotheses(const Triangulation& T, Ring ring);

bool is_R_nonsingular_global(const Polytope& P, Ring ring);
bool is_R_nonsingular_local(const Polytope& P, int face, Ring ring);

// Breadth-first path of top simplices through shared facets.
std::vector<int> dual_path(const Triangulation& T, int from, int to);

struct DiamondAudit {
    size_t intervals = 0;
    size_t violations = 0;
};

// Checks rho(w,e1)rho(e1,g)rho(w,e2)rho(e2,g) = -1 on every diamond of T.
DiamondAudit rho_diamond_audit(const Triangulation& T);

// Rank over R of the primitive edge directions of a simplex.
size_t edge_span_rank(const Triangulation& T, int s, Ring ring);

// No two edges of a triangle have parallel primitive directions over R.
// Together with Hypothesis 1 this makes top-degree cycles multiples of the
// fundamental chain; Hypothesis 1 alone does not.
bool triangle_edges_independent(const Triangulation& T, Ring ring);

}  // namespace tropdual
