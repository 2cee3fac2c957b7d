#pragma once

#include <map>
#include <vector>

#include "tropdual/exactalg.hpp"

namespace tropdual {

using Point = std::vector<long long>;

struct Face {
    std::vector<int> vertices;  // indices into Polytope::vertices, sorted
    int dim = 0;
    std::vector<int> facets;    // facets containing this face (empty for the top face)
};

// Supporting half-space a.x <= c.
struct Halfspace {
    std::vector<long long> a;
    long long c = 0;
};

class Polytope {
public:
    // Face lattice by supporting-hyperplane enumeration. Rejects duplicate and
    // non-extreme points.
    static Polytope from_vertices(std::vector<Point> vertices);

    int n() const { return n_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Halfspace>& facet_inequalities() const { return halfspaces_; }
    const std::vector<int>& facet_faces() const { return facet_faces_; }
    int top() const { return top_; }

    bool contains(const Point& x) const;
    // Index of the inclusion-minimal face containing all points.
    int minimal_face(const std::vector<Point>& pts) const;
    // Faces containing face f (including f and the top face).
    std::vector<int> cofaces(int f) const;
    bool face_contains(int big, int small) const;
    std::vector<int> edges_at_vertex(int v) const;  // edge faces through vertex index v
    bool is_simple() const;
    int face_of_vertices(const std::vector<int>& verts) const;  // -1 if none
    std::vector<Point> face_points(int f) const;
    // Lattice points of P (bounding-box scan).
    std::vector<Point> lattice_points() const;
    // n! * volume, via the pulling triangulation of the face lattice.
    mpz_class normalized_volume() const;

private:
    int n_ = 0;
    std::vector<Point> vertices_;
    std::vector<Face> faces_;
    std::vector<Halfspace> halfspaces_;
    std::vector<int> facet_faces_;  // face index of each facet (same order as halfspaces_)
    std::map<std::vector<int>, int> face_index_;
    int top_ = -1;

    void pulling(int f, std::vector<std::vector<int>>& out) const;
};

// gcd of the coordinates of b - a.
long long integral_length(const Point& a, const Point& b);

// gcd of edge lengths of a simplex given by its vertices.
long long simplex_index(const std::vector<Point>& simplex);

// Saturated Z-basis (columns, column Hermite form) of the tangent lattice of
// the affine span of the points. Identity for full-dimensional spans.
Matrix tangent_lattice(const std::vector<Point>& pts, int n);

// Affine dimension of the span of the points.
int affine_dimension(const std::vector<Point>& pts);

// m such that the lattice volume of the simplex is m |s|^k / k!.
mpz_class normalized_volume_numerator(const std::vector<Point>& simplex);

// Primitive direction of the segment a -> b.
Point primitive_direction(const Point& a, const Point& b);

Matrix points_to_columns(const std::vector<Point>& vs, Ring ring);

}  // namespace tropdual
