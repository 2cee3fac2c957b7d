#include "tropdual/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tropdual {

namespace {

void next_combination_init(std::vector<int>& c, int k) {
    c.resize(k);
    std::iota(c.begin(), c.end(), 0);
}

bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

Matrix difference_columns(const std::vector<Point>& pts, size_t n) {
    Matrix D(Ring::Z(), n, pts.empty() ? 0 : pts.size() - 1);
    for (size_t k = 1; k < pts.size(); ++k)
        for (size_t i = 0; i < n; ++i) D.set(i, k - 1, pts[k][i] - pts[0][i]);
    return D;
}

long long dot(const std::vector<long long>& a, const Point& x) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

}  // namespace

int affine_dimension(const std::vector<Point>& pts) {
    if (pts.empty()) return -1;
    if (pts.size() == 1) return 0;
    return static_cast<int>(rank(difference_columns(pts, pts[0].size())));
}

Polytope Polytope::from_vertices(std::vector<Point> vertices) {
    Polytope P;
    if (vertices.empty()) throw Error("NotFullDimensional", "no points");
    const int n = static_cast<int>(vertices[0].size());
    if (n < 1) throw Error("DimensionError", "zero ambient dimension");
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != n) throw Error("DimensionError", "mixed point dimensions");
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw Error("RedundantPoint", "duplicate vertex");
    if (affine_dimension(vertices) < n)
        throw Error("NotFullDimensional", "affine span has dimension below " + std::to_string(n));
    P.n_ = n;
    P.vertices_ = vertices;
    const int V = static_cast<int>(vertices.size());

    // Facets from affinely independent n-subsets.
    std::set<std::vector<int>> seen;
    std::vector<int> c;
    next_combination_init(c, n);
    do {
        std::vector<Point> sub;
        for (int i : c) sub.push_back(vertices[i]);
        Matrix D = difference_columns(sub, n);
        Matrix normal = kernel_basis(D.transpose());
        if (normal.cols() != 1) continue;
        std::vector<long long> a(n);
        for (int i = 0; i < n; ++i) a[i] = normal.at(i, 0).get_num().get_si();
        const long long c0 = dot(a, sub[0]);
        int pos = 0, neg = 0;
        std::vector<int> on;
        for (int v = 0; v < V; ++v) {
            long long s = dot(a, vertices[v]) - c0;
            if (s > 0) ++pos;
            if (s < 0) ++neg;
            if (s == 0) on.push_back(v);
        }
        if (pos && neg) continue;
        if (!seen.insert(on).second) continue;
        if (pos) {
            for (auto& x : a) x = -x;
        }
        P.halfspaces_.push_back({a, dot(a, sub[0])});
        Face f;
        f.vertices = on;
        f.dim = n - 1;
        P.faces_.push_back(f);
    } while (next_combination(c, V));

    // Close under intersection.
    std::set<std::vector<int>> all(seen.begin(), seen.end());
    std::vector<std::vector<int>> frontier(seen.begin(), seen.end());
    std::vector<std::vector<int>> facet_sets;
    for (const auto& f : P.faces_) facet_sets.push_back(f.vertices);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& f : frontier)
            for (const auto& g : facet_sets) {
                std::vector<int> inter;
                std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(inter));
                if (inter.empty()) continue;
                if (all.insert(inter).second) next.push_back(inter);
            }
        frontier.swap(next);
    }
    std::vector<int> everything(V);
    std::iota(everything.begin(), everything.end(), 0);
    all.insert(everything);

    std::vector<Face> faces;
    for (const auto& vs : all) {
        Face f;
        f.vertices = vs;
        std::vector<Point> pts;
        for (int i : vs) pts.push_back(vertices[i]);
        f.dim = affine_dimension(pts);
        faces.push_back(f);
    }
    std::sort(faces.begin(), faces.end(), [](const Face& x, const Face& y) {
        return x.dim != y.dim ? x.dim < y.dim : x.vertices < y.vertices;
    });
    for (int v = 0; v < V; ++v) {
        bool found = false;
        for (const auto& f : faces)
            if (f.dim == 0 && f.vertices == std::vector<int>{v}) found = true;
        if (!found) throw Error("RedundantPoint", "point is not a vertex of its convex hull");
    }
    // Facet incidences.
    std::vector<int> facet_face(facet_sets.size());
    for (size_t k = 0; k < faces.size(); ++k) {
        for (size_t h = 0; h < facet_sets.size(); ++h) {
            const auto& fs = facet_sets[h];
            if (std::includes(fs.begin(), fs.end(), faces[k].vertices.begin(), faces[k].vertices.end()) &&
                faces[k].dim < n)
                faces[k].facets.push_back(static_cast<int>(h));
            if (faces[k].vertices == fs) facet_face[h] = static_cast<int>(k);
        }
    }
    P.faces_ = faces;
    P.facet_faces_ = facet_face;
    for (size_t k = 0; k < faces.size(); ++k) P.face_index_[faces[k].vertices] = static_cast<int>(k);
    P.top_ = static_cast<int>(faces.size()) - 1;
    return P;
}

bool Polytope::contains(const Point& x) const {
    if (static_cast<int>(x.size()) != n_) return false;
    for (const auto& h : halfspaces_)
        if (dot(h.a, x) > h.c) return false;
    return true;
}

int Polytope::minimal_face(const std::vector<Point>& pts) const {
    for (const auto& x : pts)
        if (!contains(x)) throw Error("NotContained", "point outside the polytope");
    std::vector<int> verts(vertices_.size());
    std::iota(verts.begin(), verts.end(), 0);
    for (size_t h = 0; h < halfspaces_.size(); ++h) {
        bool all_on = true;
        for (const auto& x : pts)
            if (dot(halfspaces_[h].a, x) != halfspaces_[h].c) all_on = false;
        if (!all_on) continue;
        const auto& fs = faces_[facet_faces_[h]].vertices;
        std::vector<int> inter;
        std::set_intersection(verts.begin(), verts.end(), fs.begin(), fs.end(), std::back_inserter(inter));
        verts.swap(inter);
    }
    auto it = face_index_.find(verts);
    if (it == face_index_.end()) throw Error("NotContained", "no face found");
    return it->second;
}

bool Polytope::face_contains(int big, int small) const {
    const auto& b = faces_[big].vertices;
    const auto& s = faces_[small].vertices;
    return std::includes(b.begin(), b.end(), s.begin(), s.end());
}

std::vector<int> Polytope::cofaces(int f) const {
    std::vector<int> out;
    for (size_t g = 0; g < faces_.size(); ++g)
        if (face_contains(static_cast<int>(g), f)) out.push_back(static_cast<int>(g));
    return out;
}

std::vector<int> Polytope::edges_at_vertex(int v) const {
    std::vector<int> out;
    for (size_t g = 0; g < faces_.size(); ++g)
        if (faces_[g].dim == 1 &&
            std::binary_search(faces_[g].vertices.begin(), faces_[g].vertices.end(), v))
            out.push_back(static_cast<int>(g));
    return out;
}

bool Polytope::is_simple() const {
    for (size_t v = 0; v < vertices_.size(); ++v)
        if (static_cast<int>(edges_at_vertex(static_cast<int>(v)).size()) != n_) return false;
    return true;
}

int Polytope::face_of_vertices(const std::vector<int>& verts) const {
    auto it = face_index_.find(verts);
    return it == face_index_.end() ? -1 : it->second;
}

std::vector<Point> Polytope::face_points(int f) const {
    std::vector<Point> pts;
    for (int i : faces_[f].vertices) pts.push_back(vertices_[i]);
    return pts;
}

std::vector<Point> Polytope::lattice_points() const {
    Point lo = vertices_[0], hi = vertices_[0];
    for (const auto& v : vertices_)
        for (int i = 0; i < n_; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<Point> out;
    Point x = lo;
    while (true) {
        if (contains(x)) out.push_back(x);
        int i = n_ - 1;
        while (i >= 0 && x[i] == hi[i]) {
            x[i] = lo[i];
            --i;
        }
        if (i < 0) break;
        ++x[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

void Polytope::pulling(int f, std::vector<std::vector<int>>& out) const {
    const Face& F = faces_[f];
    if (F.dim == 0) {
        out.push_back({F.vertices[0]});
        return;
    }
    const int apex = F.vertices[0];
    for (size_t g = 0; g < faces_.size(); ++g) {
        const Face& G = faces_[g];
        if (G.dim != F.dim - 1 || !face_contains(f, static_cast<int>(g))) continue;
        if (std::binary_search(G.vertices.begin(), G.vertices.end(), apex)) continue;
        std::vector<std::vector<int>> sub;
        pulling(static_cast<int>(g), sub);
        for (auto& s : sub) {
            s.push_back(apex);
            out.push_back(s);
        }
    }
}

mpz_class Polytope::normalized_volume() const {
    std::vector<std::vector<int>> simplices;
    pulling(top_, simplices);
    mpz_class total = 0;
    for (const auto& s : simplices) {
        std::vector<Point> pts;
        for (int i : s) pts.push_back(vertices_[i]);
        total += abs(determinant(difference_columns(pts, n_)));
    }
    return total;
}

long long integral_length(const Point& a, const Point& b) {
    long long g = 0;
    for (size_t i = 0; i < a.size(); ++i) g = std::gcd(g, b[i] - a[i]);
    if (g == 0) throw Error("DegenerateEdge", "edge endpoints coincide");
    return std::abs(g);
}

long long simplex_index(const std::vector<Point>& s) {
    if (s.size() < 2) throw Error("ZeroDimensional", "index of a point");
    long long g = 0;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) g = std::gcd(g, integral_length(s[i], s[j]));
    return g;
}

Matrix tangent_lattice(const std::vector<Point>& pts, int n) {
    if (pts.empty()) throw Error("DimensionError", "empty point set");
    Matrix D = difference_columns(pts, n);
    const size_t r = rank(D);
    if (r == static_cast<size_t>(n)) return Matrix::identity(Ring::Z(), n);
    if (r == 0) return Matrix(Ring::Z(), n, 0);
    Matrix ann = kernel_basis(D.transpose());       // n x (n - r)
    Matrix sat = kernel_basis(ann.transpose());     // n x r, saturated
    return sat;
}

mpz_class normalized_volume_numerator(const std::vector<Point>& s) {
    if (s.size() < 2) throw Error("ZeroDimensional", "volume of a point");
    const int n = static_cast<int>(s[0].size());
    const long long k = static_cast<long long>(s.size()) - 1;
    Matrix B = tangent_lattice(s, n);
    if (B.cols() != static_cast<size_t>(k)) throw Error("DimensionError", "vertices are affinely dependent");
    Matrix D = difference_columns(s, n);
    auto X = solve(B, D);
    if (!X) throw Error("ConstructionMismatch", "difference vectors outside the tangent lattice");
    mpz_class det = abs(determinant(*X));
    mpz_class idx = to_mpz(simplex_index(s));
    mpz_class denom = 1;
    for (long long i = 0; i < k; ++i) denom *= idx;
    return det / denom;
}

Point primitive_direction(const Point& a, const Point& b) {
    long long g = integral_length(a, b);
    Point u(a.size());
    for (size_t i = 0; i < a.size(); ++i) u[i] = (b[i] - a[i]) / g;
    return u;
}

Matrix points_to_columns(const std::vector<Point>& vs, Ring ring) {
    const size_t n = vs.empty() ? 0 : vs[0].size();
    Matrix m(ring, n, vs.size());
    for (size_t j = 0; j < vs.size(); ++j)
        for (size_t i = 0; i < n; ++i) m.set(i, j, vs[j][i]);
    return m;
}

}  // namespace tropdual
