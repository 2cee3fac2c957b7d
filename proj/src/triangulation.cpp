#include "tropdual/triangulation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace tropdual {

namespace {

int sign_of(const mpz_class& z) { return sgn(z) > 0 ? 1 : (sgn(z) < 0 ? -1 : 0); }

mpz_class oriented_det(const std::vector<Point>& base, const Point& extra) {
    const size_t n = extra.size();
    Matrix D(Ring::Z(), n, n);
    for (size_t k = 1; k < base.size(); ++k)
        for (size_t i = 0; i < n; ++i) D.set(i, k - 1, base[k][i] - base[0][i]);
    for (size_t i = 0; i < n; ++i) D.set(i, n - 1, extra[i] - base[0][i]);
    return determinant(D);
}

}  // namespace

Triangulation Triangulation::build(const Polytope& P, const std::vector<std::vector<Point>>& tops, bool strict) {
    Triangulation T;
    T.polytope_ = P;
    const int n = P.n();
    std::set<Point> pts;
    for (const auto& t : tops) {
        if (static_cast<int>(t.size()) != n + 1)
            throw Error("DimensionError", "top simplex must have n+1 vertices");
        for (const auto& x : t) {
            if (static_cast<int>(x.size()) != n) throw Error("DimensionError", "vertex of wrong dimension");
            if (!P.contains(x)) throw Error("NotATriangulation", "vertex outside the polytope");
            pts.insert(x);
        }
        if (affine_dimension(t) != n) throw Error("DimensionError", "degenerate top simplex");
    }
    T.points_.assign(pts.begin(), pts.end());
    std::map<Point, int> pid;
    for (size_t i = 0; i < T.points_.size(); ++i) pid[T.points_[i]] = static_cast<int>(i);

    std::set<std::vector<int>> keys;
    for (const auto& t : tops) {
        std::vector<int> vs;
        for (const auto& x : t) vs.push_back(pid[x]);
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            throw Error("DimensionError", "repeated vertex in top simplex");
        const int m = static_cast<int>(vs.size());
        for (int mask = 1; mask < (1 << m); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < m; ++i)
                if (mask & (1 << i)) sub.push_back(vs[i]);
            keys.insert(sub);
        }
    }
    std::vector<std::vector<int>> ordered(keys.begin(), keys.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    T.by_dim_.assign(n + 1, {});
    for (size_t s = 0; s < ordered.size(); ++s) {
        SimplexData d;
        d.verts = ordered[s];
        d.dim = static_cast<int>(d.verts.size()) - 1;
        T.index_[d.verts] = static_cast<int>(s);
        T.by_dim_[d.dim].push_back(static_cast<int>(s));
        T.simplices_.push_back(d);
    }
    for (size_t s = 0; s < T.simplices_.size(); ++s) {
        SimplexData& d = T.simplices_[s];
        if (d.dim >= 1) {
            for (int i = 0; i <= d.dim; ++i) {
                std::vector<int> f = d.verts;
                f.erase(f.begin() + i);
                int fid = T.index_.at(f);
                d.facets.push_back(fid);
                d.facet_rho.push_back(i % 2 == 0 ? 1 : -1);
                T.simplices_[fid].cofacets.push_back(static_cast<int>(s));
            }
        }
        d.face = P.minimal_face(T.simplex_points(static_cast<int>(s)));
    }
    long long g = 0;
    for (int e : T.by_dim_[1]) g = std::gcd(g, T.edge_length(e));
    T.gamma_index_ = g;

    if (strict) {
        // Pseudomanifold with boundary on the facets of P, coherent sides, and
        // total volume equal to that of P.
        for (int f : T.by_dim_[n - 1]) {
            const auto& cof = T.simplices_[f].cofacets;
            const bool on_boundary = P.faces()[T.simplices_[f].face].dim == n - 1;
            if (on_boundary && cof.size() != 1)
                throw Error("NotATriangulation", "boundary facet with " + std::to_string(cof.size()) + " cofaces");
            if (!on_boundary && cof.size() != 2)
                throw Error("NotATriangulation", "interior facet with " + std::to_string(cof.size()) + " cofaces");
            if (cof.size() == 2) {
                auto base = T.simplex_points(f);
                int sides[2];
                for (int k = 0; k < 2; ++k) {
                    const auto& tv = T.simplices_[cof[k]].verts;
                    int extra = -1;
                    for (int v : tv)
                        if (!std::binary_search(T.simplices_[f].verts.begin(), T.simplices_[f].verts.end(), v))
                            extra = v;
                    sides[k] = sign_of(oriented_det(base, T.points_[extra]));
                }
                if (sides[0] == sides[1]) throw Error("NotATriangulation", "overlapping top simplices");
            }
        }
        mpz_class vol = 0;
        for (int t : T.by_dim_[n]) {
            auto tp = T.simplex_points(t);
            std::vector<Point> base(tp.begin(), tp.end() - 1);
            vol += abs(oriented_det(base, tp.back()));
        }
        if (vol != P.normalized_volume()) throw Error("NotATriangulation", "top simplices do not cover P exactly once");
    }
    return T;
}

int Triangulation::find(const std::vector<int>& verts) const {
    auto it = index_.find(verts);
    return it == index_.end() ? -1 : it->second;
}

int Triangulation::find_points(std::vector<Point> pts) const {
    std::vector<int> vs;
    for (const auto& x : pts) {
        auto it = std::lower_bound(points_.begin(), points_.end(), x);
        if (it == points_.end() || *it != x) return -1;
        vs.push_back(static_cast<int>(it - points_.begin()));
    }
    std::sort(vs.begin(), vs.end());
    return find(vs);
}

std::vector<Point> Triangulation::simplex_points(int s) const {
    std::vector<Point> out;
    for (int v : simplices_[s].verts) out.push_back(points_[v]);
    return out;
}

int Triangulation::rho(int facet, int s) const {
    const auto& d = simplices_[s];
    for (size_t k = 0; k < d.facets.size(); ++k)
        if (d.facets[k] == facet) return d.facet_rho[k];
    throw Error("NotComparable", "not a facet");
}

void Triangulation::flip_rho(int facet, int s) {
    auto& d = simplices_[s];
    for (size_t k = 0; k < d.facets.size(); ++k)
        if (d.facets[k] == facet) d.facet_rho[k] = -d.facet_rho[k];
}

bool Triangulation::is_face(int small, int big) const {
    const auto& a = simplices_[small].verts;
    const auto& b = simplices_[big].verts;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> Triangulation::faces_of(int s, int d) const {
    std::vector<int> out;
    const auto& vs = simplices_[s].verts;
    const int m = static_cast<int>(vs.size());
    if (d < 0 || d + 1 > m) return out;
    std::vector<int> c(d + 1);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        std::vector<int> sub;
        for (int i : c) sub.push_back(vs[i]);
        out.push_back(index_.at(sub));
        int i = d;
        while (i >= 0 && c[i] == m - (d + 1) + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j <= d; ++j) c[j] = c[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Triangulation::cofaces_of(int s, int d) const {
    std::vector<int> out;
    if (d < 0 || d > n()) return out;
    for (int t : by_dim_[d])
        if (is_face(s, t)) out.push_back(t);
    return out;
}

long long Triangulation::edge_length(int e) const {
    const auto& v = simplices_[e].verts;
    if (v.size() != 2) throw Error("DimensionError", "not an edge");
    return integral_length(points_[v[0]], points_[v[1]]);
}

long long Triangulation::index() const { return gamma_index_; }

bool is_R_primitive_simplex(const std::vector<Point>& simplex, Ring ring) {
    return ring.is_unit(normalized_volume_numerator(simplex));
}

bool is_R_primitive_simplex(const Triangulation& T, int s, Ring ring) {
    return is_R_primitive_simplex(T.simplex_points(s), ring);
}

bool k_primitivity(const Triangulation& T, int k, Ring ring) {
    if (k < 1 || k > T.n()) throw Error("DimensionError", "k out of range");
    for (int s : T.of_dim(k))
        if (!is_R_primitive_simplex(T, s, ring)) return false;
    return true;
}

bool simplex_k_primitive(const Triangulation& T, int s, int k, Ring ring) {
    for (int f : T.faces_of(s, k))
        if (!is_R_primitive_simplex(T, f, ring)) return false;
    return true;
}

int primitivity_level(const Triangulation& T, Ring ring) {
    for (int k = T.n(); k >= 1; --k)
        if (k_primitivity(T, k, ring)) return k;
    return 0;
}

Hypotheses hypotheses(const Triangulation& T, Ring ring) {
    Hypotheses h{true, true};
    for (int e : T.of_dim(1)) {
        mpz_class r = to_mpz(T.reduced_length(e));
        if (ring.is_zero(r)) h.hyp1 = false;
        if (!ring.is_unit(r)) h.hyp2 = false;
    }
    return h;
}

bool is_R_nonsingular_global(const Polytope& P, Ring ring) {
    if (!P.is_simple()) return false;
    const int n = P.n();
    for (size_t v = 0; v < P.vertices().size(); ++v) {
        Matrix E(Ring::Z(), n, n);
        int col = 0;
        for (int e : P.edges_at_vertex(static_cast<int>(v))) {
            const auto& ev = P.faces()[e].vertices;
            int other = ev[0] == static_cast<int>(v) ? ev[1] : ev[0];
            Point u = primitive_direction(P.vertices()[v], P.vertices()[other]);
            for (int i = 0; i < n; ++i) E.set(i, col, u[i]);
            ++col;
        }
        if (!ring.is_unit(determinant(E))) return false;
    }
    return true;
}

namespace {

// Integer vector of T_Z G whose class generates T_Z G / T_Z F (dim G = dim F + 1).
Matrix complement_generator(const Polytope& P, int F, int G) {
    const int n = P.n();
    Matrix BF = tangent_lattice(P.face_points(F), n);
    Matrix BG = tangent_lattice(P.face_points(G), n);
    const size_t g = BG.cols();
    Matrix y(Ring::Z(), g, 1);
    if (BF.cols() == 0) {
        // F is a vertex: the primitive edge direction.
        y.set(0, 0, 1LL);
        return BG * y;
    }
    auto C = solve(BG, BF);  // g x f
    if (!C) throw Error("ConstructionMismatch", "face lattice not nested");
    Matrix w = kernel_basis(C->transpose());  // g x 1, primitive
    if (w.cols() != 1) throw Error("ConstructionMismatch", "quotient rank is not one");
    // Find y with w . y = 1.
    auto sol = solve(w.transpose(), Matrix::identity(Ring::Z(), 1));
    if (!sol) throw Error("ConstructionMismatch", "annihilator is not primitive");
    return BG * (*sol);
}

}  // namespace

bool is_R_nonsingular_local(const Polytope& P, int face, Ring ring) {
    const int n = P.n();
    const int fd = P.faces()[face].dim;
    if (fd == n) return true;
    std::vector<int> up;
    for (int g : P.cofaces(face))
        if (P.faces()[g].dim == fd + 1) up.push_back(g);
    if (static_cast<int>(up.size()) > n - fd) return false;
    std::vector<Matrix> gens;
    for (int g : up) gens.push_back(complement_generator(P, face, g));
    Matrix BF = tangent_lattice(P.face_points(face), n);
    for (int G : P.cofaces(face)) {
        const int gd = P.faces()[G].dim;
        std::vector<Matrix> cols;
        if (BF.cols()) cols.push_back(BF);
        size_t used = 0;
        for (size_t k = 0; k < up.size(); ++k)
            if (P.face_contains(G, up[k])) {
                cols.push_back(gens[k]);
                ++used;
            }
        if (static_cast<int>(BF.cols() + used) != gd) return false;
        if (gd == 0) continue;
        Matrix fam = Matrix::hstack(cols);
        Matrix BG = tangent_lattice(P.face_points(G), n);
        auto X = solve(BG, fam);
        if (!X) throw Error("ConstructionMismatch", "family outside the tangent lattice");
        if (!ring.is_unit(determinant(*X))) return false;
    }
    return true;
}

std::vector<int> dual_path(const Triangulation& T, int from, int to) {
    const int n = T.n();
    if (T.simplex(from).dim != n || T.simplex(to).dim != n)
        throw Error("DimensionError", "dual_path expects top simplices");
    std::map<int, int> parent;
    std::deque<int> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        if (s == to) break;
        for (int f : T.simplex(s).facets)
            for (int t : T.simplex(f).cofacets)
                if (!parent.count(t)) {
                    parent[t] = s;
                    queue.push_back(t);
                }
    }
    if (!parent.count(to)) throw Error("Disconnected", "no dual path between top simplices");
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

DiamondAudit rho_diamond_audit(const Triangulation& T) {
    DiamondAudit a;
    for (size_t g = 0; g < T.simplices().size(); ++g) {
        const auto& G = T.simplex(static_cast<int>(g));
        if (G.dim < 2) continue;
        for (int w : T.faces_of(static_cast<int>(g), G.dim - 2)) {
            std::vector<int> mids;
            for (int e : G.facets)
                if (T.is_face(w, e)) mids.push_back(e);
            ++a.intervals;
            if (mids.size() != 2) {
                ++a.violations;
                continue;
            }
            int prod = T.rho(w, mids[0]) * T.rho(mids[0], static_cast<int>(g)) * T.rho(w, mids[1]) *
                       T.rho(mids[1], static_cast<int>(g));
            if (prod != -1) ++a.violations;
        }
    }
    return a;
}

size_t edge_span_rank(const Triangulation& T, int s, Ring ring) {
    std::vector<Point> dirs;
    for (int e : T.faces_of(s, 1)) {
        const auto& v = T.simplex(e).verts;
        dirs.push_back(primitive_direction(T.points()[v[0]], T.points()[v[1]]));
    }
    if (dirs.empty()) return 0;
    return rank(points_to_columns(dirs, ring));
}

bool triangle_edges_independent(const Triangulation& T, Ring ring) {
    for (int t : T.of_dim(2)) {
        const auto edges = T.faces_of(t, 1);
        for (size_t i = 0; i < edges.size(); ++i)
            for (size_t j = i + 1; j < edges.size(); ++j) {
                std::vector<Point> dirs;
                for (int e : {edges[i], edges[j]}) {
                    const auto& v = T.simplex(e).verts;
                    dirs.push_back(primitive_direction(T.points()[v[0]], T.points()[v[1]]));
                }
                if (rank(points_to_columns(dirs, ring)) < 2) return false;
            }
    }
    return true;
}

}  // namespace tropdual
