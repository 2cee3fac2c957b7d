#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tropdual/cli.hpp"

namespace testsupport {

using tropdual::Point;

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

inline tropdual::Fixture fixture(const std::string& name) { return tropdual::load_fixture(fixture_path(name)); }

// Geometry built from a fixture; Omega keeps a pointer to the triangulation,
// so this object is neither copied nor moved.
struct Built {
    tropdual::Polytope P;
    tropdual::Triangulation T;
    tropdual::Omega W;

    explicit Built(const tropdual::Fixture& fx)
        : P(tropdual::Polytope::from_vertices(fx.polytope)),
          T(tropdual::Triangulation::build(P, fx.triangulation)),
          W(tropdual::Omega::build(T)) {}
    Built(const std::vector<Point>& verts, const std::vector<std::vector<Point>>& tops)
        : P(tropdual::Polytope::from_vertices(verts)),
          T(tropdual::Triangulation::build(P, tops)),
          W(tropdual::Omega::build(T)) {}
    Built(const Built&) = delete;
};

inline long long det(std::vector<std::vector<long long>> m) {
    tropdual::Matrix M = tropdual::Matrix::from_rows(tropdual::Ring::Q(), m);
    return tropdual::determinant(M).get_si();
}

// Orientation of the simplex (pts[0], ..., pts[n]).
inline long long orientation(const std::vector<Point>& pts) {
    std::vector<std::vector<long long>> rows;
    for (size_t i = 1; i < pts.size(); ++i) {
        std::vector<long long> r;
        for (size_t j = 0; j < pts[0].size(); ++j) r.push_back(pts[i][j] - pts[0][j]);
        rows.push_back(r);
    }
    return det(rows);
}

// Lower facets of the lifted point set. Empty when the heights are not
// generic (some point lies on a candidate facet).
inline std::optional<std::vector<std::vector<Point>>> regular_triangulation(const std::vector<Point>& pts,
                                                                            const std::vector<long long>& h) {
    const size_t N = pts.size();
    const size_t n = pts[0].size();
    if (N < n + 1) return std::nullopt;
    std::vector<std::vector<Point>> tops;
    std::vector<bool> pick(N, false);
    std::fill(pick.begin(), pick.begin() + n + 1, true);
    do {
        std::vector<size_t> idx;
        for (size_t i = 0; i < N; ++i)
            if (pick[i]) idx.push_back(i);
        std::vector<Point> s;
        for (size_t i : idx) s.push_back(pts[i]);
        const long long base = orientation(s);
        if (base == 0) continue;
        bool lower = true, tie = false;
        for (size_t w = 0; w < N && lower; ++w) {
            if (pick[w]) continue;
            std::vector<std::vector<long long>> rows;
            auto lifted = [&](size_t i) {
                std::vector<long long> r;
                for (size_t j = 0; j < n; ++j) r.push_back(pts[i][j] - pts[idx[0]][j]);
                r.push_back(h[i] - h[idx[0]]);
                return r;
            };
            for (size_t k = 1; k < idx.size(); ++k) rows.push_back(lifted(idx[k]));
            rows.push_back(lifted(w));
            const long long D = det(rows);
            if (D == 0)
                tie = true;
            else if ((D > 0) != (base > 0))
                lower = false;
        }
        if (lower && tie) return std::nullopt;
        if (lower) tops.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (tops.empty()) return std::nullopt;
    return tops;
}

// Closed simplex membership by barycentric signs.
inline bool in_simplex(const Point& x, const std::vector<Point>& s) {
    const long long o = orientation(s);
    for (size_t i = 0; i < s.size(); ++i) {
        std::vector<Point> t = s;
        t[i] = x;
        const long long oi = orientation(t);
        if (oi != 0 && (oi > 0) != (o > 0)) return false;
    }
    return true;
}

struct RandomTriangulation {
    std::vector<Point> vertices;
    std::vector<std::vector<Point>> tops;
};

// A regular triangulation of a few random lattice points in a small box.
inline RandomTriangulation random_triangulation(std::mt19937& rng, int n) {
    const int box = n == 2 ? 4 : 2;
    const int lo = n + 2, hi = n == 2 ? 8 : 7;
    std::uniform_int_distribution<int> coord(0, box), count(lo, hi), height(0, 60);
    for (;;) {
        std::vector<Point> pts;
        const int want = count(rng);
        while (static_cast<int>(pts.size()) < want) {
            Point x(n);
            for (auto& c : x) c = coord(rng);
            if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
        }
        if (tropdual::affine_dimension(pts) < n) continue;
        std::vector<long long> h;
        for (size_t i = 0; i < pts.size(); ++i) h.push_back(height(rng));
        auto tops = regular_triangulation(pts, h);
        if (!tops) continue;
        // Vertices of the hull: points outside every simplex of a
        // triangulation of the remaining points.
        std::vector<Point> verts;
        bool ok = true;
        for (size_t v = 0; v < pts.size() && ok; ++v) {
            std::vector<Point> rest;
            std::vector<long long> hr;
            for (size_t i = 0; i < pts.size(); ++i)
                if (i != v) {
                    rest.push_back(pts[i]);
                    hr.push_back(h[i]);
                }
            if (tropdual::affine_dimension(rest) < n) {
                verts.push_back(pts[v]);
                continue;
            }
            auto sub = regular_triangulation(rest, hr);
            if (!sub) {
                ok = false;
                break;
            }
            bool inside = false;
            for (const auto& s : *sub) inside = inside || in_simplex(pts[v], s);
            if (!inside) verts.push_back(pts[v]);
        }
        if (!ok) continue;
        return {verts, *tops};
    }
}

inline tropdual::Ring random_ring(std::mt19937& rng, bool with_z) {
    std::uniform_int_distribution<int> pick(0, with_z ? 3 : 2);
    switch (pick(rng)) {
        case 0: return tropdual::Ring::F2();
        case 1: return tropdual::Ring::Fp(3);
        case 2: return tropdual::Ring::Q();
        default: return tropdual::Ring::Z();
    }
}

}  // namespace testsupport
