#include "tropdual/patchwork.hpp"

#include <algorithm>
#include <set>

namespace tropdual {

namespace {

long long abs_sum(const Point& x) {
    long long s = 0;
    for (long long v : x) s += v < 0 ? -v : v;
    return s;
}

std::vector<Point> canonical(std::vector<Point> pts, int d) {
    std::sort(pts.begin(), pts.end());
    const bool outer = std::all_of(pts.begin(), pts.end(), [d](const Point& x) { return abs_sum(x) == d; });
    if (!outer) return pts;
    std::vector<Point> neg;
    for (const Point& x : pts) {
        Point y = x;
        for (auto& v : y) v = -v;
        neg.push_back(y);
    }
    std::sort(neg.begin(), neg.end());
    return std::min(pts, neg);
}

}  // namespace

int extended_sign(const SignMap& signs, const Point& x) {
    Point a = x;
    int s = 1;
    for (auto& v : a)
        if (v < 0) {
            if ((-v) % 2 == 1) s = -s;
            v = -v;
        }
    auto it = signs.find(a);
    if (it == signs.end()) throw Error("MissingSign", "no sign for a vertex of the triangulation");
    return s * it->second;
}

SymmetrizedComplex symmetrize(const Triangulation& T, const SignMap& signs) {
    const Polytope& P = T.polytope();
    const int n = P.n();
    const auto& vs = P.vertices();
    long long d = 0;
    for (const auto& v : vs) d = std::max(d, abs_sum(v));
    std::set<Point> expected{Point(n, 0)};
    for (int i = 0; i < n; ++i) {
        Point e(n, 0);
        e[i] = d;
        expected.insert(e);
    }
    if (std::set<Point>(vs.begin(), vs.end()) != expected || d <= 0)
        throw Error("NotStandardSimplex", "patchworking needs a dilated standard simplex");
    for (const Point& v : T.points())
        if (!signs.count(v)) throw Error("MissingSign", "no sign for a vertex of the triangulation");

    SymmetrizedComplex S;
    S.n = n;
    S.d = static_cast<int>(d);
    S.orthants = size_t(1) << n;
    std::map<std::vector<Point>, bool> found;  // canonical key -> mixed
    for (size_t mask = 0; mask < S.orthants; ++mask)
        for (size_t s = 0; s < T.simplices().size(); ++s) {
            std::vector<Point> pts = T.simplex_points(static_cast<int>(s));
            std::set<int> seen;
            for (auto& x : pts) {
                for (int i = 0; i < n; ++i)
                    if (mask >> i & 1) x[i] = -x[i];
                seen.insert(extended_sign(signs, x));
            }
            // Antipodal copies flip every sign by (-1)^d, so mixedness agrees.
            auto [it, fresh] = found.emplace(canonical(pts, S.d), seen.size() == 2);
            if (!fresh && it->second != (seen.size() == 2))
                throw Error("ConstructionMismatch", "identified simplices disagree on mixedness");
        }
    std::vector<std::pair<std::vector<Point>, bool>> all(found.begin(), found.end());
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    for (auto& [pts, mixed] : all) {
        S.index[pts] = static_cast<int>(S.simplices.size());
        S.dim.push_back(static_cast<int>(pts.size()) - 1);
        S.mixed.push_back(mixed);
        S.simplices.push_back(pts);
    }
    S.facets.assign(S.simplices.size(), {});
    for (size_t s = 0; s < S.simplices.size(); ++s) {
        const auto& pts = S.simplices[s];
        if (pts.size() < 2) continue;
        for (size_t k = 0; k < pts.size(); ++k) {
            std::vector<Point> f = pts;
            f.erase(f.begin() + k);
            auto it = S.index.find(canonical(f, S.d));
            if (it == S.index.end()) throw Error("ConstructionMismatch", "facet missing from the symmetrized complex");
            S.facets[s].push_back(it->second);
        }
    }
    return S;
}

SimplicialComplex flag_complex(const SymmetrizedComplex& S, bool mixed_only) {
    const size_t N = S.simplices.size();
    // Proper faces of each simplex (transitive closure of facets).
    std::vector<std::set<int>> below(N);
    for (size_t s = 0; s < N; ++s)
        for (int f : S.facets[s]) {
            below[s].insert(f);
            below[s].insert(below[f].begin(), below[f].end());
        }
    auto keep = [&](int s) { return !mixed_only || S.mixed[s]; };
    SimplicialComplex K;
    // Chains grown from the top element downwards; ids ascend with dimension.
    std::vector<std::vector<int>> frontier;
    for (size_t s = 0; s < N; ++s)
        if (keep(static_cast<int>(s))) frontier.push_back({static_cast<int>(s)});
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& chain : frontier) {
            K.push_back(chain);
            for (int f : below[chain.front()])
                if (keep(f)) {
                    std::vector<int> c = chain;
                    c.insert(c.begin(), f);
                    next.push_back(c);
                }
        }
        frontier = std::move(next);
    }
    for (auto& c : K) std::sort(c.begin(), c.end());
    std::sort(K.begin(), K.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return K;
}

std::vector<size_t> betti_f2(const SimplicialComplex& K) {
    int top = -1;
    for (const auto& c : K) top = std::max(top, static_cast<int>(c.size()) - 1);
    if (top < 0) return {};
    std::vector<std::map<std::vector<int>, size_t>> idx(top + 1);
    for (const auto& c : K) {
        auto& m = idx[c.size() - 1];
        m.emplace(c, m.size());
    }
    const Ring F2 = Ring::F2();
    std::vector<size_t> ranks(top + 2, 0);  // rank of boundary from dimension q
    for (int q = 1; q <= top; ++q) {
        Matrix B(F2, idx[q - 1].size(), idx[q].size());
        for (const auto& [c, j] : idx[q])
            for (size_t k = 0; k < c.size(); ++k) {
                std::vector<int> f = c;
                f.erase(f.begin() + k);
                auto it = idx[q - 1].find(f);
                if (it == idx[q - 1].end()) throw Error("NotAComplex", "missing face");
                B.set(it->second, j, 1LL);
            }
        ranks[q] = B.empty() ? 0 : rank(B);
    }
    std::vector<size_t> b;
    for (int q = 0; q <= top; ++q) b.push_back(idx[q].size() - ranks[q] - ranks[q + 1]);
    return b;
}

long long euler_characteristic(const SimplicialComplex& K) {
    long long chi = 0;
    for (const auto& c : K) chi += (c.size() % 2 == 1) ? 1 : -1;
    return chi;
}

bool is_closed_pseudomanifold(const SimplicialComplex& K, int top_dim) {
    std::map<std::vector<int>, int> count;
    for (const auto& c : K) {
        if (static_cast<int>(c.size()) == top_dim) count.emplace(c, 0);
    }
    for (const auto& c : K) {
        if (static_cast<int>(c.size()) != top_dim + 1) continue;
        for (size_t k = 0; k < c.size(); ++k) {
            std::vector<int> f = c;
            f.erase(f.begin() + k);
            ++count[f];
        }
    }
    return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 2; });
}

}  // namespace tropdual
