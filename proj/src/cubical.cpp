#include "tropdual/cubical.hpp"

#include <algorithm>
#include <set>

namespace tropdual {

Omega Omega::build(const Triangulation& T) {
    Omega W;
    W.T_ = &T;
    const auto& S = T.simplices();
    // Cells ordered by block (a, b), then by simplex ids, which are
    // lexicographic within each dimension.
    std::vector<Cell> cells;
    for (size_t t = 0; t < S.size(); ++t) {
        const int b = S[t].dim;
        for (int a = 1; a <= b; ++a)
            for (int s : T.faces_of(static_cast<int>(t), a)) cells.push_back({s, static_cast<int>(t), a, b});
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.sigma != y.sigma) return x.sigma < y.sigma;
        return x.tau < y.tau;
    });
    W.cells_ = cells;
    for (size_t c = 0; c < cells.size(); ++c) {
        W.index_[{cells[c].sigma, cells[c].tau}] = static_cast<int>(c);
        W.blocks_[{cells[c].a, cells[c].b}].push_back(static_cast<int>(c));
    }
    W.down_.assign(cells.size(), {});
    W.up_.assign(cells.size(), {});
    for (size_t c = 0; c < cells.size(); ++c) {
        const Cell& x = cells[c];
        // Type 1: (sigma, gamma) -> (eps, gamma), sigma a facet of eps.
        for (int eps : S[x.sigma].cofacets) {
            if (!T.is_face(eps, x.tau)) continue;
            int lower = W.find(eps, x.tau);
            // Sign by the dimension of the upper cell (sigma, gamma).
            const int eta = (x.dim() % 2 == 0 ? 1 : -1) * T.rho(x.sigma, eps);
            W.covers_.push_back({static_cast<int>(c), lower, 1, eta});
        }
        // Type 2: (sigma, gamma) -> (sigma, eps), eps a facet of gamma.
        for (size_t k = 0; k < S[x.tau].facets.size(); ++k) {
            int eps = S[x.tau].facets[k];
            if (!T.is_face(x.sigma, eps)) continue;
            int lower = W.find(x.sigma, eps);
            W.covers_.push_back({static_cast<int>(c), lower, 2, S[x.tau].facet_rho[k]});
        }
    }
    for (size_t k = 0; k < W.covers_.size(); ++k) {
        W.down_[W.covers_[k].upper].push_back(static_cast<int>(k));
        W.up_[W.covers_[k].lower].push_back(static_cast<int>(k));
    }
    return W;
}

int Omega::find(int sigma, int tau) const {
    auto it = index_.find({sigma, tau});
    return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& Omega::block(int a, int b) const {
    static const std::vector<int> empty;
    auto it = blocks_.find({a, b});
    return it == blocks_.end() ? empty : it->second;
}

OmegaAudit diamond_audit(const Omega& W) {
    OmegaAudit audit;
    for (size_t c = 0; c < W.cells().size(); ++c) {
        // Paths of length two downwards, grouped by endpoint.
        std::map<int, std::vector<std::pair<int, int>>> paths;  // lower -> (cover1, cover2)
        for (int k1 : W.down(static_cast<int>(c))) {
            int mid = W.covers()[k1].lower;
            for (int k2 : W.down(mid)) paths[W.covers()[k2].lower].push_back({k1, k2});
        }
        for (const auto& [lower, ps] : paths) {
            ++audit.intervals;
            bool ok = ps.size() == 2;
            if (ok) {
                int prod = 1;
                for (const auto& [k1, k2] : ps) prod *= W.covers()[k1].eta * W.covers()[k2].eta;
                ok = prod == -1;
            }
            if (!ok) {
                ++audit.violations;
                audit.offending.push_back({static_cast<int>(c), lower});
            }
        }
    }
    return audit;
}

}  // namespace tropdual
