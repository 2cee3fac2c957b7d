#include "tropdual/duality.hpp"

#include <algorithm>

namespace tropdual {

namespace {

// Parity of the permutation sorting the sequence.
int permutation_sign(std::vector<int> v) {
    int s = 1;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) s = -s;
    return s;
}

std::map<std::vector<int>, size_t> subset_index(int r, int k) {
    std::map<std::vector<int>, size_t> idx;
    auto ss = subsets(r, k);
    for (size_t i = 0; i < ss.size(); ++i) idx[ss[i]] = i;
    return idx;
}

Matrix select(const Matrix& m, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
    Matrix out(m.ring(), rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) out.set(i, j, m.at(rows[i], cols[j]));
    return out;
}

Matrix kernel_or_identity(const Matrix& m) {
    if (m.rows() == 0) return Matrix::identity(m.ring(), m.cols());
    if (m.cols() == 0) return Matrix(m.ring(), 0, 0);
    return kernel_basis(m);
}

bool same_span(const Matrix& a, const Matrix& b) { return spans_contain(a, b) && spans_contain(b, a); }

}  // namespace

Matrix contraction_operator(const Matrix& w, int r, int p, int pp) {
    if (p > pp) throw Error("DegreeError", "contraction needs p <= p'");
    auto rows = subset_index(r, pp - p);
    auto Is = subsets(r, p);
    auto Js = subsets(r, pp);
    Matrix L(w.ring(), rows.size(), Js.size());
    for (size_t j = 0; j < Js.size(); ++j) {
        const auto& J = Js[j];
        for (size_t i = 0; i < Is.size(); ++i) {
            const auto& I = Is[i];
            if (w.is_zero_at(i, 0) || !std::includes(J.begin(), J.end(), I.begin(), I.end())) continue;
            std::vector<int> K;
            std::set_difference(J.begin(), J.end(), I.begin(), I.end(), std::back_inserter(K));
            std::vector<int> KI = K;
            KI.insert(KI.end(), I.begin(), I.end());
            L.add_to(rows[K], j, w.at(i, 0) * permutation_sign(KI));
        }
    }
    return L;
}

Matrix contraction(const Matrix& w, const Matrix& v, int r, int p, int pp) {
    return contraction_operator(w, r, p, pp) * v;
}

Matrix lift_sheaf_element(const Cosheaf& F, int gamma_tau, int sigma_tau, const Matrix& beta, int p) {
    const Matrix& S = F.module(sigma_tau, p);
    Matrix restricted = F.iota(sigma_tau, gamma_tau, p).transpose() * beta;
    if (S.cols() == 0) return Matrix(F.ring(), S.rows(), beta.cols());
    auto x = solve(S.transpose(), restricted);
    if (!x) throw Error("LiftFailure", "sheaf element has no lift to the frame");
    return *x;
}

Matrix cap_lifted(const Cosheaf& F, const Matrix& lifted, int sigma_tau, const Matrix& alpha, int gamma, int p,
                  int pp) {
    const Omega& W = F.omega();
    const Triangulation& T = F.triangulation();
    const Cell& st = W.cell(sigma_tau);
    if (!T.is_face(st.sigma, gamma) || !T.is_face(gamma, st.tau))
        throw Error("IncompatibleCells", "cap product needs sigma in gamma in tau");
    const int r = F.frame_dim(F.cell_face(sigma_tau));
    Matrix a = F.module(sigma_tau, pp) * alpha;
    Matrix out(F.ring(), static_cast<size_t>(binomial(r, pp - p)), lifted.cols());
    for (size_t j = 0; j < lifted.cols(); ++j)
        out.set_block(0, j, contraction(lifted.column(j), a, r, p, pp));
    Matrix restricted = F.restriction(F.cell_face(sigma_tau), T.simplex(gamma).face, pp - p) * out;
    const int target = W.find(st.sigma, gamma);
    const Matrix& M = F.module(target, pp - p);
    if (M.cols() == 0) {
        if (!restricted.is_zero()) throw Error("ConstructionMismatch", "cap product leaves a zero module");
        return Matrix(F.ring(), 0, lifted.cols());
    }
    if (restricted.cols() == 0) return Matrix(F.ring(), M.cols(), 0);
    auto x = solve(M, restricted);
    if (!x) throw Error("ConstructionMismatch", "cap product leaves the target module");
    return *x;
}

Matrix cap_cell(const Cosheaf& F, int gamma_tau, const Matrix& beta, int sigma_tau, const Matrix& alpha, int p,
                int pp) {
    if (p > pp) throw Error("DegreeError", "cap product needs p <= p'");
    const Cell& gt = F.omega().cell(gamma_tau);
    const Cell& st = F.omega().cell(sigma_tau);
    if (gt.tau != st.tau) throw Error("IncompatibleCells", "cells do not share their second component");
    Matrix lifted = lift_sheaf_element(F, gamma_tau, sigma_tau, beta, p);
    return cap_lifted(F, lifted, sigma_tau, alpha, gt.sigma, p, pp);
}

int top_orientation(const Triangulation& T, int s) {
    const auto& v = T.simplex(s).verts;
    const int n = T.n();
    Matrix D(Ring::Z(), n, n);
    const Point& v0 = T.points()[v[0]];
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) D.set(i, j, T.points()[v[j + 1]][i] - v0[i]);
    return sgn(determinant(D));
}

std::vector<long long> orthogonal_generator(const Point& u) {
    const int n = static_cast<int>(u.size());
    // Monomial [n] \ {j} sits at lexicographic position n - 1 - j.
    std::vector<long long> g(n);
    for (int j = 0; j < n; ++j) g[n - 1 - j] = (j % 2 == 0 ? 1 : -1) * u[j];
    return g;
}

DualityContext::DualityContext(const Cosheaf& F) : F_(F) {}

const BigradedComplex& DualityContext::complex(int p) {
    auto it = complexes_.find(p);
    if (it == complexes_.end())
        it = complexes_.emplace(p, std::make_unique<BigradedComplex>(BigradedComplex::build(F_, p))).first;
    return *it->second;
}

const FundamentalChain& DualityContext::fundamental() {
    if (!fundamental_) fundamental_ = fundamental_chain(*this);
    return *fundamental_;
}

FundamentalChain fundamental_chain(DualityContext& ctx) {
    const Cosheaf& F = ctx.cosheaf();
    const Triangulation& T = F.triangulation();
    const Omega& W = F.omega();
    const int n = T.n();
    const BigradedComplex& cx = ctx.complex(n - 1);
    FundamentalChain fc;
    fc.coords = Matrix(F.ring(), cx.dim(n - 1), 1);
    for (int c : W.block(1, n)) {
        const Cell& x = W.cell(c);
        const auto& v = T.simplex(x.sigma).verts;
        Point u = primitive_direction(T.points()[v[0]], T.points()[v[1]]);
        mpz_class mult = to_mpz(T.reduced_length(x.sigma)) * top_orientation(T, x.tau);
        auto g = orthogonal_generator(u);
        Matrix gv(Ring::Z(), g.size(), 1);
        for (size_t i = 0; i < g.size(); ++i) gv.set(i, 0, mpq_class(mpz_class(to_mpz(g[i]) * mult)));
        // Top simplices are full-dimensional, so their frame is the identity.
        Matrix amb = gv.reduced_to(F.ring());
        const Matrix& M = F.module(c, n - 1);
        auto coef = M.cols() == 0 ? std::optional<Matrix>() : solve(M, amb);
        if (!coef) throw Error("ConstructionMismatch", "orientation generator outside the top module");
        fc.coords.set_block(cx.offset(c), 0, *coef);
        fc.cells.push_back(c);
        fc.multiplier.push_back(mult);
    }
    fc.cycle = cx.d(n - 1).rows() == 0 || (cx.d(n - 1) * fc.coords).is_zero();
    if (!fc.cycle) throw Error("ConstructionMismatch", "fundamental chain is not a cycle");
    return fc;
}

const Matrix& DualityContext::phi(int p, int q) {
    auto key = std::make_pair(p, q);
    auto it = phi_.find(key);
    if (it != phi_.end()) return it->second;
    const int n = F_.n();
    const Omega& W = F_.omega();
    const Triangulation& T = F_.triangulation();
    const BigradedComplex& src = complex(p);
    const BigradedComplex& dst = complex(n - 1 - p);
    const BigradedComplex& top = complex(n - 1);
    const FundamentalChain& fc = fundamental();
    Matrix out(F_.ring(), dst.dim(n - 1 - q), src.dim(q));
    for (int c : W.block(n - q, n)) {
        const Cell& gt = W.cell(c);
        const size_t rb = F_.rank(c, p);
        if (rb == 0) continue;
        Matrix beta = Matrix::identity(F_.ring(), rb);
        for (int e : T.faces_of(gt.sigma, 1)) {
            const int et = W.find(e, gt.tau);
            const int eg = W.find(e, gt.sigma);
            const size_t ra = F_.rank(et, n - 1);
            if (ra == 0 || F_.rank(eg, n - 1 - p) == 0) continue;
            Matrix alpha = fc.coords.block(top.offset(et), 0, ra, 1);
            Matrix blk = cap_cell(F_, c, beta, et, alpha, p, n - 1);
            out.add_block(dst.offset(eg), src.offset(c), blk);
        }
    }
    return phi_.emplace(key, std::move(out)).first->second;
}

Matrix DualityContext::phi_block(int p, int sigma) {
    const int n = F_.n();
    const Omega& W = F_.omega();
    const Triangulation& T = F_.triangulation();
    const int a = T.simplex(sigma).dim;
    const Matrix& full = phi(p, n - a);
    const BigradedComplex& src = complex(p);
    const BigradedComplex& dst = complex(n - 1 - p);
    std::vector<size_t> rows, cols;
    for (int e : T.faces_of(sigma, 1)) {
        int c = W.find(e, sigma);
        for (size_t i = 0; i < F_.rank(c, n - 1 - p); ++i) rows.push_back(dst.offset(c) + i);
    }
    for (int t : T.cofaces_of(sigma, n)) {
        int c = W.find(sigma, t);
        for (size_t i = 0; i < F_.rank(c, p); ++i) cols.push_back(src.offset(c) + i);
    }
    return select(full, rows, cols);
}

bool check_commutation(DualityContext& ctx, int p, int q) {
    const int n = ctx.n();
    const Matrix& phi_next = ctx.phi(p, q + 1);
    const Matrix& phi_q = ctx.phi(p, q);
    Matrix lhs = phi_next * ctx.complex(p).delta1(q);
    Matrix rhs = (ctx.complex(n - 1 - p).d2(n - 1 - q) * phi_q).scaled((q + 1) % 2 == 0 ? 1 : -1);
    return lhs == rhs;
}

CheckOutcome check_image_identity(DualityContext& ctx, int p, int q, int k) {
    const int n = ctx.n();
    CheckOutcome out;
    const Matrix& Phi = ctx.phi(p, q);
    const BigradedComplex& dst = ctx.complex(n - 1 - p);
    auto [start, size] = dst.block_range(1, n - q);
    // The image must sit inside the a = 1 column.
    std::vector<size_t> inside, outside, all_cols;
    for (size_t i = 0; i < Phi.rows(); ++i) (i >= start && i < start + size ? inside : outside).push_back(i);
    for (size_t j = 0; j < Phi.cols(); ++j) all_cols.push_back(j);
    if (!select(Phi, outside, all_cols).is_zero()) {
        out.detail = "image leaves the first column";
        return out;
    }
    Matrix P1 = select(Phi, inside, all_cols);
    Matrix D = dst.d1_block(1, n - q);
    const bool closed = D.rows() == 0 || P1.cols() == 0 || (D * P1).is_zero();
    if (q < n - k) {
        out.pass = closed;
        out.detail = closed ? "d1 phi = 0" : "d1 phi != 0";
        return out;
    }
    Matrix K = kernel_or_identity(D);
    const bool equal = closed && spans_contain(P1, K);
    out.pass = equal;
    out.detail = equal ? "im phi = ker d1" : "im phi != ker d1";
    return out;
}

CheckOutcome check_kernel_identity(DualityContext& ctx, int p, int q) {
    const Cosheaf& F = ctx.cosheaf();
    const Triangulation& T = F.triangulation();
    const int n = ctx.n();
    CheckOutcome out;
    if (!is_R_nonsingular_global(T.polytope(), F.ring()) || !hypotheses(T, F.ring()).hyp2) {
        out.applicable = false;
        out.detail = "HypothesisNotMet";
        return out;
    }
    const Matrix& Phi = ctx.phi(p, q);
    const BigradedComplex& src = ctx.complex(p);
    auto [start, size] = src.block_range(n - q, n);
    std::vector<size_t> rows, cols;
    for (size_t i = 0; i < Phi.rows(); ++i) rows.push_back(i);
    for (size_t j = start; j < start + size; ++j) cols.push_back(j);
    Matrix top = select(Phi, rows, cols);
    Matrix K = kernel_or_identity(top);
    Matrix Delta = src.d2_block(n - q, n).transpose();  // C^{n-q,n-1} -> C^{n-q,n}
    const bool equal = same_span(K, Delta);
    out.pass = equal;
    out.detail = equal ? "ker phi = im delta2" : "ker phi != im delta2";
    return out;
}

long long phi_rank_formula(int dim_face, int rank_v, int n, int p) {
    const int m = p - n + dim_face;
    return binomial(dim_face, m) - binomial(dim_face - rank_v, m - rank_v);
}

std::vector<RankLawRecord> phi_rank_records(DualityContext& ctx, int p) {
    const Cosheaf& F = ctx.cosheaf();
    const Triangulation& T = F.triangulation();
    std::vector<RankLawRecord> out;
    for (int a = 1; a <= T.n(); ++a)
        for (int s : T.of_dim(a)) {
            const int dimF = T.polytope().faces()[T.simplex(s).face].dim;
            const int rv = static_cast<int>(edge_span_rank(T, s, F.ring()));
            Matrix blk = ctx.phi_block(p, s);
            size_t r = blk.rows() == 0 || blk.cols() == 0 ? 0 : rank(blk);
            out.push_back({s, p, phi_rank_formula(dimF, rv, T.n(), p), r});
        }
    return out;
}

bool DualityReport::pass() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const DualityPair& d) { return d.pass(); });
}

DualityReport verify_duality(DualityContext& ctx, int k) {
    const Cosheaf& F = ctx.cosheaf();
    const Triangulation& T = F.triangulation();
    const int n = ctx.n();
    if (!is_R_nonsingular_global(T.polytope(), F.ring()))
        throw Error("HypothesisNotMet", "polytope is singular over " + F.ring().name());
    if (k < 2 || k > n || !k_primitivity(T, k, F.ring()))
        throw Error("HypothesisNotMet", "triangulation is not (" + std::to_string(k) + ", R)-primitive");
    DualityReport rep;
    rep.k = k;
    rep.complete = k == n;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (!rep.complete && p + q < 2 * n - k) continue;
            DualityPair d;
            d.p = p;
            d.q = q;
            d.cohomology_rank = cohomology(ctx.complex(p).total()).ranks[q];
            d.homology_rank = homology(ctx.complex(n - 1 - p).total()).ranks[n - 1 - q];
            d.ranks_equal = d.cohomology_rank == d.homology_rank;
            if (q >= n - k) {
                auto img = check_image_identity(ctx, p, q, k);
                auto ker = check_kernel_identity(ctx, p, q);
                if (ker.applicable) d.e1_isomorphism = img.pass && ker.pass;
            }
            rep.pairs.push_back(d);
        }
    return rep;
}

}  // namespace tropdual
