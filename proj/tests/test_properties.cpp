// Randomized invariants over small regular triangulations in dimensions 2 and 3.
#include <doctest.h>

#include "support.hpp"

using namespace tropdual;
using testsupport::Built;

namespace {

constexpr int kSamples = 200;

int pick_dimension(std::mt19937& rng) { return std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? 3 : 2; }

Matrix random_matrix(std::mt19937& rng, Ring ring, size_t rows, size_t cols) {
    std::uniform_int_distribution<int> v(-3, 3);
    Matrix m(ring, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.set(i, j, static_cast<long long>(v(rng)));
    return m.reduced_to(ring);
}

}  // namespace

TEST_CASE("squared differentials vanish on random triangulations") {
    std::mt19937 rng(11);
    for (int it = 0; it < kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, pick_dimension(rng));
        Built b(rt.vertices, rt.tops);
        const Ring ring = testsupport::random_ring(rng, true);
        Cosheaf F(b.W, ring);
        const int n = b.T.n();
        for (int p = 0; p < n; ++p) {
            BigradedComplex cx = BigradedComplex::build(F, p);
            CHECK(check_squares(cx).ok());
            for (int q = 1; q < n; ++q) {
                CHECK((cx.d(q) * cx.d(q + 1)).is_zero());
                CHECK((cx.delta(q) * cx.delta(q - 1)).is_zero());
            }
        }
    }
}

TEST_CASE("balancing signatures have product -1 on every diamond") {
    std::mt19937 rng(12);
    for (int it = 0; it < kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, pick_dimension(rng));
        Built b(rt.vertices, rt.tops);
        CHECK(rho_diamond_audit(b.T).violations == 0);
        CHECK(diamond_audit(b.W).violations == 0);
    }
}

TEST_CASE("(2,R)-primitive implies Hypothesis 2 implies Hypothesis 1") {
    std::mt19937 rng(13);
    int two_primitive = 0, hyp2_seen = 0;
    for (int it = 0; it < kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, pick_dimension(rng));
        Built b(rt.vertices, rt.tops);
        for (Ring ring : {Ring::F2(), Ring::Fp(3), Ring::Q(), Ring::Z()}) {
            const Hypotheses h = hypotheses(b.T, ring);
            if (k_primitivity(b.T, 2, ring)) {
                ++two_primitive;
                CHECK(h.hyp2);
            }
            if (h.hyp2) {
                ++hyp2_seen;
                CHECK(h.hyp1);
            }
        }
    }
    CHECK(two_primitive > 0);
    CHECK(hyp2_seen > 0);
}

TEST_CASE("cosheaf maps compose along chains of cells") {
    std::mt19937 rng(14);
    for (int it = 0; it < kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, pick_dimension(rng));
        Built b(rt.vertices, rt.tops);
        const Ring ring = testsupport::random_ring(rng, true);
        Cosheaf F(b.W, ring);
        const int p = std::uniform_int_distribution<int>(0, b.T.n() - 1)(rng);
        // Sample a few starting cells to bound the cost.
        for (int k = 0; k < 6; ++k) {
            const int A = std::uniform_int_distribution<int>(0, static_cast<int>(b.W.cells().size()) - 1)(rng);
            for (int c1 : b.W.down(A)) {
                const int B = b.W.covers()[c1].lower;
                for (int c2 : b.W.down(B)) {
                    const int C = b.W.covers()[c2].lower;
                    CHECK(F.map(A, C, p) == F.map(B, C, p) * F.map(A, B, p));
                }
            }
        }
    }
}

TEST_CASE("Euler characteristic of local column complexes on R-primitive simplices") {
    std::mt19937 rng(15);
    size_t checked = 0;
    for (int it = 0; it < kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, pick_dimension(rng));
        Built b(rt.vertices, rt.tops);
        const Ring ring = testsupport::random_ring(rng, true);
        Cosheaf F(b.W, ring);
        const int n = b.T.n();
        for (size_t s = 0; s < b.T.simplices().size(); ++s) {
            const int bdim = b.T.simplex(s).dim;
            if (bdim < 1 || !is_R_primitive_simplex(b.T, static_cast<int>(s), ring)) continue;
            const long long r = F.frame_dim(b.T.simplex(s).face);
            for (int p = 0; p <= n; ++p) {
                Complex cx = local_column_complex(F, static_cast<int>(s), p);
                long long chi = 0;
                for (size_t q = 0; q < cx.dims.size(); ++q) chi += (q % 2 ? -1 : 1) * static_cast<long long>(cx.dims[q]);
                const long long sign = (bdim - 1) % 2 ? -1 : 1;
                CHECK(chi == sign * (binomial(r, p + 1) - binomial(r - bdim, p + 1)));
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("cap product does not depend on the chosen lift") {
    std::mt19937 rng(16);
    size_t nontrivial = 0;
    for (int it = 0; it < kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, pick_dimension(rng));
        Built b(rt.vertices, rt.tops);
        const Ring ring = testsupport::random_ring(rng, false);
        Cosheaf F(b.W, ring);
        const int n = b.T.n();
        // sigma in gamma in tau, with sigma of dimension at least one.
        const auto& tops = b.T.of_dim(n);
        const int tau = tops[std::uniform_int_distribution<size_t>(0, tops.size() - 1)(rng)];
        const int a = std::uniform_int_distribution<int>(1, n)(rng);
        const auto sigmas = b.T.faces_of(tau, a);
        const int sigma = sigmas[std::uniform_int_distribution<size_t>(0, sigmas.size() - 1)(rng)];
        std::vector<int> gammas;
        for (int g = a; g <= n; ++g)
            for (int c : b.T.faces_of(tau, g))
                if (b.T.is_face(sigma, c)) gammas.push_back(c);
        const int gamma = gammas[std::uniform_int_distribution<size_t>(0, gammas.size() - 1)(rng)];
        const int st = b.W.find(sigma, tau), gt = b.W.find(gamma, tau);
        const int pp = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const int p = std::uniform_int_distribution<int>(0, pp)(rng);
        const Matrix beta = random_matrix(rng, ring, F.rank(gt, p), 1);
        const Matrix alpha = random_matrix(rng, ring, F.rank(st, pp), 1);
        const Matrix lift = lift_sheaf_element(F, gt, st, beta, p);
        const Matrix K = kernel_basis(F.sheaf_surjection(st, p));
        const Matrix base = cap_lifted(F, lift, st, alpha, gamma, p, pp);
        CHECK(base == cap_cell(F, gt, beta, st, alpha, p, pp));
        if (K.cols() == 0) continue;
        ++nontrivial;
        const Matrix shifted = lift + K * random_matrix(rng, ring, K.cols(), 1);
        CHECK(cap_lifted(F, shifted, st, alpha, gamma, p, pp) == base);
    }
    CHECK(nontrivial > 0);
}

TEST_CASE("fundamental chain is a cycle and cap maps commute with differentials") {
    std::mt19937 rng(17);
    for (int it = 0; it < kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, pick_dimension(rng));
        Built b(rt.vertices, rt.tops);
        const Ring ring = testsupport::random_ring(rng, false);
        Cosheaf F(b.W, ring);
        DualityContext ctx(F);
        CHECK(ctx.fundamental().cycle);
        const int n = b.T.n();
        const int p = std::uniform_int_distribution<int>(0, n - 1)(rng);
        for (int q = 0; q + 1 < n; ++q) CHECK(check_commutation(ctx, p, q));
    }
}

// Every lattice edge is a dilation of a primitive edge, so (1,F2)-primitivity
// holds for every planar triangulation; the implication to F2-primitivity
// needs odd edge lengths (mod 2 the edge vectors are then distinct and nonzero).
TEST_CASE("in dimension 2, odd edge lengths make a triangulation F2-primitive") {
    std::mt19937 rng(18);
    size_t odd = 0;
    for (int it = 0; it < kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, 2);
        Built b(rt.vertices, rt.tops);
        CHECK(k_primitivity(b.T, 1, Ring::F2()));
        bool all_odd = true;
        for (int e : b.T.of_dim(1)) all_odd = all_odd && b.T.edge_length(e) % 2 == 1;
        if (!all_odd) continue;
        ++odd;
        CHECK(k_primitivity(b.T, 2, Ring::F2()));
    }
    CHECK(odd > 0);
}

TEST_CASE("a (1,F2)-primitive triangle need not be F2-primitive") {
    Built b(std::vector<Point>{{3, 1}, {1, 1}, {0, 0}}, {{{3, 1}, {1, 1}, {0, 0}}});
    CHECK(k_primitivity(b.T, 1, Ring::F2()));
    CHECK_FALSE(k_primitivity(b.T, 2, Ring::F2()));
}

// The generation argument needs two edges of a triangle to have distinct
// annihilators over R, which Hypothesis 1 does not provide by itself.
TEST_CASE("fundamental chain generates top homology when triangle edges stay independent") {
    std::mt19937 rng(19);
    size_t generating = 0, degenerate = 0;
    for (int it = 0; generating < kSamples && it < 40 * kSamples; ++it) {
        auto rt = testsupport::random_triangulation(rng, pick_dimension(rng));
        Built b(rt.vertices, rt.tops);
        const Ring ring = std::uniform_int_distribution<int>(0, 1)(rng) ? Ring::Fp(3) : Ring::F2();
        if (!hypotheses(b.T, ring).hyp1) continue;
        Cosheaf F(b.W, ring);
        DualityContext ctx(F);
        const int n = b.T.n();
        const BigradedComplex& cx = ctx.complex(n - 1);
        const Matrix Z = kernel_basis(cx.d(n - 1));
        const Matrix& omega = ctx.fundamental().coords;
        const bool generates = Z.cols() == 1 && !omega.is_zero() && rank(Z) == rank(Matrix::hstack({Z, omega}));
        if (triangle_edges_independent(b.T, ring)) {
            ++generating;
            CHECK(generates);
        } else {
            degenerate += !generates;
        }
    }
    CHECK(generating == kSamples);
    CHECK(degenerate > 0);
}
