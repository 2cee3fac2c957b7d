#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace tropdual;
using testsupport::Built;

namespace {

int cell_of(const Built& b, const std::vector<Point>& sigma, const std::vector<Point>& tau) {
    return b.W.find(b.T.find_points(sigma), b.T.find_points(tau));
}

}  // namespace

TEST_CASE("subsets are lexicographic") {
    const auto s = subsets(4, 2);
    REQUIRE(s.size() == 6);
    CHECK(s.front() == std::vector<int>{0, 1});
    CHECK(s[1] == std::vector<int>{0, 2});
    CHECK(s.back() == std::vector<int>{2, 3});
    CHECK(subsets(3, 0).size() == 1);
    CHECK(subsets(2, 3).empty());
}

TEST_CASE("exterior powers") {
    const Matrix I3 = Matrix::identity(Ring::Z(), 3);
    CHECK(wedge_power(I3, 2) == Matrix::identity(Ring::Z(), 3));
    const Matrix m = Matrix::from_rows(Ring::Z(), std::vector<std::vector<long long>>{{1, 2}, {3, 4}});
    CHECK(wedge_power(m, 2) == Matrix::from_rows(Ring::Z(), std::vector<std::vector<long long>>{{-2}}));
    CHECK(wedge_power(m, 0) == Matrix::identity(Ring::Z(), 1));
    CHECK_THROWS_AS(wedge_power(m.reduced_to(Ring::F2()), 1), Error);

    // Cauchy-Binet: the exterior power is multiplicative.
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> v(-3, 3);
    for (int it = 0; it < 200; ++it) {
        Matrix A(Ring::Z(), 4, 3), B(Ring::Z(), 3, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 3; ++j) {
                A.set(i, j, static_cast<long long>(v(rng)));
                B.set(j, i, static_cast<long long>(v(rng)));
            }
        const int p = std::uniform_int_distribution<int>(1, 3)(rng);
        CHECK(wedge_power(A * B, p) == wedge_power(A, p) * wedge_power(B, p));
    }
}

TEST_CASE("modules of a single primitive triangle") {
    Built b(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}}, {{{0, 0}, {1, 0}, {0, 1}}});
    const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}}, bottom{{0, 0}, {1, 0}};
    for (Ring ring : {Ring::F2(), Ring::Q(), Ring::Z()}) {
        Cosheaf F(b.W, ring);
        for (size_t c = 0; c < b.W.cells().size(); ++c) CHECK(F.rank(c, 0) == 1);
        const int tt = cell_of(b, tri, tri), et = cell_of(b, bottom, tri), ee = cell_of(b, bottom, bottom);
        CHECK(F.rank(tt, 1) == 2);
        CHECK(F.rank(et, 1) == 1);
        CHECK(F.rank(ee, 1) == 0);
        CHECK(F.rank(tt, 2) == 0);
        CHECK(F.rank(et, 2) == 0);
        CHECK(F.map(tt, tt, 1) == Matrix::identity(ring, 2));
        const Matrix inc = F.iota(et, tt, 1);
        CHECK(inc.rows() == 2);
        CHECK(inc.cols() == 1);
        CHECK(rank(inc) == 1);
        CHECK(F.pi(et, ee, 1).rows() == 0);
        CHECK_THROWS_AS(F.iota(tt, et, 1), Error);
        CHECK_THROWS_AS(F.pi(ee, et, 1), Error);
    }
}

TEST_CASE("sheaf modules on edge cells of top simplices have rank one in degree n-1") {
    for (const char* name : {"fig1_cubic", "unit_cube_five", "s2_parallelepiped", "fig5_Gamma3"}) {
        Built b(testsupport::fixture(name));
        const int n = b.T.n();
        for (Ring ring : {Ring::F2(), Ring::Q(), Ring::Z()}) {
            Cosheaf F(b.W, ring);
            for (int t : b.T.of_dim(n))
                for (int e : b.T.faces_of(t, 1)) {
                    const int c = b.W.find(e, t);
                    CHECK(F.rank(c, n - 1) == 1);
                    CHECK(F.sheaf_surjection(c, n - 1).rows() == 1);
                    CHECK(F.rank(c, n) == 0);
                }
        }
    }
}

TEST_CASE("ranks on primitive simplices follow the binomial law") {
    for (const char* name : {"fig1_cubic", "unit_cube_five", "s2_parallelepiped", "fig5_Gamma1", "fig4_S2"}) {
        Built b(testsupport::fixture(name));
        const int n = b.T.n();
        for (Ring ring : {Ring::F2(), Ring::Q()}) {
            Cosheaf F(b.W, ring);
            for (size_t c = 0; c < b.W.cells().size(); ++c) {
                const Cell& cell = b.W.cell(c);
                const int a = b.T.simplex(cell.sigma).dim;
                if (!is_R_primitive_simplex(b.T, cell.sigma, ring)) continue;
                const long long r = F.frame_dim(F.cell_face(c));
                for (int p = 1; p <= n; ++p)
                    CHECK(static_cast<long long>(F.rank(c, p)) == binomial(r, p) - binomial(r - a, p - a));
            }
        }
    }
}

TEST_CASE("cosheaf maps compose on every chain of a fixture") {
    Built b(testsupport::fixture("unit_cube_five"));
    for (Ring ring : {Ring::F2(), Ring::Z()}) {
        Cosheaf F(b.W, ring);
        for (int p = 0; p < 3; ++p)
            for (size_t A = 0; A < b.W.cells().size(); ++A)
                for (int c1 : b.W.down(A)) {
                    const int B = b.W.covers()[c1].lower;
                    for (int c2 : b.W.down(B)) {
                        const int C = b.W.covers()[c2].lower;
                        CHECK(F.map(A, C, p) == F.map(B, C, p) * F.map(A, B, p));
                    }
                }
    }
}

TEST_CASE("rational modules agree with integral modules tensored with Q") {
    for (const char* name : {"fig1_cubic", "s2_parallelepiped", "fig5_Gamma3", "fig4_S1"}) {
        Built b(testsupport::fixture(name));
        for (int p = 0; p <= b.T.n(); ++p) CHECK(hom_rank_disagreements(b.W, Ring::Q(), p).empty());
    }
}

TEST_CASE("reduction mod 2 can drop rank when edges become parallel") {
    // All three edge directions (1,0,0), (3,4,0), (1,2,0) agree mod 2.
    Built b(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {3, 4, 0}, {0, 0, 1}},
            {{{0, 0, 0}, {1, 0, 0}, {3, 4, 0}, {0, 0, 1}}});
    const int c = b.W.find(b.T.find_points({{0, 0, 0}, {1, 0, 0}, {3, 4, 0}}), b.T.of_dim(3)[0]);
    CHECK(Cosheaf(b.W, Ring::Z()).rank(c, 1) == 3);
    CHECK(Cosheaf(b.W, Ring::F2()).rank(c, 1) == 2);
    CHECK_FALSE(hom_rank_disagreements(b.W, Ring::F2(), 1).empty());
    CHECK(hom_rank_disagreements(b.W, Ring::Fp(3), 1).empty());
}
