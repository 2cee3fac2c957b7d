#include <doctest.h>

#include "tropdual/exactalg.hpp"
#include "tropdual/error.hpp"

using namespace tropdual;

namespace {

Matrix M(Ring r, std::vector<std::vector<long long>> rows) { return Matrix::from_rows(r, rows); }

// Invariant factors by brute force: d_k = gcd of k x k minors / gcd of (k-1) x (k-1) minors.
std::vector<mpz_class> factors_from_minors(const std::vector<std::vector<long long>>& m) {
    const size_t r = m.size(), c = m[0].size();
    std::vector<mpz_class> g{1};
    for (size_t k = 1; k <= std::min(r, c); ++k) {
        mpz_class acc = 0;
        std::vector<bool> rs(r, false), cs(c, false);
        std::fill(rs.begin(), rs.begin() + k, true);
        do {
            std::fill(cs.begin(), cs.end(), false);
            std::fill(cs.begin(), cs.begin() + k, true);
            do {
                std::vector<std::vector<long long>> sub;
                for (size_t i = 0; i < r; ++i) {
                    if (!rs[i]) continue;
                    std::vector<long long> row;
                    for (size_t j = 0; j < c; ++j)
                        if (cs[j]) row.push_back(m[i][j]);
                    sub.push_back(row);
                }
                mpz_class d = determinant(Matrix::from_rows(Ring::Z(), sub));
                acc = gcd(acc, d);
            } while (std::prev_permutation(cs.begin(), cs.end()));
        } while (std::prev_permutation(rs.begin(), rs.end()));
        if (acc == 0) break;
        g.push_back(acc);
    }
    std::vector<mpz_class> out;
    for (size_t k = 1; k < g.size(); ++k) out.push_back(g[k] / g[k - 1]);
    return out;
}

}  // namespace

TEST_CASE("ring names and parsing") {
    CHECK(Ring::parse("F2") == Ring::F2());
    CHECK(Ring::parse("Fp:3") == Ring::Fp(3));
    CHECK(Ring::parse("Q").name() == "Q");
    CHECK(Ring::parse("Z").name() == "Z");
    CHECK(Ring::Fp(7).name() == "Fp:7");
    CHECK_THROWS_AS(Ring::parse("Fp:4"), Error);
    CHECK_THROWS_AS(Ring::parse("R"), Error);
}

TEST_CASE("rank") {
    CHECK(rank(Matrix(Ring::Q(), 0, 0)) == 0);
    CHECK(rank(Matrix::identity(Ring::F2(), 3)) == 3);
    CHECK(rank(M(Ring::Q(), {{2, 4}, {1, 2}})) == 1);
    CHECK(rank(M(Ring::F2(), {{1, 1}, {1, 1}})) == 1);
    CHECK(rank(M(Ring::Z(), {{2, 0}, {0, 2}})) == 2);
    CHECK(rank(M(Ring::F2(), {{2, 0}, {0, 2}})) == 0);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(Matrix::identity(Ring::Q(), 3)).cols() == 0);
    Matrix k = kernel_basis(M(Ring::F2(), {{1, 1}}));
    REQUIRE(k.cols() == 1);
    CHECK(k == M(Ring::F2(), {{1}, {1}}));
    CHECK(kernel_basis(M(Ring::Z(), {{2}})).cols() == 0);
    // Over Z the kernel lattice is saturated.
    Matrix kz = kernel_basis(M(Ring::Z(), {{2, 4}}));
    REQUIRE(kz.cols() == 1);
    CHECK(is_saturated(kz, 2));
}

TEST_CASE("Smith normal form") {
    SmithForm s = smith_normal_form(M(Ring::Z(), {{2, 0}, {0, 3}}));
    CHECK(s.D == M(Ring::Z(), {{1, 0}, {0, 6}}));
    CHECK(s.U * M(Ring::Z(), {{2, 0}, {0, 3}}) * s.V == s.D);
    CHECK(smith_normal_form(Matrix::identity(Ring::Z(), 3)).D == Matrix::identity(Ring::Z(), 3));
    CHECK(smith_normal_form(Matrix(Ring::Z(), 2, 3)).D.is_zero());
}

TEST_CASE("invariant factors agree with gcds of minors") {
    const std::vector<std::vector<std::vector<long long>>> cases = {
        {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}},
        {{1, 2}, {3, 4}, {5, 6}},
        {{6, 0, 0}, {0, 10, 0}},
        {{0, 0}, {0, 0}},
    };
    for (const auto& c : cases) CHECK(invariant_factors(Matrix::from_rows(Ring::Z(), c)) == factors_from_minors(c));
}

TEST_CASE("solve") {
    auto x = solve(Matrix::identity(Ring::Q(), 2), M(Ring::Q(), {{1}, {2}}));
    REQUIRE(x);
    CHECK(*x == M(Ring::Q(), {{1}, {2}}));
    CHECK_FALSE(solve(M(Ring::Z(), {{2}}), M(Ring::Z(), {{1}})));
    auto y = solve(M(Ring::F2(), {{1, 1}}), M(Ring::F2(), {{0}}));
    REQUIRE(y);
    CHECK((M(Ring::F2(), {{1, 1}}) * *y).is_zero());
    CHECK(solve(M(Ring::Q(), {{2}}), M(Ring::Q(), {{1}})));
}

TEST_CASE("column span sums and saturation") {
    Matrix e1 = M(Ring::Z(), {{1}, {0}}), e2 = M(Ring::Z(), {{0}, {1}});
    CHECK(column_span_sum({e1, e1}) == e1);
    CHECK(column_span_sum({e1, e2}).cols() == 2);
    Matrix h = column_span_sum({M(Ring::Z(), {{1}, {1}}), M(Ring::Z(), {{1}, {-1}})});
    CHECK(h == M(Ring::Z(), {{1, 0}, {1, 2}}));
    CHECK(is_saturated(e1, 2));
    CHECK_FALSE(is_saturated(M(Ring::Z(), {{2}, {0}}), 2));
    CHECK_FALSE(is_saturated(h, 2));
    CHECK(spans_contain(h, M(Ring::Z(), {{2}, {0}})));
    CHECK_FALSE(spans_contain(h, e1));
}

TEST_CASE("reduction into finite fields") {
    Matrix a = M(Ring::Q(), {{3, 4}, {5, -1}});
    Matrix b = a.reduced_to(Ring::Fp(3));
    CHECK(b.is_zero_at(0, 0));
    CHECK(b == M(Ring::Fp(3), {{0, 1}, {2, 2}}));
}

TEST_CASE("binomial") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(2, 3) == 0);
    CHECK(binomial(-1, 0) == 0);
    CHECK(binomial(0, 0) == 1);
}
