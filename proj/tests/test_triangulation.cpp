#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace tropdual;
using testsupport::Built;

namespace {

std::vector<size_t> counts(const Triangulation& T) {
    std::vector<size_t> c;
    for (int d = 0; d <= T.n(); ++d) c.push_back(T.of_dim(d).size());
    return c;
}

bool simplex_primitive(const std::vector<Point>& s, Ring r) { return is_R_primitive_simplex(s, r); }

int vertex_face(const Polytope& P, const Point& v) {
    const auto& vs = P.vertices();
    const int i = static_cast<int>(std::find(vs.begin(), vs.end(), v) - vs.begin());
    return P.face_of_vertices({i});
}

}  // namespace

TEST_CASE("closure under faces") {
    Polytope P = Polytope::from_vertices({{0, 0}, {1, 0}, {0, 1}});
    Triangulation T = Triangulation::build(P, {{{0, 0}, {1, 0}, {0, 1}}}, true);
    CHECK(T.simplices().size() == 7);
    CHECK(counts(T) == std::vector<size_t>{3, 3, 1});
    Built g2(testsupport::fixture("fig5_Gamma2"));
    CHECK(counts(g2.T) == std::vector<size_t>{8, 14, 7});
}

TEST_CASE("strict validation") {
    Polytope sq = Polytope::from_vertices({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
    CHECK_NOTHROW(Triangulation::build(sq, {{{0, 0}, {2, 0}, {2, 2}}, {{0, 0}, {0, 2}, {2, 2}}}, true));
    // Half-edge overlap: (0,0)-(2,0) against (1,0)-(2,0) with a hanging vertex.
    CHECK_THROWS_AS(Triangulation::build(sq, {{{0, 0}, {2, 0}, {0, 2}}, {{1, 0}, {2, 0}, {2, 2}}, {{0, 2}, {2, 2}, {1, 0}}},
                                         true),
                    Error);
    // Missing coverage.
    CHECK_THROWS_AS(Triangulation::build(sq, {{{0, 0}, {2, 0}, {2, 2}}}, true), Error);
    CHECK_THROWS_AS(Triangulation::build(sq, {{{0, 0}, {3, 0}, {2, 2}}}, false), Error);
}

TEST_CASE("R-primitivity of the figure triangles and simplices") {
    const std::vector<Point> T1{{-3, -1}, {-2, 1}, {-1, 0}}, T2{{3, 1}, {1, 1}, {0, 0}};
    CHECK_FALSE(simplex_primitive(T2, Ring::F2()));
    CHECK(simplex_primitive(T2, Ring::Q()));
    CHECK(simplex_primitive(T1, Ring::F2()));
    CHECK_FALSE(simplex_primitive(T1, Ring::Z()));
    CHECK(simplex_primitive(T1, Ring::Fp(5)));
    CHECK_FALSE(simplex_primitive(T1, Ring::Fp(3)));
    const std::vector<Point> S1{{1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 2}}, S2{{3, 0, 0}, {2, 0, 0}, {2, 1, 0}, {3, 1, 3}};
    CHECK(simplex_primitive(S2, Ring::F2()));
    CHECK_FALSE(simplex_primitive(S1, Ring::F2()));
}

TEST_CASE("primitivity of the triangulation figures") {
    Built g1(testsupport::fixture("fig5_Gamma1")), g2(testsupport::fixture("fig5_Gamma2")),
        g3(testsupport::fixture("fig5_Gamma3"));
    for (Ring r : {Ring::F2(), Ring::Fp(3), Ring::Q(), Ring::Z()}) CHECK(k_primitivity(g2.T, 2, r));
    CHECK_FALSE(k_primitivity(g3.T, 2, Ring::F2()));
    CHECK(k_primitivity(g1.T, 2, Ring::F2()));
    CHECK(primitivity_level(g2.T, Ring::Z()) == 2);
    CHECK(primitivity_level(g3.T, Ring::F2()) == 1);
}

TEST_CASE("Hypotheses 1 and 2") {
    Built g1(testsupport::fixture("fig5_Gamma1")), g3(testsupport::fixture("fig5_Gamma3"));
    Hypotheses z = hypotheses(g3.T, Ring::Z()), f2 = hypotheses(g3.T, Ring::F2());
    CHECK(z.hyp1);
    CHECK_FALSE(z.hyp2);
    CHECK_FALSE(f2.hyp1);
    CHECK_FALSE(f2.hyp2);
    for (Ring r : {Ring::F2(), Ring::Fp(3), Ring::Q(), Ring::Z()}) {
        CHECK(hypotheses(g1.T, r).hyp1);
        CHECK(hypotheses(g1.T, r).hyp2);
    }
    CHECK(hypotheses(g3.T, Ring::Q()).hyp1);
    CHECK(hypotheses(g3.T, Ring::Q()).hyp2);
}

TEST_CASE("index and reduced lengths") {
    Polytope P = Polytope::from_vertices({{0, 0}, {2, 0}, {0, 2}});
    Triangulation T = Triangulation::build(P, {{{0, 0}, {2, 0}, {0, 2}}}, true);
    CHECK(T.index() == 2);
    for (int e : T.of_dim(1)) CHECK(T.reduced_length(e) == 1);
}

TEST_CASE("R-non-singularity of the polygon figures") {
    Polytope P1 = Polytope::from_vertices({{-2, 0}, {-2, -2}, {0, -2}, {0, -1}, {-1, 0}});
    for (Ring r : {Ring::F2(), Ring::Fp(3), Ring::Q(), Ring::Z()}) CHECK(is_R_nonsingular_global(P1, r));
    Polytope P2 = Polytope::from_vertices({{1, -2}, {3, -1}, {2, 0}, {1, 0}});
    CHECK_FALSE(is_R_nonsingular_global(P2, Ring::F2()));
    CHECK(is_R_nonsingular_global(P2, Ring::Q()));
    CHECK_FALSE(is_R_nonsingular_local(P2, vertex_face(P2, {1, -2}), Ring::F2()));
    CHECK(is_R_nonsingular_local(P2, vertex_face(P2, {3, -1}), Ring::F2()));
    CHECK_FALSE(is_R_nonsingular_local(P2, vertex_face(P2, {3, -1}), Ring::Z()));
    CHECK(is_R_nonsingular_local(P2, P2.top(), Ring::Z()));
    Polytope P3 = Polytope::from_vertices({{4, -2}, {5, -3}, {6, -1}, {5, 0}, {4, 0}});
    CHECK(is_R_nonsingular_global(P3, Ring::F2()));
    CHECK_FALSE(is_R_nonsingular_global(P3, Ring::Z()));
    Polytope pyramid = Polytope::from_vertices({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {2, 2, 0}, {1, 1, 1}});
    CHECK_FALSE(is_R_nonsingular_local(pyramid, vertex_face(pyramid, {1, 1, 1}), Ring::Q()));
}

TEST_CASE("global non-singularity is local non-singularity on every face") {
    std::mt19937 rng(21);
    for (int it = 0; it < 200; ++it) {
        auto rt = testsupport::random_triangulation(rng, it % 4 == 0 ? 3 : 2);
        Polytope P = Polytope::from_vertices(rt.vertices);
        const Ring r = testsupport::random_ring(rng, true);
        bool all = true;
        for (size_t f = 0; f < P.faces().size(); ++f) all = all && is_R_nonsingular_local(P, static_cast<int>(f), r);
        CHECK(all == is_R_nonsingular_global(P, r));
    }
}

TEST_CASE("dual paths") {
    Built g2(testsupport::fixture("fig5_Gamma2"));
    const auto& tops = g2.T.of_dim(2);
    CHECK(dual_path(g2.T, tops[0], tops[0]) == std::vector<int>{tops[0]});
    // Two triangles sharing an edge.
    const int e = g2.T.simplex(tops[0]).facets[0];
    const auto cof = g2.T.cofaces_of(e, 2);
    if (cof.size() == 2) CHECK(dual_path(g2.T, cof[0], cof[1]).size() == 2);
    const int a = g2.T.find_points({{1, 0}, {2, 0}, {1, -1}});
    const int b = g2.T.find_points({{2, -2}, {3, -2}, {3, -1}});
    auto path = dual_path(g2.T, a, b);
    CHECK(path.size() >= 3);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        int shared = 0;
        for (int f : g2.T.simplex(path[i]).facets)
            for (int g : g2.T.simplex(path[i + 1]).facets) shared += f == g;
        CHECK(shared == 1);
    }
}

TEST_CASE("rho is a balancing signature and faults are detected") {
    Built cube(testsupport::fixture("unit_cube_five"));
    CHECK(rho_diamond_audit(cube.T).violations == 0);
    Polytope P = Polytope::from_vertices({{0, 0}, {1, 0}, {0, 1}});
    Triangulation T = Triangulation::build(P, {{{0, 0}, {1, 0}, {0, 1}}}, true);
    const int e = T.of_dim(1)[0];
    T.flip_rho(T.simplex(e).facets[0], e);
    CHECK(rho_diamond_audit(T).violations > 0);
}
