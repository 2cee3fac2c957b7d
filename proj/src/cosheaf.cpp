#include "tropdual/cosheaf.hpp"

namespace tropdual {

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

Matrix wedge_power(const Matrix& m, int p) {
    if (m.ring().is_modular()) throw Error("WrongRing", "wedge_power expects an integral matrix");
    auto rs = subsets(static_cast<int>(m.rows()), p);
    auto cs = subsets(static_cast<int>(m.cols()), p);
    Matrix out(Ring::Z(), rs.size(), cs.size());
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = 0; j < cs.size(); ++j) {
            if (p == 0) {
                out.set(i, j, 1LL);
                continue;
            }
            Matrix minor(Ring::Z(), p, p);
            for (int r = 0; r < p; ++r)
                for (int c = 0; c < p; ++c) minor.set(r, c, m.at(rs[i][r], cs[j][c]));
            out.set(i, j, mpq_class(determinant(minor)));
        }
    return out;
}

Cosheaf::Cosheaf(const Omega& W, Ring ring) : W_(&W), ring_(ring) {}

const Matrix& Cosheaf::frame(int face) const {
    auto it = frames_.find(face);
    if (it != frames_.end()) return it->second;
    const Polytope& P = triangulation().polytope();
    Matrix B = tangent_lattice(P.face_points(face), P.n());
    return frames_.emplace(face, std::move(B)).first->second;
}

int Cosheaf::frame_dim(int face) const { return triangulation().polytope().faces()[face].dim; }

int Cosheaf::cell_face(int c) const { return triangulation().simplex(omega().cell(c).tau).face; }

size_t Cosheaf::ambient_rank(int c, int p) const {
    return static_cast<size_t>(binomial(frame_dim(cell_face(c)), p));
}

Matrix Cosheaf::edge_annihilator(int edge, int face) const {
    const Triangulation& T = triangulation();
    const auto& v = T.simplex(edge).verts;
    Point u = primitive_direction(T.points()[v[0]], T.points()[v[1]]);
    auto uf = solve(frame(face), Matrix::column_vector(Ring::Z(), u));
    if (!uf) throw Error("ConstructionMismatch", "edge direction outside the face lattice");
    return kernel_basis(uf->transpose());
}

const Matrix& Cosheaf::module(int c, int p) const {
    if (c < 0 || static_cast<size_t>(c) >= omega().cells().size())
        throw Error("CellNotInOmega", "cell index " + std::to_string(c));
    auto key = std::make_pair(c, p);
    auto it = modules_.find(key);
    if (it != modules_.end()) return it->second;
    const int face = cell_face(c);
    const int r = frame_dim(face);
    const size_t amb = static_cast<size_t>(binomial(r, p));
    std::vector<Matrix> parts;
    for (int e : triangulation().faces_of(omega().cell(c).sigma, 1)) {
        Matrix K = edge_annihilator(e, face);
        Matrix W = wedge_power(K, p);
        if (W.cols() > 0) parts.push_back(W.reduced_to(ring_));
    }
    Matrix M = parts.empty() ? Matrix(ring_, amb, 0) : column_span_sum(parts);
    return modules_.emplace(key, std::move(M)).first->second;
}

Matrix Cosheaf::restriction(int big, int small, int p) const {
    auto C = solve(frame(big), frame(small));
    if (!C) throw Error("NotComparable", "face frames are not nested");
    return wedge_power(*C, p).transpose().reduced_to(ring_);
}

namespace {

Matrix solve_into(const Matrix& basis, const Matrix& v, const char* what) {
    if (v.cols() == 0) return Matrix(basis.ring(), basis.cols(), 0);
    if (basis.cols() == 0) {
        if (!v.is_zero()) throw Error("ConstructionMismatch", what);
        return Matrix(basis.ring(), 0, v.cols());
    }
    auto x = solve(basis, v);
    if (!x) throw Error("ConstructionMismatch", what);
    return *x;
}

}  // namespace

Matrix Cosheaf::iota(int from, int to, int p) const {
    const Cell& a = omega().cell(from);
    const Cell& b = omega().cell(to);
    if (a.tau != b.tau || !triangulation().is_face(a.sigma, b.sigma))
        throw Error("NotComparable", "iota needs a common second component");
    return solve_into(module(to, p), module(from, p), "inclusion leaves the target module");
}

Matrix Cosheaf::pi(int from, int to, int p) const {
    const Cell& a = omega().cell(from);
    const Cell& b = omega().cell(to);
    if (a.sigma != b.sigma || !triangulation().is_face(b.tau, a.tau))
        throw Error("NotComparable", "pi needs a common first component");
    Matrix R = restriction(cell_face(from), cell_face(to), p);
    return solve_into(module(to, p), R * module(from, p), "projection leaves the target module");
}

Matrix Cosheaf::map(int from, int to, int p) const {
    const Cell& a = omega().cell(from);
    const Cell& b = omega().cell(to);
    const Triangulation& T = triangulation();
    if (!T.is_face(a.sigma, b.sigma) || !T.is_face(b.tau, a.tau))
        throw Error("NotComparable", "target cell is not below the source");
    int mid = omega().find(b.sigma, a.tau);
    return pi(mid, to, p) * iota(from, mid, p);
}

std::vector<HomRankComparison> hom_rank_disagreements(const Omega& W, Ring ring, int p) {
    Cosheaf R(W, ring), Z(W, Ring::Z());
    std::vector<HomRankComparison> out;
    for (size_t c = 0; c < W.cells().size(); ++c) {
        HomRankComparison h{static_cast<int>(c), p, R.rank(c, p), Z.rank(c, p)};
        if (h.rank_ring != h.rank_integral) out.push_back(h);
    }
    return out;
}

}  // namespace tropdual
