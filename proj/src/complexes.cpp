#include "tropdual/complexes.hpp"

#include <algorithm>

namespace tropdual {

namespace {

size_t safe_rank(const Matrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : rank(m); }

std::vector<mpz_class> torsion_of(const Matrix& m) {
    std::vector<mpz_class> out;
    if (m.rows() == 0 || m.cols() == 0) return out;
    for (const auto& f : invariant_factors(m))
        if (f > 1) out.push_back(f);
    return out;
}

const Matrix* diff_at(const Complex& cx, int q) {
    if (q < 0 || q >= static_cast<int>(cx.d.size())) return nullptr;
    return &cx.d[q];
}

Matrix kernel_or_identity(const Matrix& m, size_t n, Ring ring) {
    if (m.rows() == 0) return Matrix::identity(ring, n);
    if (n == 0) return Matrix(ring, 0, 0);
    return kernel_basis(m);
}

// Sub-complex on a set of cells using the covers of one type.
Complex sub_complex(const Cosheaf& F, std::vector<int> cells, int p, int type) {
    const Omega& W = F.omega();
    std::sort(cells.begin(), cells.end());
    int top = 0;
    for (int c : cells) top = std::max(top, W.cell(c).dim());
    Complex cx{F.ring(), std::vector<size_t>(cells.empty() ? 0 : top + 1, 0), {}};
    std::map<int, size_t> offset;
    for (int c : cells) {
        int q = W.cell(c).dim();
        offset[c] = cx.dims[q];
        cx.dims[q] += F.rank(c, p);
    }
    for (size_t q = 0; q <= cx.dims.size(); ++q)
        cx.d.emplace_back(F.ring(), q == 0 ? 0 : cx.dims[q - 1], q < cx.dims.size() ? cx.dims[q] : 0);
    for (int c : cells)
        for (int k : W.down(c)) {
            const Cover& cv = W.covers()[k];
            if (cv.type != type || !offset.count(cv.lower)) continue;
            Matrix m = F.map(c, cv.lower, p).scaled(cv.eta);
            cx.d[W.cell(c).dim()].add_block(offset[cv.lower], offset[c], m);
        }
    return cx;
}

}  // namespace

HomologyResult homology(const Complex& cx) {
    HomologyResult h;
    for (int q = 0; q < static_cast<int>(cx.dims.size()); ++q) {
        const Matrix* dq = diff_at(cx, q);
        const Matrix* dq1 = diff_at(cx, q + 1);
        size_t r0 = dq ? safe_rank(*dq) : 0;
        size_t r1 = dq1 ? safe_rank(*dq1) : 0;
        h.ranks.push_back(cx.dims[q] - r0 - r1);
        if (cx.ring.kind == RingKind::Z) h.torsion.push_back(dq1 ? torsion_of(*dq1) : std::vector<mpz_class>{});
    }
    return h;
}

HomologyResult cohomology(const Complex& cx) {
    HomologyResult h = homology(cx);
    if (cx.ring.kind == RingKind::Z)
        for (int q = 0; q < static_cast<int>(cx.dims.size()); ++q) {
            const Matrix* dq = diff_at(cx, q);
            h.torsion[q] = dq ? torsion_of(*dq) : std::vector<mpz_class>{};
        }
    return h;
}

BigradedComplex BigradedComplex::build(const Cosheaf& F, int p) {
    BigradedComplex cx;
    cx.F_ = &F;
    cx.p_ = p;
    cx.n_ = F.n();
    const Omega& W = F.omega();
    const int n = cx.n_;
    cx.cells_.assign(n + 1, {});
    cx.dims_.assign(n + 1, 0);
    cx.offset_.assign(W.cells().size(), 0);
    for (size_t c = 0; c < W.cells().size(); ++c) {
        const Cell& x = W.cell(c);
        const int q = x.dim();
        cx.offset_[c] = cx.dims_[q];
        auto& range = cx.ranges_[{x.a, x.b}];
        if (range.second == 0 && range.first == 0) range.first = cx.dims_[q];
        const size_t r = F.rank(c, p);
        range.second += r;
        cx.dims_[q] += r;
        cx.cells_[q].push_back(static_cast<int>(c));
    }
    for (int q = 0; q <= n; ++q) {
        const size_t rows = q == 0 ? 0 : cx.dims_[q - 1];
        cx.d1_.emplace_back(F.ring(), rows, cx.dims_[q]);
        cx.d2_.emplace_back(F.ring(), rows, cx.dims_[q]);
    }
    for (const Cover& cv : W.covers()) {
        Matrix m = F.map(cv.upper, cv.lower, p).scaled(cv.eta);
        const int q = W.cell(cv.upper).dim();
        auto& target = cv.type == 1 ? cx.d1_[q] : cx.d2_[q];
        target.add_block(cx.offset_[cv.lower], cx.offset_[cv.upper], m);
    }
    return cx;
}

size_t BigradedComplex::dim(int q) const {
    return q < 0 || q >= static_cast<int>(dims_.size()) ? 0 : dims_[q];
}

const std::vector<int>& BigradedComplex::cells(int q) const {
    static const std::vector<int> empty;
    return q < 0 || q >= static_cast<int>(cells_.size()) ? empty : cells_[q];
}

Matrix BigradedComplex::d1(int q) const {
    if (q < 0 || q > n_) return Matrix(ring(), dim(q - 1), dim(q));
    return d1_[q];
}

Matrix BigradedComplex::d2(int q) const {
    if (q < 0 || q > n_) return Matrix(ring(), dim(q - 1), dim(q));
    return d2_[q];
}

Matrix BigradedComplex::d(int q) const { return d1(q) + d2(q); }

std::pair<size_t, size_t> BigradedComplex::block_range(int a, int b) const {
    auto it = ranges_.find({a, b});
    return it == ranges_.end() ? std::make_pair<size_t, size_t>(0, 0) : it->second;
}

Matrix BigradedComplex::d1_block(int a, int b) const {
    auto src = block_range(a, b);
    auto dst = block_range(a + 1, b);
    if (src.second == 0 || dst.second == 0) return Matrix(ring(), dst.second, src.second);
    return d1_[b - a].block(dst.first, src.first, dst.second, src.second);
}

Matrix BigradedComplex::d2_block(int a, int b) const {
    auto src = block_range(a, b);
    auto dst = block_range(a, b - 1);
    if (src.second == 0 || dst.second == 0) return Matrix(ring(), dst.second, src.second);
    return d2_[b - a].block(dst.first, src.first, dst.second, src.second);
}

Complex BigradedComplex::total() const {
    Complex cx{ring(), std::vector<size_t>(dims_.begin(), dims_.begin() + n_), {}};
    for (int q = 0; q <= n_; ++q) {
        Matrix m = d(q);
        if (q == n_) m = Matrix(ring(), dim(n_ - 1), 0);
        cx.d.push_back(std::move(m));
    }
    return cx;
}

SquareCheck check_squares(const BigradedComplex& cx) {
    SquareCheck s;
    for (int q = 1; q <= cx.n(); ++q) {
        Matrix a1 = cx.d1(q - 1), b1 = cx.d1(q);
        Matrix a2 = cx.d2(q - 1), b2 = cx.d2(q);
        if (a1.cols() == 0 || a1.rows() == 0 || b1.cols() == 0) continue;
        if (!(a1 * b1).is_zero()) s.d1d1 = false;
        if (!(a2 * b2).is_zero()) s.d2d2 = false;
        if (!(a1 * b2 + a2 * b1).is_zero()) s.anticommute = false;
    }
    return s;
}

Complex local_column_complex(const Cosheaf& F, int sigma_b, int p) {
    const Omega& W = F.omega();
    const Triangulation& T = F.triangulation();
    std::vector<int> cells;
    for (int a = 1; a <= T.simplex(sigma_b).dim; ++a)
        for (int s : T.faces_of(sigma_b, a)) cells.push_back(W.find(s, sigma_b));
    return sub_complex(F, cells, p, 1);
}

Complex local_row_complex(const Cosheaf& F, int sigma_a, int p) {
    const Omega& W = F.omega();
    const Triangulation& T = F.triangulation();
    std::vector<int> cells;
    for (int b = T.simplex(sigma_a).dim; b <= T.n(); ++b)
        for (int t : T.cofaces_of(sigma_a, b)) cells.push_back(W.find(sigma_a, t));
    return sub_complex(F, cells, p, 2);
}

std::string direction_name(Direction d) {
    switch (d) {
        case Direction::D1: return "d1";
        case Direction::D2: return "d2";
        case Direction::Delta1: return "delta1";
        case Direction::Delta2: return "delta2";
    }
    return "?";
}

namespace {

using Pos = std::pair<int, int>;

// One bigraded differential seen as a family of block maps X -> X + step.
struct BlockMap {
    const BigradedComplex* cx;
    int kind;  // 0 d1, 1 d2, 2 delta1, 3 delta2
    Pos step() const {
        switch (kind) {
            case 0: return {1, 0};
            case 1: return {0, -1};
            case 2: return {-1, 0};
            default: return {0, 1};
        }
    }
    Pos target(Pos x) const { return {x.first + step().first, x.second + step().second}; }
    Pos source(Pos x) const { return {x.first - step().first, x.second - step().second}; }
    Matrix at(Pos x) const {
        auto [a, b] = x;
        switch (kind) {
            case 0: return cx->d1_block(a, b);
            case 1: return cx->d2_block(a, b);
            case 2: return cx->d1_block(a - 1, b).transpose();
            default: return cx->d2_block(a, b + 1).transpose();
        }
    }
};

}  // namespace

std::vector<SpectralPage> spectral_pages(const BigradedComplex& cx, Direction dir, int up_to) {
    if (!cx.ring().is_field()) throw Error("WrongRing", "spectral pages are computed over fields only");
    const Ring R = cx.ring();
    int fk = 0, sk = 1;
    switch (dir) {
        case Direction::D1: fk = 0; sk = 1; break;
        case Direction::D2: fk = 1; sk = 0; break;
        case Direction::Delta1: fk = 2; sk = 3; break;
        case Direction::Delta2: fk = 3; sk = 2; break;
    }
    BlockMap f{&cx, fk}, s{&cx, sk};
    std::vector<Pos> grid;
    for (int a = 1; a <= cx.n(); ++a)
        for (int b = a; b <= cx.n(); ++b)
            if (cx.block_dim(a, b) > 0) grid.push_back({a, b});

    std::vector<SpectralPage> pages;
    SpectralPage e0{dir, 0, {}};
    for (Pos x : grid) e0.ranks[x] = cx.block_dim(x.first, x.second);
    pages.push_back(e0);
    if (up_to < 1) return pages;

    SpectralPage e1{dir, 1, {}};
    for (Pos x : grid) {
        size_t r = cx.block_dim(x.first, x.second) - safe_rank(f.at(x)) - safe_rank(f.at(f.source(x)));
        if (r) e1.ranks[x] = r;
    }
    pages.push_back(e1);
    if (up_to < 2) return pages;

    SpectralPage e2{dir, 2, {}};
    for (Pos x : grid) {
        const size_t dx = cx.block_dim(x.first, x.second);
        Matrix K = kernel_or_identity(f.at(x), dx, R);
        // Cycles for the page-1 differential: s z lands in im f at the target.
        Matrix sK = s.at(x) * K;
        Matrix It = f.at(f.source(s.target(x)));
        size_t rI = safe_rank(It);
        size_t dimN = K.cols();
        if (sK.rows() > 0 && K.cols() > 0) dimN -= safe_rank(Matrix::hstack({It, sK})) - rI;
        // Boundaries: im f into x plus s of f-cycles at the s-source.
        Pos y = s.source(x);
        const size_t dy = (y.first >= 1 && y.first <= y.second) ? cx.block_dim(y.first, y.second) : 0;
        Matrix Ky = kernel_or_identity(f.at(y), dy, R);
        Matrix B = Matrix::hstack({f.at(f.source(x)), s.at(y) * Ky});
        size_t r = dimN - safe_rank(B);
        if (r) e2.ranks[x] = r;
    }
    pages.push_back(e2);
    return pages;
}

}  // namespace tropdual
