#include "sphroots/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sphroots {

namespace {

long long checked_ll(__int128 v) {
    if (v > (__int128)INT64_MAX / 2 || v < (__int128)INT64_MIN / 2)
        throw std::overflow_error("lattice: 64-bit overflow");
    return (long long)v;
}

void row_axpy(IVec& dst, const IVec& src, long long c) {
    for (size_t i = 0; i < dst.size(); ++i)
        dst[i] = checked_ll((__int128)dst[i] + (__int128)c * src[i]);
}

} // namespace

QVec mat_vec(const QMat& m, const QVec& v) {
    QVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        Rat acc;
        for (size_t j = 0; j < v.size(); ++j) acc += m[i][j] * v[j];
        r[i] = acc;
    }
    return r;
}

int q_rank(QMat m) {
    if (m.empty()) return 0;
    size_t cols = m[0].size(), row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t piv = row;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        for (size_t i = row + 1; i < m.size(); ++i) {
            if (m[i][col].is_zero()) continue;
            Rat f = m[i][col] / m[row][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
    }
    return (int)row;
}

std::optional<QVec> q_solve(QMat m, QVec rhs) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<int> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        std::swap(rhs[row], rhs[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            Rat f = m[i][col] / m[row][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
            rhs[i] -= f * rhs[row];
        }
        pivot_col.push_back((int)col);
        ++row;
    }
    for (size_t i = row; i < rows; ++i)
        if (!rhs[i].is_zero()) return std::nullopt;
    QVec x(cols, Rat(0));
    for (size_t i = 0; i < pivot_col.size(); ++i)
        x[pivot_col[i]] = rhs[i] / m[i][pivot_col[i]];
    return x;
}

QMat q_nullspace(QMat m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<int> pivot_of_col(cols, -1);
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            Rat f = m[i][col] / m[row][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_of_col[col] = (int)row;
        ++row;
    }
    QMat basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        QVec v(cols, Rat(0));
        v[free_col] = Rat(1);
        for (size_t col = 0; col < cols; ++col) {
            int p = pivot_of_col[col];
            if (p >= 0) v[col] = -(m[p][free_col] / m[p][col]);
        }
        basis.push_back(v);
    }
    return basis;
}

IMat hnf(IMat m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        // gcd the column below `row` into one pivot entry
        while (true) {
            size_t piv = rows;
            for (size_t i = row; i < rows; ++i)
                if (m[i][col] != 0 && (piv == rows ||
                    std::abs(m[i][col]) < std::abs(m[piv][col])))
                    piv = i;
            if (piv == rows) break;
            std::swap(m[row], m[piv]);
            bool clean = true;
            for (size_t i = row + 1; i < rows; ++i) {
                if (m[i][col] == 0) continue;
                long long q = m[i][col] / m[row][col];
                row_axpy(m[i], m[row], -q);
                if (m[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (row < rows && m[row][col] != 0) {
            if (m[row][col] < 0)
                for (auto& x : m[row]) x = -x;
            for (size_t i = 0; i < row; ++i) {
                long long q = m[i][col] / m[row][col];
                if (m[i][col] % m[row][col] < 0) --q; // floor division
                if (q != 0) row_axpy(m[i], m[row], -q);
            }
            ++row;
        }
    }
    m.resize(row);
    return m;
}

IMat int_kernel(const IMat& m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    if (cols == 0) return {};
    // Column-style HNF on m, tracking the unimodular column transform in u.
    IMat a = m;
    IMat u(cols, IVec(cols, 0));
    for (size_t i = 0; i < cols; ++i) u[i][i] = 1; // u rows = transform columns

    auto col_axpy = [&](size_t dst, size_t src, long long c) {
        for (size_t i = 0; i < rows; ++i)
            a[i][dst] = checked_ll((__int128)a[i][dst] + (__int128)c * a[i][src]);
        row_axpy(u[dst], u[src], c);
    };
    auto col_swap = [&](size_t x, size_t y) {
        for (size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
        std::swap(u[x], u[y]);
    };

    size_t col = 0;
    for (size_t row = 0; row < rows && col < cols; ++row) {
        while (true) {
            size_t piv = cols;
            for (size_t j = col; j < cols; ++j)
                if (a[row][j] != 0 && (piv == cols ||
                    std::abs(a[row][j]) < std::abs(a[row][piv])))
                    piv = j;
            if (piv == cols) break;
            col_swap(col, piv);
            bool clean = true;
            for (size_t j = col + 1; j < cols; ++j) {
                if (a[row][j] == 0) continue;
                col_axpy(j, col, -(a[row][j] / a[row][col]));
                if (a[row][j] != 0) clean = false;
            }
            if (clean) { ++col; break; }
        }
    }
    IMat ker;
    for (size_t j = col; j < cols; ++j) ker.push_back(u[j]);
    return hnf(std::move(ker));
}

long long content(const IMat& m) {
    long long g = 0;
    for (const auto& row : m)
        for (long long x : row) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

// ---------------------------------------------------------------------------

Sublattice Sublattice::from_generators(int ambient_rank, const std::vector<QVec>& gens) {
    Sublattice s(ambient_rank);
    if (gens.empty()) return s;
    long long lcm = 1;
    for (const auto& g : gens) {
        if ((int)g.size() != ambient_rank)
            throw std::invalid_argument("Sublattice: generator of wrong dimension");
        for (const Rat& x : g) lcm = std::lcm(lcm, x.den());
    }
    IMat rows;
    for (const auto& g : gens) {
        IVec r(ambient_rank);
        bool nz = false;
        for (int i = 0; i < ambient_rank; ++i) {
            r[i] = checked_ll((__int128)g[i].num() * (lcm / g[i].den()));
            nz = nz || r[i] != 0;
        }
        if (nz) rows.push_back(std::move(r));
    }
    rows = hnf(std::move(rows));
    if (rows.empty()) return s;
    long long c = content(rows);
    if (c > 1)
        for (auto& row : rows)
            for (auto& x : row) x /= c;
    long long g = std::gcd(c, lcm);
    s.snum_ = c / g;
    s.sden_ = lcm / g;
    s.basis_ = std::move(rows);
    return s;
}

Sublattice Sublattice::full(int ambient_rank) {
    Sublattice s(ambient_rank);
    s.basis_.assign(ambient_rank, IVec(ambient_rank, 0));
    for (int i = 0; i < ambient_rank; ++i) s.basis_[i][i] = 1;
    return s;
}

std::vector<QVec> Sublattice::basis_vectors() const {
    std::vector<QVec> out;
    Rat scale(snum_, sden_);
    for (const auto& row : basis_) out.push_back(scale * to_q(row));
    return out;
}

bool Sublattice::member(const QVec& v) const {
    if ((int)v.size() != n_) throw std::invalid_argument("Sublattice::member: bad dimension");
    // Solve x * basis = v / scale by forward elimination on HNF pivots, and
    // require integral coefficients.
    QVec w(v.size());
    Rat inv_scale(sden_, snum_);
    for (size_t i = 0; i < v.size(); ++i) w[i] = inv_scale * v[i];
    for (const auto& row : basis_) {
        int piv = 0;
        while (row[piv] == 0) ++piv;
        Rat c = w[piv] / Rat(row[piv]);
        if (!c.is_integer()) return false;
        for (int j = 0; j < n_; ++j) w[j] -= c * Rat(row[j]);
    }
    return is_zero(w);
}

bool Sublattice::in_span(const QVec& v) const {
    QVec w = v;
    for (const auto& row : basis_) {
        int piv = 0;
        while (row[piv] == 0) ++piv;
        Rat c = w[piv] / Rat(row[piv]);
        for (int j = 0; j < n_; ++j) w[j] -= c * Rat(row[j]);
    }
    return is_zero(w);
}

Sublattice Sublattice::saturate() const {
    if (basis_.empty()) return Sublattice(n_);
    // Z^n cap Q-span(B) is the integral kernel of the integral functionals
    // vanishing on span(B), which in turn form the integral kernel of B.
    IMat ker = int_kernel(basis_);
    if (ker.empty()) return full(n_);
    Sublattice s(n_);
    s.basis_ = int_kernel(ker);
    return s;
}

Sublattice Sublattice::sum(const Sublattice& other) const {
    if (n_ != other.n_) throw std::invalid_argument("Sublattice::sum: ambient mismatch");
    std::vector<QVec> gens = basis_vectors();
    for (auto& g : other.basis_vectors()) gens.push_back(g);
    return from_generators(n_, gens);
}

std::optional<QVec> Sublattice::primitive_on_ray(const QVec& direction) const {
    if (is_zero(direction)) throw std::invalid_argument("primitive_on_ray: zero direction");
    // Solve x * basis = t * direction; the admissible t form a subgroup of Q.
    QMat sys; // columns = basis rows, i.e. solve basis^T x = direction
    sys.assign(n_, QVec(basis_.size(), Rat(0)));
    for (size_t i = 0; i < basis_.size(); ++i)
        for (int j = 0; j < n_; ++j) sys[j][i] = Rat(basis_[i][j]);
    auto x0 = q_solve(sys, direction);
    if (!x0) return std::nullopt;
    // t * direction in L  <=>  t * x0 * (d/s) integral componentwise.
    Rat inv_scale(sden_, snum_);
    long long q = 1;
    for (Rat& c : *x0) { c *= inv_scale; q = std::lcm(q, c.den()); }
    long long g = 0;
    for (const Rat& c : *x0) g = std::gcd(g, checked_ll((__int128)c.num() * (q / c.den())));
    if (g == 0) return std::nullopt; // direction solves to 0: ray misses
    Rat t(q, g);
    return t * direction;
}

std::string Sublattice::str() const {
    std::string s = "(" + std::to_string(snum_) + "/" + std::to_string(sden_) + ")*";
    s += "{";
    for (size_t i = 0; i < basis_.size(); ++i) {
        if (i) s += ", ";
        s += to_string(basis_[i]);
    }
    return s + "}";
}

Sublattice preimage(const LinearMap& f, const Sublattice& s) {
    int n = f.domain_rank();
    if (s.rank() == 0) return kernel(f);
    // v in Z^n with f v = (scale) * y B for integral y:  take the integral
    // kernel of [d*F | -M^T] and project to the v block, where M = scaled basis.
    std::vector<QVec> gen_rows = s.basis_vectors();
    int m = f.codomain_rank();
    int r = (int)gen_rows.size();
    long long lcm = 1;
    for (const auto& row : f.matrix)
        for (const Rat& x : row) lcm = std::lcm(lcm, x.den());
    for (const auto& row : gen_rows)
        for (const Rat& x : row) lcm = std::lcm(lcm, x.den());
    IMat sys(m, IVec(n + r, 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j)
            sys[i][j] = f.matrix[i][j].num() * (lcm / f.matrix[i][j].den());
        for (int k = 0; k < r; ++k)
            sys[i][n + k] = -(gen_rows[k][i].num() * (lcm / gen_rows[k][i].den()));
    }
    IMat ker = int_kernel(sys);
    std::vector<QVec> gens;
    for (const auto& krow : ker) {
        QVec v(n);
        for (int j = 0; j < n; ++j) v[j] = Rat(krow[j]);
        gens.push_back(std::move(v));
    }
    return Sublattice::from_generators(n, gens);
}

Sublattice kernel(const LinearMap& f) {
    int n = f.domain_rank();
    long long lcm = 1;
    for (const auto& row : f.matrix)
        for (const Rat& x : row) lcm = std::lcm(lcm, x.den());
    IMat sys(f.codomain_rank(), IVec(n, 0));
    for (int i = 0; i < f.codomain_rank(); ++i)
        for (int j = 0; j < n; ++j)
            sys[i][j] = f.matrix[i][j].num() * (lcm / f.matrix[i][j].den());
    IMat ker = int_kernel(sys);
    std::vector<QVec> gens;
    for (const auto& krow : ker) gens.push_back(to_q(krow));
    return Sublattice::from_generators(n, gens);
}

Sublattice lattice_points_in_span(const QMat& basis, const QMat& space) {
    // x in Z^k with sum x_i basis_i in span(space): apply the functionals
    // cutting out the span (nullspace of space^T as row functionals).
    size_t dim = basis.empty() ? 0 : basis[0].size();
    QMat functionals; // rows f with f . s = 0 for all s in space
    if (space.empty()) {
        functionals.assign(dim, QVec(dim, Rat(0)));
        for (size_t i = 0; i < dim; ++i) functionals[i][i] = Rat(1);
    } else {
        functionals = q_nullspace(space);
    }
    QMat comp(functionals.size(), QVec(basis.size(), Rat(0)));
    for (size_t i = 0; i < functionals.size(); ++i)
        for (size_t k = 0; k < basis.size(); ++k) {
            Rat acc;
            for (size_t j = 0; j < dim; ++j) acc += functionals[i][j] * basis[k][j];
            comp[i][k] = acc;
        }
    LinearMap f{comp};
    if (functionals.empty()) return Sublattice::full((int)basis.size());
    return kernel(f);
}

} // namespace sphroots
