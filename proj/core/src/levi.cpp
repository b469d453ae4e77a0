#include "sphroots/levi.hpp"

#include <algorithm>
#include <stdexcept>

namespace sphroots {

bool operator<(const CWeight& a, const CWeight& b) {
    for (size_t i = 0; i < a.rep.size(); ++i) {
        if (a.rep[i] != b.rep[i]) return a.rep[i] < b.rep[i];
    }
    return false;
}

LeviDatum::LeviDatum(RootSystemPtr rs, std::vector<int> pi_L)
    : rs_(std::move(rs)), pi_L_(std::move(pi_L)) {
    int n = rs_->rank();
    std::sort(pi_L_.begin(), pi_L_.end());
    in_levi_.assign(n, false);
    for (int i : pi_L_) {
        if (i < 0 || i >= n) throw std::invalid_argument("LeviDatum: node out of range");
        in_levi_[i] = true;
    }

    // Projection along QPi_L onto its form-orthocomplement: subtract the
    // combination of Levi simple roots with matching Levi-form products.
    int k = (int)pi_L_.size();
    proj_.assign(n, QVec(n, Rat(0)));
    for (int i = 0; i < n; ++i) proj_[i][i] = Rat(1);
    if (k > 0) {
        QMat gram(k, QVec(k, Rat(0)));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                gram[a][b] = rs_->form_matrix()[pi_L_[a]][pi_L_[b]];
        for (int j = 0; j < n; ++j) {
            QVec rhs(k);
            for (int a = 0; a < k; ++a) rhs[a] = rs_->form_matrix()[pi_L_[a]][j];
            auto coeffs = q_solve(gram, rhs);
            if (!coeffs) throw std::logic_error("LeviDatum: degenerate Levi Gram matrix");
            for (int a = 0; a < k; ++a) proj_[pi_L_[a]][j] -= (*coeffs)[a];
        }
    }

    // Integral model of X(C): the image of X(T) under the projection.
    {
        std::vector<QVec> images;
        for (const QVec& w : rs_->char_lattice_basis()) images.push_back(mat_vec(proj_, w));
        Sublattice img = Sublattice::from_generators(n, images);
        for (const QVec& b : img.basis_vectors()) xc_basis_.push_back(b);
    }

    // Fibers of the restriction over Delta \ Delta_L.
    for (const IVec& beta : rs_->positive_roots()) {
        if (levi_root(beta)) continue;
        IVec neg(n);
        for (int i = 0; i < n; ++i) neg[i] = -beta[i];
        for (const IVec& root : {beta, neg}) {
            CWeight w = restrict(root);
            fibers_[w].fiber.push_back(root);
        }
    }
    for (auto& [w, mod] : fibers_) {
        mod.lambda = w;
        std::sort(mod.fiber.begin(), mod.fiber.end());
        int highest = -1, lowest = -1;
        for (size_t i = 0; i < mod.fiber.size(); ++i) {
            bool is_high = true, is_low = true;
            for (int a : pi_L_) {
                IVec up = mod.fiber[i] + rs_->simple_root(a);
                IVec down = mod.fiber[i] - rs_->simple_root(a);
                if (rs_->is_root(up)) is_high = false;
                if (rs_->is_root(down)) is_low = false;
            }
            if (is_high) {
                if (highest >= 0) throw std::logic_error("LeviDatum: fiber with two highest weights");
                highest = (int)i;
            }
            if (is_low) {
                if (lowest >= 0) throw std::logic_error("LeviDatum: fiber with two lowest weights");
                lowest = (int)i;
            }
        }
        if (highest < 0 || lowest < 0) throw std::logic_error("LeviDatum: fiber without extreme weight");
        mod.highest = mod.fiber[highest];
        mod.lowest = mod.fiber[lowest];
    }
    for (const auto& [w, mod] : fibers_) {
        bool positive = true;
        for (long long x : mod.fiber.front())
            if (x < 0) positive = false;
        if (positive) phi_plus_.push_back(w);
    }
}

bool LeviDatum::levi_root(const IVec& root) const {
    for (int i = 0; i < rs_->rank(); ++i)
        if (root[i] != 0 && !in_levi_[i]) return false;
    return true;
}

CWeight LeviDatum::restrict(const QVec& chi) const { return CWeight{mat_vec(proj_, chi)}; }

bool LeviDatum::is_positive_c_root(const CWeight& w) const {
    auto it = fibers_.find(w);
    if (it == fibers_.end()) return false;
    for (long long x : it->second.fiber.front())
        if (x < 0) return false;
    return true;
}

const CModule& LeviDatum::module_of(const CWeight& w) const {
    auto it = fibers_.find(w);
    if (it == fibers_.end())
        throw std::invalid_argument("LeviDatum: not a C-root: " + to_string(w.rep));
    return it->second;
}

QVec LeviDatum::xc_coords(const CWeight& w) const {
    int n = rs_->rank();
    QMat sys(n, QVec(xc_basis_.size(), Rat(0)));
    for (size_t i = 0; i < xc_basis_.size(); ++i)
        for (int j = 0; j < n; ++j) sys[j][i] = xc_basis_[i][j];
    auto x = q_solve(sys, w.rep);
    if (!x) throw std::invalid_argument("LeviDatum: weight outside QX(C)");
    return *x;
}

CWeight LeviDatum::from_xc_coords(const QVec& coords) const {
    QVec v(rs_->rank(), Rat(0));
    for (size_t i = 0; i < xc_basis_.size(); ++i)
        for (int j = 0; j < rs_->rank(); ++j) v[j] += coords[i] * xc_basis_[i][j];
    return CWeight{v};
}

} // namespace sphroots
