#ifndef SPHROOTS_LEVI_HPP
#define SPHROOTS_LEVI_HPP

#include "sphroots/lattice.hpp"
#include "sphroots/rootsystem.hpp"

#include <map>
#include <vector>

namespace sphroots {

/// A weight of the connected center C of a standard Levi subgroup, held as
/// its canonical representative: the projection of an X(T)-vector along QPi_L
/// onto the form-orthocomplement of QPi_L.  Two characters restrict equally
/// to C iff their canonical representatives coincide, and the ambient form
/// restricted to these representatives is the transferred inner product on
/// QX(C).
struct CWeight {
    QVec rep;

    friend bool operator==(const CWeight& a, const CWeight& b) { return a.rep == b.rep; }
    friend bool operator!=(const CWeight& a, const CWeight& b) { return !(a == b); }
    friend bool operator<(const CWeight& a, const CWeight& b);

    CWeight operator+(const CWeight& o) const { return {rep + o.rep}; }
    CWeight operator-(const CWeight& o) const { return {rep - o.rep}; }
    CWeight operator-() const { return {Rat(-1) * rep}; }
    bool is_zero() const { return sphroots::is_zero(rep); }
};

/// The weight space g(lambda) for a C-root lambda: the fiber of the
/// restriction map over lambda, which is a simple L-module.
struct CModule {
    CWeight lambda;
    std::vector<IVec> fiber; // roots restricting to lambda, sorted
    IVec highest;            // Pi_L-maximal fiber element (lambda-hat)
    IVec lowest;
    int dim() const { return (int)fiber.size(); }
};

/// A standard Levi subgroup L of the ambient group: the root system together
/// with the subset Pi_L of simple roots.  Construction precomputes the
/// C-root decomposition of the nilradical side and the integral model of
/// X(C) as the image of X(T) under the canonical projection.
class LeviDatum {
public:
    LeviDatum(RootSystemPtr rs, std::vector<int> pi_L);

    const RootSystem& rs() const { return *rs_; }
    RootSystemPtr rs_ptr() const { return rs_; }
    const std::vector<int>& pi_L() const { return pi_L_; }
    bool in_levi(int node) const { return in_levi_[node]; }
    bool levi_root(const IVec& root) const;

    CWeight restrict(const QVec& chi) const;
    CWeight restrict(const IVec& chi) const { return restrict(to_q(chi)); }

    /// Fibers of the restriction over Delta \ Delta_L, keyed by C-root.
    const std::map<CWeight, CModule>& c_roots() const { return fibers_; }
    /// Positive C-roots Phi^+ in a fixed order.
    const std::vector<CWeight>& phi_plus() const { return phi_plus_; }
    bool is_c_root(const CWeight& w) const { return fibers_.count(w) > 0; }
    bool is_positive_c_root(const CWeight& w) const;

    const CModule& module_of(const CWeight& w) const;
    /// Highest weight of g(lambda); throws if lambda is not a C-root.
    const IVec& hat(const CWeight& lambda) const { return module_of(lambda).highest; }

    /// Transferred inner product on QX(C).
    Rat c_form(const CWeight& a, const CWeight& b) const { return rs_->form(a.rep, b.rep); }

    /// Basis of the integral model of X(C) (rows, ambient coordinates).
    const QMat& xc_basis() const { return xc_basis_; }
    int xc_rank() const { return (int)xc_basis_.size(); }

    /// Coordinates of a CWeight over the X(C) basis; integral for weights
    /// coming from X(T).
    QVec xc_coords(const CWeight& w) const;
    CWeight from_xc_coords(const QVec& coords) const;

    friend bool operator==(const LeviDatum& a, const LeviDatum& b) {
        return a.rs_ == b.rs_ && a.pi_L_ == b.pi_L_;
    }

private:
    RootSystemPtr rs_;
    std::vector<int> pi_L_;
    std::vector<bool> in_levi_;
    QMat proj_;    // projection onto the orthocomplement of QPi_L
    QMat xc_basis_;
    std::map<CWeight, CModule> fibers_;
    std::vector<CWeight> phi_plus_;
};

} // namespace sphroots

#endif
