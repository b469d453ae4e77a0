#ifndef SPHROOTS_LATTICE_HPP
#define SPHROOTS_LATTICE_HPP

#include "sphroots/linalg.hpp"
#include "sphroots/rat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sphroots {

/// A finitely generated subgroup of Q^n, held in a canonical form: the
/// subgroup is (s/d) * rowspan_Z(B) with B in Hermite normal form of content 1
/// and gcd(s, d) = 1.  Two Sublattices are equal iff their canonical forms
/// match, which makes equality, hashing and memoization exact.
class Sublattice {
public:
    Sublattice() : n_(0), snum_(1), sden_(1) {}
    explicit Sublattice(int ambient_rank) : n_(ambient_rank), snum_(1), sden_(1) {}

    static Sublattice from_generators(int ambient_rank, const std::vector<QVec>& gens);
    static Sublattice full(int ambient_rank);
    static Sublattice zero(int ambient_rank) { return Sublattice(ambient_rank); }

    int ambient_rank() const { return n_; }
    int rank() const { return (int)basis_.size(); }

    /// Basis vectors as rational rows (scale applied).
    std::vector<QVec> basis_vectors() const;

    bool member(const QVec& v) const;
    bool member(const IVec& v) const { return member(to_q(v)); }

    /// Q-span membership (ignores the integral structure).
    bool in_span(const QVec& v) const;

    /// QL intersected with Z^n.
    Sublattice saturate() const;

    Sublattice sum(const Sublattice& other) const;

    /// Shortest nonzero element on the ray Q+ * direction; empty if the ray
    /// misses the lattice.
    std::optional<QVec> primitive_on_ray(const QVec& direction) const;

    friend bool operator==(const Sublattice& a, const Sublattice& b) {
        return a.n_ == b.n_ && a.snum_ == b.snum_ && a.sden_ == b.sden_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Sublattice& a, const Sublattice& b) { return !(a == b); }

    std::string str() const;

private:
    int n_;
    long long snum_, sden_; // scale s/d applied to the integer basis
    IMat basis_;            // HNF, content 1
};

/// Rational linear map Z^n -> Z^m given by an m x n matrix.
struct LinearMap {
    QMat matrix; // m rows of length n
    int domain_rank() const { return matrix.empty() ? 0 : (int)matrix[0].size(); }
    int codomain_rank() const { return (int)matrix.size(); }

    QVec apply(const QVec& v) const { return mat_vec(matrix, v); }
};

/// {v in Z^n : f(v) in s}.
Sublattice preimage(const LinearMap& f, const Sublattice& s);

/// Integral kernel of f.
Sublattice kernel(const LinearMap& f);

/// {x in Z^n : sum x_i b_i lies in the Q-span of `space`} where b_i are the
/// rows of `basis`; used to intersect a character lattice with a rational
/// subspace.
Sublattice lattice_points_in_span(const QMat& basis, const QMat& space);

} // namespace sphroots

#endif
