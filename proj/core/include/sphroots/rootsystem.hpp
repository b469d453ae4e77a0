#ifndef SPHROOTS_ROOTSYSTEM_HPP
#define SPHROOTS_ROOTSYSTEM_HPP

#include "sphroots/linalg.hpp"
#include "sphroots/rat.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sphroots {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct SimpleComponent {
    Series series;
    int rank;
};

/// A (possibly semisimple) Dynkin type: an ordered list of simple components
/// with concatenated node numbering, Bourbaki within each component.
struct DynkinType {
    std::vector<SimpleComponent> components;

    DynkinType() = default;
    DynkinType(Series s, int rank) : components{{s, rank}} {}

    int total_rank() const;
    bool is_simple() const { return components.size() == 1; }
    std::string str() const; // "A3", "A2xD4", ...

    static DynkinType parse(const std::string& text); // "A3", "A2xD4"
    void check() const; // rank bounds per series

    friend bool operator==(const DynkinType& a, const DynkinType& b);
    friend bool operator<(const DynkinType& a, const DynkinType& b);
};

enum class LatticeModel { SimplyConnected, Adjoint };

/// Finite root system with a chosen character lattice X(T).  Roots are kept
/// as integer coefficient vectors over the simple roots; characters as
/// rational vectors in the same coordinates (QX(T) = QPi for semisimple
/// groups).  Everything is immutable after construction.
class RootSystem {
public:
    static std::shared_ptr<const RootSystem> build(const DynkinType& type,
                                                   LatticeModel model = LatticeModel::SimplyConnected);

    const DynkinType& type() const { return type_; }
    LatticeModel lattice_model() const { return model_; }
    int rank() const { return n_; }

    const std::vector<IVec>& positive_roots() const { return positive_; }
    bool is_root(const IVec& v) const { return roots_.count(v) > 0; }
    bool is_positive_root(const IVec& v) const;

    /// Cartan pairing <chi, alpha_i^vee>.
    Rat pairing(const QVec& chi, int i) const;
    long long pairing(const IVec& chi, int i) const;

    /// <chi, delta^vee> = 2 (chi, delta) / (delta, delta) for any root delta.
    Rat coroot_pairing(const QVec& chi, const IVec& delta) const;

    /// Weyl-invariant form, short roots of squared length 2 per component.
    Rat form(const QVec& a, const QVec& b) const;
    Rat form(const IVec& a, const IVec& b) const;

    const QMat& form_matrix() const { return form_; }
    const IMat& cartan_matrix() const { return cartan_; } // cartan_[i][j] = <alpha_j, alpha_i^vee>

    /// Basis of X(T) as rows (coordinates over the simple roots).
    const QMat& char_lattice_basis() const { return xbasis_; }
    bool in_char_lattice(const QVec& chi) const;

    IVec simple_root(int i) const;

    /// Indices with strictly positive coefficient; throws on a vector outside Z+Pi.
    std::vector<int> support(const QVec& beta) const;

    struct DeltaString {
        IVec top;
        int length;   // p = <top, delta^vee>
        int position; // position of the queried root, counting from the top
    };
    /// The delta-string through gamma: top, top - delta, ..., top - p delta.
    DeltaString delta_string(const IVec& delta, const IVec& gamma) const;

    /// All graph automorphisms of the Dynkin diagram, as node permutations.
    std::vector<std::vector<int>> diagram_automorphisms() const;

    /// Component index of a node, and nodes of a component.
    int component_of(int node) const { return comp_of_[node]; }
    std::vector<int> component_nodes(int comp) const;

private:
    RootSystem() = default;

    DynkinType type_;
    LatticeModel model_ = LatticeModel::SimplyConnected;
    int n_ = 0;
    IMat cartan_;
    QMat form_;
    QMat xbasis_;
    std::vector<IVec> positive_;
    std::set<IVec> roots_; // positive and negative
    std::vector<int> comp_of_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Cartan matrix of a single Bourbaki-numbered component.
IMat bourbaki_cartan(Series s, int rank);

/// Squared lengths (alpha_i, alpha_i) with short roots at 2.
std::vector<long long> bourbaki_lengths(Series s, int rank);

/// A connected component of an induced subdiagram, recognized as a simple
/// type with its nodes listed in Bourbaki order.
struct SubdiagramComponent {
    Series series;
    int rank;
    std::vector<int> nodes; // ambient node indices, Bourbaki order
};

/// Recognize the induced subdiagram on `nodes` as a disjoint union of simple
/// types.  Components are ordered by their smallest ambient node; ties in the
/// Bourbaki numbering (A-chain direction, D-fork arms) are broken towards
/// smaller ambient indices.
std::vector<SubdiagramComponent> identify_subdiagram(const RootSystem& rs,
                                                     const std::vector<int>& nodes);

} // namespace sphroots

#endif
