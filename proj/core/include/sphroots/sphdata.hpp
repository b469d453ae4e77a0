#ifndef SPHROOTS_SPHDATA_HPP
#define SPHROOTS_SPHDATA_HPP

#include "sphroots/errors.hpp"
#include "sphroots/lattice.hpp"
#include "sphroots/levi.hpp"
#include "sphroots/rootsystem.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sphroots {

/// One summand of the K-module attached to a spherical datum: the weight
/// space g(lambda) of a class representative, as plain root combinatorics.
struct ModuleSummand {
    CWeight lambda;
    std::vector<IVec> fiber;
    IVec hat;
};

/// The K-module p_u/h_u in combinatorial form.  K = D^0 L' where D is cut
/// out of the connected center by the lattice xi (X(C)-model coordinates).
struct SphericalModuleDescriptor {
    const LeviDatum* levi = nullptr;
    std::vector<ModuleSummand> summands;
    Sublattice xi;
};

/// Static classification data: the simple spherical modules with their free
/// weight-monoid generators, the handful of shared-factor sums needed here,
/// and the primitive-case table.  Loaded from a structured text file; a
/// byte-identical copy of that file is compiled in as the default.
class Registry {
public:
    static const Registry& builtin();
    static std::shared_ptr<const Registry> load_file(const std::string& path);
    static std::shared_ptr<const Registry> parse(const std::string& text);

    /// True/false per the classification; throws UnknownModuleError when the
    /// descriptor is outside the shipped coverage (distinct from false).
    bool is_spherical(const SphericalModuleDescriptor& d, std::string* why = nullptr) const;

    /// Lifts to X(T) of the free generators of the weight monoid, one list
    /// entry per generator.  Requires is_spherical(d).
    std::vector<QVec> free_generators(const SphericalModuleDescriptor& d) const;

    /// A free generator together with its restriction: the pairings against
    /// the Levi coroots followed by the X(C)-model coordinates of the central
    /// part (equality of restrictions is meant modulo the xi lattice).
    struct FreeGenerator {
        QVec lift;
        QVec image;
    };
    std::vector<FreeGenerator> free_generators_with_images(const SphericalModuleDescriptor& d) const;

    struct PrimitiveCase {
        int row = 0;
        DynkinType g;
        int node = 0; // 0-based marked node in g
        int rk = 0;
        std::vector<IVec> sigma; // coefficient vectors over Pi of g
    };

    /// Match (g, node) against the primitive table, trying every diagram
    /// automorphism; nullopt certifies the primitive pair is not spherical.
    std::optional<PrimitiveCase> primitive_lookup(const RootSystem& g, int node) const;

    struct Table2Row {
        int id;
        Series series;
        std::string node_expr; // "k" matches any node; otherwise fixed expression in l
        std::string cond_expr; // nonzero <=> admissible; may be empty
        std::string rk_expr;
        std::vector<std::string> sigma_lines;
        std::string source;
    };
    const std::vector<Table2Row>& table2() const { return table2_; }

    struct GenSpec {
        std::string guard;                // include iff eval > 0; empty = always
        std::string loop_var;             // empty if not a loop
        std::string loop_lo, loop_hi;
        std::vector<std::string> a_exprs; // one per summand
        std::vector<std::string> targets; // one per factor: "zero", "fw(E)", "fw(E)+fw(E)", "2fw(E)", "fwnode(E)", "fwmirror"
    };
    struct ModuleRow {
        std::string shape;
        std::vector<GenSpec> extras;
        std::string source;
    };
    const ModuleRow* module_row(const std::string& shape) const;

private:
    Registry() = default;
    std::vector<Table2Row> table2_;
    std::vector<ModuleRow> modules_;
};

const Registry& active_registry();
void set_active_registry(std::shared_ptr<const Registry> reg);

/// Text of the default data file (kept byte-identical to core/data/sphdata.txt).
extern const char* const kDefaultRegistryText;

} // namespace sphroots

#endif
