#ifndef SPHROOTS_IO_HPP
#define SPHROOTS_IO_HPP

#include "sphroots/engine.hpp"
#include "sphroots/subgroup.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sphroots {

/// Parsed form of a datum description file.
///
///   group A 3            one or more simple components
///   lattice sc           sc | adjoint (optional, default sc)
///   levi 2               1-based node indices (optional)
///   psi 1 1 0            fiber representative, coefficients over Pi
///   xi 1/2 0 -1/2        rational X(T) vector over Pi
///   xi diff 1 2          difference of the i-th and j-th psi lifts
struct DatumFile {
    DynkinType group;
    LatticeModel model = LatticeModel::SimplyConnected;
    std::vector<int> levi; // 0-based
    std::vector<IVec> psi;
    struct XiEntry {
        bool is_diff = false;
        int i = 0, j = 0; // 0-based psi indices for diff entries
        QVec vec;
    };
    std::vector<XiEntry> xi;
};

DatumFile parse_datum_file(std::istream& in); // throws ParseError
DatumFile parse_datum_file(const std::string& text);
std::string serialize_datum(const DatumFile& f);

/// Build the datum; file-level problems (non-root psi entries, xi outside
/// X(T)) throw ParseError.  The xi generators are saturated on load.
SphericalDatum build_datum(const DatumFile& f);

struct ResultFile {
    std::string status = "ok";
    std::string detail;
    DynkinType group;
    LatticeModel model = LatticeModel::SimplyConnected;
    std::string algorithm;
    int rank = 0;
    std::vector<QVec> spherical_roots;
    std::vector<QVec> lattice_basis;
    int degenerations_base = 0;
    int degenerations_optimized = 0;
    std::vector<std::string> trace;
    long long timing_ms = 0;
};

std::string serialize_result(const ResultFile& r);

} // namespace sphroots

#endif
