#ifndef SPHROOTS_ENGINE_HPP
#define SPHROOTS_ENGINE_HPP

#include "sphroots/degen.hpp"
#include "sphroots/subgroup.hpp"

#include <string>
#include <vector>

namespace sphroots {

struct TraceStep {
    std::string kind;   // normalize | mult | add | reduce | primitive | hat | block
    std::string detail;
    std::string before;
    std::string after;
};

struct AmbientEmbedding {
    RootSystemPtr sub;
    std::vector<int> node_map; // sub node -> ambient node
};

struct BlockReport {
    std::vector<IVec> block_hats; // over the input system's Pi
    DynkinType reduced_type;
    std::vector<int> node_map;
    int degenerations = 0;
};

struct SigmaResult {
    std::vector<IVec> rays;  // primitive integer directions over the input Pi
    std::vector<QVec> roots; // primitive lattice representatives (top level only)
    int rank = 0;
    int base_degenerations = 0;
    int optimized_degenerations = 0;
    std::vector<BlockReport> opt_blocks;
    std::vector<TraceStep> trace;
};

enum class SolveMode { Base, Optimized, Both };

struct EngineOptions {
    bool branch_all = true; // false: branch on two pivots only
    bool record_trace = false;
};

/// Pass to the derived subgroup of the standard Levi generated by the union
/// of the psi supports; preserves the spherical roots.  Requires a
/// normalized datum.
std::pair<SphericalDatum, AmbientEmbedding> reduce_ambient(const SphericalDatum& d);

/// The recursive base algorithm: normalize, split off one spherical root per
/// one-parameter degeneration, finish at primitive cases.
SigmaResult base_solve(const SphericalDatum& d, const EngineOptions& opts = {});

/// Per-SM-block reduction (Algorithm D) followed by base solving of each
/// reduced pair; requires K = L after normalization.
SigmaResult optimized_solve(const SphericalDatum& d, const EngineOptions& opts = {});

/// Rays from the chosen solver resolved to primitive representatives in the
/// weight lattice of the original datum.
SigmaResult spherical_roots(const SphericalDatum& d, SolveMode mode,
                            const EngineOptions& opts = {});

struct BlockPair {
    SphericalDatum datum;
    std::vector<CWeight> block;
    int degenerations = 0;
};

/// Degenerate along upper elements of Upsilon until it is empty.
BlockPair algorithm_A(SphericalDatum d, std::vector<CWeight> block);
/// Degenerate along upper elements of psi \ block until psi equals the block;
/// requires the separation condition (no psi-difference into the block).
BlockPair algorithm_B(SphericalDatum d, std::vector<CWeight> block);
/// Algorithm A followed by Algorithm B.
BlockPair algorithm_C(SphericalDatum d, std::vector<CWeight> block);

/// Replace psi by block + Upsilon (the enveloping subgroup of the block).
SphericalDatum hat_datum(const SphericalDatum& d, const std::vector<CWeight>& block);

struct DReduction {
    SphericalDatum reduced;
    AmbientEmbedding embedding;
    std::vector<CWeight> block; // in the reduced datum
    int degenerations = 0;
};

/// The shortened per-block pipeline: iterate (hat; one A-step) until Upsilon
/// is empty, then reduce the ambient group.
DReduction algorithm_D(SphericalDatum d, std::vector<CWeight> block);

} // namespace sphroots

#endif
