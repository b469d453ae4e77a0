#include "sphroots/engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace sphroots {

namespace {

IVec primitive_direction(IVec v) {
    long long g = 0;
    for (long long x : v) {
        if (x < 0) throw std::logic_error("engine: ray with a negative coefficient");
        g = std::gcd(g, x);
    }
    if (g > 1)
        for (long long& x : v) x /= g;
    return v;
}

std::set<IVec> to_set(const std::vector<IVec>& v) { return {v.begin(), v.end()}; }

} // namespace

std::pair<SphericalDatum, AmbientEmbedding> reduce_ambient(const SphericalDatum& d) {
    const LeviDatum& ld = d.levi();
    const RootSystem& rs = ld.rs();

    std::set<int> pi0;
    for (const CWeight& w : d.psi())
        for (int i : rs.support(to_q(ld.hat(w)))) pi0.insert(i);

    std::vector<int> nodes(pi0.begin(), pi0.end());
    auto comps = identify_subdiagram(rs, nodes);

    DynkinType sub_type;
    std::vector<int> node_map;
    for (const auto& c : comps) {
        sub_type.components.push_back({c.series, c.rank});
        for (int x : c.nodes) node_map.push_back(x);
    }
    RootSystemPtr sub = RootSystem::build(sub_type, LatticeModel::SimplyConnected);

    int m = (int)node_map.size();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (sub->cartan_matrix()[i][j] != rs.cartan_matrix()[node_map[i]][node_map[j]])
                throw std::logic_error("reduce_ambient: node map breaks the Cartan matrix");

    std::vector<int> sub_levi;
    for (int i = 0; i < m; ++i)
        if (ld.in_levi(node_map[i])) sub_levi.push_back(i);
    LeviDatum sub_ld(sub, sub_levi);

    std::vector<CWeight> sub_psi;
    for (const CWeight& w : d.psi()) {
        const IVec& hat = ld.hat(w);
        IVec sub_hat(m, 0);
        for (int i = 0; i < m; ++i) sub_hat[i] = hat[node_map[i]];
        sub_psi.push_back(sub_ld.restrict(sub_hat));
    }

    std::vector<QVec> xi_gens;
    if (d.xi().rank() > 0) {
        QMat sys(m, QVec(m, Rat(0)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) sys[i][j] = Rat(sub->cartan_matrix()[i][j]);
        for (const QVec& b : d.xi().basis_vectors()) {
            // transport by matching coroot pairings on the surviving nodes
            CWeight amb = ld.from_xc_coords(b);
            QVec rhs(m);
            for (int i = 0; i < m; ++i) rhs[i] = rs.pairing(amb.rep, node_map[i]);
            auto chi = q_solve(sys, rhs);
            if (!chi) throw std::logic_error("reduce_ambient: singular sub Cartan matrix");
            xi_gens.push_back(sub_ld.xc_coords(sub_ld.restrict(*chi)));
        }
    }
    Sublattice sub_xi = Sublattice::from_generators(sub_ld.xc_rank(), xi_gens).saturate();

    SphericalDatum reduced(sub_ld, std::move(sub_xi), std::move(sub_psi));
    return {std::move(reduced), AmbientEmbedding{sub, std::move(node_map)}};
}

// ---------------------------------------------------------------------------

namespace {

struct Solver {
    const EngineOptions& opts;
    SigmaResult& result;
    std::map<std::string, std::vector<IVec>> memo;

    void trace(std::string kind, std::string detail, const std::string& before = "",
               const std::string& after = "") {
        if (opts.record_trace) result.trace.push_back({std::move(kind), std::move(detail), before, after});
    }

    std::vector<IVec> solve(const SphericalDatum& input) {
        SphericalDatum d = normalize(input);
        if (!(d.xi() == input.xi()))
            trace("normalize", "", input.fingerprint(), d.fingerprint());
        if (d.psi().empty()) return {};
        std::string key = d.fingerprint();
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;

        std::vector<IVec> rays;

        ClassPartition part = classes(d);
        if (d.psi().size() == 1) {
            rays = primitive_rays(d);
        } else if (!part.psi0.empty()) {
            std::vector<CWeight> pivots = part.psi0max;
            if (!opts.branch_all && pivots.size() > 2) pivots.resize(2);
            std::set<IVec> pool;
            for (const CWeight& lam : pivots) {
                MultDegenResult full = mult_degeneration_full(d, lam);
                ++result.base_degenerations;
                if (opts.record_trace) {
                    std::string detail = to_string(d.levi().hat(lam)) + " drops";
                    for (const IVec& h : full.dropped) detail += " " + to_string(h);
                    trace("mult", detail, key, full.datum.fingerprint());
                }
                for (const IVec& r : solve(full.datum)) pool.insert(r);
            }
            rays.assign(pool.begin(), pool.end());
        } else {
            std::vector<CWeight> pivots = d.psi();
            if (!opts.branch_all && pivots.size() > 2) pivots.resize(2);
            std::set<IVec> pool;
            for (const CWeight& lam : pivots) {
                SphericalDatum next = add_degeneration(d, lam);
                ++result.base_degenerations;
                trace("add", to_string(d.levi().hat(lam)), key, next.fingerprint());
                for (const IVec& r : solve(next)) pool.insert(r);
            }
            rays.assign(pool.begin(), pool.end());
        }

        int rank = weight_lattice(d).rank();
        if ((int)rays.size() != rank)
            throw std::logic_error("base_solve: ray count " + std::to_string(rays.size()) +
                                   " disagrees with lattice rank " + std::to_string(rank));
        memo.emplace(std::move(key), rays);
        return rays;
    }

    std::vector<IVec> primitive_rays(const SphericalDatum& d) {
        auto [reduced, emb] = reduce_ambient(d);
        trace("reduce", emb.sub->type().str());
        // the marked node is the one outside the reduced Levi
        std::vector<int> outside;
        for (int i = 0; i < reduced.rs().rank(); ++i)
            if (!reduced.levi().in_levi(i)) outside.push_back(i);
        if (outside.size() != 1)
            throw std::logic_error("primitive case: parabolic is not maximal after reduction");
        int node = outside[0];
        const IVec& lowest = reduced.levi().module_of(reduced.psi().front()).lowest;
        if (lowest != reduced.rs().simple_root(node))
            throw std::logic_error("primitive case: lowest weight is not the marked simple root");

        auto pc = active_registry().primitive_lookup(reduced.rs(), node);
        if (!pc)
            throw NotSphericalError("primitive pair (" + reduced.rs().type().str() + ", node " +
                                    std::to_string(node + 1) + ") is not in the primitive table");
        trace("primitive", "row " + std::to_string(pc->row));
        std::vector<IVec> rays;
        int amb = d.rs().rank();
        for (const IVec& v : pc->sigma) {
            IVec up(amb, 0);
            for (size_t i = 0; i < emb.node_map.size(); ++i) up[emb.node_map[i]] = v[i];
            rays.push_back(primitive_direction(std::move(up)));
        }
        return rays;
    }
};

// Map the block through an additive degeneration using the recorded line
// images; returns the block of the new datum.
std::vector<CWeight> transport_block(const SphericalDatum& before, const AddDegenResult& res,
                                     const std::vector<CWeight>& block) {
    std::vector<CWeight> image;
    for (const CWeight& mu : block) {
        const IVec& hat = before.levi().hat(mu);
        auto it = res.line_image.find(hat);
        if (it == res.line_image.end())
            throw std::logic_error("transport_block: block highest weight not in the image");
        const IVec& img = it->second;
        bool positive = !is_zero(img);
        for (long long x : img) positive = positive && x >= 0;
        if (!positive)
            throw std::logic_error("transport_block: block module degenerated away");
        CWeight nu = res.datum.levi().restrict(img);
        if (res.datum.levi().hat(nu) != img)
            throw std::logic_error("transport_block: image line is not a highest weight");
        image.push_back(nu);
    }
    std::sort(image.begin(), image.end());

    // the image must be a full SM-block of the new datum
    for (const auto& blk : sm_decomposition(res.datum)) {
        if (std::find(blk.begin(), blk.end(), image.front()) != blk.end()) {
            if (blk != image)
                throw std::logic_error("transport_block: image is not a full SM-block");
            return image;
        }
    }
    throw std::logic_error("transport_block: image block not found");
}

} // namespace

SphericalDatum hat_datum(const SphericalDatum& d, const std::vector<CWeight>& block) {
    if (d.xi().rank() != 0) throw PreconditionError("hat_datum: requires K = L");
    std::vector<CWeight> psi = block;
    for (const CWeight& w : upsilon(d, block)) psi.push_back(w);
    SphericalDatum out(d.levi(), d.xi(), std::move(psi));
    ValidationReport rep = validate(out);
    if (!rep.ok())
        throw std::logic_error("hat_datum: enveloping datum fails validation: " + rep.str());
    return out;
}

BlockPair algorithm_A(SphericalDatum d, std::vector<CWeight> block) {
    if (d.xi().rank() != 0) throw PreconditionError("algorithm_A: requires K = L");
    int count = 0;
    while (true) {
        std::vector<CWeight> ups = upsilon(d, block);
        if (ups.empty()) break;
        CWeight lam = pick_upper(d, ups);
        AddDegenResult res = add_degeneration_full(d, lam);
        block = transport_block(d, res, block);
        d = res.datum;
        ++count;
    }
    return {std::move(d), std::move(block), count};
}

BlockPair algorithm_B(SphericalDatum d, std::vector<CWeight> block) {
    if (d.xi().rank() != 0) throw PreconditionError("algorithm_B: requires K = L");
    // separation condition (#)
    for (const CWeight& mu : block)
        for (const CWeight& nu : d.psi()) {
            if (std::find(block.begin(), block.end(), nu) != block.end()) continue;
            if (d.levi().is_positive_c_root(mu - nu))
                throw PreconditionError("algorithm_B: separation condition fails");
        }
    int count = 0;
    while (true) {
        std::vector<CWeight> rest;
        for (const CWeight& w : d.psi())
            if (std::find(block.begin(), block.end(), w) == block.end()) rest.push_back(w);
        if (rest.empty()) break;
        CWeight lam = pick_upper(d, rest);
        AddDegenResult res = add_degeneration_full(d, lam);
        block = transport_block(d, res, block);
        d = res.datum;
        ++count;
    }
    return {std::move(d), std::move(block), count};
}

BlockPair algorithm_C(SphericalDatum d, std::vector<CWeight> block) {
    BlockPair a = algorithm_A(std::move(d), std::move(block));
    BlockPair b = algorithm_B(std::move(a.datum), std::move(a.block));
    b.degenerations += a.degenerations;
    return b;
}

DReduction algorithm_D(SphericalDatum d, std::vector<CWeight> block) {
    if (d.xi().rank() != 0) throw PreconditionError("algorithm_D: requires K = L");
    int count = 0;
    while (true) {
        d = hat_datum(d, block);
        std::vector<CWeight> rest;
        for (const CWeight& w : d.psi())
            if (std::find(block.begin(), block.end(), w) == block.end()) rest.push_back(w);
        if (rest.empty()) break;
        CWeight lam = pick_upper(d, rest);
        AddDegenResult res = add_degeneration_full(d, lam);
        block = transport_block(d, res, block);
        d = res.datum;
        ++count;
    }
    auto [reduced, emb] = reduce_ambient(d);
    std::vector<CWeight> sub_block;
    for (const CWeight& w : d.psi()) {
        IVec hat = d.levi().hat(w);
        IVec sub_hat(reduced.rs().rank(), 0);
        for (size_t i = 0; i < emb.node_map.size(); ++i) sub_hat[i] = hat[emb.node_map[i]];
        sub_block.push_back(reduced.levi().restrict(sub_hat));
    }
    std::sort(sub_block.begin(), sub_block.end());
    return {std::move(reduced), std::move(emb), std::move(sub_block), count};
}

SigmaResult base_solve(const SphericalDatum& d, const EngineOptions& opts) {
    SigmaResult result;
    Solver s{opts, result, {}};
    result.rays = s.solve(d);
    std::sort(result.rays.begin(), result.rays.end());
    result.rank = (int)result.rays.size();
    return result;
}

SigmaResult optimized_solve(const SphericalDatum& d, const EngineOptions& opts) {
    SphericalDatum nd = normalize(d);
    if (nd.xi().rank() != 0)
        throw PreconditionError("optimized_solve: requires K = L after normalization");
    SigmaResult result;
    if (nd.psi().empty()) return result;

    bool strongly_solvable = nd.levi().pi_L().empty();
    auto blocks = sm_decomposition(nd);
    std::set<IVec> all;
    int total = 0;
    for (const auto& block : blocks) {
        DReduction red = algorithm_D(nd, block);
        result.optimized_degenerations += red.degenerations;
        if (opts.record_trace) {
            std::string hats;
            for (const CWeight& w : block) hats += to_string(nd.levi().hat(w)) + " ";
            result.trace.push_back({"block", hats + "-> " + red.reduced.rs().type().str() + ", " +
                                                 std::to_string(red.degenerations) + " degenerations",
                                    "", ""});
        }

        SigmaResult sub = base_solve(red.reduced, opts);
        result.base_degenerations += sub.base_degenerations;
        for (auto& t : sub.trace) result.trace.push_back(std::move(t));

        BlockReport rep;
        for (const CWeight& w : block) rep.block_hats.push_back(nd.levi().hat(w));
        rep.reduced_type = red.reduced.rs().type();
        rep.node_map = red.embedding.node_map;
        rep.degenerations = red.degenerations;
        result.opt_blocks.push_back(rep);

        if (strongly_solvable && red.degenerations > 3)
            throw std::logic_error("optimized_solve: strongly solvable block used more than 3 degenerations");

        for (const IVec& r : sub.rays) {
            IVec up(nd.rs().rank(), 0);
            for (size_t i = 0; i < red.embedding.node_map.size(); ++i)
                up[red.embedding.node_map[i]] = r[i];
            up = primitive_direction(std::move(up));
            if (!all.insert(up).second)
                throw DisjointnessViolation("optimized_solve: blocks share the root " + to_string(up));
            result.rays.push_back(std::move(up));
            ++total;
        }
    }
    std::sort(result.rays.begin(), result.rays.end());
    result.rank = total;

    int p = (int)blocks.size();
    if (result.optimized_degenerations > p * total - total)
        throw std::logic_error("optimized_solve: degeneration budget exceeded");
    return result;
}

SigmaResult spherical_roots(const SphericalDatum& d, SolveMode mode, const EngineOptions& opts) {
    SigmaResult result;
    switch (mode) {
        case SolveMode::Base:
            result = base_solve(d, opts);
            break;
        case SolveMode::Optimized:
            result = optimized_solve(d, opts);
            break;
        case SolveMode::Both: {
            result = base_solve(d, opts);
            SigmaResult other = optimized_solve(d, opts);
            if (to_set(result.rays) != to_set(other.rays))
                throw ModeDisagreement("base and optimized solvers disagree");
            result.optimized_degenerations = other.optimized_degenerations;
            result.opt_blocks = std::move(other.opt_blocks);
            break;
        }
    }
    int rank = weight_lattice(normalize(d)).rank();
    if ((int)result.rays.size() != rank)
        throw std::logic_error("spherical_roots: ray count disagrees with the lattice rank");
    result.rank = rank;

    Sublattice lat = weight_lattice(d);
    for (const IVec& ray : result.rays) {
        auto rep = lat.primitive_on_ray(to_q(ray));
        if (!rep)
            throw std::logic_error("spherical_roots: ray misses the weight lattice: " + to_string(ray));
        result.roots.push_back(std::move(*rep));
    }
    return result;
}

} // namespace sphroots
