#include "sphroots/degen.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sphroots {

ThetaChain theta_chain(const SphericalDatum& d, const ClassPartition& part, int omega) {
    const LeviDatum& ld = d.levi();
    ThetaChain chain;
    chain.omega_class = omega;
    chain.theta = CWeight{QVec(ld.rs().rank(), Rat(0))};

    auto is_max_class = [&](int c) { return part.in_psi0max(part.classes[c].front()); };

    if (is_max_class(omega)) {
        chain.target_class = omega;
        return chain;
    }

    struct State {
        std::vector<CWeight> set;
        std::vector<CWeight> increments;
    };
    std::deque<State> queue;
    std::set<std::vector<CWeight>> seen;
    queue.push_back({part.classes[omega], {}});
    seen.insert(part.classes[omega]);

    while (!queue.empty()) {
        State st = queue.front();
        queue.pop_front();
        for (const CWeight& nu : ld.phi_plus()) {
            std::vector<CWeight> shifted;
            bool ok = true;
            for (const CWeight& x : st.set) {
                CWeight y = x + nu;
                if (!d.psi_contains(y)) {
                    ok = false;
                    break;
                }
                shifted.push_back(y);
            }
            if (!ok) continue;
            int target = part.class_of(shifted.front());
            for (const CWeight& y : shifted)
                if (part.class_of(y) != target) {
                    ok = false;
                    break;
                }
            if (!ok || target < 0) continue;
            std::sort(shifted.begin(), shifted.end());
            if (!seen.insert(shifted).second) continue;
            State next{shifted, st.increments};
            next.increments.push_back(nu);
            if (is_max_class(target)) {
                chain.increments = next.increments;
                chain.target_class = target;
                for (const CWeight& inc : chain.increments) chain.theta = chain.theta + inc;
                return chain;
            }
            queue.push_back(std::move(next));
        }
    }
    throw NoChainError("theta_chain: no chain from class into psi0max (invalid datum)");
}

MultDegenResult mult_degeneration_full(const SphericalDatum& d, const CWeight& lambda) {
    const LeviDatum& ld = d.levi();
    ClassPartition part = classes(d);
    if (!part.in_psi0max(lambda))
        throw PreconditionError("mult_degeneration: lambda must lie in psi0max");
    if (!(normalize(d).xi() == d.xi()))
        throw PreconditionError("mult_degeneration: datum must be normalized");

    MultDegenResult out{SphericalDatum(ld, d.xi(), {}), {}, {}};

    // decide per class which element (if any) disappears
    std::set<std::vector<Rat>> dropped;
    for (size_t c = 0; c < part.classes.size(); ++c) {
        if (part.classes[c].size() < 2) continue;
        ThetaChain chain = theta_chain(d, part, (int)c);
        CWeight lost = lambda - chain.theta;
        bool type2 = false;
        for (const CWeight& x : part.classes[c])
            if (x == lost) type2 = true;
        if (type2) {
            dropped.insert(lost.rep);
            out.dropped.push_back(ld.hat(lost));
        }
        out.chains.push_back(std::move(chain));
    }

    std::vector<CWeight> new_psi;
    for (const CWeight& w : d.psi())
        if (!dropped.count(w.rep)) new_psi.push_back(w);

    // Xi_infty: same-class differences inside psi0max \ {lambda}
    std::vector<QVec> gens;
    for (const auto& cls : part.classes) {
        std::vector<CWeight> kept;
        for (const CWeight& w : cls)
            if (part.in_psi0max(w) && !(w == lambda)) kept.push_back(w);
        for (size_t i = 1; i < kept.size(); ++i)
            gens.push_back(ld.xc_coords(kept[i] - kept[0]));
    }
    Sublattice xi = Sublattice::from_generators(ld.xc_rank(), gens).saturate();
    out.datum = SphericalDatum(ld, std::move(xi), std::move(new_psi));
    return out;
}

SphericalDatum mult_degeneration(const SphericalDatum& d, const CWeight& lambda) {
    return mult_degeneration_full(d, lambda).datum;
}

StringOccupancy press_left(const StringOccupancy& s) {
    StringOccupancy out;
    out.top = s.top;
    out.p = s.p;
    int k = (int)s.occupied.size();
    for (int i = 0; i < k; ++i) out.occupied.push_back(s.p - k + 1 + i);
    return out;
}

AddDegenResult add_degeneration_full(const SphericalDatum& d, const CWeight& lambda) {
    const LeviDatum& ld = d.levi();
    const RootSystem& rs = ld.rs();
    int n = rs.rank();

    if (!d.psi_contains(lambda))
        throw PreconditionError("add_degeneration: lambda must be active");
    if (d.xi().rank() != 0)
        throw PreconditionError("add_degeneration: requires K = L (xi = 0)");
    {
        ClassPartition part = classes(d);
        if (!part.psi0.empty())
            throw PreconditionError("add_degeneration: requires psi0 empty");
    }

    IVec delta = ld.hat(lambda);

    // new Levi: the part of Pi_L orthogonal to delta
    std::vector<int> pi_M;
    for (int a : ld.pi_L())
        if (rs.form(rs.simple_root(a), delta).is_zero()) pi_M.push_back(a);

    auto occupied_line = [&](const IVec& r) {
        bool positive = true, negative = true;
        for (long long x : r) {
            if (x > 0) negative = false;
            if (x < 0) positive = false;
        }
        if (negative) {
            IVec neg(n);
            for (int i = 0; i < n; ++i) neg[i] = -r[i];
            return !ld.levi_root(neg); // p_u lines
        }
        if (positive) return d.psi_contains(ld.restrict(r));
        return false;
    };

    // enumerate delta-strings over their tops
    std::vector<IVec> all_roots(rs.positive_roots());
    for (const IVec& b : rs.positive_roots()) {
        IVec neg(n);
        for (int i = 0; i < n; ++i) neg[i] = -b[i];
        all_roots.push_back(neg);
    }

    IVec neg_delta(n);
    for (int i = 0; i < n; ++i) neg_delta[i] = -delta[i];

    std::map<IVec, IVec> line_image;
    std::vector<IVec> image_negative, image_positive;
    bool image_toral = false;

    for (const IVec& top : all_roots) {
        if (top == neg_delta) continue;
        if (rs.is_root(top + delta)) continue; // not a top
        Rat pq = rs.coroot_pairing(to_q(top), delta);
        int p = (int)pq.to_int();
        bool is_delta_string = top == delta;

        StringOccupancy occ;
        occ.top = top;
        occ.p = p;
        std::vector<IVec> lines(p + 1);
        for (int j = 0; j <= p; ++j) {
            IVec r = top;
            for (int i = 0; i < n; ++i) r[i] -= (long long)j * delta[i];
            lines[j] = r;
            bool toral = is_delta_string && j == 1;
            if (!toral && occupied_line(r)) occ.occupied.push_back(j);
        }
        if (occ.occupied.empty()) continue;
        StringOccupancy pressed = press_left(occ);

        for (size_t i = 0; i < occ.occupied.size(); ++i) {
            const IVec& src = lines[occ.occupied[i]];
            int dst_pos = pressed.occupied[i];
            bool dst_toral = is_delta_string && dst_pos == 1;
            IVec dst = dst_toral ? IVec(n, 0) : lines[dst_pos];
            bool src_positive = true;
            for (long long x : src) src_positive = src_positive && x >= 0;
            if (src_positive) line_image[src] = dst;
            if (dst_toral) {
                image_toral = true;
                continue;
            }
            bool dst_positive = true;
            for (long long x : dst) dst_positive = dst_positive && x >= 0;
            (dst_positive ? image_positive : image_negative).push_back(dst);
        }
    }

    // postconditions from the structure theory: the negative side of the image
    // is exactly p_u plus the lines over Levi roots non-orthogonal to delta,
    // and the toral line h_delta is present
    {
        std::set<IVec> got(image_negative.begin(), image_negative.end());
        std::set<IVec> want;
        for (const IVec& b : rs.positive_roots()) {
            bool in_pu = !ld.levi_root(b);
            bool in_qu = ld.levi_root(b) && !rs.form(b, delta).is_zero();
            if (in_pu || in_qu) {
                IVec neg(n);
                for (int i = 0; i < n; ++i) neg[i] = -b[i];
                want.insert(neg);
            }
        }
        if (got != want)
            throw std::logic_error("add_degeneration: negative image violates the structure theory");
        if (!image_toral)
            throw std::logic_error("add_degeneration: toral line h_delta missing from the image");
    }
    for (const IVec& r : image_positive)
        if (ld.levi_root(r))
            throw std::logic_error("add_degeneration: positive Levi line in the image");

    // assemble the new datum over the Levi Pi_M
    LeviDatum new_levi(ld.rs_ptr(), pi_M);
    std::set<CWeight> new_psi_set;
    std::set<IVec> u_inf(image_positive.begin(), image_positive.end());
    for (const IVec& r : image_positive) new_psi_set.insert(new_levi.restrict(r));
    for (const CWeight& w : new_psi_set) {
        for (const IVec& f : new_levi.module_of(w).fiber) {
            bool positive = true;
            for (long long x : f) positive = positive && x >= 0;
            if (positive && !u_inf.count(f))
                throw std::logic_error("add_degeneration: image is not M-stable");
        }
    }

    Sublattice new_xi = Sublattice::zero(new_levi.xc_rank());
    std::vector<CWeight> new_psi(new_psi_set.begin(), new_psi_set.end());
    AddDegenResult out{SphericalDatum(std::move(new_levi), std::move(new_xi), std::move(new_psi)),
                       delta, std::move(line_image)};

    // the additive result always has singleton classes
    ClassPartition post = classes(out.datum);
    if (!post.psi0.empty())
        throw std::logic_error("add_degeneration: result has a non-singleton class");
    return out;
}

SphericalDatum add_degeneration(const SphericalDatum& d, const CWeight& lambda) {
    return add_degeneration_full(d, lambda).datum;
}

} // namespace sphroots
