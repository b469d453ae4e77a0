#include "sphroots/subgroup.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sphroots {

SphericalDatum::SphericalDatum(LeviDatum ld, Sublattice xi, std::vector<CWeight> psi)
    : ld_(std::move(ld)), xi_(std::move(xi)), psi_(std::move(psi)) {
    std::sort(psi_.begin(), psi_.end());
    psi_.erase(std::unique(psi_.begin(), psi_.end()), psi_.end());
    if (xi_.ambient_rank() != ld_.xc_rank())
        throw std::invalid_argument("SphericalDatum: xi lives in the wrong ambient lattice");
}

bool SphericalDatum::psi_contains(const CWeight& w) const {
    return std::binary_search(psi_.begin(), psi_.end(), w);
}

std::string SphericalDatum::fingerprint() const {
    std::ostringstream out;
    out << ld_.rs().type().str() << "|L";
    for (int i : ld_.pi_L()) out << i << ",";
    out << "|X" << xi_.str() << "|P";
    for (const CWeight& w : psi_) out << to_string(ld_.hat(w)) << ";";
    return out.str();
}

int ClassPartition::class_of(const CWeight& w) const {
    for (size_t i = 0; i < classes.size(); ++i)
        for (const CWeight& x : classes[i])
            if (x == w) return (int)i;
    return -1;
}

bool ClassPartition::in_psi0max(const CWeight& w) const {
    for (const CWeight& x : psi0max)
        if (x == w) return true;
    return false;
}

std::string ValidationReport::str() const {
    std::string s;
    for (const auto& v : violations) s += v + "\n";
    if (not_spherical) s += "not spherical: " + not_spherical_reason + "\n";
    if (unknown_module) s += "unknown module: " + unknown_reason + "\n";
    return s;
}

ClassPartition classes(const SphericalDatum& d) {
    const LeviDatum& ld = d.levi();
    const auto& psi = d.psi();
    int n = (int)psi.size();
    std::vector<int> owner(n, -1);
    ClassPartition part;

    auto equivalent = [&](const CWeight& a, const CWeight& b) {
        const IVec& ha = ld.hat(a);
        const IVec& hb = ld.hat(b);
        for (int i : ld.pi_L())
            if (ld.rs().pairing(ha, i) != ld.rs().pairing(hb, i)) return false;
        QVec diff = ld.xc_coords(a - b);
        return d.xi().member(diff);
    };

    for (int i = 0; i < n; ++i) {
        if (owner[i] >= 0) continue;
        owner[i] = (int)part.classes.size();
        part.classes.push_back({psi[i]});
        for (int j = i + 1; j < n; ++j) {
            if (owner[j] >= 0) continue;
            if (equivalent(psi[i], psi[j])) {
                owner[j] = owner[i];
                part.classes[owner[i]].push_back(psi[j]);
            }
        }
    }
    for (auto& cls : part.classes) std::sort(cls.begin(), cls.end());

    for (const auto& cls : part.classes)
        if (cls.size() >= 2)
            for (const CWeight& w : cls) part.psi0.push_back(w);
    std::sort(part.psi0.begin(), part.psi0.end());

    for (const CWeight& lam : part.psi0) {
        bool maximal = true;
        for (const CWeight& mu : ld.phi_plus()) {
            if (d.psi_contains(lam + mu)) {
                maximal = false;
                break;
            }
        }
        if (maximal) part.psi0max.push_back(lam);
    }
    return part;
}

SphericalModuleDescriptor module_descriptor(const SphericalDatum& d, const ClassPartition& part) {
    SphericalModuleDescriptor md;
    md.levi = &d.levi();
    md.xi = d.xi();
    for (const auto& cls : part.classes) {
        const CModule& mod = d.levi().module_of(cls.front());
        ModuleSummand s;
        s.lambda = cls.front();
        s.fiber = mod.fiber;
        s.hat = mod.highest;
        md.summands.push_back(std::move(s));
    }
    return md;
}

ValidationReport validate(const SphericalDatum& d) {
    ValidationReport rep;
    const LeviDatum& ld = d.levi();

    for (const CWeight& w : d.psi())
        if (!ld.is_positive_c_root(w))
            rep.violations.push_back("psi element is not a positive C-root: " + to_string(w.rep));
    if (!rep.violations.empty()) return rep;

    if (d.xi() != d.xi().saturate())
        rep.violations.push_back("xi is not saturated");

    // closure: every Phi^+ decomposition of an active root has an active part
    for (const CWeight& lam : d.psi()) {
        for (const CWeight& mu : ld.phi_plus()) {
            CWeight nu = lam - mu;
            if (mu == lam || !ld.is_positive_c_root(nu)) continue;
            if (!d.psi_contains(mu) && !d.psi_contains(nu)) {
                rep.violations.push_back("closure fails: " + to_string(ld.hat(lam)) +
                                         " decomposes with no active part");
                break;
            }
        }
    }

    ClassPartition part = classes(d);
    for (const auto& cls : part.classes)
        for (size_t i = 0; i < cls.size(); ++i)
            for (size_t j = i + 1; j < cls.size(); ++j) {
                CWeight diff = cls[i] - cls[j];
                if (ld.is_c_root(diff) || ld.is_c_root(-diff))
                    rep.violations.push_back("equivalent C-roots differ by a C-root");
            }

    // psi0max must be a union of complete classes
    for (const auto& cls : part.classes) {
        if (cls.size() < 2) continue;
        int inside = 0;
        for (const CWeight& w : cls)
            if (part.in_psi0max(w)) ++inside;
        if (inside != 0 && inside != (int)cls.size())
            rep.violations.push_back("psi0max splits a class");
    }

    if (!rep.violations.empty()) return rep;

    std::string why;
    try {
        if (!active_registry().is_spherical(module_descriptor(d, part), &why)) {
            rep.not_spherical = true;
            rep.not_spherical_reason = why;
        }
    } catch (const UnknownModuleError& e) {
        rep.unknown_module = true;
        rep.unknown_reason = e.what();
    }
    return rep;
}

SphericalDatum normalize(const SphericalDatum& d) {
    ClassPartition part = classes(d);
    std::vector<QVec> gens;
    for (const auto& cls : part.classes) {
        if (cls.size() < 2) continue;
        bool in_max = part.in_psi0max(cls.front());
        if (!in_max) continue;
        for (size_t i = 1; i < cls.size(); ++i)
            gens.push_back(d.levi().xc_coords(cls[i] - cls[0]));
    }
    Sublattice xi = Sublattice::from_generators(d.levi().xc_rank(), gens).saturate();
    return SphericalDatum(d.levi(), std::move(xi), d.psi());
}

Sublattice weight_lattice(const SphericalDatum& d) {
    const LeviDatum& ld = d.levi();
    const RootSystem& rs = ld.rs();
    int n = rs.rank();

    // rational kernel of iota: pairings with Levi coroots vanish and the
    // central restriction lies in Q xi
    QMat functionals;
    for (int a : ld.pi_L()) {
        QVec row(n);
        for (int j = 0; j < n; ++j) row[j] = Rat(rs.cartan_matrix()[a][j]);
        functionals.push_back(std::move(row));
    }
    {
        // functionals on X(C)-coords vanishing on xi, composed with restriction
        QMat xi_rows;
        for (const QVec& b : d.xi().basis_vectors()) xi_rows.push_back(b);
        QMat quotient;
        if (xi_rows.empty()) {
            for (int i = 0; i < ld.xc_rank(); ++i) {
                QVec e(ld.xc_rank(), Rat(0));
                e[i] = Rat(1);
                quotient.push_back(std::move(e));
            }
        } else {
            quotient = q_nullspace(xi_rows);
        }
        for (const QVec& f : quotient) {
            QVec row(n, Rat(0));
            for (int j = 0; j < n; ++j) {
                CWeight ej = ld.restrict(rs.simple_root(j));
                QVec xc = ld.xc_coords(ej);
                Rat acc;
                for (size_t a = 0; a < f.size(); ++a) acc += f[a] * xc[a];
                row[j] = acc;
            }
            functionals.push_back(std::move(row));
        }
    }
    QMat ker_space = q_nullspace(functionals);

    std::vector<QVec> gens;
    {
        // X(T) cap the kernel space
        Sublattice coeffs = lattice_points_in_span(rs.char_lattice_basis(), ker_space);
        for (const QVec& c : coeffs.basis_vectors()) {
            QVec v(n, Rat(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) v[j] += c[i] * rs.char_lattice_basis()[i][j];
            gens.push_back(std::move(v));
        }
    }
    ClassPartition part = classes(d);
    for (const QVec& lift : active_registry().free_generators(module_descriptor(d, part)))
        gens.push_back(lift);
    return Sublattice::from_generators(n, gens);
}

std::vector<std::vector<CWeight>> sm_decomposition(const SphericalDatum& d) {
    if (d.xi().rank() != 0)
        throw PreconditionError("sm_decomposition: requires xi = 0 (K = L)");
    const LeviDatum& ld = d.levi();
    const RootSystem& rs = ld.rs();
    auto factors = identify_subdiagram(rs, ld.pi_L());

    int n = (int)d.psi().size();
    std::vector<std::vector<int>> acting(n);
    for (int s = 0; s < n; ++s)
        for (size_t f = 0; f < factors.size(); ++f)
            for (int node : factors[f].nodes)
                if (rs.pairing(ld.hat(d.psi()[s]), node) != 0) {
                    acting[s].push_back((int)f);
                    break;
                }

    std::vector<int> owner(n, -1);
    std::vector<int> factor_owner(factors.size(), -1);
    std::vector<std::vector<CWeight>> blocks;
    for (int s = 0; s < n; ++s) {
        if (owner[s] >= 0) continue;
        int b = (int)blocks.size();
        blocks.push_back({});
        std::vector<int> stack{s};
        owner[s] = b;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            blocks[b].push_back(d.psi()[cur]);
            for (int f : acting[cur]) {
                if (factor_owner[f] >= 0) continue;
                factor_owner[f] = b;
                for (int s2 = 0; s2 < n; ++s2)
                    if (owner[s2] < 0 &&
                        std::find(acting[s2].begin(), acting[s2].end(), f) != acting[s2].end()) {
                        owner[s2] = b;
                        stack.push_back(s2);
                    }
            }
        }
        std::sort(blocks[b].begin(), blocks[b].end());
    }
    return blocks;
}

std::vector<CWeight> upsilon(const SphericalDatum& d, const std::vector<CWeight>& block) {
    const LeviDatum& ld = d.levi();
    std::set<int> supp;
    for (const CWeight& w : block)
        for (int i : ld.rs().support(to_q(ld.hat(w)))) supp.insert(i);
    std::vector<CWeight> out;
    for (const CWeight& mu : d.psi()) {
        if (std::find(block.begin(), block.end(), mu) != block.end()) continue;
        bool inside = true;
        for (int i : ld.rs().support(to_q(ld.hat(mu))))
            if (!supp.count(i)) {
                inside = false;
                break;
            }
        if (inside) out.push_back(mu);
    }
    return out;
}

std::vector<CWeight> upper_elements(const SphericalDatum& d, const std::vector<CWeight>& theta) {
    const LeviDatum& ld = d.levi();
    std::vector<CWeight> out;
    for (const CWeight& nu : theta) {
        bool upper = true;
        for (const CWeight& mu : theta) {
            if (mu == nu) continue;
            if (ld.is_positive_c_root(mu - nu)) {
                upper = false;
                break;
            }
        }
        if (upper) out.push_back(nu);
    }
    return out;
}

CWeight pick_upper(const SphericalDatum& d, const std::vector<CWeight>& theta) {
    std::vector<CWeight> ups = upper_elements(d, theta);
    if (ups.empty()) throw std::logic_error("pick_upper: no upper element");
    const LeviDatum& ld = d.levi();
    size_t best = 0;
    for (size_t i = 1; i < ups.size(); ++i)
        if (ld.hat(ups[i]) > ld.hat(ups[best])) best = i;
    return ups[best];
}

} // namespace sphroots
