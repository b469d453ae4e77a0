#include "sphroots/io.hpp"

#include "sphroots/errors.hpp"

#include <sstream>

namespace sphroots {

namespace {

Rat parse_rat(const std::string& tok, int line) {
    size_t slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(tok));
        return Rat(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError(line, "bad rational '" + tok + "'");
    }
}

} // namespace

DatumFile parse_datum_file(std::istream& in) {
    DatumFile f;
    std::string raw;
    int lineno = 0;
    bool saw_group = false;
    while (std::getline(in, raw)) {
        ++lineno;
        size_t hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "group") {
            std::string series;
            int rank;
            while (ls >> series) {
                if (!(ls >> rank)) throw ParseError(lineno, "group: missing rank");
                if (series.size() != 1 || series[0] < 'A' || series[0] > 'G')
                    throw ParseError(lineno, "group: bad series '" + series + "'");
                f.group.components.push_back({(Series)series[0], rank});
            }
            try {
                f.group.check();
            } catch (const std::exception& e) {
                throw ParseError(lineno, e.what());
            }
            saw_group = true;
        } else if (key == "lattice") {
            std::string model;
            ls >> model;
            if (model == "sc") f.model = LatticeModel::SimplyConnected;
            else if (model == "adjoint") f.model = LatticeModel::Adjoint;
            else throw ParseError(lineno, "lattice: expected sc or adjoint");
        } else if (key == "levi") {
            int idx;
            while (ls >> idx) {
                if (idx < 1) throw ParseError(lineno, "levi: indices are 1-based");
                f.levi.push_back(idx - 1);
            }
        } else if (key == "psi") {
            IVec v;
            long long c;
            while (ls >> c) v.push_back(c);
            if (v.empty()) throw ParseError(lineno, "psi: empty vector");
            f.psi.push_back(std::move(v));
        } else if (key == "xi") {
            std::string first;
            if (!(ls >> first)) throw ParseError(lineno, "xi: empty entry");
            DatumFile::XiEntry e;
            if (first == "diff") {
                int i, j;
                if (!(ls >> i >> j)) throw ParseError(lineno, "xi diff: expected two indices");
                e.is_diff = true;
                e.i = i - 1;
                e.j = j - 1;
            } else {
                e.vec.push_back(parse_rat(first, lineno));
                std::string tok;
                while (ls >> tok) e.vec.push_back(parse_rat(tok, lineno));
            }
            f.xi.push_back(std::move(e));
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }
    if (!saw_group) throw ParseError(lineno, "missing group line");
    int n = f.group.total_rank();
    for (const auto& v : f.psi)
        if ((int)v.size() != n)
            throw ParseError(lineno, "psi vector of length " + std::to_string(v.size()) +
                                         ", expected " + std::to_string(n));
    for (const auto& e : f.xi) {
        if (e.is_diff) {
            if (e.i < 0 || e.j < 0 || e.i >= (int)f.psi.size() || e.j >= (int)f.psi.size())
                throw ParseError(lineno, "xi diff: index out of range");
        } else if ((int)e.vec.size() != n) {
            throw ParseError(lineno, "xi vector of wrong length");
        }
    }
    for (int i : f.levi)
        if (i >= n) throw ParseError(lineno, "levi: index out of range");
    return f;
}

DatumFile parse_datum_file(const std::string& text) {
    std::istringstream in(text);
    return parse_datum_file(in);
}

std::string serialize_datum(const DatumFile& f) {
    std::ostringstream out;
    out << "group";
    for (const auto& c : f.group.components) out << " " << (char)c.series << " " << c.rank;
    out << "\n";
    out << "lattice " << (f.model == LatticeModel::SimplyConnected ? "sc" : "adjoint") << "\n";
    if (!f.levi.empty()) {
        out << "levi";
        for (int i : f.levi) out << " " << (i + 1);
        out << "\n";
    }
    for (const auto& v : f.psi) {
        out << "psi";
        for (long long x : v) out << " " << x;
        out << "\n";
    }
    for (const auto& e : f.xi) {
        if (e.is_diff) {
            out << "xi diff " << (e.i + 1) << " " << (e.j + 1) << "\n";
        } else {
            out << "xi";
            for (const Rat& x : e.vec) out << " " << x.str();
            out << "\n";
        }
    }
    return out.str();
}

SphericalDatum build_datum(const DatumFile& f) {
    RootSystemPtr rs = RootSystem::build(f.group, f.model);
    LeviDatum ld(rs, f.levi);

    for (const IVec& v : f.psi) {
        if (!rs->is_positive_root(v))
            throw ParseError(0, "psi entry is not a positive root: " + to_string(v));
        if (ld.levi_root(v))
            throw ParseError(0, "psi entry lies in the Levi: " + to_string(v));
    }
    std::vector<CWeight> psi;
    for (const IVec& v : f.psi) psi.push_back(ld.restrict(v));

    std::vector<QVec> gens;
    for (const auto& e : f.xi) {
        if (e.is_diff) {
            gens.push_back(ld.xc_coords(psi[e.i] - psi[e.j]));
        } else {
            if (!rs->in_char_lattice(e.vec))
                throw ParseError(0, "xi vector outside X(T): " + to_string(e.vec));
            gens.push_back(ld.xc_coords(ld.restrict(e.vec)));
        }
    }
    Sublattice xi = Sublattice::from_generators(ld.xc_rank(), gens).saturate();
    return SphericalDatum(std::move(ld), std::move(xi), std::move(psi));
}

std::string serialize_result(const ResultFile& r) {
    std::ostringstream out;
    out << "status " << r.status << "\n";
    if (!r.detail.empty()) out << "detail " << r.detail << "\n";
    out << "group";
    for (const auto& c : r.group.components) out << " " << (char)c.series << " " << c.rank;
    out << "\n";
    out << "lattice " << (r.model == LatticeModel::SimplyConnected ? "sc" : "adjoint") << "\n";
    if (!r.algorithm.empty()) out << "algorithm " << r.algorithm << "\n";
    if (r.status == "ok") {
        out << "rank " << r.rank << "\n";
        for (const QVec& v : r.spherical_roots) {
            out << "spherical_root";
            for (const Rat& x : v) out << " " << x.str();
            out << "\n";
        }
        for (const QVec& v : r.lattice_basis) {
            out << "lattice_basis";
            for (const Rat& x : v) out << " " << x.str();
            out << "\n";
        }
        out << "degenerations_base " << r.degenerations_base << "\n";
        out << "degenerations_optimized " << r.degenerations_optimized << "\n";
    }
    for (const std::string& t : r.trace) out << "trace " << t << "\n";
    out << "timing_ms " << r.timing_ms << "\n";
    return out.str();
}

} // namespace sphroots
