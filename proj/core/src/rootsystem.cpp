#include "sphroots/rootsystem.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <stdexcept>

namespace sphroots {

int DynkinType::total_rank() const {
    int n = 0;
    for (const auto& c : components) n += c.rank;
    return n;
}

std::string DynkinType::str() const {
    if (components.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < components.size(); ++i) {
        if (i) s += "x";
        s += (char)components[i].series;
        s += std::to_string(components[i].rank);
    }
    return s;
}

DynkinType DynkinType::parse(const std::string& text) {
    DynkinType t;
    size_t pos = 0;
    while (pos < text.size()) {
        char c = (char)std::toupper((unsigned char)text[pos]);
        if (c < 'A' || c > 'G')
            throw std::invalid_argument("DynkinType: bad series '" + std::string(1, text[pos]) + "'");
        ++pos;
        size_t start = pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
        if (start == pos) throw std::invalid_argument("DynkinType: missing rank in '" + text + "'");
        t.components.push_back({(Series)c, std::stoi(text.substr(start, pos - start))});
        if (pos < text.size()) {
            if (text[pos] != 'x' && text[pos] != 'X' && text[pos] != '*')
                throw std::invalid_argument("DynkinType: bad separator in '" + text + "'");
            ++pos;
        }
    }
    t.check();
    return t;
}

void DynkinType::check() const {
    for (const auto& c : components) {
        int n = c.rank;
        bool ok = false;
        switch (c.series) {
            case Series::A: ok = n >= 1; break;
            case Series::B: ok = n >= 2; break;
            case Series::C: ok = n >= 2; break;
            case Series::D: ok = n >= 3; break;
            case Series::E: ok = n >= 6 && n <= 8; break;
            case Series::F: ok = n == 4; break;
            case Series::G: ok = n == 2; break;
        }
        if (!ok)
            throw std::invalid_argument("DynkinType: invalid rank " + std::to_string(n) +
                                        " for series " + std::string(1, (char)c.series));
    }
}

bool operator==(const DynkinType& a, const DynkinType& b) {
    if (a.components.size() != b.components.size()) return false;
    for (size_t i = 0; i < a.components.size(); ++i)
        if (a.components[i].series != b.components[i].series ||
            a.components[i].rank != b.components[i].rank)
            return false;
    return true;
}

bool operator<(const DynkinType& a, const DynkinType& b) { return a.str() < b.str(); }

IMat bourbaki_cartan(Series s, int n) {
    IMat a(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = -1; a[j][i] = -1; };
    switch (s) {
        case Series::A:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case Series::B:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 1][n - 2] = -2; // alpha_n short
            break;
        case Series::C:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 2][n - 1] = -2; // alpha_n long
            break;
        case Series::D:
            for (int i = 0; i + 1 < n - 1; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            break;
        case Series::E:
            link(0, 2); link(2, 3); link(3, 4);
            for (int i = 4; i + 1 < n; ++i) link(i, i + 1);
            link(1, 3);
            break;
        case Series::F:
            link(0, 1); link(1, 2); link(2, 3);
            a[2][1] = -2; // alpha_3 short
            break;
        case Series::G:
            a[0][1] = -3; // alpha_1 short
            a[1][0] = -1;
            break;
    }
    return a;
}

std::vector<long long> bourbaki_lengths(Series s, int n) {
    std::vector<long long> len(n, 2);
    switch (s) {
        case Series::B:
            for (int i = 0; i + 1 < n; ++i) len[i] = 4;
            break;
        case Series::C:
            len[n - 1] = 4;
            break;
        case Series::F:
            len[0] = len[1] = 4;
            break;
        case Series::G:
            len[1] = 6;
            break;
        default:
            break;
    }
    return len;
}

std::shared_ptr<const RootSystem> RootSystem::build(const DynkinType& type, LatticeModel model) {
    type.check();
    auto rs = std::shared_ptr<RootSystem>(new RootSystem());
    rs->type_ = type;
    rs->model_ = model;
    int n = type.total_rank();
    rs->n_ = n;
    rs->cartan_.assign(n, IVec(n, 0));
    rs->form_.assign(n, QVec(n, Rat(0)));
    rs->comp_of_.assign(n, 0);

    int off = 0, comp = 0;
    for (const auto& c : type.components) {
        IMat a = bourbaki_cartan(c.series, c.rank);
        auto len = bourbaki_lengths(c.series, c.rank);
        for (int i = 0; i < c.rank; ++i) {
            rs->comp_of_[off + i] = comp;
            for (int j = 0; j < c.rank; ++j) {
                rs->cartan_[off + i][off + j] = a[i][j];
                // (alpha_j, alpha_i) = <alpha_j, alpha_i^vee> (alpha_i,alpha_i)/2
                rs->form_[off + i][off + j] = Rat(a[i][j] * len[i], 2);
            }
        }
        off += c.rank;
        ++comp;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rs->form_[i][j] != rs->form_[j][i])
                throw std::logic_error("RootSystem: form not symmetric");

    // Reflection closure of the simple roots.
    std::deque<IVec> queue;
    for (int i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        rs->roots_.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        IVec beta = queue.front();
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            long long p = 0;
            for (int j = 0; j < n; ++j) p += rs->cartan_[i][j] * beta[j];
            IVec refl = beta;
            refl[i] -= p;
            if (rs->roots_.insert(refl).second) queue.push_back(refl);
        }
    }
    for (const auto& r : rs->roots_) {
        bool pos = true;
        for (long long x : r) pos = pos && x >= 0;
        if (pos) rs->positive_.push_back(r);
    }
    std::sort(rs->positive_.begin(), rs->positive_.end());

    // Character lattice basis.
    if (model == LatticeModel::Adjoint) {
        rs->xbasis_.assign(n, QVec(n, Rat(0)));
        for (int i = 0; i < n; ++i) rs->xbasis_[i][i] = Rat(1);
    } else {
        // Fundamental weights: rows w_i with <w_i, alpha_j^vee> = delta_ij.
        QMat sys(n, QVec(n, Rat(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sys[i][j] = Rat(rs->cartan_[i][j]);
        rs->xbasis_.assign(n, QVec());
        for (int i = 0; i < n; ++i) {
            QVec rhs(n, Rat(0));
            rhs[i] = Rat(1);
            auto w = q_solve(sys, rhs);
            if (!w) throw std::logic_error("RootSystem: singular Cartan matrix");
            rs->xbasis_[i] = *w;
        }
    }
    return rs;
}

bool RootSystem::is_positive_root(const IVec& v) const {
    if (!is_root(v)) return false;
    for (long long x : v)
        if (x < 0) return false;
    return true;
}

Rat RootSystem::pairing(const QVec& chi, int i) const {
    Rat acc;
    for (int j = 0; j < n_; ++j) acc += Rat(cartan_[i][j]) * chi[j];
    return acc;
}

long long RootSystem::pairing(const IVec& chi, int i) const {
    long long acc = 0;
    for (int j = 0; j < n_; ++j) acc += cartan_[i][j] * chi[j];
    return acc;
}

Rat RootSystem::coroot_pairing(const QVec& chi, const IVec& delta) const {
    QVec dq = to_q(delta);
    return Rat(2) * form(chi, dq) / form(dq, dq);
}

Rat RootSystem::form(const QVec& a, const QVec& b) const {
    Rat acc;
    for (int i = 0; i < n_; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n_; ++j) acc += a[i] * form_[i][j] * b[j];
    }
    return acc;
}

Rat RootSystem::form(const IVec& a, const IVec& b) const { return form(to_q(a), to_q(b)); }

bool RootSystem::in_char_lattice(const QVec& chi) const {
    QMat sys(n_, QVec(n_, Rat(0)));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) sys[j][i] = xbasis_[i][j];
    auto x = q_solve(sys, chi);
    return x && is_integral(*x);
}

IVec RootSystem::simple_root(int i) const {
    IVec e(n_, 0);
    e[i] = 1;
    return e;
}

std::vector<int> RootSystem::support(const QVec& beta) const {
    std::vector<int> s;
    for (int i = 0; i < n_; ++i) {
        if (!beta[i].is_integer() || beta[i].sign() < 0)
            throw std::invalid_argument("support: vector not in Z+Pi: " + to_string(beta));
        if (beta[i].sign() > 0) s.push_back(i);
    }
    return s;
}

RootSystem::DeltaString RootSystem::delta_string(const IVec& delta, const IVec& gamma) const {
    if (!is_root(delta)) throw std::invalid_argument("delta_string: delta is not a root");
    if (!is_root(gamma)) throw std::invalid_argument("delta_string: gamma is not a root");
    IVec top = gamma;
    int m = 0;
    while (true) {
        IVec up = top + delta;
        if (!is_root(up) && !is_zero(up)) break;
        if (is_zero(up)) {
            // gamma = -delta; the string is the one through delta itself
            top = delta;
            m = 2;
            break;
        }
        top = up;
        ++m;
    }
    Rat p = coroot_pairing(to_q(top), delta);
    if (!p.is_integer() || p.sign() < 0)
        throw std::logic_error("delta_string: non-integral string length");
    return DeltaString{top, (int)p.to_int(), m};
}

std::vector<std::vector<int>> RootSystem::diagram_automorphisms() const {
    std::vector<std::vector<int>> result;
    std::vector<int> perm(n_, -1);
    std::vector<bool> used(n_, false);

    auto consistent = [&](int i, int img) {
        for (int j = 0; j < n_; ++j) {
            if (perm[j] < 0) continue;
            if (cartan_[i][j] != cartan_[img][perm[j]]) return false;
            if (cartan_[j][i] != cartan_[perm[j]][img]) return false;
        }
        return cartan_[i][i] == cartan_[img][img];
    };

    std::function<void(int)> rec = [&](int i) {
        if (i == n_) {
            result.push_back(perm);
            return;
        }
        for (int img = 0; img < n_; ++img) {
            if (used[img] || !consistent(i, img)) continue;
            perm[i] = img;
            used[img] = true;
            rec(i + 1);
            perm[i] = -1;
            used[img] = false;
        }
    };
    rec(0);
    return result;
}

std::vector<int> RootSystem::component_nodes(int comp) const {
    std::vector<int> nodes;
    for (int i = 0; i < n_; ++i)
        if (comp_of_[i] == comp) nodes.push_back(i);
    return nodes;
}

namespace {

// One connected induced subdiagram -> (series, Bourbaki node order).
SubdiagramComponent recognize_component(const RootSystem& rs, std::vector<int> comp) {
    const IMat& A = rs.cartan_matrix();
    std::sort(comp.begin(), comp.end());
    int m = (int)comp.size();
    SubdiagramComponent out;
    out.rank = m;
    if (m == 1) {
        out.series = Series::A;
        out.nodes = comp;
        return out;
    }

    auto adj = [&](int x, int y) { return x != y && A[x][y] != 0; };
    auto edge_mult = [&](int x, int y) { return (int)(A[x][y] * A[y][x]); };
    std::map<int, std::vector<int>> nb;
    for (int x : comp)
        for (int y : comp)
            if (adj(x, y)) nb[x].push_back(y);

    int fork = -1, max_mult = 1;
    for (int x : comp) {
        if ((int)nb[x].size() > 2) fork = x;
        for (int y : nb[x]) max_mult = std::max(max_mult, edge_mult(x, y));
    }

    auto walk_from = [&](int start, int avoid) {
        std::vector<int> path{start};
        int prev = avoid, cur = start;
        while (true) {
            int next = -1;
            for (int y : nb[cur])
                if (y != prev) { next = y; break; }
            if (next < 0) break;
            path.push_back(next);
            prev = cur;
            cur = next;
        }
        return path;
    };

    if (fork >= 0) {
        std::vector<std::vector<int>> arms;
        for (int y : nb[fork]) arms.push_back(walk_from(y, fork));
        if (arms.size() != 3 || max_mult != 1)
            throw std::logic_error("identify_subdiagram: not a finite simple diagram");
        std::sort(arms.begin(), arms.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a.front() < b.front();
        });
        size_t l0 = arms[0].size(), l1 = arms[1].size();
        if (l0 == 1 && l1 == 1) {
            // D_m: long tail reversed, fork, then the two short arms.
            out.series = Series::D;
            std::vector<int> tail = arms[2];
            std::reverse(tail.begin(), tail.end());
            out.nodes = tail;
            out.nodes.push_back(fork);
            int a = arms[0][0], b = arms[1][0];
            out.nodes.push_back(std::min(a, b));
            out.nodes.push_back(std::max(a, b));
        } else if (l0 == 1 && l1 == 2) {
            // E_m: alpha1 = far end of the 2-arm, alpha2 = the 1-arm,
            // alpha3 = near node of the 2-arm, alpha4 = fork, then the tail.
            out.series = Series::E;
            out.nodes = {arms[1][1], arms[0][0], arms[1][0], fork};
            for (int x : arms[2]) out.nodes.push_back(x);
        } else {
            throw std::logic_error("identify_subdiagram: not a finite simple diagram");
        }
        return out;
    }

    // A path; find its ends.
    std::vector<int> ends;
    for (int x : comp)
        if (nb[x].size() == 1) ends.push_back(x);
    if (ends.size() != 2) throw std::logic_error("identify_subdiagram: not a path");
    std::sort(ends.begin(), ends.end());

    if (max_mult == 1) {
        out.series = Series::A;
        out.nodes = walk_from(ends[0], -1);
        return out;
    }
    if (max_mult == 3) {
        // G2: the short root's Cartan row carries the -3.
        out.series = Series::G;
        int s = comp[0], l = comp[1];
        if (A[s][l] != -3) std::swap(s, l);
        out.nodes = {s, l};
        return out;
    }

    // One double edge: B, C or F4.  On the double edge the short node's row
    // carries the -2.
    int du = -1, dv = -1;
    for (int x : comp)
        for (int y : nb[x])
            if (x < y && edge_mult(x, y) == 2) { du = x; dv = y; }
    int dshort = (A[du][dv] == -2) ? du : dv;
    int dlong = (dshort == du) ? dv : du;

    if (m == 2) {
        out.series = Series::C; // canonical rank-2 choice: alpha1 short, alpha2 long
        out.nodes = {dshort, dlong};
        return out;
    }
    bool short_is_end = nb[dshort].size() == 1;
    bool long_is_end = nb[dlong].size() == 1;
    if (short_is_end) {
        out.series = Series::B;
        out.nodes = walk_from(ends[0] == dshort ? ends[1] : ends[0], -1);
        return out;
    }
    if (long_is_end) {
        out.series = Series::C;
        out.nodes = walk_from(ends[0] == dlong ? ends[1] : ends[0], -1);
        return out;
    }
    if (m == 4) {
        // F4 runs long end -> short end; dlong is adjacent to the long end.
        out.series = Series::F;
        std::vector<int> path = walk_from(ends[0], -1);
        if (path[1] != dlong) std::reverse(path.begin(), path.end());
        out.nodes = path;
        return out;
    }
    throw std::logic_error("identify_subdiagram: not a finite simple diagram");
}

} // namespace

std::vector<SubdiagramComponent> identify_subdiagram(const RootSystem& rs,
                                                     const std::vector<int>& nodes) {
    const IMat& A = rs.cartan_matrix();
    std::set<int> todo(nodes.begin(), nodes.end());
    std::vector<SubdiagramComponent> comps;
    while (!todo.empty()) {
        std::vector<int> comp{*todo.begin()};
        todo.erase(todo.begin());
        for (size_t i = 0; i < comp.size(); ++i) {
            for (auto it = todo.begin(); it != todo.end();) {
                if (A[comp[i]][*it] != 0) {
                    comp.push_back(*it);
                    it = todo.erase(it);
                } else {
                    ++it;
                }
            }
        }
        comps.push_back(recognize_component(rs, comp));
    }
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        return *std::min_element(a.nodes.begin(), a.nodes.end()) <
               *std::min_element(b.nodes.begin(), b.nodes.end());
    });
    return comps;
}

} // namespace sphroots
