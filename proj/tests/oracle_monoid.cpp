#include "oracle_monoid.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sphtest {

using namespace sphroots;

namespace {

long long height(const IVec& v) {
    return std::accumulate(v.begin(), v.end(), 0LL);
}

} // namespace

std::map<IVec, long long> levi_module_weights(const LeviDatum& ld, const IVec& hw) {
    const RootSystem& rs = ld.rs();
    int n = rs.rank();

    std::vector<IVec> levi_pos;
    for (const IVec& b : rs.positive_roots())
        if (ld.levi_root(b)) levi_pos.push_back(b);

    QVec rho(n, Rat(0));
    for (const IVec& b : levi_pos) rho = rho + (Rat(1, 2) * to_q(b));

    QVec hwq = to_q(hw);
    Rat top_norm = rs.form(hwq + rho, hwq + rho);

    std::map<IVec, long long> mult;
    mult[hw] = 1;
    // process by decreasing height; lowering by simple Levi roots reaches
    // every weight of the module
    std::map<long long, std::set<IVec>, std::greater<long long>> frontier;
    frontier[height(hw)].insert(hw);
    while (!frontier.empty()) {
        auto [h, layer] = *frontier.begin();
        frontier.erase(frontier.begin());
        for (const IVec& w : layer) {
            if (mult.find(w) == mult.end()) {
                // Freudenthal
                QVec wq = to_q(w);
                Rat denom = top_norm - rs.form(wq + rho, wq + rho);
                Rat num;
                for (const IVec& a : levi_pos) {
                    for (int k = 1;; ++k) {
                        IVec up = w;
                        for (int i = 0; i < n; ++i) up[i] += (long long)k * a[i];
                        if (height(up) > height(hw)) break;
                        auto it = mult.find(up);
                        if (it != mult.end() && it->second > 0)
                            num += Rat(2 * it->second) * rs.form(to_q(up), to_q(a));
                    }
                }
                if (denom.is_zero()) {
                    // |w + rho| = |hw + rho| can only happen off the weight set
                    mult[w] = 0;
                } else {
                    Rat m = num / denom;
                    if (!m.is_integer() || m.sign() < 0)
                        throw std::logic_error("oracle: non-integral weight multiplicity");
                    mult[w] = m.to_int();
                }
            }
            if (mult[w] == 0) continue;
            for (int a : ld.pi_L()) {
                IVec down = w - rs.simple_root(a);
                if (!mult.count(down)) frontier[height(down)].insert(down);
            }
        }
    }
    for (auto it = mult.begin(); it != mult.end();)
        it = it->second == 0 ? mult.erase(it) : std::next(it);
    return mult;
}

std::vector<IVec> monoid_generators(const LeviDatum& ld,
                                    const std::vector<std::vector<IVec>>& fibers, int maxd) {
    const RootSystem& rs = ld.rs();
    int n = rs.rank();
    std::vector<IVec> lines;
    for (const auto& f : fibers)
        for (const IVec& r : f) lines.push_back(r);

    // S^d(u) weight multiset by iterated multiset convolution
    std::vector<std::map<IVec, long long>> sym(maxd + 1);
    sym[0][IVec(n, 0)] = 1;
    {
        // multisets of lines: f(i, d) built by choosing how many copies of
        // line i to use.  Straight recursion over lines keeps it exact.
        std::map<std::pair<int, int>, std::map<IVec, long long>> memo;
        std::function<std::map<IVec, long long>(int, int)> count =
            [&](int i, int d) -> std::map<IVec, long long> {
            if (d == 0) return {{IVec(n, 0), 1}};
            if (i == (int)lines.size()) return {};
            auto key = std::make_pair(i, d);
            auto hit = memo.find(key);
            if (hit != memo.end()) return hit->second;
            std::map<IVec, long long> out;
            for (int c = 0; c * 1 <= d; ++c) {
                auto rest = count(i + 1, d - c);
                for (const auto& [w, m] : rest) {
                    IVec tot = w;
                    for (int j = 0; j < n; ++j) tot[j] += (long long)c * lines[i][j];
                    out[tot] += m;
                }
            }
            memo[key] = out;
            return out;
        };
        for (int d = 1; d <= maxd; ++d) sym[d] = count(0, d);
    }

    // peel into irreducibles per degree
    std::set<IVec> monoid;  // all highest weights found, degrees 1..maxd
    std::vector<std::pair<int, IVec>> monoid_by_degree;
    std::map<IVec, std::map<IVec, long long>> char_cache;
    for (int d = 1; d <= maxd; ++d) {
        auto residual = sym[d];
        while (true) {
            // find a residual weight of maximal height
            const IVec* best = nullptr;
            long long best_h = 0;
            for (const auto& [w, m] : residual) {
                if (m == 0) continue;
                if (m < 0) throw std::logic_error("oracle: negative residual multiplicity");
                if (!best || height(w) > best_h) {
                    best = &w;
                    best_h = height(w);
                }
            }
            if (!best) break;
            IVec hw = *best;
            for (int a : ld.pi_L())
                if (rs.pairing(hw, a) < 0)
                    throw std::logic_error("oracle: maximal residual weight not dominant");
            long long copies = residual[hw];
            if (copies != 1)
                throw std::logic_error("oracle: module is not multiplicity-free");
            auto it = char_cache.find(hw);
            if (it == char_cache.end())
                it = char_cache.emplace(hw, levi_module_weights(ld, hw)).first;
            for (const auto& [w, m] : it->second) residual[w] -= m * copies;
            if (!monoid.insert(hw).second)
                throw std::logic_error("oracle: repeated highest weight across degrees");
            monoid_by_degree.push_back({d, hw});
        }
    }

    // indecomposables: not a sum of two monoid elements of lower degree
    std::set<std::pair<int, IVec>> elems(monoid_by_degree.begin(), monoid_by_degree.end());
    std::vector<IVec> gens;
    for (const auto& [d, w] : monoid_by_degree) {
        bool decomposable = false;
        for (const auto& [d2, w2] : monoid_by_degree) {
            if (d2 >= d) continue;
            if (elems.count({d - d2, w - w2})) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) gens.push_back(w);
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

} // namespace sphtest
