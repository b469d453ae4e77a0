#include "sphroots/sphdata.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace sphroots {

namespace {

// ---------------------------------------------------------------- expressions

using VarMap = std::map<std::string, long long>;

class ExprScanner {
public:
    ExprScanner(const std::string& s, const VarMap& vars) : s_(s), vars_(vars) {}

    long long parse() {
        long long v = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    long long sum() {
        long long v = product();
        while (true) {
            skip_ws();
            if (peek() == '+') { ++pos_; v += product(); }
            else if (peek() == '-') { ++pos_; v -= product(); }
            else return v;
        }
    }
    long long product() {
        long long v = atom();
        while (true) {
            skip_ws();
            if (peek() == '*') { ++pos_; v *= atom(); }
            else if (peek() == '/') {
                ++pos_;
                long long d = atom();
                if (d == 0) fail("division by zero");
                // floor division; loop bounds rely on it
                long long q = v / d;
                if ((v % d != 0) && ((v < 0) != (d < 0))) --q;
                v = q;
            } else return v;
        }
    }
    long long atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            long long v = sum();
            expect(')');
            return v;
        }
        if (c == '-') { ++pos_; return -atom(); }
        if (std::isdigit((unsigned char)c)) {
            long long v = 0;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_]))
                v = v * 10 + (s_[pos_++] - '0');
            return v;
        }
        if (std::isalpha((unsigned char)c)) {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
                id += s_[pos_++];
            skip_ws();
            if (peek() == '(') {
                ++pos_;
                std::vector<long long> args{sum()};
                skip_ws();
                while (peek() == ',') { ++pos_; args.push_back(sum()); skip_ws(); }
                expect(')');
                if (id == "min" && args.size() == 2) return std::min(args[0], args[1]);
                if (id == "max" && args.size() == 2) return std::max(args[0], args[1]);
                fail("unknown function " + id);
            }
            auto it = vars_.find(id);
            if (it == vars_.end()) fail("unknown variable " + id);
            return it->second;
        }
        fail("unexpected character");
        return 0;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() { while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_; }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("registry expression '" + s_ + "': " + msg);
    }

    const std::string& s_;
    const VarMap& vars_;
    size_t pos_ = 0;
};

long long eval_expr(const std::string& s, const VarMap& vars) {
    return ExprScanner(s, vars).parse();
}

bool eval_single_cond(const std::string& c, const VarMap& vars) {
    if (c.rfind("odd(", 0) == 0 && c.back() == ')')
        return eval_expr(c.substr(4, c.size() - 5), vars) % 2 != 0;
    if (c.rfind("even(", 0) == 0 && c.back() == ')')
        return eval_expr(c.substr(5, c.size() - 6), vars) % 2 == 0;
    static const char* ops[] = {"==", "<=", ">=", "<", ">"};
    for (const char* op : ops) {
        size_t p = c.find(op);
        if (p == std::string::npos) continue;
        long long a = eval_expr(c.substr(0, p), vars);
        long long b = eval_expr(c.substr(p + std::strlen(op)), vars);
        std::string o = op;
        if (o == "==") return a == b;
        if (o == "<=") return a <= b;
        if (o == ">=") return a >= b;
        if (o == "<") return a < b;
        return a > b;
    }
    throw std::invalid_argument("registry condition '" + c + "': no comparison");
}

bool eval_cond(const std::string& cond, const VarMap& vars) {
    if (cond.empty()) return true;
    size_t start = 0;
    while (start <= cond.size()) {
        size_t comma = cond.find(',', start);
        std::string piece = cond.substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start);
        if (!piece.empty() && !eval_single_cond(piece, vars)) return false;
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return true;
}

// --------------------------------------------------------------- file parsing

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string field(const std::vector<std::string>& toks, const std::string& key) {
    for (const auto& t : toks)
        if (t.rfind(key + "=", 0) == 0) return t.substr(key.size() + 1);
    return "";
}

// Body of a call-like token "name(...)", respecting nested parentheses.
std::string paren_body(const std::string& tok, size_t open) {
    int depth = 0;
    for (size_t i = open; i < tok.size(); ++i) {
        if (tok[i] == '(') ++depth;
        if (tok[i] == ')' && --depth == 0) return tok.substr(open + 1, i - open - 1);
    }
    throw std::invalid_argument("registry: unbalanced parentheses in '" + tok + "'");
}

// Split on top-level commas.
std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

// One term of a sigma line: coefficient at a position, possibly summed.
struct SigmaTerm {
    bool is_sum = false;
    std::string var, lo, hi;
    std::string coeff, pos;
};

SigmaTerm parse_sigma_term(const std::string& tok) {
    SigmaTerm t;
    std::string body = tok;
    if (tok.rfind("sum(", 0) == 0 && tok.back() == ')') {
        t.is_sum = true;
        auto parts = split_commas(paren_body(tok, 3));
        if (parts.size() != 4)
            throw std::invalid_argument("registry sigma term '" + tok + "': expected 4 arguments");
        t.var = parts[0];
        t.lo = parts[1];
        t.hi = parts[2];
        body = parts[3];
    }
    size_t at = body.find('@');
    if (at == std::string::npos)
        throw std::invalid_argument("registry sigma term '" + tok + "': missing '@'");
    t.coeff = body.substr(0, at);
    t.pos = body.substr(at + 1);
    return t;
}

} // namespace

// ---------------------------------------------------------------- Registry

std::shared_ptr<const Registry> Registry::parse(const std::string& text) {
    auto reg = std::shared_ptr<Registry>(new Registry());
    std::istringstream in(text);
    std::string raw;
    enum { None, Table2, Modules } section = None;
    while (std::getline(in, raw)) {
        size_t hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "[table2]") { section = Table2; continue; }
        if (toks[0] == "[modules]") { section = Modules; continue; }
        if (section == Table2 && toks[0] == "row") {
            Table2Row row;
            row.id = (int)std::stol(toks[1]);
            row.series = (Series)toks[2][0];
            row.node_expr = field(toks, "node");
            row.cond_expr = field(toks, "cond");
            row.rk_expr = field(toks, "rk");
            row.source = field(toks, "src");
            reg->table2_.push_back(std::move(row));
            continue;
        }
        if (section == Table2 && toks[0].rfind("sigma", 0) == 0) {
            if (reg->table2_.empty()) throw std::invalid_argument("registry: sigma before row");
            std::string rest = line.substr(line.find("sigma") + 5);
            reg->table2_.back().sigma_lines.push_back(rest);
            continue;
        }
        if (section == Modules && toks[0] == "mod") {
            ModuleRow row;
            row.shape = toks[1];
            row.source = field(toks, "src");
            reg->modules_.push_back(std::move(row));
            continue;
        }
        if (section == Modules && toks[0] == "extra") {
            if (reg->modules_.empty()) throw std::invalid_argument("registry: extra before mod");
            GenSpec g;
            for (size_t i = 1; i < toks.size(); ++i) {
                const std::string& t = toks[i];
                if (t.rfind("if(", 0) == 0 && t.back() == ')') {
                    g.guard = paren_body(t, 2);
                } else if (t.rfind("for(", 0) == 0 && t.back() == ')') {
                    auto parts = split_commas(paren_body(t, 3));
                    if (parts.size() != 3)
                        throw std::invalid_argument("registry: bad loop '" + t + "'");
                    g.loop_var = parts[0];
                    g.loop_lo = parts[1];
                    g.loop_hi = parts[2];
                } else if (t.rfind("a=", 0) == 0) {
                    g.a_exprs = split_commas(t.substr(2));
                } else if (t.rfind("t1=", 0) == 0 || t.rfind("t2=", 0) == 0) {
                    g.targets.push_back(t.substr(3));
                } else {
                    throw std::invalid_argument("registry: bad extra token '" + t + "'");
                }
            }
            reg->modules_.back().extras.push_back(std::move(g));
            continue;
        }
        throw std::invalid_argument("registry: unexpected line '" + line + "'");
    }
    return reg;
}

std::shared_ptr<const Registry> Registry::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("registry: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

namespace {
std::shared_ptr<const Registry>& active_slot() {
    static std::shared_ptr<const Registry> slot;
    return slot;
}
std::once_flag builtin_once;
std::shared_ptr<const Registry> builtin_ptr;
} // namespace

const Registry& Registry::builtin() {
    std::call_once(builtin_once, [] { builtin_ptr = parse(kDefaultRegistryText); });
    return *builtin_ptr;
}

const Registry& active_registry() {
    auto& slot = active_slot();
    if (slot) return *slot;
    return Registry::builtin();
}

void set_active_registry(std::shared_ptr<const Registry> reg) { active_slot() = std::move(reg); }

const Registry::ModuleRow* Registry::module_row(const std::string& shape) const {
    for (const auto& m : modules_)
        if (m.shape == shape) return &m;
    return nullptr;
}

// ------------------------------------------------------------ primitive cases

namespace {

std::vector<IVec> expand_sigma(const Registry::Table2Row& row, long long l, long long k) {
    std::vector<IVec> out;
    VarMap base{{"l", l}, {"k", k}};
    for (const std::string& line : row.sigma_lines) {
        auto toks = split_ws(line);
        std::string loop_var, loop_lo, loop_hi;
        std::vector<SigmaTerm> terms;
        for (const std::string& tok : toks) {
            if (tok == ":") continue;
            if (tok.rfind("for(", 0) == 0) {
                std::string body = tok;
                if (body.back() == ':') body.pop_back();
                auto parts = split_commas(paren_body(body, 3));
                if (parts.size() != 3)
                    throw std::invalid_argument("registry: bad sigma loop '" + tok + "'");
                loop_var = parts[0];
                loop_lo = parts[1];
                loop_hi = parts[2];
                continue;
            }
            terms.push_back(parse_sigma_term(tok));
        }
        auto emit = [&](const VarMap& vars) {
            IVec v(l, 0);
            for (const auto& t : terms) {
                if (t.is_sum) {
                    long long lo = eval_expr(t.lo, vars), hi = eval_expr(t.hi, vars);
                    for (long long j = lo; j <= hi; ++j) {
                        VarMap inner = vars;
                        inner[t.var] = j;
                        long long p = eval_expr(t.pos, inner);
                        if (p < 1 || p > l) throw std::logic_error("registry sigma: position out of range");
                        v[p - 1] += eval_expr(t.coeff, inner);
                    }
                } else {
                    long long p = eval_expr(t.pos, vars);
                    if (p < 1 || p > l) throw std::logic_error("registry sigma: position out of range");
                    v[p - 1] += eval_expr(t.coeff, vars);
                }
            }
            out.push_back(std::move(v));
        };
        if (loop_var.empty()) {
            emit(base);
        } else {
            long long lo = eval_expr(loop_lo, base), hi = eval_expr(loop_hi, base);
            for (long long i = lo; i <= hi; ++i) {
                VarMap vars = base;
                vars[loop_var] = i;
                emit(vars);
            }
        }
    }
    return out;
}

} // namespace

std::optional<Registry::PrimitiveCase> Registry::primitive_lookup(const RootSystem& g,
                                                                  int node) const {
    if (!g.type().is_simple())
        throw PreconditionError("primitive_lookup: group must be simple");
    long long l = g.rank();

    // Exceptional isomorphisms (B2 = C2, D3 = A3): relabel to the canonical
    // presentation, look up there, pull the templates back.
    {
        std::vector<int> all(l);
        for (int i = 0; i < (int)l; ++i) all[i] = i;
        auto comps = identify_subdiagram(g, all);
        const auto& c = comps.front();
        if (comps.size() == 1 && c.series != g.type().components[0].series) {
            auto canon = RootSystem::build(DynkinType(c.series, c.rank));
            int canon_node = 0;
            while (c.nodes[canon_node] != node) ++canon_node;
            auto pc = primitive_lookup(*canon, canon_node);
            if (!pc) return std::nullopt;
            pc->g = g.type();
            pc->node = node;
            for (IVec& v : pc->sigma) {
                IVec back(l, 0);
                for (int i = 0; i < (int)l; ++i) back[c.nodes[i]] = v[i];
                v = std::move(back);
            }
            return pc;
        }
    }
    for (const auto& perm : g.diagram_automorphisms()) {
        long long k = perm[node] + 1;
        for (const auto& row : table2_) {
            if (row.series != g.type().components[0].series) continue;
            VarMap vars{{"l", l}, {"k", k}};
            if (row.node_expr != "k" && eval_expr(row.node_expr, vars) != k) continue;
            if (!eval_cond(row.cond_expr, vars)) continue;
            PrimitiveCase pc;
            pc.row = row.id;
            pc.g = g.type();
            pc.node = node;
            pc.rk = (int)eval_expr(row.rk_expr, vars);
            for (const IVec& tmpl : expand_sigma(row, l, k)) {
                IVec back(l, 0);
                for (int i = 0; i < (int)l; ++i) back[i] = tmpl[perm[i]];
                pc.sigma.push_back(std::move(back));
            }
            if ((int)pc.sigma.size() != pc.rk)
                throw std::logic_error("registry: sigma count disagrees with rk column");
            return pc;
        }
    }
    return std::nullopt;
}

// --------------------------------------------------------------- the matcher

namespace {

struct ShapeMatch {
    std::string shape;
    std::vector<int> summands;                 // descriptor summand indices, shape order
    std::vector<SubdiagramComponent> factors;  // shape order
    std::vector<std::vector<int>> oriented;    // per factor: nodes for fw-depth lookup
    VarMap vars;                               // r1, r2, n1, n2
    std::vector<long long> expected_dims;      // per summand
};

struct ComponentOutcome {
    bool matched = false;
    bool unknown = false;
    std::string reason;
    ShapeMatch match;
};

ComponentOutcome not_spherical(std::string reason) {
    ComponentOutcome o;
    o.reason = std::move(reason);
    return o;
}
ComponentOutcome unknown(std::string reason) {
    ComponentOutcome o;
    o.unknown = true;
    o.reason = std::move(reason);
    return o;
}

// position of the unique attachment of `hat` on `factor` (index into
// factor.nodes) and its coefficient; nullopt if not a single-node attachment.
std::optional<std::pair<int, long long>> single_attachment(const RootSystem& rs, const IVec& hat,
                                                           const SubdiagramComponent& factor) {
    int pos = -1;
    long long coeff = 0;
    for (size_t i = 0; i < factor.nodes.size(); ++i) {
        long long p = rs.pairing(hat, factor.nodes[i]);
        if (p == 0) continue;
        if (pos >= 0) return std::nullopt;
        pos = (int)i;
        coeff = p;
    }
    if (pos < 0) return std::nullopt;
    return std::make_pair(pos, coeff);
}

std::vector<int> oriented_from(const SubdiagramComponent& f, bool reversed) {
    std::vector<int> o = f.nodes;
    if (reversed) std::reverse(o.begin(), o.end());
    return o;
}

ComponentOutcome match_single_factor_single_summand(const SubdiagramComponent& f, int pos,
                                                    long long coeff) {
    int r = f.rank;
    ComponentOutcome o;
    o.matched = true;
    auto& m = o.match;
    m.factors = {f};
    m.vars = {{"r1", r}, {"n1", r + 1}};
    switch (f.series) {
        case Series::A: {
            bool end0 = pos == 0, end1 = pos == r - 1;
            if (coeff == 1 && (end0 || end1)) {
                m.shape = "A.std";
                m.oriented = {oriented_from(f, end1 && r > 1)};
                m.expected_dims = {r + 1};
                return o;
            }
            if (coeff == 2 && (end0 || end1)) {
                m.shape = "A.sym2";
                m.oriented = {oriented_from(f, end1 && r > 1)};
                m.expected_dims = {(long long)(r + 1) * (r + 2) / 2};
                return o;
            }
            if (coeff == 1 && r >= 3 && (pos == 1 || pos == r - 2)) {
                m.shape = "A.wedge2";
                m.oriented = {oriented_from(f, pos == r - 2 && pos != 1)};
                m.expected_dims = {(long long)(r + 1) * r / 2};
                return o;
            }
            return not_spherical("A-factor module with highest weight outside the classification");
        }
        case Series::B: {
            if (coeff == 1 && pos == 0) {
                m.shape = "BD.vec";
                m.oriented = {f.nodes};
                m.expected_dims = {2LL * r + 1};
                return o;
            }
            if (coeff == 1 && pos == r - 1 && (r == 3 || r == 4)) {
                m.shape = "B.spin";
                m.oriented = {oriented_from(f, true)};
                m.expected_dims = {r == 3 ? 8LL : 16LL};
                return o;
            }
            return not_spherical("B-factor module outside the classification");
        }
        case Series::C: {
            if (coeff == 1 && pos == 0) {
                m.shape = "C.std";
                m.oriented = {f.nodes};
                m.expected_dims = {2LL * r};
                return o;
            }
            if (coeff == 1 && r == 2 && pos == 1) {
                m.shape = "BD.vec"; // SO5 vector through the B2 = C2 identification
                m.oriented = {oriented_from(f, true)};
                m.expected_dims = {5LL};
                return o;
            }
            return not_spherical("C-factor module outside the classification");
        }
        case Series::D: {
            if (coeff == 1 && pos == 0) {
                m.shape = "BD.vec";
                m.oriented = {f.nodes};
                m.expected_dims = {2LL * r};
                return o;
            }
            if (coeff == 1 && (pos == r - 1 || pos == r - 2)) {
                if (r == 4) {
                    m.shape = "BD.vec"; // 8-dim half-spin, triality-equivalent to the vector
                    m.oriented = {f.nodes};
                    m.expected_dims = {8LL};
                    return o;
                }
                if (r == 5) {
                    m.shape = "D5.halfspin";
                    m.oriented = {f.nodes};
                    m.expected_dims = {16LL};
                    return o;
                }
            }
            return not_spherical("D-factor module outside the classification");
        }
        case Series::E: {
            if (r == 6 && coeff == 1 && (pos == 0 || pos == 5)) {
                m.shape = "E6.27";
                m.oriented = {oriented_from(f, pos == 5)};
                m.expected_dims = {27LL};
                return o;
            }
            return not_spherical("E-factor module outside the classification");
        }
        case Series::G: {
            if (coeff == 1 && pos == 0) {
                m.shape = "G2.7";
                m.oriented = {f.nodes};
                m.expected_dims = {7LL};
                return o;
            }
            return not_spherical("G2-factor module outside the classification");
        }
        case Series::F:
            return not_spherical("F4-factor module outside the classification");
    }
    return not_spherical("unreachable");
}

} // namespace

// Shared pipeline for is_spherical / free_generators.
namespace {

struct DescriptorAnalysis {
    bool definite_false = false;
    bool unknown = false;
    std::string reason;
    std::vector<QVec> lifts;
};

DescriptorAnalysis analyze(const Registry& reg, const SphericalModuleDescriptor& d) {
    DescriptorAnalysis out;
    const LeviDatum& ld = *d.levi;
    const RootSystem& rs = ld.rs();

    auto factors = identify_subdiagram(rs, ld.pi_L());
    int ns = (int)d.summands.size();
    int nf = (int)factors.size();

    // acting[s] = factor indices with a nonzero pairing against hat_s
    std::vector<std::vector<int>> acting(ns);
    for (int s = 0; s < ns; ++s)
        for (int f = 0; f < nf; ++f)
            for (int node : factors[f].nodes)
                if (rs.pairing(d.summands[s].hat, node) != 0) {
                    acting[s].push_back(f);
                    break;
                }

    // components of the summand <-> factor graph
    std::vector<int> comp_of_summand(ns, -1);
    std::vector<int> comp_of_factor(nf, -1);
    int ncomp = 0;
    for (int s = 0; s < ns; ++s) {
        if (comp_of_summand[s] >= 0) continue;
        int c = ncomp++;
        std::vector<int> stack_s{s};
        comp_of_summand[s] = c;
        while (!stack_s.empty()) {
            int cur = stack_s.back();
            stack_s.pop_back();
            for (int f : acting[cur]) {
                if (comp_of_factor[f] >= 0) continue;
                comp_of_factor[f] = c;
                for (int s2 = 0; s2 < ns; ++s2)
                    if (comp_of_summand[s2] < 0 &&
                        std::find(acting[s2].begin(), acting[s2].end(), f) != acting[s2].end()) {
                        comp_of_summand[s2] = c;
                        stack_s.push_back(s2);
                    }
            }
        }
    }

    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> summands, facs;
        for (int s = 0; s < ns; ++s)
            if (comp_of_summand[s] == c) summands.push_back(s);
        for (int f = 0; f < nf; ++f)
            if (comp_of_factor[f] == c) facs.push_back(f);

        ComponentOutcome oc;
        if (facs.empty()) {
            // factor-free summands are one-dimensional weight lines
            for (int s : summands) {
                if (d.summands[s].fiber.size() != 1)
                    throw std::logic_error("sphdata: trivial-action fiber of dimension > 1");
                out.lifts.push_back(to_q(d.summands[s].hat));
            }
            continue;
        }
        if (facs.size() == 1 && summands.size() == 1) {
            const auto& f = factors[facs[0]];
            auto att = single_attachment(rs, d.summands[summands[0]].hat, f);
            if (!att) {
                oc = not_spherical("highest weight not fundamental-type on its factor");
            } else {
                oc = match_single_factor_single_summand(f, att->first, att->second);
            }
            oc.match.summands = {summands[0]};
        } else if (facs.size() == 1 && summands.size() == 2) {
            const auto& f = factors[facs[0]];
            if (f.series != Series::A) {
                oc = unknown("two summands sharing a non-A factor");
            } else {
                auto a0 = single_attachment(rs, d.summands[summands[0]].hat, f);
                auto a1 = single_attachment(rs, d.summands[summands[1]].hat, f);
                if (!a0 || !a1 || a0->second != 1 || a1->second != 1) {
                    oc = unknown("shared-factor pair outside the transcribed families");
                } else {
                    int r = f.rank;
                    auto is_end = [&](int p) { return p == 0 || p == r - 1; };
                    int p0 = a0->first, p1 = a1->first;
                    oc.matched = true;
                    oc.match.factors = {f};
                    oc.match.vars = {{"r1", r}, {"n1", r + 1}};
                    long long nstd = r + 1;
                    if (is_end(p0) && is_end(p1) && (p0 == p1 || r == 1)) {
                        oc.match.shape = "A.2std";
                        oc.match.summands = {summands[0], summands[1]};
                        oc.match.oriented = {oriented_from(f, p0 == r - 1 && r > 1)};
                        oc.match.expected_dims = {nstd, nstd};
                    } else if (is_end(p0) && is_end(p1) && p0 != p1) {
                        oc.match.shape = "A.std_dual";
                        oc.match.summands = {summands[0], summands[1]};
                        oc.match.oriented = {oriented_from(f, false)};
                        oc.match.expected_dims = {nstd, nstd};
                    } else if (r >= 3 && ((is_end(p0) && !is_end(p1)) || (is_end(p1) && !is_end(p0)))) {
                        int std_s = is_end(p0) ? 0 : 1;
                        int ps = std_s == 0 ? p0 : p1;
                        int pw = std_s == 0 ? p1 : p0;
                        bool aligned = (ps == 0 && pw == 1) || (ps == r - 1 && pw == r - 2);
                        if (!aligned) {
                            oc = unknown("anti-aligned std+wedge pair not transcribed");
                        } else {
                            oc.match.shape = "A.std_wedge2";
                            oc.match.summands = {summands[std_s], summands[1 - std_s]};
                            oc.match.oriented = {oriented_from(f, ps == r - 1)};
                            oc.match.expected_dims = {nstd, (long long)(r + 1) * r / 2};
                        }
                    } else {
                        oc = unknown("shared-factor pair outside the transcribed families");
                    }
                }
            }
        } else if (facs.size() == 2 && summands.size() == 1) {
            const auto* fa = &factors[facs[0]];
            const auto* fb = &factors[facs[1]];
            const IVec& hat = d.summands[summands[0]].hat;
            auto aa = single_attachment(rs, hat, *fa);
            auto ab = single_attachment(rs, hat, *fb);
            if (!aa || !ab || aa->second != 1 || ab->second != 1) {
                oc = not_spherical("two-factor module with non-standard highest weight");
            } else if (fa->series == Series::A && fb->series == Series::A) {
                bool e0 = aa->first == 0 || aa->first == fa->rank - 1;
                bool e1 = ab->first == 0 || ab->first == fb->rank - 1;
                if (!e0 || !e1) {
                    oc = not_spherical("A x A module is not a product of standard modules");
                } else {
                    oc.matched = true;
                    oc.match.shape = "AA.tensor";
                    oc.match.summands = {summands[0]};
                    oc.match.factors = {*fa, *fb};
                    oc.match.oriented = {oriented_from(*fa, aa->first != 0),
                                         oriented_from(*fb, ab->first != 0)};
                    oc.match.vars = {{"r1", fa->rank}, {"n1", fa->rank + 1},
                                     {"r2", fb->rank}, {"n2", fb->rank + 1}};
                    oc.match.expected_dims = {(long long)(fa->rank + 1) * (fb->rank + 1)};
                }
            } else {
                // normalize to (A-factor, C-factor)
                if (fb->series == Series::A && fa->series == Series::C) {
                    std::swap(fa, fb);
                    std::swap(aa, ab);
                }
                if (fa->series == Series::A && fb->series == Series::C) {
                    bool a_end = aa->first == 0 || aa->first == fa->rank - 1;
                    bool c_first = ab->first == 0;
                    int ra = fa->rank, rc = fb->rank;
                    if (!a_end || !c_first) {
                        oc = not_spherical("A x C module is not SL x Sp on standard modules");
                    } else if (ra == 1 || ra == 2 || rc == 2) {
                        oc.matched = true;
                        oc.match.shape = ra == 1 ? "A1C.tensor" : (ra == 2 ? "A2C.tensor" : "AC2.tensor");
                        oc.match.summands = {summands[0]};
                        oc.match.factors = {*fa, *fb};
                        oc.match.oriented = {oriented_from(*fa, aa->first != 0), fb->nodes};
                        oc.match.vars = {{"r1", ra}, {"n1", ra + 1}, {"r2", rc}, {"n2", rc + 1}};
                        oc.match.expected_dims = {(long long)(ra + 1) * 2 * rc};
                    } else {
                        oc = not_spherical("SL_n x Sp_2m with n > 4, m > 2 is not spherical");
                    }
                } else {
                    oc = not_spherical("two-factor module outside the classification");
                }
            }
        } else if (summands.size() == 1) {
            oc = not_spherical("module with three or more acting factors");
        } else {
            oc = unknown("shared-factor configuration outside the transcribed families");
        }

        if (!oc.matched) {
            if (oc.unknown) {
                out.unknown = true;
                out.reason = oc.reason;
                return out;
            }
            out.definite_false = true;
            out.reason = oc.reason;
            return out;
        }

        // dimension guard: the highest weight determines the module
        for (size_t i = 0; i < oc.match.summands.size(); ++i) {
            long long dim = (long long)d.summands[oc.match.summands[i]].fiber.size();
            if (dim != oc.match.expected_dims[i])
                throw std::logic_error("sphdata: fiber dimension disagrees with matched shape " +
                                       oc.match.shape);
        }

        const Registry::ModuleRow* row = reg.module_row(oc.match.shape);
        if (!row) {
            out.unknown = true;
            out.reason = "shape " + oc.match.shape + " missing from the registry data";
            return out;
        }

        // implicit generators: the summand highest weights
        for (int s : oc.match.summands) out.lifts.push_back(to_q(d.summands[s].hat));

        // extra generators
        for (const auto& gen : row->extras) {
            VarMap base = oc.match.vars;
            if (!gen.guard.empty() && eval_expr(gen.guard, base) <= 0) continue;
            long long lo = 0, hi = 0;
            bool looped = !gen.loop_var.empty();
            if (looped) {
                lo = eval_expr(gen.loop_lo, base);
                hi = eval_expr(gen.loop_hi, base);
            }
            for (long long it = looped ? lo : 0; looped ? it <= hi : it == 0; ++it) {
                VarMap vars = base;
                if (looped) vars[gen.loop_var] = it;
                if (gen.a_exprs.size() != oc.match.summands.size())
                    throw std::logic_error("sphdata: generator arity mismatch in " + oc.match.shape);
                QVec raw(rs.rank(), Rat(0));
                for (size_t s = 0; s < gen.a_exprs.size(); ++s) {
                    long long a = eval_expr(gen.a_exprs[s], vars);
                    const IVec& h = d.summands[oc.match.summands[s]].hat;
                    for (int j = 0; j < rs.rank(); ++j) raw[j] += Rat(a * h[j]);
                }
                if (gen.targets.size() != oc.match.factors.size())
                    throw std::logic_error("sphdata: target arity mismatch in " + oc.match.shape);
                for (size_t fi = 0; fi < oc.match.factors.size(); ++fi) {
                    const auto& fac = oc.match.factors[fi];
                    const auto& oriented = oc.match.oriented[fi];
                    // desired dominant coordinates on this factor
                    std::map<int, long long> want; // node -> coefficient
                    const std::string& tgt = gen.targets[fi];
                    size_t start = 0;
                    if (tgt != "zero") {
                        while (start < tgt.size()) {
                            // split on '+' at parenthesis depth 0 only
                            int depth = 0;
                            size_t plus = std::string::npos;
                            for (size_t q = start; q < tgt.size(); ++q) {
                                if (tgt[q] == '(') ++depth;
                                else if (tgt[q] == ')') --depth;
                                else if (tgt[q] == '+' && depth == 0) { plus = q; break; }
                            }
                            std::string piece = tgt.substr(start, plus == std::string::npos
                                                                      ? std::string::npos
                                                                      : plus - start);
                            long long mult = 1;
                            std::string fn = piece;
                            if (piece.rfind("2fw(", 0) == 0) { mult = 2; fn = piece.substr(1); }
                            if (fn.rfind("fw(", 0) == 0 && fn.back() == ')') {
                                long long dpt = eval_expr(fn.substr(3, fn.size() - 4), vars);
                                if (dpt >= 1 && dpt <= (long long)oriented.size())
                                    want[oriented[dpt - 1]] += mult;
                            } else if (fn.rfind("fwnode(", 0) == 0 && fn.back() == ')') {
                                long long b = eval_expr(fn.substr(7, fn.size() - 8), vars);
                                want[fac.nodes[b - 1]] += mult;
                            } else if (fn == "fwmirror") {
                                // image of the attachment node under the factor flip
                                int att_node = oc.match.oriented[fi][0];
                                size_t bpos = 0;
                                while (fac.nodes[bpos] != att_node) ++bpos;
                                want[fac.nodes[fac.nodes.size() - 1 - bpos]] += mult;
                            } else {
                                throw std::logic_error("sphdata: bad target '" + piece + "'");
                            }
                            if (plus == std::string::npos) break;
                            start = plus + 1;
                        }
                    }
                    // subtract the root combination bringing the pairings to `want`
                    int fr = fac.rank;
                    QMat sys(fr, QVec(fr, Rat(0)));
                    QVec rhs(fr);
                    for (int i2 = 0; i2 < fr; ++i2) {
                        for (int j2 = 0; j2 < fr; ++j2)
                            sys[i2][j2] = Rat(rs.cartan_matrix()[fac.nodes[i2]][fac.nodes[j2]]);
                        long long t = 0;
                        auto itw = want.find(fac.nodes[i2]);
                        if (itw != want.end()) t = itw->second;
                        rhs[i2] = rs.pairing(raw, fac.nodes[i2]) - Rat(t);
                    }
                    auto x = q_solve(sys, rhs);
                    if (!x) throw std::logic_error("sphdata: singular factor Cartan matrix");
                    for (int j2 = 0; j2 < fr; ++j2) {
                        if (!(*x)[j2].is_integer() || (*x)[j2].sign() < 0)
                            throw std::logic_error("sphdata: generator recipe for " + oc.match.shape +
                                                   " is not a Z+ root subtraction");
                        raw[fac.nodes[j2]] -= (*x)[j2];
                    }
                }
                if (!is_integral(raw))
                    throw std::logic_error("sphdata: non-integral generator lift in " + oc.match.shape);
                out.lifts.push_back(std::move(raw));
            }
        }
    }
    return out;
}

bool lifts_independent(const LeviDatum& ld, const Sublattice& xi, const std::vector<QVec>& lifts) {
    size_t npair = ld.pi_L().size();
    size_t nxc = (size_t)ld.xc_rank();
    QMat rows;
    for (const QVec& lift : lifts) {
        QVec row(npair + nxc, Rat(0));
        for (size_t a = 0; a < npair; ++a) row[a] = ld.rs().pairing(lift, ld.pi_L()[a]);
        QVec xc = ld.xc_coords(ld.restrict(lift));
        for (size_t a = 0; a < nxc; ++a) row[npair + a] = xc[a];
        rows.push_back(std::move(row));
    }
    size_t nlifts = rows.size();
    for (const QVec& b : xi.basis_vectors()) {
        QVec row(npair + nxc, Rat(0));
        for (size_t a = 0; a < nxc; ++a) row[npair + a] = b[a];
        rows.push_back(std::move(row));
    }
    return q_rank(rows) == (int)(nlifts + xi.rank());
}

} // namespace

bool Registry::is_spherical(const SphericalModuleDescriptor& d, std::string* why) const {
    auto an = analyze(*this, d);
    if (an.definite_false) {
        if (why) *why = an.reason;
        return false;
    }
    if (an.unknown) throw UnknownModuleError(an.reason);
    if (!lifts_independent(*d.levi, d.xi, an.lifts)) {
        if (why) *why = "free generators restrict dependently (central character condition fails)";
        return false;
    }
    return true;
}

std::vector<QVec> Registry::free_generators(const SphericalModuleDescriptor& d) const {
    auto an = analyze(*this, d);
    if (an.unknown) throw UnknownModuleError(an.reason);
    if (an.definite_false)
        throw PreconditionError("free_generators: module is not spherical: " + an.reason);
    if (!lifts_independent(*d.levi, d.xi, an.lifts))
        throw PreconditionError("free_generators: module is not spherical (dependent generators)");
    return an.lifts;
}

std::vector<Registry::FreeGenerator> Registry::free_generators_with_images(
    const SphericalModuleDescriptor& d) const {
    std::vector<FreeGenerator> out;
    const LeviDatum& ld = *d.levi;
    for (QVec& lift : free_generators(d)) {
        QVec image;
        for (int a : ld.pi_L()) image.push_back(ld.rs().pairing(lift, a));
        for (const Rat& c : ld.xc_coords(ld.restrict(lift))) image.push_back(c);
        out.push_back({std::move(lift), std::move(image)});
    }
    return out;
}

} // namespace sphroots
