#include "triavg/io.hpp"

#include <fstream>
#include <sstream>

namespace triavg {

namespace {

struct Reader {
    std::istream& in;
    std::string name;
    int line = 0;
    std::string cur;
    bool have = false;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument(name + ":" + std::to_string(line) + ": " + msg);
    }
    // next non-empty, non-comment line
    bool next() {
        while (std::getline(in, cur)) {
            ++line;
            std::size_t h = cur.find('#');
            if (h != std::string::npos) cur = cur.substr(0, h);
            std::size_t b = cur.find_last_not_of(" \t\r");
            if (b == std::string::npos) continue;
            cur = cur.substr(0, b + 1);
            have = true;
            return true;
        }
        have = false;
        return false;
    }
    std::vector<std::string> fields() const {
        std::vector<std::string> out;
        std::istringstream ss(cur);
        std::string f;
        while (ss >> f) out.push_back(f);
        return out;
    }
};

int to_int(Reader& r, const std::string& s) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) r.fail("expected an integer, got '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        r.fail("expected an integer, got '" + s + "'");
    } catch (const std::out_of_range&) {
        r.fail("integer out of range: '" + s + "'");
    }
}

Rat to_rat(Reader& r, const std::string& s) {
    try {
        return Rat::parse(s);
    } catch (const std::exception&) {
        r.fail("expected a rational, got '" + s + "'");
    }
}

// reads tensor entry lines `i j k p/q`; stops on the next keyword line,
// leaving it in r.cur
void read_tensor(Reader& r, Tensor3& t) {
    while (r.next()) {
        auto f = r.fields();
        if (f.size() == 1) return;  // a new keyword; caller re-dispatches on r.cur
        if (f.size() != 4) r.fail("tensor entry needs 'i j k value'");
        int i = to_int(r, f[0]), j = to_int(r, f[1]), k = to_int(r, f[2]);
        if (i < 0 || i >= t.dim1() || j < 0 || j >= t.dim2() || k < 0 || k >= t.dim_out())
            r.fail("tensor index out of range");
        t.at(i, j, k) = to_rat(r, f[3]);
    }
    r.fail("unterminated section (missing 'end')");
}

} // namespace

SpecFile parse_spec(std::istream& in, const std::string& name) {
    SpecFile out;
    Reader r{in, name, 0, {}, false};
    bool pending = r.next();
    while (pending || r.have) {
        pending = false;
        if (!r.have) break;
        auto f = r.fields();
        const std::string& kw = f[0];
        if (kw == "assoc" || kw == "bimodule" || kw == "triass") {
            if (!r.next()) r.fail("expected 'dim' after " + kw);
            auto g = r.fields();
            if (g.size() != 2 || g[0] != "dim") r.fail("expected 'dim <n>'");
            int dim = to_int(r, g[1]);
            // ordered tensor sub-sections; read_tensor leaves the next
            // keyword in r.cur, which must chain to the following name
            std::vector<std::pair<std::string, Tensor3*>> parts;
            AssocSpec a(dim);
            BimodSpec b;
            TriassSpec d(dim);
            if (kw == "assoc") {
                parts = {{"mu", &a.mu}};
            } else if (kw == "bimodule") {
                if (!out.assoc) r.fail("bimodule section requires an assoc section first");
                b = BimodSpec(*out.assoc, dim);
                parts = {{"nu", &b.nu}, {"l", &b.left}, {"r", &b.right}};
            } else {
                parts = {{"dashv", &d.dashv}, {"vdash", &d.vdash}, {"perp", &d.perp}};
            }
            if (!r.next()) r.fail("expected '" + parts[0].first + "'");
            for (std::size_t p = 0; p < parts.size(); ++p) {
                if (r.fields() != std::vector<std::string>{parts[p].first})
                    r.fail("expected '" + parts[p].first + "'");
                read_tensor(r, *parts[p].second);
            }
            if (r.cur != "end") r.fail("expected 'end' to close " + kw);
            if (kw == "assoc")
                out.assoc = std::move(a);
            else if (kw == "bimodule")
                out.bimodule = std::move(b);
            else
                out.triass = std::move(d);
        } else if (kw == "operator") {
            if (!r.next()) r.fail("expected 'dims' after operator");
            auto g = r.fields();
            if (g.size() != 3 || g[0] != "dims") r.fail("expected 'dims <src> <dst>'");
            LinearOp op(to_int(r, g[1]), to_int(r, g[2]));
            if (!r.next() || r.fields() != std::vector<std::string>{"map"}) r.fail("expected 'map'");
            while (r.next()) {
                auto e = r.fields();
                if (e.size() == 1) break;
                if (e.size() != 3) r.fail("matrix entry needs 'row col value'");
                int i = to_int(r, e[0]), j = to_int(r, e[1]);
                if (i < 0 || i >= op.dst_dim || j < 0 || j >= op.src_dim)
                    r.fail("matrix index out of range");
                op.matrix.at(i, j) = to_rat(r, e[2]);
            }
            if (r.cur != "end") r.fail("expected 'end' to close operator");
            out.op = std::move(op);
        } else if (kw == "weight") {
            if (f.size() != 2) r.fail("expected 'weight <p/q>'");
            out.weight = to_rat(r, f[1]);
        } else if (kw == "gspace") {
            if (f.size() != 2) r.fail("expected 'gspace <name>'");
            GradedSpace sp;
            std::vector<std::pair<int, int>> rows;
            while (r.next()) {
                auto e = r.fields();
                if (e.size() == 1 && e[0] == "end") break;
                if (e.size() != 3 || e[0] != "deg") r.fail("expected 'deg <d> <dim>' or 'end'");
                rows.push_back({to_int(r, e[1]), to_int(r, e[2])});
            }
            if (r.cur != "end") r.fail("unterminated gspace");
            if (rows.empty()) r.fail("gspace needs at least one degree");
            sp.dmin = rows[0].first;
            sp.dmax = rows[0].first;
            for (auto& [d, dim] : rows) {
                sp.dmin = std::min(sp.dmin, d);
                sp.dmax = std::max(sp.dmax, d);
            }
            sp.dims.assign(sp.dmax - sp.dmin + 1, 0);
            for (auto& [d, dim] : rows) sp.dims[d - sp.dmin] = dim;
            out.gspaces[f[1]] = std::move(sp);
        } else if (kw == "gops") {
            if (f.size() < 3) r.fail("expected 'gops <name> <degree> [trees]'");
            SpecFile::GOps ops;
            ops.degree = to_int(r, f[2]);
            ops.trees = f.size() > 3 && f[3] == "trees";
            while (r.next()) {
                if (r.cur == "end") break;
                // fields split by ';': [tree] | inputs | out | coeff
                std::vector<std::string> parts;
                std::string cur;
                for (char c : r.cur) {
                    if (c == ';') {
                        parts.push_back(cur);
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
                parts.push_back(cur);
                std::size_t want = ops.trees ? 4 : 3;
                if (parts.size() != want) r.fail("gops entry needs ';'-separated fields");
                HKey key;
                std::size_t at = 0;
                if (ops.trees) {
                    std::string enc = parts[at++];
                    std::size_t a = enc.find_first_not_of(' ');
                    std::size_t b = enc.find_last_not_of(' ');
                    if (a == std::string::npos) r.fail("empty tree field");
                    try {
                        key.tree = tree_index(PlanarTree::decode(enc.substr(a, b - a + 1)));
                    } catch (const std::exception& e) {
                        r.fail(std::string("bad tree: ") + e.what());
                    }
                } else {
                    key.tree = -1;
                }
                {
                    std::istringstream ss(parts[at++]);
                    int d, i;
                    while (ss >> d >> i) key.in.push_back({d, i});
                    if (key.in.empty()) r.fail("gops entry needs inputs");
                }
                {
                    std::istringstream ss(parts[at++]);
                    if (!(ss >> key.out.deg >> key.out.idx)) r.fail("bad output element");
                }
                std::string coeff = parts[at];
                std::size_t a = coeff.find_first_not_of(' ');
                std::size_t b = coeff.find_last_not_of(' ');
                if (a == std::string::npos) r.fail("missing coefficient");
                ops.entries.push_back({std::move(key), to_rat(r, coeff.substr(a, b - a + 1))});
            }
            if (r.cur != "end") r.fail("unterminated gops");
            out.gops[f[1]] = std::move(ops);
        } else {
            r.fail("unknown section '" + kw + "'");
        }
        // sections that consumed their own terminator need a fresh line;
        // read_tensor-style sections already sit on the next keyword
        if (r.cur == "end" || kw == "weight" || kw == "gspace" || kw == "gops" ||
            kw == "operator") {
            if (!r.next()) break;
        }
        pending = true;
    }
    return out;
}

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return parse_spec(in, path);
}

RAvgSpec SpecFile::to_ravg() const {
    if (!op) throw std::invalid_argument("spec file: operator section required");
    if (!weight) throw std::invalid_argument("spec file: weight required");
    RAvgSpec s;
    if (bimodule) {
        s.bimodule = *bimodule;
    } else if (assoc) {
        BimodSpec b(*assoc, assoc->dim);
        b.nu = assoc->mu;
        b.left = assoc->mu;
        b.right = assoc->mu;
        s.bimodule = std::move(b);
    } else {
        throw std::invalid_argument("spec file: assoc or bimodule section required");
    }
    if (op->src_dim != s.bimodule.dimB || op->dst_dim != s.bimodule.algebra.dim)
        throw std::invalid_argument("spec file: operator shape does not match the carrier");
    s.P = *op;
    s.lambda = *weight;
    return s;
}

Direction SpecFile::to_direction(const CohomologyContext& c) const {
    Direction d;
    d.mu1 = Tensor3(c.dimA(), c.dimA(), c.dimA());
    d.nu1 = Tensor3(c.dimB(), c.dimB(), c.dimB());
    d.l1 = Tensor3(c.dimA(), c.dimB(), c.dimB());
    d.r1 = Tensor3(c.dimB(), c.dimA(), c.dimB());
    d.p1 = LinearOp(c.dimB(), c.dimA());
    if (assoc) {
        if (assoc->dim != c.dimA()) throw std::invalid_argument("direction: dim mismatch (mu1)");
        d.mu1 = assoc->mu;
    }
    if (bimodule) {
        if (bimodule->dimB != c.dimB()) throw std::invalid_argument("direction: dim mismatch (nu1)");
        d.nu1 = bimodule->nu;
        d.l1 = bimodule->left;
        d.r1 = bimodule->right;
    }
    if (op) {
        if (op->src_dim != c.dimB() || op->dst_dim != c.dimA())
            throw std::invalid_argument("direction: operator shape mismatch");
        d.p1 = *op;
    }
    return d;
}

HFamily SpecFile::bind_ops(const std::string& name, const GradedSpace& sp) const {
    auto it = gops.find(name);
    if (it == gops.end()) throw std::invalid_argument("missing gops section '" + name + "'");
    HFamily fam(sp, it->second.degree, it->second.trees, 6);
    for (const auto& [k, v] : it->second.entries) fam.add(k, v);
    return fam;
}

namespace {

void dump_tensor(std::ostream& os, const Tensor3& t) {
    for (int i = 0; i < t.dim1(); ++i)
        for (int j = 0; j < t.dim2(); ++j)
            for (int k = 0; k < t.dim_out(); ++k)
                if (!t.at(i, j, k).is_zero())
                    os << i << " " << j << " " << k << " " << t.at(i, j, k).str() << "\n";
}

} // namespace

std::string dump_spec(const SpecFile& s) {
    std::ostringstream os;
    if (s.assoc) {
        os << "assoc\ndim " << s.assoc->dim << "\nmu\n";
        dump_tensor(os, s.assoc->mu);
        os << "end\n";
    }
    if (s.bimodule) {
        os << "bimodule\ndim " << s.bimodule->dimB << "\nnu\n";
        dump_tensor(os, s.bimodule->nu);
        os << "l\n";
        dump_tensor(os, s.bimodule->left);
        os << "r\n";
        dump_tensor(os, s.bimodule->right);
        os << "end\n";
    }
    if (s.triass) {
        os << "triass\ndim " << s.triass->dim << "\ndashv\n";
        dump_tensor(os, s.triass->dashv);
        os << "vdash\n";
        dump_tensor(os, s.triass->vdash);
        os << "perp\n";
        dump_tensor(os, s.triass->perp);
        os << "end\n";
    }
    if (s.op) {
        os << "operator\ndims " << s.op->src_dim << " " << s.op->dst_dim << "\nmap\n";
        for (int i = 0; i < s.op->dst_dim; ++i)
            for (int j = 0; j < s.op->src_dim; ++j)
                if (!s.op->matrix.at(i, j).is_zero())
                    os << i << " " << j << " " << s.op->matrix.at(i, j).str() << "\n";
        os << "end\n";
    }
    if (s.weight) os << "weight " << s.weight->str() << "\n";
    for (const auto& [name, sp] : s.gspaces) {
        os << "gspace " << name << "\n";
        for (int d = sp.dmin; d <= sp.dmax; ++d)
            if (sp.dim(d) > 0) os << "deg " << d << " " << sp.dim(d) << "\n";
        os << "end\n";
    }
    for (const auto& [name, ops] : s.gops) {
        os << "gops " << name << " " << ops.degree << (ops.trees ? " trees" : "") << "\n";
        for (const auto& [k, v] : ops.entries) {
            if (ops.trees) os << enumerate_trees(int(k.in.size()))[k.tree].encode() << " ;";
            bool first = true;
            for (const auto& e : k.in) {
                os << (first ? " " : "  ") << e.deg << " " << e.idx;
                first = false;
            }
            os << " ; " << k.out.deg << " " << k.out.idx << " ; " << v.str() << "\n";
        }
        os << "end\n";
    }
    return os.str();
}

std::string dump_cochain(const Cochain& f) {
    std::ostringstream os;
    for (const auto& [k, v] : f.coeffs()) {
        os << k.tree << " |";
        for (int i : k.in) os << " " << i;
        os << " | " << k.out << " | " << v.str() << "\n";
    }
    return os.str();
}

} // namespace triavg
