#include "triavg/trees.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace triavg {

PlanarTree PlanarTree::node(std::vector<PlanarTree> children) {
    if (children.size() < 2) throw std::invalid_argument("PlanarTree: node needs >= 2 children");
    PlanarTree t;
    t.kids_ = std::move(children);
    return t;
}

int PlanarTree::leaves() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const auto& k : kids_) n += k.leaves();
    return n;
}

std::string PlanarTree::encode() const {
    if (is_leaf()) return "|";
    std::string s = "(";
    for (const auto& k : kids_) {
        s += k.encode();
        s += ' ';
    }
    s.back() = ')';
    return s;
}

namespace {

PlanarTree decode_at(const std::string& s, std::size_t& pos) {
    if (pos >= s.size()) throw std::invalid_argument("tree: unexpected end of input");
    if (s[pos] == '|') {
        ++pos;
        return PlanarTree::leaf();
    }
    if (s[pos] != '(') throw std::invalid_argument("tree: expected '|' or '(' at position " + std::to_string(pos));
    ++pos;
    std::vector<PlanarTree> kids;
    while (true) {
        if (pos >= s.size()) throw std::invalid_argument("tree: unbalanced '('");
        if (s[pos] == ')') { ++pos; break; }
        if (s[pos] == ' ') { ++pos; continue; }
        kids.push_back(decode_at(s, pos));
    }
    if (kids.size() < 2) throw std::invalid_argument("tree: unary node rejected");
    return PlanarTree::node(std::move(kids));
}

} // namespace

PlanarTree PlanarTree::decode(const std::string& s) {
    std::size_t pos = 0;
    PlanarTree t = decode_at(s, pos);
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos != s.size()) throw std::invalid_argument("tree: trailing input at position " + std::to_string(pos));
    return t;
}

namespace {

// All trees with exactly `leaves` leaves, unsorted.
std::vector<PlanarTree> gen_by_leaves(int leaves) {
    if (leaves == 1) return {PlanarTree::leaf()};
    std::vector<PlanarTree> out;
    // compositions of `leaves` into k >= 2 parts
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            if (parts.size() < 2) return;
            std::vector<std::vector<PlanarTree>> choices;
            for (int p : parts) choices.push_back(gen_by_leaves(p));
            std::vector<std::size_t> idx(parts.size(), 0);
            while (true) {
                std::vector<PlanarTree> kids;
                for (std::size_t j = 0; j < parts.size(); ++j) kids.push_back(choices[j][idx[j]]);
                out.push_back(PlanarTree::node(std::move(kids)));
                std::size_t j = parts.size();
                while (j > 0) {
                    --j;
                    if (++idx[j] < choices[j].size()) break;
                    idx[j] = 0;
                    if (j == 0) return;
                }
            }
        }
        for (int p = 1; p <= remaining; ++p) {
            if (p == remaining && parts.empty()) continue;  // k = 1 excluded
            parts.push_back(p);
            self(self, remaining - p);
            parts.pop_back();
        }
    };
    rec(rec, leaves);
    return out;
}

struct TreeTable {
    std::vector<PlanarTree> trees;
    std::map<std::string, int> index;
};

std::mutex cache_mu;

const TreeTable& table(int n) {
    static std::map<int, TreeTable> cache;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 0) throw std::invalid_argument("enumerate_trees: negative arity");
    TreeTable t;
    t.trees = gen_by_leaves(n + 1);
    std::sort(t.trees.begin(), t.trees.end(),
              [](const PlanarTree& a, const PlanarTree& b) { return a.encode() < b.encode(); });
    for (std::size_t i = 0; i < t.trees.size(); ++i) t.index[t.trees[i].encode()] = int(i);
    return cache.emplace(n, std::move(t)).first->second;
}

} // namespace

const std::vector<PlanarTree>& enumerate_trees(int n) { return table(n).trees; }

int tree_index(const PlanarTree& t) {
    const TreeTable& tab = table(t.arity());
    auto it = tab.index.find(t.encode());
    if (it == tab.index.end()) throw std::logic_error("tree_index: tree not in table");
    return it->second;
}

PlanarTree graft(const std::vector<PlanarTree>& parts) {
    if (parts.size() < 2) throw std::invalid_argument("graft: needs >= 2 parts");
    return PlanarTree::node(parts);
}

std::vector<PlanarTree> decompose(const PlanarTree& t) {
    if (t.is_leaf()) throw std::invalid_argument("decompose: the 0-tree has no factors");
    return t.children();
}

namespace {

// Removes leaf i; returns a tree or, when the subtree reduces to nothing
// above a single child, that child (possibly a leaf).
PlanarTree remove_leaf(const PlanarTree& t, int i) {
    const auto& kids = t.children();
    int offset = 0;
    for (std::size_t c = 0; c < kids.size(); ++c) {
        int l = kids[c].leaves();
        if (i < offset + l) {
            std::vector<PlanarTree> nk = kids;
            if (kids[c].is_leaf()) {
                nk.erase(nk.begin() + c);
            } else {
                nk[c] = remove_leaf(kids[c], i - offset);
            }
            if (nk.size() == 1) return nk[0];  // collapse unary node
            return PlanarTree::node(std::move(nk));
        }
        offset += l;
    }
    throw std::out_of_range("face: leaf index out of range");
}

} // namespace

PlanarTree face(const PlanarTree& t, int i) {
    int n = t.arity();
    if (n < 1) throw std::invalid_argument("face: tree is the 0-tree");
    if (i < 0 || i > n) throw std::out_of_range("face: leaf index out of range");
    return remove_leaf(t, i);
}

namespace {

// Parent-relative position of leaf i: (children index, children count).
std::pair<int, int> leaf_position(const PlanarTree& t, int i) {
    const auto& kids = t.children();
    int offset = 0;
    for (std::size_t c = 0; c < kids.size(); ++c) {
        int l = kids[c].leaves();
        if (i < offset + l) {
            if (kids[c].is_leaf()) return {int(c), int(kids.size())};
            return leaf_position(kids[c], i - offset);
        }
        offset += l;
    }
    throw std::out_of_range("bullet: leaf index out of range");
}

} // namespace

BulletKind bullet(const PlanarTree& t, int i) {
    int n = t.arity();
    if (n < 1) throw std::invalid_argument("bullet: tree is the 0-tree");
    if (i < 0 || i > n) throw std::out_of_range("bullet: index out of range");
    const auto& kids = t.children();
    if (i == 0) {
        if (!kids.front().is_leaf()) return BulletKind::RightVdash;
        return kids.size() == 2 ? BulletKind::LeftDashv : BulletKind::MiddlePerp;
    }
    if (i == n) {
        if (!kids.back().is_leaf()) return BulletKind::LeftDashv;
        return kids.size() == 2 ? BulletKind::RightVdash : BulletKind::MiddlePerp;
    }
    auto [pos, count] = leaf_position(t, i);
    if (pos == 0) return BulletKind::LeftDashv;
    if (pos == count - 1) return BulletKind::RightVdash;
    return BulletKind::MiddlePerp;
}

PlanarTree r_zero(int m, int i, int n, const PlanarTree& t) {
    if (m < 1 || n < 1 || i < 1 || i > m) throw std::invalid_argument("r_zero: bad (m,i,n)");
    if (t.arity() != m + n - 1) throw std::invalid_argument("r_zero: tree not in T_{m+n-1}");
    PlanarTree cur = t;
    for (int j = i + n - 2; j >= i; --j) cur = face(cur, j);
    return cur;
}

PlanarTree r_slot(int m, int i, int n, const PlanarTree& t) {
    if (m < 1 || n < 1 || i < 1 || i > m) throw std::invalid_argument("r_slot: bad (m,i,n)");
    if (t.arity() != m + n - 1) throw std::invalid_argument("r_slot: tree not in T_{m+n-1}");
    PlanarTree cur = t;
    for (int j = m + n - 1; j >= i + n; --j) cur = face(cur, j);
    for (int j = i - 2; j >= 0; --j) cur = face(cur, j);
    return cur;
}

PlanarTree distinguished(int n, BulletKind kind) {
    if (n < 1) throw std::invalid_argument("distinguished: n >= 1 required");
    if (kind == BulletKind::MiddlePerp) {
        std::vector<PlanarTree> kids(n + 1, PlanarTree::leaf());
        return PlanarTree::node(std::move(kids));
    }
    PlanarTree t = PlanarTree::leaf();
    for (int k = 0; k < n; ++k) {
        if (kind == BulletKind::LeftDashv)
            t = PlanarTree::node({PlanarTree::leaf(), t});
        else
            t = PlanarTree::node({t, PlanarTree::leaf()});
    }
    return t;
}

long long super_catalan(int leaves) {
    if (leaves < 1) throw std::invalid_argument("super_catalan: leaves >= 1 required");
    // S(1) = S(2) = 1, n S(n) = 3(2n-3) S(n-1) - (n-3) S(n-2)
    std::vector<long long> s{0, 1, 1};
    for (int k = 3; k <= leaves; ++k) {
        long long v = (3 * (2LL * k - 3) * s[k - 1] - (k - 3) * s[k - 2]) / k;
        s.push_back(v);
    }
    return s[leaves];
}

const RTable& r_table(int m, int i, int n) {
    static std::map<std::tuple<int, int, int>, RTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(m, i, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto& ts = enumerate_trees(m + n - 1);
    RTable tab;
    tab.zero.reserve(ts.size());
    tab.slot.reserve(ts.size());
    for (const auto& t : ts) {
        tab.zero.push_back(tree_index(r_zero(m, i, n, t)));
        tab.slot.push_back(tree_index(r_slot(m, i, n, t)));
    }
    return cache.emplace(key, std::move(tab)).first->second;
}

} // namespace triavg
