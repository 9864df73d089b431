#pragma once

#include <compare>
#include <string>
#include <vector>

namespace triavg {

enum class BulletKind { LeftDashv, RightVdash, MiddlePerp };  // ⊣, ⊢, ⊥

/// Ordered rooted planar tree; every internal node has >= 2 children.
/// An n-tree has n+1 leaves; the single leaf is the unique 0-tree.
class PlanarTree {
public:
    PlanarTree() = default;  // leaf
    static PlanarTree leaf() { return PlanarTree(); }
    static PlanarTree node(std::vector<PlanarTree> children);

    bool is_leaf() const { return kids_.empty(); }
    const std::vector<PlanarTree>& children() const { return kids_; }
    int leaves() const;
    int arity() const { return leaves() - 1; }  // n for an n-tree

    /// Canonical text encoding: leaf "|", node "( c1 c2 ... ck )" joined by
    /// single spaces. Enumeration and file formats are keyed by this string.
    std::string encode() const;
    static PlanarTree decode(const std::string& s);

    friend bool operator==(const PlanarTree& a, const PlanarTree& b) {
        return a.kids_ == b.kids_;
    }
    friend std::strong_ordering operator<=>(const PlanarTree& a, const PlanarTree& b) {
        return a.encode() <=> b.encode();
    }

private:
    std::vector<PlanarTree> kids_;
};

/// All n-trees exactly once, sorted lexicographically by encoding. Memoized.
const std::vector<PlanarTree>& enumerate_trees(int n);

/// Position of t in enumerate_trees(t.arity()).
int tree_index(const PlanarTree& t);

/// Grafting T1 v ... v Tk (k >= 2): join the parts under a new root.
PlanarTree graft(const std::vector<PlanarTree>& parts);

/// Unique factor list whose grafting is t; requires >= 2 leaves.
std::vector<PlanarTree> decompose(const PlanarTree& t);

/// Face map d_i: removes leaf i (0-based, left to right) and collapses the
/// unary node the deletion may create.
PlanarTree face(const PlanarTree& t, int i);

/// Leaf-orientation classifier for slot i of an n-tree, 0 <= i <= n.
BulletKind bullet(const PlanarTree& t, int i);

/// R-maps T_{m+n-1} -> T_m and T_{m+n-1} -> T_n used by the circle products:
/// r_zero = d_i o ... o d_{i+n-2}, r_slot = d_0 o..o d_{i-2} o d_{i+n} o..o d_{m+n-1},
/// composites applied right to left.
PlanarTree r_zero(int m, int i, int n, const PlanarTree& t);
PlanarTree r_slot(int m, int i, int n, const PlanarTree& t);

/// Distinguished trees: left comb (⊣), right comb (⊢), corolla (⊥); n >= 1.
PlanarTree distinguished(int n, BulletKind kind);

/// Schröder–Hipparchus count of trees with `leaves` leaves (|T_{leaves-1}|).
long long super_catalan(int leaves);

/// Precomputed (r_zero, r_slot) index tables over T_{m+n-1} for a given
/// (m, i, n); entry t maps to (index in T_m, index in T_n). Memoized.
struct RTable {
    std::vector<int> zero;
    std::vector<int> slot;
};
const RTable& r_table(int m, int i, int n);

} // namespace triavg
