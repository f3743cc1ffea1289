#pragma once

#include <memory>
#include <vector>

#include "kq/rep.hpp"

namespace kq {

// A Young diagram whose cell (a,b) carries color (a-b) mod m; encodes a
// Z/m-invariant monomial ideal of C[x,y] for the action (x,y) -> (wx, w^-1 y).
struct ColoredPartition {
    std::vector<int> parts; // weakly decreasing row lengths
    int m = 0;
    std::vector<long long> content; // per color 0..m-1

    int size() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    // cells are (a, b) = (column, row) with 0 <= b < rows, 0 <= a < parts[b]
    std::vector<std::pair<int, int>> cells() const;
    bool contains(int a, int b) const {
        return b >= 0 && b < static_cast<int>(parts.size()) && a >= 0 && a < parts[b];
    }
};

ColoredPartition make_colored_partition(std::vector<int> parts, int m);

// All partitions of sum(v) whose color content equals v.
std::vector<ColoredPartition> enumerate_colored_partitions(int m, const DimVector& v);

// All partitions of n (helper for count consistency checks).
std::vector<std::vector<int>> enumerate_partitions(int n);

// The module C[x,y]/J on the framed McKay quiver of Z/m: basis cells sorted
// by color, x and y acting as multiplication between color components, the
// framing arrow sending 1 to the cell (0,0), b* = 0. Exactly flat and
// theta-stable for theta in C_v^+.
Rep<Rat> partition_to_rep(const ColoredPartition& p,
                          std::shared_ptr<const FramedQuiver> quiver);

enum class Verdict { Stable, Semistable, Unstable };

// Definitional King stability over a finite field: enumerate every
// arrow-closed family of subspaces and apply the inequalities literally.
// Guarded to total dimension <= 6.
template <int P>
Verdict brute_force_stability(const Rep<GF<P>>& rep, const Stability& theta);

// All subspaces of GF(P)^d, each as an echelon row-basis matrix.
template <int P>
std::vector<Mat<GF<P>>> all_subspaces(int d);

} // namespace kq
