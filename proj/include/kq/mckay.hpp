#pragma once

#include <string>
#include <vector>

#include "kq/dimvec.hpp"
#include "kq/errors.hpp"

namespace kq {

enum class Family { CyclicA, BinaryDihedralD, BinaryTetrahedralE6, BinaryOctahedralE7, BinaryIcosahedralE8 };

// A finite subgroup of SL(2,C), identified by its ADE family.
// For CyclicA, m is the group order (m >= 2); for BinaryDihedralD the order
// is 4m (m >= 2); the exceptional families have fixed order 24/48/120.
struct GroupFamily {
    Family family;
    int m = 0;
    long long order = 0;

    static GroupFamily cyclic(int m);
    static GroupFamily binary_dihedral(int m);
    static GroupFamily tetrahedral();
    static GroupFamily octahedral();
    static GroupFamily icosahedral();

    std::string name() const; // CLI naming: A<m-1>, D<m+2>, E6, E7, E8
};

// Parse "A3", "D4", "E8", ... (the CLI group naming scheme).
GroupFamily parse_group(const std::string& name);

// McKay graph data: irreducible representation dimensions, edge
// multiplicities adjacency[i][j] = dim Hom(rho_j, rho_i (x) V), and the
// vector delta of irrep dimensions (the affine null root).
struct McKayData {
    GroupFamily group;
    std::vector<int> irrep_dims;           // index 0 = trivial rep
    std::vector<std::vector<int>> adjacency;
    DimVector delta;

    int num_vertices() const { return static_cast<int>(irrep_dims.size()); }
    int r() const { return num_vertices() - 1; }
};

struct Arrow {
    int id;
    int tail; // kVertexInf for the framing vertex
    int head;
};

// Doubled framed McKay quiver: arrows come in involutive pairs (a, a*) with
// epsilon(a) != epsilon(a*), plus the distinguished framing pair b: inf -> 0
// and b*: 0 -> inf.
struct FramedQuiver {
    int r = 0; // unframed vertices are 0..r
    std::vector<Arrow> arrows;
    std::vector<int> partner; // involution on arrow ids
    std::vector<int> epsilon; // +1 / -1 per arrow
    int b_id = -1;            // framing arrow inf -> 0
    int bstar_id = -1;        // framing arrow 0 -> inf

    int num_unframed() const { return r + 1; }
    int num_arrows() const { return static_cast<int>(arrows.size()); }

    long long vertex_dim(const DimVector& d, int vertex) const {
        return vertex == kVertexInf ? d.inf : d.comp.at(static_cast<size_t>(vertex));
    }

    // Number of unordered arrow pairs between two unframed vertices.
    int pair_count(int i, int j) const;
};

McKayData build_mckay(const GroupFamily& group);

FramedQuiver frame(const McKayData& mckay);

// All permutations of {0..r} preserving adjacency and irrep dimensions,
// sorted lexicographically (one-line notation).
std::vector<std::vector<int>> diagram_automorphisms(const McKayData& mckay);

// The vertex iota(0) for the lexicographically smallest diagram automorphism
// iota with iota(i) = 0. Requires dim rho_i = 1.
int iota_of_zero(const McKayData& mckay, int i);

// Deterministic DOT output for the framed quiver Q, the McKay quiver
// Q_Gamma, or Q* (Q minus b*).
enum class QuiverView { Framed, Unframed, Star };
std::string to_dot(const McKayData& mckay, const FramedQuiver& q, QuiverView view);

} // namespace kq
