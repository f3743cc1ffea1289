#pragma once

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "kq/matrix.hpp"
#include "kq/mckay.hpp"
#include "kq/rational.hpp"
#include "kq/rep.hpp"

namespace kq {

enum class AlgebraKind { Pi, A, B, BI, AI };

// A path in the (framed) McKay quiver, stored in application order:
// arrows[0] acts first. src is the tail of the whole path.
struct AlgPath {
    int src = 0; // kVertexInf or 0..r
    std::vector<int> arrows;
};

// Reference to a standard-basis path class: degree, endpoint slots
// (vertex_slot encoding) and ordinal within the block's standard basis.
struct ClassKey {
    int deg, src_slot, dst_slot, idx;
    auto operator<=>(const ClassKey&) const = default;
};

// Degreewise basis of path classes modulo the graded pieces of the
// preprojective relation ideal, up to a degree cap. Cornered kinds (B_I,
// A_I) are the ambient algebra with an endpoint filter; their products are
// computed in the ambient algebra.
class TruncatedAlgebra {
public:
    static TruncatedAlgebra build(AlgebraKind kind, const McKayData& mckay,
                                  const std::set<int>& I, int cap);

    AlgebraKind kind() const { return kind_; }
    int cap() const { return cap_; }
    const FramedQuiver& quiver() const { return *quiver_; }
    const std::set<int>& corner() const { return corner_slots_; }

    // dimension of the standard basis in one (degree, src, dst) block
    int block_dim(int deg, int src_vertex, int dst_vertex) const;
    // total dimension of degrees <= deg with endpoints in this algebra
    long long dim_upto(int deg) const;
    // same restricted to given endpoint vertices
    long long dim_upto(int deg, int src_vertex, int dst_vertex) const;

    std::vector<ClassKey> classes() const; // all standard classes (filtered)
    std::vector<ClassKey> classes(int src_vertex, int dst_vertex) const;
    const AlgPath& representative(const ClassKey& k) const;

    // express a path in the standard basis of its block
    std::map<ClassKey, Rat> reduce_path(const AlgPath& p) const;

    bool endpoint_allowed(int vertex_slot) const;

private:
    friend struct AlgElem;
    struct Block {
        std::vector<int> path_ids;                // lex order
        std::map<std::vector<int>, int> local_of; // arrow seq -> local index
        std::vector<std::vector<Rat>> rel_rows;   // reduced relation rows
        std::vector<int> rel_pivots;
        std::vector<int> std_local;               // standard (non-pivot) paths
        std::vector<int> std_ordinal;             // local -> ordinal or -1
    };

    AlgebraKind kind_ = AlgebraKind::B;
    int cap_ = 0;
    std::shared_ptr<const FramedQuiver> quiver_;
    std::vector<bool> arrow_allowed_;
    std::set<int> corner_slots_; // endpoint filter (all slots when not cornered)
    // paths_[d] in lex order; blocks_[d] keyed by (src_slot, dst_slot)
    std::vector<std::vector<AlgPath>> paths_;
    std::vector<std::map<std::pair<int, int>, Block>> blocks_;

    int path_dst(const AlgPath& p) const;
    std::map<ClassKey, Rat> reduce_in_block(int deg, int src_slot, int dst_slot,
                                            std::vector<Rat> dense) const;
};

// An element of the truncated algebra in the standard class basis. Products
// beyond the degree cap are truncated away (graded truncation, so the
// product stays associative).
struct AlgElem {
    const TruncatedAlgebra* alg = nullptr;
    std::map<ClassKey, Rat> coef;

    bool is_zero() const;
    friend AlgElem operator+(const AlgElem& x, const AlgElem& y);
    friend AlgElem operator*(const Rat& s, const AlgElem& x);
    friend AlgElem operator*(const AlgElem& x, const AlgElem& y);
    friend bool operator==(const AlgElem& x, const AlgElem& y);
};

AlgElem class_elem(const TruncatedAlgebra& alg, const ClassKey& k);
// sum of degree-0 idempotents over the given vertices
AlgElem idempotent_sum(const TruncatedAlgebra& alg, const std::set<int>& vertices);

// Element of A_I in the ternary presentation B_I + R_I + C e_inf, over a
// truncated B. Multiplication follows
//   (b1, r1, c1) (b2, r2, c2) = (b1 b2, b1 r2 + r1 c2, c1 c2).
struct TernaryElement {
    AlgElem b; // endpoints in I
    AlgElem r; // classes of e_I B e_0 (src vertex 0, dst in I)
    Rat c;
};

TernaryElement ternary_multiply(const TernaryElement& x, const TernaryElement& y);

// Cyclic B_I-module quotient of R_I: the module T with its B_I action and
// the images phi(r) of spanning elements of R_I.
struct CyclicBIModule {
    std::vector<int> I; // sorted
    std::map<int, long long> dims;
    std::vector<CorneredModule<Rat>::Gen> action;            // src, dst in I
    std::vector<std::pair<int, std::vector<Rat>>> r_images;  // (vertex i, phi(r))
};

// The B_I-quotient e_I (A-closure of the framing image) carried by a
// representation, with action maps and phi computed from its arrow matrices.
CyclicBIModule bi_quotient_from_rep(const Rep<Rat>& rep, const std::set<int>& I);

// Assemble the A_I-module C e_inf + T from a cyclic quotient: B_I acts on T,
// scalars at inf, and r in R_I acts by 1 -> phi(r). Throws NotCyclic when
// the phi images fail to generate T.
CorneredModule<Rat> assemble_AI_module(const CyclicBIModule& q);

} // namespace kq
