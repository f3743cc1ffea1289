#pragma once

#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "kq/dimvec.hpp"
#include "kq/gf.hpp"
#include "kq/matrix.hpp"
#include "kq/mckay.hpp"
#include "kq/stability.hpp"

namespace kq {

// A representation of the framed (pre)projective quiver: one matrix per
// arrow, of shape dim[head] x dim[tail]. The scalar type is exact (Rat) for
// certificates, GF(p) for the brute-force oracle, double in numeric mode.
template <class F>
struct Rep {
    std::shared_ptr<const FramedQuiver> quiver;
    DimVector dim; // framed
    std::vector<Mat<F>> maps;

    static Rep zero(std::shared_ptr<const FramedQuiver> q, DimVector d) {
        Rep r;
        r.quiver = std::move(q);
        r.dim = std::move(d);
        if (!r.dim.framed) throw PreconditionViolation("representations must be framed");
        r.maps.reserve(r.quiver->arrows.size());
        for (const Arrow& a : r.quiver->arrows)
            r.maps.emplace_back(static_cast<int>(r.vdim(a.head)),
                                static_cast<int>(r.vdim(a.tail)));
        return r;
    }

    long long vdim(int vertex) const {
        return vertex == kVertexInf ? dim.inf : dim.comp.at(static_cast<size_t>(vertex));
    }

    void check_shapes() const {
        for (const Arrow& a : quiver->arrows) {
            const Mat<F>& m = maps[a.id];
            if (m.rows != vdim(a.head) || m.cols != vdim(a.tail))
                throw ShapeMismatch("arrow matrix shape does not match dimension vector");
        }
    }
};

// Vertex-indexed helpers: slot 0 is the framing vertex, slot v+1 is vertex v.
inline int vertex_slot(int vertex) { return vertex == kVertexInf ? 0 : vertex + 1; }
inline int slot_vertex(int slot) { return slot == 0 ? kVertexInf : slot - 1; }

template <class F>
struct MomentResidual {
    Mat<F> inf;
    std::vector<Mat<F>> vert; // per unframed vertex

    bool is_zero() const {
        if (!inf.is_zero()) return false;
        for (const auto& m : vert)
            if (!m.is_zero()) return false;
        return true;
    }
};

// Vertex-wise sum over arrows with head i of epsilon(a) M_a M_{a*}; a
// representation satisfies the preprojective relation iff this vanishes.
template <class F>
MomentResidual<F> moment_residual(const Rep<F>& rep) {
    rep.check_shapes();
    const FramedQuiver& q = *rep.quiver;
    MomentResidual<F> res;
    res.inf = Mat<F>(static_cast<int>(rep.dim.inf), static_cast<int>(rep.dim.inf));
    res.vert.reserve(q.num_unframed());
    for (int v = 0; v <= q.r; ++v) {
        int d = static_cast<int>(rep.dim.comp[v]);
        res.vert.emplace_back(d, d);
    }
    for (const Arrow& a : q.arrows) {
        Mat<F> term = rep.maps[a.id] * rep.maps[q.partner[a.id]];
        if (q.epsilon[a.id] < 0) term = F(-1) * term;
        if (a.head == kVertexInf) res.inf = res.inf + term;
        else res.vert[a.head] = res.vert[a.head] + term;
    }
    return res;
}

template <class F>
struct SubmoduleWitness {
    DimVector dim;
    std::vector<Mat<F>> basis; // per slot: rows span the component

    long long dim_at(int vertex) const {
        return vertex == kVertexInf ? dim.inf : dim.comp.at(static_cast<size_t>(vertex));
    }
};

// Smallest arrow-closed family of subspaces containing the seed vectors.
template <class F>
SubmoduleWitness<F> submodule_closure(
    const Rep<F>& rep, const std::vector<std::pair<int, std::vector<F>>>& seeds) {
    const FramedQuiver& q = *rep.quiver;
    int nslots = q.r + 2;
    std::vector<SpanBasis<F>> spans;
    spans.reserve(nslots);
    for (int s = 0; s < nslots; ++s)
        spans.emplace_back(static_cast<int>(rep.vdim(slot_vertex(s))));
    // arrows grouped by tail for the worklist
    std::vector<std::vector<int>> out(nslots);
    for (const Arrow& a : q.arrows) out[vertex_slot(a.tail)].push_back(a.id);

    std::vector<std::pair<int, std::vector<F>>> work = seeds;
    while (!work.empty()) {
        auto [vertex, vec] = std::move(work.back());
        work.pop_back();
        int s = vertex_slot(vertex);
        if (!spans[s].insert(std::move(vec))) continue;
        const auto& row = spans[s].rows().back();
        for (int id : out[s])
            work.emplace_back(q.arrows[id].head, rep.maps[id].apply(row));
    }

    SubmoduleWitness<F> w;
    w.dim = rep.dim;
    w.dim.inf = spans[0].dim();
    for (int v = 0; v <= q.r; ++v) w.dim.comp[v] = spans[vertex_slot(v)].dim();
    for (int s = 0; s < nslots; ++s) w.basis.push_back(spans[s].basis_matrix());
    return w;
}

template <class F>
std::vector<std::pair<int, std::vector<F>>> framing_seed(const Rep<F>& rep) {
    if (rep.dim.inf != 1)
        throw PreconditionViolation("framing seed needs v_inf = 1");
    return {{kVertexInf, {F(1)}}};
}

// Largest arrow-closed family with zero component on `avoid`; computed as a
// decreasing fixpoint of preimage intersections (terminates: dims bounded).
template <class F>
SubmoduleWitness<F> max_submodule_avoiding(const Rep<F>& rep, const std::set<int>& avoid) {
    const FramedQuiver& q = *rep.quiver;
    int nslots = q.r + 2;
    std::vector<SpanBasis<F>> U;
    U.reserve(nslots);
    for (int s = 0; s < nslots; ++s) {
        int d = static_cast<int>(rep.vdim(slot_vertex(s)));
        SpanBasis<F> span(d);
        if (!avoid.count(slot_vertex(s)))
            for (int i = 0; i < d; ++i) {
                std::vector<F> e(d, F(0));
                e[i] = F(1);
                span.insert(std::move(e));
            }
        U.push_back(std::move(span));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Arrow& a : q.arrows) {
            int st = vertex_slot(a.tail), sh = vertex_slot(a.head);
            if (U[st].dim() == 0) continue;
            Mat<F> pre = preimage(rep.maps[a.id], U[sh]);
            // intersect U[tail] with the preimage
            SpanBasis<F> pre_span(pre.cols);
            for (int i = 0; i < pre.rows; ++i) pre_span.insert(pre.row(i));
            if (pre_span.dim() == pre.cols) continue; // full preimage, no cut
            // x in both row spaces: kernel of [U^T | -P^T]
            int du = U[st].dim(), dp = pre_span.dim(), amb = pre.cols;
            Mat<F> stacked(amb, du + dp);
            Mat<F> ub = U[st].basis_matrix(), pb = pre_span.basis_matrix();
            for (int i = 0; i < amb; ++i) {
                for (int j = 0; j < du; ++j) stacked(i, j) = ub(j, i);
                for (int j = 0; j < dp; ++j) stacked(i, du + j) = -pb(j, i);
            }
            Mat<F> ker = kernel_basis(stacked);
            SpanBasis<F> inter(amb);
            for (int i = 0; i < ker.rows; ++i) {
                std::vector<F> x(amb, F(0));
                for (int j = 0; j < du; ++j)
                    for (int c = 0; c < amb; ++c) x[c] += ker(i, j) * ub(j, c);
                inter.insert(std::move(x));
            }
            if (inter.dim() < U[st].dim()) {
                U[st] = std::move(inter);
                changed = true;
            }
        }
    }
    SubmoduleWitness<F> w;
    w.dim = rep.dim;
    w.dim.inf = U[0].dim();
    for (int v = 0; v <= q.r; ++v) w.dim.comp[v] = U[vertex_slot(v)].dim();
    for (int s = 0; s < nslots; ++s) w.basis.push_back(U[s].basis_matrix());
    return w;
}

// King (semi)stability specialised to weights in the closed cone spanned by
// the faces sigma_I. For a weight with support face I:
//   semistable  <=>  the submodule generated by the framing vector has full
//                    dimension at every vertex of I;
//   stable      <=>  that submodule is the whole representation AND no
//                    nonzero submodule avoids {inf} u I.
// The reduction is validated against the brute-force oracle before the
// pipeline issues certificates.
template <class F>
bool is_semistable(const Rep<F>& rep, const Stability& theta) {
    if (!rep.dim.framed || rep.dim.inf != 1)
        throw PreconditionViolation("stability tests need v_inf = 1");
    auto face = face_of(theta);
    if (!face) throw UnsupportedStability("weight outside the closed cone");
    if (pairing(theta, rep.dim) != 0) return false;
    SubmoduleWitness<F> c = submodule_closure(rep, framing_seed(rep));
    for (int i : *face)
        if (c.dim.comp[i] != rep.dim.comp[i]) return false;
    return true;
}

template <class F>
bool is_stable(const Rep<F>& rep, const Stability& theta) {
    if (!rep.dim.framed || rep.dim.inf != 1)
        throw PreconditionViolation("stability tests need v_inf = 1");
    auto face = face_of(theta);
    if (!face) throw UnsupportedStability("weight outside the closed cone");
    if (pairing(theta, rep.dim) != 0) return false;
    SubmoduleWitness<F> c = submodule_closure(rep, framing_seed(rep));
    if (!(c.dim == rep.dim)) return false; // generated at inf
    std::set<int> avoid = *face;
    avoid.insert(kVertexInf);
    return max_submodule_avoiding(rep, avoid).dim.total() == 0;
}

// Block-diagonal direct sum with vertex simples (zero maps).
template <class F>
Rep<F> pad_with_simples(const Rep<F>& rep, const std::map<int, long long>& multiplicities) {
    DimVector d = rep.dim;
    for (auto [v, mult] : multiplicities) {
        if (v == kVertexInf || mult < 0)
            throw PreconditionViolation("padding multiplicities live on unframed vertices");
        d.comp[v] += mult;
    }
    Rep<F> out = Rep<F>::zero(rep.quiver, d);
    for (const Arrow& a : rep.quiver->arrows) {
        const Mat<F>& src = rep.maps[a.id];
        for (int i = 0; i < src.rows; ++i)
            for (int j = 0; j < src.cols; ++j) out.maps[a.id](i, j) = src(i, j);
    }
    return out;
}

// Cornered module data: dimensions over {inf} u I and a generating family of
// path maps with endpoints there (each matrix spans part of the A_I action).
template <class F>
struct CorneredModule {
    std::vector<int> I; // sorted
    long long dim_inf = 0;
    std::map<int, long long> dims;
    struct Gen {
        int src, dst; // kVertexInf or members of I
        Mat<F> M;
    };
    std::vector<Gen> gens;
};

// j_I^* on finite modules: keep the spaces at {inf} u I and record a basis of
// the span of path maps between them (paths internally avoiding {inf} u I, of
// any length up to stabilisation; hard cap (total dim)^2 sweeps).
template <class F>
CorneredModule<F> restrict_jI(const Rep<F>& rep, const std::set<int>& I) {
    const FramedQuiver& q = *rep.quiver;
    CorneredModule<F> cm;
    cm.I.assign(I.begin(), I.end());
    cm.dim_inf = rep.dim.inf;
    for (int i : cm.I) cm.dims[i] = rep.dim.comp[i];

    std::vector<int> sources;
    sources.push_back(kVertexInf);
    for (int i : cm.I) sources.push_back(i);

    long long total = rep.dim.total();
    long long max_sweeps = total * total + 2;

    for (int u : sources) {
        int du = static_cast<int>(rep.vdim(u));
        if (du == 0) continue;
        // W[slot(v)] = span of path maps u -> v with interior outside {inf} u I
        int nslots = q.r + 2;
        std::vector<SpanBasis<F>> W;
        for (int s = 0; s < nslots; ++s) {
            int dv = static_cast<int>(rep.vdim(slot_vertex(s)));
            W.emplace_back(du * dv);
        }
        auto flat = [&](const Mat<F>& m) {
            std::vector<F> v(m.a.begin(), m.a.end());
            return v;
        };
        auto unflat = [&](const std::vector<F>& v, int rows) {
            Mat<F> m(rows, du);
            m.a.assign(v.begin(), v.end());
            return m;
        };
        for (const Arrow& a : q.arrows)
            if (a.tail == u && rep.maps[a.id].rows > 0)
                W[vertex_slot(a.head)].insert(flat(rep.maps[a.id]));
        bool changed = true;
        long long sweeps = 0;
        while (changed && sweeps++ < max_sweeps) {
            changed = false;
            for (const Arrow& a : q.arrows) {
                int w = a.tail;
                if (w == kVertexInf || I.count(w)) continue; // interior must stay outside
                int sw = vertex_slot(w), sh = vertex_slot(a.head);
                if (rep.maps[a.id].rows == 0 || W[sw].dim() == 0) continue;
                for (const auto& row : W[sw].rows()) {
                    Mat<F> seg = rep.maps[a.id] * unflat(row, static_cast<int>(rep.vdim(w)));
                    if (W[sh].insert(flat(seg))) changed = true;
                }
            }
        }
        for (int v : sources) {
            int dv = static_cast<int>(rep.vdim(v));
            if (dv == 0) continue;
            for (const auto& row : W[vertex_slot(v)].rows())
                cm.gens.push_back({u, v, unflat(row, dv)});
        }
    }
    return cm;
}

// eta_I-stability on cornered data: for dimension vector (1, n_I) this is
// exactly "generated at inf" (surjection from A_I e_inf).
template <class F>
bool cornered_generated_at_inf(const CorneredModule<F>& cm) {
    if (cm.dim_inf == 0) {
        for (auto [i, d] : cm.dims)
            if (d != 0) return false;
        return true; // the zero module
    }
    std::map<int, SpanBasis<F>> S;
    SpanBasis<F> Sinf(static_cast<int>(cm.dim_inf));
    {
        std::vector<F> e(static_cast<size_t>(cm.dim_inf), F(0));
        e[0] = F(1);
        Sinf.insert(std::move(e));
    }
    for (int i : cm.I) S.emplace(i, SpanBasis<F>(static_cast<int>(cm.dims.at(i))));
    auto span_of = [&](int v) -> SpanBasis<F>& { return v == kVertexInf ? Sinf : S.at(v); };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& g : cm.gens) {
            SpanBasis<F>& src = span_of(g.src);
            SpanBasis<F>& dst = span_of(g.dst);
            if (src.dim() == 0 || g.M.rows == 0) continue;
            // snapshot: src and dst alias for loop generators
            std::vector<std::vector<F>> rows = src.rows();
            for (const auto& row : rows)
                if (dst.insert(g.M.apply(row))) changed = true;
        }
    }
    for (int i : cm.I)
        if (S.at(i).dim() != cm.dims.at(i)) return false;
    return true;
}

// Sign-twist taking a representation valid for the quiver's epsilon to one
// valid for another admissible epsilon: negate M_{a*} on pairs that differ.
template <class F>
Rep<F> twist_to_epsilon(const Rep<F>& rep, const std::vector<int>& new_epsilon) {
    const FramedQuiver& q = *rep.quiver;
    Rep<F> out = rep;
    for (const Arrow& a : q.arrows) {
        if (q.epsilon[a.id] != 1) continue;
        if (new_epsilon[a.id] != q.epsilon[a.id])
            out.maps[q.partner[a.id]] = F(-1) * out.maps[q.partner[a.id]];
    }
    return out;
}

// Reduction mod p; fails (nullopt) when a denominator is divisible by p.
template <int P>
std::optional<Rep<GF<P>>> reduce_mod_p(const Rep<Rat>& rep) {
    Rep<GF<P>> out = Rep<GF<P>>::zero(rep.quiver, rep.dim);
    for (size_t a = 0; a < rep.maps.size(); ++a)
        for (size_t k = 0; k < rep.maps[a].a.size(); ++k) {
            const Rat& x = rep.maps[a].a[k];
            Int num = rat_num(x), den = rat_den(x);
            if (den % P == 0) return std::nullopt;
            GF<P> n(static_cast<long long>(num % P));
            GF<P> d(static_cast<long long>(den % P));
            out.maps[a].a[k] = n / d;
        }
    return out;
}

inline Rep<double> to_numeric(const Rep<Rat>& rep) {
    Rep<double> out = Rep<double>::zero(rep.quiver, rep.dim);
    for (size_t a = 0; a < rep.maps.size(); ++a)
        for (size_t k = 0; k < rep.maps[a].a.size(); ++k)
            out.maps[a].a[k] = to_double(rep.maps[a].a[k]);
    return out;
}

// The sub-representation carried by an arrow-closed witness, in the witness
// basis. Used to extract the summand through inf from a closure.
template <class F>
Rep<F> sub_representation(const Rep<F>& rep, const SubmoduleWitness<F>& w) {
    Rep<F> out;
    out.quiver = rep.quiver;
    out.dim = w.dim;
    const FramedQuiver& q = *rep.quiver;
    std::vector<SpanBasis<F>> spans;
    for (int s = 0; s < q.r + 2; ++s) {
        SpanBasis<F> sp(w.basis[s].cols);
        for (int i = 0; i < w.basis[s].rows; ++i) sp.insert(w.basis[s].row(i));
        spans.push_back(std::move(sp));
    }
    for (const Arrow& a : q.arrows) {
        int st = vertex_slot(a.tail), sh = vertex_slot(a.head);
        Mat<F> m(spans[sh].dim(), spans[st].dim());
        for (int j = 0; j < spans[st].dim(); ++j) {
            std::vector<F> img = rep.maps[a.id].apply(w.basis[st].row(j));
            std::vector<F> coords = spans[sh].coordinates(img);
            for (int i = 0; i < m.rows; ++i) m(i, j) = coords[i];
        }
        out.maps.push_back(std::move(m));
    }
    return out;
}

} // namespace kq
