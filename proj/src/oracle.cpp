#include "kq/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace kq {

std::vector<std::pair<int, int>> ColoredPartition::cells() const {
    std::vector<std::pair<int, int>> cs;
    for (int b = 0; b < static_cast<int>(parts.size()); ++b)
        for (int a = 0; a < parts[b]; ++a) cs.emplace_back(a, b);
    return cs;
}

ColoredPartition make_colored_partition(std::vector<int> parts, int m) {
    if (m < 2) throw PreconditionViolation("colored partitions need m >= 2");
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i] < parts[i + 1])
            throw PreconditionViolation("partition parts must be weakly decreasing");
    for (int p : parts)
        if (p <= 0) throw PreconditionViolation("partition parts must be positive");
    ColoredPartition cp;
    cp.parts = std::move(parts);
    cp.m = m;
    cp.content.assign(m, 0);
    for (auto [a, b] : cp.cells()) cp.content[((a - b) % m + m) % m] += 1;
    return cp;
}

std::vector<std::vector<int>> enumerate_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

std::vector<ColoredPartition> enumerate_colored_partitions(int m, const DimVector& v) {
    if (m < 2) throw PreconditionViolation("enumerate_colored_partitions needs m >= 2");
    if (v.framed || v.num_unframed() != m)
        throw PreconditionViolation("content vector must be unframed of length m");
    int n = static_cast<int>(v.total());
    std::vector<ColoredPartition> out;
    for (auto& parts : enumerate_partitions(n)) {
        ColoredPartition cp = make_colored_partition(parts, m);
        if (cp.content == v.comp) out.push_back(std::move(cp));
    }
    return out;
}

namespace {

// Split the quiver's arrow pairs into (x-arrow, y-arrow) roles for the
// cyclic McKay quiver: x raises the color by 1, y lowers it by 1. For m = 2
// the two parallel pairs between 0 and 1 take the two roles in build order.
struct CyclicArrowRoles {
    // per arrow id: +1 when the arrow carries x, -1 when it carries y, 0 for framing
    std::vector<int> role;
};

CyclicArrowRoles classify_cyclic_arrows(const FramedQuiver& q, int m) {
    CyclicArrowRoles roles;
    roles.role.assign(q.num_arrows(), 0);
    std::map<std::pair<int, int>, int> seen; // unordered pair -> copies seen
    for (const Arrow& a : q.arrows) {
        if (a.tail == kVertexInf || a.head == kVertexInf) continue;
        if (static_cast<size_t>(q.partner[a.id]) < static_cast<size_t>(a.id))
            continue; // visit each pair once, via its first arrow
        int i = a.tail, j = a.head;
        bool x_first;
        if (m == 2) {
            int copy = seen[{std::min(i, j), std::max(i, j)}]++;
            x_first = (copy == 0);
        } else {
            x_first = ((i + 1) % m == j);
        }
        roles.role[a.id] = x_first ? 1 : -1;
        roles.role[q.partner[a.id]] = x_first ? -1 : 1;
    }
    return roles;
}

} // namespace

Rep<Rat> partition_to_rep(const ColoredPartition& p,
                          std::shared_ptr<const FramedQuiver> quiver) {
    const FramedQuiver& q = *quiver;
    int m = p.m;
    if (q.num_unframed() != m)
        throw QuiverMismatch("quiver vertex count does not match the modulus");
    for (int c = 0; c < m; ++c) {
        int expect = (m == 2) ? 2 : 1;
        if (q.pair_count(c, (c + 1) % m) + q.pair_count((c + 1) % m, c) != 2 * expect)
            throw QuiverMismatch("quiver is not the framed cyclic McKay quiver");
    }

    DimVector d = DimVector::with_inf(1, p.content);
    Rep<Rat> rep = Rep<Rat>::zero(quiver, d);

    // basis order per color: cells sorted lexicographically by (a, b)
    std::map<std::pair<int, int>, int> index_in_color;
    std::vector<int> next(m, 0);
    for (auto cell : p.cells()) {
        int c = ((cell.first - cell.second) % m + m) % m;
        index_in_color[cell] = next[c]++;
    }
    auto color_of = [&](std::pair<int, int> cell) {
        return ((cell.first - cell.second) % m + m) % m;
    };

    // multiplication operators X_c : V_c -> V_{c+1}, Y_c : V_c -> V_{c-1}
    auto fill_block = [&](Mat<Rat>& M, bool is_x, int src_color, const Rat& scale) {
        for (auto cell : p.cells()) {
            if (color_of(cell) != src_color) continue;
            std::pair<int, int> img = is_x ? std::make_pair(cell.first + 1, cell.second)
                                           : std::make_pair(cell.first, cell.second + 1);
            if (!p.contains(img.first, img.second)) continue;
            M(index_in_color[img], index_in_color[cell]) = scale;
        }
    };

    CyclicArrowRoles roles = classify_cyclic_arrows(q, m);
    for (const Arrow& a : q.arrows) {
        if (roles.role[a.id] == 0) continue;
        bool is_x = roles.role[a.id] > 0;
        // relation bookkeeping: scale the x-arrow by its epsilon so that the
        // vertexwise residual collapses to the commutator [x,y] = 0
        Rat scale = is_x ? Rat(q.epsilon[a.id]) : Rat(1);
        fill_block(rep.maps[a.id], is_x, a.tail, scale);
    }
    // framing: 1 -> cell (0,0); a nonempty partition always contains it
    if (p.size() > 0) rep.maps[q.b_id](index_in_color[{0, 0}], 0) = Rat(1);
    return rep;
}

template <int P>
std::vector<Mat<GF<P>>> all_subspaces(int d) {
    std::vector<Mat<GF<P>>> out;
    // reduced row echelon forms: choose pivot columns, then free entries
    for (int k = 0; k <= d; ++k) {
        std::vector<int> pivots(k);
        std::function<void(int, int)> choose = [&](int pos, int from) {
            if (pos == k) {
                // free positions: (row i, col j) with j > pivots[i], j not a pivot
                std::vector<std::pair<int, int>> free_pos;
                std::vector<bool> is_piv(d, false);
                for (int p : pivots) is_piv[p] = true;
                for (int i = 0; i < k; ++i)
                    for (int j = pivots[i] + 1; j < d; ++j)
                        if (!is_piv[j]) free_pos.emplace_back(i, j);
                long long combos = 1;
                for (size_t t = 0; t < free_pos.size(); ++t) combos *= P;
                for (long long mask = 0; mask < combos; ++mask) {
                    Mat<GF<P>> b(k, d);
                    for (int i = 0; i < k; ++i) b(i, pivots[i]) = GF<P>(1);
                    long long rem = mask;
                    for (auto [i, j] : free_pos) {
                        b(i, j) = GF<P>(static_cast<int>(rem % P));
                        rem /= P;
                    }
                    out.push_back(std::move(b));
                }
                return;
            }
            for (int c = from; c < d; ++c) {
                pivots[pos] = c;
                choose(pos + 1, c + 1);
            }
        };
        choose(0, 0);
    }
    return out;
}

namespace {

template <int P>
bool row_space_contains(const Mat<GF<P>>& basis, const std::vector<GF<P>>& v) {
    SpanBasis<GF<P>> span(basis.cols);
    for (int i = 0; i < basis.rows; ++i) span.insert(basis.row(i));
    return span.contains(v);
}

} // namespace

template <int P>
Verdict brute_force_stability(const Rep<GF<P>>& rep, const Stability& theta) {
    const FramedQuiver& q = *rep.quiver;
    long long total = rep.dim.total();
    if (total > 6) throw DimensionTooLarge("brute force stability is capped at total dim 6");

    int nslots = q.r + 2;
    std::vector<std::vector<Mat<GF<P>>>> subs(nslots);
    for (int s = 0; s < nslots; ++s)
        subs[s] = all_subspaces<P>(static_cast<int>(rep.vdim(slot_vertex(s))));

    bool theta_zero_on_M = (pairing(theta, rep.dim) == 0);
    bool semistable = theta_zero_on_M;
    bool stable = theta_zero_on_M;

    std::vector<int> choice(nslots, 0);
    std::function<void(int)> walk = [&](int s) {
        if (!semistable && !stable) return;
        if (s == nslots) {
            // arrow closure
            for (const Arrow& a : q.arrows) {
                const Mat<GF<P>>& src = subs[vertex_slot(a.tail)][choice[vertex_slot(a.tail)]];
                const Mat<GF<P>>& dst = subs[vertex_slot(a.head)][choice[vertex_slot(a.head)]];
                for (int i = 0; i < src.rows; ++i)
                    if (!row_space_contains<P>(dst, rep.maps[a.id].apply(src.row(i))))
                        return;
            }
            DimVector nd = rep.dim;
            nd.inf = subs[0][choice[0]].rows;
            for (int v = 0; v <= q.r; ++v) nd.comp[v] = subs[vertex_slot(v)][choice[vertex_slot(v)]].rows;
            long long ntot = nd.total();
            if (ntot == 0 || ntot == total) return; // only nonzero proper submodules
            Rat val = pairing(theta, nd);
            if (val < 0) semistable = stable = false;
            else if (val == 0) stable = false;
            return;
        }
        for (int c = 0; c < static_cast<int>(subs[s].size()); ++c) {
            choice[s] = c;
            walk(s + 1);
        }
    };
    walk(0);

    if (!semistable) return Verdict::Unstable;
    return stable ? Verdict::Stable : Verdict::Semistable;
}

template Verdict brute_force_stability<2>(const Rep<GF<2>>&, const Stability&);
template Verdict brute_force_stability<3>(const Rep<GF<3>>&, const Stability&);
template std::vector<Mat<GF<2>>> all_subspaces<2>(int);
template std::vector<Mat<GF<3>>> all_subspaces<3>(int);

} // namespace kq
