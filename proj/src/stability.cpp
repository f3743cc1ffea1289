#include "kq/stability.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace kq {

Rat pairing(const Stability& theta, const DimVector& v) {
    if (!v.framed) throw PreconditionViolation("pairing needs a framed dimension vector");
    if (static_cast<int>(theta.w.size()) != v.num_unframed())
        throw ShapeMismatch("stability and dimension vector sizes differ");
    Rat s = theta.inf * Rat(v.inf);
    for (size_t i = 0; i < theta.w.size(); ++i) s += theta.w[i] * Rat(v.comp[i]);
    return s;
}

Stability theta_I(const McKayData& mckay, const std::set<int>& I, const DimVector& v) {
    if (I.empty()) throw EmptyIndexSet("theta_I needs a nonempty index set");
    if (!v.framed || v.inf != 1)
        throw PreconditionViolation("theta_I needs a framed vector with v_inf = 1");
    if (v.num_unframed() != mckay.num_vertices())
        throw ShapeMismatch("dimension vector size does not match the group");
    Stability theta;
    theta.w.assign(mckay.num_vertices(), Rat(0));
    long long sum = 0;
    for (int i : I) {
        if (i < 0 || i >= mckay.num_vertices())
            throw PreconditionViolation("index set out of range");
        theta.w[i] = Rat(1);
        sum += v.comp[i];
    }
    theta.inf = Rat(-sum);
    return theta;
}

Stability eta_I(const std::set<int>& I, const std::map<int, long long>& n_I,
                int num_unframed) {
    if (I.empty()) throw EmptyIndexSet("eta_I needs a nonempty index set");
    Stability eta;
    eta.w.assign(num_unframed, Rat(0));
    long long sum = 0;
    for (int i : I) {
        eta.w[i] = Rat(1);
        sum += n_I.at(i);
    }
    eta.inf = Rat(-sum);
    return eta;
}

bool in_C_plus(const Stability& theta) {
    if (theta.w.empty()) return false;
    for (const Rat& x : theta.w)
        if (x <= 0) return false;
    return true;
}

std::optional<std::set<int>> face_of(const Stability& theta) {
    std::set<int> I;
    for (size_t i = 0; i < theta.w.size(); ++i) {
        if (theta.w[i] < 0) return std::nullopt;
        if (theta.w[i] > 0) I.insert(static_cast<int>(i));
    }
    return I;
}

bool in_V(const McKayData& mckay, const std::set<int>& I,
          const std::map<int, long long>& n_I, const DimVector& v) {
    if (!v.framed || v.inf != 1)
        throw PreconditionViolation("in_V needs a framed vector with v_inf = 1");
    int n = mckay.num_vertices();
    for (int i : I)
        if (v.comp[i] != n_I.at(i)) return false;
    for (int k = 0; k < n; ++k) {
        if (I.count(k)) continue;
        long long rhs = 0;
        for (int j = 0; j < n; ++j)
            rhs += static_cast<long long>(mckay.adjacency[k][j]) * v.comp[j];
        if (k == 0) rhs += v.inf; // the arrow b*: 0 -> inf
        if (2 * v.comp[k] < rhs) return false;
    }
    return true;
}

PathData shortest_path_data(const McKayData& mckay, int source, const std::set<int>& targets) {
    if (targets.empty()) throw PreconditionViolation("shortest path needs targets");
    PathData out;
    if (targets.count(source)) return out;
    int n = mckay.num_vertices();
    std::vector<int> parent(n, -2);
    std::deque<int> queue{source};
    parent[source] = -1;
    int found = -1;
    while (!queue.empty() && found < 0) {
        int u = queue.front();
        queue.pop_front();
        for (int w = 0; w < n; ++w) { // increasing order gives the tie break
            if (mckay.adjacency[u][w] == 0 || parent[w] != -2) continue;
            parent[w] = u;
            if (targets.count(w)) { found = w; break; }
            queue.push_back(w);
        }
    }
    if (found < 0) throw Error("McKay graph not connected"); // cannot happen
    for (int u = found; u != -1; u = parent[u]) out.path.push_back(u);
    std::reverse(out.path.begin(), out.path.end());
    for (size_t k = 1; k + 1 < out.path.size(); ++k)
        out.distances[out.path[k]] = static_cast<int>(k);
    return out;
}

VPrimeResult construct_vprime(const McKayData& mckay, const std::set<int>& I,
                              const std::map<int, long long>& n_I, const DimVector& v) {
    if (I.empty()) throw EmptyIndexSet("construct_vprime needs a nonempty index set");
    for (int i : I)
        if (v.comp[i] != n_I.at(i))
            throw PreconditionViolation("v must agree with n_I on I");
    int n = mckay.num_vertices();

    VPrimeResult res;
    std::map<int, int> d; // distances on K'
    if (!I.count(0)) {
        PathData pd = shortest_path_data(mckay, 0, I);
        d = pd.distances;
        for (auto [k, dist] : d) res.K_prime.push_back(k);
    }

    for (long long N = 1;; ++N) {
        DimVector cand = v;
        for (int k = 0; k < n; ++k) {
            if (I.count(k)) continue;
            long long base = N * mckay.irrep_dims[k];
            auto it = d.find(k);
            cand.comp[k] = (it != d.end()) ? base - it->second : base;
        }
        bool dom = true;
        for (int k = 0; k < n && dom; ++k)
            if (cand.comp[k] < v.comp[k]) dom = false;
        if (dom && in_V(mckay, I, n_I, cand)) {
            res.vprime = cand;
            res.N = N;
            return res;
        }
        if (N > 4 * (v.total() + n + 8))
            throw Error("construct_vprime did not converge"); // cannot happen
    }
}

std::vector<CartanBlock> cartan_blocks(const McKayData& mckay, const std::set<int>& K) {
    int n = mckay.num_vertices();
    if (static_cast<int>(K.size()) >= n)
        throw AffineComponent("K must be a proper subset of the vertex set");
    std::vector<CartanBlock> blocks;
    std::set<int> seen;
    for (int start : K) {
        if (seen.count(start)) continue;
        // flood fill within K
        std::vector<int> comp{start};
        seen.insert(start);
        for (size_t q = 0; q < comp.size(); ++q)
            for (int w : K)
                if (!seen.count(w) && mckay.adjacency[comp[q]][w] > 0) {
                    seen.insert(w);
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        CartanBlock b;
        b.vertices = comp;
        int s = static_cast<int>(comp.size());
        b.matrix = Mat<Rat>(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                b.matrix(i, j) = (i == j) ? Rat(2) : Rat(-mckay.adjacency[comp[i]][comp[j]]);
        blocks.push_back(std::move(b));
    }
    return blocks;
}

CartanInverse cartan_inverse_nonneg(const CartanBlock& block) {
    CartanInverse out;
    out.inverse = inverse(block.matrix); // throws SingularMatrix if degenerate
    out.nonnegative = true;
    for (const Rat& x : out.inverse.a)
        if (x < 0) out.nonnegative = false;
    return out;
}

bool solve_w_bound(const McKayData& mckay, const std::set<int>& I,
                   const DimVector& v, const DimVector& w) {
    if (!v.framed || !w.framed || v.inf != w.inf)
        throw PreconditionViolation("v and w must be framed and agree at inf");
    for (int i : I)
        if (v.comp[i] != w.comp[i])
            throw PreconditionViolation("v and w must agree on I");
    std::set<int> K;
    for (int k = 0; k < mckay.num_vertices(); ++k)
        if (!I.count(k)) K.insert(k);
    if (K.empty()) return true; // x = 0 on an empty complement
    for (const CartanBlock& blk : cartan_blocks(mckay, K)) {
        int s = static_cast<int>(blk.vertices.size());
        std::vector<Rat> x(s);
        for (int i = 0; i < s; ++i)
            x[i] = Rat(v.comp[blk.vertices[i]] - w.comp[blk.vertices[i]]);
        std::vector<Rat> cx = blk.matrix.apply(x);
        for (const Rat& e : cx)
            if (e < 0) return false;
    }
    return true;
}

} // namespace kq
