#include "kq/mckay.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kq {

GroupFamily GroupFamily::cyclic(int m) {
    if (m < 2) throw InvalidGroupParameter("cyclic group needs m >= 2");
    return {Family::CyclicA, m, m};
}

GroupFamily GroupFamily::binary_dihedral(int m) {
    if (m < 2) throw InvalidGroupParameter("binary dihedral group needs m >= 2");
    return {Family::BinaryDihedralD, m, 4LL * m};
}

GroupFamily GroupFamily::tetrahedral() { return {Family::BinaryTetrahedralE6, 0, 24}; }
GroupFamily GroupFamily::octahedral() { return {Family::BinaryOctahedralE7, 0, 48}; }
GroupFamily GroupFamily::icosahedral() { return {Family::BinaryIcosahedralE8, 0, 120}; }

std::string GroupFamily::name() const {
    switch (family) {
        case Family::CyclicA: return "A" + std::to_string(m - 1);
        case Family::BinaryDihedralD: return "D" + std::to_string(m + 2);
        case Family::BinaryTetrahedralE6: return "E6";
        case Family::BinaryOctahedralE7: return "E7";
        case Family::BinaryIcosahedralE8: return "E8";
    }
    return "?";
}

GroupFamily parse_group(const std::string& name) {
    if (name.size() < 2)
        throw InvalidGroupParameter("unrecognised group name: " + name);
    char kind = name[0];
    int num = 0;
    try {
        num = std::stoi(name.substr(1));
    } catch (...) {
        throw InvalidGroupParameter("unrecognised group name: " + name);
    }
    switch (kind) {
        case 'A': case 'a': return GroupFamily::cyclic(num + 1);
        case 'D': case 'd':
            if (num < 4) throw InvalidGroupParameter("binary dihedral needs D4 or larger");
            return GroupFamily::binary_dihedral(num - 2);
        case 'E': case 'e':
            if (num == 6) return GroupFamily::tetrahedral();
            if (num == 7) return GroupFamily::octahedral();
            if (num == 8) return GroupFamily::icosahedral();
            throw InvalidGroupParameter("exceptional type must be E6, E7 or E8");
        default:
            throw InvalidGroupParameter("unrecognised group name: " + name);
    }
}

namespace {

// Characters of Z/m are the weights k in Z/m; tensoring with V = rho_1 + rho_{-1}
// shifts the weight by +-1. The character inner product <chi_i chi_V, chi_j>
// collapses to counting weight coincidences, which is exact integer arithmetic.
McKayData build_cyclic(const GroupFamily& g) {
    int m = g.m;
    McKayData data;
    data.group = g;
    data.irrep_dims.assign(m, 1);
    data.adjacency.assign(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int shift : {1, -1}) {
            int j = ((i + shift) % m + m) % m;
            data.adjacency[i][j] += 1;
        }
    return data;
}

// Binary dihedral of order 4m: four 1-dimensional irreps u0..u3 and m-1
// two-dimensional irreps w_1..w_{m-1}. Tensoring with the defining rep w_1:
//   u0 (x) V = u1 (x) V = w_1,    u2 (x) V = u3 (x) V = w_{m-1},
//   w_k (x) V = w_{k-1} + w_{k+1}  with  w_0 := u0 + u1,  w_m := u2 + u3.
// Vertex layout is the Bourbaki affine D_{m+2} numbering:
//   0 = u0 (trivial), 1 = u1, 2..m = w_1..w_{m-1}, m+1 = u2, m+2 = u3.
McKayData build_binary_dihedral(const GroupFamily& g) {
    int m = g.m;
    int n = m + 3; // vertex count
    McKayData data;
    data.group = g;
    data.irrep_dims.assign(n, 1);
    for (int k = 1; k <= m - 1; ++k) data.irrep_dims[1 + k] = 2;
    data.adjacency.assign(n, std::vector<int>(n, 0));
    auto w_vertex = [&](int k) { return 1 + k; }; // valid for 1 <= k <= m-1
    auto add_targets = [&](int src, std::vector<int> targets) {
        for (int t : targets) data.adjacency[src][t] += 1;
    };
    auto w_split = [&](int k) -> std::vector<int> {
        if (k == 0) return {0, 1};
        if (k == m) return {m + 1, m + 2};
        return {w_vertex(k)};
    };
    add_targets(0, w_split(1));
    add_targets(1, w_split(1));
    add_targets(m + 1, w_split(m - 1));
    add_targets(m + 2, w_split(m - 1));
    for (int k = 1; k <= m - 1; ++k) {
        for (int t : w_split(k - 1)) data.adjacency[w_vertex(k)][t] += 1;
        for (int t : w_split(k + 1)) data.adjacency[w_vertex(k)][t] += 1;
    }
    return data;
}

McKayData build_exceptional(const GroupFamily& g) {
    McKayData data;
    data.group = g;
    std::vector<std::pair<int, int>> edges;
    switch (g.family) {
        case Family::BinaryTetrahedralE6:
            // Bourbaki affine E6: arms 1-3-4, 6-5-4, affine 0-2-4
            data.irrep_dims = {1, 1, 2, 2, 3, 2, 1};
            edges = {{0, 2}, {2, 4}, {1, 3}, {3, 4}, {4, 5}, {5, 6}};
            break;
        case Family::BinaryOctahedralE7:
            // Bourbaki affine E7: chain 0-1-3-4-5-6-7 with 2 attached to 4
            data.irrep_dims = {1, 2, 2, 3, 4, 3, 2, 1};
            edges = {{0, 1}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 4}};
            break;
        case Family::BinaryIcosahedralE8:
            // chain 0-1-2-3-4-5-6-7 with 8 attached to the trivalent node 5
            data.irrep_dims = {1, 2, 3, 4, 5, 6, 4, 2, 3};
            edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 8}};
            break;
        default:
            throw InvalidGroupParameter("not an exceptional family");
    }
    int n = static_cast<int>(data.irrep_dims.size());
    data.adjacency.assign(n, std::vector<int>(n, 0));
    for (auto [i, j] : edges) {
        data.adjacency[i][j] += 1;
        data.adjacency[j][i] += 1;
    }
    return data;
}

void validate(const McKayData& d) {
    int n = d.num_vertices();
    long long sq = 0;
    for (int i = 0; i < n; ++i) sq += static_cast<long long>(d.irrep_dims[i]) * d.irrep_dims[i];
    if (sq != d.group.order)
        throw Error("McKay table invalid: sum of squared dims != |Gamma|");
    for (int i = 0; i < n; ++i) {
        if (d.adjacency[i][i] != 0) throw Error("McKay table invalid: loop at vertex");
        long long s = 0;
        for (int j = 0; j < n; ++j) {
            if (d.adjacency[i][j] != d.adjacency[j][i])
                throw Error("McKay table invalid: adjacency not symmetric");
            s += static_cast<long long>(d.adjacency[i][j]) * d.irrep_dims[j];
        }
        if (s != 2LL * d.irrep_dims[i])
            throw Error("McKay table invalid: McKay equality fails");
    }
}

} // namespace

McKayData build_mckay(const GroupFamily& group) {
    McKayData data;
    switch (group.family) {
        case Family::CyclicA: data = build_cyclic(group); break;
        case Family::BinaryDihedralD: data = build_binary_dihedral(group); break;
        default: data = build_exceptional(group); break;
    }
    data.delta = DimVector::unframed(
        std::vector<long long>(data.irrep_dims.begin(), data.irrep_dims.end()));
    validate(data);
    return data;
}

int FramedQuiver::pair_count(int i, int j) const {
    int c = 0;
    for (const Arrow& a : arrows)
        if (a.tail == i && a.head == j) ++c;
    return c;
}

FramedQuiver frame(const McKayData& mckay) {
    FramedQuiver q;
    q.r = mckay.r();
    auto add_pair = [&](int tail, int head) {
        int id0 = q.num_arrows();
        q.arrows.push_back({id0, tail, head});
        q.arrows.push_back({id0 + 1, head, tail});
        q.partner.push_back(id0 + 1);
        q.partner.push_back(id0);
        // epsilon = +1 on the arrow whose (tail, head) is lexicographically
        // smallest, with the framing vertex ordered first
        q.epsilon.push_back(1);
        q.epsilon.push_back(-1);
        return id0;
    };
    q.b_id = add_pair(kVertexInf, 0);
    q.bstar_id = q.partner[q.b_id];
    int n = mckay.num_vertices();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int copy = 0; copy < mckay.adjacency[i][j]; ++copy)
                add_pair(i, j);
    return q;
}

std::vector<std::vector<int>> diagram_automorphisms(const McKayData& mckay) {
    int n = mckay.num_vertices();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> autos;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (mckay.irrep_dims[perm[i]] != mckay.irrep_dims[i]) { ok = false; break; }
            for (int j = 0; j < n && ok; ++j)
                if (mckay.adjacency[perm[i]][perm[j]] != mckay.adjacency[i][j]) ok = false;
        }
        if (ok) autos.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return autos; // next_permutation yields lexicographic order
}

int iota_of_zero(const McKayData& mckay, int i) {
    if (i < 0 || i >= mckay.num_vertices())
        throw PreconditionViolation("vertex out of range");
    if (mckay.irrep_dims[i] != 1)
        throw NoSuchAutomorphism("dim rho_i != 1 at vertex " + std::to_string(i));
    for (const auto& sigma : diagram_automorphisms(mckay))
        if (sigma[i] == 0) return sigma[0];
    throw NoSuchAutomorphism("no diagram automorphism maps vertex " +
                             std::to_string(i) + " to 0");
}

std::string to_dot(const McKayData& mckay, const FramedQuiver& q, QuiverView view) {
    std::ostringstream os;
    os << "digraph {\n";
    if (view != QuiverView::Unframed)
        os << "  inf [label=\"inf\"];\n";
    for (int v = 0; v <= q.r; ++v)
        os << "  v" << v << " [label=\"" << v << " (dim " << mckay.irrep_dims[v] << ")\"];\n";
    auto vname = [](int v) {
        return v == kVertexInf ? std::string("inf") : "v" + std::to_string(v);
    };
    for (const Arrow& a : q.arrows) {
        if (view == QuiverView::Unframed && (a.tail == kVertexInf || a.head == kVertexInf))
            continue;
        if (view == QuiverView::Star && a.id == q.bstar_id) continue;
        os << "  " << vname(a.tail) << " -> " << vname(a.head)
           << " [label=\"a" << a.id << (q.epsilon[a.id] > 0 ? "+" : "-") << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace kq
