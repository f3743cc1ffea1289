#pragma once

#include <cassert>
#include <numeric>
#include <vector>

#include "kq/errors.hpp"

namespace kq {

// Vertex index type for framed quivers: 0..r are the McKay vertices and
// kVertexInf denotes the framing vertex.
inline constexpr int kVertexInf = -1;

// Dimension vector on {0..r}, optionally framed with an extra component at
// the framing vertex (v_inf in {0,1}).
struct DimVector {
    bool framed = false;
    long long inf = 0;
    std::vector<long long> comp;

    DimVector() = default;
    static DimVector unframed(std::vector<long long> c) {
        DimVector d;
        d.comp = std::move(c);
        return d;
    }
    static DimVector with_inf(long long vinf, std::vector<long long> c) {
        DimVector d;
        d.framed = true;
        d.inf = vinf;
        d.comp = std::move(c);
        if (vinf != 0 && vinf != 1)
            throw PreconditionViolation("framed dimension vector needs v_inf in {0,1}");
        return d;
    }

    int num_unframed() const { return static_cast<int>(comp.size()); }

    long long at(int vertex) const {
        if (vertex == kVertexInf) {
            if (!framed) throw PreconditionViolation("dimension vector is not framed");
            return inf;
        }
        return comp.at(static_cast<size_t>(vertex));
    }

    long long total() const {
        long long s = framed ? inf : 0;
        return std::accumulate(comp.begin(), comp.end(), s);
    }

    friend bool operator==(const DimVector& a, const DimVector& b) {
        return a.framed == b.framed && a.inf == b.inf && a.comp == b.comp;
    }
};

// Componentwise partial order (Conventions): u <= v iff u_i <= v_i everywhere.
inline bool leq(const DimVector& u, const DimVector& v) {
    assert(u.framed == v.framed && u.comp.size() == v.comp.size());
    if (u.framed && u.inf > v.inf) return false;
    for (size_t i = 0; i < u.comp.size(); ++i)
        if (u.comp[i] > v.comp[i]) return false;
    return true;
}

inline DimVector add(const DimVector& u, const DimVector& v) {
    assert(u.framed == v.framed && u.comp.size() == v.comp.size());
    DimVector w = u;
    w.inf += v.inf;
    for (size_t i = 0; i < u.comp.size(); ++i) w.comp[i] += v.comp[i];
    return w;
}

inline DimVector sub(const DimVector& u, const DimVector& v) {
    assert(u.framed == v.framed && u.comp.size() == v.comp.size());
    DimVector w = u;
    w.inf -= v.inf;
    for (size_t i = 0; i < u.comp.size(); ++i) w.comp[i] -= v.comp[i];
    return w;
}

} // namespace kq
