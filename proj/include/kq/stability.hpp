#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kq/dimvec.hpp"
#include "kq/matrix.hpp"
#include "kq/mckay.hpp"
#include "kq/rational.hpp"

namespace kq {

// Rational stability weights on the framed vertex set {inf, 0..r}.
struct Stability {
    Rat inf;
    std::vector<Rat> w; // weights on 0..r

    int num_unframed() const { return static_cast<int>(w.size()); }
};

// theta((1,v)) = theta_inf * v_inf + sum_i theta_i * v_i.
Rat pairing(const Stability& theta, const DimVector& v);

// The stability condition theta_I in the relative interior of the face
// sigma_I: weight -sum_{i in I} v_i at the framing vertex, 1 on I, 0 elsewhere.
Stability theta_I(const McKayData& mckay, const std::set<int>& I, const DimVector& v);

// The cornered-algebra stability eta_I for A_I-modules of dimension (1, n_I);
// stored on the full vertex set with zero weight off I.
Stability eta_I(const std::set<int>& I, const std::map<int, long long>& n_I,
                int num_unframed);

// theta lies in the open cone C_v^+ (all unframed weights strictly positive).
bool in_C_plus(const Stability& theta);

// The face sigma_I containing theta: I = {i : theta_i > 0} when all unframed
// weights are nonnegative; nullopt when some weight is negative.
std::optional<std::set<int>> face_of(const Stability& theta);

// Membership in the inequality set V(n_I): v_i = n_i on I and
// 2 v_k >= sum over arrows of Q_1 with tail k of v_{head}, for k outside
// {inf} u I. The sum runs over the framed quiver, so the arrow b*
// contributes v_inf = 1 at k = 0.
bool in_V(const McKayData& mckay, const std::set<int>& I,
          const std::map<int, long long>& n_I, const DimVector& v);

// BFS shortest path (smallest-vertex-first tie break) from source to the
// nearest vertex in targets; distances d_k are reported for the interior
// vertices of the path only.
struct PathData {
    std::vector<int> path;          // empty when source is already a target
    std::map<int, int> distances;   // interior vertices -> distance from source
};
PathData shortest_path_data(const McKayData& mckay, int source, const std::set<int>& targets);

// The v' construction: v'_k = N dim(rho_k) - d_k on the interior K' of a
// shortest 0 -> I path (when 0 is not in I), N dim(rho_k) on the rest of the
// complement, with N minimal such that (1,v') lies in V(n_I) and v' >= v.
struct VPrimeResult {
    DimVector vprime;
    long long N = 0;
    std::vector<int> K_prime;
};
VPrimeResult construct_vprime(const McKayData& mckay, const std::set<int>& I,
                              const std::map<int, long long>& n_I, const DimVector& v);

// A connected component of the subgraph induced on a proper vertex subset,
// with its (finite-type) Cartan matrix.
struct CartanBlock {
    std::vector<int> vertices; // sorted
    Mat<Rat> matrix;
};

std::vector<CartanBlock> cartan_blocks(const McKayData& mckay, const std::set<int>& K);

// Exact inverse of a finite-type Cartan block; returns whether all entries
// are nonnegative (a theorem for finite type) along with the inverse itself.
struct CartanInverse {
    Mat<Rat> inverse;
    bool nonnegative = false;
};
CartanInverse cartan_inverse_nonneg(const CartanBlock& block);

// The Cartan-positivity deduction from the semistable-existence argument:
// given v, w agreeing on {inf} u I, check C(v-w)|_Lambda >= 0 on every block
// of the complement; when that holds, v >= w is forced.
bool solve_w_bound(const McKayData& mckay, const std::set<int>& I,
                   const DimVector& v, const DimVector& w);

} // namespace kq
