#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kq/cornered.hpp"
#include "kq/oracle.hpp"
#include "kq/rep.hpp"
#include "kq/stability.hpp"

namespace kq {

enum class Provenance { Oracle, NumericThenRationalized, Padded };
enum class TargetKind { QuiverVariety, ModuliAI };

// Non-emptiness witness: a representation plus its verified residual bound
// and stability verdict. Exact certificates have residual identically zero.
struct Certificate {
    Rep<Rat> rep;
    TargetKind target = TargetKind::QuiverVariety;
    Stability theta;
    bool exact = true;
    double residual_bound = 0.0; // 0 for exact certificates
    Verdict verdict = Verdict::Unstable;
    Provenance provenance = Provenance::Oracle;
};

struct SolveOptions {
    int restarts = 64;
    int max_iters = 400;
    double target_residual = 1e-10;
    std::uint64_t seed = 0;
    bool want_stable = false; // otherwise semistable suffices
    int threads = 1;
};

struct SolveOutcome {
    std::optional<Rep<double>> rep;
    double residual = 0.0; // residual of the returned rep
    int restart_index = -1;
    int restarts_tried = 0;
};

// Random-start Levenberg-Marquardt on the squared moment-map residual over
// the arrow matrices (b* pinned to zero, so certificates are A-modules).
// Success needs residual <= target and the numeric stability check; NotFound
// (empty rep) is NOT a proof of emptiness.
SolveOutcome solve_moment_map(std::shared_ptr<const FramedQuiver> quiver,
                              const DimVector& v, const Stability& theta,
                              const SolveOptions& opt);

// Exact reconstruction of a numeric solution: continued-fraction snap of all
// entries, else snap the unstarred half of each arrow pair and project the
// starred half exactly onto the kernel of the (linear) relation map. The
// result is verified exactly; throws RationalizationFailed otherwise.
Certificate rationalize_and_verify(const Rep<double>& numeric, const Stability& theta,
                                   bool want_stable);

// Exhaustive exact search over the torus-fixed (monomial) locus for cyclic
// groups: the first partition representation with the requested verdict.
std::optional<Certificate> oracle_certificate(const McKayData& mckay,
                                              std::shared_ptr<const FramedQuiver> quiver,
                                              const Stability& theta, const DimVector& v,
                                              bool want_stable);

// Certificate search at fixed dimension vector: oracle first (cyclic
// groups), then the numeric solver plus rationalization.
std::optional<Certificate> find_certificate(const McKayData& mckay,
                                            std::shared_ptr<const FramedQuiver> quiver,
                                            const Stability& theta, const DimVector& v,
                                            bool want_stable, const SolveOptions& opt);

struct SearchEntry {
    DimVector w;
    std::string outcome; // pruned_inequality | stable_found | not_found
};

struct VTildeResult {
    std::optional<DimVector> v_tilde; // empty: Unknown (no stable witness found)
    std::optional<Certificate> witness;
    std::vector<SearchEntry> search_log;
    // true when every rejected candidate was excluded conclusively (only the
    // inequality pruning is conclusive; solver NotFound is not)
    bool maximality_certain = true;
};

// Search w <= v (equal on I, decreasing total dimension, lexicographic tie
// break) for a theta_I-stable certificate; the first hit is the desk-scale
// v-tilde. Candidates violating the stable-module inequality
// 2 w_k <= sum_{t(e)=k} w_{h(e)} are pruned without solving.
VTildeResult find_v_tilde(const McKayData& mckay,
                          std::shared_ptr<const FramedQuiver> quiver,
                          const std::set<int>& I, const DimVector& v,
                          const SolveOptions& opt);

// The necessary inequalities satisfied by every theta_I-stable module:
// 2 v_k <= sum over arrows with tail k of v_{head}, for k outside {inf} u I.
bool stable_dim_inequalities_hold(const McKayData& mckay, const std::set<int>& I,
                                  const DimVector& v);

// The polystable-summand bound dim_i M_inf <= v-tilde_i, checked on the
// closure of the framing vector when that closure is itself stable.
enum class BoundCheck { Holds, Violated, Skipped };
BoundCheck summand_bound_check(const Certificate& cert, const DimVector& v_tilde);

// Criteria-vs-brute-force gate: the reduction used by is_semistable/is_stable
// must agree with the definitional oracle on a built-in corpus before any
// certificate is issued.
bool stability_gate_passed();

struct PipelineOptions {
    std::uint64_t seed = 0;
    int restarts = 64;
    int threads = 1;
    int degree_cap = 8;
    bool with_timestamp = true;
};

struct PipelineReport {
    std::string json_text; // schema-versioned report
    bool ok = false;       // all verification invariants held
    bool nonempty = false; // an exact semistable certificate was found
};

// End-to-end run for (group, I, n_I): theta_I, eta_I, v', certificates,
// v-tilde, the inequality and padding checks, and the cornered restriction,
// assembled into a JSON report.
PipelineReport run_pipeline(const GroupFamily& group, const std::set<int>& I,
                            const std::map<int, long long>& n_I,
                            const PipelineOptions& opt);

} // namespace kq
