#include "kq/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "kq/json_io.hpp"

namespace kq {

namespace {

// ---- Levenberg-Marquardt on the moment-map residual -----------------------

struct ParamLayout {
    // flattened entries of every non-framing arrow matrix plus b; b* stays 0
    struct Slot {
        int arrow;
        int row, col;
    };
    std::vector<Slot> slots;
    std::vector<int> residual_vertices; // unframed vertices with dim > 0
    int residual_size = 0;
};

ParamLayout make_layout(const FramedQuiver& q, const Rep<double>& shape) {
    ParamLayout L;
    for (const Arrow& a : q.arrows) {
        if (a.id == shape.quiver->bstar_id || a.id == shape.quiver->b_id) continue;
        const Mat<double>& m = shape.maps[a.id];
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) L.slots.push_back({a.id, i, j});
    }
    for (int v = 0; v <= q.r; ++v) {
        if (shape.dim.comp[v] > 0) L.residual_vertices.push_back(v);
        L.residual_size += static_cast<int>(shape.dim.comp[v] * shape.dim.comp[v]);
    }
    return L;
}

void write_params(Rep<double>& rep, const ParamLayout& L, const std::vector<double>& x) {
    for (size_t k = 0; k < L.slots.size(); ++k)
        rep.maps[L.slots[k].arrow](L.slots[k].row, L.slots[k].col) = x[k];
}

std::vector<double> residual_vector(const Rep<double>& rep) {
    MomentResidual<double> mu = moment_residual(rep);
    std::vector<double> r;
    for (const auto& m : mu.vert) r.insert(r.end(), m.a.begin(), m.a.end());
    return r;
}

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// dense Jacobian of the residual with respect to the layout parameters
std::vector<std::vector<double>> jacobian(const Rep<double>& rep, const ParamLayout& L) {
    const FramedQuiver& q = *rep.quiver;
    int m = 0;
    std::vector<int> offset(q.r + 1, 0);
    for (int v = 0; v <= q.r; ++v) {
        offset[v] = m;
        m += static_cast<int>(rep.dim.comp[v] * rep.dim.comp[v]);
    }
    std::vector<std::vector<double>> J(m, std::vector<double>(L.slots.size(), 0.0));
    for (size_t k = 0; k < L.slots.size(); ++k) {
        int c = L.slots[k].arrow, p = L.slots[k].row, qcol = L.slots[k].col;
        const Arrow& ac = q.arrows[c];
        int cstar = q.partner[c];
        // terms where c is the left factor: at vertex head(c)
        if (ac.head != kVertexInf) {
            int d = static_cast<int>(rep.dim.comp[ac.head]);
            double eps = q.epsilon[c];
            const Mat<double>& Mstar = rep.maps[cstar];
            for (int col = 0; col < d; ++col)
                J[offset[ac.head] + p * d + col][k] += eps * Mstar(qcol, col);
        }
        // terms where c is the right factor: at vertex head(c*) = tail(c)
        if (ac.tail != kVertexInf) {
            int d = static_cast<int>(rep.dim.comp[ac.tail]);
            double eps = q.epsilon[cstar];
            const Mat<double>& Mleft = rep.maps[cstar];
            for (int row = 0; row < d; ++row)
                J[offset[ac.tail] + row * d + qcol][k] += eps * Mleft(row, p);
        }
    }
    return J;
}

// solve (J^T J + lambda diag) delta = -J^T r by Gaussian elimination
std::vector<double> lm_step(const std::vector<std::vector<double>>& J,
                            const std::vector<double>& r, double lambda) {
    size_t n = J.empty() ? 0 : J[0].size();
    std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            for (size_t t = 0; t < J.size(); ++t) A[i][j] += J[t][i] * J[t][j];
        A[i][i] += lambda * (A[i][i] > 1e-12 ? A[i][i] : 1.0);
        for (size_t t = 0; t < J.size(); ++t) A[i][n] -= J[t][i] * r[t];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t i = col + 1; i < n; ++i)
            if (std::fabs(A[i][col]) > std::fabs(A[piv][col])) piv = i;
        std::swap(A[col], A[piv]);
        if (std::fabs(A[col][col]) < 1e-300) continue;
        for (size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            double f = A[i][col] / A[col][col];
            if (f == 0) continue;
            for (size_t j = col; j <= n; ++j) A[i][j] -= f * A[col][j];
        }
    }
    std::vector<double> delta(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        if (std::fabs(A[i][i]) > 1e-300) delta[i] = A[i][n] / A[i][i];
    return delta;
}

struct RestartResult {
    bool ok = false;
    Rep<double> rep;
    double residual = 1e300;
};

RestartResult run_restart(std::shared_ptr<const FramedQuiver> quiver, const DimVector& v,
                          const Stability& theta, const SolveOptions& opt,
                          std::uint64_t restart_seed) {
    std::mt19937_64 rng(restart_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RestartResult out;
    Rep<double> rep = Rep<double>::zero(quiver, v);
    ParamLayout L = make_layout(*quiver, rep);
    // framing map: a fixed random vector (the relations do not constrain it)
    for (int i = 0; i < rep.maps[quiver->b_id].rows; ++i)
        rep.maps[quiver->b_id](i, 0) = 0.5 + std::abs(gauss(rng));
    std::vector<double> x(L.slots.size());
    for (double& e : x) e = gauss(rng);
    write_params(rep, L, x);

    double lambda = 1e-3;
    std::vector<double> r = residual_vector(rep);
    double rn = norm2(r);
    for (int iter = 0; iter < opt.max_iters && rn > 1e-14; ++iter) {
        auto J = jacobian(rep, L);
        std::vector<double> delta = lm_step(J, r, lambda);
        std::vector<double> xn = x;
        for (size_t k = 0; k < x.size(); ++k) xn[k] += delta[k];
        Rep<double> trial = rep;
        write_params(trial, L, xn);
        std::vector<double> rt = residual_vector(trial);
        double rtn = norm2(rt);
        if (rtn < rn) {
            x = std::move(xn);
            rep = std::move(trial);
            r = std::move(rt);
            rn = rtn;
            lambda = std::max(lambda * 0.4, 1e-12);
        } else {
            lambda = std::min(lambda * 3.0, 1e8);
        }
    }
    if (rn > opt.target_residual) return out;
    bool stab_ok = opt.want_stable ? is_stable(rep, theta) : is_semistable(rep, theta);
    if (!stab_ok) return out;
    out.ok = true;
    out.rep = std::move(rep);
    out.residual = rn;
    return out;
}

} // namespace

SolveOutcome solve_moment_map(std::shared_ptr<const FramedQuiver> quiver,
                              const DimVector& v, const Stability& theta,
                              const SolveOptions& opt) {
    if (!v.framed) throw PreconditionViolation("solve_moment_map needs a framed vector");
    SolveOutcome out;
    int batch = std::max(1, opt.threads);
    for (int base = 0; base < opt.restarts && out.restart_index < 0; base += batch) {
        int count = std::min(batch, opt.restarts - base);
        std::vector<std::future<RestartResult>> futs;
        for (int i = 0; i < count; ++i) {
            std::uint64_t rs = opt.seed * 0x9e3779b97f4a7c15ULL + 0xda3e39cb94b95bdbULL +
                               static_cast<std::uint64_t>(base + i) * 0x100000001b3ULL;
            if (batch == 1) {
                std::promise<RestartResult> pr;
                pr.set_value(run_restart(quiver, v, theta, opt, rs));
                futs.push_back(pr.get_future());
            } else {
                futs.push_back(std::async(std::launch::async, run_restart, quiver, v,
                                          theta, opt, rs));
            }
        }
        for (int i = 0; i < count; ++i) {
            RestartResult rr = futs[i].get();
            out.restarts_tried = base + i + 1;
            if (rr.ok && out.restart_index < 0) { // first success by index
                out.rep = std::move(rr.rep);
                out.residual = rr.residual;
                out.restart_index = base + i;
            }
        }
    }
    return out;
}

namespace {

std::optional<Rep<Rat>> snap_all(const Rep<double>& num, std::int64_t max_den) {
    Rep<Rat> out = Rep<Rat>::zero(num.quiver, num.dim);
    for (size_t a = 0; a < num.maps.size(); ++a)
        for (size_t k = 0; k < num.maps[a].a.size(); ++k) {
            auto r = rationalize(num.maps[a].a[k], max_den);
            if (!r) return std::nullopt;
            out.maps[a].a[k] = *r;
        }
    return out;
}

// Exact projection of the starred half onto the kernel of the relation map,
// holding the snapped unstarred half fixed. The residual is linear in the
// starred entries, so the projected point satisfies the relations exactly.
std::optional<Rep<Rat>> project_starred(const Rep<double>& num, std::int64_t max_den) {
    const FramedQuiver& q = *num.quiver;
    Rep<Rat> base = Rep<Rat>::zero(num.quiver, num.dim);
    std::vector<bool> starred(q.num_arrows(), false);
    for (const Arrow& a : q.arrows) starred[a.id] = (q.epsilon[a.id] < 0);

    // snap unstarred entries
    for (const Arrow& a : q.arrows) {
        if (starred[a.id] || a.id == q.bstar_id) continue;
        for (size_t k = 0; k < num.maps[a.id].a.size(); ++k) {
            auto r = rationalize(num.maps[a.id].a[k], max_den);
            if (!r) return std::nullopt;
            base.maps[a.id].a[k] = *r;
        }
    }

    // starred variables (b* stays pinned to zero)
    struct Slot {
        int arrow, row, col;
    };
    std::vector<Slot> vars;
    for (const Arrow& a : q.arrows) {
        if (!starred[a.id] || a.id == q.bstar_id) continue;
        for (int i = 0; i < num.maps[a.id].rows; ++i)
            for (int j = 0; j < num.maps[a.id].cols; ++j) vars.push_back({a.id, i, j});
    }
    if (vars.empty()) return base;

    // linear map L: starred entries -> residual entries
    int m = 0;
    std::vector<int> offset(q.r + 1, 0);
    for (int v = 0; v <= q.r; ++v) {
        offset[v] = m;
        m += static_cast<int>(num.dim.comp[v] * num.dim.comp[v]);
    }
    Mat<Rat> L(m, static_cast<int>(vars.size()));
    for (size_t k = 0; k < vars.size(); ++k) {
        int c = vars[k].arrow, p = vars[k].row, qc = vars[k].col;
        const Arrow& ac = q.arrows[c];
        int cstar = q.partner[c];
        if (ac.head != kVertexInf) { // eps(c) M_c M_{c*} at head(c)
            int d = static_cast<int>(num.dim.comp[ac.head]);
            for (int col = 0; col < d; ++col)
                L(offset[ac.head] + p * d + col, static_cast<int>(k)) +=
                    Rat(q.epsilon[c]) * base.maps[cstar](qc, col);
        }
        if (ac.tail != kVertexInf) { // eps(c*) M_{c*} M_c at tail(c)
            int d = static_cast<int>(num.dim.comp[ac.tail]);
            for (int row = 0; row < d; ++row)
                L(offset[ac.tail] + row * d + qc, static_cast<int>(k)) +=
                    Rat(q.epsilon[cstar]) * base.maps[cstar](row, p);
        }
    }

    Mat<Rat> K = kernel_basis(L); // rows span the solution space
    if (K.rows == 0) return base; // only the zero solution

    std::vector<Rat> xhat(vars.size());
    for (size_t k = 0; k < vars.size(); ++k) {
        auto r = rationalize(num.maps[vars[k].arrow](vars[k].row, vars[k].col), max_den);
        if (!r) return std::nullopt;
        xhat[k] = *r;
    }
    // x = K^T (K K^T)^{-1} K xhat
    Mat<Rat> G = K * K.transposed();
    std::vector<Rat> Kx = K.apply(xhat);
    Mat<Rat> Ginv = inverse(G);
    std::vector<Rat> c = Ginv.apply(Kx);
    std::vector<Rat> x = K.transposed().apply(c);
    for (size_t k = 0; k < vars.size(); ++k)
        base.maps[vars[k].arrow](vars[k].row, vars[k].col) = x[k];
    return base;
}

std::optional<Certificate> verify_exact(Rep<Rat> rep, const Stability& theta,
                                        bool want_stable) {
    if (!moment_residual(rep).is_zero()) return std::nullopt;
    bool stable = is_stable(rep, theta);
    bool semis = stable || is_semistable(rep, theta);
    if (want_stable && !stable) return std::nullopt;
    if (!semis) return std::nullopt;
    Certificate cert;
    cert.rep = std::move(rep);
    cert.theta = theta;
    cert.exact = true;
    cert.residual_bound = 0.0;
    cert.verdict = stable ? Verdict::Stable : Verdict::Semistable;
    cert.provenance = Provenance::NumericThenRationalized;
    return cert;
}

} // namespace

Certificate rationalize_and_verify(const Rep<double>& numeric, const Stability& theta,
                                   bool want_stable) {
    double rn = norm2(residual_vector(numeric));
    if (rn > 1e-10)
        throw PreconditionViolation("numeric residual above 1e-10; refusing to rationalize");
    for (std::int64_t den : {1LL, 16LL, 256LL, 65536LL, 1000000LL}) {
        auto snapped = snap_all(numeric, den);
        if (!snapped) continue;
        if (auto cert = verify_exact(std::move(*snapped), theta, want_stable)) return *cert;
    }
    for (std::int64_t den : {8LL, 64LL, 512LL, 4096LL, 65536LL}) {
        auto proj = project_starred(numeric, den);
        if (!proj) continue;
        if (auto cert = verify_exact(std::move(*proj), theta, want_stable)) return *cert;
    }
    throw RationalizationFailed("could not reconstruct an exact certificate");
}

std::optional<Certificate> oracle_certificate(const McKayData& mckay,
                                              std::shared_ptr<const FramedQuiver> quiver,
                                              const Stability& theta, const DimVector& v,
                                              bool want_stable) {
    if (mckay.group.family != Family::CyclicA) return std::nullopt;
    DimVector content = DimVector::unframed(v.comp);
    std::optional<Certificate> semi_fallback;
    for (const ColoredPartition& p : enumerate_colored_partitions(mckay.group.m, content)) {
        Rep<Rat> rep = partition_to_rep(p, quiver);
        bool stable = is_stable(rep, theta);
        if (!stable && want_stable) continue;
        bool semis = stable || is_semistable(rep, theta);
        if (!semis) continue;
        Certificate cert;
        cert.rep = std::move(rep);
        cert.theta = theta;
        cert.exact = true;
        cert.verdict = stable ? Verdict::Stable : Verdict::Semistable;
        cert.provenance = Provenance::Oracle;
        if (stable || want_stable) return cert;
        if (!semi_fallback) semi_fallback = std::move(cert);
    }
    return semi_fallback;
}

std::optional<Certificate> find_certificate(const McKayData& mckay,
                                            std::shared_ptr<const FramedQuiver> quiver,
                                            const Stability& theta, const DimVector& v,
                                            bool want_stable, const SolveOptions& opt) {
    if (!stability_gate_passed())
        throw Error("stability criteria failed the brute-force gate; certificates disabled");
    if (auto cert = oracle_certificate(mckay, quiver, theta, v, want_stable)) return cert;
    SolveOptions o = opt;
    o.want_stable = want_stable;
    SolveOutcome sol = solve_moment_map(quiver, v, theta, o);
    if (!sol.rep) return std::nullopt;
    // a failed rationalization on one numeric point may succeed on another
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            return rationalize_and_verify(*sol.rep, theta, want_stable);
        } catch (const RationalizationFailed&) {
            o.seed = o.seed * 6364136223846793005ULL + 1442695040888963407ULL + attempt;
            sol = solve_moment_map(quiver, v, theta, o);
            if (!sol.rep) return std::nullopt;
        }
    }
    return std::nullopt;
}

bool stable_dim_inequalities_hold(const McKayData& mckay, const std::set<int>& I,
                                  const DimVector& v) {
    int n = mckay.num_vertices();
    for (int k = 0; k < n; ++k) {
        if (I.count(k)) continue;
        long long rhs = 0;
        for (int j = 0; j < n; ++j)
            rhs += static_cast<long long>(mckay.adjacency[k][j]) * v.comp[j];
        if (k == 0) rhs += v.inf;
        if (2 * v.comp[k] > rhs) return false;
    }
    return true;
}

VTildeResult find_v_tilde(const McKayData& mckay,
                          std::shared_ptr<const FramedQuiver> quiver,
                          const std::set<int>& I, const DimVector& v,
                          const SolveOptions& opt) {
    VTildeResult res;
    std::vector<int> K;
    for (int k = 0; k < mckay.num_vertices(); ++k)
        if (!I.count(k)) K.push_back(k);

    // all w <= v with w = v on I, largest total dimension first
    std::vector<DimVector> candidates;
    std::vector<long long> cur(K.size(), 0);
    long long count = 1;
    for (int k : K) {
        count *= v.comp[k] + 1;
        if (count > 200000)
            throw DimensionTooLarge("v-tilde search lattice too large");
    }
    std::function<void(size_t)> gen = [&](size_t pos) {
        if (pos == K.size()) {
            DimVector w = v;
            for (size_t i = 0; i < K.size(); ++i) w.comp[K[i]] = cur[i];
            candidates.push_back(std::move(w));
            return;
        }
        for (long long c = 0; c <= v.comp[K[pos]]; ++c) {
            cur[pos] = c;
            gen(pos + 1);
        }
    };
    gen(0);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const DimVector& a, const DimVector& b) {
                         if (a.total() != b.total()) return a.total() > b.total();
                         return a.comp < b.comp;
                     });

    Stability theta = theta_I(mckay, I, v);
    for (const DimVector& w : candidates) {
        if (!stable_dim_inequalities_hold(mckay, I, w)) {
            res.search_log.push_back({w, "pruned_inequality"});
            continue;
        }
        auto cert = find_certificate(mckay, quiver, theta, w, /*want_stable=*/true, opt);
        if (cert) {
            res.search_log.push_back({w, "stable_found"});
            res.v_tilde = w;
            res.witness = std::move(cert);
            return res;
        }
        res.search_log.push_back({w, "not_found"});
        res.maximality_certain = false; // NotFound is not a proof
    }
    return res;
}

BoundCheck summand_bound_check(const Certificate& cert, const DimVector& v_tilde) {
    SubmoduleWitness<Rat> closure = submodule_closure(cert.rep, framing_seed(cert.rep));
    Rep<Rat> summand = sub_representation(cert.rep, closure);
    if (!is_stable(summand, cert.theta)) return BoundCheck::Skipped;
    for (int i = 0; i < summand.dim.num_unframed(); ++i)
        if (summand.dim.comp[i] > v_tilde.comp[i]) return BoundCheck::Violated;
    return BoundCheck::Holds;
}

namespace {

// Gate corpus: partition representations and paddings over GF(2)/GF(3),
// compared verdict-for-verdict with the definitional brute force.
template <int P>
bool gate_compare(const Rep<Rat>& rep, const Stability& theta) {
    auto modp = reduce_mod_p<P>(rep);
    if (!modp) return true; // skipped (denominator divisible by p)
    Verdict oracle = brute_force_stability<P>(*modp, theta);
    bool st = is_stable(*modp, theta);
    bool ss = st || is_semistable(*modp, theta);
    Verdict mine = st ? Verdict::Stable : (ss ? Verdict::Semistable : Verdict::Unstable);
    return mine == oracle;
}

bool run_stability_gate() {
    for (int m : {2, 3}) {
        McKayData mckay = build_mckay(GroupFamily::cyclic(m));
        auto quiver = std::make_shared<FramedQuiver>(frame(mckay));
        for (int n = 1; n <= 4; ++n) {
            for (const auto& parts : enumerate_partitions(n)) {
                ColoredPartition p = make_colored_partition(parts, m);
                Rep<Rat> rep = partition_to_rep(p, quiver);
                std::vector<Rep<Rat>> corpus{rep, pad_with_simples(rep, {{m - 1, 1}})};
                for (const Rep<Rat>& r : corpus) {
                    if (r.dim.total() > 6) continue;
                    std::vector<std::set<int>> Is{{0}, {m - 1}};
                    std::set<int> full;
                    for (int i = 0; i < m; ++i) full.insert(i);
                    Is.push_back(full);
                    for (const auto& I : Is) {
                        Stability theta = theta_I(mckay, I, r.dim);
                        if (!gate_compare<2>(r, theta)) return false;
                        if (!gate_compare<3>(r, theta)) return false;
                    }
                }
            }
        }
    }
    return true;
}

} // namespace

bool stability_gate_passed() {
    static const bool ok = run_stability_gate();
    return ok;
}

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Semistable: return "semistable";
        default: return "unstable";
    }
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Oracle: return "oracle";
        case Provenance::NumericThenRationalized: return "numeric_then_rationalized";
        default: return "padded";
    }
}

nlohmann::json certificate_to_json(const Certificate& c, const std::string& group) {
    nlohmann::json j;
    j["target"] = c.target == TargetKind::QuiverVariety ? "quiver_variety" : "moduli_A_I";
    j["dims"] = dimvec_to_json(c.rep.dim);
    j["exact"] = c.exact;
    j["residual_bound"] = c.residual_bound;
    j["verdict"] = verdict_name(c.verdict);
    j["provenance"] = provenance_name(c.provenance);
    j["rep"] = rep_to_json(c.rep, group);
    return j;
}

} // namespace

PipelineReport run_pipeline(const GroupFamily& group, const std::set<int>& I,
                            const std::map<int, long long>& n_I,
                            const PipelineOptions& opt) {
    if (I.empty()) throw EmptyIndexSet("pipeline needs a nonempty index set");
    McKayData mckay = build_mckay(group);
    auto quiver = std::make_shared<FramedQuiver>(frame(mckay));
    for (int i : I)
        if (i < 0 || i >= mckay.num_vertices())
            throw PreconditionViolation("index set out of range");

    nlohmann::json rep_json;
    rep_json["schema_version"] = kSchemaVersion;
    if (opt.with_timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        rep_json["timestamp"] = buf;
    }
    rep_json["input"] = {{"group", group.name()},
                         {"I", std::vector<int>(I.begin(), I.end())},
                         {"seed", opt.seed},
                         {"restarts", opt.restarts}};
    {
        nlohmann::json nj = nlohmann::json::object();
        for (auto [i, n] : n_I) nj[std::to_string(i)] = n;
        rep_json["input"]["n_I"] = nj;
    }
    rep_json["mckay"] = mckay_to_json(mckay);

    // starting vector: n_I on I, zero elsewhere
    DimVector v0 = DimVector::with_inf(1, std::vector<long long>(mckay.num_vertices(), 0));
    for (int i : I) v0.comp[i] = n_I.at(i);
    VPrimeResult vp = construct_vprime(mckay, I, n_I, v0);
    Stability theta = theta_I(mckay, I, vp.vprime);
    Stability eta = eta_I(I, n_I, mckay.num_vertices());

    rep_json["v_start"] = dimvec_to_json(v0);
    rep_json["v_prime"] = {{"vector", dimvec_to_json(vp.vprime)},
                           {"N", vp.N},
                           {"K_prime", vp.K_prime}};
    rep_json["theta_I"] = stability_to_json(theta);
    rep_json["eta_I"] = stability_to_json(eta);

    SolveOptions sopt;
    sopt.seed = opt.seed;
    sopt.restarts = opt.restarts;
    sopt.threads = opt.threads;

    bool ok = true;
    nlohmann::json checks;

    // numeric solver record at (theta_I, v'), for the report
    {
        SolveOptions so = sopt;
        so.want_stable = false;
        SolveOutcome sol = solve_moment_map(quiver, vp.vprime, theta, so);
        checks["solver_found"] = sol.rep.has_value();
        if (sol.rep) checks["solver_residual"] = sol.residual;
    }

    VTildeResult vt = find_v_tilde(mckay, quiver, I, vp.vprime, sopt);
    {
        nlohmann::json jvt;
        jvt["status"] = vt.v_tilde ? "found" : "unknown";
        jvt["maximality_certain"] = vt.maximality_certain;
        if (vt.v_tilde) jvt["vector"] = dimvec_to_json(*vt.v_tilde);
        nlohmann::json log = nlohmann::json::array();
        for (const auto& e : vt.search_log)
            log.push_back({{"w", dimvec_to_json(e.w)}, {"outcome", e.outcome}});
        jvt["search_log"] = log;
        rep_json["v_tilde"] = jvt;
    }

    nlohmann::json certs = nlohmann::json::array();
    std::optional<Certificate> semistable_at_vprime;
    if (vt.witness) {
        certs.push_back(certificate_to_json(*vt.witness, group.name()));
        // the stable-dimension inequalities hold for every stable certificate
        checks["stable_dim_inequalities"] = stable_dim_inequalities_hold(mckay, I, vt.witness->rep.dim);
        if (!checks["stable_dim_inequalities"].get<bool>()) ok = false;

        // padding: stable witness at v-tilde, plus vertex simples, lands at v'
        std::map<int, long long> mult;
        for (int k = 0; k < mckay.num_vertices(); ++k) {
            long long diff = vp.vprime.comp[k] - vt.v_tilde->comp[k];
            if (diff > 0) mult[k] = diff;
        }
        Rep<Rat> padded = pad_with_simples(vt.witness->rep, mult);
        bool pad_ok = is_semistable(padded, theta) && moment_residual(padded).is_zero();
        checks["padding_semistable"] = pad_ok;
        if (!pad_ok) ok = false;
        Certificate pc;
        pc.rep = std::move(padded);
        pc.theta = theta;
        pc.exact = true;
        pc.verdict = Verdict::Semistable;
        pc.provenance = Provenance::Padded;
        certs.push_back(certificate_to_json(pc, group.name()));
        semistable_at_vprime = std::move(pc);

        BoundCheck lc = summand_bound_check(*semistable_at_vprime, *vt.v_tilde);
        checks["summand_bound"] =
            lc == BoundCheck::Holds ? "holds" : (lc == BoundCheck::Skipped ? "skipped" : "violated");
        if (lc == BoundCheck::Violated) ok = false;
    }

    // cornered restriction of the semistable certificate: an eta_I-stable
    // A_I-module of dimension (1, n_I)
    if (semistable_at_vprime) {
        CorneredModule<Rat> cm = restrict_jI(semistable_at_vprime->rep, I);
        bool dims_ok = cm.dim_inf == 1;
        for (int i : I) dims_ok = dims_ok && cm.dims.at(i) == n_I.at(i);
        bool eta_stable = cornered_generated_at_inf(cm);
        checks["restrict_dims_match"] = dims_ok;
        checks["restrict_eta_stable"] = eta_stable;
        if (!dims_ok || !eta_stable) ok = false;
        nlohmann::json jc;
        jc["target"] = "moduli_A_I";
        nlohmann::json dims = nlohmann::json::object();
        for (auto [i, d] : cm.dims) dims[std::to_string(i)] = d;
        jc["dims"] = dims;
        jc["verdict"] = eta_stable ? "stable" : "unstable";
        jc["provenance"] = "restricted";
        certs.push_back(jc);
    }
    rep_json["certificates"] = certs;

    bool nonempty = semistable_at_vprime.has_value();
    rep_json["nonemptiness"] = {
        {"M_theta_I_vprime", nonempty ? "nonempty" : "unknown"},
        {"M_A_I", nonempty ? "nonempty" : "unknown"},
        {"equivalence", nonempty ? "consistent" : "unknown"},
    };
    rep_json["checks"] = checks;
    rep_json["ok"] = ok;

    PipelineReport report;
    report.ok = ok;
    report.nonempty = nonempty;
    report.json_text = rep_json.dump(2);
    return report;
}

} // namespace kq
