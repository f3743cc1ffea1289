#include "kq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kq/cornered.hpp"
#include "kq/json_io.hpp"
#include "kq/oracle.hpp"
#include "kq/pipeline.hpp"

namespace kq {

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<long long> parse_ll_list(const std::string& s) {
    std::vector<long long> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        f << text << "\n";
    }
}

std::uint64_t env_seed() {
    const char* s = std::getenv("KQ_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 0;
}

int env_threads() {
    const char* s = std::getenv("KQ_THREADS");
    return s ? std::atoi(s) : 1;
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Kleinian quiver toolkit: framed McKay quivers, cornered algebras, "
                 "stability conditions and quiver-variety certificates"};
    app.set_config("--config", "", "read defaults from a TOML-like config file");
    app.fallthrough(); // global flags may follow a subcommand
    int threads = env_threads();
    std::uint64_t seed = env_seed();
    app.add_option("--threads", threads, "parallelism cap (env KQ_THREADS)");
    app.add_option("--seed", seed, "random seed (env KQ_SEED)");

    std::string group_name, out_path, format = "json";

    // mckay show | dot
    auto* mckay_cmd = app.add_subcommand("mckay", "McKay graph and framed quiver");
    auto* mckay_show = mckay_cmd->add_subcommand("show", "adjacency, dims and delta");
    mckay_show->add_option("--group", group_name, "group (A<k>, D<k>, E6|E7|E8)")->required();
    mckay_show->add_option("--format", format, "json");
    mckay_show->add_option("--out", out_path, "output file");
    std::string view = "framed";
    auto* mckay_dot = mckay_cmd->add_subcommand("dot", "DOT export of Q, Q_Gamma or Q*");
    mckay_dot->add_option("--group", group_name)->required();
    mckay_dot->add_option("--view", view, "framed|unframed|star");
    mckay_dot->add_option("--out", out_path);

    // stability theta-i | vprime | cartan-check
    std::string I_arg, nI_arg, v_arg, K_arg;
    auto* stab_cmd = app.add_subcommand("stability", "stability conditions and dimension vectors");
    auto* theta_cmd = stab_cmd->add_subcommand("theta-i", "the face weight theta_I");
    theta_cmd->add_option("--group", group_name)->required();
    theta_cmd->add_option("--I", I_arg, "comma-separated vertex set")->required();
    theta_cmd->add_option("--v", v_arg, "unframed components of (1,v); default: zero off I");
    theta_cmd->add_option("--nI", nI_arg, "values on I when --v is omitted");
    theta_cmd->add_option("--out", out_path);
    auto* vprime_cmd = stab_cmd->add_subcommand("vprime", "minimal vector of V(n_I) above v");
    vprime_cmd->add_option("--group", group_name)->required();
    vprime_cmd->add_option("--I", I_arg)->required();
    vprime_cmd->add_option("--nI", nI_arg)->required();
    vprime_cmd->add_option("--v", v_arg, "starting vector; default n_I padded by zeros");
    vprime_cmd->add_option("--out", out_path);
    auto* cartan_cmd = stab_cmd->add_subcommand("cartan-check", "Cartan blocks of a vertex subset");
    cartan_cmd->add_option("--group", group_name)->required();
    cartan_cmd->add_option("--K", K_arg, "comma-separated proper vertex subset")->required();
    cartan_cmd->add_option("--out", out_path);

    // algebra basis
    std::string kind_arg = "A_I";
    int cap = 8;
    auto* alg_cmd = app.add_subcommand("algebra", "truncated path-algebra bases");
    auto* basis_cmd = alg_cmd->add_subcommand("basis", "per-degree dimension tables");
    basis_cmd->add_option("--kind", kind_arg, "Pi|A|B|B_I|A_I");
    basis_cmd->add_option("--group", group_name)->required();
    basis_cmd->add_option("--I", I_arg, "index set for cornered kinds");
    basis_cmd->add_option("--cap", cap, "degree cap");
    basis_cmd->add_option("--format", format, "json|csv");
    basis_cmd->add_option("--out", out_path);

    // rep check | stability
    std::string in_path;
    bool cplus = false;
    auto* rep_cmd = app.add_subcommand("rep", "representation checks");
    auto* rep_check = rep_cmd->add_subcommand("check", "shapes and moment-map residual");
    rep_check->add_option("--in", in_path, "representation JSON")->required();
    rep_check->add_option("--out", out_path);
    auto* rep_stab = rep_cmd->add_subcommand("stability", "King stability verdict");
    rep_stab->add_option("--in", in_path)->required();
    rep_stab->add_option("--I", I_arg, "face support of theta_I");
    rep_stab->add_flag("--cplus", cplus, "use a generic weight in C_v^+");
    rep_stab->add_option("--out", out_path);

    // oracle count | certify
    int m = 2;
    std::string partition_arg;
    auto* oracle_cmd = app.add_subcommand("oracle", "colored-partition ground truth");
    auto* count_cmd = oracle_cmd->add_subcommand("count", "partitions with given color content");
    count_cmd->add_option("--m", m, "cyclic order")->required();
    count_cmd->add_option("--v", v_arg, "content vector")->required();
    count_cmd->add_option("--out", out_path);
    auto* certify_cmd = oracle_cmd->add_subcommand("certify", "exact certificate from a partition");
    certify_cmd->add_option("--m", m)->required();
    certify_cmd->add_option("--partition", partition_arg, "weakly decreasing parts")->required();
    certify_cmd->add_option("--out", out_path);

    // pipeline run
    int restarts = 64;
    auto* pipe_cmd = app.add_subcommand("pipeline", "end-to-end certification");
    auto* run_cmd = pipe_cmd->add_subcommand("run", "run for (group, I, n_I)");
    run_cmd->add_option("--group", group_name)->required();
    run_cmd->add_option("--I", I_arg)->required();
    run_cmd->add_option("--nI", nI_arg)->required();
    run_cmd->add_option("--restarts", restarts);
    run_cmd->add_option("--json", out_path, "write the report here");

    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*mckay_show) {
            McKayData data = build_mckay(parse_group(group_name));
            nlohmann::json j = mckay_to_json(data);
            j["delta"] = dimvec_to_json(data.delta);
            emit(j.dump(2), out_path);
        } else if (*mckay_dot) {
            McKayData data = build_mckay(parse_group(group_name));
            FramedQuiver q = frame(data);
            QuiverView qv = view == "unframed" ? QuiverView::Unframed
                                               : (view == "star" ? QuiverView::Star
                                                                 : QuiverView::Framed);
            emit(to_dot(data, q, qv), out_path);
        } else if (*theta_cmd) {
            McKayData data = build_mckay(parse_group(group_name));
            std::vector<int> Iv = parse_int_list(I_arg);
            std::set<int> I(Iv.begin(), Iv.end());
            DimVector v;
            if (!v_arg.empty()) {
                v = DimVector::with_inf(1, parse_ll_list(v_arg));
            } else {
                std::vector<long long> nv = parse_ll_list(nI_arg);
                if (nv.size() != I.size())
                    throw PreconditionViolation("--nI must match --I in length");
                v = DimVector::with_inf(1, std::vector<long long>(data.num_vertices(), 0));
                size_t t = 0;
                for (int i : I) v.comp[i] = nv[t++];
            }
            emit(stability_to_json(theta_I(data, I, v)).dump(2), out_path);
        } else if (*vprime_cmd) {
            McKayData data = build_mckay(parse_group(group_name));
            std::vector<int> Iv = parse_int_list(I_arg);
            std::set<int> I(Iv.begin(), Iv.end());
            std::vector<long long> nv = parse_ll_list(nI_arg);
            if (nv.size() != I.size())
                throw PreconditionViolation("--nI must match --I in length");
            std::map<int, long long> nI;
            size_t t = 0;
            for (int i : I) nI[i] = nv[t++];
            DimVector v;
            if (!v_arg.empty()) v = DimVector::with_inf(1, parse_ll_list(v_arg));
            else {
                v = DimVector::with_inf(1, std::vector<long long>(data.num_vertices(), 0));
                for (int i : I) v.comp[i] = nI[i];
            }
            VPrimeResult r = construct_vprime(data, I, nI, v);
            nlohmann::json j;
            j["schema_version"] = kSchemaVersion;
            j["v_prime"] = dimvec_to_json(r.vprime);
            j["N"] = r.N;
            j["K_prime"] = r.K_prime;
            emit(j.dump(2), out_path);
        } else if (*cartan_cmd) {
            McKayData data = build_mckay(parse_group(group_name));
            std::vector<int> Kv = parse_int_list(K_arg);
            std::set<int> K(Kv.begin(), Kv.end());
            nlohmann::json j;
            j["schema_version"] = kSchemaVersion;
            nlohmann::json blocks = nlohmann::json::array();
            for (const CartanBlock& b : cartan_blocks(data, K)) {
                CartanInverse ci = cartan_inverse_nonneg(b);
                nlohmann::json jb;
                jb["vertices"] = b.vertices;
                nlohmann::json mat = nlohmann::json::array(), inv = nlohmann::json::array();
                for (int i = 0; i < b.matrix.rows; ++i) {
                    nlohmann::json row = nlohmann::json::array(), irow = nlohmann::json::array();
                    for (int jcol = 0; jcol < b.matrix.cols; ++jcol) {
                        row.push_back(rat_to_json(b.matrix(i, jcol)));
                        irow.push_back(rat_to_json(ci.inverse(i, jcol)));
                    }
                    mat.push_back(row);
                    inv.push_back(irow);
                }
                jb["cartan"] = mat;
                jb["inverse"] = inv;
                jb["inverse_nonnegative"] = ci.nonnegative;
                blocks.push_back(jb);
            }
            j["blocks"] = blocks;
            emit(j.dump(2), out_path);
        } else if (*basis_cmd) {
            McKayData data = build_mckay(parse_group(group_name));
            std::vector<int> Iv = parse_int_list(I_arg);
            std::set<int> I(Iv.begin(), Iv.end());
            AlgebraKind kind;
            if (kind_arg == "Pi") kind = AlgebraKind::Pi;
            else if (kind_arg == "A") kind = AlgebraKind::A;
            else if (kind_arg == "B") kind = AlgebraKind::B;
            else if (kind_arg == "B_I") kind = AlgebraKind::BI;
            else if (kind_arg == "A_I") kind = AlgebraKind::AI;
            else throw PreconditionViolation("unknown algebra kind: " + kind_arg);
            TruncatedAlgebra alg = TruncatedAlgebra::build(kind, data, I, cap);
            std::vector<long long> per_degree;
            for (int dg = 0; dg <= cap; ++dg)
                per_degree.push_back(alg.dim_upto(dg) - (dg ? alg.dim_upto(dg - 1) : 0));
            if (format == "csv") {
                std::ostringstream os;
                os << "degree,dim\n";
                for (int dg = 0; dg <= cap; ++dg) os << dg << "," << per_degree[dg] << "\n";
                emit(os.str(), out_path);
            } else {
                nlohmann::json j;
                j["schema_version"] = kSchemaVersion;
                j["kind"] = kind_arg;
                j["cap"] = cap;
                j["dim_per_degree"] = per_degree;
                j["dim_upto_cap"] = alg.dim_upto(cap);
                emit(j.dump(2), out_path);
            }
        } else if (*rep_check) {
            std::ifstream f(in_path);
            if (!f) throw PreconditionViolation("cannot open " + in_path);
            nlohmann::json jin = nlohmann::json::parse(f);
            Rep<Rat> rep = rep_from_json(jin);
            rep.check_shapes();
            MomentResidual<Rat> mu = moment_residual(rep);
            nlohmann::json j;
            j["schema_version"] = kSchemaVersion;
            j["shapes_ok"] = true;
            j["moment_residual_zero"] = mu.is_zero();
            emit(j.dump(2), out_path);
            return mu.is_zero() ? 0 : 2;
        } else if (*rep_stab) {
            std::ifstream f(in_path);
            if (!f) throw PreconditionViolation("cannot open " + in_path);
            nlohmann::json jin = nlohmann::json::parse(f);
            Rep<Rat> rep = rep_from_json(jin);
            McKayData data = build_mckay(parse_group(jin.at("group").get<std::string>()));
            std::set<int> I;
            if (cplus || I_arg.empty())
                for (int i = 0; i < data.num_vertices(); ++i) I.insert(i);
            else {
                std::vector<int> Iv = parse_int_list(I_arg);
                I.insert(Iv.begin(), Iv.end());
            }
            Stability theta = theta_I(data, I, rep.dim);
            nlohmann::json j;
            j["schema_version"] = kSchemaVersion;
            bool st = is_stable(rep, theta);
            j["verdict"] = st ? "stable" : (is_semistable(rep, theta) ? "semistable" : "unstable");
            emit(j.dump(2), out_path);
        } else if (*count_cmd) {
            DimVector v = DimVector::unframed(parse_ll_list(v_arg));
            auto parts = enumerate_colored_partitions(m, v);
            nlohmann::json j;
            j["schema_version"] = kSchemaVersion;
            j["count"] = parts.size();
            emit(j.dump(2), out_path);
        } else if (*certify_cmd) {
            std::vector<int> parts = parse_int_list(partition_arg);
            ColoredPartition p = make_colored_partition(parts, m);
            McKayData data = build_mckay(GroupFamily::cyclic(m));
            auto quiver = std::make_shared<FramedQuiver>(frame(data));
            Rep<Rat> rep = partition_to_rep(p, quiver);
            if (!moment_residual(rep).is_zero()) return 2;
            emit(rep_to_json(rep, data.group.name()).dump(2), out_path);
        } else if (*run_cmd) {
            GroupFamily g = parse_group(group_name);
            McKayData data = build_mckay(g);
            std::vector<int> Iv = parse_int_list(I_arg);
            std::set<int> I(Iv.begin(), Iv.end());
            std::vector<long long> nv = parse_ll_list(nI_arg);
            if (nv.size() != I.size())
                throw PreconditionViolation("--nI must match --I in length");
            std::map<int, long long> nI;
            size_t t = 0;
            for (int i : I) nI[i] = nv[t++];
            PipelineOptions popt;
            popt.seed = seed;
            popt.restarts = restarts;
            popt.threads = threads;
            PipelineReport report = run_pipeline(g, I, nI, popt);
            emit(report.json_text, out_path);
            return report.ok ? 0 : 2;
        } else {
            std::cout << app.help() << "\n";
            return 1;
        }
    } catch (const ResourceGuard& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace kq
