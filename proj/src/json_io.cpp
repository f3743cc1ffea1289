#include "kq/json_io.hpp"

namespace kq {

namespace {

nlohmann::json int_to_json(const Int& n) {
    // JSON numbers cover our certificate scales; huge values fall back to strings
    static const Int lo = Int(std::numeric_limits<std::int64_t>::min());
    static const Int hi = Int(std::numeric_limits<std::int64_t>::max());
    if (n >= lo && n <= hi) return static_cast<std::int64_t>(n);
    return n.str();
}

Int int_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    return Int(j.get<std::int64_t>());
}

} // namespace

nlohmann::json rat_to_json(const Rat& q) {
    return nlohmann::json::array({int_to_json(rat_num(q)), int_to_json(rat_den(q))});
}

Rat rat_from_json(const nlohmann::json& j) {
    return Rat(int_from_json(j.at(0)), int_from_json(j.at(1)));
}

nlohmann::json dimvec_to_json(const DimVector& v) {
    nlohmann::json j;
    if (v.framed) j["inf"] = v.inf;
    j["weights"] = v.comp;
    return j;
}

DimVector dimvec_from_json(const nlohmann::json& j) {
    std::vector<long long> comp = j.at("weights").get<std::vector<long long>>();
    if (j.contains("inf")) return DimVector::with_inf(j.at("inf").get<long long>(), comp);
    return DimVector::unframed(comp);
}

nlohmann::json stability_to_json(const Stability& theta) {
    nlohmann::json j;
    j["inf"] = rat_to_json(theta.inf);
    nlohmann::json w = nlohmann::json::array();
    for (const Rat& x : theta.w) w.push_back(rat_to_json(x));
    j["weights"] = w;
    return j;
}

Stability stability_from_json(const nlohmann::json& j) {
    Stability theta;
    theta.inf = rat_from_json(j.at("inf"));
    for (const auto& x : j.at("weights")) theta.w.push_back(rat_from_json(x));
    return theta;
}

nlohmann::json mckay_to_json(const McKayData& m) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = m.group.name();
    j["order"] = m.group.order;
    j["dims"] = m.irrep_dims;
    j["adjacency"] = m.adjacency;
    return j;
}

nlohmann::json rep_to_json(const Rep<Rat>& rep, const std::string& group_name) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["group"] = group_name;
    j["dims"] = dimvec_to_json(rep.dim);
    nlohmann::json arrows = nlohmann::json::array();
    for (const Arrow& a : rep.quiver->arrows) {
        nlohmann::json ja;
        ja["id"] = a.id;
        ja["rows"] = rep.maps[a.id].rows;
        ja["cols"] = rep.maps[a.id].cols;
        nlohmann::json entries = nlohmann::json::array();
        for (const Rat& x : rep.maps[a.id].a) entries.push_back(rat_to_json(x));
        ja["entries"] = entries;
        arrows.push_back(ja);
    }
    j["arrows"] = arrows;
    return j;
}

Rep<Rat> rep_from_json(const nlohmann::json& j) {
    GroupFamily g = parse_group(j.at("group").get<std::string>());
    McKayData mckay = build_mckay(g);
    auto quiver = std::make_shared<FramedQuiver>(frame(mckay));
    DimVector dim = dimvec_from_json(j.at("dims"));
    Rep<Rat> rep = Rep<Rat>::zero(quiver, dim);
    for (const auto& ja : j.at("arrows")) {
        int id = ja.at("id").get<int>();
        if (id < 0 || id >= quiver->num_arrows())
            throw QuiverMismatch("arrow id out of range for the group's quiver");
        Mat<Rat>& m = rep.maps[id];
        if (ja.at("rows").get<int>() != m.rows || ja.at("cols").get<int>() != m.cols)
            throw ShapeMismatch("arrow matrix shape does not match dimension vector");
        const auto& entries = ja.at("entries");
        if (entries.size() != m.a.size())
            throw ShapeMismatch("entry count does not match matrix shape");
        for (size_t k = 0; k < m.a.size(); ++k) m.a[k] = rat_from_json(entries[k]);
    }
    return rep;
}

} // namespace kq
