#pragma once

#include <json.hpp>

#include "kq/mckay.hpp"
#include "kq/rep.hpp"
#include "kq/stability.hpp"

namespace kq {

inline constexpr int kSchemaVersion = 1;

nlohmann::json rat_to_json(const Rat& q);
Rat rat_from_json(const nlohmann::json& j);

nlohmann::json dimvec_to_json(const DimVector& v);
DimVector dimvec_from_json(const nlohmann::json& j);

nlohmann::json stability_to_json(const Stability& theta);
Stability stability_from_json(const nlohmann::json& j);

nlohmann::json mckay_to_json(const McKayData& m);

nlohmann::json rep_to_json(const Rep<Rat>& rep, const std::string& group_name);
Rep<Rat> rep_from_json(const nlohmann::json& j);

} // namespace kq
