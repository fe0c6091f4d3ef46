#pragma once

#include "endcb/classify.hpp"
#include "endcb/order.hpp"
#include "endcb/term.hpp"

#include <json.hpp>

#include <string>

namespace endcb {

// Structured serialization with stable field names mirroring the grammar.
nlohmann::json term_to_json(const Term& t);
nlohmann::json surface_to_json(const Surface& s);
Term term_from_json(const nlohmann::json& j);
Surface surface_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v, bool explain);
nlohmann::json poset_to_json(const ClassPoset& p);

std::string verdict_text(const Verdict& v, bool explain);

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace endcb
