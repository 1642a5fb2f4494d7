#pragma once

#include "mcfg/derivation.hpp"
#include "mcfg/enumeration.hpp"
#include "mcfg/grammar.hpp"
#include "mcfg/pumping.hpp"
#include "mcfg/preorder.hpp"

#include <json.hpp>

#include <string>

namespace mcfg::json {

using nlohmann::json;

json word(const Word& w);
json term(const Term& t);
json violation(const Violation& v);
json violations(const std::vector<Violation>& vs);
json tree(const DerivationTree& d);
json preorder(const Preorder& p);
json diff(const DiffReport& d);
json delta(const DeltaReport& d);
json experiment(const ExperimentReport& r);

/// {command, inputs, result, violations[]}
json envelope(const std::string& command, json inputs, json result, json violations = json::array());

/// Two-space indented, keys sorted (nlohmann's default object ordering).
std::string dump(const json& j);

}  // namespace mcfg::json
