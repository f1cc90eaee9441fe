#pragma once

#include "msca/allocation.hpp"
#include "msca/chains.hpp"
#include "msca/lp_relaxation.hpp"
#include "msca/rounding.hpp"
#include "msca/submodular.hpp"
#include "msca/verification.hpp"

#include <json.hpp>

#include <string>

namespace msca {

// Insertion-ordered JSON keeps every serialization byte-deterministic.
using Json = nlohmann::ordered_json;

Json subset_to_json(Subset s);
Subset subset_from_json(const Json& j, int n);

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

// {"objective": "p/q", "support": [{"i", "set", "weight"}...], "iterations"}
Json lp_solution_to_json(const LpSolution& solution);
// The solve command's file: the LP solution plus its uncrossed "chain".
Json solution_file_to_json(const LpSolution& solution, const ChainAllocation& chain);
LpSolution lp_solution_from_json(const Json& j, int n, int k);
ChainAllocation chain_from_json(const Json& j, int n, int k);
Json chain_to_json(const ChainAllocation& chain);

// {"M", "m", "jstar", "tuple", "cover", "partition", "value", "lp_value",
//  "ratio"}; ratio is null when the LP optimum is zero.
Json round_report_to_json(const RoundResult& result, const Rat& lp_value);
RoundResult round_result_from_json(const Json& j, const Instance& inst);

Json brute_to_json(const BruteForceResult& result);
BruteForceResult brute_from_json(const Json& j, const Instance& inst);

Json verification_report_to_json(const VerificationReport& report);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace msca
