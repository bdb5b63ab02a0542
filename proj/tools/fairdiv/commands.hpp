#pragma once

#include <fairdiv/budget.hpp>
#include <fairdiv/json_io.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fairdiv::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

struct Outcome {
    int code = kOk;
    json doc;
};

struct CheckArgs {
    std::string instance;
    std::string allocation;
    std::string criteria = "ef,prop,ef1,efx0,efx-,mms";
};

struct AllocateArgs {
    std::string algo;
    std::string instance;
    std::string order;
    bool allow_mixed = false;
};

struct MmsArgs {
    std::string instance;
    bool thresholds_only = false;
};

struct OrientArgs {
    std::string graph;
    bool goods = false;
    bool chores = false;
    std::string criterion = "efx0";
    std::optional<std::string> alpha;
    std::optional<std::string> beta;
    std::string emit_dot;
};

struct CircuitGadgetArgs {
    std::string file;
    int q = 2;
    std::string alpha = "5";
    std::string beta = "1";
    std::string output;
};

struct PartitionGadgetArgs {
    std::string set;
    std::string variant = "selfloop";
    std::string criterion = "ef1";
    std::string output;
};

struct OracleArgs {
    std::string graph;
    std::string instance;
    std::string exists;
    std::string search = "enumerate";
};

struct DotArgs {
    std::string graph;
    std::string orientation;
    std::string style = "plain";
    std::string output;
};

// Each command returns the exit code and the JSON document for standard output. Errors
// surface as exceptions from the core library and are mapped to exit codes by the caller.
Outcome run_check(const CheckArgs& args, const SearchBudget& budget);
Outcome run_allocate(const AllocateArgs& args);
Outcome run_mms(const MmsArgs& args, const SearchBudget& budget);
Outcome run_orient(const OrientArgs& args, const SearchBudget& budget);
Outcome run_circuit_gadget(const CircuitGadgetArgs& args);
Outcome run_partition_gadget(const PartitionGadgetArgs& args);
Outcome run_oracle(const OracleArgs& args, const SearchBudget& budget);
Outcome run_export_dot(const DotArgs& args);

std::vector<std::string> split_list(const std::string& text);

}  // namespace fairdiv::cli
