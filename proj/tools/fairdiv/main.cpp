#include "commands.hpp"

#include <fairdiv/errors.hpp>

#include <CLI11.hpp>

#include <functional>
#include <iostream>

using namespace fairdiv;
using namespace fairdiv::cli;

int main(int argc, char** argv) {
    CLI::App app{"Fair division of indivisible items: checkers, allocators, MMS, orientations, gadgets"};
    app.require_subcommand(1);
    bool pretty = false;
    SearchBudget budget;
    app.add_flag("--pretty", pretty, "Indent the JSON output");
    app.add_option("--budget", budget.max_states, "State budget for exhaustive searches")
        ->check(CLI::PositiveNumber);

    std::function<Outcome()> action;

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Evaluate fairness criteria of an allocation");
    check_cmd->add_option("--instance", check_args.instance)->required();
    check_cmd->add_option("--allocation", check_args.allocation)->required();
    check_cmd->add_option("--criteria", check_args.criteria, "Comma list of ef,prop,ef1,efx0,efx-,mms,po");
    check_cmd->callback([&] { action = [&] { return run_check(check_args, budget); }; });

    AllocateArgs alloc_args;
    auto* alloc_cmd = app.add_subcommand("allocate", "Run an allocation algorithm");
    alloc_cmd->add_option("--algo", alloc_args.algo)
        ->required()
        ->check(CLI::IsMember({"rr", "drr", "ece", "ttece", "dece"}));
    alloc_cmd->add_option("--instance", alloc_args.instance)->required();
    alloc_cmd->add_option("--order", alloc_args.order, "Picking order for rr, e.g. 1,0,2");
    alloc_cmd->add_flag("--allow-mixed", alloc_args.allow_mixed, "Let rr run on a mixed instance");
    alloc_cmd->callback([&] { action = [&] { return run_allocate(alloc_args); }; });

    MmsArgs mms_args;
    auto* mms_cmd = app.add_subcommand("mms", "MMS thresholds and an MMS allocation");
    mms_cmd->add_option("--instance", mms_args.instance)->required();
    mms_cmd->add_flag("--thresholds-only", mms_args.thresholds_only);
    mms_cmd->callback([&] { action = [&] { return run_mms(mms_args, budget); }; });

    OrientArgs orient_args;
    auto* orient_cmd = app.add_subcommand("orient", "Decide and construct a fair orientation");
    orient_cmd->add_option("--graph", orient_args.graph)->required();
    orient_cmd->add_flag("--goods", orient_args.goods);
    orient_cmd->add_flag("--chores", orient_args.chores);
    orient_cmd->add_option("--criterion", orient_args.criterion)->check(CLI::IsMember({"ef1", "efx0"}));
    orient_cmd->add_option("--alpha", orient_args.alpha);
    orient_cmd->add_option("--beta", orient_args.beta);
    orient_cmd->add_option("--emit-dot", orient_args.emit_dot, "Write the oriented graph as DOT to this file");
    orient_cmd->callback([&] { action = [&] { return run_orient(orient_args, budget); }; });

    auto* gadget_cmd = app.add_subcommand("gadget", "Generate reduction instances");
    gadget_cmd->require_subcommand(1);
    CircuitGadgetArgs circuit_args;
    auto* circuit_cmd = gadget_cmd->add_subcommand("circuit", "Bi-valued multigraph for a circuit");
    circuit_cmd->add_option("--file", circuit_args.file)->required();
    circuit_cmd->add_option("--q", circuit_args.q);
    circuit_cmd->add_option("--alpha", circuit_args.alpha);
    circuit_cmd->add_option("--beta", circuit_args.beta);
    circuit_cmd->add_option("-o,--output", circuit_args.output);
    circuit_cmd->callback([&] { action = [&] { return run_circuit_gadget(circuit_args); }; });
    PartitionGadgetArgs partition_args;
    auto* partition_cmd = gadget_cmd->add_subcommand("partition", "Chores multigraph for a Partition instance");
    partition_cmd->add_option("--set", partition_args.set)->required();
    partition_cmd->add_option("--variant", partition_args.variant)
        ->check(CLI::IsMember({"selfloop", "triangle"}));
    partition_cmd->add_option("--criterion", partition_args.criterion)->check(CLI::IsMember({"ef1", "efx0"}));
    partition_cmd->add_option("-o,--output", partition_args.output);
    partition_cmd->callback([&] { action = [&] { return run_partition_gadget(partition_args); }; });

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive existence search");
    oracle_cmd->add_option("--graph", oracle_args.graph);
    oracle_cmd->add_option("--instance", oracle_args.instance);
    oracle_cmd->add_option("--exists", oracle_args.exists)->required();
    oracle_cmd->add_option("--search", oracle_args.search, "enumerate or pruned (graphs only)")
        ->check(CLI::IsMember({"enumerate", "pruned"}));
    oracle_cmd->callback([&] { action = [&] { return run_oracle(oracle_args, budget); }; });

    DotArgs dot_args;
    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz text for a multigraph");
    dot_cmd->add_option("--graph", dot_args.graph)->required();
    dot_cmd->add_option("--orientation", dot_args.orientation);
    dot_cmd->add_option("--style", dot_args.style)->check(CLI::IsMember({"plain", "paper"}));
    dot_cmd->add_option("-o,--output", dot_args.output);
    dot_cmd->callback([&] { action = [&] { return run_export_dot(dot_args); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        Outcome out = action();
        std::cout << (pretty ? out.doc.dump(2) : out.doc.dump()) << '\n';
        return out.code;
    } catch (const BudgetExceeded& e) {
        std::cerr << "fairdiv: " << e.what() << '\n';
        return kBudget;
    } catch (const SizeGuardError& e) {
        std::cerr << "fairdiv: " << e.what() << '\n';
        return kBudget;
    } catch (const Error& e) {
        std::cerr << "fairdiv: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "fairdiv: malformed JSON: " << e.what() << '\n';
        return kUsage;
    }
}
