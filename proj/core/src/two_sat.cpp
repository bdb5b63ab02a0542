#include "fairdiv/two_sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace fairdiv {

std::vector<std::string> validate_formula(const TwoSatFormula& f) {
    std::vector<std::string> out;
    if (f.variables < 0) {
        out.push_back("negative variable count");
    }
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        const auto& clause = f.clauses[c];
        if (clause.empty() || clause.size() > 2) {
            out.push_back("clause " + std::to_string(c) + " must hold one or two literals");
        }
        for (int lit : clause) {
            if (lit == 0 || std::abs(lit) > f.variables) {
                out.push_back("clause " + std::to_string(c) + " has literal out of range");
            }
        }
    }
    return out;
}

bool satisfies(const TwoSatFormula& f, const std::vector<bool>& assignment) {
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int lit : clause) {
            bool v = assignment[std::abs(lit) - 1];
            sat = sat || (lit > 0 ? v : !v);
        }
        if (!sat) {
            return false;
        }
    }
    return true;
}

namespace {

// Node 2k is "variable k true", node 2k+1 is "variable k false".
int node_of(int lit) { return 2 * (std::abs(lit) - 1) + (lit > 0 ? 0 : 1); }

class Tarjan {
public:
    explicit Tarjan(const std::vector<std::vector<int>>& adj)
        : adj_(adj), index_(adj.size(), -1), low_(adj.size(), 0), on_stack_(adj.size(), false),
          comp_(adj.size(), -1) {}

    // Components are numbered in the order Tarjan completes them, which is a reverse
    // topological order of the condensation.
    std::vector<int> run() {
        for (int v = 0; v < static_cast<int>(adj_.size()); ++v) {
            if (index_[v] < 0) {
                visit(v);
            }
        }
        return comp_;
    }

private:
    void visit(int root) {
        // Iterative DFS keeps deep implication chains off the call stack.
        std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
        open(root);
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            if (next < adj_[v].size()) {
                int w = adj_[v][next++];
                if (index_[w] < 0) {
                    open(w);
                    frames.emplace_back(w, 0);
                } else if (on_stack_[w]) {
                    low_[v] = std::min(low_[v], index_[w]);
                }
                continue;
            }
            if (low_[v] == index_[v]) {
                int w;
                do {
                    w = stack_.back();
                    stack_.pop_back();
                    on_stack_[w] = false;
                    comp_[w] = components_;
                } while (w != v);
                ++components_;
            }
            int finished = v;
            frames.pop_back();
            if (!frames.empty()) {
                int parent = frames.back().first;
                low_[parent] = std::min(low_[parent], low_[finished]);
            }
        }
    }

    void open(int v) {
        index_[v] = low_[v] = counter_++;
        stack_.push_back(v);
        on_stack_[v] = true;
    }

    const std::vector<std::vector<int>>& adj_;
    std::vector<int> index_;
    std::vector<int> low_;
    std::vector<bool> on_stack_;
    std::vector<int> comp_;
    std::vector<int> stack_;
    int counter_ = 0;
    int components_ = 0;
};

}  // namespace

std::optional<std::vector<bool>> solve_2sat(const TwoSatFormula& f) {
    const int nodes = 2 * f.variables;
    std::vector<std::vector<int>> adj(nodes);
    for (const auto& clause : f.clauses) {
        int a = clause[0];
        int b = clause.size() == 2 ? clause[1] : clause[0];
        // (a or b): not a implies b, not b implies a.
        adj[node_of(-a)].push_back(node_of(b));
        adj[node_of(-b)].push_back(node_of(a));
    }
    std::vector<int> comp = Tarjan(adj).run();
    std::vector<bool> assignment(f.variables, false);
    for (int k = 0; k < f.variables; ++k) {
        int t = comp[2 * k];
        int nf = comp[2 * k + 1];
        if (t == nf) {
            return std::nullopt;
        }
        // A literal whose component comes later in topological order is set true.
        assignment[k] = t < nf;
    }
    return assignment;
}

}  // namespace fairdiv
