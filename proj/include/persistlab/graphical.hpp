#pragma once

#include <limits>
#include <vector>

#include "persistlab/model_core.hpp"

namespace persistlab {

/// Graphical construction of the population as a random binary tree.
///
/// Vertices are binary words (root = empty word); each carries an
/// exponential(lambda) lifetime and splits into children 0 and 1 at its end.
/// Coloring: white = normal, red = persistent. Along each branch the color
/// switches to red at the points of a rate-a Poisson process (normal ->
/// persistent) and back to white at the points of a rate-b process,
/// matching the model dynamics. Because persistents cannot give birth, at
/// every split whose instant is red the child whose word ends in 1 is erased;
/// killings cut every white segment they cross and erase its subtree.

struct TreeLimits {
    std::int64_t node_budget = 10'000'000;
};

struct SplittingTree {
    struct Node {
        std::int32_t parent = -1;  // -1 for the root
        std::uint8_t bit = 0;      // last letter of the word
        double birth = 0;
        double lifetime = 0;

        double split_time() const { return birth + lifetime; }
    };

    std::vector<Node> nodes;  // parents always precede children
    double horizon = 0;

    /// Number of branches alive at time t (a rate-lambda Yule count).
    std::int64_t alive_count_at(double t) const;
};

/// Generates every node born before `horizon`, breadth first; lifetimes are
/// drawn in that order. Throws NodeBudgetError past limits.node_budget.
SplittingTree build_splitting_tree(double lambda, double horizon,
                                   RngStream& rng,
                                   const TreeLimits& limits = {});

enum class Phenotype { Normal, Persistent };

struct ColoredTree {
    struct Paint {
        std::vector<double> to_persistent;  // rate-a marks within the lifetime
        std::vector<double> to_normal;      // rate-b marks within the lifetime
        Phenotype at_birth = Phenotype::Normal;
        bool present = true;  // false once pruned or erased
        double cut_time = std::numeric_limits<double>::infinity();
    };

    SplittingTree tree;
    Phenotype initial = Phenotype::Normal;
    std::vector<Paint> paint;  // parallel to tree.nodes

    /// Color of node i's branch at time t in [birth, split).
    Phenotype color_at(std::size_t i, double t) const;

    /// end of node i's live segment: min(split time, cut time)
    double segment_end(std::size_t i) const;

    std::int64_t white_count_at(double t) const;
    std::int64_t red_count_at(double t) const;
};

/// Draws the two per-node Poisson mark families (to-persistent first, then
/// to-normal, node by node in index order, skipping erased subtrees),
/// propagates the color from (root, initial), and prunes child 1 at red
/// splits. The (white, red) counts at time t have the killing-free model's
/// (n1, n2) law.
ColoredTree color_and_prune(const SplittingTree& tree, double a, double b,
                            Phenotype initial, RngStream& rng);

/// Keeps each point independently with probability keep_prob. Thinning a
/// Poisson(delta') stream this way yields a Poisson(delta'*keep_prob) stream.
std::vector<double> decimate(const std::vector<double>& points,
                             double keep_prob, RngStream& rng);

/// Cuts, at every kill time in increasing order, each white segment crossing
/// it, erasing the forward subtree; red segments pass through unharmed.
ColoredTree apply_killings(ColoredTree ct, const std::vector<double>& kill_times);

/// One replicate of the decimation coupling between killing intensities
/// delta < delta_high on a shared tree-plus-coloring.
struct CoupledOutcome {
    bool alive_low = false;        // population nonempty at horizon, intensity delta
    bool alive_high = false;       // same at intensity delta_high
    bool containment_ok = false;   // high-intensity tree verified inside low one
    std::int64_t segments_checked = 0;
    std::int64_t violations = 0;
    bool discarded = false;        // node budget hit before both flags resolved
};

struct CouplingLimits {
    std::int64_t node_budget = 10'000'000;
};

/// Draws kill times at intensity delta_high, decimates them with
/// keep_prob = delta/delta_high into the low-intensity kill set, and applies
/// both to one colored tree. The tree is explored lazily, depth first:
/// subtrees dead under the low-intensity kills are dead under both and are
/// never generated, and once the low world's survival is known only segments
/// alive in the high world are expanded. Both alive flags are exact.
/// Containment (alive-high implies alive-low, and high-world deaths never
/// come later than low-world ones) is checked on every generated segment.
CoupledOutcome coupled_run(const Rates& r, double delta, double delta_high,
                           double horizon, RngStream& rng,
                           const CouplingLimits& limits = {},
                           Phenotype initial = Phenotype::Persistent);

}  // namespace persistlab
