#include "persistlab/graphical.hpp"

#include <algorithm>
#include <cmath>

namespace persistlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Phenotype flip(Phenotype p) {
    return p == Phenotype::Normal ? Phenotype::Persistent : Phenotype::Normal;
}
}  // namespace

std::int64_t SplittingTree::alive_count_at(double t) const {
    std::int64_t count = 0;
    for (const Node& n : nodes)
        if (n.birth <= t && t < n.split_time()) ++count;
    return count;
}

SplittingTree build_splitting_tree(double lambda, double horizon,
                                   RngStream& rng, const TreeLimits& limits) {
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw NonPositiveRateError("lambda");
    if (!(horizon > 0) || !std::isfinite(horizon))
        throw NonPositiveRateError("horizon");

    SplittingTree tree;
    tree.horizon = horizon;
    tree.nodes.push_back({-1, 0, 0.0, 0.0});
    // vector doubles as the BFS queue: lifetimes are drawn in index order
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        tree.nodes[i].lifetime = rng.exponential(lambda);
        const double split = tree.nodes[i].split_time();
        if (split < horizon) {
            if (static_cast<std::int64_t>(tree.nodes.size()) + 2 >
                limits.node_budget)
                throw NodeBudgetError("build_splitting_tree: node budget exceeded");
            tree.nodes.push_back({static_cast<std::int32_t>(i), 0, split, 0.0});
            tree.nodes.push_back({static_cast<std::int32_t>(i), 1, split, 0.0});
        }
    }
    return tree;
}

double ColoredTree::segment_end(std::size_t i) const {
    return std::fmin(tree.nodes[i].split_time(), paint[i].cut_time);
}

Phenotype ColoredTree::color_at(std::size_t i, double t) const {
    const Paint& p = paint[i];
    Phenotype color = p.at_birth;
    std::size_t ia = 0, ib = 0;
    while (ia < p.to_persistent.size() || ib < p.to_normal.size()) {
        const double ta = ia < p.to_persistent.size() ? p.to_persistent[ia] : kInf;
        const double tb = ib < p.to_normal.size() ? p.to_normal[ib] : kInf;
        if (std::fmin(ta, tb) > t) break;
        if (ta <= tb) {
            color = Phenotype::Persistent;
            ++ia;
        } else {
            color = Phenotype::Normal;
            ++ib;
        }
    }
    return color;
}

namespace {
std::int64_t count_color_at(const ColoredTree& ct, double t, Phenotype want) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < ct.tree.nodes.size(); ++i) {
        if (!ct.paint[i].present) continue;
        if (ct.tree.nodes[i].birth <= t && t < ct.segment_end(i) &&
            ct.color_at(i, t) == want)
            ++count;
    }
    return count;
}
}  // namespace

std::int64_t ColoredTree::white_count_at(double t) const {
    return count_color_at(*this, t, Phenotype::Normal);
}

std::int64_t ColoredTree::red_count_at(double t) const {
    return count_color_at(*this, t, Phenotype::Persistent);
}

ColoredTree color_and_prune(const SplittingTree& tree, double a, double b,
                            Phenotype initial, RngStream& rng) {
    if (!(a > 0) || !std::isfinite(a)) throw NonPositiveRateError("a");
    if (!(b > 0) || !std::isfinite(b)) throw NonPositiveRateError("b");

    ColoredTree ct;
    ct.tree = tree;
    ct.initial = initial;
    ct.paint.resize(tree.nodes.size());
    std::vector<Phenotype> end_color(tree.nodes.size());

    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const SplittingTree::Node& node = tree.nodes[i];
        ColoredTree::Paint& p = ct.paint[i];
        if (node.parent < 0) {
            p.at_birth = initial;
        } else {
            const auto parent = static_cast<std::size_t>(node.parent);
            const bool red_split = end_color[parent] == Phenotype::Persistent;
            p.present = ct.paint[parent].present && !(red_split && node.bit == 1);
            if (!p.present) continue;  // erased subtrees draw nothing
            p.at_birth = end_color[parent];
        }

        // marks restricted to the lived segment: to-persistent first, then
        // to-normal, each as an exponential-gap stream
        const double end = node.split_time();
        for (double t = node.birth + rng.exponential(a); t < end;
             t += rng.exponential(a))
            p.to_persistent.push_back(t);
        for (double t = node.birth + rng.exponential(b); t < end;
             t += rng.exponential(b))
            p.to_normal.push_back(t);

        end_color[i] = ct.color_at(i, end);
    }
    return ct;
}

std::vector<double> decimate(const std::vector<double>& points,
                             double keep_prob, RngStream& rng) {
    if (!(keep_prob > 0) || keep_prob > 1)
        throw ValidationError("decimate: keep_prob must be in (0, 1]");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw ValidationError("decimate: points must be strictly increasing");

    std::vector<double> kept;
    for (double p : points)
        if (rng.uniform() < keep_prob) kept.push_back(p);
    return kept;
}

ColoredTree apply_killings(ColoredTree ct, const std::vector<double>& kill_times) {
    for (std::size_t i = 1; i < kill_times.size(); ++i)
        if (!(kill_times[i] > kill_times[i - 1]))
            throw ValidationError("apply_killings: kill times must be increasing");

    for (double s : kill_times) {
        for (std::size_t i = 0; i < ct.tree.nodes.size(); ++i) {
            ColoredTree::Paint& p = ct.paint[i];
            if (!p.present || p.cut_time < kInf) continue;
            const SplittingTree::Node& node = ct.tree.nodes[i];
            if (node.birth <= s && s < node.split_time() &&
                ct.color_at(i, s) == Phenotype::Normal)
                p.cut_time = s;
        }
    }

    // erase forward subtrees: a child born at or after its parent's cut is
    // gone, and absence cascades in index order (parents first)
    for (std::size_t i = 0; i < ct.tree.nodes.size(); ++i) {
        const std::int32_t parent = ct.tree.nodes[i].parent;
        if (parent < 0) continue;
        const auto pi = static_cast<std::size_t>(parent);
        if (!ct.paint[pi].present ||
            ct.paint[pi].cut_time <= ct.tree.nodes[i].birth)
            ct.paint[i].present = false;
    }
    return ct;
}

namespace {

/// First kill in (birth, limit] that lands on a white stretch of the color
/// path (switch times ordered, colors alternating from `at_birth`).
double kill_death_time(const std::vector<double>& kills, double birth,
                       double limit, Phenotype at_birth,
                       const std::vector<double>& switches) {
    auto it = std::upper_bound(kills.begin(), kills.end(), birth);
    Phenotype color = at_birth;
    std::size_t si = 0;
    for (; it != kills.end() && *it <= limit; ++it) {
        while (si < switches.size() && switches[si] <= *it) {
            color = flip(color);
            ++si;
        }
        if (color == Phenotype::Normal) return *it;
    }
    return kInf;
}

}  // namespace

CoupledOutcome coupled_run(const Rates& r, double delta, double delta_high,
                           double horizon, RngStream& rng,
                           const CouplingLimits& limits, Phenotype initial) {
    validate_rates(r, RateContext::Solver);
    if (!(delta > 0) || !std::isfinite(delta)) throw NonPositiveRateError("delta");
    if (!(delta_high > delta) || !std::isfinite(delta_high))
        throw ValidationError("coupled_run: requires 0 < delta < delta_high");
    if (!(horizon > 0) || !std::isfinite(horizon))
        throw NonPositiveRateError("horizon");

    // the high-intensity kill stream, then its decimation: every low kill is
    // a high kill, which is what makes the high process a subtree of the low
    std::vector<double> kills_high;
    for (double t = rng.exponential(delta_high); t <= horizon;
         t += rng.exponential(delta_high))
        kills_high.push_back(t);
    const std::vector<double> kills_low =
        decimate(kills_high, delta / delta_high, rng);

    struct Segment {
        double birth;
        Phenotype color;
        bool alive_low;
        bool alive_high;
    };
    std::vector<Segment> stack{{0.0, initial, true, true}};
    std::vector<double> switches;

    CoupledOutcome out;
    std::int64_t generated = 0;

    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        // low-world survival already established: only high-world segments
        // can still change the outcome
        if (out.alive_low && !seg.alive_high) continue;

        if (++generated > limits.node_budget) {
            out.discarded = true;
            break;
        }
        ++out.segments_checked;
        if (seg.alive_high && !seg.alive_low) ++out.violations;

        const double lifetime = rng.exponential(r.lambda);
        const double end = seg.birth + lifetime;

        // effective color switches along the segment
        switches.clear();
        Phenotype color = seg.color;
        for (double t = seg.birth +
                        rng.exponential(color == Phenotype::Normal ? r.a : r.b);
             t < end;) {
            switches.push_back(t);
            color = flip(color);
            t += rng.exponential(color == Phenotype::Normal ? r.a : r.b);
        }
        // `color` is now the phenotype at the split instant

        const double window_end = std::fmin(end, horizon);
        const double death_low =
            seg.alive_low ? kill_death_time(kills_low, seg.birth, window_end,
                                            seg.color, switches)
                          : -kInf;
        const double death_high =
            seg.alive_high ? kill_death_time(kills_high, seg.birth, window_end,
                                             seg.color, switches)
                           : -kInf;
        if (seg.alive_low && seg.alive_high && death_high > death_low)
            ++out.violations;  // high-world segment outlived the low one

        if (end > horizon) {
            if (seg.alive_low && death_low > horizon) out.alive_low = true;
            if (seg.alive_high && death_high > horizon) out.alive_high = true;
            if (out.alive_high && out.alive_low) break;  // both resolved alive
            continue;
        }

        const bool child_low = seg.alive_low && death_low > end;
        const bool child_high = seg.alive_high && death_high > end;
        if (!child_low && !child_high) continue;
        if (out.alive_low && !child_high) continue;

        // red splits keep only child 0; pushing child 1 first makes the
        // depth-first order deterministic (child 0 explored first)
        if (color == Phenotype::Normal)
            stack.push_back({end, color, child_low, child_high});
        stack.push_back({end, color, child_low, child_high});
    }

    out.containment_ok = out.violations == 0;
    return out;
}

}  // namespace persistlab
