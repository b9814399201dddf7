#pragma once

// Cross-checks the union-find sweep against the independent oracles on one
// matrix: at a set of probe thresholds the sweep partition, the infinity-graph
// partition and the brute-force topological partition of the thresholded
// matrix must coincide, and evaluate() must agree with kappa_at().

#include <affcurve/affinity.hpp>
#include <affcurve/curve.hpp>
#include <affcurve/topology.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace affcurve {

/// Thresholds that hit every interval of the curve: each distinct finite
/// affinity, the midpoints between consecutive ones, one value below the
/// smallest and one above the largest.
inline std::vector<double> probe_thresholds(const AffinityMatrix& a)
{
    const auto values = finite_values(a);
    if (values.empty())
        return {0.5, 1.0, 2.0};
    std::vector<double> out{values.front() / 2.0};
    for (std::size_t k = 0; k < values.size(); ++k) {
        out.push_back(values[k]);
        if (k + 1 < values.size())
            out.push_back(values[k] + (values[k + 1] - values[k]) / 2.0);
    }
    out.push_back(values.back() * 2.0);
    return out;
}

struct EquivalenceReport {
    bool pass = true;
    std::size_t probes = 0;
    std::string failure;
};

struct EquivalenceOptions {
    bool topological = true;
    std::size_t oracle_limit = kDefaultOracleLimit;
};

inline EquivalenceReport check_equivalence(const AffinityMatrix& a, const EquivalenceOptions& options = {})
{
    EquivalenceReport report;
    const auto fail = [&report](double lambda, const char* what) {
        std::ostringstream os;
        os.precision(17);
        os << what << " at lambda=" << lambda;
        report.pass = false;
        report.failure = os.str();
        return report;
    };

    const SweepResult sweep = connectivity_sweep(a);
    const ConnectivityCurve& curve = sweep.curve;
    if (sweep.partitions.back() != components_graph(a))
        return fail(kInfinity, "stabilized partition differs from infinity-graph components");

    for (double lambda : probe_thresholds(a)) {
        ++report.probes;
        const AffinityMatrix thresholded = threshold(a, lambda);
        const std::size_t k = interval_index(curve, lambda);
        const Partition& from_sweep = sweep.partitions[k];
        const Partition graph = components_graph(thresholded);
        if (from_sweep != graph)
            return fail(lambda, "sweep partition differs from graph partition");
        if (evaluate(curve, lambda) != kappa_at(a, lambda))
            return fail(lambda, "evaluate differs from kappa_at");
        if (kappa_at(a, lambda) != graph.block_count())
            return fail(lambda, "kappa_at differs from graph block count");
        if (options.topological &&
            components_topological(thresholded, options.oracle_limit) != graph)
            return fail(lambda, "topological partition differs from graph partition");
    }
    return report;
}

}  // namespace affcurve
