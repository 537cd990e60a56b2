#pragma once

#include "coh/channels.hpp"
#include "coh/coherence.hpp"
#include "coh/m3.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace coh {

using StateDescriptor = std::variant<M3Triple, BlochVector, StandardFormState, Mat>;

struct SweepSpec {
    StateDescriptor initial;
    ChannelSpec channel;
    std::vector<std::string> measures;
    std::vector<double> grid;     // sorted q values in [0,1], >= 2 points
    std::uint64_t seed = 0;
};

std::vector<double> uniform_grid(int points = 101);

struct FreezeVerdict {
    bool frozen = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool indeterminate = false;   // optimizer failure somewhere in the series
};

struct SweepSeries {
    std::vector<double> grid;
    std::vector<std::string> measures;
    std::vector<std::vector<double>> values;  // values[measure][point]
    std::vector<std::vector<char>> failed;    // per-point optimizer failure
    std::vector<FreezeVerdict> verdicts;
    std::optional<double> q_star;             // M3 initial states under bit flip
    bool any_failure() const;
};

/// Default freeze tolerance per measure: 1e-9 closed forms, 1e-5 optimizer.
double default_freeze_tol(const std::string& measure);

FreezeVerdict freeze_verdict(const std::vector<double>& series, double tol);

/// Evaluate each measure at each grid point of the evolved state. Uses the
/// closed-form triple evolution when the initial state is M3 and the channel
/// is a local flip, full Kraus evolution otherwise. Deterministic given seed.
SweepSeries run_sweep(const SweepSpec& spec);

struct MeasureValue {
    double value = 0.0;
    bool optimizer_failed = false;
};

/// One measure on one state; triple is supplied when the state is known M3
/// (enables "tr" and the restricted minimizer for N >= 4).
MeasureValue eval_measure(const std::string& selector, const DensityMatrix& rho,
                          const std::optional<M3Triple>& triple,
                          const MinimizeOptions& opts);

struct FreezingScanReport {
    enum class Class { nontrivial, trivial_incoherent, trivial_invariant };
    FreezeVerdict l1;
    FreezeVerdict re;
    Class classification = Class::nontrivial;
    bool both_frozen() const { return l1.frozen && re.frozen; }
};

/// Per-state freezing verdicts for c_l1 and c_re under a single-qubit channel,
/// with trivial cases flagged (incoherent initial state, channel-invariant
/// initial state).
FreezingScanReport no_common_freezing_scan(const BlochVector& n0,
                                           const ChannelSpec& channel);

struct CoincidenceRow {
    double q = 0.0;
    bool below_threshold = true;
    double d_trace = 0.0;
    double d_bures = 0.0;
    double d_re = 0.0;
};

struct CoincidenceReport {
    double q_star = 0.0;
    std::vector<CoincidenceRow> rows;
};

/// C_D values across the grid for a two-qubit freezing-family state, split at
/// the threshold q* where |c3(q)| drops below |c1(q)|.
CoincidenceReport measure_coincidence_report(const M3Triple& c,
                                             int grid_points = 101);

}  // namespace coh
