#include "coh/dynamics.hpp"

#include "coh/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coh {

namespace {

struct InitialState {
    DensityMatrix rho;
    std::optional<M3Triple> triple;
};

InitialState resolve_initial(const StateDescriptor& s) {
    if (const auto* c = std::get_if<M3Triple>(&s)) return {m3_state(*c), *c};
    if (const auto* n = std::get_if<BlochVector>(&s))
        return {bloch_to_density(*n), std::nullopt};
    if (const auto* p = std::get_if<StandardFormState>(&s))
        return {standard_form_state(*p), std::nullopt};
    return {DensityMatrix(std::get<Mat>(s)), std::nullopt};
}

void validate_grid(const std::vector<double>& grid) {
    if (grid.size() < 2)
        throw std::invalid_argument("sweep grid needs at least 2 points");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("sweep grid must be sorted");
    if (grid.front() < 0.0 || grid.back() > 1.0)
        throw std::invalid_argument("sweep grid must lie within [0,1]");
}

}  // namespace

std::vector<double> uniform_grid(int points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: need >= 2 points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = static_cast<double>(i) / (points - 1);
    return g;
}

double default_freeze_tol(const std::string& measure) {
    return measure.rfind("d:", 0) == 0 ? 1e-5 : 1e-9;
}

FreezeVerdict freeze_verdict(const std::vector<double>& series, double tol) {
    if (series.empty())
        throw std::invalid_argument("freeze_verdict: empty series");
    FreezeVerdict v;
    v.tolerance = tol;
    for (double x : series)
        v.max_deviation = std::max(v.max_deviation, std::abs(x - series.front()));
    v.frozen = v.max_deviation <= tol;
    return v;
}

MeasureValue eval_measure(const std::string& selector, const DensityMatrix& rho,
                          const std::optional<M3Triple>& triple,
                          const MinimizeOptions& opts) {
    if (selector == "l1") return {c_l1(rho), false};
    if (selector == "re" || selector == "d:re") return {c_re(rho), false};
    if (selector == "tr") {
        if (!triple)
            throw std::invalid_argument("measure 'tr' requires an M3 state");
        return {c_tr_m3(*triple), false};
    }
    if (selector == "d:trace" || selector == "d:bures") {
        const DistanceKind d = parse_distance(selector.substr(2));
        if (triple && triple->n_qubits >= 4)
            return {c_d_m3_restricted(*triple, d).value, false};
        const CoherenceResult res = c_d(rho, d, opts);
        return {res.value, !res.converged};
    }
    throw std::invalid_argument("unknown measure selector '" + selector + "'");
}

bool SweepSeries::any_failure() const {
    for (const auto& row : failed)
        for (char f : row)
            if (f) return true;
    return false;
}

SweepSeries run_sweep(const SweepSpec& spec) {
    validate_grid(spec.grid);
    for (const auto& m : spec.measures)
        if (!is_measure_selector(m))
            throw std::invalid_argument("unknown measure selector '" + m + "'");

    const InitialState init = resolve_initial(spec.initial);
    const bool closed_form_path = init.triple && spec.channel.is_flip();

    SweepSeries out;
    out.grid = spec.grid;
    out.measures = spec.measures;
    out.values.assign(spec.measures.size(), {});
    out.failed.assign(spec.measures.size(), {});
    if (init.triple && spec.channel.kind == "bit_flip")
        out.q_star = threshold_q_star(*init.triple);

    for (size_t i = 0; i < spec.grid.size(); ++i) {
        const double q = spec.grid[i];
        std::optional<M3Triple> triple;
        std::optional<DensityMatrix> rho;
        if (closed_form_path) {
            triple = evolve_triple(*init.triple, spec.channel.flip_axis(), q);
            rho = m3_state(*triple);
        } else {
            const KrausChannel ch =
                make_channel(spec.channel, init.rho.n_qubits(), q);
            rho = apply(ch, init.rho);
        }
        MinimizeOptions opts;
        opts.seed = mix_seed(spec.seed, i);
        for (size_t m = 0; m < spec.measures.size(); ++m) {
            const MeasureValue mv =
                eval_measure(spec.measures[m], *rho, triple, opts);
            out.values[m].push_back(mv.value);
            out.failed[m].push_back(mv.optimizer_failed ? 1 : 0);
        }
    }

    for (size_t m = 0; m < spec.measures.size(); ++m) {
        FreezeVerdict v =
            freeze_verdict(out.values[m], default_freeze_tol(spec.measures[m]));
        const bool degraded = std::any_of(out.failed[m].begin(),
                                          out.failed[m].end(),
                                          [](char f) { return f != 0; });
        if (degraded) {
            v.indeterminate = true;
            v.frozen = false;
        }
        out.verdicts.push_back(v);
    }
    return out;
}

FreezingScanReport no_common_freezing_scan(const BlochVector& n0,
                                           const ChannelSpec& channel) {
    SweepSpec spec;
    spec.initial = n0;
    spec.channel = channel;
    spec.measures = {"l1", "re"};
    spec.grid = uniform_grid();

    const DensityMatrix rho0 = bloch_to_density(n0);
    FreezingScanReport report;
    const SweepSeries series = run_sweep(spec);
    report.l1 = series.verdicts[0];
    report.re = series.verdicts[1];

    if (c_l1(rho0) <= 1e-12) {
        report.classification = FreezingScanReport::Class::trivial_incoherent;
    } else {
        const KrausChannel mid = make_channel(channel, 1, 0.5);
        const DensityMatrix evolved = apply(mid, rho0);
        if ((evolved.mat() - rho0.mat()).cwiseAbs().maxCoeff() <= 1e-12)
            report.classification = FreezingScanReport::Class::trivial_invariant;
    }
    return report;
}

CoincidenceReport measure_coincidence_report(const M3Triple& c,
                                             int grid_points) {
    if (c.n_qubits != 2)
        throw std::invalid_argument(
            "measure_coincidence_report: expected two qubits");
    CoincidenceReport report;
    report.q_star = threshold_q_star(c);
    for (double q : uniform_grid(grid_points)) {
        const M3Triple evolved = evolve_triple(c, 1, q);
        const DensityMatrix rho = m3_state(evolved);
        CoincidenceRow row;
        row.q = q;
        row.below_threshold = q <= report.q_star;
        MinimizeOptions opts;
        opts.seed = mix_seed(0, static_cast<std::uint64_t>(q * 1e6));
        row.d_trace = c_d(rho, DistanceKind::trace, opts).value;
        row.d_bures = c_d(rho, DistanceKind::bures, opts).value;
        row.d_re = c_re(rho);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace coh
