#include "coh/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coh {

using nlohmann::json;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Sign (-1)^(floor(N/2)); for odd N this extends the even-N freezing
// condition by integer division, which is what the sweep tooling expects.
int half_sign(int n_qubits) { return (n_qubits / 2) % 2 == 0 ? 1 : -1; }

}  // namespace

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

M3Triple parse_m3_flag(const std::string& csv, int n_qubits) {
    const auto parts = split_csv(csv);
    if (parts.size() != 3)
        throw std::invalid_argument("expected c1,c2,c3 (got '" + csv + "')");
    M3Triple c;
    c.n_qubits = n_qubits;
    c.c1 = std::stod(parts[0]);
    c.c3 = std::stod(parts[2]);
    if (parts[1] == "freeze") {
        c.c2 = half_sign(n_qubits) * c.c1 * c.c3;
    } else {
        c.c2 = std::stod(parts[1]);
    }
    return c;
}

BlochVector parse_bloch_flag(const std::string& csv) {
    const auto parts = split_csv(csv);
    if (parts.size() != 3)
        throw std::invalid_argument("expected n1,n2,n3 (got '" + csv + "')");
    return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
}

StateDescriptor parse_state(const json& j) {
    if (j.contains("m3")) {
        const json& m = j.at("m3");
        const int n = m.at("n").get<int>();
        M3Triple c;
        c.n_qubits = n;
        c.c1 = m.at("c1").get<double>();
        c.c3 = m.at("c3").get<double>();
        const json& c2 = m.at("c2");
        if (c2.is_string() && c2.get<std::string>() == "freeze") {
            c.c2 = half_sign(n) * c.c1 * c.c3;
        } else {
            c.c2 = c2.get<double>();
        }
        return c;
    }
    if (j.contains("bloch")) {
        const json& b = j.at("bloch");
        return BlochVector{b.at(0).get<double>(), b.at(1).get<double>(),
                           b.at(2).get<double>()};
    }
    if (j.contains("standard_form")) {
        const json& s = j.at("standard_form");
        StandardFormState p;
        auto get = [&](const char* key) {
            return s.contains(key) ? s.at(key).get<double>() : 0.0;
        };
        p.x1 = get("x1"); p.x2 = get("x2"); p.x3 = get("x3");
        p.y1 = get("y1"); p.y2 = get("y2"); p.y3 = get("y3");
        p.T11 = get("T11"); p.T22 = get("T22"); p.T33 = get("T33");
        return p;
    }
    if (j.contains("matrix")) {
        const json& rows = j.at("matrix");
        const int dim = static_cast<int>(rows.size());
        Mat m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) {
                const json& e = rows.at(i).at(k);
                m(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
            }
        return m;
    }
    throw std::invalid_argument(
        "initial state needs one of: m3, bloch, standard_form, matrix");
}

ChannelSpec parse_channel(const json& j) {
    ChannelSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    if (j.contains("q")) spec.strength = j.at("q").get<double>();
    if (j.contains("r")) spec.strength = j.at("r").get<double>();
    if (j.contains("gamma")) spec.gamma = j.at("gamma").get<double>();
    if (j.contains("t")) spec.t = j.at("t").get<double>();
    return spec;
}

RunConfig parse_run_config(const json& j) {
    RunConfig cfg;
    cfg.spec.initial = parse_state(j.at("initial"));
    cfg.spec.channel = parse_channel(j.at("channel"));
    for (const json& m : j.at("measures"))
        cfg.spec.measures.push_back(m.get<std::string>());
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (g.is_number_integer())
            cfg.spec.grid = uniform_grid(g.get<int>());
        else
            for (const json& q : g) cfg.spec.grid.push_back(q.get<double>());
    } else {
        cfg.spec.grid = uniform_grid();
    }
    if (j.contains("seed")) cfg.spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) {
        const json& o = j.at("output");
        if (o.contains("path")) cfg.output_path = o.at("path").get<std::string>();
        if (o.contains("format")) cfg.format = o.at("format").get<std::string>();
    }
    return cfg;
}

void write_series_csv(const SweepSeries& series, std::ostream& os) {
    os << "q";
    for (const auto& m : series.measures) os << "," << m;
    os << "\n";
    for (size_t i = 0; i < series.grid.size(); ++i) {
        os << fmt17(series.grid[i]);
        for (size_t m = 0; m < series.measures.size(); ++m) {
            os << ",";
            if (series.failed[m][i])
                os << "nan";  // gap: optimizer failed at this point
            else
                os << fmt17(series.values[m][i]);
        }
        os << "\n";
    }
}

json series_to_json(const SweepSeries& series) {
    json out;
    out["q"] = series.grid;
    for (size_t m = 0; m < series.measures.size(); ++m) {
        json col;
        col["values"] = series.values[m];
        col["failed_points"] = json::array();
        for (size_t i = 0; i < series.failed[m].size(); ++i)
            if (series.failed[m][i]) col["failed_points"].push_back(i);
        const FreezeVerdict& v = series.verdicts[m];
        col["frozen"] = v.frozen;
        col["max_deviation"] = v.max_deviation;
        col["tolerance"] = v.tolerance;
        col["indeterminate"] = v.indeterminate;
        out["measures"][series.measures[m]] = col;
    }
    if (series.q_star) out["q_star"] = *series.q_star;
    return out;
}

json report_to_json(const verify::LemmaReport& report) {
    json out;
    out["id"] = report.id;
    out["instances"] = report.instances;
    out["max_violation"] = report.max_violation;
    out["tolerance"] = report.tolerance;
    out["pass"] = report.pass;
    out["seed"] = report.seed;
    out["counterexamples"] = report.counterexamples;
    return out;
}

}  // namespace coh
