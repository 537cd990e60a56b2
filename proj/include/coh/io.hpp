#pragma once

#include "coh/dynamics.hpp"
#include "coh/verify.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>

namespace coh {

/// Full run configuration as consumed from a JSON document.
struct RunConfig {
    SweepSpec spec;
    std::string output_path;      // empty: stdout
    std::string format = "csv";   // csv | json
};

StateDescriptor parse_state(const nlohmann::json& j);
ChannelSpec parse_channel(const nlohmann::json& j);
RunConfig parse_run_config(const nlohmann::json& j);

/// "c1,c2,c3" with c2 optionally the keyword "freeze", which expands to
/// (-1)^(N/2) c1 c3.
M3Triple parse_m3_flag(const std::string& csv, int n_qubits);
BlochVector parse_bloch_flag(const std::string& csv);
std::vector<std::string> split_csv(const std::string& s);

/// Series CSV: header row `q,<measure>...`, 17 significant digits.
void write_series_csv(const SweepSeries& series, std::ostream& os);
nlohmann::json series_to_json(const SweepSeries& series);

nlohmann::json report_to_json(const verify::LemmaReport& report);

}  // namespace coh
