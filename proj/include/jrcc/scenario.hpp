// scenario.hpp - experiment description: physics constants, geometry, budgets
//
// Owns every number the other modules consume. Scenario files are JSON; any
// numeric field may be given with a "_db"/"_dbw" suffix and is converted to
// linear units on load, so all formulas downstream stay unit-clean.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "jrcc/numeric.hpp"

namespace jrcc {

using Vec3 = std::array<double, 3>;

inline double distance(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct RadarParams {
    double transmit_power = 1000.0;   // W, total before the radar/comm split
    double tx_gain = 1000.0;          // linear power ratio
    double rx_gain = 1000.0;          // linear power ratio
    double wavelength = 0.03;         // m
    double rcs = 10.0;                // m^2, target radar cross section
    double pulse_duration = 1e-5;     // s
    double estimator_variance = 25.0; // m^2, range-estimator variance bound
    double snr_threshold = 19.9526231496888; // linear, 13 dB
    double system_temperature = 290.0;       // K
    double noise_figure = 1.0;               // linear
    double ris_threshold_reduction = 1.0;    // linear >= 1, divides snr_threshold
};

struct RisConfig {
    int num_elements = 270;        // L
    int num_modules = 9;           // N
    double element_amplitude = 1.0; // in (0,1]
    int phase_bits = 0;            // 0 = continuous phases

    int elements_per_module() const {
        return num_modules > 0 ? num_elements / num_modules : 0;
    }
};

enum class NoiseMode { Fixed, Density };

struct CovertParams {
    double user_noise_power = 1.0;   // W, used in fixed-noise mode
    double warden_noise_power = 1.0; // W
    int warden_samples = 100;        // n, radiometer observation window
    double covert_threshold = 0.95;  // P_th, required minimum warden total error
    NoiseMode noise_mode = NoiseMode::Fixed;
};

struct Geometry {
    Vec3 transmitter_position{0.0, 0.0, 0.0};
    Vec3 ris_position{0.0, 0.0, 0.0};
    std::vector<Vec3> user_positions;
    std::vector<Vec3> warden_positions;
    std::vector<Vec3> target_positions;
    double path_loss_exponent_direct = 3.0;
    double path_loss_exponent_ris = 2.0;
    double reference_gain = 1.0; // linear power gain at 1 m
};

struct Budgets {
    double total_power = 100.0;      // W
    double total_bandwidth = 5e6;    // Hz
    int total_modules = 9;
    double power_allocation_parameter = 1.0; // PAP, comm share of total power
    bool optimize_bandwidth = false; // false: equal per-user bandwidth split
};

enum class FadingMode { DeterministicUnit, Rayleigh, Rician };

struct Scenario {
    RadarParams radar;
    RisConfig ris;
    CovertParams covert;
    Geometry geometry;
    Budgets budgets;
    FadingMode fading_mode = FadingMode::Rician;
    double rician_k_factor = 10.0;

    std::size_t num_users() const { return geometry.user_positions.size(); }
    std::size_t num_wardens() const { return geometry.warden_positions.size(); }
};

struct Diagnostic {
    std::string field;
    std::string message;
    double value = 0.0;
};

// Checks every type invariant and reports all violations, not just the first.
inline std::vector<Diagnostic> validate(const Scenario& s) {
    std::vector<Diagnostic> out;
    auto positive = [&out](const char* field, double v) {
        if (!(v > 0.0) || !std::isfinite(v))
            out.push_back({field, "must be strictly positive", v});
    };

    positive("radar.transmit_power", s.radar.transmit_power);
    positive("radar.tx_gain", s.radar.tx_gain);
    positive("radar.rx_gain", s.radar.rx_gain);
    positive("radar.wavelength", s.radar.wavelength);
    positive("radar.rcs", s.radar.rcs);
    positive("radar.pulse_duration", s.radar.pulse_duration);
    positive("radar.estimator_variance", s.radar.estimator_variance);
    positive("radar.snr_threshold", s.radar.snr_threshold);
    positive("radar.system_temperature", s.radar.system_temperature);
    positive("radar.noise_figure", s.radar.noise_figure);
    if (!(s.radar.ris_threshold_reduction >= 1.0))
        out.push_back({"radar.ris_threshold_reduction", "must be >= 1",
                       s.radar.ris_threshold_reduction});

    if (s.ris.num_elements < 1)
        out.push_back({"ris.num_elements", "must be >= 1",
                       static_cast<double>(s.ris.num_elements)});
    if (s.ris.num_modules < 1)
        out.push_back({"ris.num_modules", "must be >= 1",
                       static_cast<double>(s.ris.num_modules)});
    if (s.ris.num_modules >= 1 && s.ris.num_elements % s.ris.num_modules != 0)
        out.push_back({"ris.num_elements",
                       "must be divisible by num_modules",
                       static_cast<double>(s.ris.num_elements)});
    if (!(s.ris.element_amplitude > 0.0 && s.ris.element_amplitude <= 1.0))
        out.push_back({"ris.element_amplitude", "must be in (0, 1]",
                       s.ris.element_amplitude});
    if (s.ris.phase_bits < 0)
        out.push_back({"ris.phase_bits", "must be >= 0",
                       static_cast<double>(s.ris.phase_bits)});

    positive("covert.user_noise_power", s.covert.user_noise_power);
    positive("covert.warden_noise_power", s.covert.warden_noise_power);
    if (s.covert.warden_samples < 1)
        out.push_back({"covert.warden_samples", "must be >= 1",
                       static_cast<double>(s.covert.warden_samples)});
    if (!(s.covert.covert_threshold > 0.0 && s.covert.covert_threshold < 1.0))
        out.push_back({"covert.covert_threshold",
                       "probability out of range (0, 1)",
                       s.covert.covert_threshold});

    if (s.geometry.user_positions.empty())
        out.push_back({"geometry.user_positions", "need at least one user", 0.0});
    if (s.geometry.warden_positions.empty())
        out.push_back({"geometry.warden_positions", "need at least one warden", 0.0});
    if (!(s.geometry.path_loss_exponent_direct >= 2.0))
        out.push_back({"geometry.path_loss_exponent_direct", "must be >= 2",
                       s.geometry.path_loss_exponent_direct});
    if (!(s.geometry.path_loss_exponent_ris >= 2.0))
        out.push_back({"geometry.path_loss_exponent_ris", "must be >= 2",
                       s.geometry.path_loss_exponent_ris});
    positive("geometry.reference_gain", s.geometry.reference_gain);

    // all nodes must be pairwise distinct
    std::vector<Vec3> nodes{s.geometry.transmitter_position, s.geometry.ris_position};
    nodes.insert(nodes.end(), s.geometry.user_positions.begin(), s.geometry.user_positions.end());
    nodes.insert(nodes.end(), s.geometry.warden_positions.begin(), s.geometry.warden_positions.end());
    nodes.insert(nodes.end(), s.geometry.target_positions.begin(), s.geometry.target_positions.end());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (!(distance(nodes[i], nodes[j]) > 0.0)) {
                out.push_back({"geometry", "two nodes are coincident",
                               static_cast<double>(i)});
            }

    positive("budgets.total_power", s.budgets.total_power);
    positive("budgets.total_bandwidth", s.budgets.total_bandwidth);
    if (s.budgets.total_modules < 1)
        out.push_back({"budgets.total_modules", "must be >= 1",
                       static_cast<double>(s.budgets.total_modules)});
    if (s.budgets.total_modules > s.ris.num_modules)
        out.push_back({"budgets.total_modules",
                       "exceeds ris.num_modules",
                       static_cast<double>(s.budgets.total_modules)});
    if (!(s.budgets.power_allocation_parameter >= 0.0 &&
          s.budgets.power_allocation_parameter <= 1.0))
        out.push_back({"budgets.power_allocation_parameter", "must be in [0, 1]",
                       s.budgets.power_allocation_parameter});

    if (s.fading_mode == FadingMode::Rician && !(s.rician_k_factor > 0.0))
        out.push_back({"rician_k_factor", "must be strictly positive",
                       s.rician_k_factor});

    return out;
}

// Throws std::invalid_argument listing every violation.
inline const Scenario& require_valid(const Scenario& s) {
    const auto diags = validate(s);
    if (!diags.empty()) {
        std::ostringstream oss;
        oss << "invalid scenario:";
        for (const auto& d : diags)
            oss << "\n  " << d.field << ": " << d.message << " (value " << d.value << ")";
        throw std::invalid_argument(oss.str());
    }
    return s;
}

namespace detail {

// Reads "key" as a linear value, or "key_db"/"key_dbw" converted from dB.
// Exactly one spelling must be present.
inline double read_linear(const nlohmann::json& j, const std::string& key) {
    const std::string db = key + "_db";
    const std::string dbw = key + "_dbw";
    int found = j.contains(key) + j.contains(db) + j.contains(dbw);
    if (found == 0)
        throw std::runtime_error("scenario: missing field '" + key + "'");
    if (found > 1)
        throw std::runtime_error("scenario: field '" + key +
                                 "' given in more than one unit");
    if (j.contains(key)) return j.at(key).get<double>();
    return db_to_linear(j.contains(db) ? j.at(db).get<double>()
                                       : j.at(dbw).get<double>());
}

inline double read_linear_or(const nlohmann::json& j, const std::string& key,
                             double fallback) {
    if (!j.contains(key) && !j.contains(key + "_db") && !j.contains(key + "_dbw"))
        return fallback;
    return read_linear(j, key);
}

inline Vec3 read_vec3(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error("scenario: positions must be 3-element arrays");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j) {
    using detail::read_linear;
    using detail::read_linear_or;
    Scenario s;

    const auto& r = j.at("radar");
    s.radar.transmit_power = read_linear(r, "transmit_power");
    s.radar.tx_gain = read_linear(r, "tx_gain");
    s.radar.rx_gain = read_linear(r, "rx_gain");
    s.radar.wavelength = r.at("wavelength").get<double>();
    s.radar.rcs = read_linear(r, "rcs");
    s.radar.pulse_duration = r.at("pulse_duration").get<double>();
    s.radar.estimator_variance = r.at("estimator_variance").get<double>();
    s.radar.snr_threshold = read_linear(r, "snr_threshold");
    s.radar.system_temperature = r.at("system_temperature").get<double>();
    s.radar.noise_figure = read_linear_or(r, "noise_figure", 1.0);
    s.radar.ris_threshold_reduction =
        read_linear_or(r, "ris_threshold_reduction", 1.0);

    const auto& c = j.at("ris");
    s.ris.num_elements = c.at("num_elements").get<int>();
    s.ris.num_modules = c.at("num_modules").get<int>();
    s.ris.element_amplitude = c.value("element_amplitude", 1.0);
    s.ris.phase_bits = c.value("phase_bits", 0);

    const auto& v = j.at("covert");
    s.covert.user_noise_power = read_linear(v, "user_noise_power");
    s.covert.warden_noise_power = read_linear(v, "warden_noise_power");
    s.covert.warden_samples = v.at("warden_samples").get<int>();
    s.covert.covert_threshold = v.at("covert_threshold").get<double>();
    const std::string nm = v.value("noise_mode", "fixed");
    if (nm == "fixed") s.covert.noise_mode = NoiseMode::Fixed;
    else if (nm == "density") s.covert.noise_mode = NoiseMode::Density;
    else throw std::runtime_error("scenario: unknown noise_mode '" + nm + "'");

    const auto& g = j.at("geometry");
    s.geometry.transmitter_position = detail::read_vec3(g.at("transmitter_position"));
    s.geometry.ris_position = detail::read_vec3(g.at("ris_position"));
    for (const auto& p : g.at("user_positions"))
        s.geometry.user_positions.push_back(detail::read_vec3(p));
    for (const auto& p : g.at("warden_positions"))
        s.geometry.warden_positions.push_back(detail::read_vec3(p));
    if (g.contains("target_positions"))
        for (const auto& p : g.at("target_positions"))
            s.geometry.target_positions.push_back(detail::read_vec3(p));
    s.geometry.path_loss_exponent_direct =
        g.at("path_loss_exponent_direct").get<double>();
    s.geometry.path_loss_exponent_ris = g.at("path_loss_exponent_ris").get<double>();
    s.geometry.reference_gain = read_linear(g, "reference_gain");

    const auto& b = j.at("budgets");
    s.budgets.total_power = read_linear(b, "total_power");
    s.budgets.total_bandwidth = b.at("total_bandwidth").get<double>();
    s.budgets.total_modules = b.at("total_modules").get<int>();
    s.budgets.power_allocation_parameter =
        b.at("power_allocation_parameter").get<double>();
    s.budgets.optimize_bandwidth = b.value("optimize_bandwidth", false);

    const std::string fm = j.value("fading_mode", "rician");
    if (fm == "deterministic-unit") s.fading_mode = FadingMode::DeterministicUnit;
    else if (fm == "rayleigh") s.fading_mode = FadingMode::Rayleigh;
    else if (fm == "rician") s.fading_mode = FadingMode::Rician;
    else throw std::runtime_error("scenario: unknown fading_mode '" + fm + "'");
    s.rician_k_factor = j.value("rician_k_factor", 10.0);

    return s;
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["radar"] = {{"transmit_power", s.radar.transmit_power},
                  {"tx_gain", s.radar.tx_gain},
                  {"rx_gain", s.radar.rx_gain},
                  {"wavelength", s.radar.wavelength},
                  {"rcs", s.radar.rcs},
                  {"pulse_duration", s.radar.pulse_duration},
                  {"estimator_variance", s.radar.estimator_variance},
                  {"snr_threshold", s.radar.snr_threshold},
                  {"system_temperature", s.radar.system_temperature},
                  {"noise_figure", s.radar.noise_figure},
                  {"ris_threshold_reduction", s.radar.ris_threshold_reduction}};
    j["ris"] = {{"num_elements", s.ris.num_elements},
                {"num_modules", s.ris.num_modules},
                {"element_amplitude", s.ris.element_amplitude},
                {"phase_bits", s.ris.phase_bits}};
    j["covert"] = {{"user_noise_power", s.covert.user_noise_power},
                   {"warden_noise_power", s.covert.warden_noise_power},
                   {"warden_samples", s.covert.warden_samples},
                   {"covert_threshold", s.covert.covert_threshold},
                   {"noise_mode",
                    s.covert.noise_mode == NoiseMode::Fixed ? "fixed" : "density"}};
    j["geometry"] = {{"transmitter_position", s.geometry.transmitter_position},
                     {"ris_position", s.geometry.ris_position},
                     {"user_positions", s.geometry.user_positions},
                     {"warden_positions", s.geometry.warden_positions},
                     {"target_positions", s.geometry.target_positions},
                     {"path_loss_exponent_direct", s.geometry.path_loss_exponent_direct},
                     {"path_loss_exponent_ris", s.geometry.path_loss_exponent_ris},
                     {"reference_gain", s.geometry.reference_gain}};
    j["budgets"] = {{"total_power", s.budgets.total_power},
                    {"total_bandwidth", s.budgets.total_bandwidth},
                    {"total_modules", s.budgets.total_modules},
                    {"power_allocation_parameter", s.budgets.power_allocation_parameter},
                    {"optimize_bandwidth", s.budgets.optimize_bandwidth}};
    switch (s.fading_mode) {
        case FadingMode::DeterministicUnit: j["fading_mode"] = "deterministic-unit"; break;
        case FadingMode::Rayleigh: j["fading_mode"] = "rayleigh"; break;
        case FadingMode::Rician: j["fading_mode"] = "rician"; break;
    }
    j["rician_k_factor"] = s.rician_k_factor;
    return j;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    nlohmann::json j;
    in >> j;
    return scenario_from_json(j);
}

} // namespace jrcc
