// SPDX-License-Identifier: Apache-2.0
//
// rischan - stochastic channel simulator for RIS-assisted mmWave MIMO links
// Copyright (C) 2026 The rischan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Scenario files are INI documents, one scenario per file:
//
//   [scene]        frequency_ghz, environment, environment_file, realizations, seed,
//                  pt_dbm (list), noise_dbm, direct_path, blocked_direct_keeps_scatter,
//                  tx_ris_los, ris_rx_los, scattering, shared_clusters,
//                  rx_orientation, near_field, inactive_ris
//   [environment]  kind and overrides of the preset coefficient table
//   [tx] / [rx]    position = x,y,z; layout = ula|upa; count | rows + cols;
//                  spacing (wavelengths); yaw_deg
//   [ris0], [ris1], ...
//                  position; plane = xz|yz; elements | rows + cols; facing;
//                  gain_q; pattern = cos|unity; spacing
//   [campaign]     sweep = pt|n|ntnr|grid; values; algorithm; quant_bits;
//                  pinv_target; threads; grid = xmin,xmax,ymin,ymax; cell; grid_z
//
// Lists are comma separated; `start:step:stop` expands to an inclusive range.
// Link modes are auto|blocked|present. Unknown sections or keys are rejected.

#ifndef RISCHAN_CONFIG_IO_HPP
#define RISCHAN_CONFIG_IO_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rischan/control.hpp"
#include "rischan/harness.hpp"
#include "rischan/model.hpp"

namespace rischan {

struct CampaignSettings {
    SweepAxis axis = SweepAxis::Pt;
    std::vector<double> values;
    PhaseDesign design;
    GridSpec grid;
    unsigned threads = 1;

    friend bool operator==(const CampaignSettings& a, const CampaignSettings& b)
    {
        return a.axis == b.axis && a.values == b.values && a.design.algorithm == b.design.algorithm &&
               a.design.quant_bits == b.design.quant_bits && a.design.target == b.design.target && a.grid == b.grid &&
               a.threads == b.threads;
    }
};

struct Scenario {
    SimConfig sim;
    CampaignSettings campaign;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

using Ptree = boost::property_tree::ptree;

namespace detail {

inline std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& text, const std::string& key)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(trim(text), &used);
        if (used != trim(text).size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, key + ": expected a number, got '" + text + "'");
    }
}

inline long long parse_integer(const std::string& text, const std::string& key)
{
    const double v = parse_double(text, key);
    if (v != std::floor(v))
        throw Error(ErrorCode::ParseError, key + ": expected an integer, got '" + text + "'");
    return static_cast<long long>(v);
}

inline bool parse_bool(const std::string& text, const std::string& key)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on")
        return true;
    if (t == "false" || t == "0" || t == "no" || t == "off")
        return false;
    throw Error(ErrorCode::ParseError, key + ": expected a boolean, got '" + text + "'");
}

inline std::vector<double> parse_list(const std::string& text, const std::string& key)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        const auto c1 = item.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_double(item, key));
            continue;
        }
        const auto c2 = item.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw Error(ErrorCode::ParseError, key + ": ranges are start:step:stop");
        const double start = parse_double(item.substr(0, c1), key);
        const double step = parse_double(item.substr(c1 + 1, c2 - c1 - 1), key);
        const double stop = parse_double(item.substr(c2 + 1), key);
        if (!(step > 0.0))
            throw Error(ErrorCode::ParseError, key + ": range step must be > 0");
        for (int i = 0;; ++i) {
            const double v = start + i * step;
            if (v > stop + 1e-9 * std::abs(step))
                break;
            out.push_back(v);
        }
    }
    return out;
}

inline Point3 parse_point(const std::string& text, const std::string& key)
{
    const auto v = parse_list(text, key);
    if (v.size() != 3)
        throw Error(ErrorCode::ParseError, key + ": expected x,y,z");
    return {v[0], v[1], v[2]};
}

inline LinkMode parse_link_mode(const std::string& t, const std::string& key)
{
    if (t == "auto") return LinkMode::Auto;
    if (t == "blocked" || t == "forced-blocked") return LinkMode::ForcedBlocked;
    if (t == "present" || t == "forced-present") return LinkMode::ForcedPresent;
    throw Error(ErrorCode::ParseError, key + ": expected auto|blocked|present");
}

inline std::string_view to_string(LinkMode m)
{
    return m == LinkMode::Auto ? "auto" : m == LinkMode::ForcedBlocked ? "blocked" : "present";
}

inline std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_list(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + fmt(v[i]);
    return s;
}

inline std::string fmt_point(const Point3& p) { return fmt(p.x) + "," + fmt(p.y) + "," + fmt(p.z); }

constexpr double kDeg = kPi / 180.0;

// Reads the keys of one section, rejecting any it does not know.
class SectionReader {
public:
    SectionReader(const Ptree& section, std::string name)
        : section_(section)
        , name_(std::move(name))
    {
    }

    template <typename F>
    void on(const std::string& key, F&& apply)
    {
        known_.insert(key);
        if (auto v = section_.get_optional<std::string>(Ptree::path_type(key, '\0')))
            apply(trim(*v), name_ + "." + key);
    }

    bool has(const std::string& key) const { return section_.count(key) > 0; }

    void finish() const
    {
        for (const auto& [key, _] : section_)
            if (!known_.count(key))
                throw Error(ErrorCode::ParseError, "unknown key '" + name_ + "." + key + "'");
    }

private:
    const Ptree& section_;
    std::string name_;
    std::set<std::string> known_;
};

inline void read_environment(const Ptree& section, Environment& env)
{
    SectionReader r(section, "environment");
    r.on("kind", [&](const std::string& v, const std::string&) {
        const EnvironmentKind kind = parse_environment_kind(v);
        if (kind != env.kind)
            env = environment_preset(kind);
    });
    auto num = [&](const char* key, double& field, double scale = 1.0) {
        r.on(key, [&](const std::string& v, const std::string& k) { field = parse_double(v, k) * scale; });
    };
    num("cluster_intensity", env.cluster_intensity);
    r.on("scatterers_min", [&](const std::string& v, const std::string& k) { env.scatterers_min = static_cast<int>(parse_integer(v, k)); });
    r.on("scatterers_max", [&](const std::string& v, const std::string& k) { env.scatterers_max = static_cast<int>(parse_integer(v, k)); });
    for (auto [prefix, coeffs] : {std::pair{"los", &env.los}, std::pair{"nlos", &env.nlos}}) {
        const std::string p = prefix;
        num((p + "_intercept_db").c_str(), coeffs->intercept_db);
        num((p + "_exponent").c_str(), coeffs->distance_exponent);
        num((p + "_frequency_coeff").c_str(), coeffs->frequency_coefficient);
        num((p + "_sigma_db").c_str(), coeffs->shadow_sigma_db);
    }
    num("los_near_distance", env.los_model.near_distance);
    num("los_near_decay", env.los_model.near_decay);
    num("los_knee_distance", env.los_model.knee_distance);
    num("los_far_scale", env.los_model.far_scale);
    num("los_far_decay", env.los_model.far_decay);
    num("umi_d1", env.los_model.umi_d1);
    num("umi_d2", env.los_model.umi_d2);
    num("cluster_azimuth_deg", env.placement.azimuth_half_width, kDeg);
    num("cluster_elevation_deg", env.placement.elevation_half_width, kDeg);
    num("angular_spread_deg", env.placement.angular_spread, kDeg);
    r.finish();
}

inline void read_array(const Ptree& section, const std::string& name, ArraySpec& a)
{
    SectionReader r(section, name);
    r.on("position", [&](const std::string& v, const std::string& k) { a.position = parse_point(v, k); });
    r.on("layout", [&](const std::string& v, const std::string& k) {
        if (v == "ula" || v == "ULA") a.layout = ArrayLayout::ULA;
        else if (v == "upa" || v == "UPA") a.layout = ArrayLayout::UPA;
        else throw Error(ErrorCode::ParseError, k + ": expected ula|upa");
    });
    r.on("spacing", [&](const std::string& v, const std::string& k) { a.spacing_wavelengths = parse_double(v, k); });
    r.on("yaw_deg", [&](const std::string& v, const std::string& k) { a.yaw = parse_double(v, k) * kDeg; });
    int count = -1, rows = -1, cols = -1;
    r.on("count", [&](const std::string& v, const std::string& k) { count = static_cast<int>(parse_integer(v, k)); });
    r.on("rows", [&](const std::string& v, const std::string& k) { rows = static_cast<int>(parse_integer(v, k)); });
    r.on("cols", [&](const std::string& v, const std::string& k) { cols = static_cast<int>(parse_integer(v, k)); });
    r.finish();
    if (rows >= 0 || cols >= 0) {
        a.rows = rows >= 0 ? rows : 1;
        a.cols = cols >= 0 ? cols : 1;
        if (count >= 0 && count != a.rows * a.cols)
            throw Error(ErrorCode::DimensionMismatch, name + ": count does not equal rows * cols");
    } else if (count >= 0) {
        a.reshape(count);
    } else {
        a.reshape(a.count()); // layout may have changed
    }
}

inline void read_ris(const Ptree& section, const std::string& name, RisSpec& ris)
{
    SectionReader r(section, name);
    r.on("position", [&](const std::string& v, const std::string& k) { ris.position = parse_point(v, k); });
    r.on("plane", [&](const std::string& v, const std::string& k) {
        if (v == "xz") ris.plane = MountingPlane::XZ;
        else if (v == "yz") ris.plane = MountingPlane::YZ;
        else throw Error(ErrorCode::ParseError, k + ": expected xz|yz");
    });
    r.on("facing", [&](const std::string& v, const std::string& k) {
        if (v == "auto") ris.facing = Facing::Auto;
        else if (v == "positive" || v == "+") ris.facing = Facing::Positive;
        else if (v == "negative" || v == "-") ris.facing = Facing::Negative;
        else throw Error(ErrorCode::ParseError, k + ": expected auto|positive|negative");
    });
    r.on("gain_q", [&](const std::string& v, const std::string& k) { ris.gain_exponent = parse_double(v, k); });
    r.on("pattern", [&](const std::string& v, const std::string& k) {
        if (v == "cos") ris.pattern = ElementPattern::CosinePower;
        else if (v == "unity") ris.pattern = ElementPattern::Unity;
        else throw Error(ErrorCode::ParseError, k + ": expected cos|unity");
    });
    r.on("spacing", [&](const std::string& v, const std::string& k) { ris.spacing_wavelengths = parse_double(v, k); });
    int count = -1, rows = -1, cols = -1;
    r.on("elements", [&](const std::string& v, const std::string& k) { count = static_cast<int>(parse_integer(v, k)); });
    r.on("rows", [&](const std::string& v, const std::string& k) { rows = static_cast<int>(parse_integer(v, k)); });
    r.on("cols", [&](const std::string& v, const std::string& k) { cols = static_cast<int>(parse_integer(v, k)); });
    r.finish();
    if (rows >= 0 && cols >= 0) {
        ris.rows = rows;
        ris.cols = cols;
        ris.elements = count >= 0 ? count : rows * cols;
    } else if (count >= 0) {
        ris.reshape(count);
    }
}

inline Ptree load_ini(const std::filesystem::path& path)
{
    Ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(path.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return tree;
}

} // namespace detail

/// Applies `section.key=value` to an INI tree, creating the section when missing.
inline void apply_override(Ptree& tree, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw Error(ErrorCode::ParseError, "override must look like section.key=value: '" + assignment + "'");
    const std::string section = detail::trim(assignment.substr(0, dot));
    const std::string key = detail::trim(assignment.substr(dot + 1, eq - dot - 1));
    const std::string value = detail::trim(assignment.substr(eq + 1));
    auto it = tree.find(section);
    Ptree& target = it == tree.not_found() ? tree.push_back({section, Ptree()})->second : it->second;
    // A new element count replaces an existing rows x cols shape, and the reverse.
    if (key == "count" || key == "elements") {
        target.erase("rows");
        target.erase("cols");
    } else if (key == "rows" || key == "cols") {
        target.erase("count");
        target.erase("elements");
    }
    target.put(Ptree::path_type(key, '\0'), value);
}

/// Builds a scenario from a parsed INI tree. `base_dir` resolves environment_file.
inline Scenario scenario_from_tree(const Ptree& tree, const std::filesystem::path& base_dir = {})
{
    using namespace detail;
    Scenario sc;
    SimConfig& c = sc.sim;
    c.tx = ArraySpec::make(ArrayLayout::UPA, 1, {});
    c.rx = ArraySpec::make(ArrayLayout::UPA, 1, {});

    std::map<int, const Ptree*> ris_sections;
    for (const auto& [name, section] : tree) {
        if (name == "scene" || name == "environment" || name == "tx" || name == "rx" || name == "campaign")
            continue;
        if (name.rfind("ris", 0) == 0 && name.size() > 3 &&
            name.find_first_not_of("0123456789", 3) == std::string::npos) {
            ris_sections[std::stoi(name.substr(3))] = &section;
            continue;
        }
        if (!section.empty() || !section.data().empty())
            throw Error(ErrorCode::ParseError, "unknown section '" + name + "'");
        throw Error(ErrorCode::ParseError, "key '" + name + "' outside of a section");
    }

    static const Ptree empty;
    auto child = [&](const char* name) -> const Ptree& {
        auto it = tree.find(name);
        return it == tree.not_found() ? empty : it->second;
    };

    {
        SectionReader r(child("scene"), "scene");
        r.on("environment", [&](const std::string& v, const std::string&) { c.environment = environment_preset(parse_environment_kind(v)); });
        r.on("environment_file", [&](const std::string& v, const std::string&) {
            std::filesystem::path p(v);
            if (p.is_relative())
                p = base_dir / p;
            const Ptree env_tree = load_ini(p);
            auto it = env_tree.find("environment");
            if (it == env_tree.not_found())
                throw Error(ErrorCode::ParseError, p.string() + ": no [environment] section");
            read_environment(it->second, c.environment);
        });
        r.on("frequency_ghz", [&](const std::string& v, const std::string& k) { c.frequency_hz = parse_double(v, k) * 1e9; });
        r.on("realizations", [&](const std::string& v, const std::string& k) { c.realizations = static_cast<int>(parse_integer(v, k)); });
        r.on("seed", [&](const std::string& v, const std::string& k) { c.seed = static_cast<std::uint64_t>(parse_integer(v, k)); });
        r.on("pt_dbm", [&](const std::string& v, const std::string& k) { c.pt_dbm = parse_list(v, k); });
        r.on("noise_dbm", [&](const std::string& v, const std::string& k) { c.noise_dbm = parse_double(v, k); });
        r.on("direct_path", [&](const std::string& v, const std::string& k) { c.direct_path = parse_link_mode(v, k); });
        r.on("blocked_direct_keeps_scatter", [&](const std::string& v, const std::string& k) { c.blocked_direct_keeps_scatter = parse_bool(v, k); });
        r.on("tx_ris_los", [&](const std::string& v, const std::string& k) { c.tx_ris_los = parse_link_mode(v, k); });
        r.on("ris_rx_los", [&](const std::string& v, const std::string& k) { c.ris_rx_los = parse_link_mode(v, k); });
        r.on("scattering", [&](const std::string& v, const std::string& k) { c.scattering = parse_bool(v, k); });
        r.on("shared_clusters", [&](const std::string& v, const std::string& k) { c.shared_clusters = parse_bool(v, k); });
        r.on("rx_orientation", [&](const std::string& v, const std::string& k) {
            if (v == "random") c.rx_orientation = RxOrientation::Random;
            else if (v == "fixed") c.rx_orientation = RxOrientation::Fixed;
            else throw Error(ErrorCode::ParseError, k + ": expected random|fixed");
        });
        r.on("near_field", [&](const std::string& v, const std::string& k) {
            if (v == "warn") c.near_field = NearFieldPolicy::Warn;
            else if (v == "error") c.near_field = NearFieldPolicy::Error;
            else throw Error(ErrorCode::ParseError, k + ": expected warn|error");
        });
        r.on("inactive_ris", [&](const std::string& v, const std::string& k) {
            if (v == "absent") c.inactive_ris = InactiveRisPolicy::Absent;
            else if (v == "random-phase") c.inactive_ris = InactiveRisPolicy::RandomPhase;
            else throw Error(ErrorCode::ParseError, k + ": expected absent|random-phase");
        });
        r.finish();
    }

    if (tree.find("environment") != tree.not_found())
        read_environment(child("environment"), c.environment);
    read_array(child("tx"), "tx", c.tx);
    read_array(child("rx"), "rx", c.rx);

    int expected = 0;
    for (const auto& [index, section] : ris_sections) {
        if (index != expected++)
            throw Error(ErrorCode::ParseError, "surface sections must be numbered ris0, ris1, ... without gaps");
        RisSpec ris = RisSpec::make(64, {});
        read_ris(*section, "ris" + std::to_string(index), ris);
        c.ris.push_back(ris);
    }

    {
        CampaignSettings& cs = sc.campaign;
        SectionReader r(child("campaign"), "campaign");
        r.on("sweep", [&](const std::string& v, const std::string&) { cs.axis = parse_sweep_axis(v); });
        r.on("values", [&](const std::string& v, const std::string& k) { cs.values = parse_list(v, k); });
        r.on("algorithm", [&](const std::string& v, const std::string&) { cs.design.algorithm = parse_phase_algorithm(v); });
        r.on("quant_bits", [&](const std::string& v, const std::string& k) { cs.design.quant_bits = static_cast<int>(parse_integer(v, k)); });
        r.on("pinv_target", [&](const std::string& v, const std::string&) { cs.design.target = parse_pinv_target(v); });
        r.on("threads", [&](const std::string& v, const std::string& k) { cs.threads = static_cast<unsigned>(parse_integer(v, k)); });
        r.on("grid", [&](const std::string& v, const std::string& k) {
            const auto g = parse_list(v, k);
            if (g.size() != 4)
                throw Error(ErrorCode::ParseError, k + ": expected xmin,xmax,ymin,ymax");
            cs.grid.x_min = g[0];
            cs.grid.x_max = g[1];
            cs.grid.y_min = g[2];
            cs.grid.y_max = g[3];
        });
        r.on("cell", [&](const std::string& v, const std::string& k) { cs.grid.cell = parse_double(v, k); });
        r.on("grid_z", [&](const std::string& v, const std::string& k) { cs.grid.z = parse_double(v, k); });
        r.finish();
        if (cs.design.quant_bits < 0)
            throw Error(ErrorCode::InvalidValue, "campaign.quant_bits must be >= 0 (0 = continuous)");
    }
    return sc;
}

inline Scenario parse_scenario_text(const std::string& text, const std::vector<std::string>& overrides = {})
{
    Ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    for (const auto& o : overrides)
        apply_override(tree, o);
    return scenario_from_tree(tree);
}

inline Scenario parse_scenario_file(const std::filesystem::path& path, const std::vector<std::string>& overrides = {})
{
    if (!std::filesystem::exists(path))
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    Ptree tree = detail::load_ini(path);
    for (const auto& o : overrides)
        apply_override(tree, o);
    return scenario_from_tree(tree, path.parent_path());
}

/// Every field written explicitly in a fixed order. Parsing the result gives
/// back an equal Scenario.
inline std::string canonical_text(const Scenario& sc, bool include_threads = true)
{
    using detail::fmt;
    using detail::fmt_list;
    using detail::fmt_point;
    const SimConfig& c = sc.sim;
    const Environment& e = c.environment;
    std::ostringstream o;
    o << "[scene]\n"
      << "frequency_ghz = " << fmt(c.frequency_hz / 1e9) << "\n"
      << "environment = " << to_string(e.kind) << "\n"
      << "realizations = " << c.realizations << "\n"
      << "seed = " << c.seed << "\n"
      << "pt_dbm = " << fmt_list(c.pt_dbm) << "\n"
      << "noise_dbm = " << fmt(c.noise_dbm) << "\n"
      << "direct_path = " << detail::to_string(c.direct_path) << "\n"
      << "blocked_direct_keeps_scatter = " << (c.blocked_direct_keeps_scatter ? "true" : "false") << "\n"
      << "tx_ris_los = " << detail::to_string(c.tx_ris_los) << "\n"
      << "ris_rx_los = " << detail::to_string(c.ris_rx_los) << "\n"
      << "scattering = " << (c.scattering ? "true" : "false") << "\n"
      << "shared_clusters = " << (c.shared_clusters ? "true" : "false") << "\n"
      << "rx_orientation = " << (c.rx_orientation == RxOrientation::Random ? "random" : "fixed") << "\n"
      << "near_field = " << (c.near_field == NearFieldPolicy::Warn ? "warn" : "error") << "\n"
      << "inactive_ris = " << (c.inactive_ris == InactiveRisPolicy::Absent ? "absent" : "random-phase") << "\n\n";

    o << "[environment]\n"
      << "kind = " << to_string(e.kind) << "\n"
      << "cluster_intensity = " << fmt(e.cluster_intensity) << "\n"
      << "scatterers_min = " << e.scatterers_min << "\n"
      << "scatterers_max = " << e.scatterers_max << "\n";
    for (auto [prefix, coeffs] : {std::pair{"los", &e.los}, std::pair{"nlos", &e.nlos}}) {
        o << prefix << "_intercept_db = " << fmt(coeffs->intercept_db) << "\n"
          << prefix << "_exponent = " << fmt(coeffs->distance_exponent) << "\n"
          << prefix << "_frequency_coeff = " << fmt(coeffs->frequency_coefficient) << "\n"
          << prefix << "_sigma_db = " << fmt(coeffs->shadow_sigma_db) << "\n";
    }
    o << "los_near_distance = " << fmt(e.los_model.near_distance) << "\n"
      << "los_near_decay = " << fmt(e.los_model.near_decay) << "\n"
      << "los_knee_distance = " << fmt(e.los_model.knee_distance) << "\n"
      << "los_far_scale = " << fmt(e.los_model.far_scale) << "\n"
      << "los_far_decay = " << fmt(e.los_model.far_decay) << "\n"
      << "umi_d1 = " << fmt(e.los_model.umi_d1) << "\n"
      << "umi_d2 = " << fmt(e.los_model.umi_d2) << "\n"
      << "cluster_azimuth_deg = " << fmt(e.placement.azimuth_half_width / detail::kDeg) << "\n"
      << "cluster_elevation_deg = " << fmt(e.placement.elevation_half_width / detail::kDeg) << "\n"
      << "angular_spread_deg = " << fmt(e.placement.angular_spread / detail::kDeg) << "\n\n";

    for (auto [name, a] : {std::pair{"tx", &c.tx}, std::pair{"rx", &c.rx}}) {
        o << "[" << name << "]\n"
          << "position = " << fmt_point(a->position) << "\n"
          << "layout = " << (a->layout == ArrayLayout::ULA ? "ula" : "upa") << "\n"
          << "rows = " << a->rows << "\n"
          << "cols = " << a->cols << "\n"
          << "spacing = " << fmt(a->spacing_wavelengths) << "\n"
          << "yaw_deg = " << fmt(a->yaw / detail::kDeg) << "\n\n";
    }
    for (std::size_t k = 0; k < c.ris.size(); ++k) {
        const RisSpec& r = c.ris[k];
        o << "[ris" << k << "]\n"
          << "position = " << fmt_point(r.position) << "\n"
          << "plane = " << (r.plane == MountingPlane::XZ ? "xz" : "yz") << "\n"
          << "elements = " << r.elements << "\n"
          << "rows = " << r.rows << "\n"
          << "cols = " << r.cols << "\n"
          << "facing = " << (r.facing == Facing::Auto ? "auto" : r.facing == Facing::Positive ? "positive" : "negative") << "\n"
          << "gain_q = " << fmt(r.gain_exponent) << "\n"
          << "pattern = " << (r.pattern == ElementPattern::CosinePower ? "cos" : "unity") << "\n"
          << "spacing = " << fmt(r.spacing_wavelengths) << "\n\n";
    }
    const CampaignSettings& cs = sc.campaign;
    o << "[campaign]\n"
      << "sweep = " << to_string(cs.axis) << "\n";
    if (!cs.values.empty())
        o << "values = " << fmt_list(cs.values) << "\n";
    o << "algorithm = " << to_string(cs.design.algorithm) << "\n"
      << "quant_bits = " << cs.design.quant_bits << "\n"
      << "pinv_target = " << to_string(cs.design.target) << "\n"
      << "grid = " << fmt(cs.grid.x_min) << "," << fmt(cs.grid.x_max) << "," << fmt(cs.grid.y_min) << ","
      << fmt(cs.grid.y_max) << "\n"
      << "cell = " << fmt(cs.grid.cell) << "\n"
      << "grid_z = " << fmt(cs.grid.z) << "\n";
    if (include_threads)
        o << "threads = " << cs.threads << "\n";
    return o.str();
}

/// FNV-1a over the canonical text. The worker count is excluded: it never changes results.
inline std::uint64_t config_hash(const Scenario& sc)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_text(sc, false)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h)
{
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Campaign make_campaign(const Scenario& sc)
{
    Campaign c;
    c.config = validate_config(sc.sim);
    c.axis = sc.campaign.axis;
    c.values = sc.campaign.values;
    c.design = sc.campaign.design;
    c.grid = sc.campaign.grid;
    c.threads = sc.campaign.threads;
    return c;
}

} // namespace rischan

#endif
