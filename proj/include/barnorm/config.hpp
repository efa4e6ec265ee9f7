#pragma once

// Experiment configuration: a nested key/value text document, strict about
// unknown sections and keys so experiment records stay trustworthy diffs.
//
//   [pair]
//   preset = case1          # or family = affine|rotation|raw + parameters
//   [iteration]
//   tol = 1e-4
//   scheme = max-relaxation
//   [trajectory]
//   steps = 10000
//   tie_rule = prefer-one
//   [analysis]
//   word_len = 4
//   n_max = 20
//   [angular]
//   grid = 8192
//   [output]
//   dir = out
//   emit = polygon,trajectory,angular,stats,figures

#include <set>
#include <sstream>
#include <string>

#include "barnorm/barabanov.hpp"
#include "barnorm/io.hpp"
#include "barnorm/presets.hpp"
#include "barnorm/trajectory.hpp"

namespace barnorm {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EmitFlags {
    bool polygon = true;
    bool trajectory = true;
    bool angular = true;
    bool stats = true;
    bool figures = true;
};

struct ExperimentConfig {
    std::string preset;  // empty when the pair is given explicitly
    Family family = Family::Affine;
    std::array<double, 6> family_params{0.576, 0.8, 0.9, 1.1, 1.0, 0.9};
    std::array<double, 4> raw_a0{1.0, 0.0, 0.0, 1.0};
    std::array<double, 4> raw_a1{1.0, 0.0, 0.0, 1.0};
    bool scheme_set = false;  // explicit scheme overrides the preset's choice

    IterationConfig iteration;
    int trajectory_steps = 10000;
    TieRule tie_rule = TieRule::PreferOne;
    double start_angle = 1.0;  // polar angle of x0 on the unit circle
    int analysis_word_len = 4;
    int analysis_n_max = 20;
    int angular_grid = 8192;
    std::string out_dir = "out";
    EmitFlags emit;

    MatrixPair make_pair() const {
        if (!preset.empty()) return find_preset(preset).pair;
        switch (family) {
            case Family::Affine:
                return make_affine_pair(family_params[0], family_params[1], family_params[2],
                                        family_params[3], family_params[4], family_params[5]);
            case Family::Rotation:
                return make_rotation_pair(family_params[0], family_params[1], family_params[2]);
            default:
                return make_raw_pair(Mat2{raw_a0[0], raw_a0[1], raw_a0[2], raw_a0[3]},
                                     Mat2{raw_a1[0], raw_a1[1], raw_a1[2], raw_a1[3]});
        }
    }

    Scheme effective_scheme() const {
        if (!scheme_set && !preset.empty()) return find_preset(preset).scheme;
        return iteration.scheme;
    }

    void validate() const {
        iteration.check();
        if (trajectory_steps < 1) throw ConfigError("trajectory.steps must be >= 1");
        if (analysis_n_max < 1 || analysis_n_max > 63) throw ConfigError("analysis.n_max must be in [1, 63]");
        if (analysis_word_len < 1 || analysis_word_len > 20)
            throw ConfigError("analysis.word_len must be in [1, 20]");
        if (angular_grid < 16) throw ConfigError("angular.grid must be >= 16");
        if (!preset.empty()) find_preset(preset);  // throws on unknown name
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_real(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
    if (pos != v.size()) throw ConfigError("bad numeric value for '" + key + "': " + v);
    return x;
}

inline int parse_int(const std::string& key, const std::string& v) {
    const double x = parse_real(key, v);
    const int i = static_cast<int>(x);
    if (x != i) throw ConfigError("expected integer for '" + key + "': " + v);
    return i;
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    const std::set<std::string> sections = {"pair", "iteration", "trajectory",
                                            "analysis", "angular", "output"};
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (!sections.count(section))
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "pair.preset") cfg.preset = val;
        else if (qual == "pair.family") {
            if (val == "affine") cfg.family = Family::Affine;
            else if (val == "rotation") cfg.family = Family::Rotation;
            else if (val == "raw") cfg.family = Family::Raw;
            else throw ConfigError("pair.family must be affine, rotation or raw");
        }
        else if (qual == "pair.alpha") cfg.family_params[0] = detail::parse_real(qual, val);
        else if (qual == "pair.beta") cfg.family_params[1] = detail::parse_real(qual, val);
        else if (qual == "pair.a") cfg.family_params[2] = detail::parse_real(qual, val);
        else if (qual == "pair.b") cfg.family_params[3] = detail::parse_real(qual, val);
        else if (qual == "pair.c") cfg.family_params[4] = detail::parse_real(qual, val);
        else if (qual == "pair.d") cfg.family_params[5] = detail::parse_real(qual, val);
        else if (qual == "pair.theta0") cfg.family_params[0] = detail::parse_real(qual, val);
        else if (qual == "pair.theta1") cfg.family_params[1] = detail::parse_real(qual, val);
        else if (qual == "pair.lambda") cfg.family_params[2] = detail::parse_real(qual, val);
        else if (qual == "pair.a0") {
            std::istringstream m(val);
            if (!(m >> cfg.raw_a0[0] >> cfg.raw_a0[1] >> cfg.raw_a0[2] >> cfg.raw_a0[3]))
                throw ConfigError("pair.a0 needs 4 entries");
        }
        else if (qual == "pair.a1") {
            std::istringstream m(val);
            if (!(m >> cfg.raw_a1[0] >> cfg.raw_a1[1] >> cfg.raw_a1[2] >> cfg.raw_a1[3]))
                throw ConfigError("pair.a1 needs 4 entries");
        }
        else if (qual == "iteration.tol") cfg.iteration.tol = detail::parse_real(qual, val);
        else if (qual == "iteration.max_iter") cfg.iteration.max_iter = detail::parse_int(qual, val);
        else if (qual == "iteration.initial_vertices")
            cfg.iteration.initial_vertices = detail::parse_int(qual, val);
        else if (qual == "iteration.prune_eps") cfg.iteration.prune_eps = detail::parse_real(qual, val);
        else if (qual == "iteration.warm_start_depth")
            cfg.iteration.warm_start_depth = detail::parse_int(qual, val);
        else if (qual == "iteration.scheme") {
            if (val == "power") cfg.iteration.scheme = Scheme::PowerNormalize;
            else if (val == "max-relaxation") cfg.iteration.scheme = Scheme::MaxRelaxation;
            else throw ConfigError("iteration.scheme must be power or max-relaxation");
            cfg.scheme_set = true;
        }
        else if (qual == "trajectory.steps") cfg.trajectory_steps = detail::parse_int(qual, val);
        else if (qual == "trajectory.start_angle") cfg.start_angle = detail::parse_real(qual, val);
        else if (qual == "trajectory.tie_rule") {
            if (val == "prefer-one") cfg.tie_rule = TieRule::PreferOne;
            else if (val == "prefer-zero") cfg.tie_rule = TieRule::PreferZero;
            else throw ConfigError("trajectory.tie_rule must be prefer-one or prefer-zero");
        }
        else if (qual == "analysis.word_len") cfg.analysis_word_len = detail::parse_int(qual, val);
        else if (qual == "analysis.n_max") cfg.analysis_n_max = detail::parse_int(qual, val);
        else if (qual == "angular.grid") cfg.angular_grid = detail::parse_int(qual, val);
        else if (qual == "output.dir") cfg.out_dir = val;
        else if (qual == "output.emit") {
            cfg.emit = EmitFlags{false, false, false, false, false};
            std::istringstream fl(val);
            std::string item;
            while (std::getline(fl, item, ',')) {
                item = detail::trim(item);
                if (item == "polygon") cfg.emit.polygon = true;
                else if (item == "trajectory") cfg.emit.trajectory = true;
                else if (item == "angular") cfg.emit.angular = true;
                else if (item == "stats") cfg.emit.stats = true;
                else if (item == "figures") cfg.emit.figures = true;
                else throw ConfigError("unknown emit flag '" + item + "'");
            }
        }
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + qual + "'");
    }
    cfg.validate();
    return cfg;
}

// Resolved-config dump, written next to experiment outputs so a run can be
// reproduced from its artifacts alone.
inline std::string dump_config(const ExperimentConfig& c) {
    std::ostringstream o;
    o << "[pair]\n";
    if (!c.preset.empty()) {
        o << "preset = " << c.preset << "\n";
    } else if (c.family == Family::Affine) {
        o << "family = affine\n";
        const char* names[] = {"alpha", "beta", "a", "b", "c", "d"};
        for (int i = 0; i < 6; ++i) o << names[i] << " = " << fmt_double(c.family_params[i]) << "\n";
    } else if (c.family == Family::Rotation) {
        o << "family = rotation\n";
        o << "theta0 = " << fmt_double(c.family_params[0]) << "\n";
        o << "theta1 = " << fmt_double(c.family_params[1]) << "\n";
        o << "lambda = " << fmt_double(c.family_params[2]) << "\n";
    } else {
        o << "family = raw\n";
        o << "a0 =";
        for (double v : c.raw_a0) o << " " << fmt_double(v);
        o << "\na1 =";
        for (double v : c.raw_a1) o << " " << fmt_double(v);
        o << "\n";
    }
    o << "\n[iteration]\n";
    o << "tol = " << fmt_double(c.iteration.tol) << "\n";
    o << "max_iter = " << c.iteration.max_iter << "\n";
    o << "initial_vertices = " << c.iteration.initial_vertices << "\n";
    o << "prune_eps = " << fmt_double(c.iteration.prune_eps) << "\n";
    o << "warm_start_depth = " << c.iteration.warm_start_depth << "\n";
    o << "scheme = " << (c.effective_scheme() == Scheme::PowerNormalize ? "power" : "max-relaxation")
      << "\n";
    o << "\n[trajectory]\n";
    o << "steps = " << c.trajectory_steps << "\n";
    o << "start_angle = " << fmt_double(c.start_angle) << "\n";
    o << "tie_rule = " << (c.tie_rule == TieRule::PreferOne ? "prefer-one" : "prefer-zero") << "\n";
    o << "\n[analysis]\n";
    o << "word_len = " << c.analysis_word_len << "\n";
    o << "n_max = " << c.analysis_n_max << "\n";
    o << "\n[angular]\n";
    o << "grid = " << c.angular_grid << "\n";
    o << "\n[output]\n";
    o << "dir = " << c.out_dir << "\n";
    o << "emit =";
    bool first = true;
    auto flag = [&](bool on, const char* name) {
        if (!on) return;
        o << (first ? " " : ",") << name;
        first = false;
    };
    flag(c.emit.polygon, "polygon");
    flag(c.emit.trajectory, "trajectory");
    flag(c.emit.angular, "angular");
    flag(c.emit.stats, "stats");
    flag(c.emit.figures, "figures");
    o << "\n";
    return o.str();
}

}  // namespace barnorm
