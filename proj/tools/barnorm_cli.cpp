// Command-line front end: norm / trajectory / angular / analyze / generate /
// compare / bruteforce. All computation is deterministic; identical inputs
// produce byte-identical data files.
//
// Exit codes: 0 success, 2 usage or config error, 3 norm iteration did not
// converge, 4 degenerate norm ball (reducible pair).

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "barnorm/barnorm.hpp"

namespace fs = std::filesystem;
using namespace barnorm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitDegenerate = 4;

struct CommonOpts {
    std::string preset;
    std::string config_file;
    std::string out_dir;
    std::string polygon_file;
    double tol = -1.0;
    int steps = -1;
    int grid = -1;
    int max_iter = -1;
    std::string scheme;
    std::string tie_rule;
    bool no_figures = false;
};

void add_pair_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--preset", o.preset, "named case: eqM1-mycase, case1, case2, case3");
    cmd->add_option("--config", o.config_file, "experiment config file");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--tol", o.tol, "target gap rho_upper - rho_lower");
    cmd->add_option("--max-iter", o.max_iter, "iteration cap for the norm construction");
    cmd->add_option("--scheme", o.scheme, "power | max-relaxation")
        ->check(CLI::IsMember({"power", "max-relaxation"}));
    cmd->add_flag("--no-figures", o.no_figures, "skip SVG emission");
}

ExperimentConfig resolve_config(const CommonOpts& o) {
    ExperimentConfig cfg;
    if (!o.config_file.empty()) cfg = parse_config(read_file(o.config_file));
    if (!o.preset.empty()) cfg.preset = o.preset;
    if (o.tol > 0.0) cfg.iteration.tol = o.tol;
    if (o.max_iter > 0) cfg.iteration.max_iter = o.max_iter;
    if (o.steps > 0) cfg.trajectory_steps = o.steps;
    if (o.grid > 0) cfg.angular_grid = o.grid;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (!o.scheme.empty()) {
        cfg.iteration.scheme =
            (o.scheme == "power") ? Scheme::PowerNormalize : Scheme::MaxRelaxation;
        cfg.scheme_set = true;
    }
    if (!o.tie_rule.empty()) {
        if (o.tie_rule == "prefer-one") cfg.tie_rule = TieRule::PreferOne;
        else if (o.tie_rule == "prefer-zero") cfg.tie_rule = TieRule::PreferZero;
        else throw ConfigError("--tie-rule must be prefer-one or prefer-zero");
    }
    if (o.no_figures) cfg.emit.figures = false;
    if (cfg.preset.empty() && o.config_file.empty())
        throw ConfigError("need --preset or --config");
    cfg.validate();
    return cfg;
}

BarabanovResult compute_norm(const ExperimentConfig& cfg, const MatrixPair& pair) {
    IterationConfig it = cfg.iteration;
    it.scheme = cfg.effective_scheme();
    return compute_barabanov(pair, it);
}

// Rebuild a result around a previously persisted polygon; the bounds come
// from the loaded ball itself, so downstream consumers see the same
// certified interval the ball supports.
BarabanovResult norm_from_polygon(const MatrixPair& pair, const fs::path& file) {
    std::istringstream in(read_file(file));
    BarabanovResult res;
    res.polygon = SymmetricPolygon::deserialize(in);
    const RatioBounds rb = ratio_bounds(pair, res.polygon);
    res.rho_lower = rb.lower;
    res.rho_upper = rb.upper;
    res.iterations = 0;
    res.converged = true;
    res.residual = (rb.upper - rb.lower) / res.rho_hat();
    return res;
}

std::string bounds_record(const BarabanovResult& r, Scheme scheme) {
    std::ostringstream o;
    o << "rho_lower = " << fmt_double(r.rho_lower) << "\n";
    o << "rho_upper = " << fmt_double(r.rho_upper) << "\n";
    o << "rho_hat = " << fmt_double(r.rho_hat()) << "\n";
    o << "gap = " << fmt_double(r.rho_upper - r.rho_lower) << "\n";
    o << "iterations = " << r.iterations << "\n";
    o << "residual = " << fmt_double(r.residual) << "\n";
    o << "converged = " << (r.converged ? "true" : "false") << "\n";
    o << "scheme = " << (scheme == Scheme::PowerNormalize ? "power" : "max-relaxation") << "\n";
    o << "vertices = " << r.polygon.vertex_count() << "\n";
    return o.str();
}

void write_iteration_log(const BarabanovResult& r, const fs::path& path) {
    CsvWriter csv("iteration,rho_lower,rho_upper,vertices");
    for (const auto& t : r.trace) csv.row(t.iteration, t.lower, t.upper, t.vertex_count);
    atomic_write_file(path, csv.str());
}

void write_stats_report(const SequenceStats& st, const fs::path& dir) {
    std::ostringstream o;
    o << "length = " << st.length << "\n";
    o << "freq0 = " << fmt_double(st.freq0) << "\n";
    o << "freq1 = " << fmt_double(st.freq1) << "\n";
    o << "verdict = " << to_string(st.verdict) << "\n";
    o << "missing_digram = " << (st.missing_digram ? *st.missing_digram : "none") << "\n";
    o << "note = finite-window verdict; sturmian-candidate is a non-refutation\n";
    for (const auto& [w, f] : st.word_freqs) o << "freq_" << w << " = " << fmt_double(f) << "\n";
    atomic_write_file(dir / "stats.txt", o.str());

    CsvWriter csv("n,complexity,balance_defect");
    for (std::size_t i = 0; i < st.complexity.size(); ++i)
        csv.row(static_cast<int>(i + 1), st.complexity[i], st.balance_defect[i]);
    atomic_write_file(dir / "complexity.csv", csv.str());
}

int cmd_norm(const CommonOpts& o) {
    const ExperimentConfig cfg = resolve_config(o);
    const MatrixPair pair = cfg.make_pair();
    const BarabanovResult res = compute_norm(cfg, pair);
    const fs::path dir = cfg.out_dir;

    if (cfg.emit.polygon) {
        std::ostringstream poly;
        res.polygon.serialize(poly);
        atomic_write_file(dir / "polygon.txt", poly.str());
    }
    atomic_write_file(dir / "bounds.txt", bounds_record(res, cfg.effective_scheme()));
    write_iteration_log(res, dir / "iterations.csv");
    atomic_write_file(dir / "resolved.cfg", dump_config(cfg));
    if (cfg.emit.figures && res.converged) {
        const AngularProfile prof = angular_function(pair, res, std::min(cfg.angular_grid, 4096));
        atomic_write_file(dir / "norm.svg", figure_norm(pair, res, prof.switching_angles));
    }
    std::printf("rho in [%s, %s], gap %.3g, %d iterations, %s\n", fmt_double(res.rho_lower).c_str(),
                fmt_double(res.rho_upper).c_str(), res.rho_upper - res.rho_lower, res.iterations,
                res.converged ? "converged" : "NOT converged");
    return res.converged ? kExitOk : kExitNonConvergence;
}

int cmd_trajectory(const CommonOpts& o) {
    const ExperimentConfig cfg = resolve_config(o);
    const MatrixPair pair = cfg.make_pair();
    const BarabanovResult res = o.polygon_file.empty()
                                    ? compute_norm(cfg, pair)
                                    : norm_from_polygon(pair, o.polygon_file);
    if (!res.converged) return kExitNonConvergence;
    const fs::path dir = cfg.out_dir;

    const Vec2 x0 = from_polar(1.0, cfg.start_angle);
    const Trajectory traj = run(pair, res, x0, cfg.trajectory_steps, cfg.tie_rule);

    CsvWriter csv("n,phi,log_norm,sigma");
    for (std::size_t n = 0; n < traj.angles.size(); ++n) {
        if (n < traj.indices.size())
            csv.row(static_cast<int>(n), traj.angles[n], traj.log_norms[n],
                    static_cast<int>(traj.indices[n]));
        else
            csv.row(static_cast<int>(n), traj.angles[n], traj.log_norms[n], "");
    }
    atomic_write_file(dir / "trajectory.csv", csv.str());
    atomic_write_file(dir / "sequence.txt", traj.indices.to_string() + "\n");
    atomic_write_file(dir / "resolved.cfg", dump_config(cfg));
    if (cfg.emit.stats) write_stats_report(analyze(traj.indices, cfg.analysis_n_max,
                                                   cfg.analysis_word_len), dir);
    if (cfg.emit.figures) {
        const AngularProfile prof = angular_function(pair, res, std::min(cfg.angular_grid, 4096));
        atomic_write_file(dir / "trajectory.svg",
                          figure_trajectory(res, traj, prof.switching_angles));
    }
    std::printf("%d steps, freq0 approx %.4f, sequence written\n", cfg.trajectory_steps,
                1.0 - double(std::count(traj.indices.bits.begin(), traj.indices.bits.end(), 1)) /
                          traj.indices.size());
    return kExitOk;
}

int cmd_angular(const CommonOpts& o) {
    const ExperimentConfig cfg = resolve_config(o);
    const MatrixPair pair = cfg.make_pair();
    const BarabanovResult res = o.polygon_file.empty()
                                    ? compute_norm(cfg, pair)
                                    : norm_from_polygon(pair, o.polygon_file);
    if (!res.converged) return kExitNonConvergence;
    const fs::path dir = cfg.out_dir;
    const AngularProfile prof = angular_function(pair, res, cfg.angular_grid);

    CsvWriter csv("phi,sigma,phi_next");
    for (std::size_t j = 0; j < prof.grid.size(); ++j)
        csv.row(prof.grid[j], prof.branch[j], prof.phi_next[j]);
    atomic_write_file(dir / "angular.csv", csv.str());

    std::ostringstream sum;
    sum << "grid = " << prof.grid.size() << "\n";
    sum << "switching_angles =";
    for (double w : prof.switching_angles) sum << " " << fmt_double(w);
    sum << "\ndiscontinuities =";
    for (double w : prof.discontinuities) sum << " " << fmt_double(w);
    sum << "\norientation_preserving = " << (prof.orientation_preserving ? "true" : "false") << "\n";
    sum << "rotation_number = "
        << (prof.rotation_number ? fmt_double(*prof.rotation_number) : "undefined") << "\n";
    atomic_write_file(dir / "angular.txt", sum.str());
    atomic_write_file(dir / "resolved.cfg", dump_config(cfg));
    if (cfg.emit.figures) {
        atomic_write_file(dir / "angular.svg", figure_angular(prof));
        atomic_write_file(dir / "norm.svg", figure_norm(pair, res, prof.switching_angles));
    }
    std::printf("switching angles: %d, discontinuities: %zu, orientation %s, rotation number %s\n",
                switching_lines(prof), prof.discontinuities.size(),
                prof.orientation_preserving ? "preserved" : "not preserved",
                prof.rotation_number ? fmt_double(*prof.rotation_number).c_str() : "undefined");
    return kExitOk;
}

int cmd_analyze(const std::string& seq_file, int n_max, int word_len, const std::string& out) {
    const SymbolSequence seq = SymbolSequence::from_string(read_file(seq_file));
    const SequenceStats st = analyze(seq, n_max, word_len);
    if (!out.empty()) write_stats_report(st, out);
    std::printf("length %zu, freq0 %.6f, freq1 %.6f, verdict %s, missing digram %s\n", st.length,
                st.freq0, st.freq1, to_string(st.verdict),
                st.missing_digram ? st.missing_digram->c_str() : "none");
    std::printf("p(n): ");
    for (std::size_t i = 0; i < st.complexity.size(); ++i) std::printf("%zu ", st.complexity[i]);
    std::printf("\n");
    return kExitOk;
}

int cmd_generate(const std::string& kind, double theta, double eta, double phi0, double theta0,
                 double theta1, double theta2, int steps, const std::string& out) {
    SymbolSequence seq;
    if (kind == "sturmian") seq = gen_sturmian(theta, eta, steps);
    else if (kind == "rotation") seq = gen_rotation_coding(theta, phi0, steps);
    else if (kind == "double-rotation") seq = gen_double_rotation(theta1, theta2, theta, phi0, steps);
    else if (kind == "mismatched") seq = gen_mismatched_coding(theta, theta0, phi0, steps);
    else throw ConfigError("unknown generator kind '" + kind + "'");
    if (out.empty())
        std::printf("%s\n", seq.to_string().c_str());
    else
        atomic_write_file(out, seq.to_string() + "\n");
    return kExitOk;
}

int cmd_compare(const std::string& file_a, const std::string& file_b, int n_max, int word_len,
                const std::string& out) {
    SymbolSequence a = SymbolSequence::from_string(read_file(file_a));
    SymbolSequence b = SymbolSequence::from_string(read_file(file_b));
    const std::size_t len = std::min(a.size(), b.size());
    a.bits.resize(len);  // compare over the common window
    b.bits.resize(len);
    const CompareReport rep = compare(a, b, n_max, word_len);

    std::ostringstream o;
    o << "window = " << len << "\n";
    o << "left  freq0 = " << fmt_double(rep.left.freq0)
      << "  verdict = " << to_string(rep.left.verdict) << "\n";
    o << "right freq0 = " << fmt_double(rep.right.freq0)
      << "  verdict = " << to_string(rep.right.verdict) << "\n";
    o << "max_freq_gap = " << fmt_double(rep.max_freq_gap) << "\n";
    for (const auto& [w, gap] : rep.word_gaps)
        o << "gap_" << w << " = " << fmt_double(gap) << "\n";
    auto dump_runs = [&o](const char* label, const std::map<std::size_t, std::size_t>& h) {
        o << label << " =";
        for (const auto& [len_, cnt] : h) o << " " << len_ << ":" << cnt;
        o << "\n";
    };
    dump_runs("runs0_left", rep.runs0_left);
    dump_runs("runs1_left", rep.runs1_left);
    dump_runs("runs0_right", rep.runs0_right);
    dump_runs("runs1_right", rep.runs1_right);
    o << "complexity_left =";
    for (auto p : rep.left.complexity) o << " " << p;
    o << "\ncomplexity_right =";
    for (auto p : rep.right.complexity) o << " " << p;
    o << "\n";
    const std::string text = o.str();
    if (!out.empty()) atomic_write_file(out, text);
    std::fputs(text.c_str(), stdout);
    return kExitOk;
}

int cmd_bruteforce(const CommonOpts& o, int n) {
    const ExperimentConfig cfg = resolve_config(o);
    const MatrixPair pair = cfg.make_pair();
    const BruteForceBounds bf = brute_force_bounds(pair, n);
    std::printf("n = %d\nrho_bar_n = %s\nrho_lower_env = %s\nrho_n = %s\n", n,
                fmt_double(bf.rho_bar_n).c_str(), fmt_double(bf.rho_lower_env).c_str(),
                fmt_double(bf.rho_n).c_str());
    if (!o.out_dir.empty()) {
        CsvWriter csv("n,rho_bar_n,rho_lower_env,rho_n");
        csv.row(n, bf.rho_bar_n, bf.rho_lower_env, bf.rho_n);
        atomic_write_file(fs::path(o.out_dir) / "bruteforce.csv", csv.str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Barabanov norms, joint spectral radius bounds, extremal trajectories,\n"
                 "and Sturmian analysis of their index sequences for pairs of 2x2 matrices."};
    app.require_subcommand(1);
    bool seedless = false;
    app.add_flag("--seedless", seedless,
                 "assert deterministic operation (no RNG is used anywhere; always on)");

    CommonOpts norm_o, traj_o, ang_o, bf_o;

    auto* norm = app.add_subcommand("norm", "construct the norm and certify rho bounds");
    add_pair_options(norm, norm_o);

    auto* traj = app.add_subcommand("trajectory", "generate an extremal trajectory");
    add_pair_options(traj, traj_o);
    traj->add_option("--steps", traj_o.steps, "trajectory length");
    traj->add_option("--tie-rule", traj_o.tie_rule, "prefer-one | prefer-zero")
        ->check(CLI::IsMember({"prefer-one", "prefer-zero"}));
    traj->add_option("--polygon", traj_o.polygon_file, "reuse a persisted norm ball");

    auto* ang = app.add_subcommand("angular", "extract the angular function");
    add_pair_options(ang, ang_o);
    ang->add_option("--grid", ang_o.grid, "sampling grid size over [0, pi)");
    ang->add_option("--polygon", ang_o.polygon_file, "reuse a persisted norm ball");

    std::string an_file, an_out;
    int an_nmax = 20, an_w = 4;
    auto* an = app.add_subcommand("analyze", "frequency/complexity statistics of a 0/1 sequence");
    an->add_option("sequence", an_file, "sequence file (0/1 characters)")->required();
    an->add_option("--n-max", an_nmax, "complexity horizon");
    an->add_option("--word-len", an_w, "word statistics up to this length");
    an->add_option("--out", an_out, "directory for stats.txt and complexity.csv");

    std::string g_kind, g_out;
    double g_theta = 0.5, g_eta = 0.0, g_phi0 = 0.0, g_theta0 = 0.5, g_theta1 = 0.0, g_theta2 = 0.0;
    int g_steps = 100;
    auto* gen = app.add_subcommand("generate", "reference circle-map codings");
    gen->add_option("--kind", g_kind, "sturmian | rotation | double-rotation | mismatched")
        ->required()
        ->check(CLI::IsMember({"sturmian", "rotation", "double-rotation", "mismatched"}));
    gen->add_option("--theta", g_theta, "rotation angle in (0,1)");
    gen->add_option("--eta", g_eta, "phase for the sturmian floor formula");
    gen->add_option("--phi0", g_phi0, "starting point on the circle");
    gen->add_option("--theta0", g_theta0, "coding interval length (mismatched)");
    gen->add_option("--theta1", g_theta1, "first arc rotation (double-rotation)");
    gen->add_option("--theta2", g_theta2, "second arc rotation (double-rotation)");
    gen->add_option("--steps", g_steps, "sequence length");
    gen->add_option("--out", g_out, "output file (stdout if omitted)");

    std::string c_a, c_b, c_out;
    int c_nmax = 20, c_w = 4;
    auto* cmp = app.add_subcommand("compare", "side-by-side statistics of two sequences");
    cmp->add_option("left", c_a)->required();
    cmp->add_option("right", c_b)->required();
    cmp->add_option("--n-max", c_nmax);
    cmp->add_option("--word-len", c_w);
    cmp->add_option("--out", c_out, "report file");

    int bf_n = 12;
    auto* bf = app.add_subcommand("bruteforce", "exhaustive word-product bounds");
    add_pair_options(bf, bf_o);
    bf->add_option("-n,--length", bf_n, "word length (<= 24)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (norm->parsed()) return cmd_norm(norm_o);
        if (traj->parsed()) return cmd_trajectory(traj_o);
        if (ang->parsed()) return cmd_angular(ang_o);
        if (an->parsed()) return cmd_analyze(an_file, an_nmax, an_w, an_out);
        if (gen->parsed())
            return cmd_generate(g_kind, g_theta, g_eta, g_phi0, g_theta0, g_theta1, g_theta2,
                                g_steps, g_out);
        if (cmp->parsed()) return cmd_compare(c_a, c_b, c_nmax, c_w, c_out);
        if (bf->parsed()) return cmd_bruteforce(bf_o, bf_n);
    } catch (const DegenerateBallError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDegenerate;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
