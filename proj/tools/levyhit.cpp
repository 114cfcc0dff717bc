// levyhit: tables, simulations and validation suites from the command line.
//
// Exit codes: 0 success, 2 partial (some grid points or checks failed), 1 configuration
// failure (bad spec, empty grid, unwritable output), 64 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levyhit/error.hpp"
#include "levyhit/hitting.hpp"
#include "levyhit/io.hpp"
#include "levyhit/kernels.hpp"
#include "levyhit/oracle.hpp"
#include "levyhit/parallel.hpp"
#include "levyhit/renewal.hpp"
#include "levyhit/validation.hpp"

namespace fs = std::filesystem;
using namespace levyhit;

namespace {

constexpr int kExitOk = 0, kExitConfig = 1, kExitPartial = 2, kExitUsage = 64;

struct ConfigFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string spec_path;
    std::string out;
    std::string svg;
    std::uint64_t seed = 1;
    long paths = 0;
    double step = 0.0;
    int threads = 0;
};

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigFailure("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> grid_or_fail(const std::string& name, const std::string& text) {
    std::vector<double> g;
    try {
        g = parse_grid(text);
    } catch (const ArgumentError& e) {
        throw ConfigFailure("--" + name + ": " + e.what());
    }
    if (g.empty()) throw ConfigFailure("--" + name + ": empty grid");
    return g;
}

McConfig mc_from(const Common& c) {
    McConfig mc;
    mc.seed = c.seed;
    if (c.paths > 0) mc.n_paths = c.paths;
    if (c.step > 0.0) mc.h = c.step;
    mc.threads = c.threads;
    return mc;
}

nlohmann::json mc_json(const McConfig& mc) {
    return {{"n_paths", mc.n_paths}, {"h", mc.h}, {"eps", mc.eps}, {"seed", mc.seed}, {"scheme", to_string(mc.scheme)}};
}

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
    return s;
}

/// One table: cartesian grid over named axes, one evaluation per point.
struct TableJob {
    std::vector<std::string> axis_names;
    std::vector<std::vector<double>> axes;
    std::vector<std::string> value_columns;
    std::function<std::vector<std::string>(const std::vector<double>&)> eval;
    std::string title;
    bool log_x = true;
};

struct TableOutput {
    CsvTable csv;
    int errors = 0;
    SvgPlot plot;
};

TableOutput run_job(const TableJob& job) {
    std::size_t n = 1;
    for (const auto& a : job.axes) n *= a.size();
    std::vector<std::vector<double>> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rem = i;
        std::vector<double> k(job.axes.size());
        for (std::size_t d = job.axes.size(); d-- > 0;) {
            k[d] = job.axes[d][rem % job.axes[d].size()];
            rem /= job.axes[d].size();
        }
        keys[i] = std::move(k);
    }
    std::vector<std::vector<std::string>> vals(n);
    std::vector<std::string> errs(n);
    parallel_for(n, [&](std::size_t i) {
        try {
            vals[i] = job.eval(keys[i]);
        } catch (const std::exception& e) {
            errs[i] = e.what();
            vals[i].assign(job.value_columns.size(), "nan");
        }
    });
    TableOutput out;
    out.csv.columns = job.axis_names;
    out.csv.columns.insert(out.csv.columns.end(), job.value_columns.begin(), job.value_columns.end());
    out.csv.columns.push_back("error");
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> row;
        for (double k : keys[i]) row.push_back(fmt(k));
        row.insert(row.end(), vals[i].begin(), vals[i].end());
        row.push_back(errs[i]);
        if (!errs[i].empty()) ++out.errors;
        out.csv.add_row(std::move(row));
    }

    // plot: first axis horizontal, one series per numeric column and combination of the other axes
    auto& p = out.plot;
    p.title = job.title;
    p.x_label = job.axis_names[0];
    p.x = job.axes[0];
    p.log_x = job.log_x && std::all_of(p.x.begin(), p.x.end(), [](double v) { return v > 0.0; });
    const std::size_t n0 = job.axes[0].size(), groups = n / n0;
    auto as_number = [](const std::string& s, double& v) {
        if (s == "nan") return v = NAN, true;
        char* end = nullptr;
        v = std::strtod(s.c_str(), &end);
        return end && *end == '\0' && !s.empty();
    };
    for (std::size_t col = 0; col < job.value_columns.size(); ++col) {
        bool numeric = true;
        for (std::size_t i = 0; i < n && numeric; ++i) {
            double v;
            numeric = as_number(vals[i][col], v);
        }
        if (!numeric) continue;
        for (std::size_t g = 0; g < groups; ++g) {
            SvgSeries s;
            s.name = job.value_columns[col];
            for (std::size_t d = 1; d < job.axes.size(); ++d) {
                // keys are row-major with axis 0 slowest: group g, point j sits at j * groups + g
                s.name += " " + job.axis_names[d] + "=" + fmt(keys[g][d]).substr(0, 8);
            }
            for (std::size_t j = 0; j < n0; ++j) {
                double v;
                as_number(vals[j * groups + g][col], v);
                s.y.push_back(v);
            }
            p.series.push_back(std::move(s));
        }
    }
    bool all_pos = true;
    for (const auto& s : p.series)
        for (double v : s.y)
            if (std::isfinite(v) && v <= 0.0) all_pos = false;
    p.log_y = all_pos;
    return out;
}

struct Emitted {
    std::vector<std::string> outputs;
    std::string content;  // concatenated output contents, hashed into the content version
};

void emit(const std::string& path, const std::string& content, Emitted& em) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    try {
        const auto parent = fs::path(path).parent_path();
        if (!parent.empty()) fs::create_directories(parent);
        write_file_atomic(path, content);
    } catch (const std::exception& e) {
        throw ConfigFailure(e.what());
    }
    em.outputs.push_back(path);
    em.content += content;
}

void write_manifest(const std::string& path, const std::string& cmd, const std::string& config_text,
                    const std::string& spec_hash, std::uint64_t seed, Emitted& em, nlohmann::json extra) {
    if (em.outputs.empty()) return;  // stdout only
    RunManifest m;
    m.command_line = cmd;
    m.config_hash = hex64(fnv1a(config_text));
    m.spec_hash = spec_hash;
    m.seed = seed;
    m.timestamp = utc_timestamp();
    m.content_version = hex64(fnv1a(em.content));
    m.outputs = em.outputs;
    m.extra = std::move(extra);
    try {
        write_file_atomic(path, m.to_json().dump(2) + "\n");
    } catch (const std::exception& e) {
        throw ConfigFailure(e.what());
    }
}

std::string manifest_path_for(const std::string& out) { return out + ".manifest.json"; }

std::string constants_cell(const EstimateBand& b) {
    std::string s;
    for (const auto& c : b.constants_used)
        s += (s.empty() ? "" : ";") + c.name + "=" + fmt(c.value) + (c.provenance == Provenance::empirical ? "(empirical)" : "");
    return s;
}

std::string alternates_cell(const EstimateBand& b) {
    std::string s;
    for (const auto& [k, v] : b.alternates) s += (s.empty() ? "" : ";") + k + "=" + fmt(v);
    return s;
}

std::string notes_cell(const EstimateBand& b) {
    std::string s;
    for (const auto& n : b.notes) s += (s.empty() ? "" : "; ") + n;
    return s;
}

const std::vector<std::string> kBandColumns = {"regime", "lower", "central", "upper", "constants", "alternates",
                                               "clamped", "notes"};

std::vector<std::string> band_cells(const EstimateBand& b) {
    return {to_string(b.regime), fmt(b.lower), fmt(b.central), fmt(b.upper), constants_cell(b), alternates_cell(b),
            b.clamped ? "true" : "false", notes_cell(b)};
}

// ---------------------------------------------------------------------------
// table subcommands

struct TableArgs {
    Common common;
    std::string x, t, xi, lambda, y;
    double R = 0.0, center = 0.0, delta = 0.0, a = 0.0, killed = 0.0;
    std::string mode = "general";
    bool oracle = false, calibrate = false, mc = false;
};

int run_table(const std::string& sub, const TableArgs& args, const std::string& cmd) {
    const auto& c = args.common;
    const std::string config_text = read_text(c.spec_path);
    SymbolSpec spec = [&] {
        try {
            return parse_spec(config_text, fs::path(c.spec_path).parent_path());
        } catch (const std::exception& e) {
            throw ConfigFailure(std::string("spec: ") + e.what());
        }
    }();
    const McConfig mc = mc_from(c);
    nlohmann::json extra = {{"subcommand", sub}, {"spec", spec.name()}};
    TableJob job;
    job.title = sub + ": " + spec.name();
    Emitted em;

    if (sub == "psi") {
        job.axis_names = {"xi"};
        job.axes = {grid_or_fail("xi", args.xi)};
        job.value_columns = {"psi", "psi_star", "psi_inverse"};
        job.eval = [&](const std::vector<double>& k) {
            return std::vector<std::string>{fmt(spec.psi(k[0])), fmt(spec.psi_star(k[0])), fmt(spec.psi_inverse(k[0]))};
        };
    } else if (sub == "kernel") {
        job.axis_names = {"x"};
        job.axes = {grid_or_fail("x", args.x)};
        if (!args.lambda.empty()) {
            job.axis_names.push_back("lambda");
            job.axes.push_back(grid_or_fail("lambda", args.lambda));
            job.value_columns = {"K_lambda", "abs_error"};
            job.eval = [&](const std::vector<double>& k) {
                auto v = kernel_K_lambda(spec, k[0], k[1]);
                return std::vector<std::string>{fmt(v.value), fmt(v.achieved_tol)};
            };
        } else {
            job.value_columns = {"K", "K_tilde", "abs_error"};
            job.eval = [&](const std::vector<double>& k) {
                auto v = kernel_K(spec, k[0]);
                auto w = kernel_K(spec, k[0], {}, KernelSymbol::psi_star);
                return std::vector<std::string>{fmt(v.value), fmt(w.value), fmt(v.achieved_tol)};
            };
        }
    } else if (sub == "potential") {
        job.axis_names = {"x", "lambda"};
        job.axes = {grid_or_fail("x", args.x), grid_or_fail("lambda", args.lambda)};
        job.value_columns = {"u_lambda", "abs_error", "laplace_T0"};
        job.eval = [&](const std::vector<double>& k) {
            auto v = potential_u_lambda(spec, k[0], k[1]);
            return std::vector<std::string>{fmt(v.value), fmt(v.achieved_tol),
                                            fmt(hitting_time_laplace(spec, k[0], k[1]))};
        };
    } else if (sub == "renewal") {
        job.axis_names = {"x"};
        job.axes = {grid_or_fail("x", args.x)};
        job.value_columns = {"V", "V_prime"};
        job.eval = [&](const std::vector<double>& k) {
            return std::vector<std::string>{fmt(renewal_V(spec, k[0])), fmt(renewal_V_prime(spec, k[0]))};
        };
    } else if (sub == "tail-point") {
        PointModeConfig mode;
        try {
            mode.mode = point_mode_from_string(args.mode);
        } catch (const std::exception& e) {
            throw ConfigFailure(e.what());
        }
        mode.a = args.a;
        job.axis_names = {"x", "t", "R"};
        job.axes = {grid_or_fail("x", args.x), grid_or_fail("t", args.t), {0.0}};
        job.value_columns = kBandColumns;
        if (args.oracle) job.value_columns.push_back("oracle");
        job.eval = [&, mode](const std::vector<double>& k) {
            auto cells = band_cells(point_tail_band(spec, k[0], k[1], mode));
            if (args.oracle) cells.push_back(fmt(laplace_point_tail(spec, k[0], k[1])));
            return cells;
        };
        extra["mode"] = args.mode;
    } else if (sub == "tail-interval") {
        if (!(args.R > 0.0)) throw ConfigFailure("--R must be positive");
        const auto xs = grid_or_fail("x", args.x), ts = grid_or_fail("t", args.t);
        std::optional<IntervalCalibration> cal;
        std::optional<HittingGrid> sim;
        try {
            if (args.calibrate) cal = calibrate_interval_band(spec, args.R, mc);
            if (args.mc) sim = simulate_hitting_grid(spec, xs, args.R, ts, mc);
        } catch (const std::exception& e) {
            throw ConfigFailure(e.what());
        }
        job.axis_names = {"x", "t", "R"};
        job.axes = {xs, ts, {args.R}};
        job.value_columns = kBandColumns;
        if (args.mc) job.value_columns.insert(job.value_columns.end(), {"mc_estimate", "mc_std_error", "bias_bar"});
        // cal and sim die with this block; the job runs after it
        auto cal_p = cal ? std::make_shared<const IntervalCalibration>(*cal) : nullptr;
        auto sim_p = sim ? std::make_shared<const HittingGrid>(std::move(*sim)) : nullptr;
        job.eval = [&spec, R = args.R, cal_p, sim_p](const std::vector<double>& k) {
            auto cells = band_cells(interval_tail_band(spec, k[0], R, k[1], cal_p.get()));
            if (sim_p) {
                const auto& xs = sim_p->xs;
                const auto& ts = sim_p->ts;
                const std::size_t ix = std::find(xs.begin(), xs.end(), k[0]) - xs.begin();
                const std::size_t it = std::find(ts.begin(), ts.end(), k[1]) - ts.begin();
                const auto& r = sim_p->at(ix, it);
                cells.insert(cells.end(), {fmt(r.fine.estimate), fmt(r.fine.std_error), fmt(r.bias_bar)});
            }
            return cells;
        };
        if (cal)
            extra["calibration"] = {{"short_lower", cal->short_lower}, {"short_upper", cal->short_upper},
                                    {"long_lower", cal->long_lower}, {"long_upper", cal->long_upper}};
        if (args.calibrate || args.mc) extra["mc"] = mc_json(mc);
    } else if (sub == "asymptotic") {
        job.axis_names = {"x"};
        job.axes = {grid_or_fail("x", args.x)};
        job.value_columns = {"constant", "std_error", "delta", "normalizer", "expected_K_at_hit", "unhit_fraction"};
        AsymptoticOptions opt;
        opt.mc = mc;
        if (c.paths <= 0) opt.mc.n_paths = 10000;
        if (c.step <= 0.0) opt.mc.h = 2e-3;
        AsymptoticTarget target{args.R, args.center};
        std::optional<double> delta;
        if (args.delta > 0.0) delta = args.delta;
        job.eval = [&, opt, target, delta](const std::vector<double>& k) {
            auto r = tail_asymptotic(spec, k[0], target, delta, opt);
            return std::vector<std::string>{fmt(r.constant), fmt(r.std_error), fmt(r.delta), r.normalizer,
                                            fmt(r.expected_K_at_hit), fmt(r.unhit_fraction)};
        };
        if (args.R > 0.0) extra["mc"] = mc_json(opt.mc);
    } else if (sub == "heat-kernel") {
        const auto xs = grid_or_fail("x", args.x), ts = grid_or_fail("t", args.t);
        if (args.killed > 0.0) {
            // killed density on D = R \ [-r, r]: one (y, density) file per (x, t)
            if (c.out.empty()) throw ConfigFailure("--killed needs --out (one file per (x, t) is written)");
            const auto ys = grid_or_fail("y", args.y);
            CsvTable summary;
            summary.columns = {"x", "t", "r", "survival", "survival_std_error", "bandwidth", "bandwidth_other",
                               "mass", "file", "error"};
            int errors = 0;
            const fs::path base(c.out);
            for (double x : xs) {
                for (double t : ts) {
                    const std::string file = (base.parent_path() / (base.stem().string() + "_x" + fmt(x) + "_t" +
                                                                     fmt(t) + ".csv")).string();
                    try {
                        auto k = simulate_killed_kernel(spec, x, args.killed, t, ys, mc);
                        CsvTable tbl;
                        tbl.columns = {"y", "density", "std_error"};
                        for (std::size_t i = 0; i < k.y.size(); ++i)
                            tbl.add_row({fmt(k.y[i]), fmt(k.density[i]), fmt(k.std_error[i])});
                        emit(file, tbl.str(), em);
                        summary.add_row({fmt(x), fmt(t), fmt(args.killed), fmt(k.survival.estimate),
                                         fmt(k.survival.std_error), fmt(k.bandwidth), fmt(k.bandwidth_other),
                                         fmt(k.mass), fs::path(file).filename().string(), ""});
                    } catch (const ConfigFailure&) {
                        throw;
                    } catch (const std::exception& e) {
                        ++errors;
                        summary.add_row({fmt(x), fmt(t), fmt(args.killed), "nan", "nan", "nan", "nan", "nan", "",
                                         e.what()});
                    }
                }
            }
            emit(c.out, summary.str(), em);
            extra["mc"] = mc_json(mc);
            extra["bandwidth_rule"] = "silverman per half-line, floor 2 / psi^{-1}(1/h)";
            write_manifest(manifest_path_for(c.out), cmd, config_text, hex64(spec.hash()), c.seed, em, extra);
            if (errors) std::cerr << errors << " grid point(s) failed; see the error column\n";
            return errors ? kExitPartial : kExitOk;
        }
        job.axis_names = {"x", "t"};
        job.axes = {xs, ts};
        job.value_columns = {"density", "cdf", "central"};
        job.log_x = false;
        job.eval = [&](const std::vector<double>& k) {
            const double central = spec.is_unimodal() == Tri::yes
                                       ? heat_kernel_central(spec, cached_profile(spec), k[0], k[1])
                                       : NAN;
            return std::vector<std::string>{fmt(heat_kernel_free(spec, k[0], k[1])),
                                            fmt(heat_kernel_cdf(spec, k[0], k[1])), fmt(central)};
        };
    } else {
        throw ConfigFailure("unknown subcommand " + sub);
    }

    auto out = run_job(job);
    emit(c.out, out.csv.str(), em);
    if (!c.svg.empty()) emit(c.svg, render_svg(out.plot), em);
    extra["rows"] = out.csv.rows.size();
    extra["failed_rows"] = out.errors;
    if (!c.out.empty() && c.out != "-")
        write_manifest(manifest_path_for(c.out), cmd, config_text, hex64(spec.hash()), c.seed, em, extra);
    else if (!c.svg.empty())
        write_manifest(manifest_path_for(c.svg), cmd, config_text, hex64(spec.hash()), c.seed, em, extra);
    if (out.errors) std::cerr << out.errors << " grid point(s) failed; see the error column\n";
    // nothing evaluated: a hypothesis or argument problem, not a partial run
    if (out.errors == static_cast<int>(out.csv.rows.size())) return kExitConfig;
    return out.errors ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------
// validate

double ProvenConstants::* constant_field(const std::string& name) {
    static const std::map<std::string, double ProvenConstants::*> fields = {
        {"tail_upper_tilde", &ProvenConstants::tail_upper_tilde},
        {"tail_upper_explicit", &ProvenConstants::tail_upper_explicit},
        {"tail_upper_optimal", &ProvenConstants::tail_upper_optimal},
        {"exit_time", &ProvenConstants::exit_time},
        {"escape_lower", &ProvenConstants::escape_lower},
        {"escape_upper", &ProvenConstants::escape_upper},
        {"unimodal_comparability", &ProvenConstants::unimodal_comparability},
        {"potential_lower_tilde", &ProvenConstants::potential_lower_tilde},
        {"potential_lower_explicit", &ProvenConstants::potential_lower_explicit},
        {"potential_lower_a", &ProvenConstants::potential_lower_a},
        {"potential_upper_a", &ProvenConstants::potential_upper_a},
        {"k_lambda_lower", &ProvenConstants::k_lambda_lower},
    };
    auto it = fields.find(name);
    if (it == fields.end()) throw ConfigFailure("unknown constant '" + name + "'");
    return it->second;
}

struct ValidateArgs {
    std::string suite = "quick";
    std::vector<std::string> specs;
    std::string out_dir;
    std::uint64_t seed = 1;
    double mc_scale = 1.0;
    std::vector<std::string> only;
    std::vector<std::string> constants;
    bool specs_only = false;
    bool list = false;
    int threads = 0;
};

int run_validate(const ValidateArgs& a, const std::string& cmd) {
    if (a.list) {
        for (const auto& c : check_catalog())
            std::cout << c.name << "  criterion=" << c.criterion << (c.mc ? " mc" : "")
                      << (c.per_spec ? " per-spec" : "") << "  " << c.anchor << "\n";
        return kExitOk;
    }
    ValidationOptions opt;
    try {
        opt.suite = suite_from_string(a.suite);
    } catch (const std::exception& e) {
        throw ConfigFailure(e.what());
    }
    opt.seed = a.seed;
    opt.mc_scale = a.mc_scale;
    opt.only = a.only;
    opt.acceptance = !a.specs_only;
    for (const auto& kv : a.constants) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigFailure("--constant expects name=value, got '" + kv + "'");
        double v;
        try {
            v = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigFailure("--constant: bad value in '" + kv + "'");
        }
        opt.constants.*constant_field(kv.substr(0, eq)) = v;
    }
    if (!opt.only.empty()) {
        auto cat = check_catalog();
        for (const auto& n : opt.only)
            if (std::none_of(cat.begin(), cat.end(), [&](const CheckInfo& c) { return c.name == n; }))
                throw ConfigFailure("--only: unknown check '" + n + "'");
    }
    std::vector<SymbolSpec> specs;
    std::string config_text, spec_hashes;
    for (const auto& p : a.specs) {
        const std::string text = read_text(p);
        try {
            specs.push_back(parse_spec(text, fs::path(p).parent_path()));
        } catch (const std::exception& e) {
            throw ConfigFailure(p + ": " + e.what());
        }
        config_text += text;
        spec_hashes += (spec_hashes.empty() ? "" : ",") + hex64(specs.back().hash());
    }
    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) throw ConfigFailure("cannot create " + a.out_dir + ": " + ec.message());

    opt.on_result = [](const CheckResult& r) {
        std::cerr << "[" << to_string(r.status) << "] " << r.name << (r.spec.empty() ? "" : " [" + r.spec + "]")
                  << "\n";
    };
    auto rep = run_validation(specs, opt);
    Emitted em;
    const std::string summary = rep.summary();
    emit((fs::path(a.out_dir) / "report.json").string(), rep.to_json().dump(2) + "\n", em);
    emit((fs::path(a.out_dir) / "summary.txt").string(), summary, em);
    nlohmann::json extra = {{"suite", a.suite}, {"mc_scale", a.mc_scale}, {"specs", a.specs}};
    write_manifest((fs::path(a.out_dir) / "manifest.json").string(), cmd, config_text, spec_hashes, a.seed, em, extra);
    std::cout << summary;
    return rep.all_passed() ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"levyhit: hitting times of points and intervals for symmetric Levy processes"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    TableArgs targs;
    const std::vector<std::string> tables = {"psi",       "kernel",     "potential",  "renewal",
                                             "tail-point", "tail-interval", "asymptotic", "heat-kernel"};
    const std::map<std::string, std::string> blurbs = {
        {"psi", "characteristic exponent, its maximal function and generalized inverse"},
        {"kernel", "K(x) and K~(x), or K^lambda(x) with --lambda"},
        {"potential", "lambda-potential density u^lambda(x) and E^x exp(-lambda T_0)"},
        {"renewal", "renewal function V and its derivative"},
        {"tail-point", "two-sided band for P^x(T_0 > t)"},
        {"tail-interval", "band for P^x(T_[-R,R] > t), optionally calibrated and simulated"},
        {"asymptotic", "large-time constant of the hitting tail"},
        {"heat-kernel", "free transition density, or the killed density with --killed"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : tables) {
        auto* s = app.add_subcommand(name, blurbs.at(name));
        subs[name] = s;
        s->add_option("--spec", targs.common.spec_path, "spec file (TOML)")->required();
        s->add_option("--out", targs.common.out, "CSV output path (default: stdout)");
        s->add_option("--svg", targs.common.svg, "SVG plot path");
        s->add_option("--seed", targs.common.seed, "Monte Carlo seed");
        s->add_option("--paths", targs.common.paths, "Monte Carlo path count");
        s->add_option("--step", targs.common.step, "skeleton time step");
        s->add_option("--threads", targs.common.threads, "worker threads (default: LEVYHIT_THREADS or all cores)");
    }
    subs["psi"]->add_option("--xi", targs.xi, "grid of xi")->required();
    subs["kernel"]->add_option("--x", targs.x, "grid of x")->required();
    subs["kernel"]->add_option("--lambda", targs.lambda, "grid of lambda (switches to K^lambda)");
    subs["potential"]->add_option("--x", targs.x, "grid of x")->required();
    subs["potential"]->add_option("--lambda", targs.lambda, "grid of lambda")->required();
    subs["renewal"]->add_option("--x", targs.x, "grid of x")->required();
    for (const char* n : {"tail-point", "tail-interval"}) {
        subs[n]->add_option("--x", targs.x, "grid of starting points")->required();
        subs[n]->add_option("--t", targs.t, "grid of times")->required();
    }
    subs["tail-point"]->add_option("--mode", targs.mode, "general, comparable, unimodal or wlsc");
    subs["tail-point"]->add_option("--a", targs.a, "comparable mode: psi >= a psi* (0: certified value)");
    subs["tail-point"]->add_flag("--oracle", targs.oracle, "add the Laplace-inversion value");
    subs["tail-interval"]->add_option("--R", targs.R, "interval half-width")->required();
    subs["tail-interval"]->add_flag("--calibrate", targs.calibrate, "calibrate the band constants by Monte Carlo");
    subs["tail-interval"]->add_flag("--mc", targs.mc, "add Monte Carlo estimates");
    subs["asymptotic"]->add_option("--x", targs.x, "grid of starting points")->required();
    subs["asymptotic"]->add_option("--R", targs.R, "interval half-width (0: the point)");
    subs["asymptotic"]->add_option("--center", targs.center, "interval center");
    subs["asymptotic"]->add_option("--delta", targs.delta, "index of psi at 0 (default: declared)");
    subs["heat-kernel"]->add_option("--x", targs.x, "grid of x")->required();
    subs["heat-kernel"]->add_option("--t", targs.t, "grid of times")->required();
    subs["heat-kernel"]->add_option("--killed", targs.killed, "kill outside [-r, r]^c: radius r");
    subs["heat-kernel"]->add_option("--y", targs.y, "grid of end points for --killed");

    ValidateArgs vargs;
    auto* v = app.add_subcommand("validate", "run a validation suite");
    v->add_option("--suite", vargs.suite, "quick, mc or full");
    v->add_option("specs,--spec", vargs.specs, "spec files for the per-spec checks");
    v->add_option("--out-dir", vargs.out_dir, "directory for report.json, summary.txt, manifest.json");
    v->add_option("--seed", vargs.seed, "seed");
    v->add_option("--mc-scale", vargs.mc_scale, "multiplier on every path count");
    v->add_option("--only", vargs.only, "run only these checks");
    v->add_option("--constant", vargs.constants, "override an explicit constant, name=value");
    v->add_flag("--specs-only", vargs.specs_only, "skip the fixed-spec criterion checks");
    v->add_flag("--list", vargs.list, "list the checks and exit");
    v->add_option("--threads", vargs.threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string cmd = command_line(argc, argv);
    auto set_threads = [](int n) {
        if (n > 0) setenv("LEVYHIT_THREADS", std::to_string(n).c_str(), 1);
    };
    try {
        if (v->parsed()) {
            set_threads(vargs.threads);
            if (!vargs.list && vargs.out_dir.empty()) {
                std::cerr << "validate: --out-dir is required\n";
                return kExitUsage;
            }
            return run_validate(vargs, cmd);
        }
        set_threads(targs.common.threads);
        for (const auto& [name, s] : subs)
            if (s->parsed()) return run_table(name, targs, cmd);
    } catch (const ConfigFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitUsage;
}
