// lierkhs — batch front-end for the left-invariant kernel laboratory.
//
// Subcommands: dual, symbol, kernel, count, bounds, cover, all. Each reads a
// flat key-value config, writes CSV artifacts plus a run.json manifest into
// the output directory, and prints a short summary. Every artifact embeds the
// effective config hash and root seed; reruns with an identical config are
// byte-identical (the manifest carries wall times and may differ).
//
// Exit codes: 0 success; 2 config read/parse/validation failure (including
// grids too coarse for the requested truncation); 3 numerical-certification
// failure; 64 usage errors (unknown subcommand, missing flags); 74 unwritable
// output directory.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "lierkhs/bounds.hpp"
#include "lierkhs/config.hpp"
#include "lierkhs/counting.hpp"
#include "lierkhs/covering.hpp"
#include "lierkhs/kernel.hpp"
#include "lierkhs/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace lierkhs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCertification = 3;
constexpr int kExitUsage = 64;
constexpr int kExitCantWrite = 74;

struct RunContext {
    RunConfig cfg;
    std::string hash;
    fs::path out;
    bool quiet = false;
    json manifest;
    std::vector<std::string> warnings;

    void note(const std::string& msg) {
        warnings.push_back(msg);
        if (!quiet) std::cout << "warning: " << msg << "\n";
    }

    std::ofstream open_artifact(const std::string& name, const std::string& subcommand) {
        std::ofstream os(out / name);
        if (!os) throw std::ios_base::failure("cannot write " + (out / name).string());
        os << "# lierkhs " << subcommand << " config=" << hash << " seed=" << cfg.seed << "\n";
        manifest["artifacts"].push_back(name);
        return os;
    }
};

SymbolField build_symbol(const RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    if (cfg.family == SymbolFamily::Custom) {
        SymbolField s = load_symbol(cfg.symbol_file);
        if (s.group != cfg.group)
            throw std::invalid_argument("symbol.file group does not match config group");
        return s;
    }
    return make_symbol(cfg.group, cfg.family, cfg.params, cfg.lambda_max);
}

TruncatedKernel certified_kernel(const RunContext& ctx, const SymbolField& symbol) {
    const auto diag = check_hermitian_psd(symbol);
    if (!diag.certified)
        throw CertificationError("symbol failed Hermitian/PSD certification (defect " +
                                 format_double(diag.hermiticity_defect) + ", min eigenvalue " +
                                 format_double(diag.min_eigenvalue) + ")");
    return make_kernel(symbol);
}

QuadratureGrid certified_grid(const RunContext& ctx) {
    QuadratureGrid grid = haar_grid(ctx.cfg.group, ctx.cfg.grid_resolution);
    if (grid.certified_pair_weight + 1e-12 < ctx.cfg.lambda_max)
        throw std::invalid_argument(
            "grid.resolution " + std::to_string(ctx.cfg.grid_resolution) +
            " is not certified for lambda_max (certified pair weight " +
            format_double(grid.certified_pair_weight) + " < " +
            format_double(ctx.cfg.lambda_max) + "); raise grid.resolution");
    return grid;
}

// eps grid in absolute units; eps.scale = norm measures in multiples of |Q|.
std::vector<double> absolute_eps(const RunContext& ctx, double normQ) {
    std::vector<double> out;
    for (double e : ctx.cfg.eps_values)
        out.push_back(ctx.cfg.eps_relative_to_norm ? e * normQ : e);
    return out;
}

void cmd_dual(RunContext& ctx) {
    const auto labels = enumerate_dual(ctx.cfg.group, ctx.cfg.lambda_max);
    auto os = ctx.open_artifact("dual.csv", "dual");
    os << "index1,index2,dim,eigenvalue,weight\n";
    for (const auto& l : labels)
        os << l.index[0] << "," << l.index[1] << "," << l.dim << ","
           << format_double(l.eigenvalue) << "," << format_double(l.weight) << "\n";
    ctx.manifest["dual"] = {{"labels", labels.size()},
                            {"rank", rank_bound(ctx.cfg.group, ctx.cfg.lambda_max)}};
    if (!ctx.quiet) {
        std::cout << "dual of " << group_name(ctx.cfg.group) << " up to <xi> <= "
                  << ctx.cfg.lambda_max << ": " << labels.size() << " classes\n";
        std::cout << "  index   dim   eigenvalue   weight\n";
        for (std::size_t i = 0; i < labels.size() && i < 24; ++i) {
            const auto& l = labels[i];
            std::cout << "  " << l.index[0];
            if (ctx.cfg.group == GroupId::Torus2) std::cout << "," << l.index[1];
            std::cout << "\t" << l.dim << "\t" << l.eigenvalue << "\t" << l.weight << "\n";
        }
        if (labels.size() > 24) std::cout << "  ... (" << labels.size() - 24 << " more)\n";
    }
}

void cmd_symbol(RunContext& ctx) {
    const auto symbol = build_symbol(ctx);
    const auto diag = check_hermitian_psd(symbol);
    auto os = ctx.open_artifact("symbol.csv", "symbol");
    os << "key,value\n";
    os << "min_eigenvalue," << format_double(diag.min_eigenvalue) << "\n";
    os << "max_op_norm," << format_double(diag.max_op_norm) << "\n";
    os << "hermiticity_defect," << format_double(diag.hermiticity_defect) << "\n";
    os << "partial_trace_norm," << format_double(diag.partial_trace_norm) << "\n";
    os << "tail_bound,"
       << (diag.tail_bound ? format_double(*diag.tail_bound) : std::string("unknown")) << "\n";
    os << "certified," << (diag.certified ? 1 : 0) << "\n";
    json fits;
    if (diag.certified) {
        try {
            const auto tf = classify_trace_order(symbol);
            os << "beta_hat," << format_double(tf.beta_hat) << "\n";
            os << "b_hat," << format_double(tf.b_hat) << "\n";
            fits["beta_hat"] = tf.beta_hat;
            fits["b_hat"] = tf.b_hat;
        } catch (const std::exception& e) {
            ctx.note(std::string("trace-order fit skipped: ") + e.what());
        }
        try {
            const auto df = classify_det_order(symbol);
            os << "gamma_hat," << format_double(df.gamma_hat) << "\n";
            os << "omega_hat," << format_double(df.omega_hat) << "\n";
            os << "a_hat," << format_double(df.a_hat) << "\n";
            os << "gamma_vanishes," << (df.gamma_vanishes ? 1 : 0) << "\n";
            fits["gamma_hat"] = df.gamma_hat;
            fits["omega_hat"] = df.omega_hat;
        } catch (const std::exception& e) {
            ctx.note(std::string("determinant-order fit skipped: ") + e.what());
        }
    }
    ctx.manifest["symbol"] = {{"certified", diag.certified},
                              {"partial_trace_norm", diag.partial_trace_norm},
                              {"fits", fits}};
    if (!ctx.quiet)
        std::cout << "symbol " << family_name(symbol.family) << ": certified="
                  << (diag.certified ? "yes" : "no") << " |T|_S1 partial "
                  << diag.partial_trace_norm << "\n";
    if (!diag.certified)
        throw CertificationError("symbol failed Hermitian/PSD certification");
}

void cmd_kernel(RunContext& ctx) {
    const auto symbol = build_symbol(ctx);
    const auto kernel = certified_kernel(ctx, symbol);
    const auto grid = certified_grid(ctx);
    const auto tn = trace_norm(symbol);
    auto os = ctx.open_artifact("kernel.csv", "kernel");
    os << "check,value,threshold,pass\n";
    bool all_pass = true;
    auto emit = [&](const std::string& name, double value, double threshold) {
        const bool pass = value <= threshold;
        all_pass = all_pass && pass;
        os << name << "," << format_double(value) << "," << format_double(threshold) << ","
           << (pass ? 1 : 0) << "\n";
    };

    {   // diagonal identity K(y,y) = sum d Tr sigma
        double worst = 0.0;
        for (const auto& y : sample_haar(ctx.cfg.group, 10, ctx.cfg.seed))
            worst = std::max(worst,
                             std::abs(eval_kernel(kernel, y, y).real() - tn.partial) /
                                 std::max(1e-300, tn.partial));
        emit("diagonal_identity_rel", worst, 1e-10);
    }
    {   // left invariance
        std::vector<std::pair<GroupPoint, GroupPoint>> pairs;
        const auto xs = sample_haar(ctx.cfg.group, 20, ctx.cfg.seed + 1);
        const auto ys = sample_haar(ctx.cfg.group, 20, ctx.cfg.seed + 2);
        for (std::size_t i = 0; i < xs.size(); ++i) pairs.push_back({xs[i], ys[i]});
        const auto g = sample_haar(ctx.cfg.group, 1, ctx.cfg.seed + 3)[0];
        emit("invariance_max_dev", check_invariance(kernel, pairs, g), 1e-9);
    }
    {   // reproducing property on seeded fields
        double worst = 0.0;
        const auto ys = sample_haar(ctx.cfg.group, 10, ctx.cfg.seed + 4);
        for (int i = 0; i < 10; ++i) {
            const auto c = random_coefficients(kernel.sqrt.support, ctx.cfg.seed + 100 + i);
            worst = std::max(worst,
                             reproducing_residual(c, kernel, ys[i]) / (1.0 + c.norm()));
        }
        emit("reproducing_residual_rel", worst, 1e-8);
    }
    {   // Gram positivity
        const auto pts = sample_haar(ctx.cfg.group, 12, ctx.cfg.seed + 5);
        const auto gram = kernel_gram(kernel, pts);
        emit("gram_negativity", std::max(0.0, -gram.min_eigenvalue),
             1e-8 * gram.gram.trace().real());
    }
    for (double lam : ctx.cfg.lambda_sweep) {
        const auto n = operator_norms(kernel, lam);
        os << "normQ_A(lambda=" << format_double(lam) << ")," << format_double(n.normQ_A)
           << ",," << "\n";
        os << "normQ_Acomp(lambda=" << format_double(lam) << "),"
           << format_double(n.normQ_Acomp) << ",," << "\n";
    }
    {   // the |Q| witness function F^{-1}[H H] sampled on the grid
        const auto c = make_coefficients(kernel.sqrt.support, kernel.sqrt.matrices);
        const auto f = q_apply(c, kernel, grid);
        auto fs = ctx.open_artifact("kernel_sample.csv", "kernel");
        write_csv(f, fs);
        ctx.manifest["kernel"] = {{"sup_norm_witness", f.sup_norm},
                                  {"normQ", std::sqrt(tn.partial)},
                                  {"checks_pass", all_pass}};
    }
    if (!ctx.quiet) std::cout << "kernel checks " << (all_pass ? "passed" : "FAILED") << "\n";
    if (!all_pass) throw CertificationError("kernel numerical checks failed");
}

void cmd_count(RunContext& ctx) {
    const double cap = 2.0 * *std::max_element(ctx.cfg.count_window.begin(),
                                               ctx.cfg.count_window.end());
    const auto rec =
        counting_record(ctx.cfg.group, ctx.cfg.count_alpha, ctx.cfg.count_window, cap);
    auto os = ctx.open_artifact("count.csv", "count");
    write_csv(rec, os);
    const auto fit = fit_weyl_exponent(ctx.cfg.group, ctx.cfg.count_alpha, ctx.cfg.count_window);
    ctx.manifest["count"] = {{"alpha", ctx.cfg.count_alpha},
                             {"exponent_hat", fit.exponent},
                             {"constant_hat", fit.constant},
                             {"expected_exponent",
                              (ctx.cfg.count_alpha + 1.0) * group_dim(ctx.cfg.group)}};
    if (!ctx.quiet)
        std::cout << "weyl fit on " << group_name(ctx.cfg.group) << ": exponent "
                  << fit.exponent << " (expected "
                  << (ctx.cfg.count_alpha + 1.0) * group_dim(ctx.cfg.group) << ")\n";
}

void cmd_bounds(RunContext& ctx) {
    const auto symbol = build_symbol(ctx);
    certified_kernel(ctx, symbol);  // bounds presume a certified symbol
    const auto tn = trace_norm(symbol);
    const double S1 = tn.partial + tn.tail_bound.value_or(0.0);
    BoundParameters params;
    const bool ok = detail::fit_theorem_params(symbol, params, S1);
    if (!ok) {
        ctx.note("theorem constants could not be fitted for this symbol; curves are empty");
        auto os = ctx.open_artifact("bounds.csv", "bounds");
        os << "eps,ln_upper,ln_lower,ln_det_lower,valid_upper,valid_lower,det_nonvacuous\n";
        ctx.manifest["bounds"] = {{"fitted", false}};
        return;
    }
    const auto eps = absolute_eps(ctx, std::sqrt(S1));
    const double lambda_det = ctx.cfg.lambda_sweep.back();
    const auto curve = bound_curve(params, eps, &symbol, lambda_det);
    auto os = ctx.open_artifact("bounds.csv", "bounds");
    write_csv(curve, os);
    int n_valid = 0;
    for (std::size_t i = 0; i < curve.eps.size(); ++i)
        if (curve.valid_upper[i] || curve.valid_lower[i]) ++n_valid;
    if (n_valid == 0) ctx.note("all eps values fall outside both theorem validity ranges");
    ctx.manifest["bounds"] = {{"fitted", true},
                              {"beta", params.beta},
                              {"gamma", params.gamma},
                              {"valid_points", n_valid}};
    if (!ctx.quiet)
        std::cout << "bound curves at " << eps.size() << " eps values (" << n_valid
                  << " inside validity)\n";
}

void cmd_cover(RunContext& ctx) {
    const auto symbol = build_symbol(ctx);
    const auto kernel = certified_kernel(ctx, symbol);
    const auto grid = std::make_shared<QuadratureGrid>(certified_grid(ctx));
    const double lambda_small = ctx.cfg.lambda_sweep.front();
    const double lambda_large = ctx.cfg.lambda_sweep.back();
    if (!(lambda_small < lambda_large))
        throw std::invalid_argument("cover needs lambda.sweep with at least two distinct values");
    const auto eps = absolute_eps(ctx, operator_norms(kernel, lambda_small).normQ);
    const auto rep = bracket_covering(kernel, lambda_small, lambda_large, eps,
                                      ctx.cfg.cloud_size, ctx.cfg.seed, grid);
    auto os = ctx.open_artifact("cover.csv", "cover");
    write_csv(rep, os);
    int violations = 0, undefined = 0;
    for (const auto& row : rep.rows) {
        if (row.bracket == BracketStatus::Violated) ++violations;
        if (row.bracket == BracketStatus::Undefined) ++undefined;
    }
    if (violations) ctx.note("bracket ordering violated on " + std::to_string(violations) + " rows");
    if (undefined) ctx.note("bracket undefined (eps <= delta_lambda) on " +
                            std::to_string(undefined) + " rows");
    ctx.manifest["cover"] = {{"delta_small", rep.delta_small},
                             {"lipschitz", rep.lipschitz},
                             {"mesh", rep.mesh},
                             {"violations", violations},
                             {"theorem_params_ok", rep.theorem_params_ok}};
    if (!ctx.quiet)
        std::cout << "covering report: " << rep.rows.size() << " rows, " << violations
                  << " bracket violations\n";
}

int dispatch(const std::string& sub, RunContext& ctx) {
    using Clock = std::chrono::steady_clock;
    const std::vector<std::string> order =
        sub == "all" ? std::vector<std::string>{"dual", "symbol", "kernel", "count", "bounds",
                                                "cover"}
                     : std::vector<std::string>{sub};
    for (const auto& step : order) {
        const auto t0 = Clock::now();
        if (step == "dual") cmd_dual(ctx);
        else if (step == "symbol") cmd_symbol(ctx);
        else if (step == "kernel") cmd_kernel(ctx);
        else if (step == "count") cmd_count(ctx);
        else if (step == "bounds") cmd_bounds(ctx);
        else if (step == "cover") cmd_cover(ctx);
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        ctx.manifest["wall_ms"][step] = ms;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lierkhs: left-invariant kernels, their RKHS, and covering-number bounds on "
                 "compact Lie groups"};
    app.require_subcommand(1);
    std::string config_path, out_override;
    std::uint64_t seed_override = 0;
    bool have_seed = false, quiet = false;
    app.add_option("--config", config_path, "path to the run configuration")->required();
    app.add_option("--out", out_override, "output directory (overrides output.dir)");
    auto* seed_opt = app.add_option("--seed", seed_override, "root seed (overrides config)");
    app.add_flag("--quiet", quiet, "suppress progress output");
    app.fallthrough();
    for (const char* name : {"dual", "symbol", "kernel", "count", "bounds", "cover", "all"})
        app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    have_seed = seed_opt->count() > 0;
    const std::string sub = app.get_subcommands().front()->get_name();

    RunContext ctx;
    ctx.quiet = quiet;
    try {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "error: cannot read config file " << config_path << "\n";
            return kExitValidation;
        }
        std::stringstream buffer;
        buffer << is.rdbuf();
        ctx.cfg = parse_config(buffer.str());
        if (!out_override.empty()) ctx.cfg.output_dir = out_override;
        if (have_seed) ctx.cfg.seed = seed_override;
        const std::string problem = validate_config(ctx.cfg);
        if (!problem.empty()) {
            std::cerr << "error: invalid config: " << problem << "\n";
            return kExitValidation;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    ctx.hash = config_hash(ctx.cfg);
    ctx.out = ctx.cfg.output_dir;
    std::error_code ec;
    fs::create_directories(ctx.out, ec);
    {
        std::ofstream probe(ctx.out / ".write_probe");
        if (ec || !probe) {
            std::cerr << "error: output directory " << ctx.out.string() << " is not writable\n";
            return kExitCantWrite;
        }
        probe.close();
        fs::remove(ctx.out / ".write_probe", ec);
    }

    ctx.manifest["tool"] = "lierkhs";
    ctx.manifest["version"] = kVersion;
    ctx.manifest["subcommand"] = sub;
    ctx.manifest["config_hash"] = ctx.hash;
    ctx.manifest["seed"] = ctx.cfg.seed;
    ctx.manifest["config"] = serialize_config(ctx.cfg);
    ctx.manifest["artifacts"] = json::array();

    int code = kExitOk;
    try {
        code = dispatch(sub, ctx);
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        code = kExitCertification;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitCantWrite;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitValidation;
    }
    ctx.manifest["warnings"] = ctx.warnings;
    ctx.manifest["exit_code"] = code;
    std::ofstream manifest(ctx.out / "run.json");
    if (manifest) manifest << ctx.manifest.dump(2) << "\n";
    return code;
}
