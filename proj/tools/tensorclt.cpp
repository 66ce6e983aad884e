// tensorclt — reproducible evaluators for permutation-statistic normal
// approximation: parameter estimation, bound evaluation, exact decomposition,
// simulation, and brute-force verification of the underlying identities.
//
// Exit codes: 0 success, 1 usage/parse/runtime error, 2 verification failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "tensorclt/bounds.hpp"
#include "tensorclt/decomposition.hpp"
#include "tensorclt/empirics.hpp"
#include "tensorclt/io.hpp"
#include "tensorclt/models.hpp"
#include "tensorclt/parallel.hpp"

namespace tc = tensorclt;
using tc::io::Json;

namespace {

struct Output {
    std::string path;      // empty = stdout
    std::string format = "json";

    void emit(const Json& j) const {
        std::string text = format == "csv" ? to_csv(j) : tc::io::render_json(j);
        if (path.empty())
            std::fputs(text.c_str(), stdout);
        else
            tc::io::write_text_file(path, text);
    }

    /// Flat CSV: one "key,value" row per top-level scalar; nested objects
    /// are flattened with dotted keys.
    static std::string to_csv(const Json& j) {
        std::string out = "key,value\n";
        flatten("", j, out);
        return out;
    }

    static void flatten(const std::string& prefix, const Json& j, std::string& out) {
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it)
                flatten(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(), out);
        } else if (j.is_array()) {
            for (std::size_t k = 0; k < j.size(); ++k)
                flatten(prefix + "[" + std::to_string(k) + "]", j[k], out);
        } else if (j.is_number_float()) {
            std::string v = tc::io::format_double(j.get<double>());
            if (!v.empty() && v.front() == '"') v = v.substr(1, v.size() - 2);
            out += prefix + "," + v + "\n";
        } else if (j.is_boolean()) {
            out += prefix + "," + (j.get<bool>() ? "true" : "false") + "\n";
        } else if (j.is_string()) {
            out += prefix + "," + j.get<std::string>() + "\n";
        } else {
            out += prefix + "," + j.dump() + "\n";
        }
    }
};

std::vector<double> parse_alpha_grid(const std::string& grid) {
    // "lo:hi:step"
    double lo, hi, step;
    if (std::sscanf(grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
        throw tc::Error(tc::errc::parse, "alpha grid must be lo:hi:step with step > 0");
    std::vector<double> alphas;
    for (double a = lo; a <= hi + 1e-12; a += step) alphas.push_back(a);
    return alphas;
}

tc::TensorParams params_from_file(const std::string& path) {
    const Json j = tc::io::load_json_file(path);
    tc::TensorParams p;
    p.n = j.at("n").get<int>();
    p.d = j.at("d").get<int>();
    p.delta = tc::DeltaVector(p.d, j.at("delta").get<std::vector<double>>());
    p.sigma = j.contains("sigma")
                  ? tc::SigmaVector{p.d, j.at("sigma").get<std::vector<double>>()}
                  : tc::sigma_from_delta(p.delta);
    p.osc = j.value("osc", 0.0);
    p.pc = j.value("pc", 0.0);
    p.B = j.value("B", 0.0);
    p.K3 = j.value("K3", 0.0);
    if (j.contains("K4")) p.K4 = j.at("K4").get<double>();
    if (j.contains("provenance") && j["provenance"].value("kind", "exact") == "monte-carlo") {
        p.exact = false;
        p.samples = j["provenance"].value("samples", 0ull);
        p.seed = j["provenance"].value("seed", 0ull);
        if (j["provenance"].contains("stderr"))
            p.stderr_map = j["provenance"]["stderr"].get<std::map<std::string, double>>();
    }
    for (auto& w : tc::a1_warnings(p.delta)) p.warnings.push_back(w);
    return p;
}

std::vector<tc::WeightedComponent> load_components(const std::vector<std::string>& paths) {
    std::vector<tc::WeightedComponent> comps;
    for (const auto& path : paths) {
        tc::WeightedComponent c;
        c.weight = 1.0;
        c.xi = tc::io::double_tensor_from_json(tc::io::load_json_file(path));
        comps.push_back(std::move(c));
    }
    return comps;
}

/// Rescales so that beta_1 = n-1 (every component shares the factor, which
/// only changes the comparison gaussian's variance).
double normalize_components(std::vector<tc::WeightedComponent>& comps, int n) {
    double beta1 = 0.0;
    for (double v : comps.front().xi.values) {
        const double w = comps.front().weight * v;
        beta1 += w * w;
    }
    tc::require(beta1 > 0.0, tc::errc::degenerate, "xi_1 vanishes: nothing to normalize");
    const double scale = std::sqrt((n - 1.0) / beta1);
    for (auto& c : comps) {
        for (double& v : c.xi.values) v *= c.weight * scale;
        c.weight = 1.0;
    }
    return scale;
}

int run_verify_report(const Json& report, bool ok, const Output& out) {
    out.emit(report);
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "tensorclt: normal-approximation bounds and exact verification for\n"
        "linear statistics of exchangeable random tensors and tensor\n"
        "permutation statistics."};
    app.require_subcommand(1);

    Output out;
    app.add_option("--out", out.path, "write the report to this file (default stdout)");
    app.add_option("--format", out.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    double alpha = 0.5;
    std::string alpha_grid;
    std::size_t budget = 100000000;
    double tol = 1e-9;

    // ------------------------------------------------------------ estimate
    auto* est = app.add_subcommand(
        "estimate",
        "Estimate delta_0..delta_d, Sigma_s, osc, pc, B and the entry moments\n"
        "of a model by Monte Carlo (osc = E|(1/n) sum_j Y_j^2 - delta_1| with\n"
        "Y_j the first-slot row mean), or exactly for slice-product models.");
    std::string est_model;
    bool est_exact = false;
    est->add_option("--model", est_model, "model spec JSON file")->required();
    est->add_option("--samples", samples, "Monte Carlo sample count");
    est->add_option("--seed", seed, "RNG seed (required for reproducibility)");
    est->add_flag("--exact", est_exact, "closed-form parameters (slice-product only)");

    // ------------------------------------------------------------ bound
    auto* bound = app.add_subcommand("bound", "Evaluate a normal-approximation bound");
    bound->require_subcommand(1);

    auto* bt = bound->add_subcommand(
        "tensor",
        "Tensor bound: d_K <= E1 + E2 + E3 with\n"
        "  E1 = 5 osc^(1-a) + 5|delta0|^(1-a) + |delta0 (T0^2-1)/(d^2 delta1)|\n"
        "       + 6 kappa/n^(1-a) + 4 T0^2/n,\n"
        "  E2 = 2^36 K3 delta1^(-3/2) sum_j |row_j|^3,\n"
        "  E3 = 3 kappa/(d sqrt(delta1)) sum_{s>=2} C(d,s) sqrt(s!)\n"
        "       sqrt(Sigma_s + 16 d^2 2^d/n) |||theta|||_s,\n"
        "feasible iff delta1 >= max(osc, B, kappa/n)^a, kappa = 20 d^3 18^d (2d)!.\n"
        "--extendible drops the radicand slack and the kappa/n terms and\n"
        "uses pc in place of osc.");
    std::string bt_coeffs, bt_params;
    bool bt_extendible = false;
    bool bt_normalize = false;
    bt->add_option("--coeffs", bt_coeffs, "coefficient JSON file")->required();
    bt->add_option("--params", bt_params, "tensor parameter JSON file")->required();
    bt->add_option("--alpha", alpha, "free exponent in (0,1)");
    bt->add_option("--alpha-grid", alpha_grid, "sweep lo:hi:step, one report row per alpha");
    bt->add_flag("--extendible", bt_extendible, "infinitely extendible variant");
    bt->add_flag("--normalize", bt_normalize,
                 "rescale the coefficients so the order-1 seminorm is 1");

    auto* bv = bound->add_subcommand(
        "vector",
        "Vector bound (d = 1, kappa1 = 4320):\n"
        "  general:   5 osc + 6|delta0| + kappa1/n + (|delta0|+1/n)(sum theta)^2\n"
        "             + kappa1 E|X|^3 sum |theta_i|^3\n"
        "  sum-of-k:  5 osc + (8C+kappa1+1) k/n + kappa1 E|X|^3/sqrt(k)\n"
        "  isotropic: (5 sqrt(n pc) + 5 sqrt(E[X^4]) + kappa1)/sqrt(n)\n"
        "             + (sum theta)^2/n + 2 kappa1 E|X|^3 sum |theta_i|^3");
    std::string bv_params, bv_theta, bv_variant = "general";
    int bv_k = 0;
    double bv_C = 0.0;
    bv->add_option("--params", bv_params, "tensor parameter JSON file")->required();
    bv->add_option("--theta", bv_theta, "comma-separated coefficient vector");
    bv->add_option("--variant", bv_variant, "general|sum-of-k|isotropic")
        ->check(CLI::IsMember({"general", "sum-of-k", "isotropic"}));
    bv->add_option("--k", bv_k, "k for the sum-of-k variant");
    bv->add_option("--C", bv_C, "correlation constant with |delta_0| <= C/n");

    auto* bp = bound->add_subcommand(
        "poly",
        "Slice polynomial f = sum_F a_F prod_{i in F} x_i on the k-slice:\n"
        "variance window |sigma^2 - sum_s p^(2d-s)(1-p)^s |||a|||_s^2| <=\n"
        "  12 d^2 2^d/(1-p)^d |||a|||_0^2/n + 12 d^2 2^d/(p(1-p)^d) sigma^2/n\n"
        "and the concentration bound L(eps) <= eps/(sqrt(2 pi) sigma) + four\n"
        "coefficient terms. Exact sigma^2 by slice enumeration when C(n,k)\n"
        "is within budget.");
    std::string bp_coeffs;
    int bp_k = 0;
    double bp_eps = 0.0;
    std::string bp_dist;
    bp->add_option("--coeffs", bp_coeffs, "coefficient JSON file")->required();
    bp->add_option("--k", bp_k, "slice level")->required();
    bp->add_option("--eps", bp_eps, "concentration window width");
    bp->add_option("--emit-distribution", bp_dist, "write the exact slice law (CSV) here");

    auto* bf = bound->add_subcommand(
        "finpop",
        "Finite population statistic T = t(pi(1..d)):\n"
        "  d_K(T, N(mu, sigma^2)) <= 2^19 C1/sqrt(dn) (||g1||_3/||g1||_2)^3\n"
        "  + 2 C_d sum_{s>=2} (1/s!) (d/sqrt(n))^(s-1) ||g_s||_2/||g1||_2,\n"
        "  sigma^2 = d/(n-1) (1 - d/n) ||g1||_2^2.");
    std::string bf_file;
    double bf_mu = 0.0;
    bf->add_option("--g-file", bf_file,
                   "JSON {\"n\":int, \"g\":[nested arrays g_1..g_d]} of components")
        ->required();
    bf->add_option("--mu", bf_mu, "mean E[T] for the comparison gaussian");

    // ------------------------------------------------------------ decompose
    auto* dec = app.add_subcommand(
        "decompose",
        "Rewrite the permutation statistic Z = sum_i z(i, pi o i) exactly as\n"
        "a weighted sum of Hoeffding-component statistics plus a constant;\n"
        "--verify-exhaustive replays the identity over every permutation.");
    std::string dec_tensor;
    bool dec_verify = false;
    bool dec_full = false;
    std::string dec_pi;
    dec->add_option("--tensor", dec_tensor, "doubly-indexed tensor JSON file")->required();
    dec->add_flag("--verify-exhaustive", dec_verify, "check the identity for all pi (n <= 8)");
    dec->add_flag("--emit-components", dec_full, "include full component tensors in the report");
    dec->add_option("--pi", dec_pi,
                    "evaluate both sides at one permutation, given as a comma-separated "
                    "1-based array (e.g. 2,1,3)");

    // ------------------------------------------------------------ simulate
    auto* sim = app.add_subcommand("simulate", "Simulate statistics and compare with bounds");
    auto* simw = sim->add_subcommand(
        "wstat",
        "W = sum_s sum_{i injective} xi_s(i, pi o i): empirical or exact d_K\n"
        "to N(0,1) side by side with the combinatorial CLT bound\n"
        "  2^18 C1/n sum |xi_1|^3 + C_d sum_{s>=2} sqrt(beta_s/n^s).\n"
        "Components are rescaled to beta_1 = n-1 first. Exits 2 if the\n"
        "observed distance exceeds bound + 3*DKW.");
    std::vector<std::string> simw_files;
    bool simw_exact = false;
    std::string simw_dist;
    simw->add_option("--components", simw_files, "component tensor JSON files (xi_1 xi_2 ...)")
        ->required()
        ->expected(-1);
    simw->add_flag("--exact", simw_exact, "exact law by permutation enumeration (n <= 8)");
    simw->add_option("--samples", samples, "Monte Carlo sample count");
    simw->add_option("--seed", seed, "RNG seed");
    simw->add_option("--emit-distribution", simw_dist, "write the W law (CSV) here");

    // ------------------------------------------------------------ verify
    auto* ver = app.add_subcommand("verify", "Brute-force verification of exact identities");
    auto* vid = ver->add_subcommand(
        "identities",
        "Exchangeable-pair moments by exhaustive (pi, I1, I2) enumeration:\n"
        "E[Xi1^2]=1, E[Xi1-Xi1'|pi]=(2/n)Xi1, E[(Xi1-Xi1')^2]=4/n,\n"
        "E|Xi1-Xi1'|^3 <= 64 Lambda/n^2, and the higher-order envelopes\n"
        "E[Xi_s^2] <= 2 e^(2s) ((2s)!)^2 beta_s/n^s,\n"
        "E[(Xi_s-Xi_s')^2] <= 24 s^4 e^(2s) ((2s)!)^2 beta_s/n^(s+1).");
    std::vector<std::string> vid_files;
    int vid_n = 4;
    bool vid_s2 = false;
    vid->add_option("--components", vid_files, "component tensor JSON files");
    vid->add_option("--n", vid_n, "ambient size for generated components (n <= 6)");
    vid->add_option("--seed", seed, "RNG seed for generated components");
    vid->add_flag("--with-s2", vid_s2, "also generate a random order-2 component");
    vid->add_option("--tol", tol, "relative tolerance for the identity checks");

    auto* vpr = ver->add_subcommand(
        "pair",
        "Exchangeable permutation pair pi2 = pi1 o t(I1,I2): exhaustive\n"
        "integer-count check that pi2 is uniform, (pi1,pi2) is exchangeable,\n"
        "and pi2 is independent of (I1,I2).");
    std::vector<int> vpr_ns{2, 3, 4};
    vpr->add_option("--n", vpr_ns, "sizes to enumerate");

    auto* vgm = ver->add_subcommand(
        "gamma",
        "gamma_{s,r}: closed form (-1)^(r-s) C(r,s) against the bottom-up\n"
        "recursion gamma_{s-1,r} = -sum_x C(x,s-1) gamma_{x,r}; exact integers.");
    int vgm_rmax = 10;
    vgm->add_option("--rmax", vgm_rmax, "check all 0 <= s <= r <= rmax");

    auto* vvr = ver->add_subcommand(
        "variance",
        "Variance formula sum_s C(d,s)^2 s! Sigma_s |||theta|||_s^2 against\n"
        "the brute-force double enumeration sum theta_i theta_j delta_|overlap|.");
    int vvr_count = 100, vvr_dmax = 3, vvr_nmax = 8;
    vvr->add_option("--count", vvr_count, "random instances");
    vvr->add_option("--dmax", vvr_dmax, "max order");
    vvr->add_option("--nmax", vvr_nmax, "max ambient size");
    vvr->add_option("--seed", seed, "RNG seed");
    vvr->add_option("--budget", budget, "enumeration budget for the oracle");

    // let --out/--format and the shared knobs appear after subcommand args
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (auto* sub : cmd->get_subcommands({})) allow_fallthrough(sub);
    };
    allow_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage/parse problems exit 1; --help exits 0
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        // ---------------------------------------------------------------- estimate
        if (est->parsed()) {
            const tc::ModelSpec model = tc::io::model_from_json(tc::io::load_json_file(est_model));
            tc::TensorParams p;
            if (est_exact) {
                tc::require(model.kind == tc::ModelKind::slice_product, tc::errc::spec,
                            "--exact is available for slice-product models only");
                p = tc::exact_slice_params(model.n, model.k, model.d);
            } else {
                p = tc::estimate_params(model, samples, seed);
            }
            out.emit(tc::io::params_to_json(p));
            return 0;
        }

        // ---------------------------------------------------------------- bound
        if (bt->parsed()) {
            auto c = tc::io::coefficients_from_json(tc::io::load_json_file(bt_coeffs));
            const auto params = params_from_file(bt_params);
            double scale = 1.0;
            if (bt_normalize) {
                const double s1 = tc::seminorm(c, 1);
                tc::require(s1 > 0.0, tc::errc::degenerate, "cannot normalize: seminorm is 0");
                scale = 1.0 / s1;
                for (auto& [key, v] : c.coefficients) v *= scale;
            }
            const auto profile = tc::make_profile(c);
            auto eval = [&](double a) {
                return bt_extendible ? tc::extendible_bound(params, profile, a)
                                     : tc::tensor_bound(params, profile, a);
            };
            if (!alpha_grid.empty()) {
                Json rows = Json::array();
                for (double a : parse_alpha_grid(alpha_grid)) {
                    Json row = tc::io::report_to_json(eval(a));
                    row["alpha"] = a;
                    rows.push_back(row);
                }
                Json j{{"alpha_sweep", rows}};
                if (bt_normalize) j["normalization_scale"] = scale;
                out.emit(j);
            } else {
                Json j = tc::io::report_to_json(eval(alpha));
                j["alpha"] = alpha;
                if (bt_normalize) j["normalization_scale"] = scale;
                out.emit(j);
            }
            return 0;
        }
        if (bv->parsed()) {
            const auto params = params_from_file(bv_params);
            std::vector<double> theta;
            if (!bv_theta.empty()) {
                std::stringstream ss(bv_theta);
                std::string item;
                while (std::getline(ss, item, ',')) theta.push_back(std::stod(item));
            }
            tc::VectorBoundVariant variant = tc::VectorBoundVariant::general;
            if (bv_variant == "sum-of-k") variant = tc::VectorBoundVariant::sum_of_k;
            if (bv_variant == "isotropic") variant = tc::VectorBoundVariant::isotropic;
            out.emit(tc::io::report_to_json(
                tc::vector_bound(params, theta, variant, bv_k, bv_C)));
            return 0;
        }
        if (bp->parsed()) {
            const auto c = tc::io::coefficients_from_json(tc::io::load_json_file(bp_coeffs));
            std::optional<double> sigma2;
            std::optional<tc::EmpiricalDistribution> law;
            if (tc::binom_i64(c.n, bp_k) <= 200000) {
                law = tc::exact_slice_distribution(c, bp_k);
                sigma2 = law->variance();
            }
            Json j = tc::io::report_to_json(tc::slice_poly_bound(c, bp_k, bp_eps, sigma2));
            if (law) {
                j["levy_exact"] = tc::levy_concentration(*law, bp_eps);
                if (!bp_dist.empty())
                    tc::io::write_text_file(bp_dist, tc::io::distribution_to_csv(*law));
            }
            out.emit(j);
            return 0;
        }
        if (bf->parsed()) {
            const Json j = tc::io::load_json_file(bf_file);
            const int n = j.at("n").get<int>();
            std::vector<tc::DenseTensor> g;
            int s = 1;
            for (const auto& node : j.at("g")) {
                Json wrapper{{"n", n}, {"s", s}, {"values", node}};
                g.push_back(tc::io::dense_tensor_from_json(wrapper));
                ++s;
            }
            out.emit(tc::io::report_to_json(
                tc::finite_population_bound(tc::norms_of(g, n, bf_mu))));
            return 0;
        }

        // ---------------------------------------------------------------- decompose
        if (dec->parsed()) {
            const auto z = tc::io::double_tensor_from_json(tc::io::load_json_file(dec_tensor));
            const auto res = tc::decompose_z(z);
            Json j;
            j["r"] = res.r;
            j["n"] = res.n;
            j["constant"] = res.constant;
            j["zeta0"] = res.zeta0;
            j["w"] = res.w;
            Json comps = Json::array();
            for (const auto& comp : res.components) {
                Json cj;
                cj["s"] = comp.xi.s;
                cj["weight"] = comp.weight;
                if (dec_full) cj["xi"] = tc::io::double_tensor_to_json(comp.xi);
                comps.push_back(cj);
            }
            j["components"] = comps;
            bool ok = true;
            if (!dec_pi.empty()) {
                std::vector<int> pi;
                std::stringstream ss(dec_pi);
                std::string item;
                while (std::getline(ss, item, ',')) pi.push_back(std::stoi(item));
                const double zv = tc::evaluate_z(z, pi);
                const double wv = tc::evaluate_w(res.components, pi) + res.constant;
                j["at_pi"] = Json{{"pi", pi}, {"z", zv}, {"w_plus_constant", wv}};
            }
            if (dec_verify) {
                tc::require(res.n <= 8, tc::errc::scale,
                            "--verify-exhaustive enumerates n! permutations; n <= 8");
                double worst = 0.0;
                for (const auto& pi : tc::all_permutations(res.n)) {
                    const double zv = tc::evaluate_z(z, pi);
                    const double wv = tc::evaluate_w(res.components, pi) + res.constant;
                    worst = std::max(worst, std::abs(zv - wv) / (1.0 + std::abs(zv)));
                }
                j["verify"] = Json{{"worst_relative_error", worst}, {"tolerance", 1e-9}};
                ok = worst <= 1e-9;
                j["verify"]["ok"] = ok;
            }
            return run_verify_report(j, ok, out);
        }

        // ---------------------------------------------------------------- simulate
        if (simw->parsed()) {
            auto comps = load_components(simw_files);
            const int n = comps.front().xi.n;
            for (std::size_t s = 0; s < comps.size(); ++s)
                tc::require(comps[s].xi.s == static_cast<int>(s) + 1, tc::errc::dim,
                            "components must be xi_1, xi_2, ... in order");
            const double scale = normalize_components(comps, n);
            std::vector<tc::DoubleTensor> tensors;
            for (const auto& c : comps) tensors.push_back(c.xi);

            const auto rep = tc::wstat_clt_bound(tensors, n);
            tc::EmpiricalDistribution law =
                simw_exact ? tc::exact_wstat_distribution(comps, n)
                           : tc::sample_wstat_distribution(comps, n, samples, seed);
            const double dk = tc::kolmogorov_distance(law, 0.0, 1.0);
            const double slack = simw_exact ? 0.0 : tc::dkw_radius(samples);

            Json j;
            j["bound"] = tc::io::report_to_json(rep);
            j["d_k"] = dk;
            j["dkw_slack"] = slack;
            j["exact"] = simw_exact;
            j["normalization_scale"] = scale;
            if (!simw_exact) { j["samples"] = samples; j["seed"] = seed; }
            const bool certified = dk <= rep.clamped + 3.0 * slack;
            j["certified"] = certified;
            if (!simw_dist.empty())
                tc::io::write_text_file(simw_dist, tc::io::distribution_to_csv(law));
            return run_verify_report(j, certified, out);
        }

        // ---------------------------------------------------------------- verify
        if (vid->parsed()) {
            std::vector<tc::DoubleTensor> comps;
            if (!vid_files.empty()) {
                for (const auto& f : vid_files)
                    comps.push_back(tc::io::double_tensor_from_json(tc::io::load_json_file(f)));
            } else {
                // random normalized Hoeffding xi_1 (+ optional xi_2)
                tc::Rng rng(seed);
                tc::DoubleTensor raw(1, vid_n);
                for (double& v : raw.values) v = 2.0 * rng.next_double() - 1.0;
                tc::DoubleTensor xi1 = tc::hoeffding_double(raw);
                double beta1 = 0.0;
                for (double v : xi1.values) beta1 += v * v;
                const double scale = std::sqrt((vid_n - 1.0) / beta1);
                for (double& v : xi1.values) v *= scale;
                comps.push_back(std::move(xi1));
                if (vid_s2) {
                    tc::DoubleTensor raw2(2, vid_n);
                    for (double& v : raw2.values) v = 2.0 * rng.next_double() - 1.0;
                    comps.push_back(tc::hoeffding_double(raw2));
                }
            }
            const int n = comps.front().n;
            const auto rep = tc::verify_identities(comps, n, tol);
            Json checks = Json::array();
            for (const auto& c : rep.checks)
                checks.push_back(Json{{"name", c.name},
                                      {"lhs", c.lhs},
                                      {"rhs", c.rhs},
                                      {"inequality", c.is_inequality},
                                      {"ok", c.ok}});
            return run_verify_report(Json{{"n", n}, {"checks", checks}, {"ok", rep.all_ok()}},
                                     rep.all_ok(), out);
        }
        if (vpr->parsed()) {
            Json rows = Json::array();
            bool all_ok = true;
            for (int n : vpr_ns) {
                // exhaustive (I1, I2, pi1) enumeration with integer counts
                const auto perms = tc::all_permutations(n);
                std::map<std::vector<int>, std::uint64_t> count_pi2;
                std::map<std::pair<std::vector<int>, std::vector<int>>, std::uint64_t> count_pair;
                std::map<std::pair<std::vector<int>, std::pair<int, int>>, std::uint64_t>
                    count_joint;
                for (int i1 = 1; i1 <= n; ++i1)
                    for (int i2 = 1; i2 <= n; ++i2)
                        for (const auto& pi1 : perms) {
                            const auto pi2 = tc::compose_transposition(pi1, i1, i2);
                            ++count_pi2[pi2];
                            ++count_pair[{pi1, pi2}];
                            ++count_joint[{pi2, {i1, i2}}];
                        }
                bool ok = true;
                const std::uint64_t uniform = static_cast<std::uint64_t>(n) * n;
                for (const auto& [pi, c] : count_pi2) ok = ok && c == uniform;
                ok = ok && count_pi2.size() == perms.size();
                for (const auto& [pq, c] : count_pair) {
                    auto swapped = count_pair.find({pq.second, pq.first});
                    ok = ok && swapped != count_pair.end() && swapped->second == c;
                }
                for (const auto& [key, c] : count_joint) ok = ok && c == 1;
                rows.push_back(Json{{"n", n}, {"ok", ok}});
                all_ok = all_ok && ok;
            }
            return run_verify_report(Json{{"pair", rows}, {"ok", all_ok}}, all_ok, out);
        }
        if (vgm->parsed()) {
            int matches = 0;
            bool ok = true;
            for (int r = 0; r <= vgm_rmax; ++r)
                for (int s = 0; s <= r; ++s) {
                    const auto closed = tc::gamma_const(s, r, tc::GammaMethod::closed);
                    const auto rec = tc::gamma_const(s, r, tc::GammaMethod::recursive);
                    ok = ok && closed == rec;
                    ++matches;
                }
            return run_verify_report(
                Json{{"pairs_checked", matches}, {"rmax", vgm_rmax}, {"ok", ok}}, ok, out);
        }
        if (vvr->parsed()) {
            tc::Rng rng(seed);
            double worst = 0.0;
            for (int t = 0; t < vvr_count; ++t) {
                const int d = 1 + static_cast<int>(rng.next_below(vvr_dmax));
                const int n = 2 * d + static_cast<int>(rng.next_below(vvr_nmax - 2 * d + 1));
                tc::SymmetricCoefficients c(d, n);
                for (const auto& tuple : tc::injective_tuples(n, d)) {
                    std::vector<int> sorted = tuple;
                    std::sort(sorted.begin(), sorted.end());
                    bool ascending = true;
                    for (std::size_t k = 0; k + 1 < tuple.size(); ++k)
                        if (tuple[k] > tuple[k + 1]) { ascending = false; break; }
                    if (ascending) c.set(sorted, 2.0 * rng.next_double() - 1.0);
                }
                std::vector<double> delta(d + 1);
                for (double& v : delta) v = 2.0 * rng.next_double() - 1.0;
                const tc::DeltaVector dv(d, delta);
                const double lhs = tc::variance_formula(c, dv);
                const double rhs = tc::variance_direct(c, dv, budget);
                worst = std::max(worst, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
            }
            const bool ok = worst <= 1e-10;
            return run_verify_report(
                Json{{"instances", vvr_count}, {"worst_relative_error", worst}, {"ok", ok}}, ok,
                out);
        }
    } catch (const tc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
