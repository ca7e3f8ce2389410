// qcnt: construct rank-1 quasicrystalline rings/ideals over real quadratic
// fields and evaluate their zeta/L/theta functions, modular invariants and
// trigonometry.  JSON on stdout (CSV/SVG where noted); machine-readable
// diagnostics on stderr.  Exit codes: 0 ok, 2 invalid input, 3
// completeness/precision failures.

#include "qcnt/errors.hpp"
#include "qcnt/field.hpp"
#include "qcnt/modelset.hpp"
#include "qcnt/modular.hpp"
#include "qcnt/qctrig.hpp"
#include "qcnt/theta.hpp"
#include "qcnt/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace qcnt;

namespace {

struct CommonOpts {
    long d = 5;
    std::string x = "0";
    std::string w;  // plain rational window radius overrides x
    bool closed = false;
    bool lattice = false;
    std::string xi = "1";
    std::string format;  // per-subcommand default: modelset csv, curve svg, else json
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--d", o.d, "squarefree d of Q(sqrt d)");
    cmd->add_option("--x", o.x, "window exponent x (exact fraction p/q): radius theta^-x");
    cmd->add_option("--w", o.w, "plain rational window radius (overrides --x)");
    cmd->add_flag("--closed", o.closed, "closed window |.| <= w (default strict for --x)");
    cmd->add_flag("--lattice", o.lattice, "degenerate lattice mode xi*Z");
    cmd->add_option("--xi", o.xi, "lattice spacing (exact rational)");
    cmd->add_option("--format", o.format, "json|csv|svg where applicable");
    cmd->add_option("-o,--out", o.out_path, "write the artifact to a file instead of stdout");
}

ModelSetSpec make_spec(const CommonOpts& o) {
    if (o.lattice) return ModelSetSpec::lattice(parse_rational(o.xi));
    ModelSetSpec spec;
    spec.d = o.d;
    spec.ideal = ring_of_integers();
    if (!o.w.empty())
        spec.window.outer = BoundSpec{parse_rational(o.w), Rational(0), false};
    else
        spec.window.outer = BoundSpec{Rational(1), parse_rational(o.x), false};
    spec.window.strict = !o.closed;
    return spec;
}

json config_block(const CommonOpts& o) {
    json c;
    c["d"] = o.d;
    c["x"] = o.x;
    if (!o.w.empty()) c["w"] = o.w;
    c["closed"] = o.closed;
    c["lattice"] = o.lattice;
    if (o.lattice) c["xi"] = o.xi;
    return c;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw InvalidInputError("cannot open output file: " + o.out_path);
        f << text;
    }
}

void emit_json(const CommonOpts& o, json j) {
    j["schema"] = "qcnt/1";
    emit(o, j.dump(2) + "\n");
}

Complex parse_complex(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

json eval_json(const EvalResult& r, Complex s) {
    json j;
    j["s"] = {{"re", s.real()}, {"im", s.imag()}};
    j["value_re"] = r.value.real();
    j["value_im"] = r.value.imag();
    j["error_bound"] = r.error_bound;
    j["rigorous"] = r.rigorous;
    j["method"] = r.method;
    j["cutoff"] = r.cutoff;
    return j;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"quasicrystalline rings, ideals and their analytic invariants"};
    app.require_subcommand(1);

    CommonOpts o;

    // field
    auto* cmd_field = app.add_subcommand("field", "field data: fundamental unit, discriminant");
    add_common(cmd_field, o);

    // modelset
    double range = 10;
    bool signed_range = false;
    auto* cmd_ms = app.add_subcommand("modelset", "enumerate a model-set truncation (CSV default)");
    add_common(cmd_ms, o);
    cmd_ms->add_option("--range", range, "physical truncation 0 < value <= range");
    cmd_ms->add_flag("--signed", signed_range, "enumerate |value| <= range");

    // zeta
    std::string s_text = "4";
    std::string method = "direct";
    double cutoff = 1e4;
    int ibp_depth = 3;
    auto* cmd_zeta = app.add_subcommand("zeta", "zeta_a(s) by direct sum / continuation / deep IBP");
    add_common(cmd_zeta, o);
    cmd_zeta->add_option("--s", s_text, "s (re or re,im)");
    cmd_zeta->add_option("--method", method, "direct|continued|deep");
    cmd_zeta->add_option("--cutoff", cutoff, "enumeration range");
    cmd_zeta->add_option("--k", ibp_depth, "IBP depth for deep (<= 4)");

    // lambda
    double weight_c = 1.0;
    std::string constant_mode = "self";
    auto* cmd_lambda = app.add_subcommand("lambda", "completed Lambda(m,chi,s) and its functional equation");
    add_common(cmd_lambda, o);
    cmd_lambda->add_option("--s", s_text, "s (re or re,im)");
    cmd_lambda->add_option("--c", weight_c, "Gaussian weight parameter");
    cmd_lambda->add_option("--constant", constant_mode, "self|2pi Poisson constant");

    // theta-check
    double t_par = 1.0;
    auto* cmd_theta = app.add_subcommand("theta-check", "Poisson-Meyer functional equation residual");
    add_common(cmd_theta, o);
    cmd_theta->add_option("--t", t_par, "theta argument t > 0");
    cmd_theta->add_option("--c", weight_c, "Gaussian weight parameter");
    cmd_theta->add_option("--constant", constant_mode, "self|2pi Poisson constant");

    // j
    auto* cmd_j = app.add_subcommand("j", "modular invariant J, j of the truncated ideal");
    add_common(cmd_j, o);
    cmd_j->add_option("--cutoff", cutoff, "enumeration range for the zeta values");

    // jqt
    long n_max = 100000;
    long m_max = 8;
    auto* cmd_jqt = app.add_subcommand("jqt", "quantum modular invariant samples J_eps over eps = theta^-(x+m)");
    add_common(cmd_jqt, o);
    cmd_jqt->add_option("--m-max", m_max, "largest m in eps = theta^-(x+m)");
    cmd_jqt->add_option("--n-max", n_max, "integer range for Lambda_eps");

    // pink
    double pink_range = 50;
    long m_min = 1;
    std::string export_prefix;
    auto* cmd_pink = app.add_subcommand("pink", "Pink's theorem: scaled-set and J-value convergence");
    add_common(cmd_pink, o);
    cmd_pink->add_option("--m-min", m_min, "first m");
    cmd_pink->add_option("--m-max", m_max, "last m");
    cmd_pink->add_option("--range", pink_range, "Hausdorff comparison range");
    cmd_pink->add_option("--n-max", n_max, "integer range for the value part");
    cmd_pink->add_option("--export-sets", export_prefix, "CSV prefix for the scaled sets");

    // trig
    size_t zero_count = 64;
    size_t pi_terms = 0;
    std::vector<double> eval_points;
    auto* cmd_trig = app.add_subcommand("trig", "absolute sine/cosine, cosine zeros and the Wallis constant");
    add_common(cmd_trig, o);
    cmd_trig->add_option("--range", range, "point-set truncation");
    cmd_trig->add_option("--zeros", zero_count, "number of cosine zeros to locate");
    cmd_trig->add_option("--pi-terms", pi_terms, "Wallis product length (0 = all available)");
    cmd_trig->add_option("--eval", eval_points, "evaluate s, c at these x");

    // curve
    double x_max = 20;
    size_t samples_n = 2000;
    auto* cmd_curve = app.add_subcommand("curve", "image of [0, x-max] under e(ix) (SVG or CSV)");
    add_common(cmd_curve, o);
    cmd_curve->add_option("--range", range, "point-set truncation");
    cmd_curve->add_option("--x-max", x_max, "right endpoint of the sampled segment");
    cmd_curve->add_option("--samples", samples_n, "number of samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits 0; usage errors exit 2
    }

    PoissonConstant pmode =
        constant_mode == "2pi" ? PoissonConstant::two_pi : PoissonConstant::self_consistent;
    if (constant_mode != "2pi" && constant_mode != "self")
        throw InvalidInputError("--constant must be self or 2pi");

    QuadraticField K;
    ModelSetSpec spec = make_spec(o);
    if (!o.lattice) K = make_field(o.d);

    if (*cmd_field) {
        json j;
        j["config"] = config_block(o);
        j["d"] = K.d;
        j["omega"] = K.omega_is_half ? "(1+sqrt(d))/2" : "sqrt(d)";
        j["disc"] = K.disc.convert_to<long long>();
        j["fu"] = {{"a", K.fu.a.convert_to<double>()}, {"b", K.fu.b.convert_to<double>()},
                   {"value", K.embed_value(K.fu)}, {"conj", K.embed_conj(K.fu)}};
        j["fu_norm"] = K.fu_norm;
        j["zt_equals_ok"] = K.zt_equals_ok;
        emit_json(o, j);
        return 0;
    }

    if (*cmd_ms) {
        PointCloud cloud = enumerate_modelset(K, spec, range, signed_range);
        if (o.format.empty() || o.format == "csv") {
            std::ostringstream os;
            cloud_to_csv(os, K, cloud);
            emit(o, os.str());
        } else {
            json j;
            j["config"] = config_block(o);
            j["config"]["range"] = range;
            j["config"]["signed"] = signed_range;
            if (!o.lattice) j["window"] = spec.window.outer.describe(K);
            j["count"] = cloud.size();
            j["r_min"] = cloud.r_min;
            j["gap_max"] = cloud.gap_max;
            j["density_est"] = cloud.density_est;
            json pts = json::array();
            for (const auto& p : cloud.pts) {
                auto [a, b] = basis_coordinates(K, spec, p.el);
                pts.push_back({{"a", a.convert_to<long long>()},
                               {"b", b.convert_to<long long>()},
                               {"value", p.value},
                               {"conj_value", p.conj_value}});
            }
            j["points"] = pts;
            emit_json(o, j);
        }
        return 0;
    }

    if (*cmd_zeta) {
        Complex s = parse_complex(s_text);
        PointCloud cloud = enumerate_modelset(K, spec, cutoff);
        EvalResult r;
        if (method == "direct")
            r = zeta_direct(cloud, s);
        else if (method == "continued")
            r = zeta_continued(cloud, s);
        else if (method == "deep")
            r = zeta_deep(cloud, s, ibp_depth);
        else
            throw InvalidInputError("unknown zeta method: " + method);
        json j = eval_json(r, s);
        j["config"] = config_block(o);
        j["config"]["cutoff"] = cutoff;
        j["config"]["method"] = method;
        emit_json(o, j);
        return 0;
    }

    if (*cmd_lambda) {
        Complex s = parse_complex(s_text);
        WeightSpec w{weight_c};
        EvalResult r = lambda_completed(K, spec, w, s, pmode);
        json j;
        j["config"] = config_block(o);
        j["config"]["c"] = weight_c;
        j["config"]["constant"] = constant_mode;
        j["s"] = {{"re", s.real()}, {"im", s.imag()}};
        j["value"] = {{"re", r.value.real()}, {"im", r.value.imag()}};
        j["method"] = r.method;
        if (s.real() > 1.0) {
            j["residual_functional_eq"] = lambda_fe_residual(K, spec, w, s, pmode);
        } else {
            j["residual_functional_eq"] = nullptr;
        }
        emit_json(o, j);
        return 0;
    }

    if (*cmd_theta) {
        WeightSpec w{weight_c};
        PoissonCheck pc = poisson_check(K, spec, w, t_par, pmode);
        json j;
        j["config"] = config_block(o);
        j["config"]["c"] = weight_c;
        j["t"] = t_par;
        j["lhs"] = pc.lhs;
        j["rhs"] = pc.rhs;
        j["rel_err"] = pc.rel_err;
        j["constant_used"] = pc.constant;
        j["cutoffs"] = {{"primal", pc.cutoff_primal}, {"dual", pc.cutoff_dual}};
        emit_json(o, j);
        return 0;
    }

    if (*cmd_j) {
        PointCloud cloud = enumerate_modelset(K, spec, cutoff);
        JInvariant inv = j_invariant(cloud);
        json j;
        j["config"] = config_block(o);
        j["config"]["cutoff"] = cutoff;
        j["J"] = inv.J;
        j["J_bound"] = inv.J_bound;
        j["j"] = inv.j_infinite ? json("inf") : json(inv.j);
        j["j_infinite"] = inv.j_infinite;
        emit_json(o, j);
        return 0;
    }

    if (*cmd_jqt) {
        Rational x = parse_rational(o.x);
        json steps = json::array();
        for (long m = 1; m <= m_max; ++m) {
            double eps = std::exp(-to_double(x + m) * std::log(K.embed_value(K.fu)));
            if (eps >= 0.5) continue;
            QuantumJStep st = j_eps(K, x + m, n_max);
            steps.push_back({{"m", m},
                             {"eps", st.eps},
                             {"J_eps", st.inv.J},
                             {"j_eps", st.inv.j_infinite ? json("inf") : json(st.inv.j)},
                             {"lambda_count", st.lambda_count},
                             {"zeta4", st.zeta4},
                             {"zeta6", st.zeta6}});
        }
        json j;
        j["config"] = config_block(o);
        j["config"]["n_max"] = n_max;
        j["theta"] = K.embed_value(K.fu);
        j["steps"] = steps;
        // the limit target J(a_x) of the eps = theta^-(x+m) family
        ModelSetSpec tgt = ModelSetSpec::unit_power_ideal(o.d, x, true);
        j["J_target"] = j_invariant(enumerate_modelset(K, tgt, 1500.0)).J;
        emit_json(o, j);
        return 0;
    }

    if (*cmd_pink) {
        Rational x = parse_rational(o.x);
        PinkReport set_rep = pink_set_check(K, x, m_min, m_max, pink_range);
        PinkReport val_rep = pink_value_check(K, x, m_max, n_max);
        json j;
        j["config"] = config_block(o);
        j["config"]["m_min"] = m_min;
        j["config"]["m_max"] = m_max;
        j["config"]["range"] = pink_range;
        j["config"]["n_max"] = n_max;
        j["set"] = {{"m", set_rep.m_values},
                    {"hausdorff", set_rep.hausdorff},
                    {"decay_ratios", set_rep.decay_ratios},
                    {"scaled_counts", set_rep.scaled_counts},
                    {"target_count", set_rep.target_count},
                    {"edge_buffer", set_rep.edge_buffer}};
        j["value"] = {{"m", val_rep.m_values},
                      {"J_eps", val_rep.J_eps},
                      {"gaps", val_rep.value_gaps},
                      {"J_target", val_rep.J_target}};
        if (val_rep.J_target_closed) j["value"]["J_target_closed"] = *val_rep.J_target_closed;
        if (!export_prefix.empty()) {
            for (long m : set_rep.m_values) {
                std::vector<double> s = pink_scaled_set(K, x, m, pink_range);
                std::ofstream f(export_prefix + "_m" + std::to_string(m) + ".csv");
                f << "value\n";
                char buf[64];
                for (double v : s) {
                    std::snprintf(buf, sizeof buf, "%.17g\n", v);
                    f << buf;
                }
            }
        }
        emit_json(o, j);
        return 0;
    }

    if (*cmd_trig) {
        PointCloud cloud = enumerate_modelset(K, spec, range);
        TrigTables tables = build_trig_tables(cloud);
        cos_zeros(tables, std::min(zero_count, tables.alphas.size() - 1));
        size_t terms = pi_terms == 0 ? tables.alphas.size() - 2 : pi_terms;
        TrigValue pi = pi_qc(tables, terms);
        json j;
        j["config"] = config_block(o);
        j["config"]["range"] = range;
        j["pi_qc"] = pi.value;
        j["pi_convergence"] = pi.rel_error;
        j["pi_terms"] = terms;
        j["alphas"] = std::vector<double>(tables.alphas.begin(),
                                          tables.alphas.begin() +
                                              std::min<size_t>(zero_count, tables.alphas.size()));
        j["betas"] = std::vector<double>(tables.betas.begin(),
                                         tables.betas.begin() +
                                             std::min<size_t>(zero_count, tables.betas.size()));
        json evals = json::array();
        for (double x : eval_points) {
            TrigValue s = s_abs(tables, x);
            TrigValue c = c_abs(tables, x);
            evals.push_back({{"x", x},
                             {"s", s.value},
                             {"s_err", s.rel_error},
                             {"c", c.value},
                             {"c_err", c.rel_error}});
        }
        j["evaluations"] = evals;
        emit_json(o, j);
        return 0;
    }

    if (*cmd_curve) {
        PointCloud cloud = enumerate_modelset(K, spec, range);
        TrigTables tables = build_trig_tables(cloud);
        auto samples = curve_samples(tables, 0.0, x_max, samples_n);
        if (o.format == "csv") {
            std::ostringstream os;
            os << "x,re,im\n";
            char buf[96];
            for (const auto& s : samples) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.x, s.z.real(),
                              s.z.imag());
                os << buf;
            }
            emit(o, os.str());
        } else {
            emit(o, curve_svg(samples));
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const InvalidInputError& e) {
        std::cerr << R"({"error":"invalid-input","what":")" << e.what() << "\"}\n";
        return 2;
    } catch (const ArithmeticError& e) {
        std::cerr << R"({"error":"arithmetic","what":")" << e.what() << "\"}\n";
        return 2;
    } catch (const CompletenessError& e) {
        std::cerr << R"({"error":"completeness","what":")" << e.what()
                  << "\",\"needed_range\":" << e.needed_range << "}\n";
        return 3;
    } catch (const PrecisionError& e) {
        std::cerr << R"({"error":"precision","what":")" << e.what() << "\"}\n";
        return 3;
    } catch (const ResourceError& e) {
        std::cerr << R"({"error":"resource","what":")" << e.what() << "\"}\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << R"({"error":"numeric","what":")" << e.what() << "\"}\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << R"({"error":"internal","what":")" << e.what() << "\"}\n";
        return 3;
    }
}
