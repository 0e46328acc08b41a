// Batch front end: machine-readable JSON reports plus optional CSV grid data.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mlt/calculus.hpp"
#include "mlt/catalog.hpp"
#include "mlt/inversion.hpp"
#include "mlt/representations.hpp"
#include "mlt/transform.hpp"
#include "mlt/widder.hpp"

using nlohmann::json;
using namespace mlt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitConfigError = 3;

[[noreturn]] void config_fail(const std::string& where, const std::string& msg) {
    std::cerr << "config error at " << where << ": " << msg << "\n";
    std::exit(kExitConfigError);
}

// --- grid / number parsing ----------------------------------------------

std::vector<double> parse_axis(const std::string& s) {
    const size_t c1 = s.find(':');
    if (c1 == std::string::npos) return {std::stod(s)};
    const size_t c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) config_fail("grid", "expected start:stop:step in '" + s + "'");
    const double start = std::stod(s.substr(0, c1));
    const double stop = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(s.substr(c2 + 1));
    if (!(step > 0.0) || stop < start) config_fail("grid", "bad range '" + s + "'");
    std::vector<double> axis;
    for (double x = start; x <= stop + 1e-12 * step; x += step) axis.push_back(x);
    return axis;
}

// `x`-joined per-coordinate axes, flattened lexicographically.
std::vector<TimePoint> parse_grid(const std::string& s, int n) {
    std::vector<std::vector<double>> axes;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t nx = s.find('x', pos);
        axes.push_back(parse_axis(s.substr(pos, nx == std::string::npos ? nx : nx - pos)));
        if (nx == std::string::npos) break;
        pos = nx + 1;
    }
    if (static_cast<int>(axes.size()) != n)
        config_fail("grid", "expected " + std::to_string(n) + " coordinate axes");
    std::vector<TimePoint> grid;
    std::vector<size_t> idx(axes.size(), 0);
    for (;;) {
        TimePoint t(axes.size());
        for (size_t i = 0; i < axes.size(); ++i) t[i] = axes[i][idx[i]];
        grid.push_back(std::move(t));
        int i = static_cast<int>(axes.size()) - 1;
        while (i >= 0 && ++idx[static_cast<size_t>(i)] == axes[static_cast<size_t>(i)].size())
            idx[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return grid;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// --- inline function specs ----------------------------------------------
// Per-coordinate sums of c*t^a*e^b*sin(w) / cos(w) terms (meaning
// c t^a e^{bt} sin(wt)), coordinates joined by 'x'.

struct InlineTerm {
    double c = 1.0;
    double a = 0.0;  // power of t
    double b = 0.0;  // exponential rate
    double w = 0.0;  // trig frequency, 0 = none
    bool is_sin = false;
};

InlineTerm parse_term(const std::string& s) {
    InlineTerm term;
    std::stringstream ss(s);
    std::string fac;
    while (std::getline(ss, fac, '*')) {
        if (fac.empty()) config_fail("inline", "empty factor in '" + s + "'");
        if (fac == "t") {
            term.a += 1.0;
        } else if (fac.rfind("t^", 0) == 0) {
            term.a += std::stod(fac.substr(2));
        } else if (fac.rfind("e^", 0) == 0) {
            term.b += std::stod(fac.substr(2));
        } else if (fac.rfind("sin(", 0) == 0 && fac.back() == ')') {
            term.w = std::stod(fac.substr(4, fac.size() - 5));
            term.is_sin = true;
        } else if (fac.rfind("cos(", 0) == 0 && fac.back() == ')') {
            term.w = std::stod(fac.substr(4, fac.size() - 5));
            term.is_sin = false;
        } else {
            try {
                term.c *= std::stod(fac);
            } catch (const std::exception&) {
                config_fail("inline", "unrecognized factor '" + fac + "'");
            }
        }
    }
    if (term.a <= -1.0) config_fail("inline", "power must exceed -1 for integrability");
    return term;
}

Func1D parse_coordinate(const std::string& s) {
    std::vector<InlineTerm> terms;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '+')) terms.push_back(parse_term(tok));
    if (terms.empty()) config_fail("inline", "empty coordinate spec");

    Func1D f;
    double M = 0.0, omega = 0.0, sing = 1.0;
    for (const auto& t : terms) {
        // t^a <= (a/e)^a e^t for a > 0.
        const double amp = t.a > 0.0 ? std::pow(t.a / M_E, t.a) : 1.0;
        M += std::abs(t.c) * amp;
        omega = std::max(omega, t.b + (t.a > 0.0 ? 1.0 : 0.0));
        sing = std::min(sing, t.a + 1.0);
    }
    f.env_M = std::max(M, 1e-300);
    f.env_omega = omega;
    f.sing_order = sing;
    f.eval = [terms](double t) {
        double acc = 0.0;
        for (const auto& q : terms) {
            double v = q.c;
            if (q.a != 0.0) v *= std::pow(t, q.a);
            if (q.b != 0.0) v *= std::exp(q.b * t);
            if (q.w != 0.0) v *= q.is_sin ? std::sin(q.w * t) : std::cos(q.w * t);
            acc += v;
        }
        return cplx{acc, 0.0};
    };
    return f;
}

EnvelopedFunction parse_inline(const std::string& s) {
    std::vector<Func1D> coords;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t nx = s.find('x', pos);
        coords.push_back(parse_coordinate(s.substr(pos, nx == std::string::npos ? nx : nx - pos)));
        if (nx == std::string::npos) break;
        pos = nx + 1;
    }
    std::vector<double> omega;
    double M = 1.0;
    for (const auto& c : coords) {
        omega.push_back(c.env_omega);
        M *= c.env_M;
    }
    return EnvelopedFunction::from_factors({std::move(coords)}, std::move(omega), M);
}

// --- config / reports ----------------------------------------------------

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json schema_doc() {
#ifdef MLT_SCHEMA_PATH
    std::ifstream in(MLT_SCHEMA_PATH);
    if (in) return json::parse(in);
#endif
    config_fail("schema", "run_config.schema.json not found");
}

// Minimal structural validation against the shipped schema: key whitelist,
// primitive types, enums.
void validate_config(const json& cfg) {
    const json schema = schema_doc();
    const json& props = schema.at("properties");
    for (const auto& req : schema.at("required"))
        if (!cfg.contains(req.get<std::string>()))
            config_fail("$." + req.get<std::string>(), "required key missing");
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (!props.contains(it.key())) config_fail("$." + it.key(), "unknown key");
        const json& p = props.at(it.key());
        const std::string ty = p.at("type");
        const bool ok = (ty == "string" && it.value().is_string()) ||
                        (ty == "integer" && it.value().is_number_integer()) ||
                        (ty == "number" && it.value().is_number());
        if (!ok) config_fail("$." + it.key(), "expected " + ty);
        if (p.contains("enum")) {
            bool hit = false;
            for (const auto& e : p.at("enum")) hit = hit || e == it.value();
            if (!hit) config_fail("$." + it.key(), "value not in enum");
        }
    }
}

json value_json(const cvec& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back({{"re", c.real()}, {"im", c.imag()}});
    return out;
}

struct Emitter {
    std::string out_path;
    std::string csv_path;
    json report;

    void write_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) const {
        if (csv_path.empty()) return;
        std::ofstream f(csv_path);
        for (size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
        f << "\n";
        f.precision(17);
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
            f << "\n";
        }
    }

    void flush() const {
        const std::string text = report.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            f << text;
        }
    }
};

const CatalogEntry* need_entry(const std::string& name) {
    try {
        return &catalog_get(name);
    } catch (const Error& e) {
        config_fail("entry", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplace-transform analysis toolbox"};
    app.require_subcommand(1);

    json cfg = json::object();
    std::string config_path;
    app.add_option("--config", config_path, "JSON RunConfig file (flags override)");

    auto opt_str = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                       const std::string& help) {
        sub->add_option_function<std::string>(
            flag, [&cfg, key](const std::string& v) { cfg[key] = v; }, help);
    };
    auto opt_int = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                       const std::string& help) {
        sub->add_option_function<long>(
            flag, [&cfg, key](long v) { cfg[key] = v; }, help);
    };
    auto opt_num = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                       const std::string& help) {
        sub->add_option_function<double>(
            flag, [&cfg, key](double v) { cfg[key] = v; }, help);
    };

    std::vector<CLI::App*> subs;
    for (const char* name : {"transform", "derivative", "widder-check", "invert", "represent",
                             "roundtrip", "catalog"}) {
        CLI::App* sub = app.add_subcommand(name);
        subs.push_back(sub);
        sub->add_option("--config", config_path, "JSON RunConfig file (flags override)");
        opt_str(sub, "--entry", "entry", "catalog entry name");
        opt_str(sub, "--out", "out", "JSON report path (default stdout)");
        opt_str(sub, "--csv", "csv", "CSV grid data path");
        opt_num(sub, "--tol", "tol", "pass/fail tolerance");
        opt_num(sub, "--quad-tol", "quad_tol", "quadrature tolerance");
        opt_int(sub, "--threads", "threads", "thread count override");
        opt_str(sub, "--seminorm", "seminorm", "comma-separated seminorm weights");
    }
    opt_str(subs[0], "--inline", "inline", "inline density spec");
    opt_str(subs[0], "--lambda", "lambda_grid", "abscissa grid start:stop:step, x-joined");
    opt_str(subs[1], "--lambda", "lambda_grid", "abscissa grid");
    opt_str(subs[1], "--order", "order", "comma-separated derivative order");
    opt_str(subs[1], "--method", "method", "closed-form | cauchy | finite-difference");
    opt_str(subs[2], "--omega", "omega", "growth rates (default: entry declaration)");
    opt_int(subs[2], "--vmax", "vmax", "max derivative order per coordinate");
    opt_str(subs[3], "--grid", "t_grid", "time grid");
    opt_int(subs[3], "--kmax", "kmax", "Post-Widder ladder cap");
    opt_str(subs[4], "--r", "r", "fractional orders, comma-separated");
    opt_str(subs[4], "--lambda", "lambda_grid", "abscissa grid");
    opt_str(subs[5], "--grid", "t_grid", "time grid");
    opt_int(subs[5], "--kmax", "kmax", "Post-Widder ladder cap");
    subs[6]->add_option_function<std::string>(
        "action", [&cfg](const std::string& v) { cfg["action"] = v; }, "list | show");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) config_fail("config", "cannot read " + config_path);
        json file_cfg;
        try {
            file_cfg = json::parse(in);
        } catch (const std::exception& e) {
            config_fail("config", e.what());
        }
        // flags win over file values
        file_cfg.update(cfg);
        cfg = std::move(file_cfg);
    }
    cfg["command"] = app.get_subcommands().front()->get_name();
    validate_config(cfg);

    auto sval = [&](const std::string& key, const std::string& dflt) {
        return cfg.contains(key) ? cfg.at(key).get<std::string>() : dflt;
    };
    auto nval = [&](const std::string& key, double dflt) {
        return cfg.contains(key) ? cfg.at(key).get<double>() : dflt;
    };
    auto ival = [&](const std::string& key, long dflt) {
        return cfg.contains(key) ? cfg.at(key).get<long>() : dflt;
    };

    if (cfg.contains("threads")) {
        const std::string t = std::to_string(ival("threads", 1));
        setenv("MLT_THREADS", t.c_str(), 1);
    }

    catalog_register_builtin();

    Emitter em;
    em.out_path = sval("out", "");
    em.csv_path = sval("csv", "");
    const std::string cmd = cfg.at("command");
    const double tol = nval("tol", cmd == "roundtrip" ? 1e-5 : (cmd == "represent" ? 1e-7 : 1e-6));
    const double quad_tol = nval("quad_tol", 1e-9);
    em.report["command"] = cmd;
    em.report["config_hash"] = hex64(fnv1a(cfg.dump()));
    em.report["tolerances"] = {{"tol", tol}, {"quad_tol", quad_tol}};

    int exit_code = kExitOk;
    try {
        if (cmd == "catalog") {
            const std::string action = sval("action", "list");
            if (action == "list") {
                em.report["entries"] = catalog_list();
                for (const auto& name : catalog_list()) std::cerr << name << "\n";
            } else if (action == "show") {
                const CatalogEntry* e = need_entry(sval("entry", ""));
                em.report["entry"] = {{"name", e->name},       {"n", e->n},
                                      {"d", e->d},             {"has_oracle", e->has_oracle},
                                      {"singular", e->singular_density},
                                      {"oscillatory", e->oscillatory},
                                      {"note", e->note}};
            } else {
                config_fail("action", "expected list or show");
            }
        } else if (cmd == "transform") {
            EnvelopedFunction f;
            if (cfg.contains("inline")) {
                f = parse_inline(sval("inline", ""));
            } else {
                f = need_entry(sval("entry", ""))->density;
            }
            const auto grid = parse_grid(sval("lambda_grid", "1:3:1"), f.n);
            json results = json::array();
            std::vector<std::vector<double>> rows;
            bool ok = true;
            for (const auto& pt : grid) {
                std::vector<cplx> lambda(pt.begin(), pt.end());
                const TransformResult tr = laplace_forward(f, lambda, quad_tol);
                ok = ok && tr.status != TransformResult::Status::failed;
                results.push_back({{"lambda", pt},
                                   {"value", value_json(tr.value)},
                                   {"tail_bound", tr.tail_bound},
                                   {"status", to_string(tr.status)}});
                std::vector<double> row(pt.begin(), pt.end());
                for (const auto& c : tr.value) {
                    row.push_back(c.real());
                    row.push_back(c.imag());
                }
                rows.push_back(std::move(row));
            }
            em.report["results"] = results;
            std::vector<std::string> header;
            for (int i = 0; i < f.n; ++i) header.push_back("lambda" + std::to_string(i + 1));
            for (int j = 0; j < f.d; ++j) {
                header.push_back("re" + std::to_string(j + 1));
                header.push_back("im" + std::to_string(j + 1));
            }
            em.write_csv(header, rows);
            if (!ok) exit_code = kExitCheckFailed;
        } else if (cmd == "derivative") {
            const CatalogEntry* e = need_entry(sval("entry", ""));
            if (!e->has_oracle) config_fail("entry", "entry has no oracle");
            const auto grid = parse_grid(sval("lambda_grid", "2"), e->n);
            const auto ord = parse_list(sval("order", "1"));
            MultiIndex v(ord.begin(), ord.end());
            const std::string method = sval("method", "closed-form");
            DerivMethod dm = method == "cauchy" ? DerivMethod::cauchy
                           : method == "finite-difference" ? DerivMethod::finite_difference
                                                           : DerivMethod::closed_form;
            json results = json::array();
            for (const auto& pt : grid) {
                std::vector<cplx> lambda(pt.begin(), pt.end());
                const ScaledVec dv = mixed_derivative(e->oracle, lambda, v, dm);
                results.push_back({{"lambda", pt},
                                   {"order", v},
                                   {"mantissa", value_json(dv.m)},
                                   {"log_scale", dv.log_scale}});
            }
            em.report["method"] = method;
            em.report["results"] = results;
        } else if (cmd == "widder-check") {
            const CatalogEntry* e = need_entry(sval("entry", ""));
            if (!e->has_oracle) config_fail("entry", "entry has no oracle");
            GrowthVector omega;
            if (cfg.contains("omega")) {
                omega.omega = parse_list(sval("omega", ""));
            } else {
                omega.omega = e->oracle.omega;
            }
            if (static_cast<int>(omega.omega.size()) != e->n)
                config_fail("omega", "length must match dimension");
            const int vmax = static_cast<int>(ival("vmax", 10));
            std::vector<std::vector<cplx>> axes;
            for (double w : omega.omega) axes.push_back(default_lambda_axis(w));
            Seminorm p{std::vector<double>(static_cast<size_t>(e->d), 1.0)};
            if (cfg.contains("seminorm")) p.w = parse_list(sval("seminorm", ""));
            const CertificateRecord rec =
                certify(e->oracle, omega, axes, MultiIndex(static_cast<size_t>(e->n), vmax), p);
            em.report["M_hat"] = rec.M_hat;
            em.report["verdict"] = to_string(rec.verdict);
            em.report["argmax_v"] = rec.argmax_v;
            em.report["description"] = rec.description;
            if (rec.verdict != Verdict::certified_at_level) exit_code = kExitCheckFailed;
        } else if (cmd == "invert" || cmd == "roundtrip") {
            const CatalogEntry* e = need_entry(sval("entry", ""));
            if (!e->has_oracle) config_fail("entry", "entry has no oracle");
            const auto grid = parse_grid(sval("t_grid", "0.5:2:0.5"), e->n);
            InvertOptions opt;
            opt.k_max = ival("kmax", 400);
            opt.tol = cmd == "invert" ? tol : 1e-6;
            const auto nodes = invert(e->oracle, grid, opt);
            json results = json::array();
            std::vector<std::vector<double>> rows;
            double max_err = 0.0;
            bool all_conv = true;
            for (const auto& node : nodes) {
                std::vector<double> row(node.t.begin(), node.t.end());
                json rec = {{"t", node.t},
                            {"value", value_json(node.value)},
                            {"delta", node.delta},
                            {"converged", node.converged}};
                all_conv = all_conv && node.converged;
                if (cmd == "roundtrip") {
                    const cvec truth = e->density.eval(node.t);
                    const double err = cvec_dist_sup(truth, node.value);
                    max_err = std::max(max_err, err);
                    rec["reference"] = value_json(truth);
                    rec["error"] = err;
                    for (size_t j = 0; j < truth.size(); ++j) {
                        row.push_back(truth[j].real());
                        row.push_back(truth[j].imag());
                    }
                }
                for (const auto& c : node.value) {
                    row.push_back(c.real());
                    row.push_back(c.imag());
                }
                row.push_back(cmd == "roundtrip" ? cvec_dist_sup(e->density.eval(node.t), node.value)
                                                 : node.delta);
                rows.push_back(std::move(row));
                results.push_back(std::move(rec));
            }
            em.report["results"] = results;
            std::vector<std::string> header;
            for (int i = 0; i < e->n; ++i) header.push_back("t" + std::to_string(i + 1));
            if (cmd == "roundtrip")
                for (int j = 0; j < e->d; ++j) {
                    header.push_back("f_re" + std::to_string(j + 1));
                    header.push_back("f_im" + std::to_string(j + 1));
                }
            for (int j = 0; j < e->d; ++j) {
                header.push_back("fhat_re" + std::to_string(j + 1));
                header.push_back("fhat_im" + std::to_string(j + 1));
            }
            header.push_back(cmd == "roundtrip" ? "error" : "delta");
            em.write_csv(header, rows);
            if (cmd == "roundtrip") {
                em.report["max_error"] = max_err;
                if (max_err > tol) exit_code = kExitCheckFailed;
            } else if (!all_conv) {
                exit_code = kExitCheckFailed;
            }
        } else if (cmd == "represent") {
            const CatalogEntry* e = need_entry(sval("entry", ""));
            if (!e->has_oracle) config_fail("entry", "entry has no oracle");
            auto r = parse_list(sval("r", "0.5"));
            if (static_cast<int>(r.size()) != e->n) config_fail("r", "length must match dimension");
            const RepresentationBundle b = build_f_r(e->density, r, quad_tol);
            std::vector<std::vector<cplx>> lambda_pts;
            if (cfg.contains("lambda_grid")) {
                for (const auto& pt : parse_grid(sval("lambda_grid", ""), e->n))
                    lambda_pts.emplace_back(pt.begin(), pt.end());
            } else {
                for (double s : {0.7, 1.3, 2.1}) {
                    std::vector<cplx> lambda;
                    for (double w : e->density.omega) lambda.emplace_back(std::max(w, 0.0) + s, 0.0);
                    lambda_pts.push_back(std::move(lambda));
                }
            }
            Seminorm p{std::vector<double>(static_cast<size_t>(e->d), 1.0)};
            if (cfg.contains("seminorm")) p.w = parse_list(sval("seminorm", ""));
            const double prc1 = verify_prc1(b, e->oracle, lambda_pts, quad_tol);
            std::vector<TimePoint> t_grid;
            for (double t : {0.5, 1.0, 2.0}) t_grid.push_back(TimePoint(static_cast<size_t>(e->n), t));
            const double adf = adf_identity_check(b, p, t_grid, quad_tol);
            em.report["r"] = r;
            em.report["prc1_residual"] = prc1;
            em.report["adf_residual"] = adf;
            if (prc1 > tol || adf > tol) exit_code = kExitCheckFailed;
        }
    } catch (const Error& e) {
        em.report["error"] = {{"code", e.code()}, {"message", e.what()}};
        em.flush();
        std::cerr << e.what() << "\n";
        return kExitCheckFailed;
    }

    em.report["pass"] = exit_code == kExitOk;
    em.flush();
    return exit_code;
}
