#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netlimit/axioms.hpp"
#include "netlimit/certificate.hpp"
#include "netlimit/combinators.hpp"
#include "netlimit/directions.hpp"
#include "netlimit/envelope.hpp"
#include "netlimit/expr.hpp"
#include "netlimit/json_io.hpp"

namespace {

constexpr int kExitOk = 0;            // Converges / all checks pass
constexpr int kExitUsage = 1;         // bad arguments, parse failures
constexpr int kExitExtended = 2;      // divergence, oscillation, failed checks
constexpr int kExitInconclusive = 3;  // estimator gave up
constexpr int kExitEvaluation = 4;    // function produced no usable values
constexpr int kExitCertification = 5; // some epsilon cannot be certified

double parse_real(const std::string& text, const char* field) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw netlimit::ParamError(field, std::string("'") + text +
                                              "' is not a real number (field " +
                                              field + ")");
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

// left:<x0> | right:<x0> | both:<x0> | inf | -inf | seq | riemann:<a>:<b>
netlimit::DirectionPtr parse_dir_spec(const std::string& spec,
                                      netlimit::TagRule tags) {
    auto parts = split(spec, ':');
    const std::string& head = parts[0];
    if (head == "inf" && parts.size() == 1) return netlimit::to_infinity();
    if (head == "-inf" && parts.size() == 1) return netlimit::to_minus_infinity();
    if (head == "seq" && parts.size() == 1) return netlimit::naturals();
    if ((head == "left" || head == "right" || head == "both") && parts.size() == 2) {
        double x0 = parse_real(parts[1], "dir");
        if (head == "left") return netlimit::left_at(x0);
        if (head == "right") return netlimit::right_at(x0);
        return netlimit::two_sided_at(x0);
    }
    if (head == "riemann" && parts.size() == 3) {
        double a = parse_real(parts[1], "dir");
        double b = parse_real(parts[2], "dir");
        return netlimit::partitions_of(a, b, tags);
    }
    throw netlimit::ParamError(
        "dir", "'" + spec +
                   "' is not a direction; expected left:<x0>, right:<x0>, "
                   "both:<x0>, inf, -inf, seq, or riemann:<a>:<b>");
}

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> eps;
    for (const std::string& part : split(text, ','))
        eps.push_back(parse_real(part, "eps"));
    return eps;
}

netlimit::TagRule parse_tag_rule(const std::string& name) {
    if (name == "left") return netlimit::TagRule::Left;
    if (name == "mid") return netlimit::TagRule::Midpoint;
    if (name == "right") return netlimit::TagRule::Right;
    throw netlimit::ParamError("tags", "'" + name +
                                           "' is not a tag rule; expected "
                                           "left, mid, or right");
}

// The function under study along a direction: expressions evaluate at real
// points directly; along the partition direction the expression is integrated
// against g(x) = x, so the limit is the limit of its Riemann sums.
netlimit::Net build_net(const netlimit::Expr& e, const std::string& text,
                        const netlimit::DirectionPtr& dir) {
    if (dir->kind() == netlimit::DirKind::PartitionsOf)
        return netlimit::riemann_stieltjes_net([e](double x) { return e(x); },
                                               [](double x) { return x; }, *dir);
    return netlimit::expr_net(e, text);
}

std::string fixed6(double v) {
    char buf[64];
    if (v == 0.0 || (std::abs(v) >= 1e-4 && std::abs(v) < 1e9))
        std::snprintf(buf, sizeof(buf), "%.6f", v);
    else
        std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string bound_text(double b) {
    if (b == 0.0) return "0";
    if (b < 1e-9) return "<1e-9";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", b);
    return buf;
}

int verdict_exit(netlimit::VerdictKind kind) {
    switch (kind) {
        case netlimit::VerdictKind::Converges:
            return kExitOk;
        case netlimit::VerdictKind::Inconclusive:
            return kExitInconclusive;
        default:
            return kExitExtended;
    }
}

void print_verdict_human(const netlimit::EstimateResult& result) {
    const netlimit::LimitVerdict& v = result.verdict;
    switch (v.kind) {
        case netlimit::VerdictKind::Converges:
            std::cout << "Converges: " << fixed6(v.value) << " (±"
                      << bound_text(result.trace.error_bound()) << ")\n";
            return;
        case netlimit::VerdictKind::DivergesToPlusInfinity:
            std::cout << "Diverges: to +infinity\n";
            return;
        case netlimit::VerdictKind::DivergesToMinusInfinity:
            std::cout << "Diverges: to -infinity\n";
            return;
        case netlimit::VerdictKind::Oscillates: {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "Oscillates: liminf=%.3f limsup=%.3f\n",
                          v.liminf, v.limsup);
            std::cout << buf;
            return;
        }
        case netlimit::VerdictKind::Inconclusive:
            std::cout << "Inconclusive: " << v.reason << "\n";
            return;
    }
}

struct CommonFlags {
    double tol = 1e-9;
    std::size_t steps = 200;
    double ratio = 0.5;
    bool json = false;
};

netlimit::EstimateConfig to_config(const CommonFlags& flags) {
    netlimit::EstimateConfig cfg;
    cfg.tolerance = flags.tol;
    cfg.max_steps = flags.steps;
    cfg.ratio = flags.ratio;
    netlimit::validate(cfg);
    return cfg;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--tol", flags.tol, "Target envelope gap (default 1e-9)");
    cmd->add_option("--steps", flags.steps, "Chain length budget (default 200)");
    cmd->add_option("--ratio", flags.ratio,
                    "Chain refinement ratio in (0,1) (default 0.5)");
    cmd->add_flag("--json", flags.json, "Emit JSON instead of human text");
}

int cmd_limit(const std::string& expr_text, const std::string& dir_spec,
              const CommonFlags& flags) {
    netlimit::Expr e = netlimit::parse(expr_text);
    netlimit::DirectionPtr dir = parse_dir_spec(dir_spec, netlimit::TagRule::Midpoint);
    netlimit::EstimateConfig cfg = to_config(flags);
    netlimit::Net f = build_net(e, expr_text, dir);
    netlimit::EstimateResult result = netlimit::estimate_limit(f, *dir, cfg);

    if (flags.json) {
        netlimit::Json j = netlimit::estimate_json(result, *dir, cfg);
        j["config"]["direction"] = dir->describe();
        j["config"]["expression"] = expr_text;
        std::cout << netlimit::stable_dump(j);
    } else {
        print_verdict_human(result);
    }
    return verdict_exit(result.verdict.kind);
}

int cmd_certify(const std::string& expr_text, const std::string& dir_spec,
                double value, const std::string& eps_text, const CommonFlags& flags) {
    netlimit::Expr e = netlimit::parse(expr_text);
    netlimit::DirectionPtr dir = parse_dir_spec(dir_spec, netlimit::TagRule::Midpoint);
    netlimit::EstimateConfig cfg = to_config(flags);
    netlimit::Net f = build_net(e, expr_text, dir);
    std::vector<double> eps = parse_eps_list(eps_text);

    netlimit::Certificate cert =
        netlimit::epsilon_delta_certificate(f, *dir, value, eps, cfg);

    if (flags.json) {
        netlimit::Json j = netlimit::certificate_json(cert, *dir);
        j["config"] = netlimit::config_json(cfg);
        j["config"]["direction"] = dir->describe();
        j["config"]["expression"] = expr_text;
        std::cout << netlimit::stable_dump(j);
    } else {
        std::cout << "certified limit " << fixed6(cert.limit) << " along "
                  << dir->describe() << "\n";
        for (const netlimit::CertificateEntry& entry : cert.entries) {
            std::cout << "  eps " << sig6(entry.epsilon) << ": " << cert.delta_label
                      << " = " << sig6(entry.delta) << " (anchor at "
                      << sig6(dir->progress(entry.anchor)) << ", " << entry.samples
                      << " samples verified)\n";
        }
    }
    return kExitOk;
}

int cmd_riemann(const std::string& f_text, const std::string& a_text,
                const std::string& b_text, const std::string& g_text,
                const std::string& tags_text, const CommonFlags& flags) {
    double a = parse_real(a_text, "a");
    double b = parse_real(b_text, "b");
    netlimit::Expr f_expr = netlimit::parse(f_text);
    netlimit::Expr g_expr = netlimit::parse(g_text);
    netlimit::DirectionPtr dir = netlimit::partitions_of(a, b, parse_tag_rule(tags_text));
    netlimit::EstimateConfig cfg = to_config(flags);

    netlimit::Net sums = netlimit::riemann_stieltjes_net(
        [f_expr](double x) { return f_expr(x); },
        [g_expr](double x) { return g_expr(x); }, *dir);
    netlimit::EstimateResult result = netlimit::estimate_limit(sums, *dir, cfg);

    if (flags.json) {
        netlimit::Json j = netlimit::estimate_json(result, *dir, cfg);
        j["config"]["direction"] = dir->describe();
        j["config"]["expression"] = f_text;
        j["config"]["integrator"] = g_text;
        j["config"]["tags"] = tags_text;
        std::cout << netlimit::stable_dump(j);
    } else {
        print_verdict_human(result);
        if (!result.trace.empty())
            std::cout << "final mesh: " << sig6(dir->progress(result.trace.last().x))
                      << "\n";
    }
    return verdict_exit(result.verdict.kind);
}

std::uint64_t default_seed() {
    const char* env = std::getenv("NETLIMIT_SEED");
    if (env == nullptr || *env == '\0') return 42;
    std::uint64_t seed = 0;
    const char* end = env + std::string(env).size();
    auto [ptr, ec] = std::from_chars(env, end, seed);
    if (ec != std::errc() || ptr != end)
        throw netlimit::ParamError(
            "NETLIMIT_SEED",
            std::string("'") + env + "' is not an unsigned integer seed");
    return seed;
}

int cmd_axioms(const std::string& dirs_csv, std::uint64_t seed,
               const CommonFlags& flags) {
    std::vector<netlimit::DirectionPtr> dirs;
    for (const std::string& spec : split(dirs_csv, ','))
        dirs.push_back(parse_dir_spec(spec, netlimit::TagRule::Midpoint));
    netlimit::EstimateConfig cfg = to_config(flags);

    std::vector<netlimit::AxiomReport> reports =
        netlimit::run_all(netlimit::default_operators(), dirs, seed, cfg);
    bool passed = netlimit::all_passed(reports);

    if (flags.json) {
        netlimit::Json j;
        j["axiom_reports"] = netlimit::axiom_reports_json(reports);
        j["seed"] = seed;
        j["passed"] = passed;
        std::cout << netlimit::stable_dump(j);
    } else {
        std::size_t total = 0;
        std::size_t ok = 0;
        for (const netlimit::AxiomReport& r : reports) {
            ++total;
            ok += r.passed() ? 1 : 0;
            char line[256];
            std::snprintf(line, sizeof(line), "[%s] %-20s along %-28s %zu cases",
                          r.passed() ? "PASS" : "FAIL", r.axiom.c_str(),
                          r.direction.c_str(), r.cases);
            std::cout << line;
            if (!r.passed()) std::cout << ", " << r.violations.size() << " violations";
            std::cout << "\n";
            for (const netlimit::AxiomViolation& v : r.violations)
                std::cout << "    " << v.function << "\n      expected " << v.expected
                          << "\n      observed " << v.observed << "\n";
        }
        std::cout << "summary: " << ok << "/" << total << " checks passed (seed "
                  << seed << ")\n";
    }
    return passed ? kExitOk : kExitExtended;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "netlimit: limits of real functions along directions -- envelope "
        "estimates, epsilon-delta certificates, Riemann sums, and property "
        "checks of the limit laws"};
    app.require_subcommand(1);

    std::string expr_text;
    std::string dir_spec;
    CommonFlags limit_flags;
    CLI::App* limit_cmd =
        app.add_subcommand("limit", "Estimate the limit of EXPR along a direction");
    limit_cmd->add_option("expr", expr_text, "Expression in x (alias n)")->required();
    limit_cmd
        ->add_option("--dir", dir_spec,
                     "Direction: left:<x0> right:<x0> both:<x0> inf -inf seq "
                     "riemann:<a>:<b>")
        ->required();
    add_common_flags(limit_cmd, limit_flags);

    std::string cert_expr;
    std::string cert_dir;
    double cert_value = 0.0;
    std::string cert_eps;
    CommonFlags cert_flags;
    CLI::App* certify_cmd = app.add_subcommand(
        "certify", "Certify a claimed limit with epsilon-delta anchors");
    certify_cmd->add_option("expr", cert_expr, "Expression in x (alias n)")
        ->required();
    certify_cmd->add_option("--dir", cert_dir, "Direction (as for limit)")
        ->required();
    certify_cmd->add_option("--value", cert_value, "Claimed limit")->required();
    certify_cmd
        ->add_option("--eps", cert_eps, "Comma-separated epsilon list, e.g. 0.1,0.01")
        ->required();
    add_common_flags(certify_cmd, cert_flags);

    std::string riemann_f;
    std::string riemann_a;
    std::string riemann_b;
    std::string riemann_g = "x";
    std::string riemann_tags = "mid";
    CommonFlags riemann_flags;
    riemann_flags.tol = 1e-6;  // Riemann sums are expensive per sample
    CLI::App* riemann_cmd = app.add_subcommand(
        "riemann", "Limit of Riemann-Stieltjes sums of EXPR over [A, B]");
    riemann_cmd->add_option("expr", riemann_f, "Integrand f(x)")->required();
    riemann_cmd->add_option("a", riemann_a, "Left endpoint")->required();
    riemann_cmd->add_option("b", riemann_b, "Right endpoint")->required();
    riemann_cmd->add_option("--g", riemann_g, "Integrator g(x) (default x)");
    riemann_cmd->add_option("--tags", riemann_tags,
                            "Tag rule: left, mid, or right (default mid)");
    add_common_flags(riemann_cmd, riemann_flags);

    std::string axioms_dirs = "left:0,right:0,both:0,inf,-inf,seq";
    std::uint64_t axioms_seed = 0;
    CommonFlags axioms_flags;
    CLI::App* axioms_cmd = app.add_subcommand(
        "axioms", "Run the limit-law property checks over a seeded corpus");
    axioms_cmd->add_option("--dirs", axioms_dirs,
                           "Comma-separated direction specs (default "
                           "left:0,right:0,both:0,inf,-inf,seq)");
    CLI::Option* seed_opt = axioms_cmd->add_option(
        "--seed", axioms_seed, "Corpus seed (default NETLIMIT_SEED or 42)");
    add_common_flags(axioms_cmd, axioms_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (limit_cmd->parsed()) return cmd_limit(expr_text, dir_spec, limit_flags);
        if (certify_cmd->parsed())
            return cmd_certify(cert_expr, cert_dir, cert_value, cert_eps, cert_flags);
        if (riemann_cmd->parsed())
            return cmd_riemann(riemann_f, riemann_a, riemann_b, riemann_g,
                               riemann_tags, riemann_flags);
        if (axioms_cmd->parsed()) {
            std::uint64_t seed = seed_opt->count() > 0 ? axioms_seed : default_seed();
            return cmd_axioms(axioms_dirs, seed, axioms_flags);
        }
    } catch (const netlimit::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const netlimit::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const netlimit::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const netlimit::CertificationFailure& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    } catch (const netlimit::EvaluationError& e) {
        std::cerr << "evaluation failed: " << e.what() << "\n";
        return kExitEvaluation;
    } catch (const netlimit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEvaluation;
    }
    return kExitUsage;
}
