// Command-line front end: verify (exact identity checks), simulate (leftmost
// fraction sampler with a KS report), converge (KS-vs-n diagnostic table).
// Exit codes: 0 pass, 1 checked failure, 2 usage error. Output is a pure
// function of the flags plus seed.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ocrp/ocrp.hpp"

namespace {

ocrp::Rational parse_alpha_exact(const std::string& text) {
    ocrp::Rational a;
    try {
        a = ocrp::parse_rational(text);
    } catch (const std::invalid_argument&) {
        throw std::domain_error("--alpha must be a rational p/q, got '" + text + "'");
    }
    if (!(a > 0 && a < 1)) throw std::domain_error("--alpha must lie strictly between 0 and 1");
    return a;
}

// p/q or decimal; returns the value and its canonical echo string
std::pair<double, std::string> parse_alpha_loose(const std::string& text) {
    if (text.find('/') != std::string::npos) {
        ocrp::Rational a = parse_alpha_exact(text);
        return {ocrp::to_double(a), ocrp::to_string(a)};
    }
    double v = 0;
    std::size_t used = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(v > 0 && v < 1))
        throw std::domain_error("--alpha must lie strictly between 0 and 1, got '" + text + "'");
    return {v, ocrp::format_double(v)};
}

void need(bool given, const char* what) {
    if (!given) throw std::domain_error(std::string("missing required flag ") + what);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

struct VerifyArgs {
    std::string subject;
    std::string alpha;
    std::int64_t n = -1;
    double t = 0.5;
    double tol = 1e-9;
    std::int64_t grid = 1001;
    std::int64_t m = 2;
    std::int64_t i = -1;
    std::int64_t k = -1;
    std::int64_t jmax = 50;
    std::string out;
};

int run_verify(const VerifyArgs& v) {
    ocrp::SimReport report;
    std::string csv;
    if (v.subject == "intertwining") {
        need(v.n >= 1, "--n");
        ocrp::Rational a = parse_alpha_exact(v.alpha);
        report = ocrp::verify_intertwining(v.n, a);
        if (!v.out.empty()) {
            auto kernel = ocrp::updown_kernel<ocrp::Rational>(
                v.n, ocrp::ChainParams<ocrp::Rational>(a, ocrp::Rational(0)));
            std::ostringstream s;
            ocrp::kernel_to_csv(kernel, s);
            csv = s.str();
        }
    } else if (v.subject == "recurrence") {
        need(v.n >= 1, "--n");
        if (v.n < 2) throw std::domain_error("recurrence requires --n >= 2");
        report = ocrp::verify_transition_recurrence(v.n, parse_alpha_exact(v.alpha));
    } else if (v.subject == "consistency") {
        need(v.n >= 1, "--n");
        report = ocrp::verify_stationary_consistency(v.n, parse_alpha_exact(v.alpha));
    } else if (v.subject == "generator") {
        need(v.n >= 1, "--n");
        report = ocrp::verify_generator_relation(v.n, parse_alpha_exact(v.alpha));
    } else if (v.subject == "generator-bernstein") {
        need(v.n >= 0, "--n");
        report = ocrp::verify_generator_on_bernstein(v.n, parse_alpha_exact(v.alpha));
    } else if (v.subject == "semigroup") {
        need(v.n >= 1, "--n");
        if (v.grid < 2) throw std::domain_error("--grid must be at least 2");
        report = ocrp::verify_semigroup_relation(v.n, parse_alpha_exact(v.alpha), v.t,
                                                 static_cast<std::size_t>(v.grid), v.tol);
    } else if (v.subject == "pieri") {
        need(v.i >= 0, "--i");
        need(v.k >= 0, "--k");
        need(v.n >= 0, "--n");
        report = ocrp::verify_pieri(v.i, v.k, v.n);
    } else if (v.subject == "eta") {
        report = ocrp::verify_eta_unboundedness(parse_alpha_exact(v.alpha), v.jmax);
    } else if (v.subject == "boundary") {
        if (v.m < 0) throw std::domain_error("--m must be nonnegative");
        ocrp::Rational a = parse_alpha_exact(v.alpha);
        report = ocrp::boundary_checks(ocrp::jacobi_h<ocrp::Rational>(v.m, a), a);
        report.param("m", v.m);
    } else if (v.subject == "spectrum") {
        need(v.n >= 1, "--n");
        ocrp::Rational a = parse_alpha_exact(v.alpha);
        report = ocrp::verify_spectrum(v.n, a);
        if (!v.out.empty()) {
            auto kernel = ocrp::leftmost_kernel_Q<ocrp::Rational>(v.n, a);
            std::ostringstream s;
            ocrp::kernel_to_csv(kernel, s);
            csv = s.str();
        }
    } else {
        throw std::domain_error("unknown verify subject '" + v.subject + "'");
    }
    if (!v.out.empty() && csv.empty())
        throw std::domain_error("--out applies to subjects intertwining and spectrum only");
    report.render(std::cout);
    if (!csv.empty()) write_file(v.out, csv);
    return report.ok ? 0 : 1;
}

struct SimulateArgs {
    std::string alpha;
    std::int64_t n = -1;
    double t = 0.0;
    std::int64_t samples = 10000;
    std::uint64_t seed = 42;
    std::string method = "q_chain";
    int threads = 0;
    std::string out;
};

int run_simulate(const SimulateArgs& s) {
    need(s.n >= 1, "--n");
    need(!s.alpha.empty(), "--alpha");
    auto [alpha, alpha_echo] = parse_alpha_loose(s.alpha);
    if (s.t < 0) throw std::domain_error("--t must be nonnegative");
    if (s.samples < 1) throw std::domain_error("--samples must be positive");
    if (s.n > 1000000) throw std::domain_error("--n beyond 10^6 is not supported");
    ocrp::LeftmostMethod method;
    if (s.method == "q_chain")
        method = ocrp::LeftmostMethod::q_chain;
    else if (s.method == "full_chain")
        method = ocrp::LeftmostMethod::full_chain;
    else
        throw std::domain_error("--method must be q_chain or full_chain");
    auto steps = static_cast<std::int64_t>(double(s.n) * double(s.n) * s.t);

    std::vector<double> values = ocrp::sample_leftmost_fractions(
        s.n, alpha, steps, s.samples, s.seed, s.threads, method);
    ocrp::KsReport ks = ocrp::ks_distance(values, 1 - alpha, alpha);
    double mean = 0;
    for (double x : values) mean += x;
    mean /= double(values.size());

    ocrp::SimReport report;
    report.command = "simulate";
    report.param("n", s.n);
    report.param("alpha", alpha_echo);
    report.param("t", ocrp::format_double(s.t));
    report.param("steps", steps);
    report.param("samples", s.samples);
    report.param("seed", static_cast<std::int64_t>(s.seed));
    report.param("method", s.method);
    report.metric_double("ks", ks.statistic);
    report.metric_double("beta_a", ks.beta_a);
    report.metric_double("beta_b", ks.beta_b);
    report.metric_double("mean_fraction", mean);
    report.render(std::cout);
    if (!s.out.empty()) {
        std::ostringstream csv;
        ocrp::write_samples_csv(csv, values, steps);
        write_file(s.out, csv.str());
    }
    return report.ok ? 0 : 1;
}

struct ConvergeArgs {
    std::string alpha;
    std::string n_list;
    double t = 0.1;
    std::int64_t samples = 10000;
    std::uint64_t seed = 42;
    int threads = 0;
};

int run_converge(const ConvergeArgs& c) {
    need(!c.alpha.empty(), "--alpha");
    need(!c.n_list.empty(), "--n-list");
    auto [alpha, alpha_echo] = parse_alpha_loose(c.alpha);
    if (c.samples < 1) throw std::domain_error("--samples must be positive");
    std::vector<std::int64_t> ns;
    std::stringstream parts(c.n_list);
    std::string item;
    while (std::getline(parts, item, ',')) {
        std::size_t used = 0;
        std::int64_t n = 0;
        try {
            n = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || n < 2)
            throw std::domain_error("--n-list entries must be integers >= 2, got '" + item + "'");
        ns.push_back(n);
    }
    if (ns.empty()) throw std::domain_error("--n-list is empty");

    std::vector<ocrp::ConvergenceRow> rows =
        ocrp::scaling_limit_diagnostic(alpha, ns, c.t, c.samples, c.seed, c.threads);
    std::cout << "n,steps,samples,ks,exact\n";
    for (const auto& row : rows)
        std::cout << row.n << ',' << row.steps << ',' << row.samples << ','
                  << ocrp::format_double(row.ks) << ',' << (row.exact ? 1 : 0) << '\n';
    std::cout << '\n';

    ocrp::SimReport report;
    report.command = "converge";
    report.param("alpha", alpha_echo);
    report.param("t", ocrp::format_double(c.t));
    report.param("samples", c.samples);
    report.param("seed", static_cast<std::int64_t>(c.seed));
    report.param("n_list", c.n_list);
    for (const auto& row : rows)
        report.metric_double("ks_n" + std::to_string(row.n), row.ks);
    report.require(ocrp::ks_monotone_with_slack(rows, 0.02),
                   "ks increases by more than 0.02 along n_list");
    report.render(std::cout);
    return report.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification and simulation toolkit for ordered Chinese restaurant up-down chains"};
    app.require_subcommand(1);

    VerifyArgs v;
    CLI::App* verify = app.add_subcommand(
        "verify", "exact identity checks (alpha must be a rational p/q)");
    verify->add_option("subject", v.subject,
                       "one of: intertwining, recurrence, consistency, generator, "
                       "generator-bernstein, semigroup, pieri, eta, boundary, spectrum")
        ->required();
    verify->add_option("--n", v.n, "chain size");
    verify->add_option("--alpha", v.alpha, "parameter alpha as p/q");
    verify->add_option("--t", v.t, "time for the semigroup check (default 0.5)");
    verify->add_option("--tol", v.tol, "tolerance for the semigroup check (default 1e-9)");
    verify->add_option("--grid", v.grid, "grid points for the semigroup check (default 1001)");
    verify->add_option("--m", v.m, "eigenpolynomial index for the boundary check (default 2)");
    verify->add_option("--i", v.i, "Bernstein lower index for pieri");
    verify->add_option("--k", v.k, "Bernstein degree for pieri");
    verify->add_option("--jmax", v.jmax, "highest power for the eta growth check (default 50)");
    verify->add_option("--out", v.out, "CSV path for the kernel matrix (intertwining, spectrum)");

    SimulateArgs s;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "sample the leftmost fraction and report its KS distance to Beta(1-alpha, alpha)");
    simulate->add_option("--n", s.n, "chain size")->required();
    simulate->add_option("--alpha", s.alpha, "parameter alpha as p/q or decimal")->required();
    simulate->add_option("--t", s.t, "chain time; floor(n^2 t) steps from stationarity (default 0)");
    simulate->add_option("--samples", s.samples, "number of replicas (default 10000)");
    simulate->add_option("--seed", s.seed, "master seed (default 42)");
    simulate->add_option("--method", s.method, "q_chain or full_chain (default q_chain)");
    simulate->add_option("--threads", s.threads, "worker threads, 0 = all (results unaffected)");
    simulate->add_option("--out", s.out, "CSV path for the samples");

    ConvergeArgs c;
    CLI::App* converge = app.add_subcommand(
        "converge", "KS distance to Beta(1-alpha, alpha) along a list of chain sizes");
    converge->add_option("--alpha", c.alpha, "parameter alpha as p/q or decimal")->required();
    converge->add_option("--n-list", c.n_list, "comma-separated chain sizes, each >= 2")->required();
    converge->add_option("--t", c.t, "chain time per row (default 0.1)");
    converge->add_option("--samples", c.samples, "replicas per sampled row (default 10000)");
    converge->add_option("--seed", c.seed, "master seed (default 42)");
    converge->add_option("--threads", c.threads, "worker threads, 0 = all (results unaffected)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(verify)) return run_verify(v);
        if (app.got_subcommand(simulate)) return run_simulate(s);
        return run_converge(c);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
