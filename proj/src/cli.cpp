#include "nchh/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nchh/bounds.hpp"
#include "nchh/errors.hpp"
#include "nchh/expr.hpp"
#include "nchh/report.hpp"

namespace nchh::cli {

namespace {

enum class Format { Pretty, Csv, Json };

struct RunConfig {
    std::string command;
    std::string rule = "trapezoid";
    std::optional<std::size_t> n;
    std::optional<std::size_t> n_min;
    std::optional<std::size_t> n_max;
    std::string a_text;
    std::string b_text;
    std::string f_text;
    std::string phi_text;
    std::string cls = "monotone";
    bool verify = false;
    bool n_free = false;
    bool limit_columns = false;
    Format format = Format::Pretty;
    std::string out_path;
    std::size_t grid = kDefaultGridPoints;
    std::size_t t_samples = kDefaultTSamples;
    std::uint64_t seed = 0;
    std::string timestamp;
    std::string corpus = "cli";
};

// Everything the numeric subcommands need, parsed from the config.
struct Inputs {
    Rule rule;
    Interval interval;
    std::optional<FunctionSpec> f;
    std::optional<ErrorFunction> phi;
    FunctionClass cls;
};

double parse_endpoint(const std::string& text, const char* flag) {
    ParseOptions options;
    options.variable = "";  // constants only
    try {
        return parse_expression(text, options)->evaluate(0.0);
    } catch (const nchh::ParseError& e) {
        throw nchh::ParseError(e.position(), std::string(flag) + ": " + e.detail());
    }
}

Inputs resolve(const RunConfig& cfg, bool need_f, bool need_phi) {
    const auto rule = rule_from_string(cfg.rule);
    if (!rule) throw nchh::ParseError(0, "unknown rule '" + cfg.rule + "'");
    const auto cls = class_from_string(cfg.cls);
    if (!cls) throw nchh::ParseError(0, "unknown class '" + cfg.cls + "'");
    Interval interval(parse_endpoint(cfg.a_text, "--a"), parse_endpoint(cfg.b_text, "--b"));
    Inputs in{*rule, interval, std::nullopt, std::nullopt, *cls};
    if (need_f) {
        if (cfg.f_text.empty()) throw InvalidArgument("--f is required");
        in.f = parse_function(cfg.f_text, cfg.seed);
    }
    if (need_phi) {
        if (cfg.phi_text.empty()) throw InvalidArgument("--phi is required");
        in.phi = parse_error_function(cfg.phi_text, interval.length());
    }
    return in;
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

nlohmann::ordered_json json_envelope(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["schema"] = report::kSchema;
    j["timestamp"] = cfg.timestamp.empty() ? report::utc_timestamp() : cfg.timestamp;
    j["corpus"] = cfg.corpus;
    j["command"] = cfg.command;
    j["seed"] = cfg.seed;
    return j;
}

void write_pretty(std::ostream& os, const BoundCertificate& c) {
    using report::real_short;
    os << "theorem      " << c.theorem << (c.stated ? "" : " (extended)") << "\n"
       << "rule         " << to_string(c.rule) << ", n = " << c.n << (c.n_free ? " (n-free bound)" : "") << "\n"
       << "interval     [" << real_short(c.a) << ", " << real_short(c.b) << "]\n"
       << "f            " << c.function << "\n"
       << "phi          " << c.phi << "\n"
       << "class        " << to_string(c.cls) << "\n"
       << "mean         " << real_short(c.mean) << "\n"
       << "envelope     [" << real_short(c.lower) << ", " << real_short(c.upper) << "]"
       << (c.empty_envelope ? " (empty)" : "") << "\n"
       << "margins      lower " << real_short(c.margin_lower) << ", upper " << real_short(c.margin_upper) << "\n"
       << "holds        " << yes_no(c.holds) << "\n";
    if (c.hypothesis != Hypothesis::NotChecked) os << "hypothesis   " << to_string(c.hypothesis) << "\n";
    for (const auto& note : c.notes) os << "note         " << note << "\n";
}

void write_pretty(std::ostream& os, const ClassReport& r) {
    using report::real_short;
    os << "class        " << to_string(r.cls) << "\n"
       << "verdict      " << (r.pass ? "pass" : "fail") << "\n"
       << "worst        " << real_short(r.worst_violation) << " (tol " << real_short(r.tol) << ")\n"
       << "witness      x = " << real_short(r.witness.x) << ", y = " << real_short(r.witness.y);
    if (r.witness.t) os << ", t = " << real_short(*r.witness.t);
    os << "\n"
       << "samples      " << r.samples_checked << "\n";
}

int cmd_integrate(const RunConfig& cfg, std::ostream& os) {
    const Inputs in = resolve(cfg, true, false);
    if (!cfg.n) throw InvalidArgument("--n is required");
    const auto result = integrate(in.rule, *in.f, in.interval, *cfg.n);
    switch (cfg.format) {
    case Format::Pretty:
        os << "rule   " << to_string(result.rule) << ", n = " << result.n << "\n"
           << "value  " << report::real_short(result.value) << "\n"
           << "mean   " << report::real_short(result.mean) << "\n";
        break;
    case Format::Csv:
        os << "rule,n,a,b,f,value,mean\n"
           << to_string(result.rule) << ',' << result.n << ',' << report::real17(in.interval.a()) << ','
           << report::real17(in.interval.b()) << ',' << report::csv_field(in.f->label()) << ','
           << report::real17(result.value) << ',' << report::real17(result.mean) << "\n";
        break;
    case Format::Json: {
        auto j = json_envelope(cfg);
        j["function"] = in.f->label();
        j["a"] = in.interval.a();
        j["b"] = in.interval.b();
        j["result"] = report::to_json(result);
        os << j.dump(2) << "\n";
        break;
    }
    }
    return kOk;
}

CertifyOptions certify_options(const RunConfig& cfg) {
    CertifyOptions options;
    options.verify = cfg.verify;
    options.n_free = cfg.n_free;
    options.grid_points = cfg.grid;
    options.t_samples = cfg.t_samples;
    return options;
}

int cmd_certify(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    const Inputs in = resolve(cfg, true, true);
    if (!cfg.n) throw InvalidArgument("--n is required");
    const auto cert = certify(*in.f, *in.phi, in.cls, in.rule, in.interval, *cfg.n, certify_options(cfg));
    if (cert.hypothesis == Hypothesis::Unverified) {
        err << "note: " << to_string(cert.cls) << " class check failed for " << cert.function << " with "
            << cert.phi << "; the envelope is not guaranteed\n";
    }
    switch (cfg.format) {
    case Format::Pretty:
        write_pretty(os, cert);
        if (cert.class_report) write_pretty(os, *cert.class_report);
        break;
    case Format::Csv:
        os << report::kCsvHeader << "\n" << report::csv_row(cert) << "\n";
        break;
    case Format::Json: {
        auto j = json_envelope(cfg);
        j["function"] = cert.function;
        j["certificate"] = report::to_json(cert);
        os << j.dump(2) << "\n";
        break;
    }
    }
    return cert.holds ? kOk : kViolated;
}

int cmd_check_class(const RunConfig& cfg, std::ostream& os) {
    const Inputs in = resolve(cfg, true, true);
    const auto r = verify_class(in.cls, *in.f, *in.phi, in.interval, cfg.grid, cfg.t_samples);
    switch (cfg.format) {
    case Format::Pretty:
        write_pretty(os, r);
        break;
    case Format::Csv: {
        os << "class,f,phi,a,b,verdict,worst_violation,x,y,t,samples_checked\n"
           << to_string(r.cls) << ',' << report::csv_field(in.f->label()) << ','
           << report::csv_field(in.phi->label()) << ',' << report::real17(in.interval.a()) << ','
           << report::real17(in.interval.b()) << ',' << (r.pass ? "pass" : "fail") << ','
           << report::real17(r.worst_violation) << ',' << report::real17(r.witness.x) << ','
           << report::real17(r.witness.y) << ',' << (r.witness.t ? report::real17(*r.witness.t) : "") << ','
           << r.samples_checked << "\n";
        break;
    }
    case Format::Json: {
        auto j = json_envelope(cfg);
        j["function"] = in.f->label();
        j["phi"] = in.phi->label();
        j["a"] = in.interval.a();
        j["b"] = in.interval.b();
        j["report"] = report::to_json(r);
        os << j.dump(2) << "\n";
        break;
    }
    }
    return r.pass ? kOk : kViolated;
}

struct SweepRow {
    BoundCertificate cert;
    double n2phi;
    double e_n;
};

int cmd_sweep(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    const Inputs in = resolve(cfg, true, true);
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (cfg.n_min || cfg.n_max) {
        if (!cfg.n_min || !cfg.n_max) throw InvalidArgument("--n-min and --n-max must be given together");
        lo = *cfg.n_min;
        hi = *cfg.n_max;
    } else if (cfg.n) {
        lo = hi = *cfg.n;
    } else {
        throw InvalidArgument("sweep needs --n-min/--n-max or --n");
    }
    if (lo == 0 || lo > hi) throw InvalidArgument("n range must satisfy 1 <= n-min <= n-max");

    std::optional<ClassReport> check;
    if (cfg.verify) check = verify_class(in.cls, *in.f, *in.phi, in.interval, cfg.grid, cfg.t_samples);

    CertifyOptions options = certify_options(cfg);
    options.verify = false;  // the class report is shared by every row
    std::vector<SweepRow> rows;
    for (std::size_t n = lo; n <= hi; ++n) {
        if (!admissible(in.rule, n)) {
            err << "warning: skipping n = " << n << ", not admissible for the " << to_string(in.rule) << " rule\n";
            continue;
        }
        SweepRow row{certify(*in.f, *in.phi, in.cls, in.rule, in.interval, n, options), 0.0, 0.0};
        if (check) {
            row.cert.class_report = check;
            row.cert.hypothesis = check->pass ? Hypothesis::Verified : Hypothesis::Unverified;
        }
        const double dn = static_cast<double>(n);
        row.n2phi = dn * dn * (*in.phi)(in.interval.length() / dn);
        row.e_n = e_n(*in.phi, in.interval, n).value;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParityError("no n in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is admissible for the " +
                          std::string(to_string(in.rule)) + " rule");
    }
    if (check && !check->pass) {
        err << "note: " << to_string(in.cls) << " class check failed; envelopes are not guaranteed\n";
    }

    bool all_hold = true;
    for (const auto& row : rows) all_hold = all_hold && row.cert.holds;

    switch (cfg.format) {
    case Format::Pretty: {
        os << "rule " << to_string(in.rule) << ", class " << to_string(in.cls) << ", f = " << in.f->label()
           << ", phi = " << in.phi->label() << "\n";
        os << "n\tmean\tlower\tupper\twidth\tholds\tn2phi\te_n\n";
        for (const auto& r : rows) {
            using report::real_short;
            os << r.cert.n << '\t' << real_short(r.cert.mean) << '\t' << real_short(r.cert.lower) << '\t'
               << real_short(r.cert.upper) << '\t' << real_short(r.cert.upper - r.cert.lower) << '\t'
               << yes_no(r.cert.holds) << '\t' << real_short(r.n2phi) << '\t' << real_short(r.e_n) << "\n";
        }
        break;
    }
    case Format::Csv:
        os << report::kCsvHeader << (cfg.limit_columns ? ",width,n2phi,e_n" : "") << "\n";
        for (const auto& r : rows) {
            os << report::csv_row(r.cert);
            if (cfg.limit_columns) {
                os << ',' << report::real17(r.cert.upper - r.cert.lower) << ',' << report::real17(r.n2phi) << ','
                   << report::real17(r.e_n);
            }
            os << "\n";
        }
        break;
    case Format::Json: {
        auto j = json_envelope(cfg);
        j["function"] = in.f->label();
        if (check) j["class_report"] = report::to_json(*check);
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            auto c = report::to_json(r.cert);
            c.erase("class_report");
            c["width"] = r.cert.upper - r.cert.lower;
            c["n2phi"] = r.n2phi;
            c["e_n"] = r.e_n;
            arr.push_back(std::move(c));
        }
        j["rows"] = std::move(arr);
        os << j.dump(2) << "\n";
        break;
    }
    }
    return all_hold ? kOk : kViolated;
}

int cmd_identities(const RunConfig& cfg, std::ostream& os) {
    if (!cfg.n_max || *cfg.n_max == 0) throw InvalidArgument("identities needs --n-max >= 1");
    const auto checks = identity_suite(*cfg.n_max);
    struct Tally {
        std::size_t checked = 0;
        std::size_t passed = 0;
        std::optional<std::uint64_t> first_failure;
    };
    std::map<std::string_view, Tally> tally;
    for (auto tag : kIdentityTags) tally[tag];
    bool all = true;
    for (const auto& c : checks) {
        auto& t = tally[c.tag];
        ++t.checked;
        if (c.pass) {
            ++t.passed;
        } else {
            all = false;
            if (!t.first_failure) t.first_failure = c.n;
        }
    }
    switch (cfg.format) {
    case Format::Pretty:
        for (auto tag : kIdentityTags) {
            const auto& t = tally[tag];
            os << tag << std::string(22 - tag.size(), ' ') << t.passed << "/" << t.checked << " passed";
            if (t.first_failure) os << " (first failure at n = " << *t.first_failure << ")";
            os << "\n";
        }
        break;
    case Format::Csv:
        os << "identity,checked,passed\n";
        for (auto tag : kIdentityTags) os << tag << ',' << tally[tag].checked << ',' << tally[tag].passed << "\n";
        break;
    case Format::Json: {
        auto j = json_envelope(cfg);
        j["n_max"] = *cfg.n_max;
        auto arr = nlohmann::ordered_json::array();
        for (auto tag : kIdentityTags) {
            arr.push_back({{"identity", tag}, {"checked", tally[tag].checked}, {"passed", tally[tag].passed}});
        }
        j["identities"] = std::move(arr);
        j["all_pass"] = all;
        os << j.dump(2) << "\n";
        break;
    }
    }
    return all ? kOk : kViolated;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_phi, bool needs_class) {
    sub->add_option("--a", cfg.a_text, "left endpoint (constant expression)")->required();
    sub->add_option("--b", cfg.b_text, "right endpoint (constant expression)")->required();
    sub->add_option("--f", cfg.f_text, "function of x")->required();
    if (needs_phi) sub->add_option("--phi", cfg.phi_text, "const:eps | pow:c,p | affine:c,d0 | expr:<d>")->required();
    if (needs_class) {
        sub->add_option("--class", cfg.cls, "monotone | holder | convex | affine")
            ->check(CLI::IsMember({"monotone", "holder", "convex", "affine"}));
    }
    sub->add_option("--seed", cfg.seed, "salt applied to noise() seeds");
}

void add_rule(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--rule", cfg.rule, "trapezoid | simpson | simpson38")
        ->check(CLI::IsMember({"trapezoid", "simpson", "simpson38"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "pretty";

    CLI::App app{"Newton-Cotes integral means with Hermite-Hadamard type envelopes", "nchh"};
    app.require_subcommand(1);

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", format, "pretty | csv | json")->check(CLI::IsMember({"pretty", "csv", "json"}));
        sub->add_option("--out", cfg.out_path, "write the report to a file");
        sub->add_option("--timestamp", cfg.timestamp, "timestamp recorded in JSON reports (default: now)");
        sub->add_option("--corpus", cfg.corpus, "corpus label recorded in JSON reports");
    };

    auto* integrate_cmd = app.add_subcommand("integrate", "apply a quadrature rule");
    add_rule(integrate_cmd, cfg);
    integrate_cmd->add_option("--n", cfg.n, "number of sub-intervals")->required();
    add_common(integrate_cmd, cfg, false, false);
    add_output(integrate_cmd);

    auto* certify_cmd = app.add_subcommand("certify", "compute a bound certificate");
    add_rule(certify_cmd, cfg);
    certify_cmd->add_option("--n", cfg.n, "number of sub-intervals")->required();
    add_common(certify_cmd, cfg, true, true);
    certify_cmd->add_flag("--verify", cfg.verify, "check class membership on a grid");
    certify_cmd->add_flag("--n-free", cfg.n_free, "use the n-independent bound (superadditive phi)");
    certify_cmd->add_option("--grid", cfg.grid, "class check grid points");
    certify_cmd->add_option("--t-samples", cfg.t_samples, "class check t samples");
    add_output(certify_cmd);

    auto* check_cmd = app.add_subcommand("check-class", "sample a class inequality");
    add_common(check_cmd, cfg, true, true);
    check_cmd->add_option("--grid", cfg.grid, "grid points");
    check_cmd->add_option("--t-samples", cfg.t_samples, "t samples for convex / affine");
    add_output(check_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "certificates over a range of n");
    add_rule(sweep_cmd, cfg);
    sweep_cmd->add_option("--n", cfg.n, "single n");
    sweep_cmd->add_option("--n-min", cfg.n_min, "first n");
    sweep_cmd->add_option("--n-max", cfg.n_max, "last n");
    add_common(sweep_cmd, cfg, true, true);
    sweep_cmd->add_flag("--verify", cfg.verify, "check class membership once");
    sweep_cmd->add_flag("--n-free", cfg.n_free, "use the n-independent bound (superadditive phi)");
    sweep_cmd->add_flag("--limit-columns", cfg.limit_columns, "append width,n2phi,e_n columns to CSV");
    sweep_cmd->add_option("--grid", cfg.grid, "class check grid points");
    sweep_cmd->add_option("--t-samples", cfg.t_samples, "class check t samples");
    add_output(sweep_cmd);

    auto* identities_cmd = app.add_subcommand("identities", "verify the integer weight-sum identities");
    identities_cmd->add_option("--n-max", cfg.n_max, "largest n")->required();
    add_output(identities_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        for (auto* sub : app.get_subcommands()) err << sub->help();
        return kParse;
    }

    cfg.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Pretty;
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    std::ostringstream buffer;
    int code = kOk;
    try {
        if (cfg.command == "integrate") code = cmd_integrate(cfg, buffer);
        else if (cfg.command == "certify") code = cmd_certify(cfg, buffer, err);
        else if (cfg.command == "check-class") code = cmd_check_class(cfg, buffer);
        else if (cfg.command == "sweep") code = cmd_sweep(cfg, buffer, err);
        else code = cmd_identities(cfg, buffer);
    } catch (const nchh::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ParityError& e) {
        err << "error: " << e.what() << "\n";
        return kParity;
    } catch (const EvaluationError& e) {
        err << "error: " << e.what() << "\n";
        return kEvaluation;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kEvaluation;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    }

    if (cfg.out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out_path << " for writing\n";
            return kParse;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace nchh::cli
