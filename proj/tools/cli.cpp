#include "cli.hpp"

#include "tropdeg/amoeba.hpp"
#include "tropdeg/json_io.hpp"
#include "tropdeg/realma.hpp"
#include "tropdeg/sncmodel.hpp"
#include "tropdeg/svg.hpp"
#include "tropdeg/toriclimit.hpp"
#include "tropdeg/tropical.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tropdeg::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised after the report has been written, when a check in it failed.
class DiagnosticFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    unsigned threads = 1;

    std::string poly;
    std::string poly_file;
    std::size_t vars = 0;
    std::string t;
    std::vector<double> ray;
    double samples = -1.0; // command-specific default when negative
    std::vector<double> window;

    std::string model;
    bool default_masses = false;

    std::vector<int> b;
    std::vector<std::string> a;
    double omt_trials = 100;

    std::string target;
    std::string boundary;
    std::string from;
    std::string function;
    std::size_t max_sweeps = 100000;
    double tolerance = 1e-9;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read \"" + path + "\"");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json read_json(const std::string& path)
{
    return Json::parse(read_file(path));
}

std::string fmt(double x)
{
    if (!std::isfinite(x)) {
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::size_t as_count(double x, const char* what)
{
    if (!(x >= 1.0) || x != std::floor(x) || x > 1e12) {
        throw UsageError(std::string(what) + " must be a positive integer");
    }
    return static_cast<std::size_t>(x);
}

Complex parse_t(const std::string& text)
{
    LaurentSeries c;
    try {
        c = parse_series(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string("bad value for --t: ") + e.what());
    }
    if (c.is_zero() || c.terms().size() != 1 || c.terms().begin()->first != 0) {
        throw UsageError("--t must be a nonzero number such as 1e-3 or (1e-3+2e-3i)");
    }
    return c.terms().begin()->second;
}

std::vector<double> ray_points(const std::vector<double>& ray)
{
    const auto k = as_count(ray[2], "ray length");
    std::vector<double> out;
    double t = ray[0];
    for (std::size_t i = 0; i < k; ++i, t *= ray[1]) {
        out.push_back(t);
    }
    return out;
}

class Command {
public:
    Command(const Options& o, std::string name, std::ostream& out) : o_(o), out_(out)
    {
        config_["command"] = std::move(name);
        config_["seed"] = o.seed;
        config_["format"] = o.format;
        if (!o.out.empty()) {
            config_["out"] = o.out;
        }
    }

    Json& config() { return config_; }

    void require_format(std::initializer_list<const char*> allowed)
    {
        for (const char* f : allowed) {
            if (o_.format == f) {
                return;
            }
        }
        throw UsageError("--format " + o_.format + " is not available for " + config_["command"].get<std::string>());
    }

    void emit_json(Json result)
    {
        Json doc;
        doc["tool"] = "tropdeg";
        doc["config"] = config_;
        doc["result"] = std::move(result);
        write(doc.dump(2) + "\n");
    }

    void emit_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
    {
        std::string text = "# tropdeg " + config_.dump() + "\n";
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                text += (i ? "," : "") + cells[i];
            }
            text += "\n";
        };
        line(header);
        for (const auto& r : rows) {
            line(r);
        }
        write(text);
    }

    void emit_svg(const std::vector<RealVector>& points, const PolyhedralComplex& complex, const Window& window)
    {
        SvgOptions opts;
        opts.title = "tropdeg " + config_["command"].get<std::string>();
        opts.metadata = config_.dump();
        write(render_svg(points, complex, window, opts));
    }

private:
    void write(const std::string& text)
    {
        if (o_.out.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(o_.out);
        if (!f) {
            throw UsageError("cannot write \"" + o_.out + "\"");
        }
        f << text;
    }

    const Options& o_;
    Json config_;
    std::ostream& out_;
};

LaurentPolynomial read_polynomial(const Options& o, Command& cmd)
{
    if (o.poly.empty() == o.poly_file.empty()) {
        throw UsageError("give the polynomial either as an argument or with --file");
    }
    const std::string text = o.poly.empty() ? read_file(o.poly_file) : o.poly;
    cmd.config()["polynomial"] = text;
    if (o.vars > 0) {
        cmd.config()["vars"] = o.vars;
    }
    return parse_polynomial(text, o.vars);
}

Window window_for(const Options& o, const PolyhedralComplex& complex, std::size_t n, Command& cmd)
{
    Window w;
    if (o.window.size() == 2) {
        w = make_window(n, o.window[0], o.window[1]);
    } else if (o.window.size() == 2 * n) {
        for (std::size_t i = 0; i < n; ++i) {
            w.lo.push_back(o.window[2 * i]);
            w.hi.push_back(o.window[2 * i + 1]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!(w.lo[i] < w.hi[i])) {
                throw UsageError("--window needs lo < hi on every axis");
            }
        }
    } else if (!o.window.empty()) {
        throw UsageError("--window takes lo,hi or one lo,hi pair per coordinate");
    } else {
        // the vertices of the complex with a margin of 2
        double lo = 0.0;
        double hi = 0.0;
        bool any = false;
        for (const auto& cell : complex.cells) {
            for (const auto& v : cell.generators.vertices) {
                for (const auto& x : v) {
                    const double d = x.get_d();
                    lo = any ? std::min(lo, d) : d;
                    hi = any ? std::max(hi, d) : d;
                    any = true;
                }
            }
        }
        w = any ? make_window(n, std::floor(lo) - 2.0, std::ceil(hi) + 2.0) : make_window(n, -3.0, 3.0);
    }
    cmd.config()["window"] = {{"lo", w.lo}, {"hi", w.hi}};
    return w;
}

int cmd_tropicalize(const Options& o, std::ostream& out)
{
    Command cmd(o, "tropicalize", out);
    const auto f = read_polynomial(o, cmd);
    const auto trop = TropicalPolynomial::from_laurent(f);
    const auto complex = tropical_hypersurface(trop);
    if (o.format == "svg") {
        if (f.num_vars() != 2) {
            throw UsageError("SVG output needs a polynomial in two variables");
        }
        cmd.emit_svg({}, complex, window_for(o, complex, 2, cmd));
    } else if (o.format == "csv") {
        std::vector<std::string> header{"cell", "dimension", "kind"};
        for (std::size_t i = 0; i < f.num_vars(); ++i) {
            header.push_back("x" + std::to_string(i + 1));
        }
        std::vector<std::vector<std::string>> rows;
        for (std::size_t c = 0; c < complex.cells.size(); ++c) {
            const auto& cell = complex.cells[c];
            auto add = [&](const char* kind, const RationalVector& v) {
                std::vector<std::string> row{std::to_string(c), std::to_string(cell.dimension), kind};
                for (const auto& x : v) {
                    row.push_back(to_string(x));
                }
                rows.push_back(std::move(row));
            };
            for (const auto& v : cell.generators.vertices) {
                add("vertex", v);
            }
            for (const auto& r : cell.generators.rays) {
                add("ray", r);
            }
            for (const auto& l : cell.generators.lineality) {
                add("lineality", l);
            }
        }
        cmd.emit_csv(header, rows);
    } else {
        cmd.emit_json({{"polynomial", to_string(f)}, {"tropical", to_json(trop)}, {"complex", to_json(complex)}});
    }
    return kOk;
}

int cmd_amoeba(const Options& o, std::ostream& out)
{
    Command cmd(o, "amoeba", out);
    if (o.t.empty() == o.ray.empty()) {
        throw UsageError("amoeba needs exactly one of --t and --ray");
    }
    const auto f = read_polynomial(o, cmd);
    const auto complex = tropical_hypersurface(TropicalPolynomial::from_laurent(f));
    SampleOptions so;
    so.count = o.samples < 0 ? 10000 : as_count(o.samples, "--samples");
    so.seed = o.seed;
    so.threads = o.threads;
    cmd.config()["samples"] = so.count;
    const Window window = window_for(o, complex, f.num_vars(), cmd);

    if (!o.ray.empty()) {
        cmd.require_format({"json", "csv"});
        cmd.config()["ray"] = {{"t0", o.ray[0]}, {"rho", o.ray[1]}, {"steps", as_count(o.ray[2], "ray length")}};
        const auto report =
            convergence_report(f, Complex(o.ray[0], 0.0), o.ray[1], as_count(o.ray[2], "ray length"), window, so);
        if (o.format == "csv") {
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : report.rows) {
                rows.push_back({fmt(r.abs_t), fmt(r.eps), r.distance ? fmt(*r.distance) : "", std::to_string(r.points),
                                std::to_string(r.points_in_window), std::to_string(r.skipped_degenerate),
                                std::to_string(r.skipped_nonconvergent), std::to_string(r.rejected_residual)});
            }
            cmd.emit_csv({"abs_t", "eps", "distance", "points", "points_in_window", "skipped_degenerate",
                          "skipped_nonconvergent", "rejected_residual"},
                         rows);
        } else {
            cmd.emit_json({{"report", to_json(report)}, {"complex", to_json(complex)}});
        }
        for (const auto& r : report.rows) {
            if (!r.distance) {
                throw DiagnosticFailure("ray row at |t| = " + fmt(r.abs_t) + " failed: " + r.error);
            }
        }
        return kOk;
    }

    const Complex t = parse_t(o.t);
    cmd.config()["t"] = to_json(t);
    const ScaleFactor s(t);
    const auto cloud = sample_hypersurface(f, s, window, so);
    std::optional<double> distance;
    std::string error;
    try {
        distance = one_sided_hausdorff(cloud.points, complex, window);
    } catch (const std::invalid_argument& e) {
        error = e.what();
    }
    if (o.format == "svg") {
        if (f.num_vars() != 2) {
            throw UsageError("SVG output needs a polynomial in two variables");
        }
        cmd.emit_svg(cloud.points, complex, window);
    } else if (o.format == "csv") {
        std::vector<std::string> header;
        for (std::size_t i = 0; i < f.num_vars(); ++i) {
            header.push_back("w" + std::to_string(i + 1));
        }
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : cloud.points) {
            std::vector<std::string> row;
            for (double x : p) {
                row.push_back(fmt(x));
            }
            rows.push_back(std::move(row));
        }
        cmd.emit_csv(header, rows);
    } else {
        Json result;
        result["eps"] = s.eps();
        result["distance"] = distance ? Json(*distance) : Json(nullptr);
        if (!error.empty()) {
            result["error"] = error;
        }
        result["cloud"] = to_json(cloud, true);
        result["complex"] = to_json(complex);
        cmd.emit_json(std::move(result));
    }
    if (!distance) {
        throw DiagnosticFailure(error);
    }
    return kOk;
}

SncCombinatorics read_model(const Options& o, Command& cmd)
{
    cmd.config()["model"] = o.model;
    cmd.config()["default_masses"] = o.default_masses;
    return snc_from_json(read_json(o.model));
}

Json measures_json(const std::vector<WeightedSimplexMeasure>& measures, const SncCombinatorics& m)
{
    Json out = Json::array();
    for (const auto& mu : measures) {
        Json j = to_json(mu);
        j["face"] = m.label_of(mu.simplex.indices());
        out.push_back(std::move(j));
    }
    return out;
}

int cmd_skeleton(const Options& o, std::ostream& out)
{
    Command cmd(o, "skeleton", out);
    cmd.require_format({"json", "csv"});
    const auto m = read_model(o, cmd);
    const auto k = kappa(m);
    const auto ess = essential_complex(m);
    std::optional<std::vector<WeightedSimplexMeasure>> measures;
    std::string missing;
    try {
        measures = limit_measure(m, o.default_masses);
    } catch (const MissingMassError& e) {
        missing = e.what();
    }
    if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : m.strata()) {
            const bool essential = std::find(ess.faces.begin(), ess.faces.end(), s) != ess.faces.end();
            std::string mass;
            if (measures) {
                for (const auto& mu : *measures) {
                    if (mu.simplex.indices() == s) {
                        mass = fmt(mu.mass);
                    }
                }
            }
            rows.push_back({"\"" + m.label_of(s) + "\"", std::to_string(s.size() - 1), essential ? "1" : "0", mass});
        }
        cmd.emit_csv({"stratum", "dimension", "essential", "limit_mass"}, rows);
        return kOk;
    }
    Json result;
    result["model"] = to_json(m);
    result["dual_complex"] = to_json(dual_complex(m));
    result["kappa"] = to_json(k);
    result["normalized"] = to_json(normalize_kappa(m));
    result["essential"] = to_json(ess, m);
    if (measures) {
        result["limit_measure"] = measures_json(*measures, m);
    } else {
        result["limit_measure"] = nullptr;
        result["limit_measure_note"] = missing;
    }
    cmd.emit_json(std::move(result));
    return kOk;
}

int cmd_limit_measure(const Options& o, std::ostream& out)
{
    Command cmd(o, "limit-measure", out);
    cmd.require_format({"json", "csv"});
    const auto m = read_model(o, cmd);
    const auto measures = limit_measure(m, o.default_masses);
    if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& mu : measures) {
            std::string b;
            for (int x : mu.simplex.multiplicities()) {
                b += (b.empty() ? "" : " ") + std::to_string(x);
            }
            rows.push_back({"\"" + m.label_of(mu.simplex.indices()) + "\"", std::to_string(mu.simplex.dimension()), b,
                            fmt(mu.mass), fmt(mu.density())});
        }
        cmd.emit_csv({"face", "dimension", "b", "mass", "density"}, rows);
        return kOk;
    }
    cmd.emit_json({{"essential_dimension", essential_complex(m).dimension}, {"measures", measures_json(measures, m)}});
    return kOk;
}

int cmd_toric_check(const Options& o, std::ostream& out)
{
    Command cmd(o, "toric-check", out);
    cmd.require_format({"json", "csv"});
    if (o.b.empty()) {
        throw UsageError("toric-check needs --b");
    }
    std::vector<Rational> a;
    for (const auto& s : o.a) {
        a.push_back(parse_rational(s));
    }
    if (a.empty()) {
        a.assign(o.b.size(), Rational(0));
    }
    const ToricDegeneration d(o.b, a);
    const auto ray = ray_points(o.ray);
    const double t_abs = o.t.empty() ? ray.back() : std::abs(parse_t(o.t));
    MonteCarloOptions mc;
    mc.count = o.samples < 0 ? 100000 : as_count(o.samples, "--samples");
    mc.seed = o.seed;
    mc.threads = o.threads;
    const auto trials = as_count(o.omt_trials, "--omt-trials");

    cmd.config()["b"] = o.b;
    cmd.config()["a"] = to_json(RationalVector(a));
    cmd.config()["ray"] = {{"t0", o.ray[0]}, {"rho", o.ray[1]}, {"steps", ray.size()}};
    cmd.config()["t"] = t_abs;
    cmd.config()["samples"] = mc.count;
    cmd.config()["omt_trials"] = trials;

    const ScaleFactor s(Complex(t_abs, 0.0));
    const auto omt = verify_omt(d, s, trials, o.seed);
    const auto masses = mass_asymptotics(d, ray, mc);
    const auto push = pushforward_limit(d, s, mc);
    const bool omt_ok = omt.max_deviation < 1e-8;

    if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : masses.rows) {
            rows.push_back({fmt(r.abs_t), fmt(r.eps), fmt(r.log_mass), fmt(r.scaled_mass), fmt(r.standard_error)});
        }
        cmd.emit_csv({"abs_t", "eps", "log_mass", "scaled_mass", "standard_error"}, rows);
    } else {
        Json result;
        result["kappa"] = to_json(d.kappa());
        result["essential_indices"] = d.essential_indices();
        result["components"] = d.components();
        result["omt"] = to_json(omt);
        result["omt"]["passed"] = omt_ok;
        result["mass_asymptotics"] = to_json(masses);
        result["pushforward"] = to_json(push);
        cmd.emit_json(std::move(result));
    }
    if (!omt_ok || !masses.kappa_agrees || !masses.d_agrees) {
        std::ostringstream msg;
        msg << "toric check failed:";
        if (!omt_ok) {
            msg << " OMT deviation " << omt.max_deviation;
        }
        if (!masses.kappa_agrees) {
            msg << " fitted kappa " << to_string(masses.kappa_hat) << " vs " << to_string(masses.kappa_predicted);
        }
        if (!masses.d_agrees) {
            msg << " fitted d " << masses.d_hat << " vs " << masses.d_predicted;
        }
        throw DiagnosticFailure(msg.str());
    }
    return kOk;
}

int cmd_rma_solve(const Options& o, std::ostream& out)
{
    Command cmd(o, "rma solve", out);
    cmd.require_format({"json", "csv"});
    AtomicMeasure target;
    BoundaryData boundary;
    if (!o.from.empty()) {
        if (!o.target.empty() || !o.boundary.empty()) {
            throw UsageError("--from replaces --target and --boundary");
        }
        cmd.config()["from"] = o.from;
        const auto g = convex_pl_from_json(read_json(o.from));
        target = ma_alexandrov(g);
        boundary = boundary_trace(g);
    } else {
        if (o.target.empty() || o.boundary.empty()) {
            throw UsageError("rma solve needs --target and --boundary (or --from)");
        }
        cmd.config()["target"] = o.target;
        cmd.config()["boundary"] = o.boundary;
        target = atomic_measure_from_json(read_json(o.target));
        boundary = boundary_from_json(read_json(o.boundary));
    }
    cmd.config()["max_sweeps"] = o.max_sweeps;
    cmd.config()["tolerance"] = o.tolerance;
    RmaOptions options;
    options.max_sweeps = o.max_sweeps;
    options.relative_tolerance = o.tolerance;
    const auto sol = solve_rma(target, boundary, options);
    if (o.format == "csv") {
        std::vector<std::string> header;
        const std::size_t n = sol.function.dim();
        for (std::size_t i = 0; i < n; ++i) {
            header.push_back("x" + std::to_string(i + 1));
        }
        header.push_back("height");
        header.push_back("target_mass");
        std::vector<std::vector<std::string>> rows;
        for (std::size_t j = 0; j < sol.nodes.size(); ++j) {
            std::vector<std::string> row;
            for (const auto& x : sol.nodes[j]) {
                row.push_back(to_string(x));
            }
            row.push_back(fmt(sol.heights[j]));
            row.push_back(to_string(target.atoms()[j].mass));
            rows.push_back(std::move(row));
        }
        cmd.emit_csv(header, rows);
    } else {
        cmd.emit_json({{"target", to_json(target)}, {"boundary", to_json(boundary)}, {"solution", to_json(sol)}});
    }
    return kOk;
}

int cmd_rma_measure(const Options& o, std::ostream& out)
{
    Command cmd(o, "rma measure", out);
    cmd.require_format({"json", "csv"});
    if (o.function.empty()) {
        throw UsageError("rma measure needs --f");
    }
    cmd.config()["f"] = o.function;
    const auto f = convex_pl_from_json(read_json(o.function));
    const auto m = ma_alexandrov(f);
    if (o.format == "csv") {
        std::vector<std::string> header;
        for (std::size_t i = 0; i < f.dim(); ++i) {
            header.push_back("x" + std::to_string(i + 1));
        }
        header.push_back("mass");
        std::vector<std::vector<std::string>> rows;
        for (const auto& atom : m.atoms()) {
            std::vector<std::string> row;
            for (const auto& x : atom.point) {
                row.push_back(to_string(x));
            }
            row.push_back(to_string(atom.mass));
            rows.push_back(std::move(row));
        }
        cmd.emit_csv(header, rows);
    } else {
        cmd.emit_json({{"measure", to_json(m)}, {"redundant_pieces", f.redundant_pieces()}});
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Tropical limits, skeletons, and Monge-Ampere measures of degenerations", "tropdeg"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "random seed (default 0)");
    app.add_option("--out", o.out, "write output to this file instead of stdout");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
    app.add_option("--threads", o.threads, "worker threads (does not change results)")->check(CLI::Range(1u, 1024u));

    auto add_poly = [&](CLI::App* sub) {
        sub->add_option("polynomial", o.poly, "polynomial in z1..zn with series coefficients in t");
        sub->add_option("--file", o.poly_file, "read the polynomial from a file");
        sub->add_option("--vars", o.vars, "number of variables (at least the largest index used)");
        sub->add_option("--window", o.window, "lo,hi or lo1,hi1,lo2,hi2,...")->delimiter(',');
    };
    auto* tropicalize = app.add_subcommand("tropicalize", "tropical hypersurface of a polynomial");
    add_poly(tropicalize);

    auto* amoeba = app.add_subcommand("amoeba", "sample Log_t of a hypersurface and compare with its tropicalization");
    add_poly(amoeba);
    amoeba->add_option("--t", o.t, "parameter value, e.g. 1e-3");
    amoeba->add_option("--ray", o.ray, "t0,rho,k: the values t0*rho^i for i < k")->delimiter(',')->expected(3);
    amoeba->add_option("--samples", o.samples, "draws per parameter value (default 10000)");

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("model", o.model, "snc model JSON")->required();
        sub->add_flag("--default-masses", o.default_masses, "use mass 1 for faces without a given mass");
    };
    auto* skeleton = app.add_subcommand("skeleton", "dual complex, kappa, essential skeleton, limit measure");
    add_model(skeleton);
    auto* limit = app.add_subcommand("limit-measure", "normalized limit measure on the essential skeleton");
    add_model(limit);

    auto* toric = app.add_subcommand("toric-check", "volume-form asymptotics of prod z_i^b_i = t");
    toric->add_option("--b", o.b, "multiplicities, e.g. 1,1")->delimiter(',')->required();
    toric->add_option("--a", o.a, "weights a_i as rationals (default 0)")->delimiter(',');
    o.ray = {};
    toric->add_option("--ray", o.ray, "t0,rho,k for the mass table (default 1e-2,0.1,6)")->delimiter(',')->expected(3);
    toric->add_option("--t", o.t, "|t| for the OMT and pushforward checks (default: last ray point)");
    toric->add_option("--samples", o.samples, "Monte-Carlo samples (default 100000)");
    toric->add_option("--omt-trials", o.omt_trials, "random points for the OMT identity (default 100)");

    auto* rma = app.add_subcommand("rma", "real Monge-Ampere measures and the semi-discrete solver");
    rma->require_subcommand(1);
    auto* solve = rma->add_subcommand("solve", "solve MA(u) = target with given boundary values");
    solve->add_option("--target", o.target, "atomic measure JSON");
    solve->add_option("--boundary", o.boundary, "boundary data JSON");
    solve->add_option("--from", o.from, "take target and boundary from a convex PL function JSON");
    solve->add_option("--max-sweeps", o.max_sweeps, "sweep limit before giving up (default 100000)")
        ->check(CLI::PositiveNumber);
    solve->add_option("--tolerance", o.tolerance, "relative mass residual to reach (default 1e-9)")
        ->check(CLI::PositiveNumber);
    auto* measure = rma->add_subcommand("measure", "Alexandrov measure of a convex PL function");
    measure->add_option("--f", o.function, "convex PL function JSON");

    std::vector<std::string> argv_store{"tropdeg"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) {
        argv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "tropdeg: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (toric->parsed() && o.ray.empty()) {
            o.ray = {1e-2, 0.1, 6};
        }
        if (tropicalize->parsed()) {
            return cmd_tropicalize(o, out);
        }
        if (amoeba->parsed()) {
            return cmd_amoeba(o, out);
        }
        if (skeleton->parsed()) {
            return cmd_skeleton(o, out);
        }
        if (limit->parsed()) {
            return cmd_limit_measure(o, out);
        }
        if (toric->parsed()) {
            return cmd_toric_check(o, out);
        }
        if (solve->parsed()) {
            return cmd_rma_solve(o, out);
        }
        if (measure->parsed()) {
            return cmd_rma_measure(o, out);
        }
        err << app.help();
        return kInputError;
    } catch (const DiagnosticFailure& e) {
        err << "tropdeg: " << e.what() << "\n";
        return kDiagnosticFailure;
    } catch (const InfeasibleError& e) {
        err << "tropdeg: infeasible: " << e.what() << "\n";
        return kDiagnosticFailure;
    } catch (const NonConvergenceError& e) {
        err << "tropdeg: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const ParseError& e) {
        err << "tropdeg: parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "tropdeg: bad JSON: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "tropdeg: " << e.what() << "\n";
        return kInputError;
    } catch (const std::out_of_range& e) {
        err << "tropdeg: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "tropdeg: internal error: " << e.what() << "\n";
        return kInternal;
    }
}

} // namespace tropdeg::cli
