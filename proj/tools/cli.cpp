#include "cli.hpp"

#include "maxeig/contop.hpp"
#include "maxeig/errors.hpp"
#include "maxeig/hua.hpp"
#include "maxeig/initials.hpp"
#include "maxeig/oracle.hpp"
#include "maxeig/textio.hpp"
#include "maxeig/tridiag.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace maxeig::cli {

namespace {

constexpr std::size_t kDefaultSquareOrder = 8;

struct Options {
    std::string model;
    std::string file;
    std::vector<std::size_t> sizes;
    std::optional<double> tol;
    std::optional<std::size_t> max_iters;
    std::size_t grid = 1000;
    std::string kind;
    bool machine = false;
    std::vector<std::size_t> checkpoints;
    bool checkpoints_given = false;
    std::string v0 = "efficient";
    std::string z0 = "automatic";
    std::vector<double> x0;
};

/// Anything the user got wrong on the command line or in an input file.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Printer {
public:
    Printer(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

    bool machine() const { return machine_; }
    std::string num(double v) const { return format_number(v, machine_); }

    /// Machine record: fields separated by single tabs.
    void record(std::initializer_list<std::string> fields)
    {
        bool first = true;
        for (const std::string& f : fields) {
            if (!first) {
                out_ << '\t';
            }
            out_ << f;
            first = false;
        }
        out_ << '\n';
    }

    void vector_record(const std::string& label, std::span<const double> v)
    {
        out_ << label;
        for (double x : v) {
            out_ << (machine_ ? "\t" : " ") << num(x);
        }
        out_ << '\n';
    }

    std::ostream& raw() { return out_; }

private:
    std::ostream& out_;
    bool machine_;
};

std::string pad(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::size_t parse_size(std::string_view text, const std::string& what)
{
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError("invalid " + what + ": '" + std::string(text) + "'");
    }
    return value;
}

std::optional<double> parse_double(std::string_view text)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

/// "square", "square:8". The number is the matrix order N+1.
std::vector<std::size_t> square_orders(const Options& o)
{
    const auto colon = o.model.find(':');
    if (colon != std::string::npos) {
        if (!o.sizes.empty()) {
            throw UsageError("give the model size either as 'square:K' or with --sizes, not both");
        }
        return {parse_size(std::string_view(o.model).substr(colon + 1), "model size")};
    }
    if (o.sizes.empty()) {
        return {kDefaultSquareOrder};
    }
    return o.sizes;
}

std::string model_family(const Options& o)
{
    return o.model.substr(0, o.model.find(':'));
}

struct NamedSystem {
    std::string label;
    TridiagonalSystem system;
};

std::vector<NamedSystem> load_systems(const Options& o)
{
    if (!o.file.empty() && !o.model.empty()) {
        throw UsageError("--file and --model are mutually exclusive");
    }
    if (!o.file.empty()) {
        return {{o.file, parse_system_file(o.file)}};
    }
    const std::string family = o.model.empty() ? "square" : model_family(o);
    if (family != "square") {
        throw UsageError("unknown system model '" + family + "' (available: square)");
    }
    std::vector<NamedSystem> out;
    for (std::size_t order : square_orders(o)) {
        if (order < 2) {
            throw UsageError("square model needs order N+1 >= 2");
        }
        out.push_back({"square:" + std::to_string(order), square_model(order - 1)});
    }
    return out;
}

TridiagonalSystem load_single_system(const Options& o)
{
    std::vector<NamedSystem> systems = load_systems(o);
    if (systems.size() != 1) {
        throw UsageError("this subcommand takes a single system; give one size");
    }
    return std::move(systems.front().system);
}

Operator1D lebesgue_operator()
{
    Operator1D op;
    op.a = [](double) { return 1.0; };
    op.b = [](double) { return 0.0; };
    op.left = 0.0;
    op.right = 1.0;
    op.theta = 0.0;
    return op;
}

std::vector<BoundaryKind> requested_kinds(const Options& o)
{
    if (o.kind.empty()) {
        return {kAllKinds.begin(), kAllKinds.end()};
    }
    return {parse_boundary_kind(o.kind)};
}

std::vector<double> choose_v0(const TridiagonalSystem& q, const Options& o, const InitialGuess& guess)
{
    if (o.v0 == "efficient") {
        return guess.v0;
    }
    if (o.v0 == "uniform") {
        return std::vector<double>(q.size(), 1.0);
    }
    throw UsageError("--v0 must be 'efficient' or 'uniform'");
}

double choose_z0(const TridiagonalSystem& q, const Options& o, const InitialGuess& guess,
                 std::span<const double> v0)
{
    const std::vector<double> mu = speed_measure(q);
    const double automatic = rayleigh_quotient(q, v0, mu);
    if (o.z0 == "automatic") {
        return automatic;
    }
    if (o.z0 == "delta") {
        return guess.z0_inverse_delta;
    }
    if (o.z0 == "table4") {
        return 7.0 / (8.0 * guess.delta1) + automatic / 8.0;
    }
    if (const auto value = parse_double(o.z0)) {
        return *value;
    }
    throw UsageError("--z0 must be 'automatic', 'delta', 'table4' or a number");
}

std::vector<double> scaled_to_last(std::span<const double> v)
{
    std::vector<double> g(v.begin(), v.end());
    const double last = g.back();
    for (double& x : g) {
        x /= last;
    }
    return g;
}

void print_trace_rows(Printer& p, const std::vector<TraceRow>& rows, const std::string& header,
                      bool negate)
{
    if (!p.machine()) {
        p.raw() << pad("k", 8) << header << '\n';
    }
    for (const TraceRow& row : rows) {
        const std::string value = row.z ? p.num(negate ? -*row.z : *row.z) : std::string("absent");
        if (p.machine()) {
            p.record({"step", std::to_string(row.k), value});
        } else {
            p.raw() << pad(std::to_string(row.k), 8) << value << '\n';
        }
    }
}

// ---------------------------------------------------------------------------

int cmd_solve(const Options& o, Printer& p)
{
    const TridiagonalSystem q = load_single_system(o);
    const InitialGuess guess = efficient_initials(q);
    const std::vector<double> v0 = choose_v0(q, o, guess);
    const double z0 = choose_z0(q, o, guess, v0);
    RqiConfig cfg;
    cfg.tol = o.tol.value_or(cfg.tol);
    cfg.max_iters = o.max_iters.value_or(cfg.max_iters);
    const IterationTrace trace = rqi(q, v0, z0, cfg);

    const std::vector<std::size_t> cps = o.checkpoints_given ? o.checkpoints : std::vector<std::size_t>{};
    print_trace_rows(p, emit_trace(trace, cps), "z_k", false);
    const std::vector<double> g = scaled_to_last(trace.final_vector);
    if (p.machine()) {
        p.record({"lambda0", p.num(trace.final_z())});
        p.vector_record("g", g);
        p.record({"pitfall", trace.pitfall_warning ? "1" : "0"});
    } else {
        p.raw() << "lambda0 = " << p.num(trace.final_z()) << '\n';
        p.vector_record("g =", g);
        if (trace.pitfall_warning) {
            p.raw() << "warning: limit exceeds 2/delta1 = " << p.num(2.0 / guess.delta1)
                    << "; RQI converged to a non-leading eigenvalue\n";
        }
    }
    return 0;
}

int cmd_power(const Options& o, Printer& p)
{
    const TridiagonalSystem q = load_single_system(o);
    const InitialGuess guess = efficient_initials(q);
    const std::vector<double> v0 = choose_v0(q, o, guess);
    PowerConfig cfg;
    cfg.max_iters = o.max_iters.value_or(1000);
    cfg.tol = o.tol.value_or(0.0);
    const IterationTrace trace = power_iteration(q, v0, cfg);
    const std::vector<std::size_t> cps = o.checkpoints_given ? o.checkpoints : default_checkpoints();
    print_trace_rows(p, emit_trace(trace, cps), "-z_k", true);
    if (p.machine()) {
        p.record({"shift", p.num(default_power_shift(q))});
    } else {
        p.raw() << "shift m = " << p.num(default_power_shift(q)) << '\n';
    }
    return 0;
}

int cmd_bounds(const Options& o, Printer& p)
{
    const TridiagonalSystem q = load_single_system(o);
    const InitialGuess guess = efficient_initials(q);
    const std::vector<double> v0 = choose_v0(q, o, guess);
    const double z0 = choose_z0(q, o, guess, v0);
    RqiConfig cfg;
    cfg.tol = o.tol.value_or(cfg.tol);
    cfg.max_iters = o.max_iters.value_or(cfg.max_iters);
    const IterationTrace trace = rqi(q, v0, z0, cfg);
    const ResidualInterval ri = residual_bounds(q, trace.final_vector, trace.final_z());
    if (p.machine()) {
        p.record({"delta1", p.num(guess.delta1)});
        p.record({"bracket", p.num(1.0 / guess.delta1), p.num(2.0 / guess.delta1)});
        p.record({"z0", p.num(z0)});
        p.record({"lambda0", p.num(trace.final_z())});
        p.record({"residual_interval", p.num(ri.lower), p.num(ri.upper)});
    } else {
        p.raw() << "delta1            = " << p.num(guess.delta1) << '\n'
                << "lambda0 bracket   = [" << p.num(1.0 / guess.delta1) << ", " << p.num(2.0 / guess.delta1)
                << "]\n"
                << "z0                = " << p.num(z0) << '\n'
                << "lambda0 estimate  = " << p.num(trace.final_z()) << '\n'
                << "residual interval = [" << p.num(ri.lower) << ", " << p.num(ri.upper) << "]\n";
    }
    return 0;
}

DenseMatrix hua_matrix()
{
    return DenseMatrix::from_rows({{0.25, 0.14}, {0.40, 0.12}});
}

int cmd_hua(const Options& o, Printer& p)
{
    if (!o.model.empty()) {
        throw UsageError("hua takes its matrix from --file (default: the two-sector example)");
    }
    const DenseMatrix a = o.file.empty() ? hua_matrix() : [&] {
        std::ifstream in(o.file);
        if (!in) {
            throw ParseError("cannot open '" + o.file + "'");
        }
        return parse_dense(in);
    }();
    if (o.x0.size() != a.order()) {
        throw UsageError("hua needs " + std::to_string(a.order()) + " input values x0");
    }
    const CollapseReport report = collapse_time({a, o.x0}, o.max_iters.value_or(kDefaultHorizon));
    const PerronPair perron = dense_max_eigenpair(a, o.x0.back());
    if (p.machine()) {
        p.record({"collapse_year", report.collapse_year ? std::to_string(*report.collapse_year) : "none"});
        if (report.offending_component) {
            p.record({"component", std::to_string(*report.offending_component)});
        }
        p.record({"rho", p.num(perron.rho)});
        p.vector_record("u", perron.left);
    } else {
        if (report.collapse_year) {
            p.raw() << "collapse at year " << *report.collapse_year << " (component "
                    << *report.offending_component << ")\n";
        } else {
            p.raw() << "no collapse within " << report.trajectory.size() - 1 << " years\n";
        }
        p.raw() << "rho(A) = " << p.num(perron.rho) << '\n';
        p.vector_record("stable input u =", perron.left);
    }
    return 0;
}

int cmd_kappa(const Options& o, Printer& p)
{
    if (!o.file.empty() && !o.model.empty()) {
        throw UsageError("--file and --model are mutually exclusive");
    }
    Operator1D op;
    if (!o.file.empty()) {
        op = parse_operator_file(o.file);
    } else if (o.model.empty() || o.model == "lebesgue") {
        op = lebesgue_operator();
    } else {
        throw UsageError("unknown operator model '" + o.model + "' (available: lebesgue)");
    }
    const std::vector<BoundaryKind> kinds = requested_kinds(o);
    const MeasureGrid grid = build_measures(op, o.grid);
    for (const std::string& w : grid.warnings) {
        if (p.machine()) {
            p.record({"warning", w});
        } else {
            p.raw() << "warning: " << w << '\n';
        }
    }
    if (!p.machine()) {
        p.raw() << pad("kind", 6) << pad("kappa", 14) << pad("lower", 14) << pad("upper", 14)
                << "lambda(grid)\n";
    }
    for (BoundaryKind kind : kinds) {
        const KappaResult r = kappa(kind, grid);
        const double lambda = discrete_leading_eigenvalue(op, o.grid, kind);
        if (p.machine()) {
            p.record({"kappa", to_string(kind), p.num(r.kappa), p.num(r.lower), p.num(r.upper), p.num(lambda)});
        } else {
            p.raw() << pad(to_string(kind), 6) << pad(p.num(r.kappa), 14) << pad(p.num(r.lower), 14)
                    << pad(p.num(r.upper), 14) << p.num(lambda) << '\n';
        }
    }
    return 0;
}

int cmd_bench(const Options& o, Printer& p)
{
    const std::vector<NamedSystem> systems = load_systems(o);
    if (!p.machine()) {
        p.raw() << pad("N+1", 8) << pad("z0", 12) << pad("z1", 12) << pad("z2", 12) << pad("oracle", 12)
                << "time[s]\n";
    }
    for (const NamedSystem& s : systems) {
        const auto start = std::chrono::steady_clock::now();
        const InitialGuess guess = efficient_initials(s.system);
        RqiConfig cfg;
        cfg.tol = o.tol.value_or(cfg.tol);
        cfg.max_iters = o.max_iters.value_or(cfg.max_iters);
        const IterationTrace trace = rqi(s.system, guess, ShiftChoice::table4, cfg);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const ReferencePair ref = max_eigenpair_reference(s.system);
        const std::vector<std::size_t> cps{0, 1, 2};
        const std::vector<TraceRow> rows = emit_trace(trace, cps);
        auto cell = [&](const TraceRow& r) { return r.z ? p.num(*r.z) : std::string("absent"); };
        const std::string order = std::to_string(s.system.size());
        if (p.machine()) {
            // Timing is left out so that machine output stays reproducible.
            p.record({"bench", order, cell(rows[0]), cell(rows[1]), cell(rows[2]), p.num(ref.lambda0)});
        } else {
            char t[32];
            std::snprintf(t, sizeof t, "%.3g", seconds);
            p.raw() << pad(order, 8) << pad(cell(rows[0]), 12) << pad(cell(rows[1]), 12) << pad(cell(rows[2]), 12)
                    << pad(p.num(ref.lambda0), 12) << t << '\n';
        }
    }
    return 0;
}

void add_common(CLI::App* sub, Options& o, bool system_input)
{
    sub->add_option("--model", o.model, system_input ? "Built-in model: square or square:K (K = N+1)"
                                                     : "Built-in model");
    sub->add_option("--file", o.file, "Input file");
    sub->add_option("--tol", o.tol, "Tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", o.max_iters, "Iteration limit")->check(CLI::PositiveNumber);
    sub->add_flag("--machine", o.machine, "Tab-separated output with 17 significant digits");
}

} // namespace

std::vector<std::size_t> default_checkpoints()
{
    std::vector<std::size_t> cps;
    for (std::size_t k = 0; k <= 10; ++k) {
        cps.push_back(k);
    }
    cps.push_back(50);
    for (std::size_t k = 100; k <= 900; k += 100) {
        cps.push_back(k);
    }
    cps.push_back(990);
    cps.push_back(1000);
    return cps;
}

std::vector<TraceRow> emit_trace(const IterationTrace& trace, std::span<const std::size_t> checkpoints)
{
    if (trace.steps.empty()) {
        throw std::invalid_argument("emit_trace: empty trace");
    }
    std::vector<TraceRow> rows;
    if (checkpoints.empty()) {
        for (const IterationStep& s : trace.steps) {
            rows.push_back({s.k, s.z});
        }
        return rows;
    }
    for (std::size_t k : checkpoints) {
        const auto it = std::find_if(trace.steps.begin(), trace.steps.end(),
                                     [k](const IterationStep& s) { return s.k == k; });
        rows.push_back({k, it == trace.steps.end() ? std::nullopt : std::optional<double>(it->z)});
    }
    return rows;
}

std::string format_number(double value, bool machine)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, machine ? "%.17g" : "%.6g", value);
    return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Maximal eigenpairs of tridiagonal matrices and eigenvalue bounds for 1-D operators"};
    app.require_subcommand(1, 1);
    Options o;

    CLI::App* solve = app.add_subcommand("solve", "Rayleigh quotient iteration from efficient initials");
    CLI::App* power = app.add_subcommand("power", "Power iteration trace");
    CLI::App* bounds = app.add_subcommand("bounds", "delta1 bracket and residual interval");
    CLI::App* hua = app.add_subcommand("hua", "Collapse time of an input-output economy");
    CLI::App* kap = app.add_subcommand("kappa", "Isoperimetric constants of a 1-D operator");
    CLI::App* bench = app.add_subcommand("bench", "Benchmark rows (N+1, z0, z1, z2, oracle, time)");

    for (CLI::App* sub : {solve, power, bounds, bench}) {
        add_common(sub, o, true);
        sub->add_option("--sizes", o.sizes, "Model orders N+1, comma separated")->delimiter(',');
    }
    for (CLI::App* sub : {solve, power, bounds}) {
        sub->add_option("--v0", o.v0, "Initial vector: efficient or uniform");
    }
    for (CLI::App* sub : {solve, bounds}) {
        sub->add_option("--z0", o.z0, "Initial shift: automatic, delta, table4 or a number");
    }
    for (CLI::App* sub : {solve, power}) {
        sub->add_option("--checkpoints", o.checkpoints, "Trace rows to print, comma separated")
            ->delimiter(',');
    }
    add_common(hua, o, false);
    hua->add_option("x0", o.x0, "Initial input vector")->required();
    add_common(kap, o, false);
    kap->add_option("--grid", o.grid, "Grid intervals")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 24));
    kap->add_option("--kind", o.kind, "Boundary kind")->check(CLI::IsMember({"nn", "dd", "dn", "nd"}, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    o.checkpoints_given = app.got_subcommand(solve) ? solve->count("--checkpoints") > 0
                          : app.got_subcommand(power) ? power->count("--checkpoints") > 0
                                                      : false;

    Printer p(out, o.machine);
    try {
        if (app.got_subcommand(solve)) {
            return cmd_solve(o, p);
        }
        if (app.got_subcommand(power)) {
            return cmd_power(o, p);
        }
        if (app.got_subcommand(bounds)) {
            return cmd_bounds(o, p);
        }
        if (app.got_subcommand(hua)) {
            return cmd_hua(o, p);
        }
        if (app.got_subcommand(kap)) {
            return cmd_kappa(o, p);
        }
        return cmd_bench(o, p);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 1;
    }
}

} // namespace maxeig::cli
