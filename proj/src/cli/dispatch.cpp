#include "qecon/cli/dispatch.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <vector>

#include "CLI11.hpp"
#include "qecon/calculus.hpp"
#include "qecon/cli/render.hpp"
#include "qecon/econ.hpp"
#include "qecon/error.hpp"
#include "qecon/finmath.hpp"
#include "qecon/leontief.hpp"
#include "qecon/linalg.hpp"
#include "qecon/linsolve.hpp"
#include "qecon/matrix_io.hpp"
#include "qecon/simplex.hpp"

namespace qecon::cli {
namespace {

using json = nlohmann::ordered_json;
using calculus::Expr;
using linalg::Matrix;
using linalg::Vector;

// --- Argument helpers ------------------------------------------------------

double number(const std::string& text, const std::string& what) {
    try {
        return io::parse_number(text);
    } catch (const InvalidInput& e) {
        throw InvalidInput(what + ": " + e.what());
    }
}

// Integration limits additionally accept inf, +inf and -inf.
double limit(const std::string& text, const std::string& what) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    return number(text, what);
}

int integer(const std::string& text, const std::string& what) {
    const double v = number(text, what);
    if (std::floor(v) != v || std::abs(v) > 1e9) throw InvalidInput(what + " must be an integer");
    return static_cast<int>(v);
}

// Binds a string option; the value is read only when the option was given.
struct Opt {
    std::string text;
    CLI::Option* option = nullptr;

    bool given() const { return option && option->count() > 0; }
    std::string name() const { return option ? option->get_name() : "value"; }
    std::optional<double> num() const { return given() ? std::optional(number(text, name())) : std::nullopt; }
    double need() const {
        if (!given()) throw InvalidInput(name() + " is required");
        return number(text, name());
    }
};

CLI::Option* add(CLI::App* app, Opt& o, const std::string& flag, const std::string& help) {
    o.option = app->add_option(flag, o.text, help);
    return o.option;
}

std::pair<double, double> window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InvalidInput("window must look like LO:HI, got '" + text + "'");
    const double lo = number(text.substr(0, colon), "window lower bound");
    const double hi = number(text.substr(colon + 1), "window upper bound");
    if (!(lo < hi)) throw InvalidInput("window needs LO < HI");
    return {lo, hi};
}

std::vector<double> number_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(number(text.substr(start, comma - start), what));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Matrix load_matrix(const std::string& path) { return io::parse_matrix_text(io::read_text_file(path)); }
Vector load_vector(const std::string& path) { return io::parse_vector_text(io::read_text_file(path)); }

// Interest factor from either --q or --p.
std::optional<double> factor(const Opt& q, const Opt& p) {
    if (q.given() && p.given()) throw InvalidInput("give either --q or --p, not both");
    if (p.given()) return finmath::interest_factor(p.need());
    return q.num();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json lp_json(const simplex::LpSolution& s) {
    json j{{"status", simplex::to_string(s.status)}};
    j["x"] = s.x;
    j["z"] = s.z;
    j["slacks"] = s.slacks;
    j["iterations"] = s.iterations;
    if (!s.message.empty()) j["message"] = s.message;
    return j;
}

simplex::LinearProgram load_lp(const std::string& path) {
    const std::string text = io::read_text_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput("LP file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw InvalidInput("LP file must hold a JSON object");
    simplex::LinearProgram lp;
    try {
        const std::string sense = j.value("sense", "max");
        if (sense == "max")
            lp.sense = simplex::Sense::Max;
        else if (sense == "min")
            lp.sense = simplex::Sense::Min;
        else
            throw InvalidInput("sense must be \"max\" or \"min\"");
        if (!j.contains("c")) throw InvalidInput("LP file needs an objective vector \"c\"");
        lp.c = j.at("c").get<std::vector<double>>();
        lp.d = j.value("d", 0.0);
        if (j.contains("A")) lp.a = j.at("A").get<std::vector<std::vector<double>>>();
        if (j.contains("b")) lp.b = j.at("b").get<std::vector<double>>();
        if (j.contains("names")) lp.names = j.at("names").get<std::vector<std::string>>();
        if (j.contains("relations")) {
            for (const auto& r : j.at("relations").get<std::vector<std::string>>()) {
                if (r == "<=")
                    lp.relations.push_back(simplex::Relation::LessEqual);
                else if (r == ">=")
                    lp.relations.push_back(simplex::Relation::GreaterEqual);
                else
                    throw InvalidInput("relations entries must be \"<=\" or \">=\"");
            }
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed LP file: ") + e.what());
    }
    lp.validate();
    return lp;
}

std::string tableau_text(const simplex::SimplexTableau& t) {
    std::string head = "# tableau " + std::to_string(t.iteration) + ", basis:";
    for (std::size_t i = 1; i < t.basis.size(); ++i) head += " " + t.variable_name(t.basis[i]);
    return head + "\n" + io::format_matrix_text(t.grid) + "\n";
}

json curve_json(const calculus::CurveReport& r) {
    json j;
    j["class"] = calculus::to_string(r.curve_class);
    j["window"] = {r.window_lo, r.window_hi};
    j["excluded_points"] = r.excluded;
    j["symmetry"] = calculus::to_string(r.symmetry);
    j["roots"] = r.roots;
    j["y_intercept"] = optional_json(r.y_intercept);
    json ex = json::array();
    for (const auto& e : r.extrema) ex.push_back({{"x", e.x}, {"y", e.y}, {"kind", calculus::to_string(e.kind)}});
    j["extrema"] = ex;
    j["inflections"] = r.inflections;
    json mono = json::array();
    for (const auto& i : r.monotone)
        mono.push_back({{"from", i.lo}, {"to", i.hi}, {"behaviour", i.rising ? "increasing" : "decreasing"}});
    j["monotone"] = mono;
    json curv = json::array();
    for (const auto& i : r.curvature)
        curv.push_back({{"from", i.lo}, {"to", i.hi}, {"behaviour", i.rising ? "convex" : "concave"}});
    j["curvature"] = curv;
    json as = json::array();
    for (const auto& a : r.asymptotes) {
        switch (a.kind) {
            case calculus::Asymptote::Kind::Vertical: as.push_back({{"kind", "vertical"}, {"x", a.x}}); break;
            case calculus::Asymptote::Kind::Horizontal:
                as.push_back({{"kind", "horizontal"}, {"y", a.intercept}});
                break;
            case calculus::Asymptote::Kind::Oblique:
                as.push_back({{"kind", "oblique"}, {"slope", a.slope}, {"intercept", a.intercept}});
                break;
        }
    }
    j["asymptotes"] = as;
    j["range"] = {{"min", r.range_min}, {"max", r.range_max}};
    return j;
}

json ratio_json(const std::optional<econ::RatioOptimum>& o) {
    if (!o) return nullptr;
    return {{"x", o->x},
            {"value", o->value},
            {"eps_numerator", o->eps_numerator},
            {"eps_denominator", o->eps_denominator},
            {"certificate_residual", o->certificate_residual}};
}

// --- Command table ---------------------------------------------------------

struct Globals {
    std::string format = "table";
    std::string output;
    bool trace = false;
};

struct Context {
    const Globals& globals;
    std::ostream& err;
    std::string preamble;  // streamed before the report (tableau traces)
};

using Runner = std::function<int(Context&, Report&)>;

struct Command {
    CLI::App* app;
    Runner run;
};

class Builder {
public:
    explicit Builder(std::vector<Command>& commands) : commands_(commands) {}

    template <class Args>
    void add(CLI::App* parent, const std::string& name, const std::string& help,
             const std::function<void(CLI::App*, Args&)>& options,
             const std::function<int(Context&, Args&, Report&)>& run) {
        auto args = std::make_shared<Args>();
        CLI::App* app = parent->add_subcommand(name, help);
        options(app, *args);
        commands_.push_back({app, [args, run](Context& c, Report& r) { return run(c, *args, r); }});
    }

private:
    std::vector<Command>& commands_;
};

// --- linalg ------------------------------------------------------------------

struct Files {
    std::vector<std::string> paths;
    Opt alpha, beta;
};

void linalg_commands(CLI::App* root, Builder& b) {
    CLI::App* g = root->add_subcommand("linalg", "Vector and matrix operations on matrix text files");
    g->require_subcommand(1);
    const auto files = [](std::size_t n, const std::string& what) {
        return [n, what](CLI::App* app, Files& f) { app->add_option("files", f.paths, what)->required()->expected(static_cast<int>(n)); };
    };
    const auto matrix_report = [](Report& r, const Matrix& m) { r.matrix = m; };

    b.add<Files>(g, "mul", "Matrix product A B", files(2, "A and B"), [=](Context&, Files& f, Report& r) {
        matrix_report(r, linalg::mat_mul(load_matrix(f.paths[0]), load_matrix(f.paths[1])));
        return 0;
    });
    b.add<Files>(g, "transpose", "Transposed matrix", files(1, "A"), [=](Context&, Files& f, Report& r) {
        matrix_report(r, load_matrix(f.paths[0]).transposed());
        return 0;
    });
    b.add<Files>(g, "inverse", "Inverse matrix", files(1, "A"), [=](Context&, Files& f, Report& r) {
        matrix_report(r, linsolve::inverse(load_matrix(f.paths[0])));
        return 0;
    });
    b.add<Files>(g, "det", "Determinant", files(1, "A"), [](Context&, Files& f, Report& r) {
        const double d = linsolve::determinant(load_matrix(f.paths[0]));
        r.data["determinant"] = d;
        r.data["singular"] = linsolve::is_singular(d);
        return 0;
    });
    b.add<Files>(g, "rref", "Reduced row-echelon form", files(1, "A"), [](Context&, Files& f, Report& r) {
        const auto res = linsolve::rref(load_matrix(f.paths[0]));
        r.data["rank"] = res.rank;
        json cols = json::array();
        for (auto c : res.pivot_cols) cols.push_back(c + 1);
        r.data["pivot_columns"] = cols;
        r.data["det_factor"] = res.det_factor;
        r.data["reduced"] = to_json(res.reduced);
        return 0;
    });
    b.add<Files>(g, "rank", "Matrix rank", files(1, "A"), [](Context&, Files& f, Report& r) {
        r.data["rank"] = linsolve::rank(load_matrix(f.paths[0]));
        return 0;
    });
    b.add<Files>(g, "eigen", "Eigenpairs of a symmetric matrix, n <= 3", files(1, "A"),
                 [](Context&, Files& f, Report& r) {
                     json pairs = json::array();
                     for (const auto& p : linsolve::eigen_sym(load_matrix(f.paths[0])))
                         pairs.push_back({{"value", p.value}, {"vector", to_json(p.vector)}});
                     r.data["eigenpairs"] = pairs;
                     return 0;
                 });
    b.add<Files>(
        g, "combine", "alpha A + beta B",
        [](CLI::App* app, Files& f) {
            app->add_option("files", f.paths, "A and B")->required()->expected(2);
            add(app, f.alpha, "--alpha", "Factor of A (default 1)");
            add(app, f.beta, "--beta", "Factor of B (default 1)");
        },
        [=](Context&, Files& f, Report& r) {
            matrix_report(r, linalg::mat_combine(f.alpha.num().value_or(1.0), load_matrix(f.paths[0]),
                                                 f.beta.num().value_or(1.0), load_matrix(f.paths[1])));
            return 0;
        });
    b.add<Files>(g, "dot", "Scalar product of two vectors", files(2, "a and b"), [](Context&, Files& f, Report& r) {
        const Vector a = load_vector(f.paths[0]).transposed();
        const Vector v = load_vector(f.paths[1]);
        r.data["dot"] = linalg::dot(a, v);
        r.data["orthogonal"] = linalg::orthogonal(a, v);
        return 0;
    });
    b.add<Files>(g, "norm", "Euclidean length", files(1, "a"), [](Context&, Files& f, Report& r) {
        r.data["norm"] = linalg::norm(load_vector(f.paths[0]));
        return 0;
    });
    b.add<Files>(g, "angle", "Angle between two vectors", files(2, "a and b"), [](Context&, Files& f, Report& r) {
        const double phi = linalg::angle(load_vector(f.paths[0]), load_vector(f.paths[1]));
        r.data["radians"] = phi;
        r.data["degrees"] = phi * 180.0 / std::numbers::pi;
        return 0;
    });
}

// --- solve -------------------------------------------------------------------

void solve_command(CLI::App* root, Builder& b) {
    b.add<Files>(
        root, "solve", "Solve the linear system A x = b",
        [](CLI::App* app, Files& f) { app->add_option("files", f.paths, "A and b")->required()->expected(2); },
        [](Context& c, Files& f, Report& r) {
            const auto set = linsolve::solve({load_matrix(f.paths[0]), load_vector(f.paths[1])});
            r.data["kind"] = linsolve::to_string(set.kind);
            r.data["particular"] = set.particular ? to_json(*set.particular) : json(nullptr);
            json dirs = json::array();
            for (const auto& d : set.free_directions) dirs.push_back(to_json(d));
            r.data["free_directions"] = dirs;
            r.data["rank_A"] = set.rank_a;
            r.data["rank_Ab"] = set.rank_ab;
            if (set.kind == linsolve::SolutionKind::None) {
                c.err << "no solution: rank(A) = " << set.rank_a << " < rank(A|b) = " << set.rank_ab << "\n";
                return 2;
            }
            return 0;
        });
}

// --- leontief ------------------------------------------------------------------

struct LeontiefArgs {
    std::string table, demand;
    Opt resources, next_demand, emit_dir;
};

void leontief_command(CLI::App* root, Builder& b) {
    b.add<LeontiefArgs>(
        root, "leontief", "Input-output analysis of a deliveries table",
        [](CLI::App* app, LeontiefArgs& a) {
            app->add_option("table", a.table, "Deliveries table n_ij (matrix text)")->required();
            app->add_option("demand", a.demand, "Final demand y (vector text)")->required();
            add(app, a.resources, "--resources", "Resource matrix R (matrix text)");
            add(app, a.next_demand, "--next-demand", "Forecast final demand (vector text)");
            add(app, a.emit_dir, "--emit-dir", "Directory receiving P, 1-P, (1-P)^-1, q, y as matrix text");
        },
        [](Context&, LeontiefArgs& a, Report& r) {
            const auto tm = leontief::model_from_table({load_matrix(a.table), load_vector(a.demand)});
            std::optional<Matrix> res;
            if (a.resources.given()) res = load_matrix(a.resources.text);
            const leontief::LeontiefModel model(tm.model.input_output(), res);

            r.data["total_output"] = to_json(tm.total_output);
            r.data["final_demand"] = to_json(tm.final_demand);
            r.data["input_output"] = to_json(model.input_output());
            r.data["technology"] = to_json(model.technology_matrix());
            r.data["total_demand"] = to_json(model.total_demand_matrix());
            std::optional<Vector> v;
            if (res) {
                v = leontief::resource_requirements(model, tm.total_output, leontief::Given::TotalOutput);
                r.data["resources"] = to_json(*v);
            }
            if (a.next_demand.given()) {
                const auto fc = leontief::forecast(model, load_vector(a.next_demand.text));
                json f{{"total_output", to_json(fc.total_output.value)},
                       {"has_negative", fc.total_output.has_negative}};
                if (fc.resources) f["resources"] = to_json(*fc.resources);
                r.data["forecast"] = f;
            }
            if (a.emit_dir.given()) {
                const std::filesystem::path dir = a.emit_dir.text;
                std::filesystem::create_directories(dir);
                io::write_text_file(dir / "P.txt", io::format_matrix_text(model.input_output()));
                io::write_text_file(dir / "technology.txt", io::format_matrix_text(model.technology_matrix()));
                io::write_text_file(dir / "total_demand.txt", io::format_matrix_text(model.total_demand_matrix()));
                io::write_text_file(dir / "q.txt", io::format_vector_text(tm.total_output));
                io::write_text_file(dir / "y.txt", io::format_vector_text(tm.final_demand));
                if (v) io::write_text_file(dir / "v.txt", io::format_vector_text(*v));
            }
            return 0;
        });
}

// --- lp ------------------------------------------------------------------------

struct LpArgs {
    std::string file;
    bool oracle = false;
};

void lp_commands(CLI::App* root, Builder& b) {
    CLI::App* g = root->add_subcommand("lp", "Linear programming");
    g->require_subcommand(1);
    b.add<LpArgs>(
        g, "solve", "Solve an LP given as JSON",
        [](CLI::App* app, LpArgs& a) {
            app->add_option("file", a.file, "LP JSON file")->required();
            app->add_flag("--oracle", a.oracle, "Cross-check with vertex enumeration (two variables)");
        },
        [](Context& c, LpArgs& a, Report& r) {
            const auto lp = load_lp(a.file);
            const bool trace = c.globals.trace;
            auto sol = simplex::solve_simplex(lp, trace);
            std::string method = "simplex";
            std::optional<simplex::VertexReport> vr;
            if (a.oracle || (sol.status == simplex::Status::Unsupported && lp.variables() == 2))
                vr = simplex::vertex_oracle(lp);
            if (sol.status == simplex::Status::Unsupported && vr) {
                c.err << "note: " << sol.message << "; using vertex enumeration\n";
                sol = vr->solution;
                method = "vertex enumeration";
            }

            r.data = lp_json(sol);
            r.data["method"] = method;
            if (!lp.names.empty()) r.data["names"] = lp.names;
            if (vr && a.oracle) {
                json o = lp_json(vr->solution);
                o.erase("iterations");
                json verts = json::array();
                for (const auto& v : vr->vertices) verts.push_back({v[0], v[1]});
                o["vertices"] = verts;
                json opt = json::array();
                for (const auto& v : vr->optimal_vertices) opt.push_back({v[0], v[1]});
                o["optimal_vertices"] = opt;
                o["isoquant_slope"] = optional_json(vr->isoquant_slope);
                r.data["oracle"] = o;
            }
            if (trace) {
                if (c.globals.format == "json") {
                    json t = json::array();
                    for (const auto& tab : sol.trace) t.push_back(to_json(tab.grid));
                    r.data["trace"] = t;
                } else {
                    for (const auto& tab : sol.trace) c.preamble += tableau_text(tab);
                }
            }
            if (sol.status != simplex::Status::Optimal) {
                c.err << "status " << simplex::to_string(sol.status);
                if (!sol.message.empty()) c.err << ": " << sol.message;
                c.err << "\n";
                return 2;
            }
            return 0;
        });
}

// --- finance ---------------------------------------------------------------------

struct FinArgs {
    Opt k0, kn, q, p, n, m, e, r0, rn, t, annuity, years, a, life, rate, target, r;
    bool solve = false;
};

void finance_commands(CLI::App* root, Builder& b) {
    CLI::App* g = root->add_subcommand("finance", "Financial mathematics");
    g->require_subcommand(1);
    const std::set<std::string> money{"k0",      "kn",      "e",        "present_value", "r0",
                                      "rn",      "annuity", "final_annuity", "first_year_interest",
                                      "everlasting_amount", "remaining", "opening_balance", "interest",
                                      "payment", "balance", "first_year_interval_interest", "r"};

    b.add<FinArgs>(
        g, "compound", "K_n = K_0 q^n: give three of k0, kn, q|p, n",
        [](CLI::App* app, FinArgs& a) {
            add(app, a.k0, "--k0", "Initial capital");
            add(app, a.kn, "--kn", "Final capital");
            add(app, a.q, "--q", "Interest factor");
            add(app, a.p, "--p", "Interest rate in percent");
            add(app, a.n, "--n", "Years");
        },
        [=](Context&, FinArgs& a, Report& r) {
            const auto res = finmath::compound_solve({a.k0.num(), a.kn.num(), factor(a.q, a.p), a.n.num()});
            r.data = {{"k0", res.k0}, {"kn", res.kn}, {"q", res.q}, {"p", (res.q - 1.0) * 100.0}, {"n", res.n}};
            r.money = money;
            return 0;
        });
    b.add<FinArgs>(
        g, "effective", "Effective rate of m compounding periods per year",
        [](CLI::App* app, FinArgs& a) {
            add(app, a.p, "--p", "Nominal rate in percent")->required();
            add(app, a.m, "--m", "Periods per year")->required();
        },
        [](Context&, FinArgs& a, Report& r) {
            const auto res = finmath::effective_rate(a.p.need(), integer(a.m.text, "--m"));
            r.data = {{"q_eff", res.q_eff}, {"p_eff", res.p_eff}};
            return 0;
        });
    b.add<FinArgs>(
        g, "installment", "Installment savings: give three of kn, e, q|p, n",
        [](CLI::App* app, FinArgs& a) {
            add(app, a.kn, "--kn", "Final capital");
            add(app, a.e, "--e", "Yearly installment");
            add(app, a.q, "--q", "Interest factor");
            add(app, a.p, "--p", "Interest rate in percent");
            add(app, a.n, "--n", "Years");
        },
        [=](Context&, FinArgs& a, Report& r) {
            const auto res = finmath::installment_solve({a.kn.num(), a.e.num(), factor(a.q, a.p), a.n.num()});
            r.data = {{"kn", res.kn},
                      {"e", res.e},
                      {"q", res.q},
                      {"p", (res.q - 1.0) * 100.0},
                      {"n", res.n},
                      {"present_value", res.present_value}};
            r.money = money;
            return 0;
        });
    b.add<FinArgs>(
        g, "redemption", "Redemption plan (r0, p, t|annuity) or, with --solve, four of rn, r0, q|p, n, annuity",
        [](CLI::App* app, FinArgs& a) {
            add(app, a.r0, "--r0", "Initial debt");
            add(app, a.p, "--p", "Interest rate in percent");
            add(app, a.q, "--q", "Interest factor (with --solve)");
            add(app, a.t, "--t", "Initial redemption rate in percent");
            add(app, a.annuity, "--annuity", "Yearly annuity");
            add(app, a.years, "--years", "Plan horizon in years");
            add(app, a.rn, "--rn", "Remaining debt (with --solve)");
            add(app, a.n, "--n", "Years (with --solve)");
            app->add_flag("--solve", a.solve, "Solve the remaining-debt formula for the missing value");
        },
        [=](Context&, FinArgs& a, Report& r) {
            r.money = money;
            if (a.solve) {
                const auto res = finmath::redemption_solve(
                    {a.rn.num(), a.r0.num(), factor(a.q, a.p), a.n.num(), a.annuity.num()});
                r.data = {{"rn", res.rn},
                          {"r0", res.r0},
                          {"q", res.q},
                          {"p", (res.q - 1.0) * 100.0},
                          {"n", res.n},
                          {"annuity", res.annuity},
                          {"redemption_percent", res.redemption_percent}};
                return 0;
            }
            std::optional<int> horizon;
            if (a.years.given()) horizon = integer(a.years.text, "--years");
            const auto plan = finmath::redemption_plan(a.r0.need(), a.p.need(), {a.t.num(), a.annuity.num()}, horizon);
            r.data = {{"annuity", plan.annuity},
                      {"initial_redemption_percent", plan.initial_redemption_percent},
                      {"analytic_years", plan.analytic_years},
                      {"final_annuity", plan.final_annuity},
                      {"schedule", to_json(plan.schedule)}};
            r.schedule = plan.schedule;
            return 0;
        });
    b.add<FinArgs>(
        g, "pension", "Pension plan with m withdrawals of a per year",
        [](CLI::App* app, FinArgs& a) {
            add(app, a.k0, "--k0", "Initial capital")->required();
            add(app, a.p, "--p", "Interest rate in percent")->required();
            add(app, a.m, "--m", "Withdrawals per year")->required();
            add(app, a.a, "--a", "Amount per withdrawal")->required();
            add(app, a.years, "--years", "Plan horizon in years");
        },
        [=](Context&, FinArgs& a, Report& r) {
            std::optional<int> horizon;
            if (a.years.given()) horizon = integer(a.years.text, "--years");
            const auto plan =
                finmath::pension_plan(a.k0.need(), a.p.need(), integer(a.m.text, "--m"), a.a.need(), horizon);
            r.data = {{"first_year_interest", plan.first_year_interest},
                      {"duration", optional_json(plan.duration)},
                      {"everlasting_capable", plan.everlasting_capable},
                      {"everlasting_amount", plan.everlasting_amount},
                      {"first_year_interval_interest", plan.first_year_interval_interest},
                      {"schedule", to_json(plan.schedule)}};
            r.schedule = plan.schedule;
            r.money = money;
            return 0;
        });
    b.add<FinArgs>(
        g, "depreciation", "Linear (--life) or declining-balance (--rate) depreciation",
        [](CLI::App* app, FinArgs& a) {
            add(app, a.k0, "--k0", "Acquisition value")->required();
            add(app, a.life, "--life", "Useful life N in years (linear)");
            add(app, a.rate, "--rate", "Depreciation rate in percent (declining)");
            add(app, a.years, "--years", "Years");
            add(app, a.target, "--target", "Remaining value to reach (declining; solves for years or rate)");
        },
        [=](Context&, FinArgs& a, Report& r) {
            r.money = money;
            const double k0 = a.k0.need();
            if (a.target.given()) {
                if (a.rate.given() == a.years.given())
                    throw InvalidInput("--target needs exactly one of --rate or --years");
                if (a.rate.given())
                    r.data = {{"years", finmath::declining_years(k0, a.target.need(), a.rate.need())}};
                else
                    r.data = {{"rate", finmath::declining_percent(k0, a.target.need(), a.years.need())}};
                return 0;
            }
            if (a.life.given() == a.rate.given()) throw InvalidInput("give exactly one of --life or --rate");
            finmath::DepreciationMethod method = finmath::LinearDepreciation{0};
            if (a.life.given())
                method = finmath::LinearDepreciation{integer(a.life.text, "--life")};
            else
                method = finmath::DecliningDepreciation{a.rate.need()};
            if (!a.years.given()) throw InvalidInput("--years is required");
            const auto res = finmath::depreciation(k0, method, integer(a.years.text, "--years"));
            r.data = {{"remaining", res.remaining}, {"schedule", to_json(res.schedule)}};
            r.schedule = res.schedule;
            return 0;
        });
    b.add<FinArgs>(
        g, "master", "K_n = K_0 q^n + R (q^n - 1)/(q - 1)",
        [](CLI::App* app, FinArgs& a) {
            add(app, a.k0, "--k0", "Initial value")->required();
            add(app, a.q, "--q", "Factor q");
            add(app, a.p, "--p", "Rate in percent");
            add(app, a.r, "--r", "Yearly payment R")->required();
            add(app, a.n, "--n", "Years")->required();
        },
        [=](Context&, FinArgs& a, Report& r) {
            const auto q = factor(a.q, a.p);
            if (!q) throw InvalidInput("give --q or --p");
            r.data = {{"kn", finmath::master_formula(a.k0.need(), *q, a.r.need(), a.n.need())}};
            r.money = money;
            return 0;
        });
}

// --- calc ------------------------------------------------------------------------

struct CalcArgs {
    std::string expr;
    std::string var = "x";
    Opt at, window, from, to, tol, grid;
};

void calc_commands(CLI::App* root, Builder& b) {
    CLI::App* g = root->add_subcommand("calc", "Calculus on expressions in one variable");
    g->require_subcommand(1);
    const auto base = [](CLI::App* app, CalcArgs& a) {
        app->add_option("expr", a.expr, "Expression, e.g. \"x^3 - 6*x^2 + 15*x + 40\"")->required();
        app->add_option("--var", a.var, "Variable name (default x)");
    };

    b.add<CalcArgs>(
        g, "diff", "Symbolic derivative",
        [=](CLI::App* app, CalcArgs& a) {
            base(app, a);
            add(app, a.at, "--at", "Also evaluate f, f' and the tangent at X");
        },
        [](Context&, CalcArgs& a, Report& r) {
            const auto e = calculus::parse(a.expr, a.var);
            const auto d = calculus::differentiate(e);
            r.data["expression"] = e.to_string(a.var);
            r.data["derivative"] = d.to_string(a.var);
            if (a.at.given()) {
                const double x = a.at.need();
                const auto t = calculus::tangent_line(e, x);
                r.data["at"] = x;
                r.data["value"] = e(x);
                r.data["slope"] = t.slope;
                r.data["tangent_intercept"] = t.intercept;
            }
            return 0;
        });
    b.add<CalcArgs>(
        g, "elasticity", "Elasticity x f'/f and second elasticity",
        [=](CLI::App* app, CalcArgs& a) {
            base(app, a);
            add(app, a.at, "--at", "Point x > 0")->required();
        },
        [](Context&, CalcArgs& a, Report& r) {
            const auto e = calculus::parse(a.expr, a.var);
            const double x = a.at.need();
            const double eps = calculus::elasticity(e, x);
            r.data["at"] = x;
            r.data["value"] = e(x);
            r.data["elasticity"] = eps;
            r.data["class"] = calculus::to_string(calculus::classify_elasticity(eps));
            try {
                r.data["second_elasticity"] = calculus::second_elasticity(e, x);
            } catch (const DomainError&) {
                r.data["second_elasticity"] = nullptr;
            }
            return 0;
        });
    b.add<CalcArgs>(
        g, "roots", "Real roots in a window",
        [=](CLI::App* app, CalcArgs& a) {
            base(app, a);
            add(app, a.window, "--window", "LO:HI")->required();
            add(app, a.tol, "--tol", "Bisection tolerance (default 1e-10)");
            add(app, a.grid, "--grid", "Sign-scan cells (default 1024)");
        },
        [](Context&, CalcArgs& a, Report& r) {
            const auto e = calculus::parse(a.expr, a.var);
            const auto [lo, hi] = window(a.window.text);
            calculus::RootOptions opt;
            if (a.tol.given()) opt.tol = a.tol.need();
            if (a.grid.given()) opt.grid = integer(a.grid.text, "--grid");
            r.data["roots"] = calculus::roots(e, lo, hi, opt);
            return 0;
        });
    b.add<CalcArgs>(
        g, "integrate", "Definite integral",
        [=](CLI::App* app, CalcArgs& a) {
            base(app, a);
            add(app, a.from, "--from", "Lower limit (inf allowed for power laws)")->required();
            add(app, a.to, "--to", "Upper limit (inf allowed for power laws)")->required();
        },
        [](Context&, CalcArgs& a, Report& r) {
            const auto e = calculus::parse(a.expr, a.var);
            const double lo = limit(a.from.text, "--from"), hi = limit(a.to.text, "--to");
            const auto prim = calculus::antiderivative(e);
            r.data["value"] = calculus::integrate(e, lo, hi);
            r.data["primitive"] = prim ? json(prim->to_string(a.var)) : json(nullptr);
            return 0;
        });
    b.add<CalcArgs>(
        g, "report", "Curve sketch of a polynomial or rational function",
        [=](CLI::App* app, CalcArgs& a) {
            base(app, a);
            add(app, a.window, "--window", "LO:HI")->required();
        },
        [](Context&, CalcArgs& a, Report& r) {
            const auto e = calculus::parse(a.expr, a.var);
            const auto [lo, hi] = window(a.window.text);
            r.data = curve_json(calculus::curve_report(e, lo, hi));
            return 0;
        });
}

// --- econ ------------------------------------------------------------------------

struct EconArgs {
    Opt a3, a2, a1, a0, price, cost, window, demand, supply, pu, po, a, x;
    std::string var = "p";
};

void econ_commands(CLI::App* root, Builder& b) {
    CLI::App* g = root->add_subcommand("econ", "Economic functions");
    g->require_subcommand(1);
    const std::set<std::string> money{"u1", "u2", "u3", "consumer_surplus", "producer_surplus"};

    b.add<EconArgs>(
        g, "cost", "Cost phases of K = a3 x^3 + a2 x^2 + a1 x + a0",
        [](CLI::App* app, EconArgs& a) {
            add(app, a.a3, "--a3", "")->required();
            add(app, a.a2, "--a2", "")->required();
            add(app, a.a1, "--a1", "")->required();
            add(app, a.a0, "--a0", "")->required();
        },
        [](Context&, EconArgs& a, Report& r) {
            const auto c = econ::cost_analysis({a.a3.need(), a.a2.need(), a.a1.need(), a.a0.need()});
            r.data = {{"x_w", c.x_w},
                      {"x_g1", c.x_g1},
                      {"x_g2", c.x_g2},
                      {"mes_coincides", c.mes_coincides},
                      {"marginal_min", c.marginal_min},
                      {"tangent_g1", {{"slope", c.tangent_g1.slope}, {"intercept", c.tangent_g1.intercept}}},
                      {"tangent_g2", {{"slope", c.tangent_g2.slope}, {"intercept", c.tangent_g2.intercept}}},
                      {"residual_g1", c.residual_g1},
                      {"residual_g2", c.residual_g2},
                      {"elasticity_g2", c.elasticity_g2}};
            return 0;
        });
    b.add<EconArgs>(
        g, "profit", "Break-even, profit maximum and Cournot point",
        [](CLI::App* app, EconArgs& a) {
            add(app, a.price, "--price", "Price-response function p(x)")->required();
            add(app, a.cost, "--cost", "a3,a2,a1,a0")->required();
            add(app, a.window, "--window", "0:XMAX")->required();
        },
        [](Context&, EconArgs& a, Report& r) {
            const auto k = number_list(a.cost.text, "--cost");
            if (k.size() != 4) throw InvalidInput("--cost needs four coefficients a3,a2,a1,a0");
            const auto [lo, hi] = window(a.window.text);
            if (lo != 0.0) throw InvalidInput("profit window must start at 0");
            const econ::MarketModel m{calculus::parse(a.price.text, "x"), {k[0], k[1], k[2], k[3]}, hi};
            const auto pa = econ::profit_analysis(m);
            r.data = {{"x_s", optional_json(pa.x_s)},
                      {"x_g", optional_json(pa.x_g)},
                      {"x_m", optional_json(pa.x_m)},
                      {"g_max", optional_json(pa.g_max)},
                      {"parallel_tangent_residual", optional_json(pa.parallel_tangent_residual)}};
            if (pa.x_m) {
                const auto cp = econ::cournot(m);
                r.data["cournot"] = {{"x", cp.x_m},
                                     {"price", cp.price},
                                     {"price_elasticity", cp.price_elasticity},
                                     {"amoroso_robinson_residual", cp.amoroso_robinson_residual}};
            } else {
                r.data["cournot"] = nullptr;
            }
            const Expr x = Expr::variable();
            r.data["average_profit_optimum"] = ratio_json(econ::ratio_optimum(m.profit(), x, 0.0, hi));
            r.data["efficiency_optimum"] = ratio_json(econ::ratio_optimum(m.revenue(), m.cost.total(), 0.0, hi));
            return 0;
        });
    b.add<EconArgs>(
        g, "surplus", "Market equilibrium and sales strategies",
        [](CLI::App* app, EconArgs& a) {
            add(app, a.demand, "--demand", "Demand N(p)")->required();
            add(app, a.supply, "--supply", "Supply A(p)")->required();
            add(app, a.pu, "--pu", "Lowest price")->required();
            add(app, a.po, "--po", "Highest price")->required();
            app->add_option("--var", a.var, "Variable name (default p)");
        },
        [=](Context&, EconArgs& a, Report& r) {
            const auto s = econ::market_strategies(calculus::parse(a.demand.text, a.var),
                                                   calculus::parse(a.supply.text, a.var), a.pu.need(), a.po.need());
            r.data = {{"p_m", s.equilibrium.price},
                      {"quantity", s.equilibrium.quantity},
                      {"prohibitive_price", optional_json(s.equilibrium.prohibitive_price)},
                      {"saturation_quantity", optional_json(s.equilibrium.saturation_quantity)},
                      {"u1", s.u1},
                      {"u2", s.u2},
                      {"u3", s.u3},
                      {"consumer_surplus", s.consumer_surplus},
                      {"producer_surplus", s.producer_surplus}};
            r.money = money;
            return 0;
        });
    b.add<EconArgs>(
        g, "value", "Psychological value function",
        [](CLI::App* app, EconArgs& a) {
            add(app, a.a, "--a", "Scale a > 0")->required();
            add(app, a.x, "--x", "Gain (x >= 0) or loss (x < 0)")->required();
        },
        [](Context&, EconArgs& a, Report& r) {
            r.data = {{"value", econ::psych_value(a.x.need(), a.a.need())}};
            return 0;
        });
}

}  // namespace

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantitative-economics toolkit", "qecon"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals globals;
    app.add_option("--format", globals.format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--output", globals.output, "Write the result to PATH instead of stdout");
    app.add_flag("--trace", globals.trace, "Stream intermediate tableaux (lp solve)");

    std::vector<Command> commands;
    Builder b(commands);
    linalg_commands(&app, b);
    solve_command(&app, b);
    leontief_command(&app, b);
    lp_commands(&app, b);
    finance_commands(&app, b);
    calc_commands(&app, b);
    econ_commands(&app, b);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        for (auto& c : commands) {
            if (!c.app->parsed()) continue;
            Context ctx{globals, err, {}};
            Report report;
            const int code = c.run(ctx, report);
            const std::string text = ctx.preamble + render(report, parse_format(globals.format));
            if (globals.output.empty())
                out << text;
            else
                io::write_text_file(globals.output, text);
            return code;
        }
        err << "error: no command given\n";
        return 1;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const NoSolution& e) {
        err << "no solution: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qecon::cli
