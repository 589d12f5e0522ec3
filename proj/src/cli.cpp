#include "qwirt/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwirt/almansi.hpp"
#include "qwirt/expression.hpp"
#include "qwirt/slice_io.hpp"
#include "qwirt/wirtinger.hpp"

namespace qwirt {

namespace {

using nlohmann::json;

enum Exit { kPass = 0, kFail = 1, kError = 2 };

struct Options {
    std::string expr;
    int n = 0;
    FdConfig fd;
    int samples = 20;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string format = "json";

    int m = 0;
    std::string at;
    std::string flavor = "sp";
    int level = 0;
    std::string mode = "symbolic";
    std::string wrap;
    int var = 0;
    std::string kind = "value";
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Outcome {
    json report;
    std::optional<Table> table;
    int code = kPass;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string num(double v) {
    json j = v;
    return j.dump();
}

class Session {
public:
    explicit Session(const Options& o) : o_(o) {
        expression_ = parse_expression(o.expr);
        const int inferred = std::max(1, max_variable(expression_));
        n_ = o.n > 0 ? o.n : inferred;
        f_ = lower(expression_, n_);
        const std::uint64_t* explicit_seed = o.seed ? &*o.seed : nullptr;
        seed_ = resolve_seed(explicit_seed);
        if (o.samples < 1) throw InvalidArgument("--samples must be positive");
    }

    Outcome eval() const {
        const std::vector<QuatD> p = point();
        const QuatD v = evaluate(f_, p);
        return {{{"expression", to_expression(f_)}, {"value", to_string(v)}, {"components", quaternion_json(v)}}, std::nullopt};
    }

    Outcome wirtinger(bool bar) const {
        require_var(o_.m, "--m");
        const SliceFunction r = bar ? wirtinger_thetabar(f_, o_.m) : wirtinger_theta(f_, o_.m);
        const std::string op = std::string(bar ? "thetabar_" : "theta_") + std::to_string(o_.m);
        json report{{"operator", op}, {"expression", to_expression(f_)}, {"result", to_expression(r)}, {"stem", to_json(r)}};
        if (!o_.at.empty()) {
            const std::vector<QuatD> p = point();
            const QuatD exact = evaluate(r, p);
            report["value"] = to_string(exact);
            if (o_.m <= kMaxNumericWirtinger) {
                const NumericField lift = NumericField::lift(f_, o_.fd);
                const QuatD numeric = (bar ? wirtinger_thetabar(lift, o_.m) : wirtinger_theta(lift, o_.m))(p);
                report["numeric_value"] = quaternion_json(numeric);
                report["numeric_deviation"] = abs(numeric - exact);
            } else {
                report["warnings"] = json::array({"numeric realization is capped at m <= 3"});
            }
        }
        return {report, std::nullopt};
    }

    Outcome spherical() const {
        require_var(o_.var, "--var");
        if (o_.kind != "value" && o_.kind != "derivative") throw InvalidArgument("--kind must be value or derivative");
        const bool value = o_.kind == "value";
        const SliceFunction r = value ? spherical_value(f_, o_.var) : spherical_derivative(f_, o_.var);
        return {{{"operation", "spherical_" + o_.kind + "_" + std::to_string(o_.var)},
                 {"expression", to_expression(f_)},
                 {"result", to_expression(r)},
                 {"stem", to_json(r)}},
                std::nullopt};
    }

    Outcome almansi() const {
        const int level = o_.level > 0 ? o_.level : n_;
        if (level > n_) throw ArityError("--level exceeds n = " + std::to_string(n_));
        const double tol = o_.tol.value_or(1e-4);
        const std::vector<Point> points = sample();
        const ComponentFamily sp = sp_components(f_, level);
        std::optional<ComponentFamily> numeric;
        if (o_.flavor == "a") {
            numeric = a_components(NumericField::lift(f_, o_.fd), level);
        } else if (o_.flavor == "gamma") {
            numeric = gamma_components(NumericField::lift(f_, o_.fd), level);
        } else if (o_.flavor != "sp") {
            throw InvalidArgument("--flavor must be sp, a or gamma");
        }
        const ComponentFamily& family = numeric ? *numeric : sp;
        const CompiledSlice exact(f_);

        json entries = json::object();
        Table table;
        for (std::uint32_t bits = 0; bits < family.size(); ++bits) {
            const SubsetMask k(bits);
            if (!numeric) {
                entries[to_string(k)] = to_expression(sp.slice_entry(k));
                continue;
            }
            entries[to_string(k)] = "numeric";
            const NumericField& a = family.field(k);
            const NumericField& b = sp.field(k);
            const double gap = max_over([&](const Point& p) { return abs(a(p) - b(p)); }, points);
            table.rows.push_back({to_string(k), num(gap)});
        }
        const double residual =
            max_over([&](const Point& p) { return abs(reconstruct(family, p) - exact(p)); }, points);
        json residuals{{"max", residual}, {"samples", o_.samples}};
        bool pass = residual <= tol;
        if (!numeric) {
            const bool exact_match = reconstruct(sp) == f_;
            residuals["exact"] = exact_match;
            pass = pass && exact_match;
            table.header = {"mask", "entry"};
            for (std::uint32_t bits = 0; bits < sp.size(); ++bits) {
                table.rows.push_back({to_string(SubsetMask(bits)), to_expression(sp.slice_entry(SubsetMask(bits)))});
            }
        } else {
            table.header = {"mask", "sp_deviation"};
        }
        json report{{"level", level},
                    {"flavor", to_string(family.flavor())},
                    {"entries", entries},
                    {"reconstruction_residuals", residuals},
                    {"tolerance", tol},
                    {"seed", seed_},
                    {"verdict", pass ? "pass" : "fail"}};
        if (numeric) {
            json dev = json::object();
            for (const auto& row : table.rows) dev[row[0]] = json::parse(row[1]);
            report["sp_deviation"] = dev;
        }
        return {report, table, pass ? kPass : kFail};
    }

    Outcome check_regular() const {
        RegularityReport r;
        if (o_.mode == "symbolic") {
            r = check_regularity(f_);
        } else if (o_.mode == "numeric") {
            r = check_regularity(NumericField::lift(f_, o_.fd), sample(), o_.tol.value_or(1e-3), true, seed_);
        } else {
            throw InvalidArgument("--mode must be symbolic or numeric");
        }
        std::string worst = r.residuals.empty() ? std::string("thetabar") : r.residuals.front().op;
        double worst_r = -1.0;
        json residuals = json::array();
        Table table{{"operator", "m", "max_residual"}, {}};
        for (const auto& o : r.residuals) {
            if (o.max_residual > worst_r) {
                worst_r = o.max_residual;
                worst = o.op;
            }
            residuals.push_back({{"operator", o.op}, {"m", o.m}, {"max_residual", o.max_residual}});
            table.rows.push_back({o.op, std::to_string(o.m), num(o.max_residual)});
        }
        json report{{"operator", worst},
                    {"realization", r.realization},
                    {"max_residual", r.max_residual()},
                    {"tolerance", r.tolerance},
                    {"verdict", to_string(r.verdict)},
                    {"samples", r.samples},
                    {"seed", r.realization == "numeric" ? json(seed_) : json(nullptr)},
                    {"residuals", residuals},
                    {"warnings", r.warnings}};
        return {report, table, r.verdict == Verdict::Regular ? kPass : kFail};
    }

    Outcome check_slice() const {
        NumericField field = NumericField::lift(f_, o_.fd);
        std::string subject = to_expression(f_);
        if (!o_.wrap.empty()) {
            require_var(o_.var, "--var");
            if (o_.wrap == "theta") {
                field = theta_global(field, o_.var);
            } else if (o_.wrap == "thetabar") {
                field = thetabar_global(field, o_.var);
            } else {
                throw InvalidArgument("--wrap must be theta or thetabar");
            }
            subject = o_.wrap + "_x" + std::to_string(o_.var) + "(" + subject + ")";
        }
        const SlicenessReport r = check_strong_sliceness(field, sample(), o_.tol.value_or(1e-3));
        json residuals = json::array();
        Table table{{"m", "h", "i", "j", "mask", "max_residual"}, {}};
        for (const auto& s : r.residuals) {
            residuals.push_back({{"m", s.m},
                                 {"h", s.h},
                                 {"i", s.i},
                                 {"j", s.j},
                                 {"mask", to_string(s.k)},
                                 {"max_residual", s.max_residual}});
            table.rows.push_back({std::to_string(s.m), std::to_string(s.h), std::to_string(s.i), std::to_string(s.j),
                                  to_string(s.k), num(s.max_residual)});
        }
        json report{{"operator", "strong_sliceness"},
                    {"field", subject},
                    {"realization", "numeric"},
                    {"max_residual", r.max_residual()},
                    {"tolerance", r.tolerance},
                    {"verdict", r.passes() ? "slice" : "not slice"},
                    {"samples", r.samples},
                    {"seed", seed_},
                    {"residuals", residuals}};
        return {report, table, r.passes() ? kPass : kFail};
    }

    Outcome crosscheck() const {
        const double tol = o_.tol.value_or(1e-3);
        const std::vector<Point> points = sample();
        const NumericField lift = NumericField::lift(f_, o_.fd);
        Table table{{"check", "max_deviation"}, {}};
        json checks = json::array();
        double worst = 0.0;
        auto record = [&](const std::string& name, double d) {
            worst = std::max(worst, std::isnan(d) ? INFINITY : d);
            checks.push_back({{"check", name}, {"max_deviation", d}});
            table.rows.push_back({name, num(d)});
        };
        auto gap = [&](const NumericField& a, const SliceFunction& b) {
            const CompiledSlice e(b);
            return max_over([&](const Point& p) { return abs(a(p) - e(p)); }, points);
        };
        for (int m = 1; m <= std::min(n_, kMaxNumericWirtinger); ++m) {
            record("theta_" + std::to_string(m), gap(wirtinger_theta(lift, m), wirtinger_theta(f_, m)));
            record("thetabar_" + std::to_string(m), gap(wirtinger_thetabar(lift, m), wirtinger_thetabar(f_, m)));
        }
        const int level = std::min(n_, 2);
        const ComponentFamily sp = sp_components(f_, level);
        const ComponentFamily gam = gamma_components(lift, level);
        std::optional<ComponentFamily> a;
        if (is_slice_regular(f_)) a = a_components(lift, level);
        for (std::uint32_t bits = 0; bits < sp.size(); ++bits) {
            const SubsetMask k(bits);
            record("gamma_vs_sp" + to_string(k), gap(gam.field(k), sp.slice_entry(k)));
            if (a) record("a_vs_sp" + to_string(k), gap(a->field(k), sp.slice_entry(k)));
        }
        const bool pass = worst <= tol;
        json report{{"expression", to_expression(f_)},
                    {"max_deviation", worst},
                    {"tolerance", tol},
                    {"samples", o_.samples},
                    {"seed", seed_},
                    {"verdict", pass ? "pass" : "fail"},
                    {"checks", checks}};
        return {report, table, pass ? kPass : kFail};
    }

private:
    void require_var(int m, const char* flag) const {
        if (m < 1) throw InvalidArgument(std::string(flag) + " is required and must be positive");
        if (m > n_) throw ArityError(std::string(flag) + " " + std::to_string(m) + " exceeds n = " + std::to_string(n_));
    }

    std::vector<QuatD> point() const {
        if (o_.at.empty()) throw InvalidArgument("--at is required");
        const std::vector<QuatQ> q = parse_point(o_.at);
        if (static_cast<int>(q.size()) != n_) {
            throw ArityError("--at has " + std::to_string(q.size()) + " entries, expected n = " + std::to_string(n_));
        }
        std::vector<QuatD> p;
        for (const auto& c : q) p.push_back(to_double(c));
        return p;
    }

    std::vector<Point> sample() const {
        Rng rng(seed_);
        return sample_admissible(rng, n_, o_.samples);
    }

    const Options& o_;
    Expression expression_;
    int n_ = 1;
    SliceFunction f_;
    std::uint64_t seed_ = 0;
};

void write_csv(const Table& t, std::ostream& out) {
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << csv_field(cells[c]);
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

int report_error(std::ostream& err, const std::string& kind, const std::string& message,
                 std::optional<std::size_t> offset = std::nullopt) {
    json e{{"kind", kind}, {"message", message}};
    if (offset) e["offset"] = *offset;
    err << json{{"error", e}}.dump() << '\n';
    return kError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Slice functions of several quaternionic variables"};
    app.name("qwirt");
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("expression", o.expr, "Slice polynomial, e.g. \"x1^2*(1+2i) + ~x1*k\"")->required();
        sub->add_option("--n", o.n, "Number of variables (default: largest index in the expression)");
        sub->add_option("--fd-step", o.fd.step, "Finite-difference step");
        sub->add_option("--fd-nested-step", o.fd.nested_step, "Step for nested derivatives");
        sub->add_option("--fd-delta", o.fd.delta, "Exclusion band around the real axes");
        sub->add_option("--samples", o.samples, "Random points per suite");
        sub->add_option("--tol", o.tol, "Residual tolerance");
        sub->add_option("--seed", o.seed, "Random seed (default: QWIRT_SEED, else 0)");
        sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    using Handler = std::function<Outcome(const Session&)>;
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto command = [&](const char* name, const char* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        commands.emplace_back(sub, std::move(h));
        return sub;
    };

    CLI::App* eval = command("eval", "Evaluate at a point", [](const Session& s) { return s.eval(); });
    eval->add_option("--at", o.at, "Point \"q1;q2;...\"");
    for (const bool bar : {false, true}) {
        CLI::App* w = command(bar ? "thetabar" : "theta", bar ? "Apply the conjugate Wirtinger operator" : "Apply the Wirtinger operator",
                              [bar](const Session& s) { return s.wirtinger(bar); });
        w->add_option("--m", o.m, "Variable index")->required();
        w->add_option("--at", o.at, "Also evaluate, symbolically and numerically, at this point");
    }
    CLI::App* alm = command("almansi", "Almansi-type component family", [](const Session& s) { return s.almansi(); });
    alm->add_option("--flavor", o.flavor, "sp, a or gamma")->check(CLI::IsMember({"sp", "a", "gamma"}));
    alm->add_option("--level", o.level, "Level m (default: n)");
    CLI::App* reg = command("check-regular", "Slice regularity verdict", [](const Session& s) { return s.check_regular(); });
    reg->add_option("--mode", o.mode, "symbolic or numeric")->check(CLI::IsMember({"symbolic", "numeric"}));
    CLI::App* sl = command("check-slice", "Strong sliceness test", [](const Session& s) { return s.check_slice(); });
    sl->add_option("--wrap", o.wrap, "Test theta or thetabar of the function in one variable instead")
        ->check(CLI::IsMember({"theta", "thetabar"}));
    sl->add_option("--var", o.var, "Variable for --wrap");
    CLI::App* sph = command("spherical", "Spherical value or derivative", [](const Session& s) { return s.spherical(); });
    sph->add_option("--var", o.var, "Variable index")->required();
    sph->add_option("--kind", o.kind, "value or derivative")->check(CLI::IsMember({"value", "derivative"}));
    command("crosscheck", "Compare numeric operators with their symbolic forms", [](const Session& s) { return s.crosscheck(); });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return report_error(err, "UsageError", e.what());
    }

    try {
        const Session session(o);
        for (const auto& [sub, handler] : commands) {
            if (!sub->parsed()) continue;
            const Outcome r = handler(session);
            if (o.format == "csv") {
                if (!r.table) throw InvalidArgument("csv output is only available for residual tables");
                write_csv(*r.table, out);
            } else {
                out << r.report.dump() << '\n';
            }
            return r.code;
        }
        return report_error(err, "UsageError", "no command given");
    } catch (const SyntaxError& e) {
        return report_error(err, e.kind(), e.what(), e.offset());
    } catch (const Error& e) {
        return report_error(err, e.kind(), e.what());
    } catch (const std::exception& e) {
        return report_error(err, "InternalError", e.what());
    }
}

}  // namespace qwirt
