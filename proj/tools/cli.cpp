#include "cli.hpp"

#include "bhc/constants.hpp"
#include "bhc/errors.hpp"
#include "bhc/localdensity.hpp"
#include "bhc/poly.hpp"
#include "bhc/series.hpp"
#include "bhc/verify.hpp"
#include "tables.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bhc::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Json, Csv };

const std::map<std::string, Format> kFormatMap{
    {"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};

std::string fmt_g(double v, int sig = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, v);
    return buf;
}

std::string fmt_fixed(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// Thread-count default comes from BHC_THREADS; the --threads flag overrides.
unsigned default_threads() {
    const char* s = std::getenv("BHC_THREADS");
    if (!s) return 1;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 1 || v > 1024) return 1;
    return static_cast<unsigned>(v);
}

// omega fits a JSON number only up to 2^53; fall back to a decimal string.
json omega_json(const Int& omega) {
    if (omega <= Int(std::uint64_t{1} << 53)) return omega.convert_to<std::uint64_t>();
    return omega.str();
}

void print_padded(std::ostream& out, const std::string& s, std::size_t width) {
    out << s;
    for (std::size_t i = s.size(); i < width; ++i) out << ' ';
}

// ---------------------------------------------------------------- density

struct DensityArgs {
    std::string poly;
    std::uint64_t p_max = 100;
    Format format = Format::Text;
    unsigned threads = default_threads();
    std::uint64_t budget = kDefaultBudget;
};

int run_density(const DensityArgs& a, std::ostream& out) {
    Polynomial F = parse_polynomial(a.poly);
    if (F.is_zero()) throw std::domain_error("density: zero polynomial has no local factors");
    const auto primes = prime_sieve(a.p_max);
    const auto diag = detect_diagonal(F);
    const std::string method = diag ? "diagonal" : "enumerate";
    const unsigned m = F.num_vars();

    std::vector<LocalFactor> rows(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        Int omega = diag ? omega_diagonal(*diag, primes[i])
                         : omega_enumerate(F, primes[i], a.budget);
        rows[i] = local_factor(omega, primes[i], m, 1);
    }

    if (a.format == Format::Json) {
        json doc;
        doc["poly"] = format_polynomial(F);
        doc["p_max"] = a.p_max;
        doc["method"] = method;
        json jrows = json::array();
        for (const LocalFactor& r : rows) {
            jrows.push_back(
                {{"p", r.p}, {"omega", omega_json(r.omega)}, {"l_p", to_double(r.l_value)}});
        }
        doc["rows"] = std::move(jrows);
        out << doc.dump(2) << '\n';
        return 0;
    }
    if (a.format == Format::Csv) {
        out << "p,omega,l_p,method\n";
        for (const LocalFactor& r : rows)
            out << r.p << ',' << r.omega.str() << ',' << fmt_fixed(to_double(r.l_value)) << ','
                << method << '\n';
        return 0;
    }
    out << "local factors of " << format_polynomial(F) << " (method: " << method << ")\n";
    std::size_t wp = 5, wo = 8;
    for (const LocalFactor& r : rows) {
        wp = std::max(wp, std::to_string(r.p).size());
        wo = std::max(wo, r.omega.str().size());
    }
    print_padded(out, "p", wp + 2);
    print_padded(out, "omega", wo + 2);
    out << "L_p\n";
    for (const LocalFactor& r : rows) {
        print_padded(out, std::to_string(r.p), wp + 2);
        print_padded(out, r.omega.str(), wo + 2);
        out << fmt_fixed(to_double(r.l_value)) << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------- series

struct SeriesArgs {
    std::string poly;
    std::uint64_t depth = 229;
    std::string bound = "auto";
    Format format = Format::Text;
    unsigned threads = default_threads();
    std::uint64_t budget = kDefaultBudget;
};

int emit_vanishing_verdict(const LocalVanishing& e, Format format, std::ostream& out) {
    if (format == Format::Json) {
        json doc{{"verdict", "C_F = 0"}, {"vanishing_prime", e.prime()}};
        out << doc.dump(2) << '\n';
    } else {
        out << "C_F = 0: " << e.what() << '\n';
    }
    return 0;
}

int run_series(const SeriesArgs& a, std::ostream& out, std::ostream& err) {
    Polynomial F = parse_polynomial(a.poly);
    const unsigned m = F.num_vars();
    const auto diag = detect_diagonal(F);

    BoundMode mode = BoundMode::None;
    double B = 0.0;
    std::string b_source = "none";
    auto use_diagonal = [&] {
        mode = BoundMode::Diagonal;
        B = to_double(to_real(b_diag(m, diag->exponent)));
        b_source = "b_diag(" + std::to_string(m) + "," + std::to_string(diag->exponent) + ")";
    };
    auto use_general = [&] {
        mode = BoundMode::General;
        B = b_max(m, total_degree(F)).convert_to<double>();
        b_source = "b_max(" + std::to_string(m) + "," + std::to_string(total_degree(F)) + ")";
    };
    if (a.bound == "diagonal") {
        if (!diag) throw std::invalid_argument("series: diagonal bound requested on non-diagonal input");
        if (diag->exponent < 3)
            throw std::invalid_argument("series: diagonal bound needs exponent k >= 3");
        if (m < 2) throw std::invalid_argument("series: diagonal bound needs m >= 2");
        use_diagonal();
    } else if (a.bound == "general") {
        if (m < 2) throw std::invalid_argument("series: general bound needs m >= 2");
        use_general();
    } else if (a.bound == "auto") {
        if (diag && diag->exponent >= 3 && m >= 2)
            use_diagonal();
        else if (!F.is_zero() && m >= 2)
            use_general();
        else if (m < 2)
            err << "note: no tail bound applies for m = 1; reporting the bare truncation\n";
    }

    SeriesResult r;
    try {
        r = truncated_constant(F, a.depth, {a.budget, a.threads});
    } catch (const LocalVanishing& e) {
        return emit_vanishing_verdict(e, a.format, out);
    }
    r = with_bound(r, mode, m, B);

    if (a.format == Format::Json) {
        out << series_result_to_json(r, 2) << '\n';
        return 0;
    }
    out << "poly:         " << format_polynomial(F) << '\n';
    out << "depth:        " << r.depth << '\n';
    out << "primes used:  " << r.primes_used << '\n';
    out << "C_P:          " << fmt_g(to_double(r.c_p)) << '\n';
    out << "log C_P:      " << fmt_g(to_double(r.log_c_p)) << '\n';
    out << "bound mode:   " << to_string(r.bound_mode)
        << (mode != BoundMode::None ? " (B = " + fmt_g(B) + " from " + b_source + ")" : "")
        << '\n';
    out << "epsilon:      " << (r.epsilon ? fmt_g(*r.epsilon) : "(unavailable)") << '\n';
    if (r.interval)
        out << "interval:     [" << fmt_g(r.interval->first) << ", " << fmt_g(r.interval->second)
            << "]\n";
    else
        out << "interval:     (unavailable)\n";
    out << "certified:    " << (r.certified ? "yes" : "no") << '\n';
    return 0;
}

// ----------------------------------------------------------------- bounds

struct BoundsArgs {
    unsigned m = 0;
    unsigned n = 0;
    std::uint64_t depth = 101;
    std::string variant = "standard";
    Format format = Format::Text;
};

int run_bounds(const BoundsArgs& a, std::ostream& out) {
    ConstantProfile prof = constant_profile(a.m, a.n);
    const double b_max_d = prof.b_max.convert_to<double>();
    const double eps_gen = a.variant == "alt" ? tail_bound_general_alt(a.m, b_max_d, a.depth)
                                              : tail_bound_general(a.m, b_max_d, a.depth);

    std::optional<DiagonalBound> eps_diag, eps_diag_approx;
    double b_diag_d = 0.0, b_diag_approx_d = 0.0;
    if (prof.b_diag) {
        b_diag_d = to_double(to_real(*prof.b_diag));
        b_diag_approx_d = b_diag_approx(a.m, a.n).convert_to<double>();
        eps_diag = tail_bound_diagonal(a.m, b_diag_d, a.depth);
        eps_diag_approx = tail_bound_diagonal(a.m, b_diag_approx_d, a.depth);
    }
    std::optional<RegimeReport> regime;
    if (a.n >= 2) regime = minor_arc_regime(a.m, a.n);

    if (a.format == Format::Json) {
        json doc;
        doc["m"] = a.m;
        doc["n"] = a.n;
        doc["depth"] = a.depth;
        doc["variant"] = a.variant;
        doc["b_max"] = b_max_d;
        doc["b_geom"] = prof.b_geom ? json(prof.b_geom->convert_to<double>()) : json(nullptr);
        doc["b_diag"] = prof.b_diag ? json(b_diag_d) : json(nullptr);
        doc["epsilon_general"] = eps_gen;
        if (eps_diag) {
            doc["epsilon_diagonal"] = eps_diag->value;
            doc["epsilon_diagonal_certified"] = eps_diag->certified;
            doc["b_diag_approx"] = b_diag_approx_d;
            doc["epsilon_diagonal_approx"] = eps_diag_approx->value;
        } else {
            doc["epsilon_diagonal"] = nullptr;
        }
        if (regime) {
            doc["regime"] = {{"threshold", regime->threshold},
                             {"satisfied", regime->satisfied},
                             {"threshold_weyl", regime->threshold_weyl},
                             {"satisfied_weyl", regime->satisfied_weyl}};
        }
        out << doc.dump(2) << '\n';
        return 0;
    }
    out << "m = " << a.m << ", n = " << a.n << ", depth = " << a.depth << '\n';
    out << "B_max  = " << prof.b_max.str() << "  ->  epsilon_general = " << fmt_g(eps_gen)
        << (a.variant == "alt" ? "  (alt exponent -(m+1)/2)" : "") << '\n';
    if (prof.b_geom) out << "B_geom = " << prof.b_geom->str() << '\n';
    if (prof.b_diag) {
        out << "B_diag = " << prof.b_diag->str() << "  ->  epsilon_diagonal = "
            << fmt_g(eps_diag->value) << (eps_diag->certified ? " (certified)" : " (gate failed)")
            << '\n';
        out << "B_diag_approx = " << fmt_g(b_diag_approx_d)
            << "  ->  epsilon_diagonal = " << fmt_g(eps_diag_approx->value) << '\n';
    } else {
        out << "B_diag = (unavailable: needs degree n >= 3)\n";
    }
    if (regime) {
        out << "minor-arc thresholds for k = " << a.n << ": k(k+1)/2 = " << regime->threshold
            << (regime->satisfied ? " (met)" : " (not met)") << ", 2^k+1 = "
            << regime->threshold_weyl << (regime->satisfied_weyl ? " (met)" : " (not met)")
            << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------- tables

void render_table_text(const tables::Table& t, std::ostream& out) {
    out << "Table " << t.id << ": " << t.title << '\n';
    if (!t.note.empty()) out << t.note << '\n';
    out << '\n';
    std::vector<std::size_t> widths;
    widths.push_back(4);  // row label
    for (const tables::Row& row : t.rows) widths[0] = std::max(widths[0], row.label.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        std::size_t w = t.columns[c].size();
        for (const tables::Row& row : t.rows)
            w = std::max(w, row.cells[c].computed_text.size() + (row.cells[c].flagged ? 1 : 0));
        widths.push_back(w);
    }
    print_padded(out, "", widths[0] + 2);
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        print_padded(out, t.columns[c], widths[c + 1] + 2);
    out << '\n';
    for (const tables::Row& row : t.rows) {
        print_padded(out, row.label, widths[0] + 2);
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
            const tables::Cell& cell = row.cells[c];
            print_padded(out, cell.computed_text + (cell.flagged ? "*" : ""), widths[c + 1] + 2);
        }
        out << '\n';
    }
    bool any = false;
    for (const tables::Row& row : t.rows) {
        for (const tables::Cell& cell : row.cells) {
            if (!cell.flagged) continue;
            if (!any) out << "\nmismatches vs archived values:\n";
            any = true;
            out << "  * " << row.label << " " << cell.column << ": computed "
                << cell.computed_text << " vs archived " << cell.reference_text << " ("
                << fmt_g(100.0 * cell.rel_diff, 3) << "% off)\n";
        }
        for (const std::string& note : row.notes) out << "  " << row.label << ": " << note << '\n';
    }
    if (!any) out << "\nall cells match the archived values\n";
}

int run_tables(int id, Format format, std::ostream& out) {
    tables::Table t = tables::make_table(id);
    if (format == Format::Json) {
        json doc;
        doc["table"] = t.id;
        doc["title"] = t.title;
        doc["note"] = t.note;
        json jrows = json::array();
        for (const tables::Row& row : t.rows) {
            json jr;
            jr["row"] = row.label;
            jr["notes"] = row.notes;
            json jcells = json::array();
            for (const tables::Cell& cell : row.cells) {
                jcells.push_back({{"column", cell.column},
                                  {"computed", cell.computed},
                                  {"computed_text", cell.computed_text},
                                  {"reference", cell.reference ? json(*cell.reference)
                                                               : json(nullptr)},
                                  {"reference_text", cell.reference_text},
                                  {"flagged", cell.flagged}});
            }
            jr["cells"] = std::move(jcells);
            jrows.push_back(std::move(jr));
        }
        doc["rows"] = std::move(jrows);
        out << doc.dump(2) << '\n';
        return 0;
    }
    if (format == Format::Csv) {
        out << "row,column,computed,reference,flagged\n";
        for (const tables::Row& row : t.rows)
            for (const tables::Cell& cell : row.cells)
                out << row.label << ',' << cell.column << ',' << fmt_g(cell.computed, 12) << ','
                    << cell.reference_text << ',' << (cell.flagged ? 1 : 0) << '\n';
        return 0;
    }
    render_table_text(t, out);
    return 0;
}

// ------------------------------------------------------------------- plan

struct PlanArgs {
    unsigned m = 0;
    unsigned n = 0;
    double eps = 0.0;
    std::string mode = "general";
    bool exact_bdiag = false;
    Format format = Format::Text;
};

int run_plan(const PlanArgs& a, std::ostream& out) {
    BoundMode mode;
    double B;
    std::string source;
    if (a.mode == "general") {
        mode = BoundMode::General;
        B = b_max(a.m, a.n).convert_to<double>();
        source = "b_max";
    } else {
        if (a.n < 3) throw std::invalid_argument("plan: diagonal mode needs degree n >= 3");
        mode = BoundMode::Diagonal;
        // The archived grids use the coarse (n-1)^m constant; --exact-bdiag
        // switches to the exact rational.
        if (a.exact_bdiag) {
            B = to_double(to_real(b_diag(a.m, a.n)));
            source = "b_diag";
        } else {
            B = b_diag_approx(a.m, a.n).convert_to<double>();
            source = "b_diag_approx";
        }
    }
    const std::uint64_t depth = depth_for_tolerance(a.m, B, a.eps, mode);
    double bound_at = mode == BoundMode::General ? tail_bound_general(a.m, B, depth)
                                                 : tail_bound_diagonal(a.m, B, depth).value;
    bool certified = mode == BoundMode::General || tail_bound_diagonal(a.m, B, depth).certified;

    if (a.format == Format::Json) {
        json doc{{"m", a.m},
                 {"n", a.n},
                 {"eps", a.eps},
                 {"mode", a.mode},
                 {"B", B},
                 {"B_source", source},
                 {"depth", depth},
                 {"bound_at_depth", bound_at},
                 {"certified", certified}};
        out << doc.dump(2) << '\n';
        return 0;
    }
    out << "B = " << fmt_g(B) << " (" << source << "(" << a.m << "," << a.n << "))\n";
    out << "recommended depth: " << depth << '\n';
    out << "bound at depth:    " << fmt_g(bound_at) << '\n';
    out << "certified:         " << (certified ? "yes" : "no") << '\n';
    return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
    std::string poly;
    std::vector<std::uint64_t> t_list;
    std::uint64_t depth = 229;
    bool abs_values = false;
    Format format = Format::Csv;
    unsigned threads = default_threads();
    std::uint64_t budget = kDefaultBudget;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
    Polynomial F = parse_polynomial(a.poly);
    std::vector<BoxCountReport> reports;
    try {
        ScanOptions opts;
        opts.budget = a.budget;
        opts.threads = a.threads;
        opts.absolute_values = a.abs_values;
        reports = asymptotic_scan(F, a.t_list, a.depth, opts);
    } catch (const LocalVanishing& e) {
        return emit_vanishing_verdict(e, a.format, out);
    }

    if (a.format == Format::Json) {
        json doc = json::array();
        for (const BoxCountReport& r : reports) {
            doc.push_back({{"T", r.t},
                           {"points", omega_json(r.points_scanned)},
                           {"hits", r.prime_hits},
                           {"predicted", r.predicted},
                           {"ratio", r.ratio}});
        }
        out << doc.dump(2) << '\n';
        return 0;
    }
    if (a.format == Format::Csv) {
        out << "T,points,hits,predicted,ratio\n";
        for (const BoxCountReport& r : reports)
            out << r.t << ',' << r.points_scanned.str() << ',' << r.prime_hits << ','
                << fmt_g(r.predicted) << ',' << fmt_g(r.ratio) << '\n';
        return 0;
    }
    print_padded(out, "T", 8);
    print_padded(out, "points", 14);
    print_padded(out, "hits", 10);
    print_padded(out, "predicted", 14);
    out << "ratio\n";
    for (const BoxCountReport& r : reports) {
        print_padded(out, std::to_string(r.t), 8);
        print_padded(out, r.points_scanned.str(), 14);
        print_padded(out, std::to_string(r.prime_hits), 10);
        print_padded(out, fmt_g(r.predicted), 14);
        out << fmt_g(r.ratio) << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"singular-series constants, tail bounds, and prime-count checks for "
                 "multivariate integer polynomials"};
    app.require_subcommand(1);
    int rc = 0;

    auto add_format = [](CLI::App* cmd, Format& slot) {
        cmd->add_option("--format", slot, "output format")
            ->transform(CLI::CheckedTransformer(kFormatMap, CLI::ignore_case));
    };

    DensityArgs density;
    auto* cmd_density = app.add_subcommand("density", "local factors (p, omega_p, L_p)");
    cmd_density->add_option("--poly", density.poly, "polynomial text")->required();
    cmd_density->add_option("--pmax", density.p_max, "largest prime to include");
    cmd_density->add_option("--threads", density.threads, "worker threads");
    cmd_density->add_option("--budget", density.budget, "enumeration budget (evaluations)");
    add_format(cmd_density, density.format);
    cmd_density->callback([&] { rc = run_density(density, out); });

    SeriesArgs series;
    auto* cmd_series = app.add_subcommand("series", "truncated constant C_P with a tail bound");
    cmd_series->add_option("--poly", series.poly, "polynomial text")->required();
    cmd_series->add_option("--depth", series.depth, "truncation depth P")->required();
    cmd_series->add_option("--bound", series.bound, "tail bound selection")
        ->check(CLI::IsMember({"auto", "general", "diagonal", "none"}));
    cmd_series->add_option("--threads", series.threads, "worker threads");
    cmd_series->add_option("--budget", series.budget, "enumeration budget (evaluations)");
    add_format(cmd_series, series.format);
    cmd_series->callback([&] { rc = run_series(series, out, err); });

    BoundsArgs bounds;
    auto* cmd_bounds = app.add_subcommand("bounds", "bound constants and tail errors for (m, n)");
    cmd_bounds->add_option("--m", bounds.m, "number of variables")->required();
    cmd_bounds->add_option("--n", bounds.n, "degree")->required();
    cmd_bounds->add_option("--depth", bounds.depth, "truncation depth P");
    cmd_bounds->add_option("--variant", bounds.variant, "general-bound exponent variant")
        ->check(CLI::IsMember({"standard", "alt"}));
    add_format(cmd_bounds, bounds.format);
    cmd_bounds->callback([&] { rc = run_bounds(bounds, out); });

    int table_id = 0;
    Format table_format = Format::Text;
    auto* cmd_tables = app.add_subcommand("tables", "recompute the archived reference tables");
    cmd_tables->add_option("--id", table_id, "table id (1..5)")
        ->required()
        ->check(CLI::Range(1, 5));
    add_format(cmd_tables, table_format);
    cmd_tables->callback([&] { rc = run_tables(table_id, table_format, out); });

    PlanArgs plan;
    auto* cmd_plan = app.add_subcommand("plan", "depth needed for a target relative error");
    cmd_plan->add_option("--m", plan.m, "number of variables")->required();
    cmd_plan->add_option("--n", plan.n, "degree")->required();
    cmd_plan->add_option("--eps", plan.eps, "target relative error")->required();
    cmd_plan->add_option("--mode", plan.mode, "bound family")
        ->check(CLI::IsMember({"general", "diagonal"}));
    cmd_plan->add_flag("--exact-bdiag", plan.exact_bdiag,
                       "use the exact diagonal constant instead of (n-1)^m");
    add_format(cmd_plan, plan.format);
    cmd_plan->callback([&] { rc = run_plan(plan, out); });

    VerifyArgs verify;
    auto* cmd_verify = app.add_subcommand("verify", "prime-value counts vs the predicted count");
    cmd_verify->add_option("--poly", verify.poly, "polynomial text")->required();
    cmd_verify->add_option("--T", verify.t_list, "box half-sides, ascending")
        ->required()
        ->delimiter(',');
    cmd_verify->add_option("--depth", verify.depth, "truncation depth for C_P");
    cmd_verify->add_flag("--abs-values", verify.abs_values, "count |F(x)| prime instead");
    cmd_verify->add_option("--threads", verify.threads, "worker threads");
    cmd_verify->add_option("--budget", verify.budget, "enumeration budget (evaluations)");
    add_format(cmd_verify, verify.format);
    cmd_verify->callback([&] { rc = run_verify(verify, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}

}  // namespace bhc::cli
