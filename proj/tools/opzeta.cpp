// opzeta: verify registry identities, print special values, extract values
// by coefficient matching, export the divisibility matrix.
//
// Exit codes: 0 pass, 1 fail, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opzeta/divmatrix.hpp"
#include "opzeta/registry.hpp"
#include "opzeta/specfun.hpp"
#include "opzeta/verify.hpp"

#ifndef OPZETA_REGISTRY_PATH
#define OPZETA_REGISTRY_PATH "data/identities.txt"
#endif

using namespace opzeta;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest of %.15g / %.17g that round-trips.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

/// Rows of string cells, printed as an aligned table, CSV, or a JSON array
/// of objects (numeric cells are emitted as JSON numbers).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    static std::string cell_text(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_float()) return num(v.get<double>());
        if (v.is_null()) return "nan";
        return v.dump();
    }

    void print(const std::string& format, std::ostream& os) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                json o = json::object();
                for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
                arr.push_back(o);
            }
            os << arr.dump(2) << '\n';
            return;
        }
        if (format == "csv") {
            for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
            os << '\n';
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(r[i]));
                os << '\n';
            }
            return;
        }
        std::vector<std::size_t> width(columns.size());
        for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], cell_text(r[i]).size());
        auto line = [&](auto cell) {
            std::string s;
            for (std::size_t i = 0; i < columns.size(); ++i) {
                std::string c = cell(i);
                if (i + 1 < columns.size()) c.resize(width[i] + 2, ' ');
                s += c;
            }
            os << s << '\n';
        };
        line([&](std::size_t i) { return columns[i]; });
        for (const auto& r : rows) line([&](std::size_t i) { return cell_text(r[i]); });
    }
};

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string poles_text(const std::vector<long>& p) {
    if (p.empty()) return "none";
    std::string s;
    for (long v : p) s += (s.empty() ? "" : " ") + std::to_string(v);
    return s;
}

int run_verify(const Registry& reg, const std::string& id, const std::string& grid_text, double tol, bool exact,
               const std::string& format) {
    const auto* rec = reg.find(id);
    if (!rec) throw UsageError("unknown identity '" + id + "'");
    const Grid grid = grid_text.empty() ? rec->profile.grid : Grid::parse(grid_text);
    const auto rep = verify(*rec, grid, tol, exact);

    Table t{{"id", "x", "lhs", "rhs", "deviation", "method"}, {}};
    for (const auto& p : rep.points)
        t.rows.push_back({rep.id, p.x, real_or_null(p.lhs), real_or_null(p.rhs), real_or_null(p.deviation), p.method});

    if (format == "json") {
        json o;
        o["id"] = rep.id;
        o["pass"] = rep.pass;
        o["exact"] = rep.exact_mode;
        o["max_abs_deviation"] = real_or_null(rep.max_abs_deviation);
        o["tolerance"] = rep.tolerance;
        o["expected_poles"] = rep.expected_poles;
        o["observed_poles"] = rep.observed_poles;
        std::ostringstream rows;
        t.print("json", rows);
        o["points"] = json::parse(rows.str());
        std::cout << o.dump(2) << '\n';
    } else {
        t.print(format, std::cout);
        if (format == "text") {
            std::cout << (rep.pass ? "PASS " : "FAIL ") << rep.id << "  max_abs_deviation=" << num(rep.max_abs_deviation);
            if (!rep.exact_mode) std::cout << "  tol=" << num(rep.tolerance);
            std::cout << "  poles expected=[" << poles_text(rep.expected_poles) << "] observed=["
                      << poles_text(rep.observed_poles) << "]\n";
        }
    }
    return rep.pass ? kPass : kFail;
}

long parse_integer(const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("expected an integer, got '" + s + "'");
    return v;
}

int run_values(const std::string& kind, const std::vector<std::string>& args, const std::string& format) {
    Table t{{"function", "argument", "value", "exact", "method", "error"}, {}};
    for (const auto& a : args) {
        if (kind == "bernoulli" || kind == "euler") {
            const long n = parse_integer(a);
            if (n < 0 || n > 5000) throw UsageError(kind + " index must lie in [0, 5000]");
            const Rational v = kind == "bernoulli" ? bernoulli_number(static_cast<unsigned>(n))
                                                   : Rational(euler_number(static_cast<unsigned>(n)));
            t.rows.push_back({kind, a, to_double(v), to_string(v), "exact", 0.0});
            continue;
        }
        if (kind != "zeta" && kind != "beta") throw UsageError("unknown value kind '" + kind + "'");
        double s = 0.0;
        try {
            s = parse_real(a);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        std::optional<PiPolynomial> exact;
        if (s == std::floor(s) && std::abs(s) < 1e6) {
            const long v = static_cast<long>(s);
            if (kind == "zeta" && v == 1) throw UsageError("zeta has a pole at 1");
            exact = kind == "zeta" ? zeta_exact(v) : beta_exact(v);
        }
        if (exact) {
            t.rows.push_back({kind, a, pipoly_eval(*exact, 0.0), exact->str(), "exact", 0.0});
            continue;
        }
        const EvalResult r = kind == "zeta" ? zeta_em(s) : dirichlet_beta(s);
        t.rows.push_back({kind, a, r.value.real(), "", "euler_maclaurin", r.abs_error_estimate});
    }
    t.print(format, std::cout);
    return kPass;
}

int run_extract(const Registry& reg, const std::string& id, const std::string& format) {
    const auto* rec = reg.find(id);
    if (!rec) throw UsageError("unknown identity '" + id + "'");
    ExtractionProblem problem;
    try {
        problem = extraction_problem(*rec);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const auto values = extract_special_values(problem);
    Table t{{"id", "function", "argument", "value", "reference", "matched"}, {}};
    bool all = true;
    for (const auto& v : values) {
        all = all && v.matched;
        t.rows.push_back({id, op_kind_name(v.function), v.argument, v.value.str(),
                          v.reference ? v.reference->str() : std::string("none"), v.matched});
    }
    t.print(format, std::cout);
    return all ? kPass : kFail;
}

int run_matrix(long size, long apply, long check, const std::string& format) {
    if (size < 1 || size > 1000000) throw UsageError("--size must lie in [1, 1000000]");
    if (apply != 0 && (apply < 1 || apply > size)) throw UsageError("--apply needs 1 <= n <= size");
    if (check != 0 && (check < 1 || check > size)) throw UsageError("--check needs 1 <= n <= size");
    if (check != 0 && size > 4096) throw UsageError("--check supports sizes up to 4096");
    const auto A = build_matrix(size);

    if (check != 0) {
        const auto rep = consistency_check(check, size);
        Table t{{"m", "quadrature", "exact", "deviation"}, {}};
        for (std::size_t i = 0; i < rep.quadrature.size(); ++i)
            t.rows.push_back({static_cast<long>(i + 1), rep.quadrature[i], to_string(rep.column[i]),
                              std::abs(rep.quadrature[i] - to_double(rep.column[i]))});
        t.print(format, std::cout);
        const bool ok = rep.max_abs_deviation < 1e-8;
        if (format == "text")
            std::cout << (ok ? "PASS" : "FAIL") << " column " << check << "  max_abs_deviation="
                      << num(rep.max_abs_deviation) << '\n';
        return ok ? kPass : kFail;
    }
    if (apply != 0) {
        std::vector<Rational> e(static_cast<std::size_t>(size));
        e[static_cast<std::size_t>(apply - 1)] = 1;
        const auto v = matrix_apply(A, e);
        Table t{{"m", "value"}, {}};
        for (std::size_t i = 0; i < v.size(); ++i) t.rows.push_back({static_cast<long>(i + 1), to_string(v[i])});
        t.print(format, std::cout);
        return kPass;
    }
    if (format == "text") {
        A.write_triplets(std::cout);
        return kPass;
    }
    Table t{{"m", "n", "num", "den"}, {}};
    for (const auto& e : A.entries())
        t.rows.push_back({e.row, e.col, numerator_of(e.value).str(), denominator_of(e.value).str()});
    t.print(format, std::cout);
    return kPass;
}

int run_list(const Registry& reg, const std::string& format) {
    Table t{{"id", "operator", "berry_keating", "trig", "lhs", "rhs", "domain", "anomaly", "poles", "profile"}, {}};
    for (const auto& r : reg.records()) {
        const std::string trig = r.lhs == LhsMode::geometric ? "exp" : trig_name(r.trig);
        const std::string anomaly = r.anomaly_parity ? parity_name(*r.anomaly_parity) : "none";
        t.rows.push_back({r.id, r.op.str(), r.op.op.berry_keating_str(), trig, lhs_mode_name(r.lhs), r.rhs_text,
                          r.domain.text, anomaly, poles_text(r.expected_poles),
                          r.profile.grid.text + " tol=" + num(r.profile.tol)});
    }
    t.print(format, std::cout);
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator-valued zeta identities: verification, values, extraction, matrices"};
    app.require_subcommand(1);
    std::string registry_path = OPZETA_REGISTRY_PATH;
    std::string format = "text";
    app.add_option("--registry", registry_path, "Identity registry file");
    const auto formats = CLI::IsMember({"text", "csv", "json"});

    auto* verify_cmd = app.add_subcommand("verify", "Check an identity on a grid");
    std::string id;
    std::string grid;
    double tol = 1e-6;
    bool exact = false;
    verify_cmd->add_option("id", id, "Identity id")->required();
    verify_cmd->add_option("--grid", grid, "a:b:steps (defaults to the identity's profile)");
    verify_cmd->add_option("--tol", tol, "Absolute tolerance")->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--exact", exact, "Exact comparison in Q[pi]");
    verify_cmd->add_option("--format", format)->check(formats);

    auto* values_cmd = app.add_subcommand("values", "Print special values");
    std::string kind;
    std::vector<std::string> args;
    values_cmd->add_option("kind", kind, "zeta | beta | bernoulli | euler")
        ->required()
        ->check(CLI::IsMember({"zeta", "beta", "bernoulli", "euler"}));
    values_cmd->add_option("args", args, "Arguments")->required()->allow_extra_args();
    values_cmd->add_option("--format", format)->check(formats);

    auto* extract_cmd = app.add_subcommand("extract", "Infer special values by coefficient matching");
    extract_cmd->add_option("id", id, "Identity id")->required();
    extract_cmd->add_option("--format", format)->check(formats);

    auto* matrix_cmd = app.add_subcommand("matrix", "Sine-basis matrix of zeta(1 - iD)");
    long size = 0;
    long apply = 0;
    long check = 0;
    matrix_cmd->add_option("--size", size, "Truncation size M")->required();
    matrix_cmd->add_option("--apply", apply, "Print column n (the image of basis vector n)");
    matrix_cmd->add_option("--check", check, "Compare column n with quadrature Fourier coefficients");
    matrix_cmd->add_option("--format", format)->check(formats);

    auto* list_cmd = app.add_subcommand("list", "List registry identities");
    list_cmd->add_option("--format", format)->check(formats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*matrix_cmd) return run_matrix(size, apply, check, format);
        if (*values_cmd) return run_values(kind, args, format);
        const Registry reg = Registry::load(registry_path);
        if (*verify_cmd) return run_verify(reg, id, grid, tol, exact, format);
        if (*extract_cmd) return run_extract(reg, id, format);
        if (*list_cmd) return run_list(reg, format);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
        case Errc::invalid_argument:
        case Errc::outside_domain:
        case Errc::registry_format:
        case Errc::unsupported:
        case Errc::pole_at_one: return kUsage;
        default: return kFail;
        }
    }
    return kUsage;
}
