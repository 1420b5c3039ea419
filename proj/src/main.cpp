/*
 * schemelab command-line front end.
 *
 * Subcommands: check (feasibility battery), build (concrete constructions),
 * lines (line systems from linked designs), families (symmetric-design
 * family sweeps), connectivity (basis-relation connectivity), derive
 * (parameter-set expansion). Input is a single JSON document; all rationals
 * are exact "p/q" strings and decimal floats are rejected. Every output
 * carries a "format": 1 header.
 */

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <schemelab/connectivity.hpp>
#include <schemelab/constructions.hpp>
#include <schemelab/families.hpp>
#include <schemelab/feasibility.hpp>
#include <schemelab/graph.hpp>
#include <schemelab/line_systems.hpp>
#include <schemelab/scheme.hpp>

using json = nlohmann::json;
using namespace schemelab;

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitParseError = 64;

/* ---------------- JSON <-> exact values ---------------- */

Rational rat_from_json(const json& j) {
    if (j.is_number_float()) throw ParseError("decimal floats are rejected; use \"p/q\" strings");
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return rat_parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("expected a rational (integer or \"p/q\" string)");
}

RMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of rows");
    std::size_t cols = 0;
    std::vector<std::vector<Rational>> rows;
    for (const json& row : j) {
        if (!row.is_array()) throw ParseError("matrix rows must be arrays");
        std::vector<Rational> r;
        for (const json& cell : row) r.push_back(rat_from_json(cell));
        if (cols == 0) cols = r.size();
        if (r.size() != cols || cols == 0) throw ParseError("ragged or empty matrix");
        rows.push_back(std::move(r));
    }
    RMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rows[i][k];
    return m;
}

json matrix_to_json(const RMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rat_str(m(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

json verdict_to_json(const Verdict& v) {
    json out{{"test_id", v.test_id},
             {"status", status_name(v.status)},
             {"citation", v.citation}};
    json w = json::array();
    for (const Rational& r : v.witness) w.push_back(rat_str(r));
    out["witness"] = std::move(w);
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

/* ---------------- input documents ---------------- */

json load_document(const std::string& path) {
    json doc;
    try {
        if (path == "-") {
            doc = json::parse(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) throw ParseError("cannot open input file: " + path);
            doc = json::parse(in);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("input document must be a JSON object");
    if (!doc.contains("format") || doc["format"] != 1)
        throw ParseError("input document must declare \"format\": 1");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw ParseError("input document must declare a string \"kind\"");
    return doc;
}

ConcreteScheme scheme_from_relations(const json& rel) {
    if (!rel.is_array() || rel.empty()) throw ParseError("\"relations\" must be an array of rows");
    std::size_t n = rel.size();
    std::vector<std::vector<std::uint8_t>> rows;
    for (const json& row : rel) {
        std::vector<std::uint8_t> r;
        if (row.is_string()) {
            for (char c : row.get<std::string>()) {
                if (c < '0' || c > '9') throw ParseError("relation digit strings must be 0-9");
                r.push_back(static_cast<std::uint8_t>(c - '0'));
            }
        } else if (row.is_array()) {
            for (const json& cell : row) {
                if (!cell.is_number_integer()) throw ParseError("relation entries must be integers");
                long v = cell.get<long>();
                if (v < 0 || v > 255) throw ParseError("relation entries must be in 0..255");
                r.push_back(static_cast<std::uint8_t>(v));
            }
        } else {
            throw ParseError("relation rows must be arrays or digit strings");
        }
        if (r.size() != n) throw ParseError("relation matrix must be square");
        rows.push_back(std::move(r));
    }
    std::uint8_t classes = 0;
    for (const auto& r : rows)
        for (std::uint8_t v : r) classes = std::max(classes, v);
    if (classes == 0) throw ParseError("relation matrix has no nonzero class");
    ConcreteScheme s(n, classes);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.set_rel(i, j, rows[i][j]);
    return s;
}

ConcreteScheme build_named(const std::string& name, const json& args);

/* Parameter set from an input document of any supported kind. */
ParameterSet params_from_document(const json& doc) {
    std::string kind = doc["kind"];
    if (kind == "P") return params_from_P(matrix_from_json(doc.at("matrix")));
    if (kind == "Q") return params_from_Q(matrix_from_json(doc.at("matrix")));
    if (kind == "krein_array") {
        std::vector<Rational> b, c;
        for (const json& x : doc.at("b_star")) b.push_back(rat_from_json(x));
        for (const json& x : doc.at("c_star")) c.push_back(rat_from_json(x));
        return params_from_krein_array(make_krein_array(std::move(b), std::move(c)));
    }
    if (kind == "relations") return verify_scheme_axioms(scheme_from_relations(doc.at("relations")));
    if (kind == "construction")
        return verify_scheme_axioms(
            build_named(doc.at("name").get<std::string>(), doc.value("args", json::object())));
    throw ParseError("unknown input kind: " + kind);
}

/* ---------------- constructions ---------------- */

ConcreteScheme build_named(const std::string& name, const json& args) {
    auto want = [&](const char* key) -> long {
        if (!args.contains(key) || !args[key].is_number_integer())
            throw ParseError(std::string("construction needs integer argument \"") + key + "\"");
        return args[key].get<long>();
    };
    if (name == "hypercube") return hypercube_scheme(static_cast<std::size_t>(want("n")));
    if (name == "3cube") return hypercube_scheme(3);
    if (name == "degenerate-lssd")
        return degenerate_lssd(static_cast<std::size_t>(want("v")),
                               static_cast<std::size_t>(want("w")));
    if (name == "cameron-seidel")
        return cameron_seidel(static_cast<std::size_t>(want("r")),
                              static_cast<std::size_t>(want("w")))
            .scheme;
    if (name == "lssd-oa") {
        std::string oa_path = args.value("oa", "");
        std::string h_path = args.value("h", "");
        if (oa_path.empty() || h_path.empty())
            throw ParseError("lssd-oa needs \"oa\" and \"h\" grid file paths");
        std::ifstream oa_in(oa_path), h_in(h_path);
        if (!oa_in) throw ParseError("cannot open OA grid: " + oa_path);
        if (!h_in) throw ParseError("cannot open Hadamard grid: " + h_path);
        HadamardMatrix h = hadamard_from_grid(h_in);
        OrthogonalArray oa = oa_from_grid(oa_in, h.order());
        return lssd_from_oa_hadamard(oa, h).scheme;
    }
    throw ParseError("unknown construction: " + name +
                     " (expected hypercube, degenerate-lssd, cameron-seidel, lssd-oa)");
}

json scheme_to_json(const ConcreteScheme& s) {
    json rel = json::array();
    for (std::size_t i = 0; i < s.n(); ++i) {
        std::string row;
        row.reserve(s.n());
        for (std::size_t j = 0; j < s.n(); ++j)
            row.push_back(static_cast<char>('0' + s.rel(i, j)));
        rel.push_back(std::move(row));
    }
    return json{{"format", 1}, {"kind", "relations"}, {"n", s.n()}, {"classes", s.d()},
                {"relations", std::move(rel)}};
}

/* ---------------- reports ---------------- */

struct OutputOptions {
    std::string format = "text";
};

void emit(const json& report, const OutputOptions& opt) {
    if (opt.format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::cout << report.value("command", "report") << ": "
              << report.value("overall", std::string("done")) << "\n";
    if (report.contains("verdicts"))
        for (const json& v : report["verdicts"]) {
            std::cout << "  [" << v.value("status", "?") << "] " << v.value("test_id", "?")
                      << " -- " << v.value("citation", "");
            if (v.contains("note")) std::cout << " (" << v["note"].get<std::string>() << ")";
            std::cout << "\n";
        }
    if (report.contains("summary"))
        for (const json& line : report["summary"]) std::cout << "  " << line.get<std::string>() << "\n";
}

json params_to_json(const ParameterSet& ps) {
    json valencies = json::array(), mults = json::array();
    for (std::size_t i = 0; i <= ps.d; ++i) {
        valencies.push_back(rat_str(ps.valency(i)));
        mults.push_back(rat_str(ps.multiplicity(i)));
    }
    return json{{"n", rat_str(Rational(ps.n))}, {"d", ps.d},
                {"P", matrix_to_json(ps.P)},    {"Q", matrix_to_json(ps.Q)},
                {"valencies", valencies},       {"multiplicities", mults}};
}

/* ---------------- subcommands ---------------- */

int cmd_check_one(const std::string& path, std::size_t cap, long lmax, const OutputOptions& out) {
    ParameterSet ps = params_from_document(load_document(path));
    BatteryOptions opt;
    opt.cap = cap;
    BatteryReport rep = run_battery(ps, opt);

    json verdicts = json::array();
    for (const Verdict& v : rep.verdicts) verdicts.push_back(verdict_to_json(v));
    json cutoffs = json::array();
    for (auto [e, c] : rep.cutoffs) cutoffs.push_back(json{{"idempotent", e}, {"cutoff", c}});
    json thetas = json::array();
    for (const ThetaTable& tt : rep.theta_tables)
        thetas.push_back(json{{"idempotent", tt.base_idempotent}, {"theta", matrix_to_json(tt.theta)}});
    if (lmax >= 0)
        for (const QPolyOrdering& qo : rep.orderings.q_poly)
            if (ps.multiplicity(qo.e1) > 2) {
                ThetaTable tt = schoenberg_theta(ps, qo.e1, static_cast<std::size_t>(lmax));
                thetas.push_back(
                    json{{"idempotent", qo.e1}, {"requested_lmax", lmax}, {"theta", matrix_to_json(tt.theta)}});
            }

    json report{{"format", 1},
                {"command", "check"},
                {"input", path},
                {"overall", overall_name(rep.overall)},
                {"parameters", params_to_json(ps)},
                {"verdicts", std::move(verdicts)},
                {"cutoffs", std::move(cutoffs)},
                {"theta_tables", std::move(thetas)}};
    emit(report, out);
    switch (rep.overall) {
        case BatteryReport::Overall::feasible: return kExitFeasible;
        case BatteryReport::Overall::infeasible: return kExitInfeasible;
        default: return kExitInconclusive;
    }
}

int cmd_check(const std::vector<std::string>& paths, std::size_t cap, long lmax, unsigned jobs,
              const OutputOptions& out) {
    if (paths.size() == 1 || jobs <= 1) {
        int worst = 0;
        for (const std::string& p : paths) worst = std::max(worst, cmd_check_one(p, cap, lmax, out));
        return worst;
    }
    std::vector<std::future<int>> futures;
    for (const std::string& p : paths)
        futures.push_back(std::async(std::launch::async, [&, p] {
            return cmd_check_one(p, cap, lmax, out);
        }));
    int worst = 0;
    for (auto& f : futures) worst = std::max(worst, f.get());
    return worst;
}

int cmd_build(const std::string& name, const json& args, const std::string& output,
              const OutputOptions& out) {
    ConcreteScheme s = build_named(name, args);
    ParameterSet ps = verify_scheme_axioms(s);  // never write an unverified scheme
    json scheme_doc = scheme_to_json(s);
    if (output.empty() || output == "-") {
        std::cout << scheme_doc.dump(2) << "\n";
    } else {
        std::ofstream f(output);
        if (!f) throw ParseError("cannot open output file: " + output);
        f << scheme_doc.dump(2) << "\n";
    }
    json report{{"format", 1}, {"command", "build"},  {"construction", name},
                {"overall", "verified"}, {"parameters", params_to_json(ps)}};
    if (!output.empty() && output != "-") emit(report, out);
    return 0;
}

json gram_header(const GramSystem& g) {
    json a = json::array();
    for (const Rational& r : g.a_coeffs) a.push_back(rat_str(r));
    json angles = json::array();
    for (const Rational& r : g.a_coeffs)
        if (r != 1 && r != 0) angles.push_back(rat_str(r < 0 ? Rational(-r) : r));
    return json{{"format", 1}, {"count", g.count}, {"dim", g.dim}, {"angles", angles},
                {"a_coeffs", a}};
}

int cmd_lines(const std::vector<Integer>& lssd, bool mub, long equiangular_t,
              const OutputOptions& out) {
    if (lssd.size() != 4) throw ParseError("--lssd expects v,k,lambda,w");
    const Integer &v = lssd[0], &k = lssd[1], &lam = lssd[2], &w = lssd[3];
    json report{{"format", 1}, {"command", "lines"}, {"overall", "done"}};
    json summary = json::array();
    if (mub) {
        GramSystem g = mub_gram(v, k, lam, w);
        report["mub"] = gram_header(g);
        summary.push_back("real MUB Gram: beta = " + rat_str(g.a_coeffs[1]) + " and " +
                          rat_str(g.a_coeffs[3]) + " in dimension " + std::to_string(g.dim));
    }
    if (equiangular_t > 0) {
        EquiangularLines eq = equiangular_from_lssd(v, k, lam, Integer(equiangular_t));
        json hdr = gram_header(eq.system);
        hdr["angle"] = rat_str(eq.angle);
        LineSystemReport lr = check_optimality(eq.system);
        hdr["optimality"] = lr.optimality == Optimality::optimal      ? "optimal"
                            : lr.optimality == Optimality::near_optimal ? "near-optimal"
                                                                        : "none";
        if (lr.bound) hdr["relative_bound"] = lr.bound->str();
        report["equiangular"] = hdr;
        summary.push_back(std::to_string(eq.system.count) + " equiangular lines at angle " +
                          rat_str(eq.angle) + " in dimension " + std::to_string(eq.system.dim));
    }
    if (!mub && equiangular_t <= 0)
        throw ParseError("lines: choose --mub and/or --equiangular T");
    report["summary"] = std::move(summary);
    emit(report, out);
    return 0;
}

int cmd_families(int id, const Integer& vmax, const OutputOptions& out) {
    FamilyReport rep = family_verdict(id, vmax);
    json instances = json::array();
    for (const FamilyInstance& inst : rep.instances) {
        json args = json::array();
        for (const Integer& a : inst.args) args.push_back(a.str());
        json row{{"args", args},       {"v", inst.v.str()},
                 {"k", inst.k.str()},  {"lambda", inst.lambda.str()},
                 {"feasible", inst.feasible}};
        if (!inst.first_failure.empty()) row["first_failure"] = inst.first_failure;
        instances.push_back(std::move(row));
    }
    json report{{"format", 1},
                {"command", "families"},
                {"family", rep.id},
                {"name", rep.name},
                {"overall", rep.all_feasible  ? "all instances feasible"
                            : rep.any_feasible ? "feasible instances exist"
                                               : "no feasible instances"},
                {"note", rep.note},
                {"instances", std::move(instances)}};
    json summary = json::array();
    summary.push_back(std::to_string(rep.instances.size()) + " instances swept; " + rep.note);
    report["summary"] = std::move(summary);
    emit(report, out);
    return 0;
}

int cmd_connectivity(const std::string& scheme_arg, const json& args, std::size_t relation,
                     const OutputOptions& out) {
    ConcreteScheme s{1, 0};
    if (scheme_arg.size() > 5 && scheme_arg.substr(scheme_arg.size() - 5) == ".json") {
        json doc = load_document(scheme_arg);
        if (doc["kind"] != "relations") throw ParseError("connectivity input must be a relations file");
        s = scheme_from_relations(doc.at("relations"));
    } else {
        s = build_named(scheme_arg, args);
    }
    Tensor p = intersection_tensor(s);
    Verdict v = tmain_check(p, s, relation);
    json report{{"format", 1},
                {"command", "connectivity"},
                {"relation", relation},
                {"overall", status_name(v.status)},
                {"verdicts", json::array({verdict_to_json(v)})}};
    json summary = json::array();
    SimpleGraph g = relation_graph(s, relation);
    if (is_connected(g))
        summary.push_back("vertex connectivity " + std::to_string(vertex_connectivity(g)));
    DistributionDiagram h = distribution_diagram(p, relation);
    std::string edges;
    for (std::size_t j = 0; j <= s.d(); ++j)
        for (std::size_t k2 = j + 1; k2 <= s.d(); ++k2)
            if (h.adjacent(j, k2))
                edges += (edges.empty() ? "" : ", ") + std::to_string(j) + "-" + std::to_string(k2);
    summary.push_back("distribution diagram edges: " + edges);
    report["summary"] = std::move(summary);
    emit(report, out);
    return v.failed() ? 1 : 0;
}

int cmd_derive(const std::string& path, const OutputOptions& out) {
    ParameterSet ps = params_from_document(load_document(path));
    PolyOrderings po = polynomial_orderings(ps);
    json report{{"format", 1}, {"command", "derive"}, {"overall", "done"},
                {"parameters", params_to_json(ps)}};
    json qorders = json::array();
    for (const QPolyOrdering& qo : po.q_poly) {
        json b = json::array(), c = json::array();
        for (std::size_t i = 0; i < qo.krein.d; ++i) b.push_back(rat_str(qo.krein.b_star[i]));
        for (std::size_t i = 1; i <= qo.krein.d; ++i) c.push_back(rat_str(qo.krein.c_star[i]));
        qorders.push_back(json{{"e1", qo.e1}, {"b_star", b}, {"c_star", c}});
    }
    report["q_polynomial_orderings"] = std::move(qorders);
    emit(report, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact feasibility checking and construction of symmetric association schemes"};
    app.require_subcommand(1);

    OutputOptions out;
    app.add_option("--format", out.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));

    std::size_t cap = 64;
    if (const char* env = std::getenv("SCHEME_LAB_CAP")) cap = std::strtoul(env, nullptr, 10);
    long lmax = -1;
    unsigned jobs = 1;

    for (const char* name : {"check", "build", "lines", "families", "connectivity", "derive"})
        app.add_subcommand(name)->fallthrough();

    auto* check = app.get_subcommand("check");
    check->description("run the feasibility battery on input documents");
    std::vector<std::string> check_inputs;
    check->add_option("inputs", check_inputs, "JSON input documents ('-' for stdin)")->required();
    check->add_option("--cap", cap, "Gegenbauer degree cap");
    check->add_option("--lmax", lmax, "also report the theta table up to this degree");
    check->add_option("--jobs", jobs, "check input files concurrently");

    auto* build = app.get_subcommand("build");
    build->description("build and verify a concrete scheme");
    std::string build_name, build_output;
    std::vector<std::string> build_args;
    build->add_option("name", build_name, "construction name")->required();
    build->add_option("--arg", build_args, "construction argument key=value (repeatable)");
    build->add_option("-o,--output", build_output, "scheme output file (default stdout)");

    auto* lines = app.get_subcommand("lines");
    lines->description("line systems from a linked-design parameter set");
    std::vector<Integer> lines_lssd;
    std::vector<std::string> lines_lssd_raw;
    bool lines_mub = false;
    long lines_eq = 0;
    lines->add_option("--lssd", lines_lssd_raw, "v,k,lambda,w")->required()->delimiter(',');
    lines->add_flag("--mub", lines_mub, "real mutually unbiased bases Gram");
    lines->add_option("--equiangular", lines_eq, "equiangular lines from t-1 added fibers");

    auto* families = app.get_subcommand("families");
    families->description("sweep a symmetric-design family");
    int family_id = 0;
    std::string family_vmax = "1000000";
    families->add_option("id", family_id, "family id 1..21")->required();
    families->add_option("--vmax", family_vmax, "largest design order to sweep");

    auto* conn = app.get_subcommand("connectivity");
    conn->description("connectivity report for a basis relation");
    std::string conn_scheme;
    std::size_t conn_rel = 1;
    std::vector<std::string> conn_args;
    conn->add_option("--scheme", conn_scheme, "construction name or relations .json file")->required();
    conn->add_option("--relation", conn_rel, "relation index i >= 1");
    conn->add_option("--arg", conn_args, "construction argument key=value (repeatable)");

    auto* derive = app.get_subcommand("derive");
    derive->description("expand a parameter set from any input kind");
    std::string derive_input;
    derive->add_option("input", derive_input, "JSON input document ('-' for stdin)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return cmd_check(check_inputs, cap, lmax, jobs, out);
        auto parse_args = [](const std::vector<std::string>& kvs) {
            json args = json::object();
            for (const std::string& kv : kvs) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw ParseError("--arg expects key=value");
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                bool numeric = !val.empty() &&
                               val.find_first_not_of("0123456789") == std::string::npos;
                if (numeric)
                    args[key] = std::stol(val);
                else
                    args[key] = val;
            }
            return args;
        };
        if (*build) return cmd_build(build_name, parse_args(build_args), build_output, out);
        if (*lines) {
            for (const std::string& s : lines_lssd_raw) lines_lssd.emplace_back(s);
            return cmd_lines(lines_lssd, lines_mub, lines_eq, out);
        }
        if (*families) return cmd_families(family_id, Integer(family_vmax), out);
        if (*conn) return cmd_connectivity(conn_scheme, parse_args(conn_args), conn_rel, out);
        if (*derive) return cmd_derive(derive_input, out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    }
    return 0;
}
