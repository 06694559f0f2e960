// Command-line surface: places, count, zeta, lfun, elliptic, dedekind,
// check-rh, verify.  Exit codes: 0 pass, 1 verification failure, 2 usage or
// input error, 3 budget exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "ncl/ncl.hpp"

using namespace ncl;

namespace {

GlobalBase parse_base(const std::string& s) {
    if (s == "Q" || s == "q") return GlobalBase::rationals();
    std::string t = s;
    if (t.size() >= 1 && (t[0] == 'F' || t[0] == 'f')) t = t.substr(1);
    auto paren = t.find('(');
    if (paren != std::string::npos) t = t.substr(0, paren);
    u64 q = std::stoull(t);
    auto f = factor_u64(q);
    if (f.size() != 1) throw usage_error("base must be Q or F<prime power>");
    auto [p, e] = *f.begin();
    return GlobalBase::function_field(static_cast<u32>(p), e);
}

cplx parse_s(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return cplx(std::stod(s), 0.0);
    return cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noncommutative L-function toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    RunConfig cfg;
    if (const char* env = std::getenv("NCL_CACHE_DIR")) cfg.cache_dir = env;
    app.add_option("--cache-dir", cfg.cache_dir, "count cache directory");
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    app.add_option("--budget", cfg.counting_budget, "point-evaluation budget per call");
    app.add_option("--tol-identity", cfg.tol_identity, "identity tolerance");
    app.add_option("--tol-cluster", cfg.tol_cluster, "root clustering tolerance");
    app.add_option("--format", cfg.format, "output format: json|csv");

    // places
    auto* cmd_places = app.add_subcommand("places", "enumerate places of F_q(t)");
    u32 pl_p = 2, pl_e = 1, pl_deg = 3;
    cmd_places->add_option("--p", pl_p, "characteristic")->required();
    cmd_places->add_option("--e", pl_e, "extension degree");
    cmd_places->add_option("--max-degree", pl_deg, "maximal place degree")->required();

    // count
    auto* cmd_count = app.add_subcommand("count", "point counts of a variety spec");
    std::string count_spec;
    u32 count_m = 1;
    cmd_count->add_option("--spec", count_spec, "variety spec JSON file")->required();
    cmd_count->add_option("--m-max", count_m, "count over F_{q^m} for m = 1..m_max")
        ->required();

    // zeta
    auto* cmd_zeta = app.add_subcommand("zeta", "zeta report for a variety spec");
    std::string zeta_spec;
    cmd_zeta->add_option("--spec", zeta_spec, "variety spec JSON file")->required();

    // lfun
    auto* cmd_lfun = app.add_subcommand("lfun", "evaluate L-functions of a motive");
    std::string lf_expr, lf_base = "F5";
    std::vector<std::string> lf_s;
    int lf_B = 6;
    std::string lf_parity = "even";
    cmd_lfun->add_option("--expr", lf_expr, "motive expression")->required();
    cmd_lfun->add_option("--base", lf_base, "global field: Q or F<q>");
    cmd_lfun->add_option("--s", lf_s, "sample point(s) re[,im]")->required();
    cmd_lfun->add_option("--cutoff", lf_B, "place-degree / prime cutoff");
    cmd_lfun->add_option("--parity", lf_parity, "even|odd");

    // elliptic
    auto* cmd_ell = app.add_subcommand("elliptic", "L-polynomial of an elliptic family");
    std::string ell_spec;
    int ell_B = 6;
    cmd_ell->add_option("--spec", ell_spec, "curve spec JSON {q, A, B}")->required();
    cmd_ell->add_option("--cutoff", ell_B, "place-degree cutoff");

    // dedekind
    auto* cmd_ded = app.add_subcommand("dedekind", "cyclotomic Dedekind local factor");
    u32 ded_d = 1;
    u64 ded_p = 2;
    cmd_ded->add_option("--d", ded_d, "cyclotomic conductor parameter")->required();
    cmd_ded->add_option("--p", ded_p, "rational prime")->required();

    // check-rh
    auto* cmd_rh = app.add_subcommand("check-rh", "zero-location verdict");
    std::string rh_file, rh_parity = "odd";
    u64 rh_q = 5;
    double rh_tol = 1e-9;
    cmd_rh->add_option("--lfun", rh_file, "rational L JSON {num:[...], den:[...]}")
        ->required();
    cmd_rh->add_option("--q", rh_q, "base field size")->required();
    cmd_rh->add_option("--parity", rh_parity, "even|odd");
    cmd_rh->add_option("--tol", rh_tol, "verdict tolerance");

    // verify (verify-finite1 is shorthand for --suite finite1)
    auto* cmd_verify = app.add_subcommand("verify", "run an identity suite");
    std::string suite = "all";
    u32 fin_n = 12;
    u64 fin_pb = 100;
    cmd_verify->add_option("--suite", suite,
                           "weight-shift|multiplicativity|trace-bounds|convergence|"
                           "cy|gluing|finite1|hpd|all");
    cmd_verify->add_option("--n", fin_n, "finite1: largest group order");
    cmd_verify->add_option("--prime-bound", fin_pb, "finite1: prime bound");
    auto* cmd_verify_f1 = app.add_subcommand("verify-finite1", "run the finite1 suite");
    cmd_verify_f1->add_option("--n", fin_n, "largest group order");
    cmd_verify_f1->add_option("--prime-bound", fin_pb, "prime bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::cout << std::setprecision(17);
    try {
        if (*cmd_places) {
            auto F = Field::make(pl_p, pl_e);
            auto places = enumerate_places(*F, pl_deg);
            if (cfg.format == "json") {
                json arr = json::array();
                for (auto& v : places) arr.push_back(v.to_text());
                emit({{"schema_version", kSchemaVersion}, {"places", arr}});
            } else {
                for (auto& v : places) std::cout << v.to_text() << "\n";
            }
        } else if (*cmd_count) {
            auto spec = variety_from_json(load_json(count_spec));
            auto cv = compute_counts(spec, count_m, cfg);
            json counts = json::array();
            for (auto& c : cv.counts) counts.push_back(c.str());
            emit({{"schema_version", kSchemaVersion}, {"q", cv.q}, {"counts", counts}});
        } else if (*cmd_zeta) {
            auto spec = variety_from_json(load_json(zeta_spec));
            auto rep = run_zeta(spec, cfg);
            emit(zeta_report_to_json(rep));
        } else if (*cmd_lfun) {
            auto base = parse_base(lf_base);
            auto motive = parse_motive_expr(lf_expr, base, cfg);
            Parity parity = (lf_parity == "odd") ? Parity::Odd : Parity::Even;
            auto h = motive.handle(parity, lf_B);
            if (cfg.format == "csv") {
                std::cout << "s_re,s_im,B,value_re,value_im,tail_bound\n";
                for (auto& sv : lf_s) {
                    cplx s = parse_s(sv);
                    auto ev = euler_product_eval(h, s);
                    std::cout << s.real() << "," << s.imag() << "," << lf_B << ","
                              << ev.value.real() << "," << ev.value.imag() << ","
                              << ev.tail << "\n";
                }
            } else {
                json rows = json::array();
                for (auto& sv : lf_s) {
                    cplx s = parse_s(sv);
                    auto ev = euler_product_eval(h, s);
                    json row = {{"s_re", s.real()},
                                {"s_im", s.imag()},
                                {"B", lf_B},
                                {"value_re", ev.value.real()},
                                {"value_im", ev.value.imag()},
                                {"tail_bound", ev.tail},
                                {"outside_region", ev.outside_region}};
                    rows.push_back(row);
                }
                json out = {{"schema_version", kSchemaVersion},
                            {"parity", parity_name(parity)},
                            {"rows", rows}};
                if (h.closed_form) out["closed_form"] = rational_to_json(*h.closed_form);
                emit(out);
            }
        } else if (*cmd_ell) {
            auto j = load_json(ell_spec);
            auto F = field_from_json(j.at("q"));
            FqPoly A, B;
            for (auto& c : j.at("A")) A.push_back(c.get<u32>());
            for (auto& c : j.at("B")) B.push_back(c.get<u32>());
            auto E = EllipticFamily::make(F, std::move(A), std::move(B));
            EllipticL L(E, 6000, cfg.threads);
            auto poly = L.l_polynomial(ell_B);
            auto verdict = elliptic_rh_verdict(poly, F->size(), cfg.tol_identity);
            json lc = json::array();
            for (auto& c : poly.c) lc.push_back(c.str());
            json reds = json::array();
            for (u32 d = 1; d <= static_cast<u32>(ell_B); ++d)
                for (auto& r : L.slice(d))
                    if (r.type != ReductionType::Good) reds.push_back(reduction_to_json(r));
            reds.push_back(reduction_to_json(L.infinity()));
            emit({{"schema_version", kSchemaVersion},
                  {"L_coeffs", lc},
                  {"isotrivial", L.isotrivial()},
                  {"reductions", reds},
                  {"verdict", verdict_to_json(verdict.rh)},
                  {"max_root_dev", verdict.max_root_dev},
                  {"fe_symmetric", verdict.fe_symmetric}});
        } else if (*cmd_ded) {
            auto f = dedekind_local_factor(CyclotomicField{ded_d}, ded_p);
            json c = json::array();
            for (auto& x : f.c) c.push_back(x.str());
            emit({{"schema_version", kSchemaVersion},
                  {"d", ded_d},
                  {"p", ded_p},
                  {"splitting", cyclotomic_splitting(ded_d, ded_p)},
                  {"local_factor", c}});
        } else if (*cmd_rh) {
            auto j = load_json(rh_file);
            RationalFunctionT rf;
            rf.num = charpoly_from_json(j.at("num"));
            rf.den = j.contains("den") ? charpoly_from_json(j.at("den")) : Poly<Int>::one();
            Parity parity = (rh_parity == "even") ? Parity::Even : Parity::Odd;
            auto v = zeros_from_rational(rf, rh_q, parity, rh_tol);
            emit(verdict_to_json(v));
            return v.overall == RHVerdict::Overall::Fail ? 1 : 0;
        } else if (*cmd_verify || *cmd_verify_f1) {
            if (*cmd_verify_f1) suite = "finite1";
            std::vector<std::string> names =
                (suite == "all") ? suite_names() : std::vector<std::string>{suite};
            bool all_pass = true;
            for (auto& name : names) {
                SuiteResult res = (name == "finite1") ? suite_finite1(cfg, fin_n, fin_pb)
                                                      : run_suite(name, cfg);
                all_pass = all_pass && res.pass;
                std::cout << "[" << (res.pass ? "PASS" : "FAIL") << "] suite " << res.name
                          << "\n";
                for (auto& line : res.lines) std::cout << line << "\n";
            }
            return all_pass ? 0 : 1;
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
