#ifndef NCL_IO_HPP
#define NCL_IO_HPP

#include <filesystem>
#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "ncl/elliptic.hpp"
#include "ncl/motive.hpp"

namespace ncl {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Places: text format "q=<p>^<e>;poly=<coeffs csv low-to-high>" / "p=<prime>"

inline Place parse_place(const std::string& text) {
    if (text.rfind("p=", 0) == 0) {
        u64 p = std::stoull(text.substr(2));
        if (!is_prime_u64(p)) throw usage_error("place: not a prime: " + text);
        return Place::number_field(p);
    }
    if (text.rfind("q=", 0) != 0) throw usage_error("unparseable place: " + text);
    auto caret = text.find('^');
    auto semi = text.find(";poly=");
    if (caret == std::string::npos || semi == std::string::npos)
        throw usage_error("unparseable place: " + text);
    u32 p = static_cast<u32>(std::stoul(text.substr(2, caret - 2)));
    u32 e = static_cast<u32>(std::stoul(text.substr(caret + 1, semi - caret - 1)));
    FqPoly gen;
    std::string coeffs = text.substr(semi + 6);
    size_t pos = 0;
    while (pos <= coeffs.size()) {
        auto comma = coeffs.find(',', pos);
        std::string tok = coeffs.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
        if (!tok.empty()) gen.push_back(static_cast<u32>(std::stoul(tok)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Place::function_field(p, e, std::move(gen));
}

// ---------------------------------------------------------------------------
// Field / variety specs

inline FieldPtr field_from_json(const json& j) {
    if (j.is_number_unsigned() || j.is_number_integer()) {
        u64 q = j.get<u64>();
        auto f = factor_u64(q);
        if (f.size() != 1) throw usage_error("q must be a prime power");
        auto [p, e] = *f.begin();
        return Field::make(static_cast<u32>(p), e);
    }
    u32 p = j.at("p").get<u32>();
    u32 e = j.value("e", 1u);
    return Field::make(p, e);
}

struct VarietySpec {
    enum class Kind { ProjectiveSpace, Hypersurface, Weierstrass } kind =
        Kind::Hypersurface;
    FieldPtr field;
    u32 n = 2;                    // ambient dimension (projective space / hypersurface)
    std::vector<Monomial> terms;  // hypersurface
    u32 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0; // weierstrass
    std::optional<u32> genus;     // curve hint
    std::optional<u32> b2;        // surface hint

    std::string canonical() const {
        std::ostringstream os;
        os << "v1;q=" << field->size() << ";";
        switch (kind) {
            case Kind::ProjectiveSpace:
                os << "Pn;n=" << n;
                break;
            case Kind::Hypersurface: {
                os << "hyp;n=" << n << ";terms=";
                for (const auto& t : terms) {
                    os << t.coeff << ":";
                    for (u32 ee : t.exps) os << ee << ".";
                    os << ",";
                }
                break;
            }
            case Kind::Weierstrass:
                os << "w;" << a1 << "," << a2 << "," << a3 << "," << a4 << "," << a6;
                break;
        }
        return os.str();
    }
};

inline VarietySpec variety_from_json(const json& j) {
    VarietySpec v;
    v.field = field_from_json(j.at("q"));
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "projective_space") {
        v.kind = VarietySpec::Kind::ProjectiveSpace;
        v.n = j.at("n").get<u32>();
    } else if (kind == "hypersurface") {
        v.kind = VarietySpec::Kind::Hypersurface;
        v.n = j.at("n").get<u32>();
        for (const auto& t : j.at("terms")) {
            Monomial m;
            m.coeff = t.at("coeff").get<u32>();
            for (const auto& e : t.at("exps")) m.exps.push_back(e.get<u32>());
            v.terms.push_back(std::move(m));
        }
    } else if (kind == "weierstrass") {
        v.kind = VarietySpec::Kind::Weierstrass;
        if (j.contains("a")) {
            auto a = j.at("a");
            if (a.size() != 5) throw usage_error("weierstrass: need [a1,a2,a3,a4,a6]");
            v.a1 = a[0].get<u32>();
            v.a2 = a[1].get<u32>();
            v.a3 = a[2].get<u32>();
            v.a4 = a[3].get<u32>();
            v.a6 = a[4].get<u32>();
        } else {
            v.a4 = j.at("A").get<u32>();
            v.a6 = j.at("B").get<u32>();
        }
        v.genus = 1;
    } else {
        throw usage_error("unknown variety kind: " + kind);
    }
    if (j.contains("genus")) v.genus = j.at("genus").get<u32>();
    if (j.contains("b2")) v.b2 = j.at("b2").get<u32>();
    return v;
}

// ---------------------------------------------------------------------------
// Count cache (versioned JSON, atomic replace)

inline std::string hash_hex(u64 h) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::optional<CountVector> cache_load(const std::string& dir,
                                             const VarietySpec& spec, u32 m_needed) {
    if (dir.empty()) return std::nullopt;
    auto path = std::filesystem::path(dir) / (hash_hex(fnv1a(spec.canonical())) + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
        if (j.at("schema_version").get<int>() != kSchemaVersion) return std::nullopt;
        if (j.at("variety_hash").get<std::string>() != hash_hex(fnv1a(spec.canonical())))
            return std::nullopt;
        CountVector cv;
        cv.q = j.at("field").at("q").get<u64>();
        for (const auto& c : j.at("counts")) cv.counts.push_back(Int(c.get<std::string>()));
        if (cv.counts.size() < m_needed) return std::nullopt;
        return cv;
    } catch (...) {
        return std::nullopt;
    }
}

inline void cache_store(const std::string& dir, const VarietySpec& spec,
                        const CountVector& cv) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto hash = hash_hex(fnv1a(spec.canonical()));
    auto path = std::filesystem::path(dir) / (hash + ".json");
    json j;
    j["schema_version"] = kSchemaVersion;
    j["field"] = {{"q", cv.q}};
    j["variety_hash"] = hash;
    json counts = json::array();
    for (const auto& c : cv.counts) counts.push_back(c.str());
    j["counts"] = counts;
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Variety pipeline: counts -> zeta -> weight blocks -> local verdict

struct ZetaReport {
    VarietySpec spec;
    CountVector counts;
    RationalFunctionT zeta;
    std::vector<WeightBlock> blocks;
    LocalRHReport rh;
    u32 probe_depth = 0; // smoothness probe extension depth (0 = not probed)
    bool cache_hit = false;
};

inline u32 default_count_depth(const VarietySpec& v) {
    switch (v.kind) {
        case VarietySpec::Kind::ProjectiveSpace:
            return 2 * (v.n + 1) + 1;
        case VarietySpec::Kind::Weierstrass:
            return v.genus ? 2 * *v.genus + 3 : 5;
        case VarietySpec::Kind::Hypersurface: {
            if (v.n == 2) {
                u32 d = 3; // degree -> genus bound
                for (const auto& t : v.terms) {
                    u32 s = 0;
                    for (u32 e : t.exps) s += e;
                    d = s;
                    break;
                }
                u32 g = v.genus ? *v.genus : (d - 1) * (d - 2) / 2;
                return std::max<u32>(2 * g + 1, 3);
            }
            if (v.n == 3) return v.b2 ? std::max<u32>(*v.b2, 2) : 7;
            throw usage_error("hypersurface pipeline supports ambient n = 2 or 3");
        }
    }
    return 5;
}

inline CountVector compute_counts(const VarietySpec& v, u32 depth, const RunConfig& cfg,
                                  bool* cache_hit = nullptr) {
    if (auto cached = cache_load(cfg.cache_dir, v, depth)) {
        if (cache_hit) *cache_hit = true;
        return *cached;
    }
    if (cache_hit) *cache_hit = false;
    CountVector cv;
    cv.q = v.field->size();
    for (u32 m = 1; m <= depth; ++m) {
        switch (v.kind) {
            case VarietySpec::Kind::ProjectiveSpace:
                cv.counts.push_back(count_projective_space(cv.q, v.n, m));
                break;
            case VarietySpec::Kind::Weierstrass: {
                WeierstrassCoeffs w{v.field, v.a1, v.a2, v.a3, v.a4, v.a6};
                cv.counts.push_back(
                    count_weierstrass_points(w, true, m, cfg.counting_budget));
                break;
            }
            case VarietySpec::Kind::Hypersurface: {
                HypersurfaceSpec h{v.field, v.n, v.terms};
                cv.counts.push_back(
                    count_hypersurface(h, m, cfg.counting_budget, cfg.threads));
                break;
            }
        }
    }
    cache_store(cfg.cache_dir, v, cv);
    return cv;
}

inline ZetaReport run_zeta(const VarietySpec& v, const RunConfig& cfg) {
    ZetaReport rep;
    rep.spec = v;
    u32 depth = default_count_depth(v);
    rep.counts = compute_counts(v, depth, cfg, &rep.cache_hit);
    switch (v.kind) {
        case VarietySpec::Kind::ProjectiveSpace: {
            auto series = zeta_from_counts(rep.counts);
            rep.zeta = rational_reconstruct(series, static_cast<int>(v.n) + 1);
            break;
        }
        case VarietySpec::Kind::Weierstrass:
            rep.zeta = curve_zeta(rep.counts, v.genus);
            break;
        case VarietySpec::Kind::Hypersurface: {
            if (v.n == 2)
                rep.zeta = curve_zeta(rep.counts, v.genus);
            else
                rep.zeta = surface_zeta(rep.counts, v.b2);
            HypersurfaceSpec h{v.field, v.n, v.terms};
            u32 probe = (v.field->size() <= 5 && v.n <= 3) ? 2 : 1;
            if (!smoothness_probe(h, probe, cfg.counting_budget, cfg.threads))
                throw ambiguous_weight_error("hypersurface is singular (probe found a point)");
            rep.probe_depth = probe;
            break;
        }
    }
    rep.blocks = weight_split(rep.zeta, rep.counts.q, cfg.tol_cluster);
    rep.rh = local_rh_check(rep.blocks, rep.counts.q, cfg.tol_identity);
    return rep;
}

inline NCMotive motive_from_variety(const VarietySpec& v, const RunConfig& cfg,
                                    const std::string& label) {
    auto rep = run_zeta(v, cfg);
    u32 p = v.field->characteristic();
    u32 e = v.field->abs_degree();
    return motive_from_zeta(GlobalBase::function_field(p, e), label, rep.zeta);
}

// ---------------------------------------------------------------------------
// Motive spec files

inline GlobalBase base_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rationals" || kind == "Q") return GlobalBase::rationals();
    if (kind == "function_field") {
        u32 p = j.at("p").get<u32>();
        u32 e = j.value("e", 1u);
        return GlobalBase::function_field(p, e);
    }
    throw usage_error("unknown base kind: " + kind);
}

inline Poly<Int> charpoly_from_json(const json& j) {
    std::vector<Int> c;
    for (const auto& x : j) {
        if (x.is_string())
            c.push_back(Int(x.get<std::string>()));
        else
            c.push_back(Int(x.get<long long>()));
    }
    return Poly<Int>(std::move(c));
}

inline NCMotive motive_from_json(const json& j) {
    NCMotive m;
    m.base = base_from_json(j.at("base"));
    std::vector<Place> excluded;
    if (j.contains("excluded_places"))
        for (const auto& s : j.at("excluded_places"))
            excluded.push_back(parse_place(s.get<std::string>()));
    int idx = 0;
    for (const auto& aj : j.at("atoms")) {
        Atom a;
        a.label = aj.value("label", "atom" + std::to_string(idx++));
        a.even = empty_datum(m.base, Parity::Even);
        a.odd = empty_datum(m.base, Parity::Odd);
        if (aj.contains("constant_family")) {
            const auto& cf = aj.at("constant_family");
            u64 q = cf.at("q").get<u64>();
            ConstantFamilySource even_src{q, {}}, odd_src{q, {}};
            for (const auto& bj : cf.at("blocks")) {
                u32 w = bj.at("w").get<u32>();
                auto cp = charpoly_from_json(bj.at("charpoly"));
                u32 shift = (w % 2 == 0) ? w / 2 : (w - 1) / 2;
                auto tb = make_twisted_block(w, shift, cp, q);
                (w % 2 == 0 ? even_src : odd_src).blocks.push_back(std::move(tb));
            }
            a.even.source = even_src;
            a.odd.source = odd_src;
        } else if (aj.contains("artin")) {
            const auto& ar = aj.at("artin");
            if (ar.value("kind", "cyclotomic") != std::string("cyclotomic"))
                throw usage_error("artin atom: only cyclotomic splitting rules supported");
            a.even.source = ArtinSource{ar.at("d").get<u32>()};
        } else if (aj.contains("explicit_local")) {
            const auto& ex = aj.at("explicit_local");
            ExplicitLocalSource src;
            auto places = ex.at("places");
            auto polys = ex.at("polys");
            if (places.size() != polys.size())
                throw usage_error("explicit_local: places/polys length mismatch");
            for (size_t i = 0; i < places.size(); ++i) {
                Place v = parse_place(places[i].get<std::string>());
                std::vector<cplx> c;
                for (const auto& pair : polys[i])
                    c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
                src.factors.emplace_back(std::move(v), Poly<cplx>(std::move(c)));
            }
            Parity pr = ex.value("parity", "even") == std::string("odd") ? Parity::Odd
                                                                         : Parity::Even;
            if (pr == Parity::Odd) {
                a.odd.source = src;
            } else {
                a.even.source = src;
            }
        } else {
            throw usage_error("atom must be constant_family, artin or explicit_local");
        }
        a.even.excluded = excluded;
        a.odd.excluded = excluded;
        m.atoms.push_back(std::move(a));
    }
    m.provenance.push_back("file");
    return m;
}

// ---------------------------------------------------------------------------
// Motive expression language:
//   (zeta) (path n) (group n) (file "spec.json") (sum m1 m2) (glue m1 m2)
//   (cy m n deg)

namespace detail {

struct ExprParser {
    std::string s;
    size_t pos = 0;
    GlobalBase base;
    const RunConfig& cfg;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::string token() {
        skip();
        size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
               s[pos] != '(' && s[pos] != ')')
            ++pos;
        if (start == pos) throw usage_error("motive expression: token expected");
        return s.substr(start, pos - start);
    }
    void expect(char c) {
        skip();
        if (pos >= s.size() || s[pos] != c)
            throw usage_error(std::string("motive expression: expected '") + c + "'");
        ++pos;
    }
    u32 number() {
        auto t = token();
        return static_cast<u32>(std::stoul(t));
    }
    bool at_close() {
        skip();
        return pos < s.size() && s[pos] == ')';
    }

    NCMotive parse() {
        expect('(');
        std::string op = token();
        NCMotive result;
        if (op == "zeta") {
            if (!at_close()) {
                // optional explicit field token: Q or F<q>
                std::string k = token();
                GlobalBase named;
                if (k == "Q" || k == "q") {
                    named = GlobalBase::rationals();
                } else {
                    std::string t = (k[0] == 'F' || k[0] == 'f') ? k.substr(1) : k;
                    auto f = factor_u64(std::stoull(t));
                    if (f.size() != 1) throw usage_error("(zeta k): k must be Q or F<prime power>");
                    named = GlobalBase::function_field(static_cast<u32>(f.begin()->first),
                                                       f.begin()->second);
                }
                if (named != base)
                    throw base_mismatch_error("(zeta k): field differs from the ambient base");
            }
            result = zeta_atom(base);
        } else if (op == "path") {
            result = path_algebra_atom(base, number());
        } else if (op == "group") {
            result = group_algebra_atom(base, number());
        } else if (op == "file") {
            skip();
            std::string path;
            if (pos < s.size() && s[pos] == '"') {
                ++pos;
                while (pos < s.size() && s[pos] != '"') path += s[pos++];
                expect('"');
            } else {
                path = token();
            }
            std::ifstream in(path);
            if (!in) throw usage_error("cannot open motive spec: " + path);
            json j;
            in >> j;
            result = motive_from_json(j);
            if (result.base != base)
                throw base_mismatch_error("motive file base differs from --base");
        } else if (op == "sum" || op == "glue") {
            auto m1 = parse();
            auto m2 = parse();
            result = (op == "sum") ? direct_sum(m1, m2) : gluing(m1, m2);
        } else if (op == "cy") {
            auto m = parse();
            u32 n = number(), deg = number();
            result = cy_summand(m, n, deg);
        } else {
            throw usage_error("motive expression: unknown operator " + op);
        }
        expect(')');
        return result;
    }
};

} // namespace detail

inline NCMotive parse_motive_expr(const std::string& expr, const GlobalBase& base,
                                  const RunConfig& cfg) {
    detail::ExprParser p{expr, 0, base, cfg};
    auto m = p.parse();
    p.skip();
    if (p.pos != expr.size()) throw usage_error("motive expression: trailing input");
    return m;
}

// ---------------------------------------------------------------------------
// JSON emitters

inline json block_to_json(const WeightBlock& b) {
    json j;
    j["w"] = b.w;
    j["beta"] = b.beta();
    if (b.charpoly) {
        json cp = json::array();
        for (const auto& c : b.charpoly->c) cp.push_back(c.str());
        j["charpoly"] = cp;
    }
    json roots = json::array();
    for (const auto& r : b.roots) roots.push_back({r.real(), r.imag()});
    j["roots"] = roots;
    return j;
}

inline json verdict_to_json(const RHVerdict& v) {
    json j;
    j["parity"] = parity_name(v.parity);
    j["strip"] = {v.strip.lo, v.strip.hi};
    j["line"] = v.strip.line;
    j["tol"] = v.tol;
    j["period"] = v.period;
    auto zarr = [&](const std::vector<ZeroReport>& zs) {
        json a = json::array();
        for (const auto& z : zs)
            a.push_back({{"re", z.re},
                         {"im", z.im},
                         {"in_strip", z.in_strip},
                         {"on_line", z.on_line}});
        return a;
    };
    j["zeros"] = zarr(v.zeros);
    j["poles"] = zarr(v.poles);
    j["verdict"] = overall_name(v.overall);
    return j;
}

inline json rational_to_json(const RationalFunctionT& rf) {
    json num = json::array(), den = json::array();
    for (const auto& c : rf.num.c) num.push_back(c.str());
    for (const auto& c : rf.den.c) den.push_back(c.str());
    return {{"num", num}, {"den", den}};
}

inline json zeta_report_to_json(const ZetaReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["q"] = rep.counts.q;
    json counts = json::array();
    for (const auto& c : rep.counts.counts) counts.push_back(c.str());
    j["counts"] = counts;
    j["zeta"] = rational_to_json(rep.zeta);
    json blocks = json::array();
    for (const auto& b : rep.blocks) blocks.push_back(block_to_json(b));
    j["weight_blocks"] = blocks;
    j["local_rh"] = {{"pass", rep.rh.pass}, {"max_dev", rep.rh.max_dev}, {"tol", rep.rh.tol}};
    j["smoothness_probe_depth"] = rep.probe_depth;
    j["cache_hit"] = rep.cache_hit;
    return j;
}

inline json reduction_to_json(const LocalReduction& r) {
    json j;
    j["place"] = r.at_infinity ? std::string("infinity") : r.place.to_text();
    j["type"] = reduction_name(r.type);
    j["a_v"] = r.a_v;
    j["v_delta"] = r.v_delta;
    return j;
}

} // namespace ncl

#endif
