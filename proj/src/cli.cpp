#include "scatterlab/cli.hpp"

#include <CLI11.hpp>
#include <boost/version.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "scatterlab/counting.hpp"
#include "scatterlab/duality.hpp"
#include "scatterlab/errors.hpp"
#include "scatterlab/io.hpp"
#include "scatterlab/lattice.hpp"
#include "scatterlab/minimal.hpp"
#include "scatterlab/rank_metric.hpp"
#include "scatterlab/scattered.hpp"
#include "scatterlab/selftest.hpp"

namespace scatterlab {

namespace {

using json = nlohmann::ordered_json;

struct Params {
    std::uint32_t q = 2;
    unsigned m = 2, n = 2, h = 1, t = 1, copies = 2, t1 = 0, t2 = 0;
    unsigned N = 4, k = 2, mp = 0, s = 0;
    std::optional<unsigned> k_opt, mp_opt;
    std::string size;
    std::uint64_t seed = 1, samples = 1000;
    unsigned trials = 64;
    std::string kind = "desarguesian", family = "even-n", mode = "exhaustive", level = "quick";
    std::string k_range = "1..1", format, builtin;
    std::string spread_file, subspace_file, code_file, out, subspace_out;
    bool from_bound = false, h_scattered = false;
};

std::string big(const BigInt& x) { return x.str(); }

std::string rat(const BigRat& r)
{
    const BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
}

json matrix_json(const Matrix& M)
{
    json a = json::array();
    for (std::size_t i = 0; i < M.rows; ++i) a.push_back(M.row_vec(i));
    return a;
}

json subspace_json(const Subspace& U)
{
    return {{"q", U.field().order()}, {"N", U.ambient_dim()}, {"k", U.dim()}, {"basis", matrix_json(U.basis())}};
}

FieldTower tower_of(std::uint32_t q, unsigned m)
{
    const auto [p, e] = prime_power(q);
    return FieldTower::make(p, e, m);
}

PartialSpread load_spread(const Params& P)
{
    if (P.spread_file.empty()) return desarguesian_spread(tower_of(P.q, P.m), P.n);
    std::istringstream in(read_file(P.spread_file));
    return read_spread(in);
}

Subspace load_subspace(const std::string& path)
{
    require(!path.empty(), "--subspace is required");
    std::istringstream in(read_file(path));
    return read_subspace(in);
}

template <class T, class W>
void save(const std::string& path, const T& x, W writer)
{
    if (path.empty()) return;
    std::ostringstream os;
    writer(os, x);
    write_file(path, os.str());
}

json profile_json(const ScatterProfile& p, unsigned h)
{
    json hist = json::object();
    for (const auto& [d, c] : p.histogram) hist[std::to_string(d)] = c;
    json r = {{"max_dim", p.max_dim}, {"witness_index", nullptr}, {"histogram", hist}, {"scattered", p.max_dim <= h}};
    if (p.witness) r["witness_index"] = *p.witness;
    return r;
}

std::pair<unsigned, unsigned> parse_range(const std::string& s)
{
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const unsigned v = unsigned(std::stoul(s));
            return {v, v};
        }
        return {unsigned(std::stoul(s.substr(0, dots))), unsigned(std::stoul(s.substr(dots + 2)))};
    } catch (const std::exception&) {
        throw ValidationError("malformed range '" + s + "', expected a..b");
    }
}

json report_json(const SpreadReport& r)
{
    return {{"is_partial", r.is_partial},
            {"is_full", r.is_full},
            {"is_normal", r.is_normal},
            {"normality_vacuous", r.normality_vacuous},
            {"detail", r.detail}};
}

json covering_json(const MatrixCode& C, const CoveringReport& r)
{
    json j = {{"size", C.size()},
              {"m", C.m()},
              {"mp", C.mp()},
              {"min_distance", min_rank_distance(C)},
              {"exact", r.exact ? json(*r.exact) : json(nullptr)},
              {"scattered_radius", r.scattered_radius ? json(*r.scattered_radius) : json(nullptr)},
              {"lower_bound", r.lower_bound},
              {"h_star", r.h_star},
              {"simplified_bound", r.simplified_bound ? json(*r.simplified_bound) : json(nullptr)},
              {"witness", r.witness ? matrix_json(*r.witness) : json(nullptr)}};
    if (min_rank_distance(C) == C.m()) {
        const auto ext = find_extension(C);
        j["extendable"] = ext.has_value();
        verify(ext.has_value() == (r.exact == C.m()), "radius m and extendability disagree");
    }
    return j;
}

json minimality_json(const MinimalityReport& r)
{
    json j = {{"minimal", r.minimal},
              {"by_supports", r.by_supports},
              {"by_hyperplanes", r.by_hyperplanes},
              {"classes", r.classes},
              {"certificate", nullptr}};
    if (r.certificate) j["certificate"] = {r.certificate->first, r.certificate->second};
    return j;
}

// ---------------------------------------------------------------------------

json cmd_spread_build(const Params& P)
{
    const FieldTower T = tower_of(P.q, P.m);
    json r;
    if (P.kind == "desarguesian") {
        const auto A = desarguesian_spread(T, P.n);
        save(P.out, A, write_spread);
        r = {{"size", A.size()}, {"validation", report_json(validate(A))}};
    } else if (P.kind == "tight" || P.kind == "partial-tight") {
        const auto t = P.kind == "tight" ? construct_tight_spread(T, P.n, P.h) : partial_spread_tight(T, P.n, P.h);
        save(P.out, t.spread, write_spread);
        save(P.subspace_out, t.U, write_subspace);
        r = {{"size", t.spread.size()},
             {"validation", report_json(validate(t.spread))},
             {"h", P.h},
             {"scattered_dim", t.U.dim()},
             {"max_meet", scatter_profile(t.U, t.spread).max_dim},
             {"subspace", subspace_json(t.U)}};
    } else {
        throw ValidationError("unknown spread kind '" + P.kind + "' (desarguesian, tight, partial-tight)");
    }
    return r;
}

json cmd_spread_validate(const Params& P)
{
    require(!P.spread_file.empty(), "--spread is required");
    const auto A = load_spread(P);
    return {{"N", A.N()}, {"m", A.m()}, {"size", A.size()}, {"kind", to_string(A.kind())},
            {"validation", report_json(validate(A))}};
}

json cmd_scattered_check(const Params& P)
{
    const Subspace U = load_subspace(P.subspace_file);
    json r = {{"dim", U.dim()}, {"h", P.h}};
    if (P.spread_file.empty()) {
        require(U.ambient_dim() % P.m == 0, "subspace ambient is not a multiple of m");
        const Ambient X(tower_of(P.q, P.m), U.ambient_dim() / P.m);
        r["spread"] = "desarguesian";
        r["profile"] = profile_json(desarguesian_profile(U, X), P.h);
        if (P.h_scattered) r["h_scattered"] = is_h_scattered(U, X, P.h);
    } else {
        const auto A = load_spread(P);
        r["spread"] = to_string(A.kind());
        r["profile"] = profile_json(scatter_profile(U, A), P.h);
    }
    return r;
}

json cmd_scattered_construct(const Params& P)
{
    FamilyParams f;
    f.q = P.q;
    f.m = P.m;
    f.t = P.t;
    f.n = P.n;
    f.h = P.h;
    f.copies = P.copies;
    f.t1 = P.t1;
    f.t2 = P.t2;
    const auto r = construct_family(P.family, f);
    save(P.out, r.U, write_subspace);
    return {{"family", P.family},
            {"N", r.X.N()},
            {"dim", r.U.dim()},
            {"h", r.h},
            {"verification", r.verification},
            {"subspace", subspace_json(r.U)}};
}

json cmd_scattered_search(const Params& P)
{
    const auto A = load_spread(P);
    SearchOptions o;
    require(P.mode == "exhaustive" || P.mode == "randomized", "--mode must be exhaustive or randomized");
    o.mode = P.mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::randomized;
    o.seed = P.seed;
    o.trials = P.trials;
    o.start_from_bound = P.from_bound;
    const auto s = max_scattered_dimension(A, P.h, o);
    if (s.witness) save(P.out, *s.witness, write_subspace);
    return {{"k_max", s.k_max},
            {"is_lower_bound", s.is_lower_bound},
            {"upper_bound", applicable_upper_bound(A, P.h)},
            {"start_k", s.start_k},
            {"visited", s.visited},
            {"witness", s.witness ? subspace_json(*s.witness) : json(nullptr)}};
}

json cmd_scattered_bounds(const Params& P)
{
    const auto b = bound_table(P.m, P.n, P.h);
    json r = {{"general", b.general_bound},
              {"spread", b.spread_bound},
              {"desarguesian", b.desarguesian_bound},
              {"sharper", b.sharper},
              {"general_sharper_condition", general_sharper_condition(P.m, P.n, P.h)}};
    if (P.k_opt) r["partial_desarguesian_size_exponent"] = partial_desarguesian_size_exponent(P.m, P.n, P.h, *P.k_opt);
    return r;
}

json count_json(const CountReport& c)
{
    return {{"value", big(c.value)}, {"formula", c.formula}, {"in_lemma_range", c.in_lemma_range}};
}

json cmd_count_bounds(const Params& P)
{
    BigInt s;
    if (P.size.empty()) {
        require(P.N % P.m == 0, "--size is required when m does not divide N");
        s = (big_pow(P.q, P.N) - 1) / (big_pow(P.q, P.m) - 1);
    } else {
        try {
            s = BigInt(P.size);
        } catch (const std::exception&) {
            throw ValidationError("--size must be an integer");
        }
    }
    const auto b = scattered_count_bounds(s, P.N, P.k, P.m, P.h, P.q);
    return {{"spread_size", big(s)},
            {"total", big(b.total)},
            {"lower", big(b.lower)},
            {"upper", rat(b.upper)},
            {"upper_floor", big(b.upper_floor)}};
}

json cmd_count_thresholds(const Params& P)
{
    const auto t = thresholds(P.N, P.m, P.h, P.q, P.k_opt, P.mp_opt);
    json r = {{"existence_bound", rat(t.existence_bound)},
              {"existence_k_max", t.existence_k_max},
              {"field_condition", t.field_condition},
              {"tipping_dimension", rat(t.tipping_dimension)},
              {"tipping_k", t.tipping_k}};
    if (t.quarter_threshold) r["quarter_threshold"] = rat(*t.quarter_threshold);
    if (t.size_threshold_k) r["size_threshold_k"] = rat(*t.size_threshold_k);
    return r;
}

PartialSpread lattice_spread(const Params& P) { return load_spread(P); }

json cmd_lattice(const Params& P, const std::string& which)
{
    const auto A = lattice_spread(P);
    if (which == "verify") {
        const auto r = verify_crapo_rota(A, P.h);
        json chi = json::array();
        for (std::size_t i = r.chi.size(); i-- > 0;) chi.push_back(big(r.chi[i]));
        json j = {{"max_scattered_dim", r.max_scattered_dim},
                  {"critical_exponent", r.critical_exponent},
                  {"N_minus_critical_exponent", r.N - r.critical_exponent},
                  {"holds", r.holds()},
                  {"chi", chi},
                  {"chi_text", poly_to_string(r.chi)},
                  {"lattice_size", r.lattice_size},
                  {"atoms", r.atoms}};
        verify(r.holds(), "max scattered dimension differs from N - critical exponent");
        return j;
    }
    const auto L = build_lattice(atoms_of(A, P.h), A.field_ptr(), A.N());
    const auto chi = characteristic_polynomial(L);
    if (which == "critexp") return {{"critical_exponent", critical_exponent(L, A.field().order())}};
    json c = json::array();
    for (std::size_t i = chi.size(); i-- > 0;) c.push_back(big(chi[i]));
    return {{"chi", c}, {"chi_text", poly_to_string(chi)}, {"lattice_size", L.elements.size()}, {"atoms", L.atom_count}};
}

json cmd_rm_covrad(const Params& P)
{
    std::optional<MatrixCode> C;
    if (!P.code_file.empty()) {
        std::istringstream in(read_file(P.code_file));
        C = read_code(in);
    } else if (P.builtin == "gabidulin") {
        C = multiplication_code(tower_of(P.q, P.m));
    } else if (P.builtin == "whole") {
        C = MatrixCode::whole_space(field_of_order(P.q), P.m, P.mp ? P.mp : P.m);
    } else {
        throw ValidationError("give --code or --builtin gabidulin|whole");
    }
    return covering_json(*C, covering_radius_exact(*C));
}

json cmd_rm_bound(const Params& P)
{
    const std::size_t mp = P.mp ? P.mp : P.m;
    CoveringBound b;
    if (!P.size.empty()) {
        BigInt s;
        try {
            s = BigInt(P.size);
        } catch (const std::exception&) {
            throw ValidationError("--size must be an integer");
        }
        b = covering_radius_lower_bound(P.m, mp, s, P.q);
    } else {
        b = covering_radius_lower_bound_exp(P.m, mp, P.s, P.q);
    }
    return {{"bound", b.bound},
            {"h_star", b.h_star},
            {"simplified_bound", b.simplified ? json(*b.simplified) : json(nullptr)}};
}

json cmd_rm_from_scattered(const Params& P)
{
    const auto A = load_spread(P);
    Subspace U = Subspace(A.field_ptr(), A.N());
    if (!P.subspace_file.empty()) {
        U = load_subspace(P.subspace_file);
    } else {
        const auto s = max_scattered_dimension(second_order_closure(A), P.h);
        verify(s.witness.has_value(), "no scattered subspace found");
        U = *s.witness;
    }
    const auto r = code_from_scattered(A, U, P.h);
    save(P.out, r.code, write_code);
    const unsigned k = unsigned(U.dim());
    const unsigned e = partial_desarguesian_size_exponent(unsigned(A.m()), unsigned(A.N() / A.m()), P.h, k);
    return {{"size", r.code.size()},
            {"expected_size", r.expected_size},
            {"min_distance", r.d},
            {"m_minus_h", A.m() - P.h},
            {"linear", r.linear_by_closure},
            {"linear_by_criterion", r.linear_by_criterion},
            {"size_bound", big(big_pow(A.field().order(), e))},
            {"subspace", subspace_json(U)}};
}

json cmd_minimal_build(const Params& P)
{
    const auto mc = construct_minimal_code(tower_of(P.q, P.m));
    save(P.out, mc.code, write_vector_code);
    return {{"length", mc.code.length()},
            {"k", mc.code.k()},
            {"non_degenerate", mc.code.non_degenerate()},
            {"cutting", true},
            {"cutting_attempt", mc.cutting.attempt},
            {"minimality", mc.report ? minimality_json(*mc.report) : json("certified by the cutting property")},
            {"generator", matrix_json(mc.code.generator())}};
}

json cmd_minimal_check(const Params& P)
{
    require(!P.code_file.empty(), "--code is required");
    std::istringstream in(read_file(P.code_file));
    const auto C = read_vector_code(in);
    json r = {{"length", C.length()}, {"k", C.k()}, {"non_degenerate", C.non_degenerate()}};
    if (C.system().dim() == C.length()) r["weight_system"] = check_weight_system(C, 2000, P.seed);
    if (C.k() >= 2) r["cutting"] = is_cutting(linear_set(C.ambient(), C.system()), 2);
    r["minimality"] = minimality_json(is_minimal_code(C));
    return r;
}

json cmd_selftest(const Params& P)
{
    json arr = json::array();
    bool ok = true;
    for (const auto& r : run_selftest(P.level)) {
        arr.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        ok = ok && r.passed;
    }
    return {{"passed", ok}, {"suites", arr}};
}

// ---------------------------------------------------------------------------

void add_field(CLI::App* c, Params& P)
{
    c->add_option("--q", P.q, "base field order");
    c->add_option("--m", P.m, "extension degree");
}

void add_ambient(CLI::App* c, Params& P)
{
    add_field(c, P);
    c->add_option("--n", P.n, "F_{q^m}-dimension of the ambient");
}

void add_counting(CLI::App* c, Params& P)
{
    c->add_option("--N", P.N, "ambient F_q-dimension");
    c->add_option("--k", P.k, "subspace dimension");
    c->add_option("--m", P.m, "dimension of the fixed spaces");
    c->add_option("--h", P.h, "intersection threshold");
    c->add_option("--q", P.q, "field order");
}

json config_of(const CLI::App* sub)
{
    json c = json::object();
    for (const CLI::Option* o : sub->get_options()) {
        if (o->get_name() == "--help" || o->get_name() == "-h,--help") continue;
        std::string name = o->get_name();
        while (!name.empty() && name[0] == '-') name.erase(0, 1);
        if (o->count() > 0) c[name] = o->as<std::string>();
        else if (!o->get_default_str().empty()) c[name] = o->get_default_str();
    }
    return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Params P;
    CLI::App app{"Workbench for scattered subspaces over finite fields", "scatterlab"};
    app.set_help_flag("--help", "print help");
    app.option_defaults()->always_capture_default();
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::function<json()> action;
    std::string csv;
    const CLI::App* chosen = nullptr;
    std::string path;
    auto leaf = [&](CLI::App* c, std::string name, std::function<json()> f) {
        c->callback([&, c, name, f] {
            chosen = c;
            path = name;
            action = f;
        });
    };

    auto* spread = app.add_subcommand("spread", "build or validate spreads")->require_subcommand(1);
    auto* sb = spread->add_subcommand("build", "Desarguesian or tight spread");
    add_ambient(sb, P);
    sb->add_option("--kind", P.kind, "desarguesian | tight | partial-tight");
    sb->add_option("--h", P.h, "scatteredness parameter for tight kinds");
    sb->add_option("--out", P.out, "write the spread file");
    sb->add_option("--subspace-out", P.subspace_out, "write the scattered subspace");
    leaf(sb, "spread build", [&] { return cmd_spread_build(P); });
    auto* sv = spread->add_subcommand("validate", "check a spread file");
    sv->add_option("--spread", P.spread_file, "spread file")->required();
    leaf(sv, "spread validate", [&] { return cmd_spread_validate(P); });

    auto* sc = app.add_subcommand("scattered", "scattered subspaces")->require_subcommand(1);
    auto* scc = sc->add_subcommand("check", "intersection profile of a subspace");
    add_field(scc, P);
    scc->add_option("--h", P.h);
    scc->add_option("--subspace", P.subspace_file, "subspace file")->required();
    scc->add_option("--spread", P.spread_file, "spread file (default: Desarguesian)");
    scc->add_flag("--h-scattered", P.h_scattered, "also test h-scatteredness");
    leaf(scc, "scattered check", [&] { return cmd_scattered_check(P); });
    auto* scn = sc->add_subcommand("construct", "explicit families");
    add_ambient(scn, P);
    scn->add_option("--family", P.family, "even-n | odd-n | pseudoregulus | alt-pseudoregulus | direct-sum | padded | complement-augmented");
    scn->add_option("--t", P.t);
    scn->add_option("--h", P.h);
    scn->add_option("--copies", P.copies);
    scn->add_option("--t1", P.t1);
    scn->add_option("--t2", P.t2);
    scn->add_option("--out", P.out, "write the subspace file");
    leaf(scn, "scattered construct", [&] { return cmd_scattered_construct(P); });
    auto* scs = sc->add_subcommand("search", "maximum dimension of a scattered subspace");
    add_ambient(scs, P);
    scs->add_option("--h", P.h);
    scs->add_option("--spread", P.spread_file, "spread file (default: Desarguesian)");
    scs->add_option("--mode", P.mode, "exhaustive | randomized");
    scs->add_option("--seed", P.seed);
    scs->add_option("--trials", P.trials);
    scs->add_flag("--from-bound", P.from_bound, "start the descent at the theoretical bound");
    scs->add_option("--out", P.out, "write the witness");
    leaf(scs, "scattered search", [&] { return cmd_scattered_search(P); });
    auto* scb = sc->add_subcommand("bounds", "dimension bounds");
    scb->add_option("--m", P.m);
    scb->add_option("--n", P.n);
    scb->add_option("--h", P.h);
    scb->add_option("--k", P.k_opt, "dimension for the partial Desarguesian size bound");
    leaf(scb, "scattered bounds", [&] { return cmd_scattered_bounds(P); });

    auto* cnt = app.add_subcommand("count", "exact enumeration formulas")->require_subcommand(1);
    auto* cd = cnt->add_subcommand("delta", "k-spaces meeting an m-space in dim >= h+1");
    add_counting(cd, P);
    leaf(cd, "count delta", [&] { return count_json(delta_count(P.N, P.k, P.m, P.h, P.q)); });
    auto* co = cnt->add_subcommand("omega", "k-spaces meeting two disjoint m-spaces in dim >= h+1");
    add_counting(co, P);
    leaf(co, "count omega", [&] { return count_json(omega_count(P.N, P.k, P.m, P.h, P.q)); });
    auto* cb = cnt->add_subcommand("bounds", "bounds on the number of scattered k-spaces");
    add_counting(cb, P);
    cb->add_option("--size", P.size, "spread size (default: full spread)");
    leaf(cb, "count bounds", [&] { return cmd_count_bounds(P); });
    auto* ct = cnt->add_subcommand("thresholds", "existence and density thresholds");
    ct->add_option("--N", P.N);
    ct->add_option("--m", P.m);
    ct->add_option("--h", P.h);
    ct->add_option("--q", P.q);
    ct->add_option("--k", P.k_opt);
    ct->add_option("--mprime", P.mp_opt);
    leaf(ct, "count thresholds", [&] { return cmd_count_thresholds(P); });

    auto* den = app.add_subcommand("density", "Monte Carlo proportion of scattered k-spaces (CSV)");
    add_ambient(den, P);
    den->add_option("--h", P.h);
    den->add_option("--k", P.k_range, "k or a..b");
    den->add_option("--samples", P.samples);
    den->add_option("--seed", P.seed);
    den->add_option("--format", P.format, "csv | json")->default_str("csv");
    den->add_option("--out", P.out, "write to a file instead of stdout");
    leaf(den, "density", [&] {
        const auto [lo, hi] = parse_range(P.k_range);
        const auto c = empirical_density(P.q, P.m, P.n, P.h, lo, hi, P.samples, P.seed);
        if (P.format.empty() || P.format == "csv") {
            csv = c.to_csv();
            return json();
        }
        require(P.format == "json", "--format must be csv or json");
        json rows = json::array();
        for (const auto& r : c.rows) rows.push_back({{"k", r.k}, {"samples", r.samples}, {"scattered", r.scattered}});
        return json{{"rows", rows}};
    });

    auto* lat = app.add_subcommand("lattice", "lattice of the (h+1)-subspaces of a spread")->require_subcommand(1);
    for (const char* which : {"chi", "critexp", "verify"}) {
        auto* l = lat->add_subcommand(which);
        add_ambient(l, P);
        l->add_option("--h", P.h);
        l->add_option("--spread", P.spread_file, "spread file (default: Desarguesian)");
        const std::string w = which;
        leaf(l, "lattice " + w, [&, w] { return cmd_lattice(P, w); });
    }

    auto* rm = app.add_subcommand("rm", "rank-metric codes")->require_subcommand(1);
    auto* rc = rm->add_subcommand("covrad", "exact covering radius");
    add_field(rc, P);
    rc->add_option("--mp", P.mp, "columns (default m)");
    rc->add_option("--code", P.code_file, "code file");
    rc->add_option("--builtin", P.builtin, "gabidulin | whole");
    leaf(rc, "rm covrad", [&] { return cmd_rm_covrad(P); });
    auto* rb = rm->add_subcommand("bound", "covering-radius lower bound");
    add_field(rb, P);
    rb->add_option("--mp", P.mp, "columns (default m)");
    rb->add_option("--s", P.s, "log_q of the code size");
    rb->add_option("--size", P.size, "code size (overrides --s)");
    leaf(rb, "rm bound", [&] { return cmd_rm_bound(P); });
    auto* rf = rm->add_subcommand("from-scattered", "code from a scattered subspace");
    add_ambient(rf, P);
    rf->add_option("--h", P.h);
    rf->add_option("--spread", P.spread_file, "spread file (default: Desarguesian)");
    rf->add_option("--subspace", P.subspace_file, "scattered subspace (default: searched)");
    rf->add_option("--out", P.out, "write the code file");
    leaf(rf, "rm from-scattered", [&] { return cmd_rm_from_scattered(P); });

    auto* mn = app.add_subcommand("minimal", "minimal vector rank-metric codes")->require_subcommand(1);
    auto* mb = mn->add_subcommand("build", "[m+3,3] code from a cutting system");
    add_field(mb, P);
    mb->add_option("--out", P.out, "write the code file");
    leaf(mb, "minimal build", [&] { return cmd_minimal_build(P); });
    auto* mk = mn->add_subcommand("check", "minimality of a vector code file");
    mk->add_option("--code", P.code_file)->required();
    mk->add_option("--seed", P.seed);
    leaf(mk, "minimal check", [&] { return cmd_minimal_check(P); });

    auto* st = app.add_subcommand("selftest", "run the built-in oracle suites");
    st->add_option("--level", P.level, "quick | full");
    leaf(st, "selftest", [&] { return cmd_selftest(P); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        (void)e;
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        (void)e;
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        json result = action();
        std::string text;
        if (!csv.empty()) {
            text = csv;
        } else {
            json doc = {{"command", path},
                        {"config", config_of(chosen)},
                        {"seed", P.seed},
                        {"versions",
                         {{"scatterlab", kVersion},
                          {"boost", BOOST_LIB_VERSION},
                          {"nlohmann_json",
                           std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                               std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                               std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                          {"cli11", CLI11_VERSION}}},
                        {"guard_scale", guard_scale()},
                        {"result", result}};
            text = doc.dump(2) + "\n";
        }
        if ((path == "density") && !P.out.empty()) write_file(P.out, text);
        else out << text;
        if (path == "selftest" && !result["passed"].get<bool>()) return 4;
        return 0;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const GuardError& e) {
        err << "guard exceeded: " << e.what() << '\n';
        return 3;
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << '\n';
        return 4;
    }
}

int run(int argc, const char* const* argv)
{
    return run(argc, argv, std::cout, std::cerr);
}

}  // namespace scatterlab
