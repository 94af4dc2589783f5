// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "scatterlab/counting.hpp"
#include "scatterlab/duality.hpp"
#include "scatterlab/lattice.hpp"
#include "scatterlab/minimal.hpp"
#include "scatterlab/rank_metric.hpp"
#include "scatterlab/scattered.hpp"

using namespace scatterlab;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

const FieldTower& T4()
{
    static const FieldTower t = FieldTower::make(2, 1, 2);
    return t;
}

SearchOptions exhaustive()
{
    SearchOptions o;
    o.start_from_bound = false;
    return o;
}

// 1 ---------------------------------------------------------------------------
void counting_oracle(Outcome& o)
{
    std::uint64_t cases = 0;
    for (unsigned q : {2u, 3u})
        for (unsigned N = 1; N <= 6; ++N) {
            oracle::PrimeSpace X(q, N);
            std::vector<oracle::Bits> fixed_a, fixed_b;
            for (unsigned m = 1; m <= N; ++m) {
                fixed_a.push_back(oracle::coordinate_space(X, 0, m));
                fixed_b.push_back(2 * m <= N ? oracle::coordinate_space(X, m, m) : oracle::Bits{});
            }
            for (unsigned k = 1; k <= N; ++k) {
                const auto Us = X.subspaces(k);
                for (unsigned m = 1; m <= N; ++m) {
                    // hist[a][b]: number of U with dim(U∩A)=a, dim(U∩A')=b
                    std::vector<std::vector<std::uint64_t>> hist(m + 1, std::vector<std::uint64_t>(m + 1, 0));
                    const bool two = 2 * m <= N;
                    for (const auto& U : Us) {
                        const unsigned a = X.meet_dim(U, fixed_a[m - 1]);
                        const unsigned b = two ? X.meet_dim(U, fixed_b[m - 1]) : 0;
                        ++hist[a][b];
                    }
                    for (unsigned h = 0; h <= m; ++h) {
                        BigInt d = 0, w = 0;
                        for (unsigned a = h + 1; a <= m; ++a)
                            for (unsigned b = 0; b <= m; ++b) {
                                d += hist[a][b];
                                if (b >= h + 1) w += hist[a][b];
                            }
                        ++cases;
                        o.require(delta_count(N, k, m, h, q).value == d,
                                  "delta N=" + std::to_string(N) + " k=" + std::to_string(k));
                        if (two) {
                            ++cases;
                            o.require(omega_count(N, k, m, h, q).value == w,
                                      "omega N=" + std::to_string(N) + " k=" + std::to_string(k));
                        }
                    }
                }
            }
        }
    o.detail << cases << " (N,k,m,h,q) cases compared exactly";
}

// 2 ---------------------------------------------------------------------------
void figure_two(Outcome& o)
{
    const double paper[] = {0.9895, 0.9611, 0.8536, 0.5288, 0.0626, 0.0000};
    const auto c = empirical_density(2, 5, 5, 1, 8, 13, 10000, 2023);
    o.require(c.rows.size() == 6, "six rows");
    for (std::size_t i = 0; i < c.rows.size() && i < 6; ++i) {
        const double p = c.rows[i].proportion();
        o.detail << "k=" << c.rows[i].k << ":" << p << " ";
        o.require(std::abs(p - paper[i]) <= 0.03, "k=" + std::to_string(c.rows[i].k) + " outside tolerance");
    }
    o.require(c.rows.size() == 6 && c.rows[5].scattered == 0, "k=13 not exactly zero");
}

// 3 ---------------------------------------------------------------------------
void crapo_rota(Outcome& o)
{
    const auto D = desarguesian_spread(T4(), 2);
    const auto a = verify_crapo_rota(D, 1);
    o.require(a.holds(), "D h=1");
    o.require(poly_to_string(a.chi) == "x^4 - 5x^2 + 4", "chi");
    o.require(a.max_scattered_dim == 2 && a.N - a.critical_exponent == 2, "both sides 2");
    const auto b = verify_crapo_rota(D, 2);
    o.require(b.holds() && b.max_scattered_dim == 4, "D h=2");
    o.detail << "chi=" << poly_to_string(a.chi) << "; ";

    std::vector<PartialSpread> partial;
    partial.emplace_back(T4().base_ptr(), 4, 2, std::vector<Subspace>{D[0], D[1]}, SpreadKind::adhoc);
    partial.emplace_back(T4().base_ptr(), 4, 2, std::vector<Subspace>{D[0], D[2], D[4]}, SpreadKind::adhoc);
    partial.push_back(partial_spread_tight(T4(), 2, 1).spread);
    const auto D3 = desarguesian_spread(T4(), 3);
    partial.emplace_back(T4().base_ptr(), 6, 2,
                         std::vector<Subspace>(D3.elements().begin(), D3.elements().begin() + 7), SpreadKind::adhoc);
    for (const auto& A : partial) {
        const auto r = verify_crapo_rota(A, 1);
        o.require(r.holds(), "partial spread of size " + std::to_string(A.size()));
        o.detail << "|A|=" << A.size() << ":" << r.max_scattered_dim << "=" << r.N << "-" << r.critical_exponent << " ";
    }
}

// 4 ---------------------------------------------------------------------------
void constructions(Outcome& o)
{
    int verified = 0;
    for (std::uint32_t q : {2u, 3u})
        for (unsigned m : {2u, 3u, 4u})
            for (unsigned t : {1u, 2u}) {
                const auto r = construct_family("even-n", {q, m, t});
                const std::string tag = "even-n(" + std::to_string(q) + "," + std::to_string(m) + "," + std::to_string(t) + ")";
                o.require(r.U.dim() == m * t, tag + " dim");
                if (r.verification == "verified") {
                    ++verified;
                } else {
                    o.detail << tag << " " << r.verification << "; ";
                    o.require(false, tag + " not verified");
                }
            }
    o.detail << verified << "/12 even-n verified; ";
    const auto odd = construct_family("odd-n", {2, 2, 1});
    o.require(odd.U.dim() == 3 && odd.verification == "verified", "odd-n");
    const auto ps = construct_family("pseudoregulus", {.q = 2, .m = 3, .n = 3});
    o.require(ps.verification == "verified" && is_h_scattered(ps.U, ps.X, 2), "pseudoregulus");
}

// 5 ---------------------------------------------------------------------------
void tight(Outcome& o)
{
    for (unsigned n : {2u, 3u})
        for (unsigned h : {1u, 2u}) {
            const std::string tag = "(n=" + std::to_string(n) + ",h=" + std::to_string(h) + ")";
            const auto f = construct_tight_spread(T4(), n, h);
            o.require(validate(f.spread).is_full, "full " + tag);
            o.require(f.U.dim() == 2 * (n - 1) + h - 1, "full dim " + tag);
            o.require(is_scattered(f.U, f.spread, h), "full scattered " + tag);
            const auto p = partial_spread_tight(T4(), n, h);
            std::size_t size = 1;
            for (unsigned i = 0; i < 2 * (n - 1); ++i) size *= 2;
            o.require(validate(p.spread).is_partial && p.spread.size() == size, "partial size " + tag);
            o.require(p.U.dim() == 2 * (n - 1) + h, "partial dim " + tag);
            o.require(is_scattered(p.U, p.spread, h), "partial scattered " + tag);
            o.detail << tag << " full " << f.U.dim() << ", partial " << p.spread.size() << "/" << p.U.dim() << "; ";
        }
}

// 6 ---------------------------------------------------------------------------
void duality(Outcome& o)
{
    {
        const Ambient X(T4(), 2);
        const DualityContext ctx(X);
        std::vector<Subspace> Us, Ws;
        for (std::size_t k = 0; k <= 4; ++k) for_each_subspace(X.base_ptr(), 4, k, [&](const Subspace& S) { Us.push_back(S); });
        for (std::size_t k = 0; k <= 2; ++k) for_each_subspace(X.top_ptr(), 2, k, [&](const Subspace& S) { Ws.push_back(S); });
        std::uint64_t pairs = 0;
        for (const auto& W : Ws) {
            o.require(W.dim() + ctx.perp_fqm(W).dim() == 2, "(i)");
            o.require(X.fq_expansion(ctx.perp_fqm(W)) == ctx.perp_fq(X.fq_expansion(W)), "(iii)");
        }
        for (const auto& U : Us) {
            o.require(U.dim() + ctx.perp_fq(U).dim() == 4, "(ii)");
            for (const auto& W : Ws) {
                o.require(check_dual_weight(U, W, ctx).holds(), "(iv) exhaustive");
                ++pairs;
            }
        }
        o.detail << pairs << " exhaustive pairs; ";
    }
    {
        const Ambient X(T4(), 3);
        const DualityContext ctx(X);
        std::mt19937_64 rng(6);
        for (int t = 0; t < 1000; ++t) {
            const auto U = sample_subspace(X.base_ptr(), 6, rng() % 7, rng);
            const auto W = sample_subspace(X.top_ptr(), 3, rng() % 4, rng);
            o.require(U.dim() + ctx.perp_fq(U).dim() == 6, "(ii) random");
            o.require(W.dim() + ctx.perp_fqm(W).dim() == 3, "(i) random");
            o.require(X.fq_expansion(ctx.perp_fqm(W)) == ctx.perp_fq(X.fq_expansion(W)), "(iii) random");
            o.require(check_dual_weight(U, W, ctx).holds(), "(iv) random");
        }
        o.detail << "1000 random pairs; ";
    }
    {
        const auto ev = construct_family("even-n", {2, 2, 1});
        const auto dual = DualityContext(ev.X).perp_fq(ev.U);
        o.require(dual.dim() == 2 && is_desarguesian_scattered(dual, ev.X, 1), "dual of maximum scattered");
    }
    {
        const Ambient X(FieldTower::make(2, 1, 4), 3);
        const auto P = construct_family("pseudoregulus", {.q = 2, .m = 4, .n = 3}).U;
        const auto dual = DualityContext(X).perp_fq(P);
        o.require(dual.dim() == 8 && is_desarguesian_scattered(dual, X, 2), "dual of pseudoregulus");
        o.detail << "pseudoregulus dual dim " << dual.dim();
    }
}

// 7 ---------------------------------------------------------------------------
void covering(Outcome& o)
{
    auto F2 = field_of_order(2);
    auto check = [&](const MatrixCode& C, const std::string& tag) -> std::optional<unsigned> {
        const auto r = covering_radius_exact(C);
        o.require(r.exact.has_value(), tag + " exact");
        if (!r.exact) return std::nullopt;
        const unsigned s = covering_radius_scattered(C);
        o.require(s == *r.exact, tag + " scattered formulation");
        o.require(r.lower_bound <= *r.exact, tag + " lower bound");
        return r.exact;
    };
    o.require(check(MatrixCode::whole_space(F2, 2, 2), "whole") == 0u, "whole rho=0");
    o.require(check(multiplication_code(T4()), "gabidulin") == 1u, "gabidulin rho=1");
    std::mt19937_64 rng(77);
    int codes = 0;
    std::map<unsigned, int> radii;
    for (unsigned dim : {1u, 2u})
        for (int t = 0; t < 10; ++t) {
            const auto C = random_linear_code(F2, 3, 3, dim, 3, rng);
            o.require(C.has_value(), "random code generation");
            if (!C) continue;
            o.require(min_rank_distance(*C) == 3, "d = m");
            if (auto r = check(*C, "random")) ++radii[*r];
            ++codes;
        }
    o.require(codes >= 20, "20 random codes");
    const auto b = covering_radius_lower_bound_exp(6, 6, 6, 2);
    o.require(b.bound == 4, "mainCR at m=m'=s=6");
    o.detail << codes << " random codes, radii:";
    for (auto [r, c] : radii) o.detail << " " << r << "x" << c;
    o.detail << "; mainCR(6,6,6) = " << b.bound;
}

// 8 ---------------------------------------------------------------------------
void code_from_u(Outcome& o)
{
    const auto D = desarguesian_spread(T4(), 2);
    const auto search = max_scattered_dimension(D, 1, exhaustive());
    o.require(search.k_max == 2 && search.witness.has_value(), "maximum scattered U");
    if (!search.witness) return;
    const auto sc = code_from_scattered(D, *search.witness, 1);
    const std::size_t bound = std::size_t(1) << ((4 - 2) * 2);  // q^{(mn-k)(h+1)}
    o.require(sc.code.size() == 16, "|C| = 16");
    o.require(sc.code.size() == D.size() * 3 + 1, "s(q^m-1)+1");
    o.require(sc.d >= 1, "d >= 1");
    o.require(sc.linear_by_closure && sc.linear_by_criterion, "linear");
    o.require(sc.code.size() == bound, "meets the bound");
    o.detail << "|C|=" << sc.code.size() << " d=" << sc.d << " bound=" << bound;
}

// 9 ---------------------------------------------------------------------------
void minimal(Outcome& o)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto mc = construct_minimal_code(FieldTower::make(2, 1, 4));
    o.require(mc.code.length() == 7 && mc.code.k() == 3, "[7,3]");
    o.require(mc.code.non_degenerate(), "non-degenerate");
    o.require(mc.report.has_value(), "pairwise check ran");
    if (mc.report) {
        o.require(mc.report->by_supports && mc.report->by_hyperplanes, "both methods");
        o.require(mc.report->classes == 273, "273 classes");
    }
    std::uint64_t planes = 0;
    GrassmannianCursor cur(mc.cutting.L.X.top_ptr(), 3, 2);
    bool all = true;
    while (cur.next()) {
        ++planes;
        const auto inside = meet(mc.cutting.U, mc.cutting.L.X.fq_expansion(cur.current()));
        all = all && mc.cutting.L.X.fqm_span(inside).dim() == 2;
    }
    o.require(planes == 273 && all, "cutting over 273 planes");
    o.require(is_cutting(mc.cutting.L, 2), "is_cutting");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= 300, "runtime");
    o.detail << "classes=" << (mc.report ? mc.report->classes : 0) << " planes=" << planes << " time=" << secs << "s";
}

// 10 --------------------------------------------------------------------------
void bounds(Outcome& o)
{
    const auto T3 = FieldTower::make(2, 1, 3);
    const auto T9 = FieldTower::make(3, 1, 2);
    struct Run {
        PartialSpread A;
        unsigned h;
        unsigned n;
    };
    std::vector<Run> runs;
    for (unsigned h : {1u}) {
        runs.push_back({desarguesian_spread(T4(), 2), h, 2});
        runs.push_back({desarguesian_spread(T4(), 3), h, 3});
        runs.push_back({desarguesian_spread(T9, 2), h, 2});
        runs.push_back({construct_tight_spread(T4(), 3, h).spread, h, 3});
        runs.push_back({construct_tight_spread(T4(), 2, h).spread, h, 2});
    }
    runs.push_back({desarguesian_spread(T3, 2), 1, 2});
    runs.push_back({desarguesian_spread(T3, 2), 2, 2});
    runs.push_back({construct_tight_spread(T3, 2, 2).spread, 2, 2});
    for (const auto& [A, h, n] : runs) {
        const unsigned m = unsigned(A.m());
        const unsigned k = max_scattered_dimension(A, h, exhaustive()).k_max;
        o.require(k <= m * (n - 1) + h - 1, "general upper bound");
        if (A.kind() == SpreadKind::desarguesian) o.require(k <= h * m * n / (h + 1), "Desarguesian bound");
        o.detail << "(q=" << A.field().order() << ",m=" << m << ",n=" << n << ",h=" << h << "):" << k << " ";
    }
    const auto e = asymptotic_exponents(6, 3, 2, 1);
    double prev = -1;
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const double r = ratio_to_power(delta_count(6, 3, 2, 1, q).value, q, e.delta_exp);
        if (prev >= 0) o.require(std::abs(r - 1) <= std::abs(prev - 1), "delta ratio approaches 1");
        prev = r;
    }
    o.require(prev >= 0.5 && prev <= 2.0, "delta ratio at q=5");
    o.detail << "delta ratio at q=5: " << prev << "; ";
    // omega vanishes identically at (6,3,2,1); the trend is read at (8,5,2,1).
    o.require(omega_count(6, 3, 2, 1, 5).value == 0, "omega degenerate point");
    const auto w = asymptotic_exponents(8, 5, 2, 1);
    prev = -1;
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const double r = ratio_to_power(omega_count(8, 5, 2, 1, q).value, q, w.omega_exp);
        if (prev >= 0) o.require(std::abs(r - 1) <= std::abs(prev - 1), "omega ratio approaches 1");
        prev = r;
    }
    o.require(prev >= 0.5 && prev <= 2.0, "omega ratio at q=5");
    o.detail << "omega ratio at q=5: " << prev;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"counting formulas equal brute force (N<=6, q in {2,3})", counting_oracle},
        {"density curve q=2 m=n=5 h=1 within 0.03, k=13 zero", figure_two},
        {"critical exponent equals max scattered codimension", crapo_rota},
        {"explicit families verified", constructions},
        {"tight spreads", tight},
        {"duality properties", duality},
        {"covering radius", covering},
        {"code from a scattered subspace", code_from_u},
        {"minimal [7,3] code over F_16/F_2", minimal},
        {"bound conformance and asymptotic trends", bounds},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %zu %s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures ? 1 : 0;
}
