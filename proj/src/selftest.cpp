#include "scatterlab/selftest.hpp"

#include <functional>

#include "scatterlab/counting.hpp"
#include "scatterlab/duality.hpp"
#include "scatterlab/errors.hpp"
#include "scatterlab/lattice.hpp"
#include "scatterlab/minimal.hpp"
#include "scatterlab/rank_metric.hpp"
#include "scatterlab/scattered.hpp"

namespace scatterlab {

namespace {

Subspace first_coords(std::shared_ptr<const Field> F, std::size_t N, std::size_t m)
{
    Matrix B(m, N);
    for (std::size_t i = 0; i < m; ++i) B(i, i) = 1;
    return Subspace::span(F, N, std::move(B));
}

// Counts k-spaces by enumeration and compares with the closed forms.
std::string counting_suite(unsigned max_N)
{
    std::size_t cases = 0;
    for (std::uint32_t q : {2u, 3u}) {
        auto F = field_of_order(q);
        for (unsigned N = 2; N <= max_N; ++N) {
            if (q == 3 && N > max_N - 1) continue;
            for (unsigned k = 1; k <= N; ++k) {
                std::vector<Subspace> all;
                for_each_subspace(F, N, k, [&](const Subspace& V) { all.push_back(V); });
                if (gauss_binomial(N, k, q) != all.size()) return "q-binomial mismatch";
                for (unsigned m = 1; m <= N; ++m) {
                    const Subspace S = first_coords(F, N, m);
                    Matrix B2(m, N);
                    for (std::size_t i = 0; i < m && 2 * m <= N; ++i) B2(i, m + i) = 1;
                    const Subspace S2 = Subspace::span(F, N, B2);
                    for (unsigned h = 0; h < m; ++h) {
                        std::size_t d = 0, w = 0;
                        for (const auto& V : all) {
                            const bool a = meet_dim(V, S) >= h + 1;
                            d += a;
                            if (2 * m <= N && a && meet_dim(V, S2) >= h + 1) ++w;
                        }
                        if (delta_count(N, k, m, h, q).value != d) return "delta mismatch";
                        if (2 * m <= N && omega_count(N, k, m, h, q).value != w) return "omega mismatch";
                        ++cases;
                    }
                }
            }
        }
    }
    return "ok: " + std::to_string(cases) + " parameter sets";
}

}  // namespace

std::vector<SelftestResult> run_selftest(const std::string& level)
{
    require(level == "quick" || level == "full", "level must be quick or full");
    const bool full = level == "full";
    std::vector<SelftestResult> out;
    auto run = [&](const std::string& name, const std::function<std::string()>& fn) {
        SelftestResult r{name, false, ""};
        try {
            r.detail = fn();
            r.passed = r.detail.rfind("ok", 0) == 0;
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        out.push_back(r);
    };

    run("counting-oracle", [&] { return counting_suite(full ? 6 : 4); });
    run("crapo-rota", [] {
        const auto D = desarguesian_spread(FieldTower::make(2, 1, 2), 2);
        const auto r = verify_crapo_rota(D, 1);
        if (poly_to_string(r.chi) != "x^4 - 5x^2 + 4") return std::string("unexpected chi ") + poly_to_string(r.chi);
        return std::string(r.holds() ? "ok" : "equality fails");
    });
    run("tight-spreads", [&] {
        for (unsigned n = 2; n <= (full ? 3u : 2u); ++n)
            for (unsigned h = 1; h <= 2; ++h) {
                const auto T = FieldTower::make(2, 1, 2);
                const auto t = construct_tight_spread(T, n, h);
                if (t.U.dim() != 2 * (n - 1) + h - 1 || !is_scattered(t.U, t.spread, h)) return std::string("tight");
                const auto p = partial_spread_tight(T, n, h);
                if (p.U.dim() != 2 * (n - 1) + h || !is_scattered(p.U, p.spread, h)) return std::string("partial");
            }
        return std::string("ok");
    });
    run("families", [] {
        for (unsigned m = 2; m <= 4; ++m) {
            const auto r = construct_family("even-n", {2, m, 1});
            if (r.verification != "verified") return "even-n at m=" + std::to_string(m);
        }
        return std::string("ok");
    });
    run("duality", [] {
        const Ambient X(FieldTower::make(2, 1, 2), 2);
        const DualityContext ctx(X);
        const auto U = construct_family("even-n", {2, 2, 1}).U;
        const auto r = dual_scattered(U, ctx, 1);
        return std::string(r.checked && r.premise && r.conclusion ? "ok" : "dual of max scattered");
    });
    run("covering-radius", [] {
        const auto C = multiplication_code(FieldTower::make(2, 1, 2));
        const auto r = covering_radius_exact(C);
        return std::string(r.exact == 1u && r.scattered_radius == 1u ? "ok" : "gabidulin radius");
    });
    run("minimal-code", [] {
        const auto mc = construct_minimal_code(FieldTower::make(2, 1, 4));
        return std::string(mc.report && mc.report->minimal ? "ok" : "not minimal");
    });
    return out;
}

}  // namespace scatterlab
