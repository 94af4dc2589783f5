#include "scatterlab/lattice.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "scatterlab/errors.hpp"
#include "scatterlab/scattered.hpp"

namespace scatterlab {

std::vector<Subspace> atoms_of(const PartialSpread& A, unsigned h)
{
    if (h >= A.m()) return {};
    const std::size_t m = A.m();
    check_guard(gauss_binomial_approx(m, h + 1, A.field().order()) * double(A.size()), 1e7, "atom enumeration");
    std::set<Subspace> atoms;
    for (const auto& S : A.elements()) {
        GrassmannianCursor cur(A.field_ptr(), m, h + 1);
        while (cur.next()) {
            const Matrix G = mul(A.field(), cur.current().basis(), S.basis());
            atoms.insert(Subspace::span(A.field_ptr(), A.N(), G));
        }
    }
    return {atoms.begin(), atoms.end()};
}

Lattice build_lattice(const std::vector<Subspace>& atoms, std::shared_ptr<const Field> field, std::size_t N)
{
    Lattice L;
    L.field = field;
    L.N = N;
    L.atom_count = atoms.size();
    std::set<Subspace> seen;
    std::deque<Subspace> todo;
    const Subspace bottom(field, N);
    seen.insert(bottom);
    for (const auto& a : atoms) {
        require(a.ambient_dim() == N, "atom has wrong ambient dimension");
        if (seen.insert(a).second) todo.push_back(a);
    }
    while (!todo.empty()) {
        const Subspace V = std::move(todo.front());
        todo.pop_front();
        for (const auto& a : atoms) {
            if (V.contains(a)) continue;
            Subspace W = join(V, a);
            if (seen.insert(W).second) {
                check_guard(double(seen.size()), 1e6, "lattice closure");
                todo.push_back(std::move(W));
            }
        }
    }
    L.elements.assign(seen.begin(), seen.end());  // operator< orders by dim first
    verify(L.elements.front() == bottom, "lattice bottom is not {0}");

    const std::size_t s = L.elements.size();
    check_guard(double(s) * double(s) / 2, 1e9, "Möbius recursion");
    L.mobius.assign(s, 0);
    L.mobius[0] = 1;
    for (std::size_t i = 1; i < s; ++i) {
        long long acc = 0;
        const Subspace& V = L.elements[i];
        for (std::size_t j = 0; j < i; ++j) {
            const Subspace& W = L.elements[j];
            if (W.dim() < V.dim() && V.contains(W)) acc += L.mobius[j];
        }
        L.mobius[i] = -acc;
    }
    return L;
}

std::vector<BigInt> characteristic_polynomial(const Lattice& L)
{
    std::vector<BigInt> c(L.N + 1, 0);
    for (std::size_t i = 0; i < L.elements.size(); ++i) c[L.N - L.elements[i].dim()] += L.mobius[i];
    return c;
}

BigInt evaluate(const std::vector<BigInt>& poly, const BigInt& x)
{
    BigInt r = 0;
    for (std::size_t i = poly.size(); i-- > 0;) r = r * x + poly[i];
    return r;
}

unsigned critical_exponent(const Lattice& L, std::uint64_t q)
{
    const auto chi = characteristic_polynomial(L);
    for (unsigned s = 0; s <= L.N; ++s)
        if (evaluate(chi, big_pow(q, s)) != 0) return s;
    throw VerificationFailure("characteristic polynomial vanishes at q^0, ..., q^N");
}

CrapoRotaReport verify_crapo_rota(const PartialSpread& A, unsigned h)
{
    CrapoRotaReport r;
    r.N = unsigned(A.N());
    const auto atoms = atoms_of(A, h);
    const Lattice L = build_lattice(atoms, A.field_ptr(), A.N());
    r.atoms = atoms.size();
    r.lattice_size = L.elements.size();
    r.chi = characteristic_polynomial(L);
    r.critical_exponent = critical_exponent(L, A.field().order());
    SearchOptions opt;
    opt.start_from_bound = false;
    r.max_scattered_dim = max_scattered_dimension(A, h, opt).k_max;
    return r;
}

std::string poly_to_string(const std::vector<BigInt>& poly)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = poly.size(); i-- > 0;) {
        const BigInt& c = poly[i];
        if (c == 0) continue;
        const BigInt a = c < 0 ? BigInt(-c) : c;
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        if (a != 1 || i == 0) os << a;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace scatterlab
