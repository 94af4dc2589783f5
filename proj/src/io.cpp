#include "scatterlab/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "scatterlab/errors.hpp"

namespace scatterlab {

namespace {

template <class T>
T read_value(std::istream& is, const char* what)
{
    T x{};
    if (!(is >> x)) throw ValidationError(std::string("malformed input: expected ") + what);
    return x;
}

Matrix read_rows(std::istream& is, std::size_t rows, std::size_t cols, std::uint32_t order)
{
    Matrix M(rows, cols);
    for (auto& x : M.a) {
        const auto v = read_value<std::uint64_t>(is, "element code");
        require(v < order, "element code out of range");
        x = Elem(v);
    }
    return M;
}

void write_rows(std::ostream& os, const Matrix& M)
{
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < M.cols; ++j) os << (j ? " " : "") << M(i, j);
        os << '\n';
    }
}

FieldTower default_tower(std::uint32_t q, unsigned m)
{
    const auto [p, e] = prime_power(q);
    return FieldTower::make(p, e, m);
}

}  // namespace

void write_subspace(std::ostream& os, const Subspace& U)
{
    os << U.field().order() << ' ' << U.ambient_dim() << ' ' << U.dim() << '\n';
    write_rows(os, U.basis());
}

Subspace read_subspace(std::istream& is)
{
    const auto q = read_value<std::uint32_t>(is, "q");
    const auto N = read_value<std::size_t>(is, "N");
    const auto k = read_value<std::size_t>(is, "k");
    require(k <= N, "subspace dimension exceeds N");
    auto F = field_of_order(q);
    Matrix B = read_rows(is, k, N, q);
    Subspace U = Subspace::span(F, N, B);
    require(U.dim() == k, "subspace rows are linearly dependent");
    return U;
}

void write_spread(std::ostream& os, const PartialSpread& A)
{
    const std::size_t n = A.N() % A.m() == 0 ? A.N() / A.m() : 0;
    os << A.field().order() << ' ' << A.m() << ' ' << n << ' ' << to_string(A.kind()) << ' ' << A.size() << '\n';
    for (const auto& S : A.elements()) write_subspace(os, S);
}

PartialSpread read_spread(std::istream& is)
{
    const auto q = read_value<std::uint32_t>(is, "q");
    const auto m = read_value<std::size_t>(is, "m");
    const auto n = read_value<std::size_t>(is, "n");
    const SpreadKind kind = parse_spread_kind(read_value<std::string>(is, "kind"));
    const auto count = read_value<std::size_t>(is, "count");
    require(m >= 1, "m must be positive");
    std::vector<Subspace> elems;
    for (std::size_t i = 0; i < count; ++i) {
        Subspace S = read_subspace(is);
        require(S.field().order() == q, "element over a different field");
        require(S.dim() == m, "element dimension differs from m");
        elems.push_back(std::move(S));
    }
    require(!elems.empty() || n > 0, "empty spread needs n");
    const std::size_t N = elems.empty() ? n * m : elems[0].ambient_dim();
    if ((kind == SpreadKind::desarguesian || kind == SpreadKind::partial_desarguesian) && N % m == 0 &&
        double(q) <= std::pow(double(kMaxFieldOrder), 1.0 / double(m))) {
        const Ambient X(default_tower(q, unsigned(m)), N / m);
        std::vector<Vec> points;
        bool ok = true;
        for (const auto& S : elems) {
            const Vec p = X.contract(S.basis().row(0));
            if (!(X.fq_expansion(std::vector<Vec>{p}) == S)) {
                ok = false;
                break;
            }
            points.push_back(p);
        }
        if (ok) return PartialSpread::from_points(X, points, kind);
    }
    return PartialSpread(field_of_order(q), N, m, std::move(elems), kind);
}

void write_code(std::ostream& os, const MatrixCode& C)
{
    os << C.q() << ' ' << C.m() << ' ' << C.mp() << ' ' << C.size() << ' ' << (C.linear() ? 1 : 0) << '\n';
    for (const auto& A : C.codewords()) {
        for (std::size_t i = 0; i < A.a.size(); ++i) os << (i ? " " : "") << A.a[i];
        os << '\n';
    }
}

MatrixCode read_code(std::istream& is)
{
    const auto q = read_value<std::uint32_t>(is, "q");
    const auto m = read_value<std::size_t>(is, "m");
    const auto mp = read_value<std::size_t>(is, "m'");
    const auto count = read_value<std::size_t>(is, "count");
    const auto linear = read_value<int>(is, "linear flag");
    auto F = field_of_order(q);
    std::vector<Matrix> words;
    for (std::size_t i = 0; i < count; ++i) words.push_back(read_rows(is, m, mp, q));
    return MatrixCode(F, std::move(words), linear != 0);
}

void write_vector_code(std::ostream& os, const VectorRankCode& C)
{
    os << C.tower().q() << ' ' << C.tower().m() << ' ' << C.k() << ' ' << C.length() << '\n';
    write_rows(os, C.generator());
}

VectorRankCode read_vector_code(std::istream& is)
{
    const auto q = read_value<std::uint32_t>(is, "q");
    const auto m = read_value<unsigned>(is, "m");
    const auto k = read_value<std::size_t>(is, "k");
    const auto l = read_value<std::size_t>(is, "l");
    FieldTower T = default_tower(q, m);
    Matrix G = read_rows(is, k, l, T.qm());
    return VectorRankCode(std::move(T), std::move(G));
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    require(bool(in), "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path);
    require(bool(out), "cannot write " + path);
    out << contents;
}

}  // namespace scatterlab
