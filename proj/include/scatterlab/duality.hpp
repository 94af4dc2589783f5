#pragma once

// Trace duality on F_q-subspaces of F_{q^m}^n. sigma(x, y) = x^T F y is a
// nondegenerate reflexive F_{q^m}-bilinear form and sigma' = Tr(sigma).

#include <string>

#include "scatterlab/ambient.hpp"

namespace scatterlab {

class DualityContext {
public:
    /// Standard inner product.
    explicit DualityContext(Ambient X);
    /// F must be invertible and symmetric or alternating.
    DualityContext(Ambient X, Matrix form);

    const Ambient& ambient() const { return X_; }
    const Matrix& form() const { return form_; }
    /// mn x mn Gram matrix of sigma' on the expansion basis.
    const Matrix& gram() const { return gram_; }

    Elem sigma(std::span<const Elem> x, std::span<const Elem> y) const;
    Elem sigma_prime(std::span<const Elem> u, std::span<const Elem> v) const;

    Subspace perp_fq(const Subspace& U) const;
    /// W is an F_{q^m}-subspace of F_{q^m}^n.
    Subspace perp_fqm(const Subspace& W) const;

private:
    Ambient X_;
    Matrix form_;
    Matrix gram_;
};

struct DualWeight {
    long lhs = 0;
    long rhs = 0;
    std::size_t dim_U = 0;
    std::size_t s = 0;
    bool holds() const { return lhs == rhs; }
};

/// Both sides of dim(U^perp ∩ W^perp) - dim(U ∩ W) = mn - dim U - sm.
DualWeight check_dual_weight(const Subspace& U, const Subspace& W, const DualityContext& ctx);

struct DualReport {
    explicit DualReport(Subspace d) : dual(std::move(d)) {}
    Subspace dual;
    /// "max-scattered", "h-scattered" or "none".
    std::string transfer = "none";
    bool applicable = false;
    bool checked = false;
    bool premise = false;
    bool conclusion = false;
    unsigned dual_max_dim = 0;
    std::string detail;
    bool holds() const { return !checked || premise == conclusion; }
};

/// U^perp plus a check of the applicable scattered-transfer statement.
DualReport dual_scattered(const Subspace& U, const DualityContext& ctx, unsigned h);

}  // namespace scatterlab
