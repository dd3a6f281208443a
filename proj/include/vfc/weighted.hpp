#pragma once

#include <complex>
#include <vector>

namespace vfc {

// Weights w_0..w_n of the Reeb field Σ w_k H_k on S^{2n+1}, and the coefficients b of the
// holomorphy potential f = Σ b_i |z_i|².
struct WeightVector {
    std::vector<double> w;
    std::vector<double> b;

    int n() const { return static_cast<int>(w.size()) - 1; }
    // A_j = Σ_k w_k − (n+1) w_j
    std::vector<double> A() const;
};

// Throws NonPositiveWeight unless every w_i > 0 (and b has the same length as w).
void validate(const WeightVector& W);

// Sasaki–Futaki character, closed form:
// −16 π^{n+1}/(n+1)! (Σ_i b_i A_i / w_i + ½ Σ_{i≠j} b_i A_j / w_i) / Π w_j.
double futaki_character(const WeightVector& W);

// Integral form −8(n+2) π^{n+1} ∫_{R^n_+} (b_0 + Σ b_j x_j)(w_0 A_0 + Σ w_j A_j x_j) / (w_0 + Σ w_j x_j)^{n+3},
// by tensor Gauss–Legendre after x = y/(1−y). Costs nodes^n evaluations.
double futaki_integral(const WeightVector& W, int nodes = 200);

struct WeightedInvariants {
    double volume = 0;                  // 2 π^{n+1} / (n! Π w_j)
    double s0 = 0;                      // 2n (2 Σ w_j − 1)
    double mean_transverse_scalar = 0;  // 4n Σ w_j
};
WeightedInvariants weighted_invariants(const WeightVector& W);

// 4(n+1) Σ w_j (2 Σ w_k − (n+2) w_j)|z_j|² / Σ w_j |z_j|²
double transverse_scalar_curvature(const WeightVector& W, const std::vector<std::complex<double>>& z);
// s − s⁰ = 4(n+2) Σ w_j (Σ w_k − (n+1) w_j)|z_j|² / Σ w_j |z_j|²
double scalar_minus_projection(const WeightVector& W, const std::vector<std::complex<double>>& z);

}  // namespace vfc
