#pragma once

#include "sixv/core.hpp"
#include "sixv/loggas.hpp"
#include "sixv/mp.hpp"
#include "sixv/rng.hpp"
#include "sixv/specialfn.hpp"

#include <complex>
#include <vector>

namespace sixv {

struct DwbcEnumeration {
    std::vector<Configuration> configs;
    std::vector<double> weights;
    double Z = 0;
};

// All DWBC configurations of size n, generated from monotone triangles.
std::vector<Configuration> dwbc_configurations(int n);
DwbcEnumeration enumerate_dwbc(int n, const WeightTriple& w);

// Independent count: row transfer over bit masks of occupied vertical edges.
unsigned long long count_dwbc_transfer(int n);

struct InhomSpec {
    std::vector<double> chi;  // columns x
    std::vector<double> psi;  // rows y
    double gamma = 0;
    Phase phase = Phase::Disordered;
};

// Definition by summation: vertex (x,y) gets a, b or c at psi_y - chi_x.
Real inhom_brute_force(const InhomSpec& spec, const PrecisionCtx& prec);
Real ik_determinant(const InhomSpec& spec, const PrecisionCtx& prec);

// Normalized partition function with inhomogeneities xi on the bottom rows.
std::complex<double> ztilde_k1(int n, std::complex<double> xi, const PhaseParams& p, const PrecisionCtx& prec = {});
std::complex<double> ztilde_k(int n, const std::vector<std::complex<double>>& xi, const PhaseParams& p,
                              const PrecisionCtx& prec = {});

// Z_n(0^n; t^n) with unscaled weights a(t,g), b(t,g), signed c(g).
Real z_homogeneous(int n, const PhaseParams& p, const PrecisionCtx& prec = {});

// Law of lambda_1^1 (position where the bottom path turns up), l = 1..n.
std::vector<double> lambda11_distribution(int n, const PhaseParams& p, const PrecisionCtx& prec = {});

struct ZtildeMc {
    std::complex<double> mean;
    double stderr = 0;
};

ZtildeMc ztilde_via_bessel_mc(int n, const std::vector<double>& xi, const PhaseParams& p, long samples,
                              const ChainConfig& chain, Rng& rng);

// Last working precision chosen by the adaptive routines (for reports).
int last_precision_bits();

}  // namespace sixv
