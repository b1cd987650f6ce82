#pragma once

#include "sixv/core.hpp"
#include "sixv/loggas.hpp"
#include "sixv/rng.hpp"

#include <utility>
#include <vector>

namespace sixv {

// Rows 1..k of an interlacing integer array (rows[j-1] has j entries).
using Array = std::vector<Row>;

// Inverse-CDF sampler over the enumerated DWBC configurations (n <= 6).
class ExactDwbcSampler {
public:
    ExactDwbcSampler(int n, const WeightTriple& w);
    const Configuration& draw(Rng& rng) const;
    const std::vector<Configuration>& configs() const { return configs_; }
    const std::vector<double>& probabilities() const { return prob_; }

private:
    std::vector<Configuration> configs_;
    std::vector<double> prob_, cdf_;
};

Configuration sample_dwbc_exact(int n, const WeightTriple& w, Rng& rng);

// Metropolis chain on monotone triangles: a proposal moves one free entry by
// +-1 (one face of the height function) and is accepted with the Gibbs ratio
// of the four vertices it touches.  Needs c > 0.
class DwbcChain {
public:
    DwbcChain(int n, const WeightTriple& w, Rng& rng);
    void step();
    void sweep();  // n(n-1)/2 proposals
    const MonotoneTriangle& triangle() const { return tri_; }
    Configuration configuration() const { return configuration_from_triangle(tri_); }
    long accepted() const { return accepted_; }
    long proposed() const { return proposed_; }

private:
    int n_;
    double wt_[7];
    Rng& rng_;
    MonotoneTriangle tri_;
    std::vector<std::vector<char>> up_;     // up_[y][x]: a path leaves (x,y) upward, y = 0..n
    std::vector<std::vector<char>> horiz_;  // horiz_[y][x]: edge right of (x,y), x = 0..n
    long accepted_ = 0, proposed_ = 0;

    double vertex_weight(int x, int y) const;
    void apply(int j, int from, int to);
};

Configuration sample_dwbc_mcmc(int n, const WeightTriple& w, const ChainConfig& chain, Rng& rng);

// Exact transition matrix of DwbcChain::step over the enumerated states.
struct TransitionMatrix {
    std::vector<Configuration> states;
    std::vector<double> pi;
    std::vector<std::vector<double>> P;
};
TransitionMatrix dwbc_transition_matrix(int n, const WeightTriple& w);

// Positions of Type 5 and 6 vertices, for arctic-curve pictures.
std::vector<std::pair<int, int>> c_vertex_cloud(const Configuration& cfg);

// Rows 1..k of the stochastic six-vertex model in the quadrant.
Array sample_stochastic_6v(int k_rows, int window_cols, double b1, double b2, Rng& rng);
inline int default_stochastic_window(int k, double b2) {
    return static_cast<int>(std::ceil(8.0 * k / (1.0 - b2)));
}

// P(m) proportional to q^(m-1) on {1..L}; any q > 0.
int confined_geometric(int L, double q, Rng& rng);

// Mallows permutation of 1..n through the q-shuffle (values 1-based).
std::vector<int> sample_mallows_finite(int n, double q, Rng& rng);

// tau(1..k) of the q-exchangeable bijection of the positive integers.
std::vector<int> sample_qshuffle_prefix(int k, double q, Rng& rng);

// Rows 1..k: sorted prefixes of a sequence.
Array prefix_rows(const std::vector<int>& seq, int k);

// Eigenvalues of all top-left corners of an N x N GUE matrix
// (diagonal entries N(0,1)).
std::vector<std::vector<double>> sample_gue_corners(int N, Rng& rng);

// Density theta e^{theta x}/(e^theta - 1) on [0,1].
double sample_eta(double theta, Rng& rng);

// Weight of one interlacing array below its top row (a,b,c-measure).
double abc_array_weight(const Array& rows, const WeightTriple& w);

class ConditionalTriangleSampler {
public:
    ConditionalTriangleSampler(const Row& nu, const WeightTriple& w);
    const Array& draw(Rng& rng) const;
    const std::vector<Array>& arrays() const { return arrays_; }
    const std::vector<double>& probabilities() const { return prob_; }

private:
    std::vector<Array> arrays_;
    std::vector<double> prob_, cdf_;
};

Array sample_conditional_triangle(const Row& nu, const WeightTriple& w, Rng& rng);

// Gibbs sampler for the uniform measure on real interlacing arrays with top
// row nu.  Rows 1..k, rows[k-1] == nu.
std::vector<std::vector<double>> sample_uniform_gt(const std::vector<double>& nu, long sweeps, Rng& rng);

}  // namespace sixv
