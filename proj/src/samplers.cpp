#include "sixv/samplers.hpp"

#include "sixv/errors.hpp"
#include "sixv/exactpf.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace sixv {

namespace {

std::size_t draw_index(const std::vector<double>& cdf, Rng& rng) {
    double u = rng.uniform() * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> running_sum(const std::vector<double>& p) {
    std::vector<double> c(p.size());
    std::partial_sum(p.begin(), p.end(), c.begin());
    return c;
}

}  // namespace

ExactDwbcSampler::ExactDwbcSampler(int n, const WeightTriple& w) {
    if (n < 1 || n > 6) throw SizeError("exact sampling enumerates configurations, n <= 6");
    DwbcEnumeration e = enumerate_dwbc(n, w);
    if (!(e.Z > 0)) throw DomainError("all configurations have zero weight");
    configs_ = std::move(e.configs);
    prob_.resize(e.weights.size());
    for (std::size_t i = 0; i < prob_.size(); ++i) prob_[i] = e.weights[i] / e.Z;
    cdf_ = running_sum(prob_);
}

const Configuration& ExactDwbcSampler::draw(Rng& rng) const { return configs_[draw_index(cdf_, rng)]; }

Configuration sample_dwbc_exact(int n, const WeightTriple& w, Rng& rng) {
    return ExactDwbcSampler(n, w).draw(rng);
}

DwbcChain::DwbcChain(int n, const WeightTriple& w, Rng& rng) : n_(n), rng_(rng) {
    if (n < 1) throw SizeError("n must be positive");
    if (!(w.c > 0)) throw ErgodicityError("face flips are not ergodic at c = 0; use the Mallows sampler");
    for (int k = 1; k <= 6; ++k) {
        switch (weight_class(type_from_index(k))) {
            case WeightClass::a: wt_[k] = w.a; break;
            case WeightClass::b: wt_[k] = w.b; break;
            case WeightClass::c: wt_[k] = w.c; break;
        }
    }
    wt_[0] = 0;
    tri_.n = n;
    for (int k = 1; k <= n; ++k) {
        Row r(k);
        std::iota(r.begin(), r.end(), 1);
        tri_.rows.push_back(r);
    }
    up_.assign(n + 1, std::vector<char>(n + 2, 0));
    horiz_.assign(n + 1, std::vector<char>(n + 1, 0));
    for (int y = 1; y <= n; ++y)
        for (int x : tri_.rows[y - 1]) up_[y][x] = 1;
    for (int y = 1; y <= n; ++y) {
        horiz_[y][0] = 1;
        for (int x = 1; x <= n; ++x) horiz_[y][x] = static_cast<char>(horiz_[y][x - 1] + up_[y - 1][x] - up_[y][x]);
    }
}

double DwbcChain::vertex_weight(int x, int y) const {
    auto v = vertex_from_bits(horiz_[y][x - 1], up_[y - 1][x], horiz_[y][x], up_[y][x]);
    return v ? wt_[type_index(*v)] : 0.0;
}

void DwbcChain::apply(int j, int from, int to) {
    up_[j][from] = 0;
    up_[j][to] = 1;
    int x = std::min(from, to);
    int d = to > from ? 1 : -1;
    horiz_[j][x] = static_cast<char>(horiz_[j][x] + d);
    horiz_[j + 1][x] = static_cast<char>(horiz_[j + 1][x] - d);
}

void DwbcChain::step() {
    ++proposed_;
    const int free_entries = n_ * (n_ - 1) / 2;
    if (free_entries == 0) return;
    // entry index -> (row j, position i), rows 1..n-1
    long e = static_cast<long>(rng_.below(static_cast<std::uint64_t>(free_entries)));
    int j = 1;
    while (e >= j) {
        e -= j;
        ++j;
    }
    const int i = static_cast<int>(e);
    const int d = rng_.bernoulli(0.5) ? 1 : -1;
    Row& row = tri_.rows[j - 1];
    const int from = row[i], to = from + d;

    const Row& upper = tri_.rows[j];
    if (to < upper[i] || to > upper[i + 1]) return;
    if (i > 0 && to <= row[i - 1]) return;
    if (i + 1 < j && to >= row[i + 1]) return;
    if (j > 1) {
        const Row& lower = tri_.rows[j - 2];
        if (i > 0 && to < lower[i - 1]) return;
        if (i < j - 1 && to > lower[i]) return;
    }

    double before = vertex_weight(from, j) * vertex_weight(to, j) * vertex_weight(from, j + 1) * vertex_weight(to, j + 1);
    apply(j, from, to);
    double after = vertex_weight(from, j) * vertex_weight(to, j) * vertex_weight(from, j + 1) * vertex_weight(to, j + 1);
    if (after >= before || rng_.uniform() * before < after) {
        row[i] = to;
        ++accepted_;
    } else {
        apply(j, to, from);
    }
}

void DwbcChain::sweep() {
    const int m = std::max(1, n_ * (n_ - 1) / 2);
    for (int s = 0; s < m; ++s) step();
}

Configuration sample_dwbc_mcmc(int n, const WeightTriple& w, const ChainConfig& chain, Rng& rng) {
    chain.check();
    DwbcChain ch(n, w, rng);
    for (long s = 0; s < chain.burn_in + chain.sweeps; ++s) ch.sweep();
    return ch.configuration();
}

TransitionMatrix dwbc_transition_matrix(int n, const WeightTriple& w) {
    if (!(w.c > 0)) throw ErgodicityError("face flips are not ergodic at c = 0");
    DwbcEnumeration e = enumerate_dwbc(n, w);
    TransitionMatrix tm;
    tm.states = e.configs;
    const std::size_t S = tm.states.size();
    tm.pi.resize(S);
    for (std::size_t s = 0; s < S; ++s) tm.pi[s] = e.weights[s] / e.Z;
    std::map<std::vector<Row>, std::size_t> index;
    std::vector<MonotoneTriangle> tris(S);
    for (std::size_t s = 0; s < S; ++s) {
        tris[s] = triangle_from_configuration(tm.states[s]);
        index[tris[s].rows] = s;
    }
    tm.P.assign(S, std::vector<double>(S, 0.0));
    const int free_entries = n * (n - 1) / 2;
    for (std::size_t s = 0; s < S; ++s) {
        double stay = 1.0;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i)
                for (int d : {-1, 1}) {
                    MonotoneTriangle t = tris[s];
                    t.rows[j - 1][i] += d;
                    auto it = index.find(t.rows);
                    if (it == index.end()) continue;
                    double acc = std::min(1.0, tm.pi[it->second] / tm.pi[s]);
                    double pr = acc / (2.0 * free_entries);
                    tm.P[s][it->second] += pr;
                    stay -= pr;
                }
        tm.P[s][s] += stay;
    }
    return tm;
}

std::vector<std::pair<int, int>> c_vertex_cloud(const Configuration& cfg) {
    std::vector<std::pair<int, int>> out;
    for (int y = 1; y <= cfg.n(); ++y)
        for (int x = 1; x <= cfg.n(); ++x)
            if (weight_class(cfg.at(x, y)) == WeightClass::c) out.emplace_back(x, y);
    return out;
}

Array sample_stochastic_6v(int k_rows, int window_cols, double b1, double b2, Rng& rng) {
    if (!(b1 > 0 && b1 < 1 && b2 > 0 && b2 < 1)) throw DomainError("b1 and b2 must lie in (0,1)");
    if (k_rows < 1 || window_cols < 1) throw SizeError("need positive rows and window");
    int W = window_cols;
    for (int attempt = 0; attempt <= 3; ++attempt, W *= 2) {
        Array rows;
        Row below;
        bool overflow = false;
        for (int y = 1; y <= k_rows && !overflow; ++y) {
            Row up;
            int h = 1;
            std::size_t ib = 0;
            for (int x = 1; x <= W; ++x) {
                const bool b = ib < below.size() && below[ib] == x;
                if (b) ++ib;
                bool u;
                if (h && b) u = true;  // Type 2, h stays 1
                else if (!h && !b) u = false;
                else if (h) {
                    u = !rng.bernoulli(b1);  // Type 3 with b1, else Type 5
                    if (u) h = 0;
                } else {
                    u = rng.bernoulli(b2);  // Type 4 with b2, else Type 6
                    if (!u) h = 1;
                }
                if (u) up.push_back(x);
            }
            if (h) overflow = true;
            below = up;
            rows.push_back(std::move(up));
        }
        if (!overflow) return rows;
    }
    throw SizeError("a path did not turn within the sampling window after 3 doublings");
}

int confined_geometric(int L, double q, Rng& rng) {
    if (L < 1) throw SizeError("empty support");
    if (!(q > 0)) throw DomainError("q must be positive");
    if (L == 1) return 1;
    if (q == 1.0) return 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(L)));
    if (q > 1) return L + 1 - confined_geometric(L, 1 / q, rng);
    // P(zeta <= m) = (1 - q^m) / (1 - q^L)
    double u = rng.uniform();
    double m = std::ceil(std::log1p(u * std::expm1(L * std::log(q))) / std::log(q));
    if (!(m >= 1)) m = 1;
    return std::min(L, static_cast<int>(m));
}

std::vector<int> sample_mallows_finite(int n, double q, Rng& rng) {
    if (n < 1) throw SizeError("n must be positive");
    std::vector<int> rest(n), tau;
    std::iota(rest.begin(), rest.end(), 1);
    tau.reserve(n);
    for (int k = 1; k <= n; ++k) {
        int z = confined_geometric(n - k + 1, q, rng);
        // the z-th smallest remaining letter; each skipped letter is one inversion
        tau.push_back(rest[z - 1]);
        rest.erase(rest.begin() + (z - 1));
    }
    return tau;
}

std::vector<int> sample_qshuffle_prefix(int k, double q, Rng& rng) {
    if (!(q > 0 && q < 1)) throw DomainError("q-shuffle prefix needs 0 < q < 1");
    std::vector<int> used, tau;
    for (int i = 0; i < k; ++i) {
        long m = static_cast<long>(rng.geometric_trials(q));
        long cand = m;
        for (int u : used) {
            if (u <= cand) ++cand;
            else break;
        }
        tau.push_back(static_cast<int>(cand));
        used.insert(std::upper_bound(used.begin(), used.end(), static_cast<int>(cand)), static_cast<int>(cand));
    }
    return tau;
}

Array prefix_rows(const std::vector<int>& seq, int k) {
    Array rows;
    Row cur;
    for (int j = 0; j < k && j < static_cast<int>(seq.size()); ++j) {
        cur.insert(std::upper_bound(cur.begin(), cur.end(), seq[j]), seq[j]);
        rows.push_back(cur);
    }
    return rows;
}

std::vector<std::vector<double>> sample_gue_corners(int N, Rng& rng) {
    if (N < 1) throw SizeError("N must be positive");
    Eigen::MatrixXcd X(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double re = rng.normal();
            double im = rng.normal();
            X(i, j) = {re, im};
        }
    Eigen::MatrixXcd M = (X + X.adjoint()) / 2.0;
    std::vector<std::vector<double>> out;
    for (int k = 1; k <= N; ++k) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.topLeftCorner(k, k), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
        std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + k);
        std::sort(ev.begin(), ev.end());
        out.push_back(std::move(ev));
    }
    return out;
}

double sample_eta(double theta, Rng& rng) {
    double u = rng.uniform();
    if (theta == 0) return u;
    return std::log1p(u * std::expm1(theta)) / theta;
}

double abc_array_weight(const Array& rows, const WeightTriple& w) {
    if (!(w.c > 0)) throw DomainError("the conditional measure needs c > 0");
    const double rb = w.b * w.b / (w.c * w.c), ra = w.a * w.a / (w.c * w.c);
    double wt = 1;
    for (std::size_t j = 2; j <= rows.size(); ++j) {
        const Row& cur = rows[j - 1];
        const Row& below = rows[j - 2];
        for (std::size_t i = 1; i <= j; ++i) {
            if (i >= 2 && cur[i - 1] == below[i - 2]) wt *= rb;
            if (i <= j - 1 && cur[i - 1] == below[i - 1]) wt *= ra;
        }
    }
    return wt;
}

ConditionalTriangleSampler::ConditionalTriangleSampler(const Row& nu, const WeightTriple& w) {
    if (nu.empty() || nu.size() > 5) throw SizeError("conditional arrays are enumerated, 1 <= k <= 5");
    for (std::size_t i = 1; i < nu.size(); ++i)
        if (nu[i] <= nu[i - 1]) throw StructureError("top row must be strictly increasing");
    for_each_triangle_below(nu, [&](const std::vector<Row>& rows) {
        arrays_.push_back(rows);
        prob_.push_back(abc_array_weight(rows, w));
    });
    double Z = std::accumulate(prob_.begin(), prob_.end(), 0.0);
    for (double& p : prob_) p /= Z;
    cdf_ = running_sum(prob_);
}

const Array& ConditionalTriangleSampler::draw(Rng& rng) const { return arrays_[draw_index(cdf_, rng)]; }

Array sample_conditional_triangle(const Row& nu, const WeightTriple& w, Rng& rng) {
    return ConditionalTriangleSampler(nu, w).draw(rng);
}

std::vector<std::vector<double>> sample_uniform_gt(const std::vector<double>& nu, long sweeps, Rng& rng) {
    const std::size_t k = nu.size();
    if (k == 0) throw SizeError("empty top row");
    for (std::size_t i = 1; i < k; ++i)
        if (nu[i] < nu[i - 1]) throw StructureError("top row must be nondecreasing");
    std::vector<std::vector<double>> rows(k);
    rows[k - 1] = nu;
    for (std::size_t j = k - 1; j >= 1; --j) {
        rows[j - 1].resize(j);
        for (std::size_t i = 0; i < j; ++i) rows[j - 1][i] = (rows[j][i] + rows[j][i + 1]) / 2;
    }
    for (long s = 0; s < sweeps; ++s) {
        for (std::size_t j = k - 1; j >= 1; --j) {
            for (std::size_t i = 0; i < j; ++i) {
                double lo = rows[j][i], hi = rows[j][i + 1];
                if (j >= 2) {
                    if (i > 0) lo = std::max(lo, rows[j - 2][i - 1]);
                    if (i < j - 1) hi = std::min(hi, rows[j - 2][i]);
                }
                rows[j - 1][i] = lo + (hi - lo) * rng.uniform();
            }
        }
    }
    return rows;
}

}  // namespace sixv
