#pragma once

#include "sixv/errors.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sixv {

enum class VertexType : std::uint8_t { T1 = 1, T2, T3, T4, T5, T6 };
enum class WeightClass : std::uint8_t { a, b, c };

WeightClass weight_class(VertexType v);
int type_index(VertexType v);  // 1..6
VertexType type_from_index(int k);

// Path occupancy of the four edges around a vertex.  Paths come in from the
// left boundary and leave through the top; a path on a horizontal edge is a
// right-pointing arrow, on a vertical edge an up-pointing arrow.
struct EdgeBits {
    bool left, below, right, up;
};
EdgeBits edge_bits(VertexType v);
std::optional<VertexType> vertex_from_bits(bool left, bool below, bool right, bool up);

double delta(double a, double b, double c);

struct WeightTriple {
    double a = 1, b = 1, c = 1;
    WeightTriple() = default;
    WeightTriple(double a_, double b_, double c_);
    double delta() const { return sixv::delta(a, b, c); }
};

enum class Phase : std::uint8_t { Ferro, Disordered, AntiFerro, Boundary };
std::string phase_name(Phase p);
Phase phase_from_name(const std::string& s);

Phase classify_phase(double a, double b, double c, double eps = 1e-9);

struct PhaseParams {
    Phase phase = Phase::Disordered;
    double t = 0;
    double gamma = 0.7853981633974483;
    double scale = 1;
    int c_sign = 1;
};

void check_params(const PhaseParams& p);
WeightTriple weights_from_params(const PhaseParams& p);
PhaseParams params_from_weights(double a, double b, double c, double eps = 1e-9);

// a(u,g), b(u,g), c(g) of the four parameterizations, unscaled and with
// signed c.  Templated so the same formulas serve double, Real and CReal.
template <class S>
S weight_a(Phase ph, const S& u, const S& g) {
    using std::sin;
    using std::sinh;
    switch (ph) {
        case Phase::Ferro: return sinh(S(u - g));
        case Phase::Disordered: return sin(S(g - u));
        case Phase::AntiFerro: return sinh(S(g - u));
        case Phase::Boundary: return S(g - u);
    }
    return S(g - u);
}

template <class S>
S weight_b(Phase ph, const S& u, const S& g) {
    using std::sin;
    using std::sinh;
    switch (ph) {
        case Phase::Ferro:
        case Phase::AntiFerro: return sinh(S(u + g));
        case Phase::Disordered: return sin(S(g + u));
        case Phase::Boundary: return S(g + u);
    }
    return S(g + u);
}

template <class S>
S weight_c(Phase ph, const S& g) {
    using std::sin;
    using std::sinh;
    S two_g = g + g;
    switch (ph) {
        case Phase::Ferro:
        case Phase::AntiFerro: return sinh(two_g);
        case Phase::Disordered: return sin(two_g);
        case Phase::Boundary: return two_g;
    }
    return two_g;
}

// b(x, 0)
template <class S>
S bzero(Phase ph, const S& x) {
    using std::sin;
    using std::sinh;
    switch (ph) {
        case Phase::Ferro:
        case Phase::AntiFerro: return sinh(x);
        case Phase::Disordered: return sin(x);
        case Phase::Boundary: return x;
    }
    return x;
}

class Configuration {
public:
    Configuration() = default;
    explicit Configuration(int n);
    Configuration(int n, std::vector<VertexType> grid);

    int n() const { return n_; }
    // 1-based, x = column from the left, y = row from the bottom
    VertexType at(int x, int y) const { return grid_[idx(x, y)]; }
    void set(int x, int y, VertexType v) { grid_[idx(x, y)] = v; }
    const std::vector<VertexType>& grid() const { return grid_; }

    std::array<int, 7> counts() const;  // counts()[k] = number of type Tk
    bool operator==(const Configuration& o) const { return n_ == o.n_ && grid_ == o.grid_; }
    bool operator<(const Configuration& o) const;

private:
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y - 1) * n_ + (x - 1); }
    int n_ = 0;
    std::vector<VertexType> grid_;
};

struct Violation {
    int x, y;
    std::string what;
};
std::vector<Violation> validate_configuration(const Configuration& cfg);

using Row = std::vector<int>;

struct MonotoneTriangle {
    int n = 0;
    std::vector<Row> rows;  // rows[k-1] has k strictly increasing entries
    bool operator==(const MonotoneTriangle& o) const { return n == o.n && rows == o.rows; }
};

bool interlaces(const Row& lower, const Row& upper);  // |upper| = |lower|+1
bool is_monotone_triangle(const MonotoneTriangle& t);

MonotoneTriangle triangle_from_configuration(const Configuration& cfg);
Configuration configuration_from_triangle(const MonotoneTriangle& tri);

// Vertex types of one row given the vertical path positions below and above
// it.  A path enters from the left; nullopt when the pattern is impossible.
std::optional<std::vector<VertexType>> row_types(int n, const Row& below, const Row& up);

Configuration xor_reflect(const Configuration& cfg);

double config_weight(const Configuration& cfg, const WeightTriple& w);

// Plain text: first line n, then n lines of digits, top row first.
std::string to_text(const Configuration& cfg);
Configuration from_text(const std::string& s);
std::string triangle_csv(const MonotoneTriangle& t);

// Visits every interlacing array below `top` (rows 1..|top|-1); the callback
// sees rows[0..k-1] with rows[k-1] == top.
void for_each_triangle_below(const Row& top, const std::function<void(const std::vector<Row>&)>& f);

// All strictly increasing k-rows in [lo,hi] interlacing with `upper` from below.
void for_each_interlacing_below(const Row& upper, const std::function<void(const Row&)>& f);

}  // namespace sixv
