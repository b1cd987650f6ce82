#include "sixv/core.hpp"

#include <algorithm>
#include <sstream>

namespace sixv {

namespace {

constexpr EdgeBits kBits[7] = {
    {false, false, false, false},  // unused
    {false, false, false, false},  // T1
    {true, true, true, true},      // T2
    {true, false, true, false},    // T3
    {false, true, false, true},    // T4
    {true, false, false, true},    // T5
    {false, true, true, false},    // T6
};

}  // namespace

int type_index(VertexType v) { return static_cast<int>(v); }

VertexType type_from_index(int k) {
    if (k < 1 || k > 6) throw StructureError("vertex type index out of range: " + std::to_string(k));
    return static_cast<VertexType>(k);
}

WeightClass weight_class(VertexType v) {
    switch (v) {
        case VertexType::T1:
        case VertexType::T2: return WeightClass::a;
        case VertexType::T3:
        case VertexType::T4: return WeightClass::b;
        default: return WeightClass::c;
    }
}

EdgeBits edge_bits(VertexType v) { return kBits[type_index(v)]; }

std::optional<VertexType> vertex_from_bits(bool left, bool below, bool right, bool up) {
    for (int k = 1; k <= 6; ++k) {
        const EdgeBits& e = kBits[k];
        if (e.left == left && e.below == below && e.right == right && e.up == up) return type_from_index(k);
    }
    return std::nullopt;
}

double delta(double a, double b, double c) {
    if (!(a > 0) || !(b > 0)) throw DomainError("weights a and b must be positive");
    if (c < 0) throw DomainError("weight c must be nonnegative");
    return (a * a + b * b - c * c) / (2 * a * b);
}

WeightTriple::WeightTriple(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    if (!(a > 0) || !(b > 0) || !(c >= 0)) throw DomainError("invalid weight triple");
}

std::string phase_name(Phase p) {
    switch (p) {
        case Phase::Ferro: return "Ferro";
        case Phase::Disordered: return "Disordered";
        case Phase::AntiFerro: return "AntiFerro";
        case Phase::Boundary: return "Boundary";
    }
    return "?";
}

Phase phase_from_name(const std::string& s) {
    std::string l;
    for (char ch : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (l == "ferro" || l == "1") return Phase::Ferro;
    if (l == "disordered" || l == "2") return Phase::Disordered;
    if (l == "antiferro" || l == "3") return Phase::AntiFerro;
    if (l == "boundary" || l == "4") return Phase::Boundary;
    throw DomainError("unknown phase: " + s);
}

Phase classify_phase(double a, double b, double c, double eps) {
    double d = delta(a, b, c);
    if (std::abs(d - 1) <= eps) throw UnsupportedDeltaOne("Delta = 1 is not supported");
    if (std::abs(d + 1) <= eps) return Phase::Boundary;
    if (d > 1) return Phase::Ferro;
    if (d < -1) return Phase::AntiFerro;
    return Phase::Disordered;
}

void check_params(const PhaseParams& p) {
    const double t = p.t, g = p.gamma;
    if (!(p.scale > 0)) throw DomainError("scale must be positive");
    bool ok = false;
    switch (p.phase) {
        case Phase::Ferro: ok = g != 0 && std::abs(g) < t; break;
        case Phase::Disordered: ok = std::abs(t) < g && g < M_PI / 2; break;
        case Phase::AntiFerro: ok = std::abs(t) < g; break;
        case Phase::Boundary: ok = std::abs(t) < g; break;
    }
    if (!ok) throw DomainError("parameters outside the " + phase_name(p.phase) + " range");
}

WeightTriple weights_from_params(const PhaseParams& p) {
    check_params(p);
    double a = p.scale * weight_a(p.phase, p.t, p.gamma);
    double b = p.scale * weight_b(p.phase, p.t, p.gamma);
    double c = p.scale * weight_c(p.phase, p.gamma);
    return WeightTriple(a, b, std::abs(c));
}

PhaseParams params_from_weights(double a, double b, double c, double eps) {
    Phase ph = classify_phase(a, b, c, eps);
    double d = delta(a, b, c);
    PhaseParams p;
    p.phase = ph;
    switch (ph) {
        case Phase::Disordered: {
            double g = std::acos(-d) / 2;
            p.gamma = g;
            p.t = std::atan(std::tan(g) * (b - a) / (b + a));
            p.scale = c / std::sin(2 * g);
            break;
        }
        case Phase::Ferro: {
            if (a == b) throw DomainError("a = b is impossible when Delta > 1");
            double ag = std::acosh(d) / 2;
            double g = a > b ? -ag : ag;
            double th = std::tanh(g) * (b + a) / (b - a);
            p.gamma = g;
            p.t = std::atanh(th);
            p.scale = a / std::sinh(p.t - g);
            p.c_sign = g < 0 ? -1 : 1;
            break;
        }
        case Phase::AntiFerro: {
            double g = std::acosh(-d) / 2;
            p.gamma = g;
            p.t = std::atanh(std::tanh(g) * (b - a) / (b + a));
            p.scale = c / std::sinh(2 * g);
            break;
        }
        case Phase::Boundary: {
            p.gamma = 1;
            p.t = (b - a) / (b + a);
            p.scale = (a + b) / 2;
            break;
        }
    }
    check_params(p);
    return p;
}

Configuration::Configuration(int n) : n_(n), grid_(static_cast<std::size_t>(n) * n, VertexType::T1) {
    if (n < 1) throw SizeError("n must be positive");
}

Configuration::Configuration(int n, std::vector<VertexType> grid) : n_(n), grid_(std::move(grid)) {
    if (n < 1 || grid_.size() != static_cast<std::size_t>(n) * n) throw SizeError("grid size does not match n");
}

std::array<int, 7> Configuration::counts() const {
    std::array<int, 7> c{};
    for (VertexType v : grid_) ++c[type_index(v)];
    return c;
}

bool Configuration::operator<(const Configuration& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return grid_ < o.grid_;
}

std::vector<Violation> validate_configuration(const Configuration& cfg) {
    std::vector<Violation> out;
    const int n = cfg.n();
    for (int y = 1; y <= n; ++y) {
        for (int x = 1; x <= n; ++x) {
            EdgeBits e = edge_bits(cfg.at(x, y));
            if (x == 1 && !e.left) out.push_back({x, y, "left boundary arrow must point inward"});
            if (x == n && e.right) out.push_back({x, y, "right boundary arrow must point inward"});
            if (y == 1 && e.below) out.push_back({x, y, "bottom boundary arrow must point outward"});
            if (y == n && !e.up) out.push_back({x, y, "top boundary arrow must point outward"});
            if (x < n && e.right != edge_bits(cfg.at(x + 1, y)).left)
                out.push_back({x, y, "horizontal edge to the right is inconsistent"});
            if (y < n && e.up != edge_bits(cfg.at(x, y + 1)).below)
                out.push_back({x, y, "vertical edge above is inconsistent"});
        }
    }
    return out;
}

bool interlaces(const Row& lower, const Row& upper) {
    if (upper.size() != lower.size() + 1) return false;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (lower[i] < upper[i] || lower[i] > upper[i + 1]) return false;
        if (i > 0 && lower[i] <= lower[i - 1]) return false;
    }
    return true;
}

bool is_monotone_triangle(const MonotoneTriangle& t) {
    if (t.n < 1 || static_cast<int>(t.rows.size()) != t.n) return false;
    for (int k = 1; k <= t.n; ++k) {
        const Row& r = t.rows[k - 1];
        if (static_cast<int>(r.size()) != k) return false;
        for (int i = 0; i < k; ++i) {
            if (r[i] < 1 || r[i] > t.n) return false;
            if (i > 0 && r[i] <= r[i - 1]) return false;
        }
        if (k > 1 && !interlaces(t.rows[k - 2], r)) return false;
    }
    for (int i = 0; i < t.n; ++i)
        if (t.rows[t.n - 1][i] != i + 1) return false;
    return true;
}

MonotoneTriangle triangle_from_configuration(const Configuration& cfg) {
    if (!validate_configuration(cfg).empty()) throw StructureError("invalid DWBC configuration");
    MonotoneTriangle t;
    t.n = cfg.n();
    for (int y = 1; y <= t.n; ++y) {
        Row r;
        for (int x = 1; x <= t.n; ++x)
            if (edge_bits(cfg.at(x, y)).up) r.push_back(x);
        t.rows.push_back(std::move(r));
    }
    if (!is_monotone_triangle(t)) throw StructureError("configuration does not yield a monotone triangle");
    return t;
}

std::optional<std::vector<VertexType>> row_types(int n, const Row& below, const Row& up) {
    std::vector<VertexType> out;
    out.reserve(n);
    int h = 1;
    std::size_t ib = 0, iu = 0;
    for (int x = 1; x <= n; ++x) {
        bool b = ib < below.size() && below[ib] == x;
        bool u = iu < up.size() && up[iu] == x;
        if (b) ++ib;
        if (u) ++iu;
        int nh = h + b - u;
        if (nh < 0 || nh > 1) return std::nullopt;
        auto v = vertex_from_bits(h == 1, b, nh == 1, u);
        if (!v) return std::nullopt;
        out.push_back(*v);
        h = nh;
    }
    if (h != 0 || ib != below.size() || iu != up.size()) return std::nullopt;
    return out;
}

Configuration configuration_from_triangle(const MonotoneTriangle& tri) {
    if (!is_monotone_triangle(tri)) throw StructureError("not a monotone triangle with top row 1..n");
    Configuration cfg(tri.n);
    Row below;
    for (int y = 1; y <= tri.n; ++y) {
        auto types = row_types(tri.n, below, tri.rows[y - 1]);
        if (!types) throw StructureError("row " + std::to_string(y) + " cannot be realized");
        for (int x = 1; x <= tri.n; ++x) cfg.set(x, y, (*types)[x - 1]);
        below = tri.rows[y - 1];
    }
    return cfg;
}

Configuration xor_reflect(const Configuration& cfg) {
    const int n = cfg.n();
    Configuration out(n);
    for (int y = 1; y <= n; ++y) {
        for (int x = 1; x <= n; ++x) {
            EdgeBits e = edge_bits(cfg.at(n + 1 - x, y));
            auto v = vertex_from_bits(!e.right, e.below, !e.left, e.up);
            out.set(x, y, *v);
        }
    }
    return out;
}

double config_weight(const Configuration& cfg, const WeightTriple& w) {
    auto c = cfg.counts();
    return std::pow(w.a, c[1] + c[2]) * std::pow(w.b, c[3] + c[4]) * std::pow(w.c, c[5] + c[6]);
}

std::string to_text(const Configuration& cfg) {
    std::ostringstream os;
    os << cfg.n() << '\n';
    for (int y = cfg.n(); y >= 1; --y) {
        for (int x = 1; x <= cfg.n(); ++x) os << type_index(cfg.at(x, y));
        os << '\n';
    }
    return os.str();
}

Configuration from_text(const std::string& s) {
    std::istringstream is(s);
    int n = 0;
    if (!(is >> n) || n < 1) throw StructureError("missing size line");
    Configuration cfg(n);
    for (int y = n; y >= 1; --y) {
        std::string line;
        if (!(is >> line) || static_cast<int>(line.size()) != n)
            throw StructureError("row " + std::to_string(y) + " has wrong length");
        for (int x = 1; x <= n; ++x) cfg.set(x, y, type_from_index(line[x - 1] - '0'));
    }
    return cfg;
}

std::string triangle_csv(const MonotoneTriangle& t) {
    std::ostringstream os;
    os << "k,i,lambda\n";
    for (int k = 1; k <= static_cast<int>(t.rows.size()); ++k)
        for (int i = 1; i <= k; ++i) os << k << ',' << i << ',' << t.rows[k - 1][i - 1] << '\n';
    return os.str();
}

void for_each_interlacing_below(const Row& upper, const std::function<void(const Row&)>& f) {
    const std::size_t k = upper.size() - 1;
    Row cur(k);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            f(cur);
            return;
        }
        int lo = upper[i];
        if (i > 0) lo = std::max(lo, cur[i - 1] + 1);
        for (int v = lo; v <= upper[i + 1]; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    if (upper.empty()) return;
    rec(0);
}

void for_each_triangle_below(const Row& top, const std::function<void(const std::vector<Row>&)>& f) {
    const std::size_t k = top.size();
    std::vector<Row> rows(k);
    rows[k - 1] = top;
    std::function<void(std::size_t)> rec = [&](std::size_t level) {
        // level = number of entries in the row to fill next
        if (level == 0) {
            f(rows);
            return;
        }
        for_each_interlacing_below(rows[level], [&](const Row& r) {
            rows[level - 1] = r;
            rec(level - 1);
        });
    };
    rec(k - 1);
}

}  // namespace sixv
