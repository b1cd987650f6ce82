#include "sixv/exactpf.hpp"
#include "sixv/limits.hpp"
#include "sixv/loggas.hpp"
#include "sixv/samplers.hpp"
#include "sixv/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace sixv;
using nlohmann::json;

namespace {

struct Opts {
    std::string config;
    std::string weights, phase_params;
    int n = 4, k = 2;
    long draws = 1, sweeps = 0, burn_in = 0, thinning = 1;
    std::uint64_t seed = 1, stream = 0;
    int bits = 256;
    std::string out, format = "csv";
    std::string model = "dwbc-exact";
    std::string xi = "0.5", grid;
    double q = -1, theta = 2, b1 = -1, b2 = -1, a = -1, b = -1, threshold = -1, tol = 0.15;
    std::string cloud;
    std::string theorem;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<double> doubles(const std::string& s) {
    std::vector<double> v;
    for (auto& x : split(s)) v.push_back(std::stod(x));
    return v;
}

std::vector<int> ints(const std::string& s) {
    std::vector<int> v;
    for (auto& x : split(s)) v.push_back(std::stoi(x));
    return v;
}

// "0.5", "-0.3", "0.2+0.3i", "0.2-0.3i", "0.3i"
std::complex<double> parse_complex(const std::string& s) {
    if (s.empty() || s.back() != 'i') return {std::stod(s), 0.0};
    std::string body = s.substr(0, s.size() - 1);
    std::size_t cut = std::string::npos;
    for (std::size_t i = 1; i < body.size(); ++i)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') cut = i;
    if (cut == std::string::npos) return {0.0, body.empty() || body == "+" ? 1.0 : std::stod(body)};
    return {std::stod(body.substr(0, cut)), std::stod(body.substr(cut))};
}

std::vector<std::complex<double>> complexes(const std::string& s) {
    std::vector<std::complex<double>> v;
    for (auto& x : split(s)) v.push_back(parse_complex(x));
    return v;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

WeightTriple weights_of(const Opts& o) {
    if (o.weights.empty()) throw DomainError("--weights a,b,c is required");
    auto w = doubles(o.weights);
    if (w.size() != 3) throw DomainError("--weights takes three numbers");
    return WeightTriple(w[0], w[1], w[2]);
}

PhaseParams params_of(const Opts& o) {
    if (!o.phase_params.empty()) {
        auto f = split(o.phase_params);
        if (f.size() != 3) throw DomainError("--phase-params takes t,gamma,case");
        PhaseParams p;
        p.t = std::stod(f[0]);
        p.gamma = std::stod(f[1]);
        p.phase = phase_from_name(f[2]);
        p.c_sign = p.phase == Phase::Ferro && p.gamma < 0 ? -1 : 1;
        check_params(p);
        return p;
    }
    const WeightTriple w = weights_of(o);
    return params_from_weights(w.a, w.b, w.c);
}

PrecisionCtx prec_of(const Opts& o) {
    PrecisionCtx p;
    p.mantissa_bits = o.bits;
    if (o.bits < 64) throw PrecisionError("--bits must be at least 64", 64);
    return p;
}

void emit(const Opts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path dst(o.out);
    fs::path tmp = dst;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << text;
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, dst);
}

void write_file_atomic(const std::string& path, const std::string& text) {
    Opts tmp;
    tmp.out = path;
    emit(tmp, text);
}

json params_json(const PhaseParams& p) {
    return json{{"phase", phase_name(p.phase)}, {"t", p.t}, {"gamma", p.gamma}, {"scale", p.scale}, {"c_sign", p.c_sign}};
}

std::string config_rows(const Configuration& c) {
    std::string s;
    for (int y = c.n(); y >= 1; --y) {
        for (int x = 1; x <= c.n(); ++x) s += static_cast<char>('0' + type_index(c.at(x, y)));
        if (y > 1) s += '/';
    }
    return s;
}

int cmd_enumerate(const Opts& o) {
    const WeightTriple w = weights_of(o);
    const DwbcEnumeration e = enumerate_dwbc(o.n, w);
    if (o.format == "json") {
        json j = {{"n", o.n}, {"weights", {w.a, w.b, w.c}}, {"count", e.configs.size()}, {"Z", e.Z}};
        j["configurations"] = json::array();
        for (std::size_t i = 0; i < e.configs.size(); ++i)
            j["configurations"].push_back({{"id", i}, {"rows", config_rows(e.configs[i])}, {"weight", e.weights[i]}});
        emit(o, j.dump(2) + "\n");
    } else {
        std::string s = "id,rows_top_first,weight,probability\n";
        for (std::size_t i = 0; i < e.configs.size(); ++i)
            s += std::to_string(i) + ',' + config_rows(e.configs[i]) + ',' + num(e.weights[i]) + ',' +
                 num(e.weights[i] / e.Z) + '\n';
        emit(o, s);
    }
    return 0;
}

void append_triangle(std::string& s, long id, const std::vector<Row>& rows) {
    for (std::size_t k = 1; k <= rows.size(); ++k)
        for (std::size_t i = 1; i <= rows[k - 1].size(); ++i)
            s += std::to_string(id) + ',' + std::to_string(k) + ',' + std::to_string(i) + ',' +
                 std::to_string(rows[k - 1][i - 1]) + '\n';
}

double mallows_q_of(const Opts& o) {
    if (o.q > 0) return o.q;
    if (!o.weights.empty()) {
        const WeightTriple w = weights_of(o);
        return w.b * w.b / (w.a * w.a);
    }
    throw DomainError("--q or --weights is required");
}

int cmd_sample(const Opts& o) {
    Rng rng(o.seed, o.stream);
    std::string s;
    const std::string& m = o.model;
    if (m == "dwbc-exact" || m == "dwbc-mcmc") {
        const WeightTriple w = weights_of(o);
        s = "draw_id,k,i,value\n";
        std::string cloud = "draw_id,x,y\n";
        auto record = [&](long id, const Configuration& c) {
            append_triangle(s, id, triangle_from_configuration(c).rows);
            for (auto [x, y] : c_vertex_cloud(c))
                cloud += std::to_string(id) + ',' + std::to_string(x) + ',' + std::to_string(y) + '\n';
        };
        if (m == "dwbc-exact") {
            ExactDwbcSampler ex(o.n, w);
            for (long d = 0; d < o.draws; ++d) record(d, ex.draw(rng));
        } else {
            ChainConfig ch;
            ch.sweeps = std::max(1L, o.thinning);
            ch.burn_in = o.burn_in > 0 ? o.burn_in : std::max(1000L, 20L * o.n * o.n);
            ch.thinning = std::max(1L, o.thinning);
            if (o.sweeps > 0) ch.thinning = o.sweeps;
            ch.check();
            DwbcChain chain(o.n, w, rng);
            for (long i = 0; i < ch.burn_in; ++i) chain.sweep();
            for (long d = 0; d < o.draws; ++d) {
                for (long i = 0; i < ch.thinning; ++i) chain.sweep();
                record(d, chain.configuration());
            }
        }
        if (!o.cloud.empty()) write_file_atomic(o.cloud, cloud);
    } else if (m == "stochastic") {
        double b1 = o.b1, b2 = o.b2;
        if (b1 < 0 || b2 < 0) std::tie(b1, b2) = stochastic_params(weights_of(o).a, weights_of(o).b, weights_of(o).c);
        s = "draw_id,k,i,value\n";
        for (long d = 0; d < o.draws; ++d)
            append_triangle(s, d, sample_stochastic_6v(o.k, default_stochastic_window(o.k, b2), b1, b2, rng));
    } else if (m == "mallows" || m == "qshuffle") {
        const double q = mallows_q_of(o);
        s = "draw_id,position,value\n";
        for (long d = 0; d < o.draws; ++d) {
            auto tau = m == "mallows" ? sample_mallows_finite(o.n, q, rng) : sample_qshuffle_prefix(o.k, q, rng);
            for (std::size_t i = 0; i < tau.size(); ++i)
                s += std::to_string(d) + ',' + std::to_string(i + 1) + ',' + std::to_string(tau[i]) + '\n';
        }
    } else if (m == "gue") {
        s = "draw_id,k,i,value\n";
        for (long d = 0; d < o.draws; ++d) {
            auto g = sample_gue_corners(o.n, rng);
            for (std::size_t k = 1; k <= g.size(); ++k)
                for (std::size_t i = 1; i <= k; ++i)
                    s += std::to_string(d) + ',' + std::to_string(k) + ',' + std::to_string(i) + ',' +
                         num(g[k - 1][i - 1]) + '\n';
        }
    } else if (m == "eta") {
        s = "draw_id,value\n";
        for (long d = 0; d < o.draws; ++d) s += std::to_string(d) + ',' + num(sample_eta(o.theta, rng)) + '\n';
    } else {
        throw DomainError("unknown model: " + m);
    }
    emit(o, s);
    return 0;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int cmd_constants(const Opts& o) {
    const WeightTriple w = weights_of(o);
    json j;
    j["schema_version"] = "1";
    j["weights"] = {{"a", w.a}, {"b", w.b}, {"c", w.c}};
    j["delta"] = delta(w.a, w.b, w.c);
    const LimitConstants lc = limit_constants(w.a, w.b, w.c);
    if (w.c > 0) {
        const PhaseParams p = params_from_weights(w.a, w.b, w.c);
        j["phase"] = phase_name(p.phase);
        j["phase_params"] = params_json(p);
    } else {
        j["phase"] = nullptr;
        j["phase_params"] = nullptr;
    }
    j["constants"] = {{"m", opt_json(lc.m_const)},   {"s", opt_json(lc.s_const)},
                      {"b1", opt_json(lc.b1)},       {"b2", opt_json(lc.b2)},
                      {"mallows_q", opt_json(lc.mallows_q)}, {"sigma", opt_json(lc.sigma)}};
    emit(o, j.dump(2) + "\n");
    return 0;
}

std::vector<int> grid_or(const Opts& o, std::vector<int> dflt) { return o.grid.empty() ? dflt : ints(o.grid); }

int cmd_verify(const Opts& o) {
    const std::string& th = o.theorem;
    const PrecisionCtx prec = prec_of(o);
    VerifyReport r;
    if (th == "T2.4" || th == "T2.5" || th == "T2.6" || th == "T2.7") {
        r = verify_expansions(expansion_phase(th), params_of(o), complexes(o.xi), grid_or(o, {8, 16, 32, 64}), 2.0, 1.1,
                              prec);
    } else if (th == "T1.3" || th == "gauss") {
        r = verify_gaussian_limit(weights_of(o), grid_or(o, {8, 16, 32, 48}), prec);
    } else if (th == "T1.4" || th == "geom") {
        r = verify_geometric_limit(weights_of(o), grid_or(o, {8, 16, 32, 48}), o.threshold, prec);
    } else if (th == "T1.7" || th == "mallows") {
        double a = o.a, b = o.b;
        if (a < 0 || b < 0) {
            const WeightTriple w = weights_of(o);
            a = w.a;
            b = w.b;
        }
        MallowsOptions mo;
        mo.k = o.k;
        mo.n_grid = grid_or(o, {8, 32, 128});
        mo.draws = o.draws > 1 ? o.draws : 100000;
        mo.theta = o.theta;
        Rng rng(o.seed, o.stream);
        r = verify_mallows(a, b, mo, rng);
    } else if (th == "corners") {
        ChainConfig ch;
        ch.burn_in = o.burn_in > 0 ? o.burn_in : std::max(1000L, 20L * o.n * o.n);
        ch.thinning = std::max(1L, o.sweeps > 0 ? o.sweeps : o.thinning);
        ch.sweeps = ch.thinning;
        Rng rng(o.seed, o.stream);
        r = verify_corners_joint(weights_of(o), o.n, o.draws > 1 ? o.draws : 2000, ch, rng, o.tol);
    } else {
        throw DomainError("unknown theorem id: " + th);
    }
    emit(o, r.to_json().dump(2) + "\n");
    return r.pass ? 0 : 1;
}

int cmd_ztilde(const Opts& o) {
    const PhaseParams p = params_of(o);
    const PrecisionCtx prec = prec_of(o);
    const auto xs = complexes(o.xi);
    std::vector<int> ns = o.grid.empty() ? std::vector<int>{o.n} : ints(o.grid);
    std::string s = "n,xi_re,xi_im,ztilde_re,ztilde_im\n";
    json rows = json::array();
    for (int n : ns)
        for (auto x : xs) {
            auto z = ztilde_k1(n, x, p, prec);
            s += std::to_string(n) + ',' + num(x.real()) + ',' + num(x.imag()) + ',' + num(z.real()) + ',' +
                 num(z.imag()) + '\n';
            rows.push_back({{"n", n}, {"xi", {x.real(), x.imag()}}, {"ztilde", {z.real(), z.imag()}}});
        }
    emit(o, o.format == "json" ? rows.dump(2) + "\n" : s);
    return 0;
}

int cmd_lambda11(const Opts& o) {
    const PhaseParams p = params_of(o);
    const auto P = lambda11_distribution(o.n, p, prec_of(o));
    std::string s = "n,ell,prob\n";
    for (std::size_t l = 0; l < P.size(); ++l) s += std::to_string(o.n) + ',' + std::to_string(l + 1) + ',' + num(P[l]) + '\n';
    emit(o, o.format == "json" ? json{{"n", o.n}, {"prob", P}}.dump(2) + "\n" : s);
    return 0;
}

int cmd_basis(const Opts& o) {
    const PhaseParams p = params_of(o);
    const PrecisionCtx prec = prec_of(o);
    PrecisionGuard guard(prec.mantissa_bits);
    const auto mom = measure_moments(measure_spec(p), 2 * o.k + 2, prec);
    const OrthoBasis B = orthobasis_from_moments(mom, prec.mantissa_bits);
    std::string s = "k,a_k,b_k,h_k\n";
    json rows = json::array();
    for (int k = 0; k <= std::min(o.k, B.max_degree()); ++k) {
        const std::string a = B.alpha.at(k).str(20), b = B.beta.at(k).str(20), h = B.h.at(k).str(20);
        s += std::to_string(k) + ',' + a + ',' + b + ',' + h + '\n';
        rows.push_back({{"k", k}, {"a_k", a}, {"b_k", b}, {"h_k", h}});
    }
    emit(o, o.format == "json" ? rows.dump(2) + "\n" : s);
    return 0;
}

// Options present in the JSON config file and absent from the command line
// are taken from the file.
void merge_config(CLI::App& sub, const json& cfg) {
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        CLI::Option* opt = nullptr;
        try {
            opt = sub.get_option("--" + it.key());
        } catch (const CLI::OptionNotFound&) {
            throw CLI::ValidationError("config", "unknown key: " + it.key());
        }
        if (opt->count() > 0) continue;
        std::string v;
        if (it->is_string()) v = it->get<std::string>();
        else if (it->is_array()) {
            for (auto& e : *it) v += (v.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
        } else v = it->dump();
        opt->add_result(v);
        opt->run_callback();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"six-vertex DWBC laboratory"};
    app.require_subcommand(1);
    Opts o;

    auto common = [&](CLI::App* s) {
        s->add_option("--config", o.config, "JSON file with option values; flags override it");
        s->add_option("--weights", o.weights, "a,b,c");
        s->add_option("--phase-params", o.phase_params, "t,gamma,case");
        s->add_option("--n", o.n);
        s->add_option("--k", o.k);
        s->add_option("--draws", o.draws);
        s->add_option("--sweeps", o.sweeps, "sweeps between recorded MCMC draws");
        s->add_option("--burn-in", o.burn_in);
        s->add_option("--seed", o.seed);
        s->add_option("--stream", o.stream);
        s->add_option("--bits", o.bits);
        s->add_option("--out", o.out);
        s->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    };

    auto* en = app.add_subcommand("enumerate", "all DWBC configurations with weights");
    common(en);
    auto* sa = app.add_subcommand("sample", "draw from one of the samplers");
    common(sa);
    sa->add_option("--model", o.model)
        ->check(CLI::IsMember({"dwbc-exact", "dwbc-mcmc", "stochastic", "mallows", "qshuffle", "gue", "eta"}));
    sa->add_option("--q", o.q);
    sa->add_option("--theta", o.theta);
    sa->add_option("--b1", o.b1);
    sa->add_option("--b2", o.b2);
    sa->add_option("--cloud", o.cloud, "c-vertex positions for dwbc models");
    auto* co = app.add_subcommand("constants", "phase, parameters and limit constants");
    common(co);
    auto* ve = app.add_subcommand("verify", "run a verification driver");
    common(ve);
    ve->add_option("theorem", o.theorem, "T2.4..T2.7, T1.3|gauss, T1.4|geom, T1.7|mallows, corners")->required();
    ve->add_option("--xi", o.xi, "comma separated, complex as 0.2+0.3i");
    ve->add_option("--grid", o.grid);
    ve->add_option("--a", o.a);
    ve->add_option("--b", o.b);
    ve->add_option("--theta", o.theta);
    ve->add_option("--threshold", o.threshold, "final TV bound for geom");
    ve->add_option("--tol", o.tol, "moment tolerance for corners");
    auto* zt = app.add_subcommand("ztilde", "normalized partition function, one inhomogeneity");
    common(zt);
    zt->add_option("--xi", o.xi);
    zt->add_option("--grid", o.grid, "list of n");
    auto* la = app.add_subcommand("lambda11", "exact law of the bottom turning point");
    common(la);
    auto* ba = app.add_subcommand("basis", "recurrence coefficients and norms");
    common(ba);

    try {
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        if (!o.config.empty()) {
            std::ifstream f(o.config);
            if (!f) throw CLI::ValidationError("--config", "cannot read " + o.config);
            merge_config(*sub, json::parse(f));
        }
        if (sub == en) return cmd_enumerate(o);
        if (sub == sa) return cmd_sample(o);
        if (sub == co) return cmd_constants(o);
        if (sub == ve) return cmd_verify(o);
        if (sub == zt) return cmd_ztilde(o);
        if (sub == la) return cmd_lambda11(o);
        if (sub == ba) return cmd_basis(o);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
