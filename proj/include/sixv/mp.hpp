#pragma once

// Extended precision scalar plumbing.  Real is a dynamic-precision MPFR
// number; every computation that creates Reals should run under a
// PrecisionGuard so all temporaries share one working precision.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <vector>

namespace sixv {

using Real = boost::multiprecision::mpfr_float;

struct PrecisionCtx {
    int mantissa_bits = 256;
    double target_rel_err = 1e-20;
    int max_bits = 8192;
};

inline unsigned bits_to_digits10(int bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

class PrecisionGuard {
public:
    explicit PrecisionGuard(int bits) : saved_(Real::default_precision()) {
        Real::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

// Minimal complex type over Real.  std::complex is unspecified for
// non-builtin types and breaks with expression templates.
struct CReal {
    Real re, im;
    CReal() : re(0), im(0) {}
    CReal(const Real& r) : re(r), im(0) {}  // NOLINT implicit on purpose
    CReal(const Real& r, const Real& i) : re(r), im(i) {}
    CReal(double r) : re(r), im(0) {}  // NOLINT
    CReal(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

    CReal& operator+=(const CReal& o) { re += o.re; im += o.im; return *this; }
    CReal& operator-=(const CReal& o) { re -= o.re; im -= o.im; return *this; }
    CReal& operator*=(const CReal& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    CReal& operator/=(const CReal& o) {
        Real d = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = r;
        return *this;
    }
    CReal operator-() const { return CReal(Real(-re), Real(-im)); }
};

inline CReal operator+(CReal a, const CReal& b) { return a += b; }
inline CReal operator-(CReal a, const CReal& b) { return a -= b; }
inline CReal operator*(CReal a, const CReal& b) { return a *= b; }
inline CReal operator/(CReal a, const CReal& b) { return a /= b; }

inline Real abs(const CReal& z) { return boost::multiprecision::sqrt(Real(z.re * z.re + z.im * z.im)); }
inline CReal conj(const CReal& z) { return CReal(z.re, Real(-z.im)); }

inline CReal exp(const CReal& z) {
    Real m = boost::multiprecision::exp(z.re);
    return CReal(Real(m * boost::multiprecision::cos(z.im)), Real(m * boost::multiprecision::sin(z.im)));
}
inline CReal sin(const CReal& z) {
    using namespace boost::multiprecision;
    return CReal(Real(sin(z.re) * cosh(z.im)), Real(cos(z.re) * sinh(z.im)));
}
inline CReal cos(const CReal& z) {
    using namespace boost::multiprecision;
    return CReal(Real(cos(z.re) * cosh(z.im)), Real(-sin(z.re) * sinh(z.im)));
}
inline CReal sinh(const CReal& z) {
    using namespace boost::multiprecision;
    return CReal(Real(sinh(z.re) * cos(z.im)), Real(cosh(z.re) * sin(z.im)));
}
inline CReal cosh(const CReal& z) {
    using namespace boost::multiprecision;
    return CReal(Real(cosh(z.re) * cos(z.im)), Real(sinh(z.re) * sin(z.im)));
}

inline std::complex<double> to_cd(const CReal& z) {
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}
inline double to_d(const Real& x) { return x.convert_to<double>(); }

// Scalar helpers so templated code can treat Real and CReal alike.
inline Real sc_abs(const Real& x) { return boost::multiprecision::abs(x); }
inline Real sc_abs(const CReal& x) { return abs(x); }
inline bool sc_is_zero(const Real& x) { return x == 0; }
inline bool sc_is_zero(const CReal& x) { return x.re == 0 && x.im == 0; }

template <class S>
S ipow(S x, long k) {
    S r(Real(1));
    if (k < 0) {
        x = S(Real(1)) / x;
        k = -k;
    }
    while (k) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}

// Gaussian elimination with partial pivoting; destroys m.
template <class S>
S determinant(std::vector<std::vector<S>> m) {
    const std::size_t n = m.size();
    S det(Real(1));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        Real best = sc_abs(m[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            Real v = sc_abs(m[r][c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0) return S(Real(0));
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            S f = m[r][c] / m[c][c];
            if (sc_is_zero(f)) continue;
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace sixv
