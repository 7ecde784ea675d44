#ifndef SPECDECAY_CPLX_HPP
#define SPECDECAY_CPLX_HPP

#include "specdecay/real.hpp"

namespace specdecay {

// Complex number over Real. Principal branches for sqrt/log/pow.
struct Cplx {
    Real re, im;

    explicit Cplx(mpfr_prec_t prec) : re(prec), im(prec) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cplx(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

    mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    void set_zero() { re.set_zero(); im.set_zero(); }

    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
    Cplx& operator*=(const Real& s) { re *= s; im *= s; return *this; }
    Cplx& operator*=(double s) { re *= s; im *= s; return *this; }

    // this += a*b, using one scratch Real owned by the caller.
    void add_prod(const Cplx& a, const Cplx& b, Real& t) {
        re.add_prod(a.re, b.re);
        re.sub_prod(a.im, b.im);
        t = a.re * b.im;
        t.add_prod(a.im, b.re);
        im += t;
    }

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        Real r = a.re * b.re;
        r.sub_prod(a.im, b.im);
        Real i = a.re * b.im;
        i.add_prod(a.im, b.re);
        return {std::move(r), std::move(i)};
    }
    friend Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
    friend Cplx operator*(const Cplx& a, const Real& s) { return s * a; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re;
        d.add_prod(b.im, b.im);
        Real r = a.re * b.re;
        r.add_prod(a.im, b.im);
        Real i = a.im * b.re;
        i.sub_prod(a.re, b.im);
        return {r / d, i / d};
    }
    friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }

    friend Cplx conj(const Cplx& a) { return {a.re, -a.im}; }
    friend Real norm_sq(const Cplx& a) {
        Real n = a.re * a.re;
        n.add_prod(a.im, a.im);
        return n;
    }
    friend Real abs(const Cplx& a) { return hypot(a.re, a.im); }
    friend Real arg(const Cplx& a) { return atan2(a.im, a.re); }

    friend Cplx sqrt(const Cplx& a) {  // principal branch
        if (a.is_zero()) return Cplx(a.prec());
        Real m = abs(a);
        Real u = sqrt((m + a.re) / 2L);
        if (u.is_zero()) {  // negative real axis
            Real v = sqrt(m);
            return {Real(a.prec()), a.im.sign() < 0 ? -v : v};
        }
        Real v = a.im / (2L * u);
        if (a.re.sign() >= 0) return {std::move(u), std::move(v)};
        // For Re a < 0 the stable form goes through the imaginary part.
        Real w = sqrt((m - a.re) / 2L);
        Real u2 = abs(a.im) / (2L * w);
        return {std::move(u2), a.im.sign() < 0 ? -w : w};
    }
    friend Cplx log(const Cplx& a) { return {log(abs(a)), arg(a)}; }
    friend Cplx exp(const Cplx& a) {
        Real s(a.prec()), c(a.prec());
        sin_cos(s, c, a.im);
        Real m = exp(a.re);
        return {m * c, m * s};
    }
    friend Cplx pow(const Cplx& a, const Real& p) { return exp(p * log(a)); }
    friend Cplx operator*(const Cplx& a, double x) { return {a.re * x, a.im * x}; }
    friend Cplx operator*(double x, const Cplx& a) { return a * x; }

    double to_double_re() const { return re.to_double(); }
    double to_double_im() const { return im.to_double(); }
};

inline Cplx cplx_from(double r, double i, mpfr_prec_t prec) { return Cplx(r, i, prec); }

// e^(i*2*pi*k/m), shared by quadrature and window geometry.
inline Cplx unit_root(long k, long m, mpfr_prec_t prec) {
    Real ang = Real::pi(prec) * (2L * k);
    ang /= m;
    Real s(prec), c(prec);
    sin_cos(s, c, ang);
    return {std::move(c), std::move(s)};
}

}  // namespace specdecay

#endif
