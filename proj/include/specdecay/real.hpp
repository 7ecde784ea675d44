#ifndef SPECDECAY_REAL_HPP
#define SPECDECAY_REAL_HPP

#include <stdint.h>
#define MPFR_USE_INTMAX_T 1
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace specdecay {

// Arbitrary-precision real backed by MPFR, round-to-nearest throughout.
// Every value carries its own precision; binary operations produce results
// at the larger of the two operand precisions, so precision flows from the
// inputs and never depends on global or thread-local state.
class Real {
  public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(const std::string& s, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("Real: unparseable literal '" + s + "'");
    }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Exponent such that |x| in [2^(e-1), 2^e); 0 for zero.
    long exp2() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real& operator*=(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); return *this; }

    // In-place fused ops for hot loops (no temporaries).
    void add_prod(const Real& a, const Real& b) { mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN); }
    void sub_prod(const Real& a, const Real& b) { mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN); mpfr_neg(v_, v_, MPFR_RNDN); }
    void neg_inplace() { mpfr_neg(v_, v_, MPFR_RNDN); }
    void set_zero() { mpfr_set_zero(v_, 1); }
    void mul_2si(long k) { mpfr_mul_2si(v_, v_, k, MPFR_RNDN); }

    friend Real operator+(const Real& a, const Real& b) { Real r(res_prec(a, b)); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r(res_prec(a, b)); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r(res_prec(a, b)); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r(res_prec(a, b)); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a) { Real r(a.prec()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }

    friend Real operator+(const Real& a, double x) { Real r(a.prec()); mpfr_add_d(r.v_, a.v_, x, MPFR_RNDN); return r; }
    friend Real operator+(double x, const Real& a) { return a + x; }
    friend Real operator-(const Real& a, double x) { Real r(a.prec()); mpfr_sub_d(r.v_, a.v_, x, MPFR_RNDN); return r; }
    friend Real operator-(double x, const Real& a) { Real r(a.prec()); mpfr_d_sub(r.v_, x, a.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, double x) { Real r(a.prec()); mpfr_mul_d(r.v_, a.v_, x, MPFR_RNDN); return r; }
    friend Real operator*(double x, const Real& a) { return a * x; }
    friend Real operator/(const Real& a, double x) { Real r(a.prec()); mpfr_div_d(r.v_, a.v_, x, MPFR_RNDN); return r; }
    friend Real operator/(double x, const Real& a) { Real r(a.prec()); mpfr_d_div(r.v_, x, a.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, long k) { Real r(a.prec()); mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN); return r; }
    friend Real operator*(long k, const Real& a) { return a * k; }
    friend Real operator/(const Real& a, long k) { Real r(a.prec()); mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN); return r; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, double x) { return mpfr_cmp_d(a.v_, x) < 0; }
    friend bool operator>(const Real& a, double x) { return mpfr_cmp_d(a.v_, x) > 0; }
    friend bool operator<=(const Real& a, double x) { return mpfr_cmp_d(a.v_, x) <= 0; }
    friend bool operator>=(const Real& a, double x) { return mpfr_cmp_d(a.v_, x) >= 0; }

    friend Real abs(const Real& a) { Real r(a.prec()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real log(const Real& a) { Real r(a.prec()); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real log1p(const Real& a) { Real r(a.prec()); mpfr_log1p(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real expm1(const Real& a) { Real r(a.prec()); mpfr_expm1(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sin(const Real& a) { Real r(a.prec()); mpfr_sin(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real cos(const Real& a) { Real r(a.prec()); mpfr_cos(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real tan(const Real& a) { Real r(a.prec()); mpfr_tan(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real atan(const Real& a) { Real r(a.prec()); mpfr_atan(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real atan2(const Real& y, const Real& x) { Real r(res_prec(y, x)); mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN); return r; }
    friend Real hypot(const Real& a, const Real& b) { Real r(res_prec(a, b)); mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real pow(const Real& a, const Real& b) { Real r(res_prec(a, b)); mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real pow(const Real& a, long k) { Real r(a.prec()); mpfr_pow_si(r.v_, a.v_, k, MPFR_RNDN); return r; }
    friend Real lgamma_pos(const Real& a) {  // log Gamma, argument must be > 0
        Real r(a.prec()); mpfr_lngamma(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend Real floor(const Real& a) { Real r(a.prec()); mpfr_floor(r.v_, a.v_); return r; }
    friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
    friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
    friend void sin_cos(Real& s, Real& c, const Real& a) { mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN); }

    static Real pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static Real two_pow(long e, mpfr_prec_t prec) { Real r(prec); mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN); return r; }

    // Scientific-notation decimal string with the given significant digits.
    std::string str(int digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

  private:
    static mpfr_prec_t res_prec(const Real& a, const Real& b) {
        mpfr_prec_t pa = mpfr_get_prec(a.v_), pb = mpfr_get_prec(b.v_);
        return pa > pb ? pa : pb;
    }
    mpfr_t v_;
};

}  // namespace specdecay

#endif
