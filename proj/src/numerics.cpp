#include "specdecay/numerics.hpp"

#include "specdecay/rng.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specdecay {

Cplx dot_conj(const Cplx* x, const Cplx* y, std::size_t n) {
    if (n == 0) throw std::invalid_argument("dot_conj: empty");
    mpfr_prec_t prec = x[0].prec() > y[0].prec() ? x[0].prec() : y[0].prec();
    // re = sum xr*yr + xi*yi ; im = accP - accM with accP = sum xr*yi, accM = sum xi*yr.
    Real re(prec), accp(prec), accm(prec);
    for (std::size_t i = 0; i < n; ++i) {
        re.add_prod(x[i].re, y[i].re);
        re.add_prod(x[i].im, y[i].im);
        accp.add_prod(x[i].re, y[i].im);
        accm.add_prod(x[i].im, y[i].re);
    }
    accp -= accm;
    return {std::move(re), std::move(accp)};
}

std::vector<Cplx> mat_vec(const ComplexMatrix& m, const std::vector<Cplx>& x) {
    if (x.size() != m.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<Cplx> y;
    y.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) y.emplace_back(m.prec());
    Real t(m.prec());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Cplx* cj = m.col(j);
        for (std::size_t i = 0; i < m.rows(); ++i) y[i].add_prod(cj[i], x[j], t);
    }
    return y;
}

namespace {

Real col_norm_sq(const Cplx* c, std::size_t lo, std::size_t n, mpfr_prec_t prec) {
    Real s(prec);
    for (std::size_t i = lo; i < n; ++i) {
        s.add_prod(c[i].re, c[i].re);
        s.add_prod(c[i].im, c[i].im);
    }
    return s;
}

// x' = c*x - s*conj(phase)*y ,  y' = s*phase*x + c*y   (phase = g_pq/|g_pq|)
void rotate_cols(Cplx* x, Cplx* y, std::size_t lo, std::size_t n, const Real& c, const Real& s,
                 const Cplx& phase) {
    mpfr_prec_t prec = c.prec();
    Cplx sp = phase * s;
    Cplx spc = conj(sp);
    Real xr(prec), xi(prec);
    for (std::size_t i = lo; i < n; ++i) {
        xr = x[i].re;
        xi = x[i].im;
        x[i].re *= c;
        x[i].re.sub_prod(spc.re, y[i].re);
        x[i].re.add_prod(spc.im, y[i].im);
        x[i].im *= c;
        x[i].im.sub_prod(spc.re, y[i].im);
        x[i].im.sub_prod(spc.im, y[i].re);
        y[i].re *= c;
        y[i].re.add_prod(sp.re, xr);
        y[i].re.sub_prod(sp.im, xi);
        y[i].im *= c;
        y[i].im.add_prod(sp.re, xi);
        y[i].im.add_prod(sp.im, xr);
    }
}

struct RotationJob {
    std::size_t p, q;
};

// Round-robin tournament: n-1 rounds whose pairs are disjoint, so rotations
// within a round commute and the parallel execution is bit-deterministic.
std::vector<std::vector<RotationJob>> round_robin(std::size_t n_cols) {
    std::size_t n = n_cols + (n_cols % 2);
    std::vector<std::size_t> ring(n);
    for (std::size_t i = 0; i < n; ++i) ring[i] = i;
    std::vector<std::vector<RotationJob>> rounds;
    for (std::size_t r = 0; r + 1 < n; ++r) {
        std::vector<RotationJob> jobs;
        for (std::size_t i = 0; i < n / 2; ++i) {
            std::size_t a = ring[i], b = ring[n - 1 - i];
            if (a >= n_cols || b >= n_cols) continue;
            jobs.push_back({std::min(a, b), std::max(a, b)});
        }
        rounds.push_back(std::move(jobs));
        std::size_t last = ring[n - 1];
        for (std::size_t i = n - 1; i > 1; --i) ring[i] = ring[i - 1];
        ring[1] = last;
    }
    return rounds;
}

struct SweepState {
    ComplexMatrix* b;
    ComplexMatrix* v;
    bool want_vectors;
    std::size_t rows, cols;
    mpfr_prec_t work;
    std::vector<Real>* nsq;
    std::vector<std::size_t>* start;  // first possibly-nonzero row per column
    Real cos_tol = bound(0.0);
};

// Returns the (rounded-up) cosine of the pair, rotating if above threshold.
Real process_pair(SweepState& st, std::size_t p, std::size_t q, bool& rotated) {
    auto& nsq = *st.nsq;
    auto& start = *st.start;
    if (nsq[p].is_zero() || nsq[q].is_zero()) return bound(0.0);
    std::size_t lo_dot = std::max(start[p], start[q]);
    Cplx gpq = lo_dot < st.rows ? dot_conj(st.b->col(p) + lo_dot, st.b->col(q) + lo_dot, st.rows - lo_dot)
                                : Cplx(st.work);
    Real rho = abs(gpq);
    Real cosine = bound(0.0);
    {
        Real c_full = rho / sqrt(nsq[p] * nsq[q]);
        mpfr_set(cosine.raw(), c_full.raw(), MPFR_RNDU);
    }
    if (cosine <= st.cos_tol) return cosine;
    rotated = true;
    Real tau = (nsq[q] - nsq[p]) / (2L * rho);
    Real t = Real(1L, st.work) / (abs(tau) + sqrt(Real(1L, st.work) + tau * tau));
    if (tau.sign() < 0) t.neg_inplace();
    Real c = Real(1L, st.work) / sqrt(Real(1L, st.work) + t * t);
    Real s = t * c;
    Cplx phase = gpq / rho;
    std::size_t lo = std::min(start[p], start[q]);
    rotate_cols(st.b->col(p), st.b->col(q), lo, st.rows, c, s, phase);
    if (st.want_vectors) rotate_cols(st.v->col(p), st.v->col(q), 0, st.cols, c, s, phase);
    start[p] = start[q] = lo;
    nsq[p].sub_prod(t, rho);
    nsq[q].add_prod(t, rho);
    return cosine;
}

}  // namespace

SvdResult svd_jacobi(const ComplexMatrix& m_in, const PrecisionContext& ctx, const SvdOptions& opts) {
    if (!m_in.all_finite()) throw std::invalid_argument("svd_jacobi: non-finite entries");
    const std::size_t rows = m_in.rows(), cols = m_in.cols();
    const mpfr_prec_t work = ctx.prec() + 64;  // guard bits over the context
    ComplexMatrix b = m_in.at_precision(work);
    ComplexMatrix v = ComplexMatrix::identity(cols, opts.want_vectors ? work : 2);

    bool parallel = opts.mode == ExecMode::Parallel;
#ifdef _OPENMP
    if (opts.mode == ExecMode::Auto) parallel = omp_get_max_threads() > 1 && cols >= 8;
#else
    if (opts.mode == ExecMode::Auto) parallel = false;
#endif

    SweepState st;
    st.b = &b;
    st.v = &v;
    st.want_vectors = opts.want_vectors;
    st.rows = rows;
    st.cols = cols;
    st.work = work;
    st.cos_tol = Real::two_pow(8 - static_cast<long>(ctx.bits) + opts.extra_threshold_log2, kBoundPrec);

    std::vector<Real> nsq;
    nsq.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) nsq.emplace_back(work);
    std::vector<std::size_t> start(cols, 0);
    for (std::size_t j = 0; j < cols; ++j) {
        std::size_t s0 = 0;
        while (s0 < rows && m_in.at(s0, j).is_zero()) ++s0;
        start[j] = s0;
    }
    st.nsq = &nsq;
    st.start = &start;

    std::vector<std::vector<RotationJob>> rounds;
    if (parallel) rounds = round_robin(cols);

    Real worst = bound(0.0);
    int sweep = 0;
    for (; sweep < opts.max_sweeps; ++sweep) {
        for (std::size_t j = 0; j < cols; ++j) nsq[j] = col_norm_sq(b.col(j), start[j], rows, work);
        worst = bound(0.0);
        bool rotated = false;
        if (!parallel) {
            // row-cyclic reference sweep
            for (std::size_t p = 0; p + 1 < cols; ++p)
                for (std::size_t q = p + 1; q < cols; ++q) worst = max(worst, process_pair(st, p, q, rotated));
        } else {
            for (const auto& round : rounds) {
                const long njobs = static_cast<long>(round.size());
                std::vector<Real> rc(round.size(), bound(0.0));
                std::vector<char> rr(round.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
                for (long k = 0; k < njobs; ++k) {
                    bool rot = false;
                    rc[k] = process_pair(st, round[k].p, round[k].q, rot);
                    rr[k] = rot ? 1 : 0;
                }
                for (long k = 0; k < njobs; ++k) {
                    worst = max(worst, rc[k]);
                    if (rr[k]) rotated = true;
                }
            }
        }
        if (!rotated || worst <= st.cos_tol) { ++sweep; break; }
    }
    if (worst > st.cos_tol)
        throw SvdNonConvergence(worst.is_zero() ? -100000.0 : static_cast<double>(worst.exp2()));

    struct Entry { Real s; std::size_t j; };
    std::vector<Entry> entries;
    entries.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) entries.push_back({sqrt(col_norm_sq(b.col(j), 0, rows, work)), j});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b2) { return b2.s < a.s; });

    SvdResult res;
    res.sweeps_used = sweep;
    res.residual = worst;
    res.spectrum.source_dim = std::min(rows, cols);
    res.spectrum.source_bits = ctx.bits;
    // Orthogonality residual (n-1)*cos_tol plus accumulated rounding from
    // O(sweeps * n) rotations at the working precision, all relative.
    Real rel = bound(static_cast<double>(cols)) * st.cos_tol +
               bound(64.0 * sweep * static_cast<double>(cols)) *
                   Real::two_pow(-static_cast<long>(work), kBoundPrec);
    std::size_t count = std::min(rows, cols);
    for (std::size_t k = 0; k < count; ++k) {
        Real sv(ctx.prec());
        mpfr_set(sv.raw(), entries[k].s.raw(), MPFR_RNDN);
        Real eb = bound(0.0);
        mpfr_mul(eb.raw(), rel.raw(), entries[k].s.raw(), MPFR_RNDU);
        res.spectrum.values.push_back(std::move(sv));
        res.spectrum.error_bounds.push_back(std::move(eb));
    }
    if (opts.want_vectors) {
        for (std::size_t k = 0; k < count; ++k) {
            std::size_t j = entries[k].j;
            std::vector<Cplx> uc, vc;
            uc.reserve(rows);
            vc.reserve(cols);
            bool null_col = entries[k].s.is_zero();
            for (std::size_t i = 0; i < rows; ++i)
                uc.push_back(null_col ? Cplx(ctx.prec()) : b.at(i, j) / entries[k].s);
            for (std::size_t i = 0; i < cols; ++i) vc.push_back(v.at(i, j));
            res.left.push_back(std::move(uc));
            res.right.push_back(std::move(vc));
        }
    }
    return res;
}

SingularSpectrum svd_singular_values(const ComplexMatrix& m, const PrecisionContext& ctx,
                                     const SvdOptions& opts) {
    return svd_jacobi(m, ctx, opts).spectrum;
}

std::uint64_t binomial_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

// All increasing k-tuples from {0..d-1} in lexicographic order.
std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t d, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        bool done = true;
        while (i-- > 0) {
            if (cur[i] + (k - i) < d) {
                ++cur[i];
                for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) return out;
    }
}

}  // namespace

Cplx det_dense(ComplexMatrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det_dense: square required");
    const std::size_t n = a.rows();
    const mpfr_prec_t prec = a.prec();
    Cplx det(1.0, 0.0, prec);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        Real best = norm_sq(a.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real cand = norm_sq(a.at(i, k));
            if (cand > best) { best = cand; piv = i; }
        }
        if (best.is_zero()) return Cplx(prec);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            det = -det;
        }
        det = det * a.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            Cplx f = a.at(i, k) / a.at(k, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                Cplx prod = f * a.at(k, j);
                a.at(i, j) -= prod;
            }
        }
    }
    return det;
}

ComplexMatrix compound_matrix(const ComplexMatrix& m, std::size_t n) {
    if (m.rows() != m.cols()) throw std::invalid_argument("compound_matrix: square required");
    const std::size_t d = m.rows();
    if (n < 1 || n > d) throw std::invalid_argument("compound_matrix: need 1 <= n <= d");
    if (n > 4 || d > 24)
        throw std::invalid_argument("compound_matrix: rejected (n <= 4 and d <= 24 supported)");
    auto tuples = increasing_tuples(d, n);
    const std::size_t dim = tuples.size();
    ComplexMatrix out(dim, dim, m.prec());
    const long total = static_cast<long>(dim * dim);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (total > 256)
#endif
    for (long idx = 0; idx < total; ++idx) {
        std::size_t a = static_cast<std::size_t>(idx) / dim;
        std::size_t bcol = static_cast<std::size_t>(idx) % dim;
        ComplexMatrix minor(n, n, m.prec());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) minor.at(i, j) = m.at(tuples[a][i], tuples[bcol][j]);
        out.at(a, bcol) = det_dense(std::move(minor));
    }
    return out;
}

std::vector<std::vector<Cplx>> random_orthonormal_system(std::size_t dim, std::size_t n,
                                                         const PrecisionContext& ctx,
                                                         std::uint64_t stream) {
    if (n > dim) throw std::invalid_argument("random_orthonormal_system: n > dim");
    if (n == 0) throw std::invalid_argument("random_orthonormal_system: n == 0");
    CounterRng rng(ctx.seed, stream);
    const mpfr_prec_t prec = ctx.prec();
    std::vector<std::vector<Cplx>> sys;
    sys.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Cplx> v;
        v.reserve(dim);
        for (std::size_t i = 0; i < dim; ++i) v.push_back(rng.gaussian_cplx(prec));
        // modified Gram-Schmidt, twice
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < k; ++j) {
                Cplx proj = dot_conj(sys[j].data(), v.data(), dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    Cplx sub = proj * sys[j][i];
                    v[i] -= sub;
                }
            }
        Real nrm = sqrt(col_norm_sq(v.data(), 0, dim, prec));
        if (nrm.is_zero()) throw std::runtime_error("random_orthonormal_system: degenerate draw");
        for (auto& z : v) { z.re /= nrm; z.im /= nrm; }
        sys.push_back(std::move(v));
    }
    return sys;
}

Cplx det_gram(const ComplexMatrix& m, const std::vector<std::vector<Cplx>>& f,
              const std::vector<std::vector<Cplx>>& g) {
    const std::size_t n = f.size();
    if (g.size() != n || n == 0) throw std::invalid_argument("det_gram: system size mismatch");
    for (const auto& v : f)
        if (v.size() != m.cols()) throw std::invalid_argument("det_gram: f dimension mismatch");
    for (const auto& v : g)
        if (v.size() != m.rows()) throw std::invalid_argument("det_gram: g dimension mismatch");
    ComplexMatrix inner(n, n, m.prec());
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Cplx> mf = mat_vec(m, f[j]);
        for (std::size_t i = 0; i < n; ++i) inner.at(i, j) = dot_conj(g[i].data(), mf.data(), m.rows());
    }
    return det_dense(std::move(inner));
}

}  // namespace specdecay
