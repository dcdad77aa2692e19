// SPDX-License-Identifier: Apache-2.0
#include "orbitloc/orbitloc.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "core/parallel.hpp"
#include "core/verify.hpp"

using namespace orbitloc;

struct ol_algebra {
    AlgebraPtr spec;
};

struct ol_orbit {
    OrbitSpec spec;
};

struct ol_grid {
    std::vector<GridRow> rows;
};

struct ol_report {
    Report report;
};

namespace {

thread_local std::string last_error;

ol_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_argument: return OL_ERR_INVALID_ARGUMENT;
    case ErrorCode::unsupported: return OL_ERR_UNSUPPORTED;
    case ErrorCode::not_regular: return OL_ERR_NOT_REGULAR;
    case ErrorCode::indeterminate: return OL_ERR_INDETERMINATE;
    case ErrorCode::degenerate: return OL_ERR_DEGENERATE;
    case ErrorCode::off_orbit: return OL_ERR_OFF_ORBIT;
    case ErrorCode::calibration: return OL_ERR_CALIBRATION;
    }
    return OL_ERR_INTERNAL;
}

template <class F>
ol_status guarded(F&& body) {
    last_error.clear();
    try {
        body();
        return OL_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown failure";
    }
    return OL_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
    if (!ok)
        fail(ErrorCode::invalid_argument, what);
}

AlgebraElement element(const AlgebraSpec& alg, const double* x) {
    require(x != nullptr, "null coordinate array");
    return AlgebraElement::real(Eigen::Map<const Vector>(x, alg.dimension()));
}

std::vector<double> as_vector(const double* p, size_t n) {
    require(p != nullptr || n == 0, "null array with nonzero length");
    return std::vector<double>(p, p + n);
}

CMatrix twist_matrix(const double* t) {
    CMatrix g(2, 2);
    for (int k = 0; k < 4; ++k)
        g(k / 2, k % 2) = Complex(t[k], t[4 + k]);
    return g;
}

void fill(const EvalResult& r, ol_value* out) {
    out->re = r.value.real();
    out->im = r.value.imag();
    out->degenerate = r.degenerate ? 1 : 0;
    out->support_empty = r.support_empty ? 1 : 0;
}

void fill(const McEstimate& m, ol_mc_estimate* out) {
    out->re = m.mean.real();
    out->im = m.mean.imag();
    out->std_error = m.std_error;
    out->samples = m.samples;
    out->seed = m.seed;
}

} // namespace

extern "C" {

const char* ol_version(void) { return ORBITLOC_VERSION; }

const char* ol_last_error(void) { return last_error.c_str(); }

const char* ol_status_name(ol_status status) {
    switch (status) {
    case OL_OK: return "ok";
    case OL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case OL_ERR_UNSUPPORTED: return "unsupported";
    case OL_ERR_NOT_REGULAR: return "not_regular";
    case OL_ERR_INDETERMINATE: return "indeterminate";
    case OL_ERR_DEGENERATE: return "degenerate";
    case OL_ERR_OFF_ORBIT: return "off_orbit";
    case OL_ERR_CALIBRATION: return "calibration";
    case OL_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

unsigned ol_thread_cap(void) { return thread_cap(); }

ol_status ol_algebra_create(const char* family, int n, ol_algebra** out) {
    return guarded([&] {
        require(family && out, "null argument");
        *out = new ol_algebra{AlgebraSpec::build(parse_family(family), n)};
    });
}

void ol_algebra_destroy(ol_algebra* algebra) { delete algebra; }

int ol_algebra_dimension(const ol_algebra* a) { return a ? a->spec->dimension() : 0; }
int ol_algebra_rank(const ol_algebra* a) { return a ? a->spec->rank() : 0; }
int ol_algebra_matrix_size(const ol_algebra* a) { return a ? a->spec->matrix_size() : 0; }

ol_status ol_algebra_cartan_basis(const ol_algebra* a, double* out) {
    return guarded([&] {
        require(a && out, "null argument");
        const int d = a->spec->dimension();
        const auto basis = a->spec->standard_cartan_basis();
        for (size_t k = 0; k < basis.size(); ++k)
            Eigen::Map<Vector>(out + k * static_cast<size_t>(d), d) = basis[k].real_coords();
    });
}

ol_status ol_orbit_create(const ol_algebra* a, const double* lambda, size_t lambda_len, const char* mode, int s0,
                          const char* const* user_labels, const double* user_values, size_t user_len, ol_orbit** out) {
    return guarded([&] {
        require(a && lambda && mode && out, "null argument");
        require(lambda_len == static_cast<size_t>(a->spec->rank()), "lambda needs one coordinate per Cartan basis element");
        require(user_len == 0 || (user_labels && user_values), "null user multiplicity arrays");
        std::map<std::string, double> user;
        for (size_t k = 0; k < user_len; ++k) {
            require(user_labels[k] != nullptr, "null user multiplicity label");
            user[user_labels[k]] = user_values[k];
        }
        const Vector l = Eigen::Map<const Vector>(lambda, static_cast<Eigen::Index>(lambda_len));
        *out = new ol_orbit{OrbitSpec::make(a->spec, l, parse_mode(mode), s0, user)};
    });
}

void ol_orbit_destroy(ol_orbit* orbit) { delete orbit; }

size_t ol_orbit_fixed_point_count(const ol_orbit* o) { return o ? o->spec.points.size() : 0; }

ol_status ol_orbit_fixed_point(const ol_orbit* o, size_t index, const char** label, int* multiplicity) {
    return guarded([&] {
        require(o && label && multiplicity, "null argument");
        require(index < o->spec.points.size(), "fixed point index out of range");
        *label = o->spec.points[index].weyl.label.c_str();
        *multiplicity = o->spec.points[index].multiplicity;
    });
}

ol_status ol_orbit_p2(const ol_orbit* o, double* re, double* im) {
    return guarded([&] {
        require(o && re && im, "null argument");
        const Complex p = o->spec.p2();
        *re = p.real();
        *im = p.imag();
    });
}

ol_status ol_evaluate(const ol_orbit* o, const double* x, ol_value* out) {
    return guarded([&] {
        require(o && out, "null argument");
        fill(evaluate(o->spec, element(*o->spec.algebra, x)), out);
    });
}

ol_status ol_grid_evaluate(const ol_orbit* o, const double* xs, size_t count, ol_grid** out) {
    return guarded([&] {
        require(o && out && (xs || count == 0), "null argument");
        const AlgebraSpec& alg = *o->spec.algebra;
        std::vector<AlgebraElement> samples;
        samples.reserve(count);
        for (size_t k = 0; k < count; ++k)
            samples.push_back(element(alg, xs + k * static_cast<size_t>(alg.dimension())));
        *out = new ol_grid{fourier_grid(o->spec, samples)};
    });
}

void ol_grid_destroy(ol_grid* grid) { delete grid; }

size_t ol_grid_size(const ol_grid* g) { return g ? g->rows.size() : 0; }

ol_status ol_grid_value(const ol_grid* g, size_t row, ol_value* out) {
    return guarded([&] {
        require(g && out && row < g->rows.size(), "grid row out of range");
        fill(g->rows[row].result, out);
    });
}

const char* ol_grid_row_error(const ol_grid* g, size_t row) {
    if (!g || row >= g->rows.size())
        return "";
    return g->rows[row].error.c_str();
}

size_t ol_grid_term_count(const ol_grid* g, size_t row) {
    return g && row < g->rows.size() ? g->rows[row].result.terms.size() : 0;
}

ol_status ol_grid_term(const ol_grid* g, size_t row, size_t term, ol_term* out) {
    return guarded([&] {
        require(g && out && row < g->rows.size(), "grid row out of range");
        const auto& terms = g->rows[row].result.terms;
        require(term < terms.size(), "term index out of range");
        const Term& t = terms[term];
        *out = {t.label.c_str(), t.exponent.real(), t.exponent.imag(), t.denominator.real(), t.denominator.imag(),
                t.multiplicity, t.value.real(), t.value.imag()};
    });
}

ol_status ol_mc_integral(const ol_orbit* o, const double* x, uint64_t seed, uint64_t n, double c, ol_mc_estimate* out) {
    return guarded([&] {
        require(o && out, "null argument");
        fill(mc_fourier_integral(o->spec, element(*o->spec.algebra, x), seed, n, c), out);
    });
}

ol_status ol_calibrate_constant(const ol_orbit* o, const double* x0, uint64_t seed, uint64_t n, ol_calibration* out) {
    return guarded([&] {
        require(o && out, "null argument");
        const Calibration cal = calibrate_constant(o->spec, element(*o->spec.algebra, x0), seed, n);
        out->c = cal.c;
        out->c_stderr = cal.c_stderr;
        out->reference_re = cal.reference_value.real();
        out->reference_im = cal.reference_value.imag();
        fill(cal.raw, &out->raw);
    });
}

ol_status ol_damped_integral(const ol_orbit* o, const double* x, const double* eps, size_t eps_len, double refine,
                             double* out) {
    return guarded([&] {
        require(o && out, "null argument");
        DampedOptions opt;
        opt.refine = refine;
        const auto v = damped_oscillatory_integral(o->spec, element(*o->spec.algebra, x), as_vector(eps, eps_len), opt);
        std::copy(v.begin(), v.end(), out);
    });
}

ol_status ol_calibrate_sign(const ol_orbit* o, const double* x, const double* eps, size_t eps_len, double refine,
                            ol_sign_calibration* out) {
    return guarded([&] {
        require(o && out, "null argument");
        DampedOptions opt;
        opt.refine = refine;
        const SignCalibration sc = calibrate_sign(o->spec, element(*o->spec.algebra, x), as_vector(eps, eps_len), opt);
        out->s0 = sc.s0;
        out->extrapolated = sc.extrapolated;
        out->formula_value = sc.formula_value;
    });
}

void ol_verify_options_init(ol_verify_options* o) {
    if (!o)
        return;
    const VerifyOptions d;
    *o = {"su", d.n, nullptr, 0, d.s0, d.seed, d.samples, d.points, nullptr, 0, nullptr};
}

ol_status ol_verify(const char* suite, const ol_verify_options* options, ol_report** out) {
    return guarded([&] {
        require(suite && options && out, "null argument");
        VerifyOptions opt;
        opt.family = parse_family(options->family ? options->family : "su");
        opt.n = options->n;
        if (options->lambda)
            opt.lambda = Eigen::Map<const Vector>(options->lambda, static_cast<Eigen::Index>(options->lambda_len));
        opt.s0 = options->s0;
        opt.seed = options->seed;
        opt.samples = options->samples;
        opt.points = options->points;
        if (options->eps)
            opt.eps = as_vector(options->eps, options->eps_len);
        if (options->twist)
            opt.twist = twist_matrix(options->twist);
        *out = new ol_report{run_suite(suite, opt)};
    });
}

void ol_report_destroy(ol_report* report) { delete report; }

size_t ol_report_size(const ol_report* r) { return r ? r->report.checks.size() : 0; }

int ol_report_passed(const ol_report* r) { return r && r->report.passed() ? 1 : 0; }

ol_status ol_report_check(const ol_report* r, size_t index, ol_check* out) {
    return guarded([&] {
        require(r && out && index < r->report.checks.size(), "check index out of range");
        const Check& c = r->report.checks[index];
        *out = {c.name.c_str(), c.measured, c.threshold, c.passed ? 1 : 0, c.detail.c_str()};
    });
}

ol_status ol_cycle_limit(const double* twist, double l, const double* s, size_t s_len, size_t samples, uint64_t seed,
                         ol_scaling_row* rows, ol_scaling_summary* summary) {
    return guarded([&] {
        require(rows && summary, "null argument");
        require(std::isfinite(l) && l != 0.0, "l must be finite and nonzero");
        const Sl2Model model = twist ? Sl2Model(twist_matrix(twist)) : Sl2Model();
        CVector ell(2);
        ell << Complex(0, l), Complex(0, -l);
        const ScalingReport rep = cycle_scaling_limit(model, ell, as_vector(s, s_len), samples, seed);
        for (size_t k = 0; k < rep.rows.size(); ++k)
            rows[k] = {rep.rows[k].s, rep.rows[k].conormal_distance, rep.rows[k].imaginary_defect};
        *summary = {rep.identity_residual, rep.slope_distance, rep.slope_imaginary, rep.monotone ? 1 : 0};
    });
}

} // extern "C"
