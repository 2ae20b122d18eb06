#include "rayclass/cycfield.hpp"

#include <mpfr.h>

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "rayclass/errors.hpp"

namespace rayclass {

namespace {

void check_odd_prime(const Int& p)
{
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw not_odd_prime("p must be an odd prime, got " + p.get_str());
}

} // namespace

/* ---------------- cyc_elem ---------------- */

cyc_elem::cyc_elem(const Int& p) : p_(p)
{
    check_odd_prime(p_);
    c_.assign(static_cast<std::size_t>(p_.get_ui()) - 1, Int(0));
}

cyc_elem::cyc_elem(const Int& p, std::vector<Int> coeffs) : p_(p)
{
    check_odd_prime(p_);
    const std::size_t n = static_cast<std::size_t>(p_.get_ui()) - 1;
    if (coeffs.size() == n + 1) {
        /* fold zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)) */
        for (std::size_t i = 0; i < n; ++i)
            coeffs[i] -= coeffs[n];
        coeffs.pop_back();
    }
    if (coeffs.size() != n)
        throw std::invalid_argument("cyc_elem: need p-1 coefficients");
    c_ = std::move(coeffs);
}

cyc_elem cyc_elem::integer(const Int& p, const Int& n)
{
    cyc_elem e(p);
    e.c_[0] = n;
    return e;
}

cyc_elem cyc_elem::zeta(const Int& p, unsigned long power)
{
    cyc_elem e(p);
    unsigned long q = p.get_ui();
    power %= q;
    if (power == q - 1) { /* zeta^(p-1) */
        for (auto& c : e.c_)
            c = -1;
    } else {
        e.c_[power] = 1;
    }
    return e;
}

bool cyc_elem::is_zero() const
{
    for (const Int& c : c_)
        if (c != 0)
            return false;
    return true;
}

Int cyc_elem::coeff_sum() const
{
    Int s = 0;
    for (const Int& c : c_)
        s += c;
    return s;
}

cyc_elem cyc_elem::operator+(const cyc_elem& o) const
{
    if (p_ != o.p_)
        throw mismatched_prime("cyc_elem: mixed primes");
    cyc_elem r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = c_[i] + o.c_[i];
    return r;
}

cyc_elem cyc_elem::operator-(const cyc_elem& o) const
{
    if (p_ != o.p_)
        throw mismatched_prime("cyc_elem: mixed primes");
    cyc_elem r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = c_[i] - o.c_[i];
    return r;
}

cyc_elem cyc_elem::operator-() const
{
    cyc_elem r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = -c_[i];
    return r;
}

cyc_elem cyc_elem::operator*(const cyc_elem& o) const
{
    if (p_ != o.p_)
        throw mismatched_prime("cyc_mul: mixed primes");
    const std::size_t q = static_cast<std::size_t>(p_.get_ui());
    /* exponents folded mod p (zeta^p = 1), then the zeta^(p-1) column folded
     * into the basis */
    std::vector<Int> acc(q, Int(0));
    for (std::size_t i = 0; i < q - 1; ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < q - 1; ++j) {
            if (o.c_[j] == 0)
                continue;
            std::size_t k = i + j;
            if (k >= q)
                k -= q;
            acc[k] += c_[i] * o.c_[j];
        }
    }
    return cyc_elem(p_, std::move(acc));
}

cyc_elem cyc_elem::pow(unsigned long e) const
{
    cyc_elem r = integer(p_, 1);
    cyc_elem b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

/* ---------------- pi-adic machinery ---------------- */

cyc_elem div_by_pi(const cyc_elem& y)
{
    const Int& p = y.p();
    const std::size_t n = y.coeffs().size(); /* p-1 */
    Int s = y.coeff_sum();
    if (s % p != 0)
        throw not_divisible("div_by_pi: coefficient sum is " + s.get_str() + ", not 0 mod p");
    Int t = s / p;
    /* w = y - t*Phi_p vanishes at 1; z = w/(1-x) has degree <= p-2 */
    std::vector<Int> z(n);
    Int prev = 0;
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = (y.coeff(i) - t) + prev;
        prev = z[i];
    }
    assert(z[n - 1] == t); /* top coefficient of w is -t = -z_{p-2} */
    return { p, std::move(z) };
}

long pi_valuation(const cyc_elem& x)
{
    if (x.is_zero())
        throw zero_element("pi_valuation: zero element");
    cyc_elem cur = x;
    long v = 0;
    while (cur.coeff_sum() % x.p() == 0) {
        cur = div_by_pi(cur);
        ++v;
        assert(v < 100000);
    }
    return v;
}

pi_digits digit_expansion(const cyc_elem& x, long k)
{
    assert(k >= 1);
    pi_digits out{ x.p(), k, {} };
    out.digits.reserve(static_cast<std::size_t>(k));
    cyc_elem cur = x;
    for (long i = 0; i < k; ++i) {
        Int c = cur.coeff_sum() % x.p();
        if (c < 0)
            c += x.p();
        out.digits.push_back(static_cast<long>(c.get_ui()));
        cur = div_by_pi(cur - cyc_elem::integer(x.p(), c));
    }
    return out;
}

cyc_elem from_digits(const pi_digits& dg)
{
    cyc_elem pi = cyc_elem::integer(dg.p, 1) - cyc_elem::zeta(dg.p);
    cyc_elem acc(dg.p);
    cyc_elem pw = cyc_elem::integer(dg.p, 1);
    for (long i = 0; i < dg.k; ++i) {
        if (dg.digits[static_cast<std::size_t>(i)] != 0)
            acc = acc + pw * cyc_elem::integer(dg.p, dg.digits[static_cast<std::size_t>(i)]);
        pw = pw * pi;
    }
    return acc;
}

cyc_elem cyclotomic_unit(const Int& p, long i)
{
    check_odd_prime(p);
    if (i < 2 || Int(i) > p - 1)
        throw index_out_of_range("cyclotomic_unit: need 2 <= i <= p-1");
    std::vector<Int> c(static_cast<std::size_t>(p.get_ui()) - 1, Int(0));
    for (long j = 0; j < i && static_cast<std::size_t>(j) < c.size(); ++j)
        c[static_cast<std::size_t>(j)] = 1;
    return { p, std::move(c) };
}

long smallest_primitive_root(const Int& p)
{
    check_odd_prime(p);
    auto fac = factorize(p - 1);
    for (Int g = 2;; ++g) {
        bool ok = true;
        for (const auto& [q, e] : fac) {
            (void)e;
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return static_cast<long>(g.get_ui());
    }
}

/* ---------------- Bernoulli numbers ---------------- */

const Rat& bernoulli_table::get(unsigned long n)
{
    while (b_.size() <= n) {
        unsigned long m = b_.size();
        if (m == 0) {
            b_.emplace_back(1);
        } else if (m == 1) {
            b_.emplace_back(Rat(-1, 2));
        } else if (m % 2 == 1) {
            b_.emplace_back(0);
        } else {
            Rat acc(0);
            Int binom = 1; /* C(m+1, j) */
            for (unsigned long j = 0; j < m; ++j) {
                if (b_[j] != 0) {
                    Rat term(binom);
                    term *= b_[j];
                    acc += term;
                }
                binom = binom * (m + 1 - j) / (j + 1);
            }
            acc /= -Rat(m + 1);
            acc.canonicalize();
            b_.push_back(acc);
        }
    }
    return b_[n];
}

std::vector<Rat> bernoulli_numbers(unsigned long n_max)
{
    bernoulli_table t;
    std::vector<Rat> out;
    out.reserve(n_max + 1);
    for (unsigned long i = 0; i <= n_max; ++i)
        out.push_back(t.get(i));
    return out;
}

std::pair<bool, std::vector<unsigned long>> is_regular(const Int& p)
{
    check_odd_prime(p);
    bernoulli_table t;
    std::vector<unsigned long> bad;
    unsigned long top = p.get_ui() >= 3 ? p.get_ui() - 3 : 0;
    for (unsigned long k = 2; k <= top; k += 2)
        if (mpz_divisible_p(t.get(k).get_num_mpz_t(), p.get_mpz_t()))
            bad.push_back(k);
    return { bad.empty(), bad };
}

unsigned long gamma_k(const Int& p, unsigned long k, unsigned long index_cap)
{
    check_odd_prime(p);
    if (k % 2 != 0 || k < 2 || Int(k) > p - 3)
        throw std::invalid_argument("gamma_k: need even 2 <= k <= p-3");
    bernoulli_table t;
    Int idx = k;
    for (unsigned long gamma = 0;; ++gamma) {
        if (idx > index_cap)
            throw cap_exceeded("gamma_k: index " + idx.get_str() + " exceeds cap");
        const Rat& b = t.get(idx.get_ui());
        assert(!mpz_divisible_p(b.get_den_mpz_t(), p.get_mpz_t()));
        long v = b.get_num() == 0 ? 0 : int_valuation(b.get_num(), p);
        if (v <= 2 * static_cast<long>(gamma))
            return gamma;
        idx *= p;
    }
}

/* ---------------- minus class number (MPFR, certified rounding) ---------------- */

namespace {

/* real ball: mpfr value + absolute-error radius in a double */
struct rball {
    mpfr_t v;
    double r;
    long prec;

    explicit rball(long prec_) : r(0), prec(prec_) { mpfr_init2(v, prec); mpfr_set_ui(v, 0, MPFR_RNDN); }
    rball(const rball& o) : r(o.r), prec(o.prec)
    {
        mpfr_init2(v, prec);
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    rball& operator=(const rball& o)
    {
        mpfr_set(v, o.v, MPFR_RNDN);
        r = o.r;
        return *this;
    }
    ~rball() { mpfr_clear(v); }

    double mag() const { return std::fabs(mpfr_get_d(v, MPFR_RNDA)) * (1 + 1e-9) + 1e-300; }
    double ulp() const { return mag() * std::ldexp(1.0, static_cast<int>(2 - prec)) + 1e-300; }
};

void ball_add(rball& acc, const rball& x)
{
    mpfr_add(acc.v, acc.v, x.v, MPFR_RNDN);
    acc.r = acc.r + x.r + acc.ulp();
}

rball ball_mul(const rball& a, const rball& b)
{
    rball out(a.prec);
    mpfr_mul(out.v, a.v, b.v, MPFR_RNDN);
    out.r = a.mag() * b.r + b.mag() * a.r + a.r * b.r + out.ulp();
    return out;
}

} // namespace

Int minus_class_number(const Int& p, const Int& cap)
{
    check_odd_prime(p);
    if (p > cap)
        throw cap_exceeded("minus_class_number: p exceeds the configured cap " + cap.get_str());

    const unsigned long pm1 = p.get_ui() - 1;
    const unsigned long n = pm1 / 2;
    const long g = smallest_primitive_root(p);
    const Int twop = 2 * p;

    /* a_j = g^j mod p, j = 0..p-2; B_{1,chi^k} = (1/p) sum_j a_j w^(jk) */
    std::vector<unsigned long> a(pm1);
    Int pw = 1;
    for (unsigned long j = 0; j < pm1; ++j) {
        a[j] = pw.get_ui();
        pw = pw * g % p;
    }

    /* middle character (k = n odd, i.e. p = 3 mod 4): S_n = f(-1), exact */
    Int middle = 0;
    bool has_middle = (n % 2 == 1);
    if (has_middle)
        for (unsigned long j = 0; j < pm1; ++j)
            middle += (j % 2 == 0) ? Int(a[j]) : Int(-Int(a[j]));

    for (long prec = 128; prec <= 4096; prec *= 2) {
        /* roots of unity e^(2 pi i m/(p-1)) */
        std::vector<rball> cs, sn;
        cs.reserve(pm1);
        sn.reserve(pm1);
        {
            mpfr_t pi2, ang;
            mpfr_init2(pi2, prec);
            mpfr_init2(ang, prec);
            mpfr_const_pi(pi2, MPFR_RNDN);
            mpfr_mul_ui(pi2, pi2, 2, MPFR_RNDN);
            const double rad_root = std::ldexp(1.0, static_cast<int>(6 - prec));
            for (unsigned long m = 0; m < pm1; ++m) {
                mpfr_mul_ui(ang, pi2, m, MPFR_RNDN);
                mpfr_div_ui(ang, ang, pm1, MPFR_RNDN);
                rball c(prec), s(prec);
                mpfr_sin_cos(s.v, c.v, ang, MPFR_RNDN);
                c.r = rad_root;
                s.r = rad_root;
                cs.push_back(c);
                sn.push_back(s);
            }
            mpfr_clear(pi2);
            mpfr_clear(ang);
        }

        /* h = 2p * (|f(-1)|/2p)^eps * prod_{odd k < n} |S_k/2p|^2; each factor
         * is normalized by 1/(2p) so magnitudes stay within double range */
        rball prod(prec);
        mpfr_set_ui(prod.v, 1, MPFR_RNDN);
        mpfr_t tmp;
        mpfr_init2(tmp, prec);
        mpfr_set_z(tmp, twop.get_mpz_t(), MPFR_RNDN);
        for (unsigned long k = 1; k < n; k += 2) {
            rball re(prec), im(prec);
            for (unsigned long j = 0; j < pm1; ++j) {
                unsigned long idx = (j * k) % pm1;
                rball tc(prec), ts(prec);
                mpfr_mul_ui(tc.v, cs[idx].v, a[j], MPFR_RNDN);
                tc.r = cs[idx].r * static_cast<double>(a[j]) + tc.ulp();
                mpfr_mul_ui(ts.v, sn[idx].v, a[j], MPFR_RNDN);
                ts.r = sn[idx].r * static_cast<double>(a[j]) + ts.ulp();
                ball_add(re, tc);
                ball_add(im, ts);
            }
            mpfr_div(re.v, re.v, tmp, MPFR_RNDN);
            re.r = re.r / twop.get_d() + re.ulp();
            mpfr_div(im.v, im.v, tmp, MPFR_RNDN);
            im.r = im.r / twop.get_d() + im.ulp();
            rball norm2 = ball_mul(re, re);
            ball_add(norm2, ball_mul(im, im));
            prod = ball_mul(prod, norm2);
        }
        if (has_middle) {
            rball f(prec);
            Int am = abs(middle);
            mpfr_set_z(f.v, am.get_mpz_t(), MPFR_RNDN);
            mpfr_div(f.v, f.v, tmp, MPFR_RNDN);
            f.r = f.ulp();
            prod = ball_mul(prod, f);
        }
        mpfr_mul(prod.v, prod.v, tmp, MPFR_RNDN); /* times 2p */
        prod.r = prod.r * twop.get_d() * (1 + 1e-9) + prod.ulp();
        mpfr_clear(tmp);

        /* certified rounding: radius and distance both < 1/4 */
        if (std::isfinite(prod.r) && prod.r < 0.25) {
            mpfr_t nearest;
            mpfr_init2(nearest, prec);
            mpfr_round(nearest, prod.v);
            Int h;
            mpfr_get_z(h.get_mpz_t(), nearest, MPFR_RNDN);
            mpfr_sub(nearest, prod.v, nearest, MPFR_RNDN);
            double dist = std::fabs(mpfr_get_d(nearest, MPFR_RNDA));
            mpfr_clear(nearest);
            if (dist < 0.25 && h >= 1)
                return h;
        }
    }
    throw precision_failure("minus_class_number: certification failed at max precision");
}

} // namespace rayclass
