#include "rayclass/quadfield.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <tuple>

#include "rayclass/errors.hpp"

namespace rayclass {

void check_d(const Int& d)
{
    if (d <= 1 || !is_squarefree(d))
        throw invalid_d("d must be a square-free integer > 1, got " + d.get_str());
}

/* ---------------- quad_elem ---------------- */

void quad_elem::normalize()
{
    if (q_ == 2 && x_ % 2 == 0 && y_ % 2 == 0) {
        x_ /= 2;
        y_ /= 2;
        q_ = 1;
    }
    if (q_ == 2) {
        if (d_ % 4 != 1)
            throw std::invalid_argument("quad_elem: half-coordinates need d = 1 mod 4");
        if ((x_ - y_) % 2 != 0)
            throw std::invalid_argument("quad_elem: x and y must have equal parity for q = 2");
    }
}

quad_elem::quad_elem(Int d, Int x, Int y, int q)
    : d_(std::move(d)), x_(std::move(x)), y_(std::move(y)), q_(q)
{
    if (q_ != 1 && q_ != 2)
        throw std::invalid_argument("quad_elem: q must be 1 or 2");
    if (d_ <= 1)
        throw std::invalid_argument("quad_elem: d must be > 1");
    normalize();
}

Int quad_elem::norm() const
{
    Int n = x_ * x_ - y_ * y_ * d_;
    if (q_ == 2) {
        assert(n % 4 == 0);
        n /= 4;
    }
    return n;
}

Int quad_elem::trace() const
{
    return q_ == 2 ? x_ : Int(2 * x_);
}

quad_elem quad_elem::operator+(const quad_elem& o) const
{
    assert(d_ == o.d_);
    if (q_ == o.q_)
        return { d_, x_ + o.x_, y_ + o.y_, q_ };
    const quad_elem& h = q_ == 2 ? *this : o; /* the half-coordinate one */
    const quad_elem& w = q_ == 2 ? o : *this;
    return { d_, h.x_ + 2 * w.x_, h.y_ + 2 * w.y_, 2 };
}

quad_elem quad_elem::operator-(const quad_elem& o) const
{
    return *this + (-o);
}

quad_elem quad_elem::operator*(const quad_elem& o) const
{
    assert(d_ == o.d_);
    Int nx = x_ * o.x_ + y_ * o.y_ * d_;
    Int ny = x_ * o.y_ + y_ * o.x_;
    int nq = q_ * o.q_;
    while (nq > 1 && nx % 2 == 0 && ny % 2 == 0) {
        nx /= 2;
        ny /= 2;
        nq /= 2;
    }
    assert(nq <= 2);
    return { d_, nx, ny, nq };
}

quad_elem quad_elem::pow(unsigned long e) const
{
    quad_elem r = integer(d_, 1);
    quad_elem b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

int quad_elem::sign(bool positive_root) const
{
    const Int& y = y_;
    Int ye = positive_root ? y : Int(-y);
    if (x_ == 0 && ye == 0)
        return 0;
    if (x_ >= 0 && ye >= 0)
        return 1;
    if (x_ <= 0 && ye <= 0)
        return -1;
    /* mixed signs: compare x^2 against y^2 d exactly */
    int cmp_sq = cmp(x_ * x_, ye * ye * d_);
    if (x_ > 0)
        return cmp_sq > 0 ? 1 : -1; /* x > 0 > ye */
    return cmp_sq < 0 ? 1 : -1;     /* ye > 0 > x */
}

std::pair<Int, Int> quad_elem::integral_coords() const
{
    if (d_ % 4 != 1) {
        assert(q_ == 1);
        return { x_, y_ };
    }
    /* omega = (1+sqrt(d))/2 */
    if (q_ == 2)
        return { (x_ - y_) / 2, y_ };
    return { x_ - y_, 2 * y_ };
}

/* ---------------- splitting ---------------- */

prime_splitting splitting_type(const Int& d, const Int& p)
{
    check_d(d);
    if (!is_prime(p))
        throw std::invalid_argument("splitting_type: p must be prime");
    if (p == 2) {
        unsigned long m8 = mpz_fdiv_ui(d.get_mpz_t(), 8);
        if (m8 == 1)
            return prime_splitting::split;
        if (m8 == 5)
            return prime_splitting::inert;
        return prime_splitting::ramified;
    }
    Int D = (d % 4 == 1) ? d : Int(4 * d);
    int leg = mpz_legendre(D.get_mpz_t(), p.get_mpz_t());
    if (leg == 1)
        return prime_splitting::split;
    if (leg == -1)
        return prime_splitting::inert;
    return prime_splitting::ramified;
}

/* ---------------- fundamental unit ---------------- */

quad_elem fundamental_unit(const Int& d)
{
    check_d(d);
    const bool half = (d % 4 == 1);
    const Int P0 = half ? 1 : 0;
    const Int Q0 = half ? 2 : 1;
    const Int s = isqrt(d);

    Int a = (P0 + s) / Q0; /* a_0 */
    Int p_im1 = a, p_im2 = 1;
    Int q_im1 = 1, q_im2 = 0;
    Int P = a * Q0 - P0;
    Int Q = (d - P * P) / Q0;
    const Int P1 = P, Q1 = Q;

    for (long i = 1;; ++i) {
        if (i > 100000000L)
            throw error("fundamental_unit: period not found (d too large?)");
        assert(Q > 0);
        a = (P + s) / Q;
        Int p_i = a * p_im1 + p_im2;
        Int q_i = a * q_im1 + q_im2;
        Int Pn = a * Q - P;
        Int Qn = (d - Pn * Pn) / Q;
        if (Pn == P1 && Qn == Q1) {
            /* period length i; unit from convergent i-1 */
            quad_elem u(d, Q0 * p_im1 - P0 * q_im1, q_im1, static_cast<int>(Q0.get_ui()));
            Int n = u.norm();
            assert(n == 1 || n == -1);
            assert(n == ((i % 2) ? -1 : 1));
            assert(u.sign(true) > 0 && (u - quad_elem::integer(d, 1)).sign(true) > 0);
            return u;
        }
        p_im2 = p_im1;
        p_im1 = p_i;
        q_im2 = q_im1;
        q_im1 = q_i;
        P = Pn;
        Q = Qn;
    }
}

/* ---------------- split roots and embeddings ---------------- */

namespace {

/* square root mod an odd prime (Tonelli-Shanks); a must be a residue */
Int sqrt_mod_p(const Int& a0, const Int& p)
{
    Int a = a0 % p;
    if (a < 0)
        a += p;
    assert(a != 0);
    if (p % 4 == 3)
        return powmod(a, (p + 1) / 4, p);
    Int Q = p - 1;
    unsigned long S = 0;
    while (Q % 2 == 0) {
        Q /= 2;
        ++S;
    }
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1)
        ++z;
    unsigned long M = S;
    Int c = powmod(z, Q, p);
    Int t = powmod(a, Q, p);
    Int R = powmod(a, (Q + 1) / 2, p);
    while (t != 1) {
        unsigned long i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < M; ++j)
            b = b * b % p;
        M = i;
        c = b * b % p;
        t = t * c % p;
        R = R * b % p;
    }
    return R;
}

} // namespace

Int split_root(const Int& d, const Int& p, long precision)
{
    if (splitting_type(d, p) != prime_splitting::split)
        throw not_split("split_root: " + p.get_str() + " is not split in Q(sqrt(" + d.get_str() + "))");
    assert(precision >= 1);

    if (p == 2) {
        /* seed is the mod-8 class of the 2-adic roots, fixed by d mod 16 */
        Int r = (mpz_fdiv_ui(d.get_mpz_t(), 16) == 1) ? 1 : 3;
        /* lift one level past the target so the output is reduction-compatible */
        Int mod = 16;
        for (long m = 4; m <= precision; ++m) {
            mod *= 2; /* 2^{m+1} */
            if ((r * r - d) % mod != 0)
                r += (mod >> 2); /* 2^{m-1} */
        }
        Int mask = pow_int(2, static_cast<unsigned long>(precision));
        return r % mask;
    }

    Int r1 = sqrt_mod_p(d, p);
    Int r = std::min(r1, Int(p - r1));
    Int mod = p;
    long have = 1;
    while (have < precision) {
        /* Newton step doubles the precision */
        have *= 2;
        mod = mod * mod;
        Int t = (r * r - d) % mod;
        r = (r - t * invmod(2 * r, mod)) % mod;
        if (r < 0)
            r += mod;
    }
    Int mask = pow_int(p, static_cast<unsigned long>(precision));
    r %= mask;
    assert((r * r - d) % mask == 0);
    return r;
}

/* image of x in O/p1^K = Z/p^K through sqrt(d) -> split_root */
Int split_embed(const quad_elem& x, const Int& p, long K)
{
    const Int mod = pow_int(p, static_cast<unsigned long>(K));
    if (x.q() == 1) {
        Int r = split_root(x.d(), p, K);
        Int v = (x.x() + x.y() * r) % mod;
        if (v < 0)
            v += mod;
        return v;
    }
    if (p == 2) {
        /* work one digit deeper and divide the even numerator exactly */
        Int r = split_root(x.d(), p, K + 1);
        Int w = (x.x() + x.y() * r) % (2 * mod);
        if (w < 0)
            w += 2 * mod;
        assert(w % 2 == 0);
        return (w / 2) % mod;
    }
    Int r = split_root(x.d(), p, K);
    Int v = (x.x() + x.y() * r) % mod * invmod(2, mod) % mod;
    if (v < 0)
        v += mod;
    return v;
}

long valuation_at_split_prime(const quad_elem& x, const Int& p)
{
    if (x.is_zero())
        throw zero_element("valuation_at_split_prime: zero element");
    if (splitting_type(x.d(), p) != prime_splitting::split)
        throw not_split("valuation_at_split_prime: prime is not split");
    for (long K = 8;; K *= 2) {
        Int v = split_embed(x, p, K);
        if (v != 0)
            return int_valuation(v, p);
        if (K > (1L << 24))
            throw error("valuation_at_split_prime: precision runaway");
    }
}

long valuation_at_inert_prime(const quad_elem& x, const Int& p)
{
    if (x.is_zero())
        throw zero_element("valuation_at_inert_prime: zero element");
    if (splitting_type(x.d(), p) != prime_splitting::inert)
        throw not_inert("valuation_at_inert_prime: prime is not inert");
    if (p == 2 && x.q() == 2)
        return 0; /* canonical q=2 means both numerators odd */
    long vx = x.x() == 0 ? -1 : int_valuation(x.x(), p);
    long vy = x.y() == 0 ? -1 : int_valuation(x.y(), p);
    long v;
    if (vx < 0)
        v = vy;
    else if (vy < 0)
        v = vx;
    else
        v = std::min(vx, vy);
    if (p == 2 && x.d() % 4 == 1 && x.q() == 1 && vx == vy)
        ++v; /* both odd after the shift: one more half-coordinate division */
    return v;
}

/* ---------------- inert residue ring ---------------- */

quad_residue_ring::quad_residue_ring(const Int& d_, const Int& mod_) : d(d_), mod(mod_)
{
    if (d % 4 == 1) {
        wt = 1;
        wn = (d - 1) / 4;
    } else {
        wt = 0;
        wn = d;
    }
}

quad_residue_ring::elem quad_residue_ring::reduce(const Int& m, const Int& n) const
{
    Int a = m % mod, b = n % mod;
    if (a < 0)
        a += mod;
    if (b < 0)
        b += mod;
    return { a, b };
}

quad_residue_ring::elem quad_residue_ring::from_quad(const quad_elem& x) const
{
    auto [m, n] = x.integral_coords();
    return reduce(m, n);
}

quad_residue_ring::elem quad_residue_ring::mul(const elem& a, const elem& b) const
{
    Int w = a.second * b.second;
    return reduce(a.first * b.first + w * wn,
                  a.first * b.second + a.second * b.first + w * wt);
}

quad_residue_ring::elem quad_residue_ring::pow(elem base, Int e) const
{
    elem r = one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Int quad_residue_ring::norm(const elem& a) const
{
    /* N(m + n*omega) = m^2 + wt*m*n - wn*n^2 */
    Int n = a.first * a.first + wt * a.first * a.second - wn * a.second * a.second;
    n %= mod;
    if (n < 0)
        n += mod;
    return n;
}

quad_residue_ring::elem quad_residue_ring::inverse(const elem& a) const
{
    /* conj(m + n*omega) = (m + wt*n) - n*omega; a * conj = N(a) */
    Int ninv = invmod(norm(a), mod);
    return reduce((a.first + wt * a.second) * ninv, -a.second * ninv);
}

Int quad_residue_ring::order(const elem& a,
                             const std::vector<std::pair<Int, unsigned long>>& order_multiple) const
{
    Int ord = 1;
    for (const auto& [q, e] : order_multiple)
        ord *= pow_int(q, e);
    assert(pow(a, ord) == one());
    for (const auto& [q, e] : order_multiple) {
        for (unsigned long i = 0; i < e; ++i) {
            Int cand = ord / q;
            if (pow(a, cand) == one())
                ord = cand;
            else
                break;
        }
    }
    return ord;
}

/* ---------------- unit invariants ---------------- */

quad_unit_invariants unit_invariants(const Int& d, const Int& p)
{
    prime_splitting st = splitting_type(d, p);
    if (st == prime_splitting::ramified)
        throw ramified_prime("unit_invariants: p ramifies in Q(sqrt(" + d.get_str() + "))");

    quad_elem u = fundamental_unit(d);
    int nu = static_cast<int>(u.norm().get_si());
    quad_elem u0 = (nu == 1) ? u : u * u;
    assert(u0.totally_positive());

    Int s;
    if (st == prime_splitting::split) {
        Int img = split_embed(u0, p, 1);
        s = multiplicative_order(img, p, factorize(p - 1));
    } else {
        quad_residue_ring R(d, p);
        s = R.order(R.from_quad(u0), factorize(p * p - 1));
    }
    quad_elem w = u0.pow(s.get_ui()) - quad_elem::integer(d, 1);
    long m = (st == prime_splitting::split) ? valuation_at_split_prime(w, p)
                                            : valuation_at_inert_prime(w, p);
    assert(m >= 1);
    return { u, nu, u0, s, m };
}

/* ---------------- narrow class number ---------------- */

namespace {

struct form {
    Int a, b, c;
    bool operator==(const form&) const = default;
    bool operator<(const form& o) const
    {
        if (a != o.a)
            return a < o.a;
        if (b != o.b)
            return b < o.b;
        return c < o.c;
    }
};

/* rho on reduced indefinite forms: (a,b,c) -> (c, r, (r^2-D)/4c) with
 * r = -b mod 2|c| in (sqrt(D)-2|c|, sqrt(D)) */
form rho(const form& f, const Int& D, const Int& L)
{
    Int twoc = 2 * abs(f.c);
    Int t = (L + f.b) % twoc;
    if (t < 0)
        t += twoc;
    Int r = L - t;
    return { f.c, r, (r * r - D) / (4 * f.c) };
}

} // namespace

Int narrow_class_number(const Int& d)
{
    check_d(d);
    const Int D = (d % 4 == 1) ? d : Int(4 * d);
    const Int L = isqrt(D);

    std::map<form, bool> reduced; /* form -> visited */
    for (Int b = (D % 2 == 0) ? 2 : 1; b <= L; b += 2) {
        Int m4 = b * b - D; /* = 4ac < 0 */
        assert(m4 % 4 == 0);
        Int M = m4 / 4;
        Int absM = -M;
        for (Int t = 1; t * t <= absM; ++t) {
            if (absM % t != 0)
                continue;
            for (const Int& aa : { t, Int(absM / t) }) {
                /* reduced iff sqrt(D)-b < 2|A| < sqrt(D)+b */
                Int twoa = 2 * aa;
                if ((twoa + b) * (twoa + b) <= D)
                    continue;
                if (twoa > b && (twoa - b) * (twoa - b) >= D)
                    continue;
                Int cc = M / aa; /* < 0 */
                if (gcd(gcd(aa, b), cc) != 1)
                    continue;
                reduced[{ aa, b, cc }] = false;
                reduced[{ -aa, b, -cc }] = false;
                if (t * t == absM)
                    break; /* square divisor, single pass */
            }
        }
    }

    Int cycles = 0;
    for (auto& [f0, seen0] : reduced) {
        if (seen0)
            continue;
        ++cycles;
        form f = f0;
        do {
            auto it = reduced.find(f);
            assert(it != reduced.end());
            it->second = true;
            f = rho(f, D, L);
        } while (!(f == f0));
    }
    return cycles;
}

} // namespace rayclass
