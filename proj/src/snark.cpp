#include "fort/snark.hpp"

#include <cstring>
#include <stdexcept>

namespace fort {

namespace {

// ---- radix-2 FFT over Fr -------------------------------------------------

size_t next_pow2(size_t v) {
    size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

// smallest generator of the full multiplicative group (a quadratic
// non-residue); also used as the coset shift
const Fr& field_generator() {
    static const Fr g = [] {
        U256 half = u256_shr1(Fr::modulus());  // (r-1)/2
        for (uint64_t c = 2;; ++c) {
            Fr cand = Fr::from_u64(c);
            if (cand.pow(half) != Fr::one()) return cand;
        }
    }();
    return g;
}

// primitive n-th root of unity, n a power of two within the field's 2-adicity
Fr root_of_unity(size_t n) {
    U256 t;
    u256_sub(t, Fr::modulus(), U256(1));
    unsigned s = 0;
    while (!t.bit(0)) {
        t = u256_shr1(t);
        ++s;
    }
    Fr w = field_generator().pow(t);  // order 2^s
    size_t order = size_t(1) << s;
    if (n > order) throw std::invalid_argument("domain exceeds field 2-adicity");
    while (order > n) {
        w = w.square();
        order >>= 1;
    }
    return w;
}

void fft(std::vector<Fr>& a, const Fr& omega) {
    size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        Fr wlen = omega;
        for (size_t l = len; l < n; l <<= 1) wlen = wlen.square();
        for (size_t start = 0; start < n; start += len) {
            Fr w = Fr::one();
            for (size_t i = 0; i < len / 2; ++i) {
                Fr even = a[start + i];
                Fr odd = a[start + i + len / 2] * w;
                a[start + i] = even + odd;
                a[start + i + len / 2] = even - odd;
                w *= wlen;
            }
        }
    }
}

void ifft(std::vector<Fr>& a, const Fr& omega) {
    fft(a, omega.inverse());
    Fr ninv = Fr::from_u64(a.size()).inverse();
    for (Fr& x : a) x *= ninv;
}

// ---- serialization helpers -------------------------------------------------

struct Writer {
    std::vector<uint8_t> out;

    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(uint8_t(v >> (8 * i)));
    }
    void fr(const Fr& f) {
        uint8_t b[32];
        f.to_bytes(b);
        out.insert(out.end(), b, b + 32);
    }
    void fq(const Fq& f) {
        uint8_t b[32];
        f.to_bytes(b);
        out.insert(out.end(), b, b + 32);
    }
    void g1(const G1& p) {
        if (p.is_infinity()) {
            out.push_back(0);
            out.insert(out.end(), 64, 0);
            return;
        }
        out.push_back(1);
        auto [x, y] = p.to_affine();
        fq(x);
        fq(y);
    }
    void g2(const G2& p) {
        if (p.is_infinity()) {
            out.push_back(0);
            out.insert(out.end(), 128, 0);
            return;
        }
        out.push_back(1);
        auto [x, y] = p.to_affine();
        fq(x.c0);
        fq(x.c1);
        fq(y.c0);
        fq(y.c1);
    }
    void str(const std::string& s) {
        u64(s.size());
        out.insert(out.end(), s.begin(), s.end());
    }
};

struct Reader {
    std::span<const uint8_t> in;
    size_t pos = 0;
    bool fail = false;

    bool take(uint8_t* dst, size_t n) {
        if (fail || pos + n > in.size()) {
            fail = true;
            return false;
        }
        std::memcpy(dst, in.data() + pos, n);
        pos += n;
        return true;
    }
    uint64_t u64() {
        uint8_t b[8] = {};
        take(b, 8);
        uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    Fr fr() {
        uint8_t b[32] = {};
        take(b, 32);
        auto f = Fr::from_bytes(b);
        if (!f) {
            fail = true;
            return Fr::zero();
        }
        return *f;
    }
    Fq fq() {
        uint8_t b[32] = {};
        take(b, 32);
        auto f = Fq::from_bytes(b);
        if (!f) {
            fail = true;
            return Fq::zero();
        }
        return *f;
    }
    G1 g1() {
        uint8_t flag = 0;
        take(&flag, 1);
        if (flag == 0) {
            uint8_t skip[64];
            take(skip, 64);
            return G1();
        }
        Fq x = fq(), y = fq();
        G1 p(x, y);
        if (!fail && !p.is_on_curve()) fail = true;
        return p;
    }
    G2 g2() {
        uint8_t flag = 0;
        take(&flag, 1);
        if (flag == 0) {
            uint8_t skip[128];
            take(skip, 128);
            return G2();
        }
        Fq2 x{fq(), fq()}, y{fq(), fq()};
        G2 p(x, y);
        if (!fail && !p.is_on_curve()) fail = true;
        return p;
    }
    std::string str() {
        uint64_t n = u64();
        if (fail || pos + n > in.size()) {
            fail = true;
            return {};
        }
        std::string s(reinterpret_cast<const char*>(in.data() + pos), n);
        pos += n;
        return s;
    }
};

constexpr char kProofMagic[8] = {'F', 'O', 'R', 'T', 'P', 'F', '1', '\n'};
constexpr char kVkMagic[8] = {'F', 'O', 'R', 'T', 'V', 'K', '1', '\n'};
constexpr char kPkMagic[8] = {'F', 'O', 'R', 'T', 'P', 'K', '1', '\n'};

void write_magic(Writer& w, const char (&magic)[8]) {
    w.out.insert(w.out.end(), magic, magic + 8);
}

bool read_magic(Reader& r, const char (&magic)[8]) {
    uint8_t buf[8] = {};
    r.take(buf, 8);
    return !r.fail && std::memcmp(buf, magic, 8) == 0;
}

void write_lincomb(Writer& w, const LinComb& lc) {
    w.u64(lc.terms.size());
    for (const auto& [idx, coeff] : lc.terms) {
        w.u64(idx);
        w.fr(coeff);
    }
}

LinComb read_lincomb(Reader& r) {
    LinComb lc;
    uint64_t n = r.u64();
    if (r.fail || n > (1u << 24)) {
        r.fail = true;
        return lc;
    }
    for (uint64_t i = 0; i < n; ++i) {
        uint32_t idx = uint32_t(r.u64());
        Fr coeff = r.fr();
        lc.terms.push_back({idx, coeff});
    }
    return lc;
}

void write_cs(Writer& w, const ConstraintSystem& cs) {
    w.u64(cs.num_variables());
    w.u64(cs.num_public());
    w.u64(cs.categories().size());
    for (const auto& c : cs.categories()) w.str(c);
    w.u64(cs.constraints().size());
    for (const Constraint& k : cs.constraints()) {
        w.u64(k.category);
        write_lincomb(w, k.a);
        write_lincomb(w, k.b);
        write_lincomb(w, k.c);
    }
}

bool read_cs(Reader& r, ConstraintSystem& cs) {
    uint64_t vars = r.u64(), pub = r.u64();
    uint64_t ncat = r.u64();
    if (r.fail || vars == 0 || vars > (1u << 28)) return false;
    std::vector<std::string> cats;
    for (uint64_t i = 0; i < ncat && !r.fail; ++i) cats.push_back(r.str());
    for (uint64_t i = 1; i < vars; ++i) cs.add_variable();
    uint64_t ncons = r.u64();
    if (r.fail || ncons > (1u << 28)) return false;
    for (uint64_t i = 0; i < ncons && !r.fail; ++i) {
        uint64_t cat = r.u64();
        if (cat >= cats.size()) return false;
        LinComb a = read_lincomb(r), b = read_lincomb(r), c = read_lincomb(r);
        cs.enforce(std::move(a), std::move(b), std::move(c), cats[cat]);
    }
    if (r.fail || pub == 0 || pub > vars) return false;
    cs.set_public_count(pub);
    return true;
}

// per-row evaluations of the three matrices on the satisfied assignment,
// with the public-input padding rows appended
struct RowEvals {
    std::vector<Fr> a, b, c;
};

RowEvals evaluate_rows(const ConstraintSystem& cs,
                       std::span<const Fr> assignment, size_t domain) {
    RowEvals r;
    r.a.assign(domain, Fr::zero());
    r.b.assign(domain, Fr::zero());
    r.c.assign(domain, Fr::zero());
    const auto& cons = cs.constraints();
    for (size_t i = 0; i < cons.size(); ++i) {
        r.a[i] = ConstraintSystem::eval(cons[i].a, assignment);
        r.b[i] = ConstraintSystem::eval(cons[i].b, assignment);
        r.c[i] = ConstraintSystem::eval(cons[i].c, assignment);
    }
    for (size_t i = 0; i < cs.num_public(); ++i)
        r.a[cons.size() + i] = assignment[i];
    return r;
}

}  // namespace

std::pair<ProvingKey, VerificationKey> setup(const ConstraintSystem& cs,
                                             std::span<const uint8_t> seed) {
    const size_t rows = cs.constraints().size() + cs.num_public();
    const size_t n = next_pow2(rows);
    const size_t vars = cs.num_variables();
    const Fr omega = root_of_unity(n);

    Rng rng(seed);
    Fr tau;
    do {
        tau = rng.next_nonzero_scalar<Fr>();
    } while (tau.pow(U256(uint64_t(n))) == Fr::one());
    Fr alpha = rng.next_nonzero_scalar<Fr>();
    Fr beta = rng.next_nonzero_scalar<Fr>();
    Fr gamma = rng.next_nonzero_scalar<Fr>();
    Fr delta = rng.next_nonzero_scalar<Fr>();

    // Lagrange values L_j(tau) = Z(tau) w^j / (n (tau - w^j))
    Fr z_tau = tau.pow(U256(uint64_t(n))) - Fr::one();
    std::vector<Fr> w_pow(n), lag(n);
    Fr acc = Fr::one();
    Fr n_fr = Fr::from_u64(n);
    for (size_t j = 0; j < n; ++j) {
        w_pow[j] = acc;
        lag[j] = n_fr * (tau - acc);
        acc *= omega;
    }
    batch_invert(lag);
    for (size_t j = 0; j < n; ++j) lag[j] *= z_tau * w_pow[j];

    // QAP polynomial evaluations at tau, one triple per variable
    std::vector<Fr> u(vars, Fr::zero()), v(vars, Fr::zero()),
        w(vars, Fr::zero());
    const auto& cons = cs.constraints();
    for (size_t i = 0; i < cons.size(); ++i) {
        for (const auto& [idx, coeff] : cons[i].a.terms)
            u[idx] += coeff * lag[i];
        for (const auto& [idx, coeff] : cons[i].b.terms)
            v[idx] += coeff * lag[i];
        for (const auto& [idx, coeff] : cons[i].c.terms)
            w[idx] += coeff * lag[i];
    }
    // padding rows pin each public input's polynomial, keeping the public
    // slots linearly independent in the A-query
    for (size_t i = 0; i < cs.num_public(); ++i) u[i] += lag[cons.size() + i];

    Fr gamma_inv = gamma.inverse();
    Fr delta_inv = delta.inverse();

    FixedBaseTable<G1> t1(G1::generator());
    FixedBaseTable<G2> t2(G2::generator());

    ProvingKey pk;
    pk.cs = cs;
    pk.domain_size = n;
    pk.alpha_g1 = t1.mul(alpha);
    pk.beta_g1 = t1.mul(beta);
    pk.delta_g1 = t1.mul(delta);
    pk.beta_g2 = t2.mul(beta);
    pk.delta_g2 = t2.mul(delta);

    VerificationKey vk;
    vk.alpha_g1 = pk.alpha_g1;
    vk.beta_g2 = pk.beta_g2;
    vk.gamma_g2 = t2.mul(gamma);
    vk.delta_g2 = pk.delta_g2;

    pk.a_query.reserve(vars);
    pk.b_g1_query.reserve(vars);
    pk.b_g2_query.reserve(vars);
    for (size_t i = 0; i < vars; ++i) {
        pk.a_query.push_back(u[i].is_zero() ? G1() : t1.mul(u[i]));
        pk.b_g1_query.push_back(v[i].is_zero() ? G1() : t1.mul(v[i]));
        pk.b_g2_query.push_back(v[i].is_zero() ? G2() : t2.mul(v[i]));
        Fr combined = beta * u[i] + alpha * v[i] + w[i];
        if (i < cs.num_public())
            vk.ic.push_back(t1.mul(combined * gamma_inv));
        else
            pk.l_query.push_back(t1.mul(combined * delta_inv));
    }

    Fr h_base = z_tau * delta_inv;
    Fr tpow = Fr::one();
    pk.h_query.reserve(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        pk.h_query.push_back(t1.mul(h_base * tpow));
        tpow *= tau;
    }
    return {std::move(pk), std::move(vk)};
}

SnarkProof prove(const ProvingKey& pk, std::span<const Fr> assignment,
                 Rng& rng, unsigned threads) {
    if (auto bad = pk.cs.first_unsatisfied(assignment))
        throw std::invalid_argument("assignment violates constraint " +
                                    std::to_string(*bad) + " (" +
                                    pk.cs.category_of(*bad) + ")");

    const size_t n = pk.domain_size;
    const Fr omega = root_of_unity(n);
    RowEvals rows = evaluate_rows(pk.cs, assignment, n);

    // quotient h = (A*B - C)/Z computed on a multiplicative coset, where
    // Z is the constant g^n - 1
    ifft(rows.a, omega);
    ifft(rows.b, omega);
    ifft(rows.c, omega);
    const Fr g = field_generator();
    Fr shift = Fr::one();
    for (size_t j = 0; j < n; ++j) {
        rows.a[j] *= shift;
        rows.b[j] *= shift;
        rows.c[j] *= shift;
        shift *= g;
    }
    fft(rows.a, omega);
    fft(rows.b, omega);
    fft(rows.c, omega);
    Fr z_inv = (g.pow(U256(uint64_t(n))) - Fr::one()).inverse();
    std::vector<Fr> h(n);
    for (size_t j = 0; j < n; ++j)
        h[j] = (rows.a[j] * rows.b[j] - rows.c[j]) * z_inv;
    ifft(h, omega);
    Fr g_inv = g.inverse();
    Fr unshift = Fr::one();
    for (size_t j = 0; j < n; ++j) {
        h[j] *= unshift;
        unshift *= g_inv;
    }
    h.resize(n - 1);  // degree <= n - 2

    Fr r = rng.next_scalar<Fr>();
    Fr s = rng.next_scalar<Fr>();

    G1 a = pk.alpha_g1 + msm_sw<G1>(assignment, pk.a_query, threads) +
           pk.delta_g1 * r;
    G2 b = pk.beta_g2 + msm_sw<G2>(assignment, pk.b_g2_query, threads) +
           pk.delta_g2 * s;
    G1 b1 = pk.beta_g1 + msm_sw<G1>(assignment, pk.b_g1_query, threads) +
            pk.delta_g1 * s;
    std::span<const Fr> aux = assignment.subspan(pk.cs.num_public());
    G1 c = msm_sw<G1>(aux, pk.l_query, threads) +
           msm_sw<G1>(h, pk.h_query, threads) + a * s + b1 * r -
           pk.delta_g1 * (r * s);
    return {a, b, c};
}

bool verify(const VerificationKey& vk, std::span<const Fr> public_inputs,
            const SnarkProof& proof) {
    if (public_inputs.size() + 1 != vk.ic.size())
        throw std::invalid_argument("public input arity mismatch");
    if (!proof.a.is_on_curve() || !proof.c.is_on_curve() ||
        !proof.b.is_on_curve() || !proof.b.in_subgroup())
        return false;

    G1 pi = vk.ic[0] +
            msm_sw<G1>(public_inputs,
                       std::span<const G1>(vk.ic).subspan(1));
    std::array<G1, 4> ps{proof.a, -pi, -proof.c, -vk.alpha_g1};
    std::array<G2, 4> qs{proof.b, vk.gamma_g2, vk.delta_g2, vk.beta_g2};
    return pairing_product(ps, qs) == Fq12::one();
}

// ---- wire formats ----------------------------------------------------------

std::vector<uint8_t> SnarkProof::serialize() const {
    Writer w;
    write_magic(w, kProofMagic);
    w.g1(a);
    w.g2(b);
    w.g1(c);
    return std::move(w.out);
}

std::optional<SnarkProof> SnarkProof::deserialize(
    std::span<const uint8_t> bytes) {
    Reader r{bytes};
    if (!read_magic(r, kProofMagic)) return std::nullopt;
    SnarkProof p;
    p.a = r.g1();
    p.b = r.g2();
    p.c = r.g1();
    if (r.fail || r.pos != bytes.size()) return std::nullopt;
    if (!p.b.in_subgroup()) return std::nullopt;
    return p;
}

std::vector<uint8_t> VerificationKey::serialize() const {
    Writer w;
    write_magic(w, kVkMagic);
    w.g1(alpha_g1);
    w.g2(beta_g2);
    w.g2(gamma_g2);
    w.g2(delta_g2);
    w.u64(ic.size());
    for (const G1& p : ic) w.g1(p);
    return std::move(w.out);
}

std::optional<VerificationKey> VerificationKey::deserialize(
    std::span<const uint8_t> bytes) {
    Reader r{bytes};
    if (!read_magic(r, kVkMagic)) return std::nullopt;
    VerificationKey vk;
    vk.alpha_g1 = r.g1();
    vk.beta_g2 = r.g2();
    vk.gamma_g2 = r.g2();
    vk.delta_g2 = r.g2();
    uint64_t n = r.u64();
    if (r.fail || n == 0 || n > (1u << 24)) return std::nullopt;
    for (uint64_t i = 0; i < n && !r.fail; ++i) vk.ic.push_back(r.g1());
    if (r.fail || r.pos != bytes.size()) return std::nullopt;
    if (!vk.beta_g2.in_subgroup() || !vk.gamma_g2.in_subgroup() ||
        !vk.delta_g2.in_subgroup())
        return std::nullopt;
    return vk;
}

std::vector<uint8_t> ProvingKey::serialize() const {
    Writer w;
    write_magic(w, kPkMagic);
    write_cs(w, cs);
    w.u64(domain_size);
    w.g1(alpha_g1);
    w.g1(beta_g1);
    w.g1(delta_g1);
    w.g2(beta_g2);
    w.g2(delta_g2);
    auto put_g1s = [&](const std::vector<G1>& v) {
        w.u64(v.size());
        for (const G1& p : v) w.g1(p);
    };
    put_g1s(a_query);
    put_g1s(b_g1_query);
    put_g1s(l_query);
    put_g1s(h_query);
    w.u64(b_g2_query.size());
    for (const G2& p : b_g2_query) w.g2(p);
    return std::move(w.out);
}

std::optional<ProvingKey> ProvingKey::deserialize(
    std::span<const uint8_t> bytes) {
    Reader r{bytes};
    if (!read_magic(r, kPkMagic)) return std::nullopt;
    ProvingKey pk;
    if (!read_cs(r, pk.cs)) return std::nullopt;
    pk.domain_size = r.u64();
    pk.alpha_g1 = r.g1();
    pk.beta_g1 = r.g1();
    pk.delta_g1 = r.g1();
    pk.beta_g2 = r.g2();
    pk.delta_g2 = r.g2();
    auto get_g1s = [&](std::vector<G1>& v) {
        uint64_t n = r.u64();
        if (n > (1u << 26)) {
            r.fail = true;
            return;
        }
        for (uint64_t i = 0; i < n && !r.fail; ++i) v.push_back(r.g1());
    };
    get_g1s(pk.a_query);
    get_g1s(pk.b_g1_query);
    get_g1s(pk.l_query);
    get_g1s(pk.h_query);
    uint64_t n2 = r.u64();
    if (r.fail || n2 > (1u << 26)) return std::nullopt;
    for (uint64_t i = 0; i < n2 && !r.fail; ++i)
        pk.b_g2_query.push_back(r.g2());
    if (r.fail || r.pos != bytes.size()) return std::nullopt;
    return pk;
}

}  // namespace fort
