#include "fort/bulletproofs.hpp"

#include <stdexcept>

namespace fort {

namespace {

constexpr std::string_view kProtocolLabel = "fort/rangeproof/v1";

bool valid_bit_width(unsigned n) {
    return n == 8 || n == 16 || n == 32 || n == 64;
}

size_t next_pow2(size_t v) {
    size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

size_t log2_exact(size_t v) {
    size_t k = 0;
    while ((size_t(1) << k) < v) ++k;
    if ((size_t(1) << k) != v) throw std::invalid_argument("not a power of two");
    return k;
}

void absorb_u64(Transcript& t, std::string_view label, uint64_t v) {
    uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = uint8_t(v >> (8 * i));
    t.absorb(label, std::span<const uint8_t>(b, 8));
}

Fl inner(std::span<const Fl> a, std::span<const Fl> b) {
    Fl acc = Fl::zero();
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

std::vector<Fl> powers(const Fl& x, size_t count) {
    std::vector<Fl> out(count);
    Fl acc = Fl::one();
    for (size_t i = 0; i < count; ++i) {
        out[i] = acc;
        acc *= x;
    }
    return out;
}

// (z - z^2)<1, y^N> - sum_j z^{j+2} (2^n - 1)
Fl delta(unsigned n, size_t m, const Fl& y, const Fl& z) {
    size_t total = n * m;
    Fl sum_y = Fl::zero();
    Fl acc = Fl::one();
    for (size_t i = 0; i < total; ++i) {
        sum_y += acc;
        acc *= y;
    }
    Fl two_n = Fl::from_u64(n == 64 ? ~uint64_t(0)
                                    : (uint64_t(1) << n) - 1);
    Fl z2 = z.square();
    Fl d = (z - z2) * sum_y;
    Fl zj = z2 * z;
    for (size_t j = 0; j < m; ++j) {
        d -= zj * two_n;
        zj *= z;
    }
    return d;
}

void put_point(std::vector<uint8_t>& out, const EdPoint& p) {
    auto enc = p.compress();
    out.insert(out.end(), enc.begin(), enc.end());
}

void put_scalar(std::vector<uint8_t>& out, const Fl& s) {
    uint8_t b[32];
    s.to_bytes(b);
    out.insert(out.end(), b, b + 32);
}

}  // namespace

BpGens BpGens::create(size_t total_bits) {
    BpGens gens;
    gens.pc = PedersenParams::defaults();
    gens.u = derive_generators("fort/bp/u", 1)[0];
    auto all = derive_generators("fort/bp", 2 * total_bits);
    gens.g_vec.assign(all.begin(), all.begin() + total_bits);
    gens.h_vec.assign(all.begin() + total_bits, all.end());
    return gens;
}

RangeStatement make_range_statement(std::vector<Commitment> commitments,
                                    unsigned bit_width) {
    if (!valid_bit_width(bit_width))
        throw std::invalid_argument("bit width must be 8, 16, 32 or 64");
    if (commitments.empty())
        throw std::invalid_argument("no commitments");
    RangeStatement st;
    st.real_count = commitments.size();
    st.bit_width = bit_width;
    size_t m = next_pow2(commitments.size());
    // dummy slots commit to value 0 with blinding 0, i.e. the identity
    commitments.resize(m, Commitment{EdPoint()});
    st.commitments = std::move(commitments);
    st.gens = BpGens::create(bit_width * m);
    return st;
}

std::pair<size_t, size_t> proof_size_elements(unsigned bit_width, size_t m) {
    if (!valid_bit_width(bit_width) || m == 0)
        throw std::invalid_argument("invalid proof shape");
    size_t total = bit_width * next_pow2(m);
    return {4 + 2 * log2_exact(total), 5};
}

InnerProductProof prove_inner_product(Transcript& transcript,
                                      std::span<const EdPoint> g_vec,
                                      std::span<const EdPoint> h_vec,
                                      const EdPoint& q,
                                      std::vector<Fl> a, std::vector<Fl> b) {
    size_t n = a.size();
    if (b.size() != n || g_vec.size() != n || h_vec.size() != n || n == 0)
        throw std::invalid_argument("inner-product vector length mismatch");
    log2_exact(n);  // throws on non-power-of-two

    std::vector<EdPoint> g(g_vec.begin(), g_vec.end());
    std::vector<EdPoint> h(h_vec.begin(), h_vec.end());
    InnerProductProof proof;
    while (n > 1) {
        size_t half = n / 2;
        auto a_lo = std::span<const Fl>(a).first(half);
        auto a_hi = std::span<const Fl>(a).subspan(half, half);
        auto b_lo = std::span<const Fl>(b).first(half);
        auto b_hi = std::span<const Fl>(b).subspan(half, half);

        std::vector<Fl> ls, rs;
        std::vector<EdPoint> lp, rp;
        ls.reserve(n + 1);
        lp.reserve(n + 1);
        for (size_t i = 0; i < half; ++i) {
            ls.push_back(a_lo[i]);
            lp.push_back(g[half + i]);
            rs.push_back(a_hi[i]);
            rp.push_back(g[i]);
        }
        for (size_t i = 0; i < half; ++i) {
            ls.push_back(b_hi[i]);
            lp.push_back(h[i]);
            rs.push_back(b_lo[i]);
            rp.push_back(h[half + i]);
        }
        ls.push_back(inner(a_lo, b_hi));
        lp.push_back(q);
        rs.push_back(inner(a_hi, b_lo));
        rp.push_back(q);
        EdPoint l_term = msm(ls, lp);
        EdPoint r_term = msm(rs, rp);

        transcript.absorb_point("ipp-l", l_term);
        transcript.absorb_point("ipp-r", r_term);
        Fl u = transcript.challenge_scalar<Fl>("ipp-u");
        Fl u_inv = u.inverse();
        proof.l_terms.push_back(l_term);
        proof.r_terms.push_back(r_term);

        for (size_t i = 0; i < half; ++i) {
            a[i] = a_lo[i] * u + a_hi[i] * u_inv;
            b[i] = b_lo[i] * u_inv + b_hi[i] * u;
            g[i] = g[i] * u_inv + g[half + i] * u;
            h[i] = h[i] * u + h[half + i] * u_inv;
        }
        a.resize(half);
        b.resize(half);
        g.resize(half);
        h.resize(half);
        n = half;
    }
    proof.a = a[0];
    proof.b = b[0];
    return proof;
}

namespace {

// Replays the folding challenges and returns, per original index i, the
// product of challenges that multiplies g_i in the fully folded base.
std::vector<Fl> fold_coefficients(Transcript& transcript,
                                  const InnerProductProof& proof, size_t n,
                                  std::vector<Fl>& challenges,
                                  std::vector<Fl>& challenges_inv) {
    for (size_t k = 0; k < proof.l_terms.size(); ++k) {
        transcript.absorb_point("ipp-l", proof.l_terms[k]);
        transcript.absorb_point("ipp-r", proof.r_terms[k]);
        challenges.push_back(transcript.challenge_scalar<Fl>("ipp-u"));
    }
    challenges_inv = challenges;
    batch_invert(challenges_inv);

    size_t rounds = challenges.size();
    std::vector<Fl> s(n);
    Fl s0 = Fl::one();
    for (const Fl& ci : challenges_inv) s0 *= ci;
    s[0] = s0;
    for (size_t i = 1; i < n; ++i) {
        // highest set bit of i selects the round whose challenge flips sign
        size_t lg = 0;
        while ((size_t(2) << lg) <= i) ++lg;
        size_t k = rounds - 1 - lg;
        s[i] = s[i - (size_t(1) << lg)] * challenges[k].square();
    }
    return s;
}

}  // namespace

bool verify_inner_product(Transcript& transcript,
                          std::span<const EdPoint> g_vec,
                          std::span<const EdPoint> h_vec, const EdPoint& q,
                          const EdPoint& p_commit,
                          const InnerProductProof& proof) {
    size_t n = g_vec.size();
    if (h_vec.size() != n || n == 0) return false;
    size_t rounds = 0;
    for (size_t v = n; v > 1; v /= 2) {
        if (v & 1) return false;
        ++rounds;
    }
    if (proof.l_terms.size() != rounds || proof.r_terms.size() != rounds)
        return false;

    std::vector<Fl> challenges, challenges_inv;
    std::vector<Fl> s =
        fold_coefficients(transcript, proof, n, challenges, challenges_inv);

    // P + sum u_k^2 L_k + sum u_k^-2 R_k == a<s,g> + b<s^-1,h> + ab q
    std::vector<Fl> scalars;
    std::vector<EdPoint> points;
    scalars.reserve(2 * n + 2 * rounds + 2);
    points.reserve(2 * n + 2 * rounds + 2);
    for (size_t i = 0; i < n; ++i) {
        scalars.push_back(proof.a * s[i]);
        points.push_back(g_vec[i]);
    }
    for (size_t i = 0; i < n; ++i) {
        scalars.push_back(proof.b * s[i].inverse());
        points.push_back(h_vec[i]);
    }
    scalars.push_back(proof.a * proof.b);
    points.push_back(q);
    for (size_t k = 0; k < rounds; ++k) {
        scalars.push_back(-challenges[k].square());
        points.push_back(proof.l_terms[k]);
        scalars.push_back(-challenges_inv[k].square());
        points.push_back(proof.r_terms[k]);
    }
    return msm(scalars, points) == p_commit;
}

RangeProof prove_range(const RangeStatement& statement,
                       std::span<const Fl> values,
                       std::span<const Fl> blindings, Rng& rng,
                       unsigned threads) {
    const unsigned n = statement.bit_width;
    const size_t m = statement.commitments.size();
    if (!valid_bit_width(n) || m != next_pow2(m))
        throw std::invalid_argument("malformed range statement");
    if (values.size() != statement.real_count ||
        blindings.size() != statement.real_count)
        throw std::invalid_argument("witness count mismatch");
    const size_t total = n * m;
    const BpGens& gens = statement.gens;
    if (gens.g_vec.size() != total || gens.h_vec.size() != total)
        throw std::invalid_argument("generator count mismatch");

    std::vector<Fl> v(values.begin(), values.end());
    std::vector<Fl> gamma(blindings.begin(), blindings.end());
    v.resize(m, Fl::zero());
    gamma.resize(m, Fl::zero());
    for (size_t j = 0; j < m; ++j) {
        if (v[j].to_u256().bit_length() > n)
            throw std::domain_error("value out of range for bit width");
        if (commit(gens.pc, v[j], gamma[j]) != statement.commitments[j])
            throw std::invalid_argument("commitment does not open to witness");
    }

    Transcript transcript(kProtocolLabel);
    absorb_u64(transcript, "bit-width", n);
    absorb_u64(transcript, "count", m);
    for (const Commitment& c : statement.commitments)
        transcript.absorb_point("commitment", c.point);

    // bit decomposition: a_l holds the bits, a_r = a_l - 1
    std::vector<Fl> a_l(total), a_r(total);
    for (size_t j = 0; j < m; ++j) {
        U256 bits = v[j].to_u256();
        for (unsigned i = 0; i < n; ++i) {
            bool bit = bits.bit(i);
            a_l[j * n + i] = bit ? Fl::one() : Fl::zero();
            a_r[j * n + i] = bit ? Fl::zero() : -Fl::one();
        }
    }

    Fl alpha = rng.next_scalar<Fl>();
    Fl rho = rng.next_scalar<Fl>();
    std::vector<Fl> s_l(total), s_r(total);
    for (Fl& x : s_l) x = rng.next_scalar<Fl>();
    for (Fl& x : s_r) x = rng.next_scalar<Fl>();
    Fl tau1 = rng.next_scalar<Fl>();
    Fl tau2 = rng.next_scalar<Fl>();

    auto vector_commit = [&](const Fl& blind, std::span<const Fl> lhs,
                             std::span<const Fl> rhs) {
        std::vector<Fl> scalars;
        std::vector<EdPoint> points;
        scalars.reserve(2 * total + 1);
        points.reserve(2 * total + 1);
        scalars.push_back(blind);
        points.push_back(gens.pc.h);
        for (size_t i = 0; i < total; ++i) {
            scalars.push_back(lhs[i]);
            points.push_back(gens.g_vec[i]);
        }
        for (size_t i = 0; i < total; ++i) {
            scalars.push_back(rhs[i]);
            points.push_back(gens.h_vec[i]);
        }
        return msm(scalars, points, threads);
    };

    RangeProof proof;
    proof.a_commit = vector_commit(alpha, a_l, a_r);
    proof.s_commit = vector_commit(rho, s_l, s_r);
    transcript.absorb_point("vector-commit-a", proof.a_commit);
    transcript.absorb_point("vector-commit-s", proof.s_commit);
    Fl y = transcript.challenge_scalar<Fl>("y");
    Fl z = transcript.challenge_scalar<Fl>("z");

    // l(X) = a_l - z*1 + s_l X
    // r(X) = y^N o (a_r + z*1 + s_r X) + sum_j z^{1+j} d_j
    std::vector<Fl> y_pow = powers(y, total);
    std::vector<Fl> z_pow = powers(z, m + 2);  // z_pow[j] = z^j
    Fl two = Fl::from_u64(2);
    std::vector<Fl> l0(total), r0(total), r1(total);
    for (size_t j = 0; j < m; ++j) {
        Fl two_i = Fl::one();
        for (unsigned i = 0; i < n; ++i) {
            size_t idx = j * n + i;
            l0[idx] = a_l[idx] - z;
            r0[idx] = y_pow[idx] * (a_r[idx] + z) + z_pow[j + 2] * two_i;
            r1[idx] = y_pow[idx] * s_r[idx];
            two_i *= two;
        }
    }
    Fl t1 = inner(l0, r1) + inner(s_l, r0);
    Fl t2 = inner(s_l, r1);

    proof.t1 = gens.pc.g * t1 + gens.pc.h * tau1;
    proof.t2 = gens.pc.g * t2 + gens.pc.h * tau2;
    transcript.absorb_point("t1", proof.t1);
    transcript.absorb_point("t2", proof.t2);
    Fl x = transcript.challenge_scalar<Fl>("x");

    proof.tau_x = tau1 * x + tau2 * x.square();
    for (size_t j = 0; j < m; ++j) proof.tau_x += z_pow[j + 2] * gamma[j];
    proof.mu = alpha + rho * x;
    std::vector<Fl> l_vec(total), r_vec(total);
    for (size_t i = 0; i < total; ++i) {
        l_vec[i] = l0[i] + s_l[i] * x;
        r_vec[i] = r0[i] + r1[i] * x;
    }
    proof.t_hat = inner(l_vec, r_vec);

    transcript.absorb_scalar("tau-x", proof.tau_x);
    transcript.absorb_scalar("mu", proof.mu);
    transcript.absorb_scalar("t-hat", proof.t_hat);
    Fl w = transcript.challenge_scalar<Fl>("ipp-base");
    EdPoint q = gens.u * w;

    // fold over g and h' where h'_i = y^-i h_i, so r sits over plain bases
    std::vector<Fl> y_inv_pow = y_pow;
    batch_invert(y_inv_pow);
    std::vector<EdPoint> h_prime(total);
    for (size_t i = 0; i < total; ++i)
        h_prime[i] = gens.h_vec[i] * y_inv_pow[i];
    proof.ipp = prove_inner_product(transcript, gens.g_vec, h_prime, q,
                                    std::move(l_vec), std::move(r_vec));
    return proof;
}

bool verify_range(const RangeStatement& statement, const RangeProof& proof,
                  unsigned threads) {
    const unsigned n = statement.bit_width;
    const size_t m = statement.commitments.size();
    if (!valid_bit_width(n) || m == 0 || m != next_pow2(m)) return false;
    const size_t total = n * m;
    const BpGens& gens = statement.gens;
    if (gens.g_vec.size() != total || gens.h_vec.size() != total) return false;
    size_t rounds = log2_exact(total);
    if (proof.ipp.l_terms.size() != rounds ||
        proof.ipp.r_terms.size() != rounds)
        return false;

    Transcript transcript(kProtocolLabel);
    absorb_u64(transcript, "bit-width", n);
    absorb_u64(transcript, "count", m);
    for (const Commitment& c : statement.commitments)
        transcript.absorb_point("commitment", c.point);
    transcript.absorb_point("vector-commit-a", proof.a_commit);
    transcript.absorb_point("vector-commit-s", proof.s_commit);
    Fl y = transcript.challenge_scalar<Fl>("y");
    Fl z = transcript.challenge_scalar<Fl>("z");
    transcript.absorb_point("t1", proof.t1);
    transcript.absorb_point("t2", proof.t2);
    Fl x = transcript.challenge_scalar<Fl>("x");
    transcript.absorb_scalar("tau-x", proof.tau_x);
    transcript.absorb_scalar("mu", proof.mu);
    transcript.absorb_scalar("t-hat", proof.t_hat);
    Fl w = transcript.challenge_scalar<Fl>("ipp-base");

    std::vector<Fl> challenges, challenges_inv;
    std::vector<Fl> s = fold_coefficients(transcript, proof.ipp, total,
                                          challenges, challenges_inv);
    // weight folding the polynomial identity and the inner-product check
    // into one MSM; derived after every proof element is absorbed
    Fl batch = transcript.challenge_scalar<Fl>("batch");

    std::vector<Fl> y_pow = powers(y, total);
    std::vector<Fl> y_inv_pow = y_pow;
    batch_invert(y_inv_pow);
    std::vector<Fl> z_pow = powers(z, m + 2);
    Fl two = Fl::from_u64(2);

    std::vector<Fl> scalars;
    std::vector<EdPoint> points;
    scalars.reserve(2 * total + 2 * rounds + m + 7);
    points.reserve(2 * total + 2 * rounds + m + 7);

    scalars.push_back(proof.t_hat - delta(n, m, y, z));
    points.push_back(gens.pc.g);
    scalars.push_back(proof.tau_x + batch * proof.mu);
    points.push_back(gens.pc.h);
    for (size_t j = 0; j < m; ++j) {
        scalars.push_back(-z_pow[j + 2]);
        points.push_back(statement.commitments[j].point);
    }
    scalars.push_back(-x);
    points.push_back(proof.t1);
    scalars.push_back(-x.square());
    points.push_back(proof.t2);
    scalars.push_back(-batch);
    points.push_back(proof.a_commit);
    scalars.push_back(-batch * x);
    points.push_back(proof.s_commit);

    std::vector<Fl> s_inv = s;
    batch_invert(s_inv);
    for (size_t i = 0; i < total; ++i) {
        scalars.push_back(batch * (proof.ipp.a * s[i] + z));
        points.push_back(gens.g_vec[i]);
    }
    for (size_t j = 0; j < m; ++j) {
        Fl two_i = Fl::one();
        for (unsigned i = 0; i < n; ++i) {
            size_t idx = j * n + i;
            Fl coeff = proof.ipp.b * s_inv[idx] * y_inv_pow[idx] - z -
                       z_pow[j + 2] * two_i * y_inv_pow[idx];
            scalars.push_back(batch * coeff);
            points.push_back(gens.h_vec[idx]);
            two_i *= two;
        }
    }
    scalars.push_back(batch * w * (proof.ipp.a * proof.ipp.b - proof.t_hat));
    points.push_back(gens.u);
    for (size_t k = 0; k < rounds; ++k) {
        scalars.push_back(-batch * challenges[k].square());
        points.push_back(proof.ipp.l_terms[k]);
        scalars.push_back(-batch * challenges_inv[k].square());
        points.push_back(proof.ipp.r_terms[k]);
    }
    return msm(scalars, points, threads).is_identity();
}

std::vector<uint8_t> RangeProof::serialize() const {
    std::vector<uint8_t> out;
    out.reserve((9 + 2 * ipp.l_terms.size()) * 32);
    put_point(out, a_commit);
    put_point(out, s_commit);
    put_point(out, t1);
    put_point(out, t2);
    put_scalar(out, tau_x);
    put_scalar(out, mu);
    put_scalar(out, t_hat);
    for (const EdPoint& p : ipp.l_terms) put_point(out, p);
    for (const EdPoint& p : ipp.r_terms) put_point(out, p);
    put_scalar(out, ipp.a);
    put_scalar(out, ipp.b);
    return out;
}

std::optional<RangeProof> RangeProof::deserialize(
    std::span<const uint8_t> bytes) {
    if (bytes.size() % 32 != 0) return std::nullopt;
    size_t words = bytes.size() / 32;
    if (words < 9 || (words - 9) % 2 != 0) return std::nullopt;
    size_t rounds = (words - 9) / 2;

    size_t pos = 0;
    auto take_point = [&]() -> std::optional<EdPoint> {
        std::array<uint8_t, 32> buf;
        std::memcpy(buf.data(), bytes.data() + 32 * pos++, 32);
        return EdPoint::decompress(buf);
    };
    auto take_scalar = [&]() -> std::optional<Fl> {
        auto s = Fl::from_bytes(bytes.data() + 32 * pos);
        ++pos;
        return s;
    };

    RangeProof proof;
    auto a = take_point(), s = take_point(), t1p = take_point(),
         t2p = take_point();
    if (!a || !s || !t1p || !t2p) return std::nullopt;
    proof.a_commit = *a;
    proof.s_commit = *s;
    proof.t1 = *t1p;
    proof.t2 = *t2p;
    auto tx = take_scalar(), mu_s = take_scalar(), th = take_scalar();
    if (!tx || !mu_s || !th) return std::nullopt;
    proof.tau_x = *tx;
    proof.mu = *mu_s;
    proof.t_hat = *th;
    for (size_t k = 0; k < rounds; ++k) {
        auto p = take_point();
        if (!p) return std::nullopt;
        proof.ipp.l_terms.push_back(*p);
    }
    for (size_t k = 0; k < rounds; ++k) {
        auto p = take_point();
        if (!p) return std::nullopt;
        proof.ipp.r_terms.push_back(*p);
    }
    auto fa = take_scalar(), fb = take_scalar();
    if (!fa || !fb) return std::nullopt;
    proof.ipp.a = *fa;
    proof.ipp.b = *fb;
    return proof;
}

}  // namespace fort
