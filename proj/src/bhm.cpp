// Copyright 2026 The entlab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entlab/bhm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "entlab/qcore.hpp"

namespace entlab {

namespace {

using boost::multiprecision::cpp_int;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

cpp_int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    cpp_int num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

void enumerate_rec(int n, int left, int min_first, uint32_t used,
                   std::vector<std::pair<int, int>>& acc, std::vector<Matching>& out) {
    if (left == 0) {
        out.emplace_back(n, acc);
        return;
    }
    for (int i = min_first; i < n; ++i) {
        if (used >> i & 1) continue;
        for (int j = i + 1; j < n; ++j) {
            if (used >> j & 1) continue;
            acc.emplace_back(i, j);
            enumerate_rec(n, left - 1, i + 1, used | (1u << i) | (1u << j), acc, out);
            acc.pop_back();
        }
    }
}

// Visits every total-size-`size` subset of `bits` coordinates in
// lexicographic order; returns false when the visitor stops the scan.
template <typename F>
bool for_each_subset_of_size(int bits, int size, F&& visit) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        uint64_t mask = 0;
        for (int i : idx) mask |= uint64_t(1) << i;
        if (!visit(mask)) return false;
        int pos = size - 1;
        while (pos >= 0 && idx[pos] == bits - size + pos) --pos;
        if (pos < 0) return true;
        ++idx[pos];
        for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
}

// Per-copy moment under N: Pr_M[endpoints of the sy edges equal sx], with the
// matching list shared across lookups.
struct CopyMoment {
    const std::vector<Matching>& all;
    std::map<std::pair<uint32_t, uint32_t>, Rational> memo;

    Rational operator()(uint32_t sx, uint32_t sy) {
        auto key = std::make_pair(sx, sy);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        long hits = 0;
        for (const Matching& mt : all) {
            uint32_t cover = 0;
            for (int e = 0; e < mt.m(); ++e)
                if (sy >> e & 1) cover |= (1u << mt.edges[e].first) | (1u << mt.edges[e].second);
            if (cover == sx) ++hits;
        }
        Rational r(hits, long(all.size()));
        memo.emplace(key, r);
        return r;
    }
};

Rational mixed_moment(const HardDistributionSpec& spec, const std::vector<uint32_t>& sx,
                      const std::vector<uint32_t>& sy, CopyMoment& base) {
    int k = spec.k;
    std::vector<Rational> n_part(k);
    std::vector<int> sy_parity(k);
    for (int i = 0; i < k; ++i) {
        n_part[i] = base(sx[i], sy[i]);
        sy_parity[i] = std::popcount(sy[i]) & 1;
    }
    switch (spec.kind) {
        case HardKind::N: {
            Rational r = 1;
            for (int i = 0; i < k; ++i) r *= n_part[i];
            return r;
        }
        case HardKind::Y: {
            Rational r = 1;
            for (int i = 0; i < k; ++i) r *= sy_parity[i] ? -n_part[i] : n_part[i];
            return r;
        }
        default: {
            int want = spec.kind == HardKind::MuMinus ? 1 : 0;
            Rational total = 0;
            for (uint32_t kset = 0; kset < (1u << k); ++kset) {
                if ((std::popcount(kset) & 1) != want) continue;
                Rational term = 1;
                for (int i = 0; i < k; ++i) {
                    bool flip = (kset >> i & 1) && sy_parity[i];
                    term *= flip ? -n_part[i] : n_part[i];
                }
                total += term;
            }
            return total / (1 << (k - 1));
        }
    }
}

}  // namespace

Matching::Matching(int n_, std::vector<std::pair<int, int>> edges_)
    : n(n_), edges(std::move(edges_)) {
    require(n >= 2 && n <= 26, "Matching: vertex count out of range");
    require(2 * int(edges.size()) <= n, "Matching: too many edges");
    uint32_t used = 0;
    for (auto& [i, j] : edges) {
        require(0 <= i && i < j && j < n, "Matching: edge endpoints must satisfy 0 <= i < j < n");
        uint32_t bits = (1u << i) | (1u << j);
        require((used & bits) == 0, "Matching: edges must be disjoint");
        used |= bits;
    }
}

uint32_t apply_matching(const Matching& mt, uint32_t x) {
    uint32_t y = 0;
    for (int e = 0; e < mt.m(); ++e) {
        auto [i, j] = mt.edges[e];
        y |= (((x >> i) ^ (x >> j)) & 1u) << e;
    }
    return y;
}

int label_of(uint32_t x, const Matching& mt, uint32_t y) {
    uint32_t mx = apply_matching(mt, x);
    uint32_t full = (1u << mt.m()) - 1;
    if (y == mx) return +1;
    if (y == (mx ^ full)) return -1;
    return 0;
}

std::vector<BhmInstance> sample(const HardDistributionSpec& spec, std::mt19937_64& rng) {
    require(spec.k >= 1 && spec.k <= 8, "sample: copy count out of range");
    uint32_t flip_copies = 0;
    switch (spec.kind) {
        case HardKind::N: break;
        case HardKind::Y: flip_copies = (1u << spec.k) - 1; break;
        default: {
            int want = spec.kind == HardKind::MuMinus ? 1 : 0;
            // k-1 free bits; the last copy's membership fixes the parity.
            uint32_t r = spec.k > 1 ? uint32_t(rng() & ((1u << (spec.k - 1)) - 1)) : 0;
            uint32_t last = uint32_t((std::popcount(r) & 1) ^ want);
            flip_copies = r | (last << (spec.k - 1));
        }
    }
    std::vector<BhmInstance> out;
    out.reserve(spec.k);
    uint32_t full = (1u << spec.m) - 1;
    for (int i = 0; i < spec.k; ++i) {
        BhmInstance inst;
        inst.x = uint32_t(rng() & ((1u << spec.n) - 1));
        inst.matching = sample_matching(spec.n, spec.m, rng);
        bool flip = flip_copies >> i & 1;
        inst.y = apply_matching(inst.matching, inst.x) ^ (flip ? full : 0);
        inst.label = flip ? -1 : +1;
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<Matching> enumerate_matchings(int n, int m) {
    require(n >= 2 && n <= 12, "enumerate_matchings: vertex count out of range");
    require(m >= 0 && 2 * m <= n, "enumerate_matchings: bad edge count");
    std::vector<Matching> out;
    std::vector<std::pair<int, int>> acc;
    enumerate_rec(n, m, 0, 0, acc, out);
    return out;
}

Matching sample_matching(int n, int m, std::mt19937_64& rng) {
    require(2 * m <= n, "sample_matching: bad edge count");
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int e = 0; e < m; ++e)
        edges.emplace_back(std::min(perm[2 * e], perm[2 * e + 1]),
                           std::max(perm[2 * e], perm[2 * e + 1]));
    std::sort(edges.begin(), edges.end());
    return Matching(n, std::move(edges));
}

Rational moment(const HardDistributionSpec& spec, const std::vector<uint32_t>& sx,
                const std::vector<uint32_t>& sy) {
    require(int(sx.size()) == spec.k && int(sy.size()) == spec.k,
            "moment: need one index mask per copy");
    std::vector<Matching> all = enumerate_matchings(spec.n, spec.m);
    CopyMoment base{all, {}};
    return mixed_moment(spec, sx, sy, base);
}

namespace {

std::optional<MomentCounterexample> scan_size(int n, int m, int k, int size, CopyMoment& base,
                                              bool want_mismatch_only) {
    int per = n + m;
    int bits = k * per;
    HardDistributionSpec plus{HardKind::MuPlus, n, m, k};
    HardDistributionSpec minus{HardKind::MuMinus, n, m, k};
    std::optional<MomentCounterexample> found;
    for_each_subset_of_size(bits, size, [&](uint64_t mask) {
        std::vector<uint32_t> sx(k), sy(k);
        for (int i = 0; i < k; ++i) {
            uint64_t copy = (mask >> (i * per)) & ((uint64_t(1) << per) - 1);
            sx[i] = uint32_t(copy & ((1u << n) - 1));
            sy[i] = uint32_t(copy >> n);
        }
        Rational p = mixed_moment(plus, sx, sy, base);
        Rational q = mixed_moment(minus, sx, sy, base);
        if (p != q) {
            found = MomentCounterexample{size, sx, sy, p, q};
            return false;
        }
        return true;
    });
    (void)want_mismatch_only;
    return found;
}

}  // namespace

MomentReport verify_moment_agreement(int n, int m, int k, int max_size) {
    require(k * (n + m) <= 24, "verify_moment_agreement: index space too large");
    std::vector<Matching> all = enumerate_matchings(n, m);
    CopyMoment base{all, {}};
    for (int size = 0; size <= max_size; ++size) {
        auto bad = scan_size(n, m, k, size, base, true);
        if (bad) return MomentReport{false, bad};
    }
    return MomentReport{true, std::nullopt};
}

std::optional<MomentCounterexample> find_moment_counterexample(int n, int m, int k,
                                                               int start_size) {
    require(k * (n + m) <= 24, "find_moment_counterexample: index space too large");
    std::vector<Matching> all = enumerate_matchings(n, m);
    CopyMoment base{all, {}};
    for (int size = start_size; size <= k * (n + m); ++size) {
        auto bad = scan_size(n, m, k, size, base, true);
        if (bad) return bad;
    }
    return std::nullopt;
}

std::optional<std::vector<uint32_t>> matches(const std::vector<Matching>& ms,
                                             const std::vector<uint32_t>& s) {
    require(ms.size() == s.size(), "matches: need one vertex mask per matching");
    std::vector<uint32_t> t(ms.size(), 0);
    for (size_t i = 0; i < ms.size(); ++i) {
        uint32_t cover = 0;
        for (int e = 0; e < ms[i].m(); ++e) {
            auto [a, b] = ms[i].edges[e];
            uint32_t bits = (1u << a) | (1u << b);
            if ((s[i] & bits) == bits) {
                t[i] |= 1u << e;
                cover |= bits;
            }
        }
        if (cover != s[i]) return std::nullopt;
    }
    return t;
}

CorrelationAudit correlation_identity_audit(const Matching& mt, uint32_t s, uint32_t w) {
    int n = mt.n;
    require(s < (1u << n), "correlation_identity_audit: vertex mask out of range");
    require(w < (1u << mt.m()), "correlation_identity_audit: edge mask out of range");
    long signed_count = 0;
    for (uint32_t x = 0; x < (1u << n); ++x)
        if (apply_matching(mt, x) == w)
            signed_count += (std::popcount(x & s) & 1) ? -1 : +1;
    CorrelationAudit audit;
    audit.lhs = Rational(signed_count, long(1) << n);
    auto t = matches({mt}, {s});
    audit.matched = t.has_value();
    if (t) {
        int sign = (std::popcount(w & (*t)[0]) & 1) ? -1 : +1;
        audit.rhs = Rational(sign, long(1) << mt.m());
    } else {
        audit.rhs = 0;
    }
    audit.equal = audit.lhs == audit.rhs;
    return audit;
}

Rational match_probability(int n, int m, const std::vector<int>& blocks) {
    Rational out = 1;
    for (int l : blocks) {
        require(l >= 0 && 2 * l <= n, "match_probability: bad block size");
        out *= Rational(binomial(m, l), binomial(n, 2 * l));
    }
    return out;
}

Rational match_frequency_enumerated(int n, int m, const std::vector<int>& blocks) {
    std::vector<Matching> all = enumerate_matchings(n, m);
    Rational out = 1;
    for (int l : blocks) {
        require(l >= 0 && 2 * l <= n, "match_frequency_enumerated: bad block size");
        uint32_t s = (1u << (2 * l)) - 1;
        long hits = 0;
        for (const Matching& mt : all)
            if (matches({mt}, {s})) ++hits;
        out *= Rational(hits, long(all.size()));
    }
    return out;
}

double match_frequency_sampled(int n, int m, const std::vector<int>& blocks, int samples,
                               std::mt19937_64& rng) {
    int hits = 0;
    for (int trial = 0; trial < samples; ++trial) {
        bool all_hit = true;
        for (int l : blocks) {
            uint32_t s = (1u << (2 * l)) - 1;
            Matching mt = sample_matching(n, m, rng);
            if (!matches({mt}, {s})) {
                all_hit = false;
                break;
            }
        }
        if (all_hit) ++hits;
    }
    return double(hits) / samples;
}

Matching greedy_complete(const Matching& mt) {
    require(mt.n % 2 == 0, "greedy_complete: need an even vertex count");
    uint32_t used = 0;
    for (auto& [i, j] : mt.edges) used |= (1u << i) | (1u << j);
    std::vector<std::pair<int, int>> edges = mt.edges;
    std::vector<int> free;
    for (int v = 0; v < mt.n; ++v)
        if (!(used >> v & 1)) free.push_back(v);
    for (size_t i = 0; i + 1 < free.size(); i += 2) edges.emplace_back(free[i], free[i + 1]);
    return Matching(mt.n, std::move(edges));
}

QuantumRoundResult quantum_round(uint32_t x, const Matching& mt, std::mt19937_64& rng) {
    int n = mt.n;
    require(n >= 2 && std::has_single_bit(uint32_t(n)), "quantum_round: n must be a power of two");
    int q = std::countr_zero(uint32_t(n));
    Matching full = greedy_complete(mt);

    // Phase-encoded maximally entangled state (1/sqrt(n)) sum_i x_i |i>|i>.
    CVector amps = CVector::Zero(Eigen::Index(n) * n);
    double scale = 1.0 / std::sqrt(double(n));
    for (int i = 0; i < n; ++i) amps(Eigen::Index(i) * n + i) = (x >> i & 1) ? -scale : scale;
    StateVector psi(2 * q, std::move(amps));

    // Second-register projectors, one per completion edge.
    std::vector<int> reg_a(q), reg_b(q);
    for (int t = 0; t < q; ++t) {
        reg_a[t] = t;
        reg_b[t] = q + t;
    }
    std::vector<CMatrix> ops;
    std::vector<int> labels;
    for (int e = 0; e < full.m(); ++e) {
        auto [i, j] = full.edges[e];
        CMatrix p = CMatrix::Zero(n, n);
        p(i, i) = 1.0;
        p(j, j) = 1.0;
        ops.push_back(std::move(p));
        labels.push_back(e);
    }
    auto outcomes = measure(psi, MeasurementFamily(q, std::move(labels), std::move(ops)), reg_b);

    double total = 0.0;
    for (const auto& o : outcomes) total += o.prob;
    double pick = std::uniform_real_distribution<double>(0.0, total)(rng);
    size_t chosen = outcomes.size() - 1;
    for (size_t e = 0; e < outcomes.size(); ++e) {
        if (pick < outcomes[e].prob) {
            chosen = e;
            break;
        }
        pick -= outcomes[e].prob;
    }

    UnitaryOp h = hadamard_all(q);
    StateVector after = apply(h, apply(h, *outcomes[chosen].post, reg_a), reg_b);
    double pick2 = std::uniform_real_distribution<double>(0.0, after.amps.squaredNorm())(rng);
    Eigen::Index idx = after.dim() - 1;
    for (Eigen::Index i = 0; i < after.dim(); ++i) {
        double p = std::norm(after.amps(i));
        if (pick2 < p) {
            idx = i;
            break;
        }
        pick2 -= p;
    }

    QuantumRoundResult r;
    r.edge_index = int(chosen);
    r.edge_in_matching = r.edge_index < mt.m();
    if (!r.edge_in_matching) r.edge_index = -1;
    r.i = full.edges[chosen].first;
    r.j = full.edges[chosen].second;
    r.a = uint32_t(idx / n);
    r.b = uint32_t(idx % n);
    r.parity = uint32_t(std::popcount((uint32_t(r.i) ^ uint32_t(r.j)) & (r.a ^ r.b)) & 1);
    return r;
}

int default_reps_per_copy(double alpha, int k) {
    require(alpha > 0.0 && alpha <= 0.5, "default_reps_per_copy: alpha must lie in (0, 1/2]");
    require(k >= 1, "default_reps_per_copy: bad copy count");
    return int(std::ceil(std::log2(10.0 * k) / (2.0 * alpha)));
}

int referee_decide(const std::vector<BhmInstance>& instances, int reps_per_copy,
                   std::mt19937_64& rng) {
    require(!instances.empty() && reps_per_copy >= 1, "referee_decide: bad arguments");
    int product = 1;
    for (const BhmInstance& inst : instances) {
        int vote = 0;
        for (int rep = 0; rep < reps_per_copy; ++rep) {
            QuantumRoundResult r = quantum_round(inst.x, inst.matching, rng);
            if (!r.edge_in_matching) continue;
            uint32_t y_bit = inst.y >> r.edge_index & 1;
            vote = (r.parity == y_bit) ? +1 : -1;
            break;
        }
        if (vote == 0) vote = (rng() & 1) ? +1 : -1;
        product *= vote;
    }
    return product;
}

Rational delta_az(int n, int m, int k, const std::vector<uint32_t>& a_set) {
    require(n * k <= 20 && m * k <= 20, "delta_az: problem too large");
    require(!a_set.empty(), "delta_az: empty message set");
    std::vector<Matching> all = enumerate_matchings(n, m);
    size_t tuples = 1;
    for (int i = 0; i < k; ++i) {
        tuples *= all.size();
        require(tuples <= 200000, "delta_az: too many matching tuples");
    }

    uint32_t x_mask = (1u << n) - 1;
    size_t y_space = size_t(1) << (m * k);
    std::vector<long> diff(y_space);
    Rational total = 0;

    std::vector<size_t> pick(k, 0);
    for (size_t t = 0; t < tuples; ++t) {
        size_t rest = t;
        for (int i = 0; i < k; ++i) {
            pick[i] = rest % all.size();
            rest /= all.size();
        }
        std::fill(diff.begin(), diff.end(), 0);
        for (uint32_t x : a_set) {
            uint32_t base = 0;
            for (int i = 0; i < k; ++i) {
                uint32_t xi = (x >> (i * n)) & x_mask;
                base |= apply_matching(all[pick[i]], xi) << (i * m);
            }
            for (uint32_t kset = 0; kset < (1u << k); ++kset) {
                uint32_t flip = 0;
                for (int i = 0; i < k; ++i)
                    if (kset >> i & 1) flip |= ((1u << m) - 1) << (i * m);
                long sign = (std::popcount(kset) & 1) ? -1 : +1;
                diff[base ^ flip] += sign;
            }
        }
        long l1 = 0;
        for (long d : diff) l1 += std::abs(d);
        total += Rational(l1, long(a_set.size()) << (k - 1));
    }
    return total / long(tuples);
}

OneWayBruteForce brute_force_one_way(int n, int m, int c) {
    require(n >= 2 && n <= 4, "brute_force_one_way: n must be 2..4");
    require(c == 0 || c == 1, "brute_force_one_way: c must be 0 or 1");
    std::vector<Matching> all = enumerate_matchings(n, m);
    uint32_t inputs = 1u << n;
    uint32_t full_y = (1u << m) - 1;
    std::vector<std::vector<uint32_t>> y_of(all.size(), std::vector<uint32_t>(inputs));
    for (size_t mi = 0; mi < all.size(); ++mi)
        for (uint32_t x = 0; x < inputs; ++x) y_of[mi][x] = apply_matching(all[mi], x);

    // Optimal advantage of a partition is sum over parts, matchings, and y of
    // |#{x in part : Mx = y} - #{x in part : Mx = not y}| / (2 * 2^n * #M).
    auto part_score = [&](uint64_t part) {
        long score = 0;
        std::vector<long> hist(1u << m);
        for (size_t mi = 0; mi < all.size(); ++mi) {
            std::fill(hist.begin(), hist.end(), 0);
            for (uint32_t x = 0; x < inputs; ++x)
                if (part >> x & 1) ++hist[y_of[mi][x]];
            for (uint32_t y = 0; y <= full_y; ++y) score += std::abs(hist[y] - hist[y ^ full_y]);
        }
        return score;
    };

    uint64_t space = uint64_t(1) << inputs;
    long best = part_score(space - 1);
    uint64_t best_mask = space - 1;
    if (c == 1) {
        for (uint64_t a = 1; a < space - 1; ++a) {
            long s = part_score(a) + part_score((space - 1) ^ a);
            if (s > best) {
                best = s;
                best_mask = a;
            }
        }
    }
    OneWayBruteForce out;
    out.advantage = Rational(best, 2 * long(inputs) * long(all.size()));
    for (uint32_t x = 0; x < inputs; ++x)
        if (best_mask >> x & 1) out.best_part.push_back(x);
    return out;
}

}  // namespace entlab
