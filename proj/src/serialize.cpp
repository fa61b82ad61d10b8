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

#include "entlab/serialize.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace entlab {

namespace {

constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

constexpr int kSchemaVersion = 1;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Doubles are serialized as little-endian byte images; this codebase only
// targets little-endian hosts, which the build asserts.
static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

std::vector<unsigned char> matrix_bytes(const CMatrix& m) {
    std::vector<unsigned char> out;
    out.resize(size_t(m.rows()) * size_t(m.cols()) * 2 * sizeof(double));
    size_t pos = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            double re = m(r, c).real(), im = m(r, c).imag();
            std::memcpy(out.data() + pos, &re, sizeof(double));
            pos += sizeof(double);
            std::memcpy(out.data() + pos, &im, sizeof(double));
            pos += sizeof(double);
        }
    return out;
}

}  // namespace

std::string base64_encode(const unsigned char* data, size_t len) {
    std::string out;
    out.reserve((len + 2) / 3 * 4);
    for (size_t i = 0; i < len; i += 3) {
        uint32_t chunk = uint32_t(data[i]) << 16;
        int have = 1;
        if (i + 1 < len) {
            chunk |= uint32_t(data[i + 1]) << 8;
            have = 2;
        }
        if (i + 2 < len) {
            chunk |= uint32_t(data[i + 2]);
            have = 3;
        }
        out.push_back(kB64Alphabet[chunk >> 18 & 63]);
        out.push_back(kB64Alphabet[chunk >> 12 & 63]);
        out.push_back(have >= 2 ? kB64Alphabet[chunk >> 6 & 63] : '=');
        out.push_back(have >= 3 ? kB64Alphabet[chunk & 63] : '=');
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
    require(text.size() % 4 == 0, "base64: length must be a multiple of 4");
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        if (c == '=') return -1;
        throw std::invalid_argument("base64: invalid character");
    };
    std::vector<unsigned char> out;
    out.reserve(text.size() / 4 * 3);
    for (size_t i = 0; i < text.size(); i += 4) {
        int v[4];
        for (int k = 0; k < 4; ++k) v[k] = value_of(text[i + k]);
        uint32_t chunk = uint32_t(v[0]) << 18 | uint32_t(v[1]) << 12;
        out.push_back(chunk >> 16 & 255);
        if (v[2] >= 0) {
            chunk |= uint32_t(v[2]) << 6;
            out.push_back(chunk >> 8 & 255);
        }
        if (v[3] >= 0) {
            chunk |= uint32_t(v[3]);
            out.push_back(chunk & 255);
        }
    }
    return out;
}

json matrix_to_json(const CMatrix& m) {
    std::vector<unsigned char> bytes = matrix_bytes(m);
    return json{{"rows", m.rows()},
                {"cols", m.cols()},
                {"data", base64_encode(bytes.data(), bytes.size())}};
}

CMatrix matrix_from_json(const json& j) {
    Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    std::vector<unsigned char> bytes = base64_decode(j.at("data").get<std::string>());
    require(bytes.size() == size_t(rows) * size_t(cols) * 2 * sizeof(double),
            "matrix: payload size mismatch");
    CMatrix m(rows, cols);
    size_t pos = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            double re, im;
            std::memcpy(&re, bytes.data() + pos, sizeof(double));
            pos += sizeof(double);
            std::memcpy(&im, bytes.data() + pos, sizeof(double));
            pos += sizeof(double);
            m(r, c) = cdouble(re, im);
        }
    return m;
}

json rational_to_json(const Rational& r) {
    return json{{"num", boost::multiprecision::numerator(r).str()},
                {"den", boost::multiprecision::denominator(r).str()}};
}

Rational rational_from_json(const json& j) {
    boost::multiprecision::cpp_int num(j.at("num").get<std::string>());
    boost::multiprecision::cpp_int den(j.at("den").get<std::string>());
    require(den != 0, "rational: zero denominator");
    return Rational(num, den);
}

json to_json(const SmpQuantumProtocol& p) {
    json prep_a = json::array(), prep_b = json::array();
    for (const auto& r : p.prep_a) prep_a.push_back(matrix_to_json(r.mat));
    for (const auto& r : p.prep_b) prep_b.push_back(matrix_to_json(r.mat));
    return json{{"schema", kSchemaVersion}, {"kind", "smp"},        {"n", p.n},
                {"c", p.c},                {"prep_a", prep_a},      {"prep_b", prep_b},
                {"referee_effect", matrix_to_json(p.referee_effect)}};
}

SmpQuantumProtocol smp_from_json(const json& j) {
    require(j.at("kind") == "smp", "protocol: expected kind smp");
    int n = j.at("n").get<int>(), c = j.at("c").get<int>();
    std::vector<DensityMatrix> prep_a, prep_b;
    for (const auto& e : j.at("prep_a")) prep_a.emplace_back(c, matrix_from_json(e));
    for (const auto& e : j.at("prep_b")) prep_b.emplace_back(c, matrix_from_json(e));
    return SmpQuantumProtocol(n, c, std::move(prep_a), std::move(prep_b),
                              matrix_from_json(j.at("referee_effect")));
}

json to_json(const OneWayEntangledProtocol& p) {
    json alice = json::array();
    for (const auto& fam : p.alice) {
        json ops = json::array();
        for (const auto& op : fam.ops) ops.push_back(matrix_to_json(op));
        alice.push_back(std::move(ops));
    }
    json bob = json::array();
    for (const auto& row : p.bob) {
        json effects = json::array();
        for (const auto& f : row) effects.push_back(matrix_to_json(f));
        bob.push_back(std::move(effects));
    }
    return json{{"schema", kSchemaVersion},
                {"kind", "one_way"},
                {"n", p.n},
                {"c", p.c},
                {"d", p.d},
                {"shared", matrix_to_json(p.shared.mat)},
                {"alice", alice},
                {"bob", bob}};
}

OneWayEntangledProtocol one_way_from_json(const json& j) {
    require(j.at("kind") == "one_way", "protocol: expected kind one_way");
    int n = j.at("n").get<int>(), c = j.at("c").get<int>(), d = j.at("d").get<int>();
    DensityMatrix shared(2 * d, matrix_from_json(j.at("shared")));
    std::vector<MeasurementFamily> alice;
    for (const auto& fam : j.at("alice")) {
        std::vector<CMatrix> ops;
        std::vector<int> labels;
        for (const auto& op : fam) {
            labels.push_back(int(ops.size()));
            ops.push_back(matrix_from_json(op));
        }
        alice.emplace_back(d, std::move(labels), std::move(ops));
    }
    std::vector<std::vector<CMatrix>> bob;
    for (const auto& row : j.at("bob")) {
        std::vector<CMatrix> effects;
        for (const auto& f : row) effects.push_back(matrix_from_json(f));
        bob.push_back(std::move(effects));
    }
    return OneWayEntangledProtocol(n, c, d, std::move(shared), std::move(alice), std::move(bob));
}

json to_json(const TwoWayEntangledProtocol& p) {
    auto tables = [&](const std::vector<std::vector<std::vector<TwoOutcomeFamily>>>& t) {
        json rounds = json::array();
        for (const auto& per_prefix : t) {
            json prefixes = json::array();
            for (const auto& per_input : per_prefix) {
                json inputs = json::array();
                for (const auto& fam : per_input)
                    inputs.push_back(json{{"op0", matrix_to_json(fam.op0)},
                                          {"op1", matrix_to_json(fam.op1)}});
                prefixes.push_back(std::move(inputs));
            }
            rounds.push_back(std::move(prefixes));
        }
        return rounds;
    };
    return json{{"schema", kSchemaVersion},
                {"kind", "two_way"},
                {"n", p.n},
                {"d", p.d},
                {"m", p.m},
                {"rounds", p.rounds},
                {"shared", matrix_to_json(p.shared.mat)},
                {"alice", tables(p.alice)},
                {"bob", tables(p.bob)},
                {"accept", p.accept}};
}

TwoWayEntangledProtocol two_way_from_json(const json& j) {
    require(j.at("kind") == "two_way", "protocol: expected kind two_way");
    int n = j.at("n").get<int>(), d = j.at("d").get<int>(), m = j.at("m").get<int>();
    int rounds = j.at("rounds").get<int>();
    auto tables = [&](const json& t) {
        std::vector<std::vector<std::vector<TwoOutcomeFamily>>> out;
        for (const auto& per_prefix : t) {
            std::vector<std::vector<TwoOutcomeFamily>> prefixes;
            for (const auto& per_input : per_prefix) {
                std::vector<TwoOutcomeFamily> inputs;
                for (const auto& fam : per_input)
                    inputs.emplace_back(matrix_from_json(fam.at("op0")),
                                        matrix_from_json(fam.at("op1")));
                prefixes.push_back(std::move(inputs));
            }
            out.push_back(std::move(prefixes));
        }
        return out;
    };
    return TwoWayEntangledProtocol(n, d, m, rounds,
                                   DensityMatrix(2 * d, matrix_from_json(j.at("shared"))),
                                   tables(j.at("alice")), tables(j.at("bob")),
                                   j.at("accept").get<std::vector<uint32_t>>());
}

std::string bits_to_string(uint32_t bits, int n) {
    std::string out;
    for (int b = 0; b < n; ++b) out.push_back(bits >> b & 1 ? '1' : '0');
    return out;
}

uint32_t bits_from_string(const std::string& s) {
    require(s.size() <= 32, "bits: string too long");
    uint32_t out = 0;
    for (size_t b = 0; b < s.size(); ++b) {
        require(s[b] == '0' || s[b] == '1', "bits: invalid character");
        if (s[b] == '1') out |= uint32_t(1) << b;
    }
    return out;
}

std::string signs_to_string(const std::vector<int>& v) {
    std::string out;
    for (int e : v) {
        require(e == 1 || e == -1, "signs: entries must be +-1");
        out.push_back(e == 1 ? '0' : '1');
    }
    return out;
}

std::vector<int> signs_from_string(const std::string& s) {
    std::vector<int> out;
    for (char c : s) {
        require(c == '0' || c == '1', "signs: invalid character");
        out.push_back(c == '0' ? 1 : -1);
    }
    return out;
}

json to_json(const ForrInstance& inst) {
    return json{{"schema", kSchemaVersion},
                {"n", inst.n},
                {"x", signs_to_string(inst.x)},
                {"y", signs_to_string(inst.y)},
                {"label", inst.label}};
}

ForrInstance forr_instance_from_json(const json& j) {
    ForrInstance inst;
    inst.n = j.at("n").get<int>();
    inst.x = signs_from_string(j.at("x").get<std::string>());
    inst.y = signs_from_string(j.at("y").get<std::string>());
    inst.label = j.at("label").get<int>();
    require(int(inst.x.size()) == inst.n && int(inst.y.size()) == inst.n,
            "forr instance: length mismatch");
    return inst;
}

json to_json(const ForrXorInstance& inst) {
    json copies = json::array();
    for (const auto& c : inst.copies) copies.push_back(to_json(c));
    return json{{"schema", kSchemaVersion},
                {"k", inst.k},
                {"epsilon", inst.epsilon},
                {"copies", copies}};
}

ForrXorInstance forr_xor_from_json(const json& j) {
    std::vector<ForrInstance> copies;
    for (const auto& c : j.at("copies")) copies.push_back(forr_instance_from_json(c));
    return ForrXorInstance(j.at("epsilon").get<double>(), std::move(copies));
}

json to_json(const Matching& m) {
    json edges = json::array();
    for (auto [i, k] : m.edges) edges.push_back(json::array({i, k}));
    return json{{"n", m.n}, {"edges", edges}};
}

Matching matching_from_json(const json& j) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Matching(j.at("n").get<int>(), std::move(edges));
}

json to_json(const BhmInstance& inst) {
    return json{{"schema", kSchemaVersion},
                {"x", bits_to_string(inst.x, inst.matching.n)},
                {"matching", to_json(inst.matching)},
                {"y", bits_to_string(inst.y, inst.matching.m())},
                {"label", inst.label}};
}

BhmInstance bhm_instance_from_json(const json& j) {
    BhmInstance inst;
    inst.matching = matching_from_json(j.at("matching"));
    inst.x = bits_from_string(j.at("x").get<std::string>());
    inst.y = bits_from_string(j.at("y").get<std::string>());
    inst.label = j.at("label").get<int>();
    return inst;
}

namespace {

const char* kind_name(HardKind k) {
    switch (k) {
        case HardKind::N: return "N";
        case HardKind::Y: return "Y";
        case HardKind::MuPlus: return "mu_plus";
        case HardKind::MuMinus: return "mu_minus";
    }
    return "N";
}

}  // namespace

json to_json(const HardDistributionSpec& spec) {
    return json{{"schema", kSchemaVersion},
                {"kind", kind_name(spec.kind)},
                {"n", spec.n},
                {"m", spec.m},
                {"k", spec.k}};
}

HardDistributionSpec hard_spec_from_json(const json& j) {
    HardDistributionSpec spec;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "N") spec.kind = HardKind::N;
    else if (kind == "Y") spec.kind = HardKind::Y;
    else if (kind == "mu_plus") spec.kind = HardKind::MuPlus;
    else if (kind == "mu_minus") spec.kind = HardKind::MuMinus;
    else throw std::invalid_argument("hard spec: unknown kind");
    spec.n = j.at("n").get<int>();
    spec.m = j.at("m").get<int>();
    spec.k = j.at("k").get<int>();
    return spec;
}

json to_json(const Decomposition& dec) {
    json comps = json::array();
    for (const auto& c : dec.components)
        comps.push_back(json{{"coefficient", c.coefficient},
                             {"kind", c.kind == ComponentKind::Epr ? "epr" : "zero"},
                             {"i", c.i},
                             {"j", c.j},
                             {"phase", c.phase},
                             {"witness_a", matrix_to_json(c.witness_a.mat)},
                             {"witness_b", matrix_to_json(c.witness_b.mat)}});
    return json{{"schema", kSchemaVersion},
                {"d", dec.d},
                {"complex_extension", dec.complex_extension},
                {"components", comps}};
}

json to_json(const DecompositionReport& report) {
    return json{{"schema", kSchemaVersion},
                {"reconstruction_residual", report.reconstruction_residual},
                {"max_coefficient", report.max_coefficient},
                {"coefficient_bound", report.coefficient_bound},
                {"max_witness_residual", report.max_witness_residual},
                {"complex_extension", report.complex_extension},
                {"valid", report.valid}};
}

}  // namespace entlab
