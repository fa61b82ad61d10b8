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

#ifndef ENTLAB_HARNESS_HPP
#define ENTLAB_HARNESS_HPP

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "entlab/entreduce.hpp"
#include "entlab/protocol.hpp"

namespace entlab {

/// Flat `key = value` configuration. Every key has a documented default;
/// files may override defaults but unknown keys and lines without '=' are
/// rejected so typos fail loudly.
struct ConfigEntry {
    std::string key, value, description;
};

struct Config {
    std::map<std::string, std::string> values;

    static const std::vector<ConfigEntry>& defaults();
    static Config from_defaults();
    static Config from_string(const std::string& text);
    static Config from_file(const std::string& path);

    long get_long(const std::string& key) const;
    double get_double(const std::string& key) const;
    const std::string& get_string(const std::string& key) const;
};

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// One harness run. Everything except the timestamp lives in the canonical
/// block; re-running with the same config, seed, and subcommand must
/// reproduce that block byte for byte regardless of the job count.
struct RunRecord {
    int schema_version = 1;
    std::string timestamp;
    std::string subcommand;
    uint64_t seed = 0;
    std::map<std::string, std::string> config;
    std::map<std::string, double> metrics;
    std::map<std::string, std::string> notes;
    std::map<std::string, bool> checks;
    std::vector<Table> tables;

    bool passed() const;
    nlohmann::json canonical_json() const;
    nlohmann::json full_json() const;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& known_subcommands();

/// Executes one subcommand at config-selected scales. Throws
/// std::invalid_argument for unknown subcommands or malformed config and
/// BudgetExceeded when `budget_seconds` > 0 is exceeded.
RunRecord run(const std::string& subcommand, const Config& cfg, uint64_t seed, int jobs);

/// Appends one full-record JSON line; existing content is never rewritten.
void append_run_log(const std::string& path, const RunRecord& rec);

std::string tables_to_csv(const RunRecord& rec);

/// Fixed-format float for table cells; shortest form is not needed, a stable
/// one is.
std::string format_cell(double v);

/// Runs body(0..total-1) on up to `jobs` workers. Bodies must confine writes
/// to their own index slot; aggregation order is then index order and the
/// thread layout cannot influence results.
void parallel_for(long total, int jobs, const std::function<void(long)>& body);

// Instance generators shared by the harness and the test suites. All draw
// only from the passed rng.

SmpQuantumProtocol random_smp_protocol(int n, int c, std::mt19937_64& rng);
TwoOutcomeFamily random_two_outcome_family(int qubits, std::mt19937_64& rng);
TwoWayEntangledProtocol random_two_way_protocol(int n, int d, int m, int rounds,
                                                std::mt19937_64& rng);
EntangledSmpProtocol random_entangled_smp(int n, int d, std::mt19937_64& rng);
/// shape selects a family: 0 uniform in [-1,1], 1 near-zero (small mean
/// absolute value), 2 +-1 signs, 3 sparse.
BooleanFunctionTable random_bounded_table(int n, int shape, std::mt19937_64& rng);
MatrixValuedFunction random_matrix_function(int n, int c, std::mt19937_64& rng);

/// d = 1 pair: identity / phase-flip encodings of one input bit per player on
/// a shared Bell state, judged by (|Phi+><Phi+| - |Phi-><Phi-|)/3. The
/// expectation is exactly +-1/3, so the entanglement-free compilation lands
/// at +-1/48.
EntangledSmpProtocol reference_entangled_smp();

/// One-way counterpart: Alice forwards her input bit as the classical
/// message, Bob applies +-I/3 on parity, shared Bell state. Expectation
/// +-1/3 again; the quantized compilation keeps it exact because Bell-state
/// entries fit in the 5d-bit grid.
OneWayEntangledProtocol reference_one_way();

/// Exhaustive-search advantage of one-bit classical protocols on the n = 4,
/// m = 1 matching distribution, frozen as a rational string.
extern const char kClassicalGoldenAdvantage[];

}  // namespace entlab

#endif
