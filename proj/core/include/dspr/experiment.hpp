#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dspr/ga.hpp"
#include "dspr/oracle.hpp"
#include "dspr/topology.hpp"

namespace dspr {

enum class Scheme { Sga, Riga, Eiga, Mega, EigaMega };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);  // throws on unknown name

struct ExperimentConfig {
    RwpParams rwp;
    DynamicsSchedule schedule;
    GaParams ga;
    Scheme scheme = Scheme::Eiga;
    NodeId source = 0;
    NodeId destination = 1;
    int generations = 10;
    int replications = 1;
    std::uint64_t master_seed = 1;
    bool trace_memory = false;

    void validate() const;
};

struct SchemeSummary {
    std::vector<double> mean_quality;    // indexed by generation-1
    std::vector<double> median_quality;  // indexed by generation-1
    double offline_perf = 0.0;           // mean over replications
    double median_recovery = 0.0;        // generations; G_max sentinel when never
};

struct RunSummary {
    int generations = 0;
    double recovery_threshold = 0.9;
    std::map<std::string, SchemeSummary> per_scheme;
};

struct ExperimentResult {
    std::vector<GenerationRecord> records;
    RunSummary summary;
    std::string memory_trace;  // CSV, empty unless trace_memory
};

/// Runs `replications` seeded replications of one scheme. Replication r uses
/// two independent sub-streams derived from master_seed + r: one for the
/// topology and its changes, one for the GA. Same config + seed reproduces
/// the rows exactly.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Paired comparison: every config must differ from the first only in scheme
/// (and scheme-specific GA knobs). All schemes see identical topology and
/// change sequences per replication.
ExperimentResult compare_schemes(const std::vector<ExperimentConfig>& configs);

std::string records_to_csv(const std::vector<GenerationRecord>& records);
std::string summary_to_csv(const RunSummary& summary);

}  // namespace dspr
