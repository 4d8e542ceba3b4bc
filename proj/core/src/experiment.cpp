#include "dspr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dspr/immigrants.hpp"
#include "dspr/memory.hpp"

namespace dspr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kConnectivityRetries = 100;
constexpr double kRecoveryThreshold = 0.9;

std::string fmt_real(double x) {
    if (x == kInf) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

Rng make_stream(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    return Rng(seq);
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::string path_to_string(const std::vector<NodeId>& path) {
    std::string out;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(path[i]);
    }
    return out;
}

bool uses_memory(Scheme scheme) { return scheme == Scheme::Mega || scheme == Scheme::EigaMega; }

}  // namespace

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Sga: return "sga";
        case Scheme::Riga: return "riga";
        case Scheme::Eiga: return "eiga";
        case Scheme::Mega: return "mega";
        case Scheme::EigaMega: return "eiga-mega";
    }
    throw std::logic_error("unknown scheme");
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "sga") return Scheme::Sga;
    if (name == "riga") return Scheme::Riga;
    if (name == "eiga") return Scheme::Eiga;
    if (name == "mega") return Scheme::Mega;
    if (name == "eiga-mega") return Scheme::EigaMega;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

void ExperimentConfig::validate() const {
    rwp.validate();
    schedule.validate();
    ga.validate();
    if (source == destination) throw std::invalid_argument("source must differ from destination");
    if (source < 0 || source >= rwp.node_count || destination < 0 || destination >= rwp.node_count)
        throw std::invalid_argument("source/destination out of node range");
    if (generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
}

namespace {

struct ReplicationRun {
    const ExperimentConfig& config;
    std::uint64_t rep_seed;
    int replication;
    Rng topo_rng;
    Rng ga_rng;
    TopologySnapshot graph;
    MobilityState mobility;
    OracleResult optimum;
    std::vector<GenerationRecord> records;
    std::vector<int> change_generations;
    std::string* memtrace;
    long walk_fallbacks = 0;

    ReplicationRun(const ExperimentConfig& cfg, int rep, std::string* trace)
        : config(cfg),
          rep_seed(cfg.master_seed + static_cast<std::uint64_t>(rep)),
          replication(rep),
          topo_rng(make_stream(rep_seed, 0)),
          ga_rng(make_stream(rep_seed, 1)),
          memtrace(trace) {}

    [[noreturn]] void abort_run(const std::string& what) {
        throw std::runtime_error("replication " + std::to_string(replication) + " (seed " +
                                 std::to_string(rep_seed) + "): " + what);
    }

    void make_initial_topology() {
        for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
            auto [snapshot, state] = generate_rwp_topology(config.rwp, topo_rng);
            if (ensure_sd_connected(snapshot, config.source, config.destination)) {
                graph = std::move(snapshot);
                mobility = std::move(state);
                return;
            }
        }
        abort_run("no s-d connected topology within " + std::to_string(kConnectivityRetries) + " draws");
    }

    void apply_change() {
        if (config.schedule.change_mode == ChangeMode::NodeToggle) {
            for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
                TopologySnapshot trial = graph;
                apply_node_toggle(trial, config.schedule.toggle_count, config.source,
                                  config.destination, topo_rng);
                recompute_edges(trial, config.rwp, topo_rng);
                if (ensure_sd_connected(trial, config.source, config.destination)) {
                    graph = std::move(trial);
                    return;
                }
            }
        } else {
            // Mobility cannot be rolled back; a failed attempt keeps moving.
            for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
                advance_mobility(mobility, config.rwp, config.schedule.mobility_dt, topo_rng);
                graph.positions = mobility.position;
                recompute_edges(graph, config.rwp, topo_rng);
                if (ensure_sd_connected(graph, config.source, config.destination)) {
                    ++graph.env_index;
                    return;
                }
            }
        }
        abort_run("environment change left s-d disconnected after " +
                  std::to_string(kConnectivityRetries) + " attempts");
    }

    void trace_memory(const MemoryStore& memory, const std::string& scheme, int t) {
        if (!memtrace) return;
        for (size_t i = 0; i < memory.entries.size(); ++i) {
            const MemoryEntry& e = memory.entries[i];
            *memtrace += scheme + ',' + std::to_string(replication) + ',' + std::to_string(t) +
                         ',' + std::to_string(i) + ',' + path_to_string(e.chromosome.path) + ',' +
                         fmt_real(e.stored_fitness) + ',' + (e.is_random_placeholder ? "1" : "0") +
                         '\n';
        }
    }

    void run() {
        const std::string scheme_name = to_string(config.scheme);
        make_initial_topology();
        optimum = dijkstra(graph, config.source, config.destination);

        Population population = init_population(graph, config.source, config.destination,
                                                config.ga, ga_rng, &walk_fallbacks);
        MemoryStore memory;
        if (uses_memory(config.scheme))
            memory = init_memory(config.ga.memory_size, graph, config.source, config.destination,
                                 ga_rng, &walk_fallbacks);

        const int n = config.ga.population_size;
        const int random_count =
            static_cast<int>(std::floor(config.ga.random_immigrant_ratio * n));
        const int elite_count =
            static_cast<int>(std::floor(config.ga.elitism_immigrant_ratio * n));

        int current_gen = 0;
        SchemeHook hook;
        switch (config.scheme) {
            case Scheme::Sga:
                break;
            case Scheme::Riga:
                hook = [&](Population& pop, const TopologySnapshot& g, const GaParams&, Rng& rng) {
                    auto batch = make_random_immigrants(g, config.source, config.destination,
                                                        random_count, rng, &walk_fallbacks);
                    replace_worst(pop, batch, g);
                };
                break;
            case Scheme::Eiga:
                hook = [&](Population& pop, const TopologySnapshot& g, const GaParams& p, Rng& rng) {
                    auto batch = make_elitism_immigrants(pop.elite, g, elite_count,
                                                         p.immigrant_mutation_prob, rng);
                    replace_worst(pop, batch, g);
                };
                break;
            case Scheme::Mega:
                hook = [&](Population& pop, const TopologySnapshot& g, const GaParams& p, Rng& rng) {
                    mega_generation_hook(pop, memory, g, current_gen, p, rng);
                };
                break;
            case Scheme::EigaMega:
                hook = [&](Population& pop, const TopologySnapshot& g, const GaParams& p, Rng& rng) {
                    eiga_mega_hook(pop, memory, g, current_gen, p, rng);
                };
                break;
        }

        int changes_done = 0;
        for (int t = 1; t <= config.generations; ++t) {
            current_gen = t;
            if (t > 1 && changes_done < config.schedule.total_changes &&
                (t - 1) % config.schedule.change_interval == 0) {
                apply_change();
                ++changes_done;
                optimum = dijkstra(graph, config.source, config.destination);
                change_generations.push_back(t);
            }

            evolve_one_generation(population, graph, config.ga, ga_rng, hook);

            const RouteChromosome& best = population.elite;
            GenerationRecord row;
            row.scheme = scheme_name;
            row.replication = replication;
            row.generation = t;
            row.env_index = graph.env_index;
            row.best_cost = path_cost(graph, best.path);
            row.best_fitness = fitness(graph, best);
            row.quality = quality(row.best_cost, optimum.cost);
            int feasible = 0;
            for (auto& member : population.members)
                if (evaluate(graph, member) > 0.0) ++feasible;
            row.feasible_fraction = static_cast<double>(feasible) / static_cast<double>(n);
            records.push_back(std::move(row));

            if (uses_memory(config.scheme)) trace_memory(memory, scheme_name, t);
        }
    }
};

void summarize_scheme(const ExperimentConfig& config,
                      const std::vector<std::vector<GenerationRecord>>& per_rep,
                      const std::vector<std::vector<int>>& change_gens, RunSummary& summary) {
    const int gens = config.generations;
    SchemeSummary out;
    out.mean_quality.resize(gens);
    out.median_quality.resize(gens);
    for (int t = 0; t < gens; ++t) {
        std::vector<double> qs;
        qs.reserve(per_rep.size());
        double total = 0.0;
        for (const auto& records : per_rep) {
            total += records[t].quality;
            qs.push_back(records[t].quality);
        }
        out.mean_quality[t] = total / static_cast<double>(per_rep.size());
        out.median_quality[t] = median(std::move(qs));
    }

    double offline_total = 0.0;
    for (const auto& records : per_rep) offline_total += offline_performance(records);
    out.offline_perf = offline_total / static_cast<double>(per_rep.size());

    std::vector<double> recoveries;
    for (size_t r = 0; r < per_rep.size(); ++r) {
        for (int g : change_gens[r]) {
            int recovered = -1;
            for (int t = g; t <= gens; ++t) {
                if (per_rep[r][t - 1].quality >= kRecoveryThreshold) {
                    recovered = t - g;
                    break;
                }
            }
            recoveries.push_back(recovered >= 0 ? recovered : gens);
        }
    }
    out.median_recovery = median(std::move(recoveries));

    summary.generations = gens;
    summary.recovery_threshold = kRecoveryThreshold;
    summary.per_scheme[to_string(config.scheme)] = std::move(out);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    std::vector<std::vector<GenerationRecord>> per_rep;
    std::vector<std::vector<int>> change_gens;
    for (int r = 0; r < config.replications; ++r) {
        ReplicationRun run(config, r, config.trace_memory ? &result.memory_trace : nullptr);
        run.run();
        result.records.insert(result.records.end(), run.records.begin(), run.records.end());
        per_rep.push_back(std::move(run.records));
        change_gens.push_back(std::move(run.change_generations));
    }
    summarize_scheme(config, per_rep, change_gens, result.summary);
    return result;
}

ExperimentResult compare_schemes(const std::vector<ExperimentConfig>& configs) {
    if (configs.empty()) throw std::invalid_argument("no configurations given");
    const ExperimentConfig& base = configs.front();
    for (const ExperimentConfig& c : configs) {
        const bool same =
            c.rwp.node_count == base.rwp.node_count && c.rwp.area_width == base.rwp.area_width &&
            c.rwp.area_height == base.rwp.area_height && c.rwp.radio_range == base.rwp.radio_range &&
            c.rwp.speed_min == base.rwp.speed_min && c.rwp.speed_max == base.rwp.speed_max &&
            c.rwp.pause_time == base.rwp.pause_time && c.rwp.cost_model == base.rwp.cost_model &&
            c.schedule.change_interval == base.schedule.change_interval &&
            c.schedule.change_mode == base.schedule.change_mode &&
            c.schedule.total_changes == base.schedule.total_changes &&
            c.source == base.source && c.destination == base.destination &&
            c.generations == base.generations && c.replications == base.replications &&
            c.master_seed == base.master_seed &&
            c.ga.population_size == base.ga.population_size &&
            c.ga.crossover_prob == base.ga.crossover_prob &&
            c.ga.mutation_prob == base.ga.mutation_prob;
        if (!same)
            throw std::invalid_argument("compared configurations may differ only in scheme settings");
    }
    ExperimentResult combined;
    for (const ExperimentConfig& c : configs) {
        ExperimentResult one = run_experiment(c);
        combined.records.insert(combined.records.end(), one.records.begin(), one.records.end());
        combined.memory_trace += one.memory_trace;
        combined.summary.generations = one.summary.generations;
        combined.summary.recovery_threshold = one.summary.recovery_threshold;
        for (auto& [name, s] : one.summary.per_scheme)
            combined.summary.per_scheme[name] = std::move(s);
    }
    return combined;
}

std::string records_to_csv(const std::vector<GenerationRecord>& records) {
    std::string out = "scheme,replication,generation,env_index,best_cost,best_fitness,quality,feasible_fraction\n";
    for (const auto& r : records) {
        out += r.scheme + ',' + std::to_string(r.replication) + ',' + std::to_string(r.generation) +
               ',' + std::to_string(r.env_index) + ',' + fmt_real(r.best_cost) + ',' +
               fmt_real(r.best_fitness) + ',' + fmt_real(r.quality) + ',' +
               fmt_real(r.feasible_fraction) + '\n';
    }
    return out;
}

std::string summary_to_csv(const RunSummary& summary) {
    std::string out = "scheme,generation,mean_quality,median_quality\n";
    for (const auto& [name, s] : summary.per_scheme) {
        for (int t = 1; t <= summary.generations; ++t) {
            out += name + ',' + std::to_string(t) + ',' + fmt_real(s.mean_quality[t - 1]) + ',' +
                   fmt_real(s.median_quality[t - 1]) + '\n';
        }
    }
    out += "scheme,offline_perf,median_recovery\n";
    for (const auto& [name, s] : summary.per_scheme)
        out += name + ',' + fmt_real(s.offline_perf) + ',' + fmt_real(s.median_recovery) + '\n';
    return out;
}

}  // namespace dspr
