#include "asymsched/generator.hpp"

#include <algorithm>
#include <numeric>

#include "asymsched/errors.hpp"
#include "asymsched/lprelax.hpp"

namespace asymsched {

namespace {

struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        return mix64(state);
    }
    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }
    bool chance(const Rational& p) {
        // draw/2^64 < p, exact.
        std::uint64_t draw = next();
        mpz_class lhs(mpz_class(draw >> 32) << 32);
        lhs += static_cast<unsigned long>(draw & 0xffffffffULL);
        return lhs * p.den() < p.num() << 64;
    }
};

}  // namespace

Instance generate_instance(const GeneratorSpec& spec) {
    if (spec.speeds.empty()) throw InvalidSpec("generator needs machine speeds");
    Rng rng{mix64(spec.seed)};

    switch (spec.kind) {
        case GeneratorKind::Chains: {
            if (spec.n < 0 || spec.r <= 0) throw InvalidSpec("chains generator needs n >= 0, r >= 1");
            if (spec.n < spec.r) throw InvalidSpec("chains generator needs n >= r");
            if (spec.n == 0) {
                Instance inst;
                inst.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(0, {}));
                inst.machines = std::make_shared<MachineConfig>(spec.speeds);
                inst.chains = std::make_shared<ChainSet>(decompose_chains(*inst.graph));
                return inst;
            }
            // One task per chain, then spread the rest uniformly.
            std::vector<int> lengths(spec.r, 1);
            for (int i = 0; i < spec.n - spec.r; ++i)
                lengths[rng.below(static_cast<std::uint64_t>(spec.r))] += 1;
            std::sort(lengths.rbegin(), lengths.rend());
            return make_chain_instance(lengths, spec.speeds);
        }
        case GeneratorKind::LayeredDag: {
            int n = 0;
            for (int w : spec.layer_widths) {
                if (w <= 0) throw InvalidSpec("layer widths must be positive");
                n += w;
            }
            std::vector<std::pair<int, int>> edges;
            int base = 0;
            for (size_t layer = 0; layer + 1 < spec.layer_widths.size(); ++layer) {
                int w0 = spec.layer_widths[layer];
                int w1 = spec.layer_widths[layer + 1];
                for (int i = 0; i < w0; ++i)
                    for (int j = 0; j < w1; ++j)
                        if (rng.chance(spec.edge_probability))
                            edges.emplace_back(base + i, base + w0 + j);
                base += w0;
            }
            Instance inst;
            inst.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(n, std::move(edges)));
            inst.machines = std::make_shared<MachineConfig>(spec.speeds);
            inst.chains = std::make_shared<ChainSet>(decompose_chains(*inst.graph));
            return inst;
        }
        case GeneratorKind::RandomDag: {
            if (spec.n < 0) throw InvalidSpec("random-dag generator needs n >= 0");
            std::vector<std::pair<int, int>> edges;
            for (int u = 0; u < spec.n; ++u)
                for (int v = u + 1; v < spec.n; ++v)
                    if (rng.chance(spec.edge_probability)) edges.emplace_back(u, v);
            Instance inst;
            inst.graph =
                std::make_shared<TaskGraph>(TaskGraph::validate_dag(spec.n, std::move(edges)));
            inst.machines = std::make_shared<MachineConfig>(spec.speeds);
            inst.chains = std::make_shared<ChainSet>(decompose_chains(*inst.graph));
            return inst;
        }
    }
    throw InvalidSpec("unknown generator kind");
}

}  // namespace asymsched
