#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asymsched/task_model.hpp"

namespace asymsched {

// Seeded instance generation; deterministic for a fixed seed. Generated
// instances always pass DAG validation, and the chains generator emits
// lengths sorted non-increasing.

enum class GeneratorKind { Chains, LayeredDag, RandomDag };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Chains;
    int n = 0;                      // chains / random-dag
    int r = 1;                      // chain count
    std::vector<int> layer_widths;  // layered-dag
    Rational edge_probability{1, 2};
    std::uint64_t seed = 0;
    std::vector<Rational> speeds;
};

Instance generate_instance(const GeneratorSpec& spec);

}  // namespace asymsched
