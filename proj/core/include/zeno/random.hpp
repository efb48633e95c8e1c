#pragma once

#include <cstdint>
#include <random>

#include "zeno/common.hpp"

namespace zeno {

class SuperOp;
struct KrausSet;
struct LindbladGenerator;

// Seeded ensembles used by the harness, the check suites and the tests.
// All draws consume the passed engine only, so runs are reproducible.

Matrix random_ginibre(int rows, int cols, std::mt19937_64& rng);
Vector random_unit_vector(int d, std::mt19937_64& rng);
Matrix random_unitary(int d, std::mt19937_64& rng);
Matrix random_hermitian(int d, double scale, std::mt19937_64& rng);
Matrix random_density(int d, std::mt19937_64& rng);

/// Haar-ish random channel from a Stinespring isometry with `kraus_count` ops.
KrausSet random_channel_kraus(int d, int kraus_count, std::mt19937_64& rng);

/// Arbitrary superoperator with Ginibre entries of the given scale.
SuperOp random_superop(int d, double scale, std::mt19937_64& rng);

/// Random channel whose spectrum is {1} ∪ (disk of radius ≤ delta_max),
/// built from a randomly rotated pinching/depolarizing core plus a small
/// random channel admixture, retried until the gap is certified.
SuperOp random_gapped_channel(int d, double delta_max, std::mt19937_64& rng);

/// Random gapped quantum operation: alternates between gapped channels and
/// single-Kraus contractions U diag(1, c₂, …) U† with |cᵢ| ≤ delta_max.
SuperOp random_gapped_operation(int d, double delta_max, std::mt19937_64& rng);

/// Random GKLS generator: Hermitian Hamiltonian plus `jumps` Ginibre jump
/// operators, all of the given scale.
LindbladGenerator random_gkls(int d, int jumps, double scale, std::mt19937_64& rng);

}  // namespace zeno
