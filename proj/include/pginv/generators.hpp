#pragma once

#include "pginv/pg.hpp"
#include "pginv/triples.hpp"

namespace pginv {

// Seeded constructions used by the CLI `gen` command, the test suites and
// the acceptance matrix. Everything is deterministic per seed.

struct GeneratedHom {
  LinMap map;
  bool star = false;    // *-preserving by construction
  bool unital = false;  // J(1) = 1
};

enum class HomKind {
  star_auto,      // blockwise u x u* / u x^t u*, block permutation, outer unitary
  similarity,     // blockwise g x g^-1 / g x^t g^-1 with well-conditioned g
  corner_star,    // non-unital *-embedding into a larger algebra
};

// A Jordan homomorphism out of `domain`. The codomain is the domain itself
// except for corner embeddings, which enlarge blocks.
GeneratedHom generate_jordan_hom(const AlgebraSpec& domain, HomKind kind, std::uint64_t seed);

// Seeded mixture of the three kinds.
GeneratedHom generate_jordan_hom(const AlgebraSpec& domain, std::uint64_t seed);

enum class PairKind {
  star,             // (J, J) for a *-Jordan homomorphism J
  invertible_unit,  // Phi(1) invertible: J unital, phi1 = g^-1
  corner,           // Phi(1) a proper partial isometry
  general,          // phi1 = T(1) g^-1 for well-conditioned g
  scaled,           // (2 J, J/2): normalized but never contractive/symmetric
};

// Normalized pairs built constructively through reconstruct_from_factor
// (except `scaled`, which is scaled directly from a star pair).
PgPair generate_normalized_pair(const AlgebraSpec& domain, PairKind kind, std::uint64_t seed);

// Diagonal normalized pair C^n -> C^m with pairwise disjoint supports and
// reciprocal coefficients; includes empty supports when m < 2n.
PgPair generate_diagonal_pair(int n, int m, std::uint64_t seed);

// Idempotent in M_4 via similarity S diag(1,..,1,0,..,0) S^-1. Every tenth
// seed uses a unitary S, which yields an orthogonal projection (norm one).
AlgebraElement generate_idempotent_m4(std::uint64_t seed);

}  // namespace pginv
