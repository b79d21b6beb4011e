#pragma once

#include "l2man/isometry_group.hpp"

namespace l2man {

/// True iff f lives over a uniform grid (all weights equal).
bool is_grid_function(const L2Function& f);

/// The rescaling isomorphism L2(grid m, X^k) -> L2(grid k*m, sqrt(k) X):
/// output atom i*m + j carries factor i of input atom j, the cell-level
/// transcription of t in [i/k, (i+1)/k) -> f_i(kt - i). Distances are
/// preserved exactly as rearrangements of the same finite sum.
L2Function interleave(const L2Function& f, std::size_t k);

/// Inverse of interleave.
L2Function deinterleave(const L2Function& g, std::size_t k);

/// Grid automorphism fixing the outer quarters and swapping the middle two.
Automorphism quarter_swap(const ProbSpace& grid);

/// A non-rigid linear isometry of L2(grid m, R): rotates
/// e = sqrt(2) * chi_{first half} onto e' = chi_{all} inside their 2-plane
/// and fixes the orthogonal complement.
struct HilbertWitness {
    IsometryOracle oracle;
    L2Function e;
    L2Function e_prime;
    L2Function zero;
};

HilbertWitness hilbert_nonrigid(std::size_t m);

/// The reducible-target counterexample: interleave, quarter-swap the finer
/// grid, interleave back. An honest isometry of L2(grid m, M x M) that is
/// not of the semidirect form.
IsometryOracle r1_nonrigid(const ManifoldSpec& rigid_factor, std::size_t m);

/// Same composite with an arbitrary automorphism of the finer 2m-grid in
/// the middle; the quarter swap gives r1_nonrigid, the identity gives the
/// identity oracle.
IsometryOracle interleave_conjugate(const ManifoldSpec& rigid_factor, std::size_t m,
                                    const Automorphism& middle);

} // namespace l2man
