#pragma once

#include <cstddef>
#include <vector>

#include "l2man/errors.hpp"

namespace l2man {

/// Finite probability space: n atoms with positive weights summing to 1.
/// Uniform grids over [0,1] are the quadrature model of the atomless part.
class ProbSpace {
public:
    explicit ProbSpace(std::vector<double> weights);

    std::size_t size() const { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

    bool operator==(const ProbSpace& other) const { return weights_ == other.weights_; }

private:
    std::vector<double> weights_;
};

/// Tolerance for |sum of weights - 1|.
inline constexpr double kNormalizationTol = 1e-12;
/// Tolerance for weight equality when matching atoms.
inline constexpr double kWeightMatchTol = 1e-12;

ProbSpace make_prob_space(std::vector<double> weights);

/// m equal atoms of weight 1/m; atom i stands for [(i-1)/m, i/m).
ProbSpace uniform_interval(std::size_t m);

/// Measure-preserving permutation of atom indices (0-based).
/// perm[i] is the image of atom i.
class Automorphism {
public:
    Automorphism(const ProbSpace& space, std::vector<std::size_t> perm);

    static Automorphism identity(const ProbSpace& space);

    std::size_t size() const { return perm_.size(); }
    std::size_t operator()(std::size_t i) const { return perm_[i]; }
    const std::vector<std::size_t>& perm() const { return perm_; }

    Automorphism compose(const Automorphism& other) const; // this after other: i -> this(other(i))
    Automorphism inverse() const;

    bool operator==(const Automorphism& other) const { return perm_ == other.perm_; }

private:
    Automorphism() = default;
    std::vector<std::size_t> perm_;
    std::vector<double> weights_;
};

bool is_permutation(const std::vector<std::size_t>& perm);

/// True iff p_{perm(i)} = p_i for all i (within tolerance).
bool check_automorphism(const ProbSpace& space, const std::vector<std::size_t>& perm);

/// Density per atom; nonnegative.
class DensityFn {
public:
    explicit DensityFn(std::vector<double> values);

    static DensityFn ones(std::size_t n);
    static DensityFn indicator(std::size_t n, const std::vector<std::size_t>& support);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

/// Radon-Nikodym derivative of the pushforward: values[j] = p_{map^{-1}(j)} / p_j.
DensityFn pushforward_density(const ProbSpace& space, const std::vector<std::size_t>& map);

/// Partition of {0..n-1} into disjoint blocks; blocks and their contents are kept sorted.
class Partition {
public:
    Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks);

    static Partition trivial(std::size_t n);
    static Partition discrete(std::size_t n);

    std::size_t ground_size() const { return n_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

    /// True if every block of this partition lies inside a block of `coarser`.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition& other) const;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<std::size_t>> blocks_;
};

/// All nonempty intersections A_i ∩ B_j.
Partition common_refinement(const Partition& a, const Partition& b);

} // namespace l2man
