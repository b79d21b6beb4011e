#include "l2man/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace l2man {

namespace {

// Kahan compensated sum; uniform_interval relies on this summing m*(1/m) to 1.
double compensated_sum(const std::vector<double>& xs) {
    double sum = 0.0, c = 0.0;
    for (double x : xs) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace

ProbSpace::ProbSpace(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw InvalidSpec("ProbSpace needs at least one atom");
    }
    for (double p : weights_) {
        if (!(p > 0.0)) {
            throw NonPositiveWeight("atom weight must be positive");
        }
    }
    double sum = compensated_sum(weights_);
    if (std::abs(sum - 1.0) > kNormalizationTol) {
        throw NotNormalized("weights sum to " + std::to_string(sum));
    }
}

ProbSpace make_prob_space(std::vector<double> weights) {
    return ProbSpace(std::move(weights));
}

ProbSpace uniform_interval(std::size_t m) {
    if (m == 0) {
        throw InvalidSpec("uniform_interval needs m >= 1");
    }
    return ProbSpace(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

bool is_permutation(const std::vector<std::size_t>& perm) {
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t v : perm) {
        if (v >= perm.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

bool check_automorphism(const ProbSpace& space, const std::vector<std::size_t>& perm) {
    if (perm.size() != space.size()) {
        throw LengthMismatch("permutation length does not match atom count");
    }
    if (!is_permutation(perm)) return false;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (std::abs(space.weight(perm[i]) - space.weight(i)) > kWeightMatchTol) {
            return false;
        }
    }
    return true;
}

Automorphism::Automorphism(const ProbSpace& space, std::vector<std::size_t> perm)
    : perm_(std::move(perm)), weights_(space.weights()) {
    if (perm_.size() != space.size()) {
        throw LengthMismatch("permutation length does not match atom count");
    }
    if (!is_permutation(perm_)) {
        throw NotBijective("not a permutation of atom indices");
    }
    if (!check_automorphism(space, perm_)) {
        throw NotBijective("permutation is not measure-preserving");
    }
}

Automorphism Automorphism::identity(const ProbSpace& space) {
    std::vector<std::size_t> id(space.size());
    std::iota(id.begin(), id.end(), std::size_t{0});
    return Automorphism(space, std::move(id));
}

Automorphism Automorphism::compose(const Automorphism& other) const {
    if (perm_.size() != other.perm_.size()) {
        throw LengthMismatch("composing automorphisms of different spaces");
    }
    Automorphism out;
    out.weights_ = weights_;
    out.perm_.resize(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        out.perm_[i] = perm_[other.perm_[i]];
    }
    return out;
}

Automorphism Automorphism::inverse() const {
    Automorphism out;
    out.weights_ = weights_;
    out.perm_.resize(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        out.perm_[perm_[i]] = i;
    }
    return out;
}

DensityFn::DensityFn(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (v < 0.0 || std::isnan(v)) {
            throw InvalidSpec("density values must be nonnegative");
        }
    }
}

DensityFn DensityFn::ones(std::size_t n) {
    return DensityFn(std::vector<double>(n, 1.0));
}

DensityFn DensityFn::indicator(std::size_t n, const std::vector<std::size_t>& support) {
    std::vector<double> v(n, 0.0);
    for (std::size_t i : support) v.at(i) = 1.0;
    return DensityFn(std::move(v));
}

DensityFn pushforward_density(const ProbSpace& space, const std::vector<std::size_t>& map) {
    if (map.size() != space.size()) {
        throw LengthMismatch("index map length does not match atom count");
    }
    if (!is_permutation(map)) {
        throw NotBijective("index map is not a bijection");
    }
    // inverse[j] = i with map(i) = j
    std::vector<std::size_t> inverse(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) inverse[map[i]] = i;
    std::vector<double> values(map.size());
    for (std::size_t j = 0; j < map.size(); ++j) {
        values[j] = space.weight(inverse[j]) / space.weight(j);
    }
    return DensityFn(std::move(values));
}

Partition::Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks)
    : n_(n), blocks_(std::move(blocks)) {
    std::vector<bool> seen(n, false);
    std::size_t covered = 0;
    for (auto& block : blocks_) {
        if (block.empty()) {
            throw InvalidSpec("partition blocks must be nonempty");
        }
        std::sort(block.begin(), block.end());
        for (std::size_t i : block) {
            if (i >= n || seen[i]) {
                throw InvalidSpec("partition blocks must be disjoint subsets of the atoms");
            }
            seen[i] = true;
            ++covered;
        }
    }
    if (covered != n) {
        throw InvalidSpec("partition blocks must cover all atoms");
    }
    std::sort(blocks_.begin(), blocks_.end());
}

Partition Partition::trivial(std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return Partition(n, {all});
}

Partition Partition::discrete(std::size_t n) {
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
    return Partition(n, std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
    if (n_ != coarser.n_) return false;
    std::vector<std::size_t> block_of(n_);
    for (std::size_t b = 0; b < coarser.blocks_.size(); ++b) {
        for (std::size_t i : coarser.blocks_[b]) block_of[i] = b;
    }
    for (const auto& block : blocks_) {
        std::size_t home = block_of[block.front()];
        for (std::size_t i : block) {
            if (block_of[i] != home) return false;
        }
    }
    return true;
}

bool Partition::operator==(const Partition& other) const {
    return n_ == other.n_ && blocks_ == other.blocks_;
}

Partition common_refinement(const Partition& a, const Partition& b) {
    if (a.ground_size() != b.ground_size()) {
        throw SpaceMismatch("partitions over different spaces");
    }
    const std::size_t n = a.ground_size();
    std::vector<std::size_t> block_a(n), block_b(n);
    for (std::size_t x = 0; x < a.block_count(); ++x)
        for (std::size_t i : a.block(x)) block_a[i] = x;
    for (std::size_t y = 0; y < b.block_count(); ++y)
        for (std::size_t i : b.block(y)) block_b[i] = y;

    std::vector<std::vector<std::size_t>> cells(a.block_count() * b.block_count());
    for (std::size_t i = 0; i < n; ++i) {
        cells[block_a[i] * b.block_count() + block_b[i]].push_back(i);
    }
    std::vector<std::vector<std::size_t>> blocks;
    for (auto& cell : cells) {
        if (!cell.empty()) blocks.push_back(std::move(cell));
    }
    return Partition(n, std::move(blocks));
}

} // namespace l2man
