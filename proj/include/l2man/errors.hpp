#pragma once

#include <stdexcept>
#include <string>

namespace l2man {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// measure_space
struct NonPositiveWeight : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct NotBijective : Error { using Error::Error; };
struct SpaceMismatch : Error { using Error::Error; };

// manifold
struct InvalidPoint : Error { using Error::Error; };
struct NonUniqueGeodesic : Error { using Error::Error; };
struct DegenerateVertex : Error { using Error::Error; };
struct VariantMismatch : Error { using Error::Error; };
struct UnsupportedVariant : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };

// l2_space
struct ManifoldMismatch : Error { using Error::Error; };
struct IdenticalEndpoints : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct MismatchedBasepoint : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct EmptyOrFullSubset : Error { using Error::Error; };
struct NotAProduct : Error { using Error::Error; };

// isometry_group
struct NonRigid : Error { using Error::Error; };
struct AmbiguousWitness : Error { using Error::Error; };
struct NotAnIsometry : Error { using Error::Error; };

// affine_maps
struct DegenerateProbe : Error { using Error::Error; };
struct InconsistentConstants : Error { using Error::Error; };

// gallery
struct DivisibilityError : Error { using Error::Error; };

// cli
struct ConfigParse : Error { using Error::Error; };

} // namespace l2man
