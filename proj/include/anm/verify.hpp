#ifndef ANM_VERIFY_HPP
#define ANM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace anm {

/// One oracle comparison: |observed - expected| <= tolerance.
struct VerifyCheck {
    std::string name;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Entropy identity: closed-form linear-Gaussian sides, numeric cubic and
/// linear checks at 1e5 Monte Carlo draws.
std::vector<VerifyCheck> verify_identity(std::uint64_t seed);

/// Quadrature against closed forms, KDE normalization, and resubstitution
/// accuracy at n = 1e4.
std::vector<VerifyCheck> verify_entropy(std::uint64_t seed);

} // namespace anm

#endif
