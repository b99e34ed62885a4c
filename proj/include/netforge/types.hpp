#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace netforge {

using Real = double;

// Dense aliases. Matrices are row-major so in-memory buffers map 1:1 onto the
// row-major tensor containers used on disk.
template <class T = Real>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class T = Real>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Mat = MatX<Real>;
using Vec = VecX<Real>;

using NodeId = int;

inline constexpr int kEmbeddingDim = 128;
using Embedding128 = Eigen::Matrix<Real, kEmbeddingDim, 1>;

// Finite stand-in for the -inf entries of attention masks; keeps arithmetic
// total while still underflowing to exactly zero through a softmax.
inline constexpr Real kMaskBlocked = -1e9;

// Continuous time jumps are normalized by this constant and clipped to 1.
inline constexpr Real kMaxDuration = 50.0;

inline constexpr int kActionTypes = 32;
inline constexpr int kTargetSlots = 100;

}  // namespace netforge
