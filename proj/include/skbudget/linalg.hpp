/*
 * Copyright 2026 The skbudget Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <vector>

namespace skbudget {

class BandedMatrix;

struct BandedSolveResult {
    /// ||A||_inf * ||A^{-1} ones||_inf; a cheap lower bound on the condition
    /// number, used only as a guard against near-singular systems.
    double condition_estimate = 0.0;
};

/// Solves A x = b by banded LU with partial pivoting; the matrix is factored
/// in place and rhs is overwritten with the solution. Throws NumericalError
/// on a zero pivot.
BandedSolveResult banded_solve(BandedMatrix& a, std::vector<double>& rhs);

/// Square matrix with kl sub- and ku super-diagonals. Storage reserves kl
/// extra superdiagonals for the fill-in of partial pivoting, so a dense
/// matrix is the special case kl = ku = n - 1.
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const { return n_; }
    std::size_t lower_bandwidth() const { return kl_; }
    std::size_t upper_bandwidth() const { return ku_; }

    /// Mutable access inside the (kl, ku) band; other entries are fixed zeros.
    double& at(std::size_t i, std::size_t j);
    double get(std::size_t i, std::size_t j) const;

    double norm_inf() const;

private:
    friend BandedSolveResult banded_solve(BandedMatrix&, std::vector<double>&);
    bool in_store(std::size_t i, std::size_t j) const {
        return j + kl_ >= i && j <= i + ku_ + kl_ && j < n_;
    }
    double& store(std::size_t i, std::size_t j) {
        return data_[i * width_ + (j + kl_ - i)];
    }
    double store(std::size_t i, std::size_t j) const {
        return data_[i * width_ + (j + kl_ - i)];
    }

    std::size_t n_, kl_, ku_, width_;
    std::vector<double> data_;
};

} // namespace skbudget
