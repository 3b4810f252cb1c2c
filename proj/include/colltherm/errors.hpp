// Copyright 2026 The colltherm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace colltherm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Error carrying the numerical magnitude that triggered it.
class MagnitudeError : public Error {
 public:
  MagnitudeError(const std::string& what, double magnitude)
      : Error(what + " (magnitude " + std::to_string(magnitude) + ")"),
        magnitude_(magnitude) {}

  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

class HermiticityViolation : public MagnitudeError {
 public:
  explicit HermiticityViolation(double m)
      : MagnitudeError("matrix is not Hermitian", m) {}
};

class TraceViolation : public MagnitudeError {
 public:
  explicit TraceViolation(double m)
      : MagnitudeError("trace differs from one", m) {}
};

class NegativityViolation : public MagnitudeError {
 public:
  explicit NegativityViolation(double m)
      : MagnitudeError("matrix has a negative eigenvalue", m) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class EigensolverFailure : public Error {
 public:
  EigensolverFailure(const std::string& what, long iterations)
      : Error(what + " after " + std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}

  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

/// The eigenvalue-one subspace of a channel has dimension > 1.
class DegenerateFixedPoint : public Error {
 public:
  explicit DegenerateFixedPoint(int multiplicity)
      : Error("fixed point is not unique: eigenvalue 1 has multiplicity " +
              std::to_string(multiplicity)),
        multiplicity_(multiplicity) {}

  int multiplicity() const noexcept { return multiplicity_; }

 private:
  int multiplicity_;
};

class ExceedsAncillaCap : public Error {
 public:
  ExceedsAncillaCap(int requested, int cap)
      : Error("requested " + std::to_string(requested) +
              " ancillas, cap is " + std::to_string(cap)) {}
};

class UnsupportedPrep : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

class NonSmooth : public MagnitudeError {
 public:
  explicit NonSmooth(double relative_disagreement)
      : MagnitudeError("Richardson levels disagree; state is not smooth in T",
                       relative_disagreement) {}
};

/// Derivative weight found on a pair of eigenvectors outside the support.
class SupportLeak : public MagnitudeError {
 public:
  explicit SupportLeak(double element)
      : MagnitudeError("derivative leaks out of the state's support", element) {}
};

}  // namespace colltherm
