// Copyright 2026 The qunc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUNC_ERRORS_HPP
#define QUNC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qunc {

// Base of everything the library throws on a violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An observable with |a| = 0 (a multiple of the identity) reached an
// operation whose formulas divide by |a|.
class DegenerateObservable : public Error {
 public:
  using Error::Error;
};

class LinearlyDependentFamily : public Error {
 public:
  using Error::Error;
};

// A region coordinate exceeds its axis box [0, |a_k|].
class OutOfBox : public Error {
 public:
  using Error::Error;
};

class AngleConstraintViolated : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed or non-physical dense state input.
class StateFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace qunc

#endif  // QUNC_ERRORS_HPP
